//! Alternating polynomials and the trace machinery built on them: search for
//! a left-normed monomial whose alternation is not an identity, its lift to
//! `F[G] (x) B` through matrix units, bracket insertion, trace extraction and
//! the determinant identity for doubly alternated insertions.

use std::collections::{BTreeMap, BTreeSet};

use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::algebra::{ad_matrix, killing_matrix, matrix_unit, tensor_element, GradedAlgebra};
use crate::error::{Error, Result};
use crate::group::SignTable;
use crate::linalg::{
    determinant, is_linearly_independent, is_zero_vector, mat_mul, mat_vec, qi, scale_vector, trace, transpose,
    zero_vector, Matrix, Vector, Q,
};
use crate::perm::{all_permutations, factorial, Permutation};
use crate::poly::{alt_evaluate, alt_on_set, evaluate, AltMode, Evaluation, Monomial, MultilinearPoly, Var};

/// Largest target dimension for the witness search (alternation over `d!`).
pub const WITNESS_DIM_CAP: usize = 8;

/// Largest `q` for the determinant check, which sums over `(q!)^2` pairs.
pub const DETERMINANT_DIM_CAP: usize = 4;

fn random_vector(rng: &mut ChaCha8Rng, dim: usize, range: i64) -> Vector {
    (0..dim).map(|_| qi(rng.gen_range(-range..=range))).collect()
}

/// `Alt_Y` of a left-normed monomial, with an evaluation at which it is
/// nonzero.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WitnessPolynomial {
    /// The alternated polynomial, expanded.
    #[serde(serialize_with = "serialize_poly")]
    pub polynomial: MultilinearPoly,
    #[serde(serialize_with = "serialize_monomial")]
    pub monomial: Monomial,
    /// Variables the polynomial alternates on (`|alternating| = dim`).
    pub alternating: Vec<Var>,
    pub auxiliary: Vec<Var>,
    /// Sizes of the non-alternating blocks between alternating variables.
    pub blocks: Vec<usize>,
    pub evaluation: Evaluation,
    #[serde(serialize_with = "serialize_vector")]
    pub value: Vector,
    pub trial: usize,
}

fn serialize_poly<S: serde::Serializer>(p: &MultilinearPoly, s: S) -> std::result::Result<S::Ok, S::Error> {
    p.to_pairs().serialize(s)
}

fn serialize_monomial<S: serde::Serializer>(m: &Monomial, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&m.to_string())
}

pub(crate) fn serialize_vector<S: serde::Serializer>(v: &[Q], s: S) -> std::result::Result<S::Ok, S::Error> {
    let strs: Vec<String> = v.iter().map(crate::linalg::format_rational).collect();
    strs.serialize(s)
}

/// Word `X_1 y_1 X_2 y_2 .. y_d X_(d+1)` with variables numbered by position;
/// returns the word and the positions of the `y`s.
fn interleaved_word(blocks: &[usize]) -> (Vec<Var>, Vec<Var>) {
    let mut word = Vec::new();
    let mut ys = Vec::new();
    let mut next: Var = 1;
    for (i, &t) in blocks.iter().enumerate() {
        for _ in 0..t {
            word.push(next);
            next += 1;
        }
        if i + 1 < blocks.len() {
            ys.push(next);
            word.push(next);
            next += 1;
        }
    }
    (word, ys)
}

/// Seeded search for `f = [X_1, y_1, X_2, .., y_d, X_(d+1)]` (blocks of size
/// 1 or 2, `d = dim b`) and small integer values with `Alt_Y f != 0`.
pub fn find_alternating_nonidentity(b: &GradedAlgebra, trials: usize, seed: u64) -> Result<WitnessPolynomial> {
    let d = b.dim();
    if d == 0 || d > WITNESS_DIM_CAP {
        return Err(Error::CapExceeded {
            what: "witness search dimension".into(),
            needed: d as u128,
            cap: WITNESS_DIM_CAP as u128,
        });
    }
    for trial in 0..trials {
        let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(trial as u64));
        let blocks: Vec<usize> = (0..=d).map(|_| rng.gen_range(1..=2)).collect();
        let (word, ys) = interleaved_word(&blocks);
        let monomial = Monomial::left_normed(&word);
        let base = MultilinearPoly::monomial(monomial.clone())?;
        let mut e = Evaluation::new();
        for &v in &word {
            e.set(v, random_vector(&mut rng, d, 3));
        }
        let alt = alt_evaluate(&base, &ys, b, &e, AltMode::Full)?;
        if is_zero_vector(&alt.value) {
            continue;
        }
        let polynomial = alt_on_set(&base, &ys)?;
        let auxiliary = word.iter().copied().filter(|v| !ys.contains(v)).collect();
        return Ok(WitnessPolynomial {
            polynomial,
            monomial,
            alternating: ys,
            auxiliary,
            blocks,
            evaluation: e,
            value: alt.value,
            trial,
        });
    }
    Err(Error::BudgetExhausted(trials))
}

/// Re-evaluates the expanded witness polynomial at its certifying evaluation.
pub fn verify_witness(w: &WitnessPolynomial, b: &GradedAlgebra) -> Result<bool> {
    let v = evaluate(&w.polynomial, b, &w.evaluation)?;
    Ok(v == w.value && !is_zero_vector(&v))
}

/// `g = sum_{i in X} f(.., [x_i, v, z], ..)`.
pub fn insert_bracket_sum(f: &MultilinearPoly, x: &[Var], v: Var, z: Var) -> Result<MultilinearPoly> {
    if v == z || f.vars().contains(&v) || f.vars().contains(&z) {
        return Err(Error::VariableCollision(format!("{v} and {z} must be distinct fresh variables")));
    }
    for xi in x {
        if !f.vars().contains(xi) {
            return Err(Error::InvalidArgument(format!("variable {xi} is not in the polynomial")));
        }
    }
    let mut vars: Vec<Var> = f.vars().to_vec();
    vars.extend([v, z]);
    let mut g = MultilinearPoly::zero(vars);
    for &xi in x {
        let wrapped = Monomial::left_normed(&[xi, v, z]);
        for (m, c) in f.terms() {
            g.add_term(c.clone(), m.substitute(xi, &wrapped))?;
        }
    }
    Ok(g)
}

/// `tr(ad v ad z)`.
pub fn ad_trace(a: &GradedAlgebra, v: &[Q], z: &[Q]) -> Result<Q> {
    let av = ad_matrix(a, v)?;
    let az = ad_matrix(a, z)?;
    Ok(trace(&mat_mul(av.matrix(), az.matrix())))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TraceRecord {
    pub k: usize,
    pub basis: bool,
    #[serde(serialize_with = "serialize_vector")]
    pub traces: Vec<Q>,
    #[serde(serialize_with = "serialize_vector")]
    pub lhs: Vector,
    #[serde(serialize_with = "serialize_vector")]
    pub rhs: Vector,
    pub terms: usize,
    pub passed: bool,
}

/// Builds `g` from `f` by inserting `[x_i, v_s, z_s]` for each pair and checks
/// `g(e) = prod_s tr(ad v_s ad z_s) f(e)` exactly. When the `X`-values are
/// dependent both sides must vanish.
pub fn trace_extract(f: &MultilinearPoly, x: &[Var], pairs: &[(Var, Var)], a: &GradedAlgebra, e: &Evaluation) -> Result<TraceRecord> {
    if x.len() != a.dim() {
        return Err(Error::DimensionMismatch {
            expected: a.dim(),
            got: x.len(),
        });
    }
    let mut g = f.clone();
    for &(v, z) in pairs {
        g = insert_bracket_sum(&g, x, v, z)?;
    }
    let lhs = evaluate(&g, a, e)?;
    let fval = evaluate(f, a, e)?;
    let mut traces = Vec::with_capacity(pairs.len());
    for &(v, z) in pairs {
        let vv = e.get(v).ok_or(Error::MissingVariable(v))?;
        let zz = e.get(z).ok_or(Error::MissingVariable(z))?;
        traces.push(ad_trace(a, vv, zz)?);
    }
    let product = traces.iter().fold(Q::one(), |acc, t| acc * t);
    let rhs = scale_vector(&product, &fval);
    let xs: Vec<Vector> = x.iter().map(|v| e.get(*v).cloned().ok_or(Error::MissingVariable(*v))).collect::<Result<_>>()?;
    let basis = is_linearly_independent(&xs);
    let passed = lhs == rhs && (basis || (is_zero_vector(&lhs) && is_zero_vector(&fval)));
    Ok(TraceRecord {
        k: pairs.len(),
        basis,
        traces,
        lhs,
        rhs,
        terms: g.num_terms(),
        passed,
    })
}

/// Values of a function multilinear in `q` arguments from `A`, indexed by
/// basis tuples `(j_1, .., j_q)` in mixed radix.
#[derive(Clone, Debug, PartialEq)]
struct BasisTensor {
    q: usize,
    dim: usize,
    entries: Vec<Vector>,
}

impl BasisTensor {
    fn of_poly(f: &MultilinearPoly, x: &[Var], a: &GradedAlgebra, e: &Evaluation) -> Result<Self> {
        let q = x.len();
        let dim = a.dim();
        let count = dim.pow(q as u32);
        let mut entries = Vec::with_capacity(count);
        for t in 0..count {
            let mut ee = e.clone();
            let mut rest = t;
            for i in (0..q).rev() {
                let mut unit = zero_vector(dim);
                unit[rest % dim] = Q::one();
                rest /= dim;
                ee.set(x[i], unit);
            }
            entries.push(evaluate(f, a, &ee)?);
        }
        Ok(BasisTensor { q, dim, entries })
    }

    fn index(&self, tuple: &[usize]) -> usize {
        tuple.iter().fold(0, |acc, &j| acc * self.dim + j)
    }

    fn tuple(&self, mut t: usize) -> Vec<usize> {
        let mut out = vec![0; self.q];
        for i in (0..self.q).rev() {
            out[i] = t % self.dim;
            t /= self.dim;
        }
        out
    }

    /// `G(b_1, .., b_q) = sum_i F(.., T b_i, ..)`.
    fn insertion_step(&self, t_mat: &Matrix) -> BasisTensor {
        let out_dim = self.entries.first().map_or(0, Vec::len);
        let entries = (0..self.entries.len())
            .map(|t| {
                let tuple = self.tuple(t);
                let mut acc = zero_vector(out_dim);
                for i in 0..self.q {
                    let mut moved = tuple.clone();
                    for l in 0..self.dim {
                        let c = &t_mat[l][tuple[i]];
                        if c.is_zero() {
                            continue;
                        }
                        moved[i] = l;
                        for (x, y) in acc.iter_mut().zip(&self.entries[self.index(&moved)]) {
                            if !y.is_zero() {
                                *x += c * y;
                            }
                        }
                    }
                }
                acc
            })
            .collect();
        BasisTensor {
            q: self.q,
            dim: self.dim,
            entries,
        }
    }

    fn add_scaled(&mut self, other: &BasisTensor, c: &Q) {
        for (x, y) in self.entries.iter_mut().zip(&other.entries) {
            for (a, b) in x.iter_mut().zip(y) {
                if !b.is_zero() {
                    *a += c * b;
                }
            }
        }
    }

    fn zero_like(&self) -> BasisTensor {
        let out_dim = self.entries.first().map_or(0, Vec::len);
        BasisTensor {
            q: self.q,
            dim: self.dim,
            entries: vec![zero_vector(out_dim); self.entries.len()],
        }
    }

    /// Contracts with the actual argument values.
    fn contract(&self, xs: &[Vector]) -> Vector {
        let out_dim = self.entries.first().map_or(0, Vec::len);
        let mut acc = zero_vector(out_dim);
        for (t, val) in self.entries.iter().enumerate() {
            let tuple = self.tuple(t);
            let mut coeff = Q::one();
            for (i, &j) in tuple.iter().enumerate() {
                coeff *= &xs[i][j];
                if coeff.is_zero() {
                    break;
                }
            }
            if coeff.is_zero() {
                continue;
            }
            for (x, y) in acc.iter_mut().zip(val) {
                *x += &coeff * y;
            }
        }
        acc
    }
}

/// `(1/q!) sum_{s,t in S_q} sgn(s) sgn(t) (insertions with (v_s(i), z_t(i)))`
/// applied to the basis tensor of the current polynomial.
fn double_alternated_level(f: &BasisTensor, a: &GradedAlgebra, vs: &[Vector], zs: &[Vector]) -> Result<BasisTensor> {
    let q = f.q;
    // T_{ij} = ad z_j o ad v_i
    let mut ops = vec![vec![Matrix::new(); q]; q];
    for (i, v) in vs.iter().enumerate() {
        let av = ad_matrix(a, v)?;
        for (j, z) in zs.iter().enumerate() {
            let az = ad_matrix(a, z)?;
            ops[i][j] = mat_mul(az.matrix(), av.matrix());
        }
    }
    let mut out = f.zero_like();
    let scale = Q::new(1.into(), factorial(q).into());
    let perms: Vec<Permutation> = all_permutations(q).collect();
    for s in &perms {
        for t in &perms {
            let mut cur = f.clone();
            for i in 0..q {
                cur = cur.insertion_step(&ops[s.apply(i)][t.apply(i)]);
            }
            let sign = qi((s.sign() * t.sign()) as i64);
            out.add_scaled(&cur, &(&scale * sign));
        }
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AlternationCheck {
    pub set: String,
    pub vanishes: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DeterminantRecord {
    pub q: usize,
    pub k: usize,
    /// Number of non-alternating variables of `f`, the same for every `k`.
    pub auxiliary: usize,
    #[serde(serialize_with = "serialize_vector")]
    pub determinants: Vec<Q>,
    #[serde(serialize_with = "serialize_vector")]
    pub lhs: Vector,
    #[serde(serialize_with = "serialize_vector")]
    pub rhs: Vector,
    /// `det(tr(ad v_i ad z_j)) = det(V^T K Z)` with `K` the Killing matrix.
    pub killing_consistent: bool,
    pub alternation: Vec<AlternationCheck>,
    pub passed: bool,
}

/// Values of the `v`- and `z`-sets for levels `1..=k`.
#[derive(Clone, Debug, PartialEq)]
pub struct LevelValues {
    pub v: Vec<Vector>,
    pub z: Vec<Vector>,
}

/// `g_k(e)` computed through basis tensors, with `levels[s]` the values of
/// the `s`-th pair of sets.
fn evaluate_gk(f: &MultilinearPoly, x: &[Var], a: &GradedAlgebra, e: &Evaluation, levels: &[LevelValues]) -> Result<Vector> {
    let mut tensor = BasisTensor::of_poly(f, x, a, e)?;
    for level in levels {
        tensor = double_alternated_level(&tensor, a, &level.v, &level.z)?;
    }
    let xs: Vec<Vector> = x.iter().map(|v| e.get(*v).cloned().ok_or(Error::MissingVariable(*v))).collect::<Result<_>>()?;
    Ok(tensor.contract(&xs))
}

/// `rho_{ij} = tr(ad v_i ad z_j)`.
pub fn rho_matrix(a: &GradedAlgebra, vs: &[Vector], zs: &[Vector]) -> Result<Matrix> {
    vs.iter()
        .map(|v| zs.iter().map(|z| ad_trace(a, v, z)).collect::<Result<Vec<_>>>())
        .collect()
}

/// Checks `g_k(e) = prod_s det(rho_s) f(e)` for `f` alternating on `x` with
/// `|x| = dim a <= 4`, with `k` seeded random levels, plus alternation of
/// `g_k` on each of its `2k + 1` sets.
pub fn determinant_check(f: &MultilinearPoly, x: &[Var], a: &GradedAlgebra, e: &Evaluation, k: usize, seed: u64) -> Result<DeterminantRecord> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let q = a.dim();
    let levels: Vec<LevelValues> = (0..k)
        .map(|_| LevelValues {
            v: (0..q).map(|_| random_vector(&mut rng, q, 3)).collect(),
            z: (0..q).map(|_| random_vector(&mut rng, q, 3)).collect(),
        })
        .collect();
    determinant_check_with(f, x, a, e, &levels)
}

/// [`determinant_check`] with explicit level values.
pub fn determinant_check_with(f: &MultilinearPoly, x: &[Var], a: &GradedAlgebra, e: &Evaluation, levels: &[LevelValues]) -> Result<DeterminantRecord> {
    let q = a.dim();
    if q > DETERMINANT_DIM_CAP {
        return Err(Error::SizeGuard {
            what: "dimension for the doubly alternated check".into(),
            needed: q as u128,
            limit: DETERMINANT_DIM_CAP as u128,
        });
    }
    if x.len() != q {
        return Err(Error::DimensionMismatch { expected: q, got: x.len() });
    }
    for level in levels {
        if level.v.len() != q || level.z.len() != q {
            return Err(Error::DimensionMismatch {
                expected: q,
                got: level.v.len().min(level.z.len()),
            });
        }
    }
    let kill = killing_matrix(a);
    let mut determinants = Vec::new();
    let mut killing_consistent = true;
    for level in levels {
        let rho = rho_matrix(a, &level.v, &level.z)?;
        let det = determinant(&rho);
        // V^T K Z with the vectors as columns of V and Z
        let kz: Matrix = level.z.iter().map(|z| mat_vec(kill.matrix(), z)).collect();
        let vkz: Matrix = level
            .v
            .iter()
            .map(|v| kz.iter().map(|c| v.iter().zip(c).map(|(p, r)| p * r).sum()).collect())
            .collect();
        killing_consistent &= determinant(&vkz) == det && transpose(&transpose(&vkz)) == rho;
        determinants.push(det);
    }
    let lhs = evaluate_gk(f, x, a, e, levels)?;
    let fval = evaluate(f, a, e)?;
    let product = determinants.iter().fold(Q::one(), |acc, d| acc * d);
    let rhs = scale_vector(&product, &fval);

    let mut alternation = Vec::new();
    let mut repeated = e.clone();
    let x0 = e.get(x[0]).cloned().ok_or(Error::MissingVariable(x[0]))?;
    repeated.set(x[1], x0);
    alternation.push(AlternationCheck {
        set: "x".into(),
        vanishes: is_zero_vector(&evaluate_gk(f, x, a, &repeated, levels)?),
    });
    for s in 0..levels.len() {
        for which in ["v", "z"] {
            let mut changed = levels.to_vec();
            let set = if which == "v" { &mut changed[s].v } else { &mut changed[s].z };
            set[1] = set[0].clone();
            alternation.push(AlternationCheck {
                set: format!("{which}{}", s + 1),
                vanishes: is_zero_vector(&evaluate_gk(f, x, a, e, &changed)?),
            });
        }
    }
    let passed = lhs == rhs && killing_consistent && alternation.iter().all(|c| c.vanishes);
    let auxiliary = f.vars().iter().filter(|v| !x.contains(v)).count();
    Ok(DeterminantRecord {
        q,
        k: levels.len(),
        auxiliary,
        determinants,
        lhs,
        rhs,
        killing_consistent,
        alternation,
        passed,
    })
}

/// Lifted witness on `L = F[G] (x) B`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LiftRecord {
    /// Connector counts after each of the four copies.
    pub connectors: [usize; 4],
    pub attempts: Vec<[usize; 4]>,
    /// Alternating sets of the four copies.
    pub alternating: Vec<Vec<Var>>,
    pub terms: usize,
    #[serde(serialize_with = "serialize_vector")]
    pub value: Vector,
    /// `E_11 (x) [w, z.., w, .., w]` computed in `B` alone.
    pub matches_prediction: bool,
    pub cross_samples: usize,
    pub cross_nonzero: usize,
    pub passed: bool,
}

/// Matrix-unit labels `(u, v)` for one copy whose alternating variables all
/// carry `E_(ij)`; the labels chain so the copy evaluates to `E_11 (x) f`.
fn copy_labels(blocks: &[usize], i: usize, j: usize) -> Vec<(usize, usize)> {
    let last = blocks.len() - 1;
    let mut labels = Vec::new();
    for (b, &t) in blocks.iter().enumerate() {
        // x-block b runs from `start` to `end`
        let start = if b == 0 { 1 } else { j };
        let end = if b == last { 1 } else { i };
        if t == 1 {
            labels.push((start, end));
        } else {
            labels.push((start, 1));
            for _ in 0..t - 2 {
                labels.push((1, 1));
            }
            labels.push((1, end));
        }
        if b != last {
            labels.push((i, j));
        }
    }
    labels
}

const COPY_UNITS: [(usize, usize); 4] = [(1, 1), (1, 2), (2, 1), (2, 2)];

const CONNECTOR_SCHEDULE: [[usize; 4]; 4] = [[0, 0, 0, 0], [1, 1, 1, 0], [1, 1, 1, 1], [2, 2, 2, 0]];

/// Four renamed copies of the witness, evaluated through matrix units so that
/// every copy is `E_11 (x) w`, joined by connector variables valued in
/// `E_11 (x) B`. Connectors start at zero and escalate until the value is
/// nonzero. Cross-copy permutations of the alternating variables are sampled
/// and must vanish term by term.
pub fn lift_to_l(w: &WitnessPolynomial, b: &GradedAlgebra, l: &GradedAlgebra, s: &SignTable, cross_samples: usize, seed: u64) -> Result<LiftRecord> {
    let d = b.dim();
    if l.dim() != 4 * d {
        return Err(Error::DimensionMismatch {
            expected: 4 * d,
            got: l.dim(),
        });
    }
    let e11 = matrix_unit(1, 1);
    for g in crate::group::GroupElement::ALL {
        for h in crate::group::GroupElement::ALL {
            if s.get(g, h) != crate::group::canonical_cocycle().get(g, h) {
                return Err(Error::InvalidArgument("lift requires the canonical cocycle".into()));
            }
        }
    }
    let word = w.monomial.as_left_normed().ok_or(Error::NotLeftNormed)?;
    let width = word.len() as Var;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut attempts = Vec::new();
    for connectors in CONNECTOR_SCHEDULE {
        attempts.push(connectors);
        // variables: copy c uses offset c * width; connectors come after
        let mut next_conn = 4 * width + 1;
        let mut factors = Vec::new();
        let mut base_factors = Vec::new();
        let mut e = Evaluation::new();
        let mut alternating = Vec::new();
        let mut connector_values = Vec::new();
        for (c, &(i, j)) in COPY_UNITS.iter().enumerate() {
            let off = c as Var * width;
            let rename = |v: Var| v + off;
            factors.push(w.polynomial.relabel(&rename)?);
            base_factors.push(w.monomial.relabel(&rename));
            alternating.push(w.alternating.iter().map(|&v| v + off).collect::<Vec<_>>());
            for (v, (u, t)) in word.iter().zip(copy_labels(&w.blocks, i, j)) {
                let val = w.evaluation.get(*v).ok_or(Error::MissingVariable(*v))?;
                e.set(v + off, tensor_element(&matrix_unit(u, t), val));
            }
            let mut conns = Vec::new();
            for _ in 0..connectors[c] {
                let zval = random_vector(&mut rng, d, 3);
                e.set(next_conn, tensor_element(&e11, &zval));
                conns.push((next_conn, zval));
                next_conn += 1;
            }
            connector_values.push(conns);
        }
        let mut h_poly: Option<MultilinearPoly> = None;
        let mut base: Option<Monomial> = None;
        let mut b_value: Option<Vector> = None;
        for (c, factor) in factors.iter().enumerate() {
            h_poly = Some(match h_poly {
                None => factor.clone(),
                Some(acc) => poly_bracket(&acc, factor)?,
            });
            base = Some(match base {
                None => base_factors[c].clone(),
                Some(acc) => Monomial::bracket(acc, base_factors[c].clone()),
            });
            b_value = Some(match b_value {
                None => w.value.clone(),
                Some(acc) => b.multiply(&acc, &w.value)?,
            });
            for (z, zval) in &connector_values[c] {
                h_poly = Some(poly_bracket(h_poly.as_ref().unwrap(), &MultilinearPoly::monomial(Monomial::leaf(*z))?)?);
                base = Some(Monomial::bracket(base.unwrap(), Monomial::leaf(*z)));
                b_value = Some(b.multiply(b_value.as_ref().unwrap(), zval)?);
            }
        }
        let h_poly = h_poly.expect("four copies");
        let base = base.expect("four copies");
        let value = evaluate(&h_poly, l, &e)?;
        if is_zero_vector(&value) {
            continue;
        }
        let predicted = tensor_element(&e11, &b_value.expect("four copies"));
        let (checked, nonzero) = cross_term_check(&base, &alternating, l, &e, cross_samples, &mut rng)?;
        let matches_prediction = predicted == value;
        return Ok(LiftRecord {
            connectors,
            attempts,
            alternating,
            terms: h_poly.num_terms(),
            value,
            matches_prediction,
            cross_samples: checked,
            cross_nonzero: nonzero,
            passed: matches_prediction && nonzero == 0,
        });
    }
    Err(Error::ConstructionFailed(format!(
        "lifted value vanished for every connector choice in {attempts:?}"
    )))
}

/// `[f, g]` expanded; the variable sets must be disjoint.
pub fn poly_bracket(f: &MultilinearPoly, g: &MultilinearPoly) -> Result<MultilinearPoly> {
    let fv: BTreeSet<Var> = f.vars().iter().copied().collect();
    if g.vars().iter().any(|v| fv.contains(v)) {
        return Err(Error::VariableCollision("bracketed polynomials share variables".into()));
    }
    let mut out = MultilinearPoly::zero(f.vars().iter().chain(g.vars()).copied());
    for (m1, c1) in f.terms() {
        for (m2, c2) in g.terms() {
            out.add_term(c1 * c2, Monomial::bracket(m1.clone(), m2.clone()))?;
        }
    }
    Ok(out)
}

/// Evaluates `base` with the union of the alternating sets permuted by
/// random permutations that move some variable to another copy's set.
fn cross_term_check(base: &Monomial, sets: &[Vec<Var>], l: &GradedAlgebra, e: &Evaluation, samples: usize, rng: &mut ChaCha8Rng) -> Result<(usize, usize)> {
    let all: Vec<Var> = sets.iter().flatten().copied().collect();
    let set_of: BTreeMap<Var, usize> = sets
        .iter()
        .enumerate()
        .flat_map(|(i, s)| s.iter().map(move |&v| (v, i)))
        .collect();
    let mut nonzero = 0;
    let mut done = 0;
    let values = e.values();
    while done < samples {
        let p = Permutation::random(all.len(), rng);
        let crosses = (0..all.len()).any(|i| set_of[&all[i]] != set_of[&all[p.apply(i)]]);
        if !crosses {
            continue;
        }
        let permuted = e.permuted(&all, &p);
        let lookup = |v: Var| -> &[Q] { permuted.get(v).map(Vec::as_slice).unwrap_or(&values[&v]) };
        if !is_zero_vector(&base.eval_in(l, &lookup)) {
            nonzero += 1;
        }
        done += 1;
    }
    Ok((done, nonzero))
}

/// Replayable form of a witness: the monomial, its alternating set and the
/// certifying values.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessRecord {
    pub monomial: String,
    pub alternating: Vec<Var>,
    pub blocks: Vec<usize>,
    pub evaluation: Evaluation,
}

impl WitnessPolynomial {
    pub fn to_record(&self) -> WitnessRecord {
        WitnessRecord {
            monomial: self.monomial.to_string(),
            alternating: self.alternating.clone(),
            blocks: self.blocks.clone(),
            evaluation: self.evaluation.clone(),
        }
    }

    /// Rebuilds the witness and re-evaluates it; a zero value is rejected.
    pub fn from_record(r: &WitnessRecord, b: &GradedAlgebra) -> Result<Self> {
        let monomial: Monomial = r.monomial.parse()?;
        let word = monomial.as_left_normed().ok_or(Error::NotLeftNormed)?;
        let (expected, ys) = interleaved_word(&r.blocks);
        if word != expected || ys != r.alternating {
            return Err(Error::InvalidArgument("witness blocks do not match its monomial".into()));
        }
        let polynomial = alt_on_set(&MultilinearPoly::monomial(monomial.clone())?, &r.alternating)?;
        let value = evaluate(&polynomial, b, &r.evaluation)?;
        if is_zero_vector(&value) {
            return Err(Error::ConstructionFailed("witness evaluates to zero".into()));
        }
        Ok(WitnessPolynomial {
            polynomial,
            monomial,
            alternating: r.alternating.clone(),
            auxiliary: word.iter().copied().filter(|v| !r.alternating.contains(v)).collect(),
            blocks: r.blocks.clone(),
            evaluation: r.evaluation.clone(),
            value,
            trial: 0,
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct InsertionRecord {
    pub terms: usize,
    /// `g` with two equal `X`-values, for each pair of positions.
    pub repeated_pairs: usize,
    pub repeated_vanish: bool,
    /// `g` with `z = 0`.
    pub zero_connector_vanishes: bool,
    pub passed: bool,
}

/// Checks that `sum_i f(.., [x_i, v, z], ..)` stays alternating on `x` and is
/// linear in `z`, at `e` extended by seeded values of `v` and `z`.
pub fn insertion_check(f: &MultilinearPoly, x: &[Var], a: &GradedAlgebra, e: &Evaluation, seed: u64) -> Result<InsertionRecord> {
    let top = f.vars().iter().copied().max().unwrap_or(0);
    let (v, z) = (top + 1, top + 2);
    let g = insert_bracket_sum(f, x, v, z)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut base = e.clone();
    base.set(v, random_vector(&mut rng, a.dim(), 3));
    base.set(z, random_vector(&mut rng, a.dim(), 3));
    let mut repeated_pairs = 0;
    let mut repeated_vanish = true;
    for i in 0..x.len() {
        for j in i + 1..x.len() {
            let mut ee = base.clone();
            let xi = base.get(x[i]).cloned().ok_or(Error::MissingVariable(x[i]))?;
            ee.set(x[j], xi);
            repeated_vanish &= is_zero_vector(&evaluate(&g, a, &ee)?);
            repeated_pairs += 1;
        }
    }
    let mut zeroed = base.clone();
    zeroed.set(z, zero_vector(a.dim()));
    let zero_connector_vanishes = is_zero_vector(&evaluate(&g, a, &zeroed)?);
    Ok(InsertionRecord {
        terms: g.num_terms(),
        repeated_pairs,
        repeated_vanish,
        zero_connector_vanishes,
        passed: repeated_vanish && zero_connector_vanishes,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{abelian_factory, sl2_factory, tensor_color_construct};
    use crate::group::canonical_cocycle;

    fn sl2_witness() -> WitnessPolynomial {
        find_alternating_nonidentity(&sl2_factory(), 200, 1).unwrap()
    }

    #[test]
    fn witness_found_and_replays() {
        let sl2 = sl2_factory();
        let w = sl2_witness();
        assert_eq!(w.alternating.len(), 3);
        assert_eq!(w.polynomial.num_terms(), 6);
        assert!(w.blocks.iter().all(|&t| t >= 1));
        assert!(verify_witness(&w, &sl2).unwrap());
        let again = find_alternating_nonidentity(&sl2, 200, 1).unwrap();
        assert_eq!(again, w);
        let json = serde_json::to_string(&w.to_record()).unwrap();
        let replayed = WitnessPolynomial::from_record(&serde_json::from_str(&json).unwrap(), &sl2).unwrap();
        assert_eq!(replayed.value, w.value);
        assert_eq!(replayed.polynomial, w.polynomial);
    }

    #[test]
    fn abelian_has_no_witness() {
        let ab = abelian_factory(2).unwrap();
        assert!(matches!(find_alternating_nonidentity(&ab, 20, 0), Err(Error::BudgetExhausted(20))));
    }

    #[test]
    fn insertion_two_term_example() {
        let f = MultilinearPoly::monomial(Monomial::left_normed(&[1, 2])).unwrap();
        let g = insert_bracket_sum(&f, &[1, 2], 3, 4).unwrap();
        let expected = MultilinearPoly::from_terms(vec![
            (qi(1), Monomial::bracket(Monomial::left_normed(&[1, 3, 4]), Monomial::leaf(2))),
            (qi(1), Monomial::bracket(Monomial::leaf(1), Monomial::left_normed(&[2, 3, 4]))),
        ])
        .unwrap();
        assert_eq!(g, expected);
        assert!(matches!(insert_bracket_sum(&f, &[1], 2, 5), Err(Error::VariableCollision(_))));
    }

    #[test]
    fn insertion_keeps_alternation() {
        let sl2 = sl2_factory();
        let w = sl2_witness();
        let r = insertion_check(&w.polynomial, &w.alternating, &sl2, &w.evaluation, 2).unwrap();
        assert!(r.passed, "{r:?}");
        assert_eq!(r.repeated_pairs, 3);
    }

    #[test]
    fn copy_labels_chain_to_e11() {
        for blocks in [vec![1, 1, 1, 1], vec![2, 1, 2, 2], vec![1, 2, 2, 1]] {
            for (i, j) in COPY_UNITS {
                let labels = copy_labels(&blocks, i, j);
                assert_eq!(labels.len(), blocks.iter().sum::<usize>() + blocks.len() - 1);
                assert_eq!(labels.first().unwrap().0, 1);
                assert_eq!(labels.last().unwrap().1, 1);
                assert!(labels.windows(2).all(|p| p[0].1 == p[1].0));
            }
        }
    }

    #[test]
    fn trace_extraction_k1() {
        let sl2 = sl2_factory();
        let w = sl2_witness();
        let n = *w.polynomial.vars().last().unwrap();
        let mut e = w.evaluation.clone();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        e.set(n + 1, random_vector(&mut rng, 3, 3));
        e.set(n + 2, random_vector(&mut rng, 3, 3));
        let r = trace_extract(&w.polynomial, &w.alternating, &[(n + 1, n + 2)], &sl2, &e).unwrap();
        assert!(r.passed, "{r:?}");
    }

    #[test]
    fn determinant_check_k1() {
        let sl2 = sl2_factory();
        let w = sl2_witness();
        let r = determinant_check(&w.polynomial, &w.alternating, &sl2, &w.evaluation, 1, 9).unwrap();
        assert!(r.passed, "{r:?}");
        assert_eq!(r.alternation.len(), 3);
    }

    #[test]
    fn lift_is_nonzero() {
        let sl2 = sl2_factory();
        let s = canonical_cocycle();
        let l = tensor_color_construct(&sl2, s.table()).unwrap();
        let r = lift_to_l(&sl2_witness(), &sl2, &l, s.table(), 200, 4).unwrap();
        assert!(r.passed, "{r:?}");
        assert_eq!(r.attempts[0], [0, 0, 0, 0]);
        assert_ne!(r.connectors, [0, 0, 0, 0]);
        assert_eq!(r.terms, 1296);
    }
}
