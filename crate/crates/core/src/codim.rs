//! Codimensions of multilinear identities: `c_n(A)` over all bracketings, the
//! Lie variant over left-normed monomials, graded component dimensions and
//! graded codimensions, each as the rank of an evaluation matrix.
//!
//! Rows are monomials. In exact mode the columns are the coordinates of every
//! basis-tuple evaluation; by multilinearity their rank is the codimension.
//! In randomized mode the columns come from seeded random evaluations over a
//! prime field and the result is a lower bound.

use std::collections::HashSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Signed;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::algebra::{is_lie_algebra, GradedAlgebra};
use crate::error::{Error, Result};
use crate::group::{group_product, GroupElement};
use crate::linalg::{common_denominator, Q};
use crate::poly::{enumerate_monomials, CompiledMonomial, Monomial, MonomialShape};
use crate::rank::{certified_column_rank, Certificate, ModpEchelon};
use crate::ring::{CheckedI128, PrimeField};

/// Primes above `10^6` and below `2^26`, so that row reduction can defer
/// taking remainders.
pub const DEFAULT_PRIMES: [u64; 2] = [67_108_859, 33_554_393];
pub const DEFAULT_COLUMN_LIMIT: u128 = 1_000_000;
pub const DEFAULT_ROW_LIMIT: usize = 20_000;

// headroom left in i128 for evaluation values
const MAGNITUDE_BITS: u64 = 100;
const TUPLE_CHUNK: usize = 2048;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CodimMode {
    /// Full basis evaluation, rank certified over the rationals.
    Exact,
    /// Seeded random evaluations over prime fields; a lower bound.
    Randomized,
    /// Exact when within the size guards, randomized otherwise.
    Auto,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Exact,
    LowerBoundWhp,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CodimKind {
    Plain,
    Lie,
    GradedComponent,
    GradedTotal,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CodimOptions {
    pub mode: CodimMode,
    pub seed: u64,
    pub primes: Vec<u64>,
    /// Seeds per prime in randomized mode (`seed`, `seed + 1`, ...).
    pub seeds: usize,
    /// Consecutive unchanged batches that end a randomized run.
    pub window: usize,
    pub batch: usize,
    pub column_limit: u128,
    pub row_limit: usize,
}

impl Default for CodimOptions {
    fn default() -> Self {
        CodimOptions {
            mode: CodimMode::Exact,
            seed: 0,
            primes: DEFAULT_PRIMES.to_vec(),
            seeds: 3,
            window: 5,
            batch: 64,
            column_limit: DEFAULT_COLUMN_LIMIT,
            row_limit: DEFAULT_ROW_LIMIT,
        }
    }
}

impl CodimOptions {
    pub fn exact() -> Self {
        Self::default()
    }

    pub fn randomized(seed: u64) -> Self {
        CodimOptions {
            mode: CodimMode::Randomized,
            seed,
            ..Self::default()
        }
    }

    fn fields(&self) -> Result<Vec<PrimeField>> {
        if self.primes.is_empty() {
            return Err(Error::InvalidArgument("at least one prime is required".into()));
        }
        self.primes.iter().map(|&p| PrimeField::new(p)).collect()
    }
}

/// `(k_e, k_a, k_b, k_ab)`: how many variables carry each degree.
pub type ComponentKey = [usize; 4];

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComponentValue {
    pub key: ComponentKey,
    pub multinomial: u128,
    pub value: u128,
    pub status: Status,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CodimReport {
    pub algebra: String,
    pub kind: CodimKind,
    pub n: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub key: Option<ComponentKey>,
    pub rows_shape: MonomialShape,
    pub mode: CodimMode,
    pub status: Status,
    pub value: u128,
    pub rows: usize,
    /// Coordinate columns generated (exact) or random columns processed.
    pub columns: u128,
    /// Distinct nonzero columns up to scaling (exact mode).
    #[serde(skip_serializing_if = "Option::is_none")]
    pub distinct_columns: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub certificate: Option<Certificate>,
    pub primes: Vec<u64>,
    pub seeds: Vec<u64>,
    pub window: usize,
    pub batch: usize,
    /// `dim(A)^(n+1)`, when it fits.
    pub dimension_bound: Option<u128>,
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    pub components: Vec<ComponentValue>,
}

impl CodimReport {
    pub fn within_bound(&self) -> bool {
        match self.kind {
            CodimKind::GradedTotal => true,
            _ => self.dimension_bound.is_none_or(|b| self.value <= b),
        }
    }

    pub fn to_tsv(&self) -> String {
        let mut out = String::from("algebra\tkind\tn\tkey\tmode\tstatus\tvalue\trows\tcolumns\tprimes\tseeds\n");
        let key = self
            .key
            .map(|k| k.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(","))
            .unwrap_or_else(|| "-".into());
        let join = |v: &[u64]| v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",");
        out.push_str(&format!(
            "{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\n",
            self.algebra,
            kebab(&self.kind),
            self.n,
            key,
            kebab(&self.mode),
            kebab(&self.status),
            self.value,
            self.rows,
            self.columns,
            join(&self.primes),
            join(&self.seeds),
        ));
        out
    }
}

fn kebab<T: Serialize>(v: &T) -> String {
    serde_json::to_value(v)
        .ok()
        .and_then(|j| j.as_str().map(str::to_owned))
        .unwrap_or_default()
}

struct RankOutcome {
    value: usize,
    columns: u128,
    distinct: Option<usize>,
    certificate: Option<Certificate>,
    status: Status,
    mode: CodimMode,
    seeds: Vec<u64>,
}

/// Evaluation-matrix setup shared by the exact and randomized paths.
struct Problem<'a> {
    algebra: &'a GradedAlgebra,
    n: usize,
    monomials: Vec<CompiledMonomial>,
    // basis indices allowed for each variable 1..=n
    candidates: Vec<Vec<usize>>,
    // coordinates where values can be nonzero
    coords: Vec<usize>,
}

impl<'a> Problem<'a> {
    fn new(algebra: &'a GradedAlgebra, n: usize, shape: MonomialShape, degrees: Option<&[GroupElement]>) -> Self {
        let monomials = enumerate_monomials(n, shape).iter().map(Monomial::compile).collect();
        let (candidates, coords) = match degrees {
            Some(d) => (
                d.iter().map(|&g| algebra.component(g)).collect(),
                algebra.component(group_product(d.iter().copied())),
            ),
            None => (vec![(0..algebra.dim()).collect(); n], (0..algebra.dim()).collect()),
        };
        Problem {
            algebra,
            n,
            monomials,
            candidates,
            coords,
        }
    }

    fn rows(&self) -> usize {
        self.monomials.len()
    }

    fn tuple_count(&self) -> u128 {
        self.candidates.iter().map(|c| c.len() as u128).product()
    }

    fn exact_columns(&self) -> u128 {
        self.tuple_count() * self.coords.len() as u128
    }

    fn check_exact_guards(&self, opts: &CodimOptions) -> Result<()> {
        if self.rows() > opts.row_limit {
            return Err(Error::SizeGuard {
                what: format!("monomial rows at n = {}", self.n),
                needed: self.rows() as u128,
                limit: opts.row_limit as u128,
            });
        }
        let cols = self.exact_columns();
        if cols > opts.column_limit {
            return Err(Error::SizeGuard {
                what: format!("coordinate columns at n = {}", self.n),
                needed: cols,
                limit: opts.column_limit,
            });
        }
        Ok(())
    }

    fn fits_exact(&self, opts: &CodimOptions) -> bool {
        self.check_exact_guards(opts).is_ok()
    }

    fn exact(&self, opts: &CodimOptions) -> Result<RankOutcome> {
        self.check_exact_guards(opts)?;
        let fields = opts.fields()?;
        let a = self.algebra;
        let scale = Q::from_integer(common_denominator(a.constants().iter().map(|c| &c.coeff)));
        let max_const = a
            .constants()
            .iter()
            .map(|c| (&c.coeff * &scale).abs().to_integer())
            .max()
            .unwrap_or_default();
        // |entries| <= (dim^2 * max_const)^(n-1)
        let step = BigInt::from(a.dim() * a.dim()) * max_const;
        let bits = step.bits() * (self.n as u64).saturating_sub(1);
        if bits > MAGNITUDE_BITS {
            return Err(Error::SizeGuard {
                what: "bits of exact evaluation values".into(),
                needed: bits as u128,
                limit: MAGNITUDE_BITS as u128,
            });
        }
        let ring = CheckedI128;
        let table = a.structure_table(&ring, &scale)?;
        let tuples = self.tuple_count() as usize;
        let chunks: Vec<(usize, usize)> = (0..tuples)
            .step_by(TUPLE_CHUNK)
            .map(|s| (s, (s + TUPLE_CHUNK).min(tuples)))
            .collect();
        let dim = a.dim();
        let produced: Vec<Vec<Vec<i128>>> = chunks
            .par_iter()
            .map(|&(start, end)| {
                let mut local = Vec::new();
                let mut seen = HashSet::new();
                let mut values: Vec<Vec<i128>> = vec![Vec::new(); self.n + 1];
                for t in start..end {
                    let mut rest = t;
                    for (v, cand) in self.candidates.iter().enumerate().rev() {
                        let idx = cand[rest % cand.len()];
                        rest /= cand.len();
                        let mut unit = vec![0i128; dim];
                        unit[idx] = 1;
                        values[v + 1] = unit;
                    }
                    let evals: Vec<Vec<i128>> = self.monomials.iter().map(|m| m.eval(&ring, &table, &values)).collect();
                    for &k in &self.coords {
                        let col: Vec<i128> = evals.iter().map(|e| e[k]).collect();
                        if let Some(c) = normalize(col) {
                            if seen.insert(c.clone()) {
                                local.push(c);
                            }
                        }
                    }
                }
                local
            })
            .collect();
        let mut seen = HashSet::new();
        let mut distinct = Vec::new();
        for c in produced.into_iter().flatten() {
            if !seen.contains(&c) {
                seen.insert(c.clone());
                distinct.push(c);
            }
        }
        drop(seen);
        let cert = certified_column_rank(&distinct, self.rows(), &fields)?;
        Ok(RankOutcome {
            value: cert.rank,
            columns: self.exact_columns(),
            distinct: Some(distinct.len()),
            certificate: Some(cert.certificate),
            status: Status::Exact,
            mode: CodimMode::Exact,
            seeds: Vec::new(),
        })
    }

    fn randomized(&self, opts: &CodimOptions) -> Result<RankOutcome> {
        let fields = opts.fields()?;
        if opts.batch == 0 || opts.window == 0 || opts.seeds == 0 {
            return Err(Error::InvalidArgument("batch, window and seeds must be positive".into()));
        }
        let seeds: Vec<u64> = (0..opts.seeds as u64).map(|s| opts.seed.wrapping_add(s)).collect();
        let mut best = 0;
        let mut processed = 0u128;
        for field in &fields {
            let table = self.algebra.structure_table(field, &Q::from_integer(1.into()))?;
            for &seed in &seeds {
                let (rank, cols) = self.randomized_run(field, &table, seed, opts);
                best = best.max(rank);
                processed += cols;
            }
        }
        Ok(RankOutcome {
            value: best,
            columns: processed,
            distinct: None,
            certificate: None,
            status: Status::LowerBoundWhp,
            mode: CodimMode::Randomized,
            seeds,
        })
    }

    fn randomized_run(
        &self,
        field: &PrimeField,
        table: &crate::algebra::StructureTable<PrimeField>,
        seed: u64,
        opts: &CodimOptions,
    ) -> (usize, u128) {
        let rows = self.rows();
        let mut ech = ModpEchelon::new(*field, rows);
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ field.modulus().rotate_left(32));
        let dim = self.algebra.dim();
        let p = field.modulus();
        let per_eval = self.coords.len().max(1);
        let evals_per_batch = opts.batch.div_ceil(per_eval);
        let mut unchanged = 0;
        let mut processed = 0u128;
        if self.candidates.iter().any(Vec::is_empty) || self.coords.is_empty() {
            return (0, 0);
        }
        while unchanged < opts.window && !ech.is_full() {
            let inputs: Vec<Vec<Vec<u64>>> = (0..evals_per_batch)
                .map(|_| {
                    let mut values = vec![Vec::new(); self.n + 1];
                    for (v, cand) in self.candidates.iter().enumerate() {
                        let mut x = vec![0u64; dim];
                        for &i in cand {
                            x[i] = rng.gen_range(0..p);
                        }
                        values[v + 1] = x;
                    }
                    values
                })
                .collect();
            let columns: Vec<Vec<u64>> = inputs
                .par_iter()
                .map(|values| {
                    let evals: Vec<Vec<u64>> = self.monomials.iter().map(|m| m.eval(field, table, values)).collect();
                    self.coords
                        .iter()
                        .map(|&k| evals.iter().map(|e| e[k]).collect::<Vec<u64>>())
                        .collect::<Vec<_>>()
                })
                .collect::<Vec<_>>()
                .into_iter()
                .flatten()
                .take(opts.batch)
                .collect();
            let before = ech.rank();
            processed += columns.len() as u128;
            ech.insert_batch(columns);
            if ech.rank() == before {
                unchanged += 1;
            } else {
                unchanged = 0;
            }
        }
        (ech.rank(), processed)
    }

    fn run(&self, opts: &CodimOptions) -> Result<RankOutcome> {
        match opts.mode {
            CodimMode::Exact => self.exact(opts),
            CodimMode::Randomized => self.randomized(opts),
            CodimMode::Auto if self.fits_exact(opts) => self.exact(opts),
            CodimMode::Auto => self.randomized(opts),
        }
    }
}

/// Divides by the gcd and makes the first nonzero entry positive; `None` for
/// the zero column.
fn normalize(mut col: Vec<i128>) -> Option<Vec<i128>> {
    let first = col.iter().position(|&x| x != 0)?;
    let g = col.iter().fold(0i128, |acc, &x| acc.gcd(&x));
    let g = if col[first] < 0 { -g } else { g };
    for x in col.iter_mut() {
        *x /= g;
    }
    Some(col)
}

pub fn dimension_bound(dim: usize, n: usize) -> Option<u128> {
    (dim as u128).checked_pow(n as u32 + 1)
}

fn report(
    a: &GradedAlgebra,
    kind: CodimKind,
    n: usize,
    key: Option<ComponentKey>,
    shape: MonomialShape,
    rows: usize,
    out: RankOutcome,
    opts: &CodimOptions,
) -> CodimReport {
    CodimReport {
        algebra: a.name().to_string(),
        kind,
        n,
        key,
        rows_shape: shape,
        mode: out.mode,
        status: out.status,
        value: out.value as u128,
        rows,
        columns: out.columns,
        distinct_columns: out.distinct,
        certificate: out.certificate,
        primes: opts.primes.clone(),
        seeds: out.seeds,
        window: opts.window,
        batch: opts.batch,
        dimension_bound: dimension_bound(a.dim(), n),
        components: Vec::new(),
    }
}

fn check_n(n: usize) -> Result<()> {
    if n == 0 {
        return Err(Error::InvalidArgument("n must be at least 1".into()));
    }
    Ok(())
}

/// `c_n(A)` with all `Catalan(n-1) * n!` bracketings as rows.
pub fn codim_plain(a: &GradedAlgebra, n: usize, opts: &CodimOptions) -> Result<CodimReport> {
    check_n(n)?;
    let shape = MonomialShape::AllBracketings;
    let problem = Problem::new(a, n, shape, None);
    let out = problem.run(opts)?;
    Ok(report(a, CodimKind::Plain, n, None, shape, problem.rows(), out, opts))
}

/// Codimension over the `(n-1)!` left-normed monomials starting with `x_1`;
/// `b` must be a Lie algebra.
pub fn codim_lie(b: &GradedAlgebra, n: usize, opts: &CodimOptions) -> Result<CodimReport> {
    check_n(n)?;
    if !is_lie_algebra(b) {
        return Err(Error::NotLie(b.name().to_string()));
    }
    let shape = MonomialShape::LeftNormedFirstFixed;
    let problem = Problem::new(b, n, shape, None);
    let out = problem.run(opts)?;
    Ok(report(b, CodimKind::Lie, n, None, shape, problem.rows(), out, opts))
}

/// Variable degrees for a component key: the first `k_e` variables get `e`,
/// the next `k_a` get `a`, and so on.
pub fn key_degrees(key: &ComponentKey) -> Vec<GroupElement> {
    key.iter()
        .zip(GroupElement::ALL)
        .flat_map(|(&k, g)| std::iter::repeat_n(g, k))
        .collect()
}

/// Dimension of the multilinear component with variable degrees given by
/// `key`, modulo the graded identities of `l`.
pub fn codim_graded_component(l: &GradedAlgebra, key: ComponentKey, shape: MonomialShape, opts: &CodimOptions) -> Result<CodimReport> {
    let n: usize = key.iter().sum();
    check_n(n)?;
    let degrees = key_degrees(&key);
    let problem = Problem::new(l, n, shape, Some(&degrees));
    let out = problem.run(opts)?;
    Ok(report(l, CodimKind::GradedComponent, n, Some(key), shape, problem.rows(), out, opts))
}

/// All `(k_1, .., k_4)` with sum `n`, in lexicographic order.
pub fn compositions(n: usize) -> Vec<ComponentKey> {
    let mut out = Vec::new();
    for a in 0..=n {
        for b in 0..=n - a {
            for c in 0..=n - a - b {
                out.push([a, b, c, n - a - b - c]);
            }
        }
    }
    out
}

pub fn multinomial(key: &ComponentKey) -> u128 {
    let n: usize = key.iter().sum();
    let mut out: u128 = 1;
    let mut placed = 0;
    for &k in key {
        for i in 1..=k {
            placed += 1;
            out = out * placed as u128 / i as u128;
        }
    }
    debug_assert_eq!(placed, n);
    out
}

/// `c_n^gr(L) = sum over keys of multinomial * component dimension`.
pub fn codim_graded_total(l: &GradedAlgebra, n: usize, opts: &CodimOptions) -> Result<CodimReport> {
    check_n(n)?;
    let shape = MonomialShape::LeftNormedFirstFixed;
    let mut components = Vec::new();
    let mut total: u128 = 0;
    let mut status = Status::Exact;
    let mut mode = CodimMode::Exact;
    let mut columns = 0;
    let mut seeds = Vec::new();
    for key in compositions(n) {
        let r = codim_graded_component(l, key, shape, opts)?;
        let m = multinomial(&key);
        total += m * r.value;
        columns += r.columns;
        if r.status == Status::LowerBoundWhp {
            status = Status::LowerBoundWhp;
            mode = CodimMode::Randomized;
            seeds = r.seeds.clone();
        }
        components.push(ComponentValue {
            key,
            multinomial: m,
            value: r.value,
            status: r.status,
        });
    }
    Ok(CodimReport {
        algebra: l.name().to_string(),
        kind: CodimKind::GradedTotal,
        n,
        key: None,
        rows_shape: shape,
        mode,
        status,
        value: total,
        rows: enumerate_monomials(n, shape).len(),
        columns,
        distinct_columns: None,
        certificate: None,
        primes: opts.primes.clone(),
        seeds,
        window: opts.window,
        batch: opts.batch,
        dimension_bound: dimension_bound(l.dim(), n),
        components,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TrendRow {
    pub n: usize,
    pub value: u128,
    pub status: Status,
    /// `c_n^(1/n)`
    pub root: f64,
    /// `c_(n+1) / c_n`, absent on the last row or when `c_n = 0`.
    pub ratio: Option<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Trend {
    pub algebra: String,
    pub rows_shape: MonomialShape,
    pub rows: Vec<TrendRow>,
    pub reports: Vec<CodimReport>,
}

impl Trend {
    pub fn to_tsv(&self) -> String {
        let mut out = String::from("n\tc_n\tstatus\troot\tratio\n");
        for r in &self.rows {
            out.push_str(&format!(
                "{}\t{}\t{}\t{}\t{}\n",
                r.n,
                r.value,
                kebab(&r.status),
                r.root,
                r.ratio.map_or_else(|| "-".to_string(), |x| x.to_string())
            ));
        }
        out
    }
}

/// Rounds to 12 significant digits.
pub fn round_sig(x: f64) -> f64 {
    if x == 0.0 || !x.is_finite() {
        return x;
    }
    format!("{x:.11e}").parse().unwrap_or(x)
}

/// `(n, c_n, c_n^(1/n), c_(n+1)/c_n)` for `n = 1..=n_max`. Lie inputs use
/// left-normed rows, others all bracketings. No limit is claimed.
pub fn exponent_trend(a: &GradedAlgebra, n_max: usize, opts: &CodimOptions) -> Result<Trend> {
    check_n(n_max)?;
    let lie = is_lie_algebra(a);
    let mut reports = Vec::new();
    for n in 1..=n_max {
        let r = if lie { codim_lie(a, n, opts)? } else { codim_plain(a, n, opts)? };
        reports.push(r);
    }
    let rows = reports
        .iter()
        .enumerate()
        .map(|(i, r)| TrendRow {
            n: r.n,
            value: r.value,
            status: r.status,
            root: round_sig((r.value as f64).powf(1.0 / r.n as f64)),
            ratio: reports
                .get(i + 1)
                .filter(|_| r.value > 0)
                .map(|next| round_sig(next.value as f64 / r.value as f64)),
        })
        .collect();
    Ok(Trend {
        algebra: a.name().to_string(),
        rows_shape: if lie {
            MonomialShape::LeftNormedFirstFixed
        } else {
            MonomialShape::AllBracketings
        },
        rows,
        reports,
    })
}

/// Value of a trend bound check: `c_n^(1/n) <= d * d^(1/n)`.
pub fn root_within_bound(row: &TrendRow, dim: usize) -> bool {
    let d = dim as f64;
    row.root <= d * d.powf(1.0 / row.n as f64) * (1.0 + 1e-12)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{abelian_factory, sl2_factory, tensor_color_construct};
    use crate::group::canonical_cocycle;

    fn l_sl2() -> GradedAlgebra {
        tensor_color_construct(&sl2_factory(), canonical_cocycle().table()).unwrap()
    }

    #[test]
    fn small_exact_values() {
        let sl2 = sl2_factory();
        let o = CodimOptions::exact();
        assert_eq!(codim_plain(&sl2, 1, &o).unwrap().value, 1);
        assert_eq!(codim_plain(&sl2, 2, &o).unwrap().value, 1);
        assert_eq!(codim_plain(&l_sl2(), 2, &o).unwrap().value, 2);
        assert_eq!(codim_lie(&abelian_factory(3).unwrap(), 2, &o).unwrap().value, 0);
        assert!(matches!(codim_lie(&l_sl2(), 2, &o), Err(Error::NotLie(_))));
    }

    #[test]
    fn randomized_never_exceeds_exact() {
        let sl2 = sl2_factory();
        for n in 1..=4 {
            let e = codim_plain(&sl2, n, &CodimOptions::exact()).unwrap();
            let r = codim_plain(&sl2, n, &CodimOptions::randomized(7)).unwrap();
            assert_eq!(r.status, Status::LowerBoundWhp);
            assert_eq!(r.value, e.value, "n = {n}");
        }
    }

    #[test]
    fn size_guard_reports_need() {
        let o = CodimOptions::exact();
        match codim_plain(&l_sl2(), 5, &o) {
            Err(Error::SizeGuard { needed, limit, .. }) => {
                assert_eq!(needed, 12u128.pow(6));
                assert_eq!(limit, DEFAULT_COLUMN_LIMIT);
            }
            other => panic!("expected a size guard, got {other:?}"),
        }
    }

    #[test]
    fn default_primes_are_prime() {
        for p in DEFAULT_PRIMES {
            assert!(crate::ring::is_prime(p) && p > 1_000_000 && p < 1 << 26);
        }
    }

    #[test]
    fn multinomials_sum_to_power_of_four() {
        for n in 1..=6 {
            let s: u128 = compositions(n).iter().map(multinomial).sum();
            assert_eq!(s, 4u128.pow(n as u32));
        }
        assert_eq!(compositions(2).len(), 10);
        assert_eq!(multinomial(&[1, 1, 1, 1]), 24);
    }

    #[test]
    fn normalize_columns() {
        assert_eq!(normalize(vec![0, -4, 6]), Some(vec![0, 2, -3]));
        assert_eq!(normalize(vec![0, 0]), None);
    }
}
