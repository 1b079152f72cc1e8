//! Partitions, Young tableaux, hook dimensions, and Young symmetrizers acting
//! on multilinear polynomials.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{qi, Q};
use crate::perm::{all_permutations, factorial, Permutation};
use crate::poly::{sn_act, MultilinearPoly};

/// Largest `n` for which group-algebra elements of `S_n` are materialized.
pub const GROUP_ALGEBRA_CAP: usize = 8;

/// Largest `n` accepted by [`partitions_of`].
pub const PARTITIONS_CAP: usize = 40;

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct Partition(Vec<usize>);

impl TryFrom<Vec<usize>> for Partition {
    type Error = Error;

    fn try_from(parts: Vec<usize>) -> Result<Self> {
        Partition::new(parts)
    }
}

impl From<Partition> for Vec<usize> {
    fn from(p: Partition) -> Self {
        p.0
    }
}

impl Partition {
    pub fn new(parts: Vec<usize>) -> Result<Self> {
        if parts.contains(&0) || parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::InvalidArgument(format!(
                "{parts:?} is not a weakly decreasing list of positive integers"
            )));
        }
        Ok(Partition(parts))
    }

    /// `(width^height)`.
    pub fn rectangle(height: usize, width: usize) -> Self {
        Partition(vec![width; height])
    }

    pub fn parts(&self) -> &[usize] {
        &self.0
    }

    pub fn weight(&self) -> usize {
        self.0.iter().sum()
    }

    pub fn num_rows(&self) -> usize {
        self.0.len()
    }

    pub fn conjugate(&self) -> Partition {
        let width = self.0.first().copied().unwrap_or(0);
        Partition((0..width).map(|c| self.0.iter().filter(|&&r| r > c).count()).collect())
    }

    /// Hook length of box `(row, col)`, 0-based.
    pub fn hook(&self, row: usize, col: usize) -> usize {
        let arm = self.0[row] - col - 1;
        let leg = self.0[row + 1..].iter().filter(|&&r| r > col).count();
        arm + leg + 1
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|x| x.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// `n! / prod(hooks)`: the dimension of the irreducible `S_n`-module.
pub fn hook_dim(lambda: &Partition) -> BigUint {
    let n = lambda.weight();
    let num: BigUint = (1..=n).map(BigUint::from).product();
    let mut den = BigUint::one();
    for (r, &len) in lambda.parts().iter().enumerate() {
        for c in 0..len {
            den *= BigUint::from(lambda.hook(r, c));
        }
    }
    num / den
}

/// All partitions of `n`, in increasing lexicographic order of part lists.
pub fn partitions_of(n: usize) -> Result<Vec<Partition>> {
    if n > PARTITIONS_CAP {
        return Err(Error::CapExceeded {
            what: "partitions of n".into(),
            needed: n as u128,
            cap: PARTITIONS_CAP as u128,
        });
    }
    let mut out = Vec::new();
    let mut cur = Vec::new();
    gen_partitions(n, n, &mut cur, &mut out);
    out.sort();
    Ok(out)
}

fn gen_partitions(rest: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Partition>) {
    if rest == 0 {
        out.push(Partition(cur.clone()));
        return;
    }
    for part in (1..=max.min(rest)).rev() {
        cur.push(part);
        gen_partitions(rest - part, part, cur, out);
        cur.pop();
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RectangleBound {
    pub q: usize,
    pub k: usize,
    pub n: usize,
    #[serde(serialize_with = "serialize_biguint")]
    pub hook_dim: BigUint,
    pub bound: f64,
    pub holds: bool,
}

fn serialize_biguint<S: serde::Serializer>(x: &BigUint, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&x.to_string())
}

pub(crate) fn ln_biguint(x: &BigUint) -> f64 {
    let bits = x.bits();
    if bits < 1000 {
        return x.to_f64().unwrap_or(f64::INFINITY).ln();
    }
    let shift = bits - 64;
    (x >> shift).to_f64().unwrap().ln() + shift as f64 * std::f64::consts::LN_2
}

/// Hook dimension of the rectangle `((2k+1)^q)` against `q!/(2 pi n)^q * q^n`
/// with `n = (2k+1)q`. The comparison is made in log space.
pub fn rectangle_bound(q: usize, k: usize) -> Result<RectangleBound> {
    if q == 0 || k == 0 {
        return Err(Error::InvalidArgument("q and k must be positive".into()));
    }
    let n = (2 * k + 1) * q;
    let d = hook_dim(&Partition::rectangle(q, 2 * k + 1));
    let ln_q_fact: f64 = (1..=q).map(|i| (i as f64).ln()).sum();
    let ln_bound = ln_q_fact - q as f64 * (2.0 * std::f64::consts::PI * n as f64).ln() + n as f64 * (q as f64).ln();
    Ok(RectangleBound {
        q,
        k,
        n,
        holds: ln_biguint(&d) >= ln_bound,
        hook_dim: d,
        bound: ln_bound.exp(),
    })
}

/// `(k, n, d, d^(1/n))` for the rectangles `((2k+1)^q)`, `k = 1..=k_max`.
pub fn rectangle_root_trend(q: usize, k_max: usize) -> Result<Vec<(usize, usize, BigUint, f64)>> {
    (1..=k_max)
        .map(|k| {
            let r = rectangle_bound(q, k)?;
            let root = (ln_biguint(&r.hook_dim) / r.n as f64).exp();
            Ok((k, r.n, r.hook_dim, root))
        })
        .collect()
}

/// Shape plus a filling of `1..n`, stored as rows.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "Vec<Vec<usize>>", into = "Vec<Vec<usize>>")]
pub struct Tableau {
    rows: Vec<Vec<usize>>,
}

impl TryFrom<Vec<Vec<usize>>> for Tableau {
    type Error = Error;

    fn try_from(rows: Vec<Vec<usize>>) -> Result<Self> {
        Tableau::new(rows)
    }
}

impl From<Tableau> for Vec<Vec<usize>> {
    fn from(t: Tableau) -> Self {
        t.rows
    }
}

impl Tableau {
    pub fn new(rows: Vec<Vec<usize>>) -> Result<Self> {
        Partition::new(rows.iter().map(Vec::len).collect())?;
        let n: usize = rows.iter().map(Vec::len).sum();
        let mut seen = vec![false; n + 1];
        for &x in rows.iter().flatten() {
            if x == 0 || x > n || seen[x] {
                return Err(Error::InvalidArgument(format!("filling {rows:?} is not a bijection onto 1..{n}")));
            }
            seen[x] = true;
        }
        Ok(Tableau { rows })
    }

    /// Row-major filling `1..n`.
    pub fn canonical(shape: &Partition) -> Self {
        let mut next = 1;
        let rows = shape
            .parts()
            .iter()
            .map(|&len| {
                let row: Vec<usize> = (next..next + len).collect();
                next += len;
                row
            })
            .collect();
        Tableau { rows }
    }

    pub fn rows(&self) -> &[Vec<usize>] {
        &self.rows
    }

    pub fn columns(&self) -> Vec<Vec<usize>> {
        let width = self.rows.first().map_or(0, Vec::len);
        (0..width)
            .map(|c| self.rows.iter().filter_map(|r| r.get(c).copied()).collect())
            .collect()
    }

    pub fn shape(&self) -> Partition {
        Partition(self.rows.iter().map(Vec::len).collect())
    }

    pub fn size(&self) -> usize {
        self.rows.iter().map(Vec::len).sum()
    }
}

/// Sparse element of the rational group algebra of `S_n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupAlgebraElement {
    n: usize,
    terms: BTreeMap<Permutation, Q>,
}

impl GroupAlgebraElement {
    pub fn zero(n: usize) -> Self {
        GroupAlgebraElement { n, terms: BTreeMap::new() }
    }

    pub fn identity(n: usize) -> Self {
        let mut e = Self::zero(n);
        e.add_term(Permutation::identity(n), Q::one());
        e
    }

    pub fn degree(&self) -> usize {
        self.n
    }

    pub fn add_term(&mut self, p: Permutation, c: Q) {
        assert_eq!(p.len(), self.n);
        let entry = self.terms.entry(p.clone()).or_insert_with(Q::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&p);
        }
    }

    pub fn support_size(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Permutation, &Q)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, p: &Permutation) -> Q {
        self.terms.get(p).cloned().unwrap_or_else(Q::zero)
    }

    pub fn scale(&self, c: &Q) -> Self {
        let mut out = Self::zero(self.n);
        for (p, x) in &self.terms {
            out.add_term(p.clone(), x * c);
        }
        out
    }

    /// Product in the group algebra, `(s)(t) = s o t`.
    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero(self.n);
        for (s, a) in &self.terms {
            for (t, b) in &other.terms {
                out.add_term(s.compose(t), a * b);
            }
        }
        out
    }

    /// `sum c_s (s f)`; summands are computed in parallel and added in order.
    pub fn act(&self, f: &MultilinearPoly) -> Result<MultilinearPoly> {
        let terms: Vec<(&Permutation, &Q)> = self.terms.iter().collect();
        let parts = terms
            .par_iter()
            .map(|(p, c)| Ok(sn_act(p, f)?.scale(c)))
            .collect::<Result<Vec<_>>>()?;
        let mut out = MultilinearPoly::zero(f.vars().iter().copied());
        for part in &parts {
            out = out.add(part)?;
        }
        Ok(out)
    }
}

fn check_cap(n: usize) -> Result<()> {
    if n > GROUP_ALGEBRA_CAP {
        return Err(Error::CapExceeded {
            what: "group algebra of S_n".into(),
            needed: factorial(n),
            cap: factorial(GROUP_ALGEBRA_CAP),
        });
    }
    Ok(())
}

/// Sum of `sign^signed * s` over the permutations preserving every block.
fn block_sum(n: usize, blocks: &[Vec<usize>], signed: bool) -> GroupAlgebraElement {
    let mut elems = vec![Permutation::identity(n)];
    for block in blocks.iter().filter(|b| b.len() > 1) {
        let idx: Vec<usize> = block.iter().map(|x| x - 1).collect();
        let mut next = Vec::new();
        for base in &elems {
            for p in all_permutations(idx.len()) {
                let mut images = base.images().to_vec();
                for (i, &from) in idx.iter().enumerate() {
                    images[from] = idx[p.apply(i)];
                }
                next.push(Permutation::from_images(images).expect("block permutation"));
            }
        }
        elems = next;
    }
    let mut out = GroupAlgebraElement::zero(n);
    for p in elems {
        let c = if signed { qi(p.sign() as i64) } else { Q::one() };
        out.add_term(p, c);
    }
    out
}

/// Row symmetrizer `R` and signed column symmetrizer `C` of `t`.
pub fn symmetrizers(t: &Tableau) -> Result<(GroupAlgebraElement, GroupAlgebraElement)> {
    let n = t.size();
    check_cap(n)?;
    Ok((block_sum(n, t.rows(), false), block_sum(n, &t.columns(), true)))
}

/// `e_T = R C`.
pub fn essential_idempotent(t: &Tableau) -> Result<GroupAlgebraElement> {
    let (r, c) = symmetrizers(t)?;
    Ok(r.mul(&c))
}

/// `e_T f = R (C f)`; `f` must be on the variables `1..n`, `n = |T|`.
pub fn essential_idempotent_apply(t: &Tableau, f: &MultilinearPoly) -> Result<MultilinearPoly> {
    let (r, c) = symmetrizers(t)?;
    r.act(&c.act(f)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::sl2_factory;
    use crate::linalg::{is_zero_vector, zero_vector};
    use crate::poly::{evaluate, Evaluation, Monomial};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    // Counts standard tableaux by removing the box holding n from a corner.
    fn syt_count(shape: &[usize]) -> u128 {
        if shape.iter().sum::<usize>() <= 1 {
            return 1;
        }
        let mut total = 0;
        for r in 0..shape.len() {
            let is_corner = r + 1 == shape.len() || shape[r + 1] < shape[r];
            if is_corner {
                let mut s = shape.to_vec();
                s[r] -= 1;
                if s[r] == 0 {
                    s.pop();
                }
                total += syt_count(&s);
            }
        }
        total
    }

    fn partition_count(n: usize) -> u64 {
        // p(n) by the recurrence over the largest allowed part
        let mut p = vec![0u64; n + 1];
        p[0] = 1;
        for part in 1..=n {
            for m in part..=n {
                p[m] += p[m - part];
            }
        }
        p[n]
    }

    #[test]
    fn hook_dims_match_tableau_count() {
        for n in 1..=8 {
            let mut sum_sq = BigUint::zero();
            for lambda in partitions_of(n).unwrap() {
                let d = hook_dim(&lambda);
                assert_eq!(d, BigUint::from(syt_count(lambda.parts())), "{lambda}");
                sum_sq += &d * &d;
            }
            assert_eq!(sum_sq, BigUint::from(factorial(n)));
        }
        assert_eq!(hook_dim(&Partition::new(vec![2, 1]).unwrap()), BigUint::from(2u8));
        assert_eq!(hook_dim(&Partition::new(vec![6]).unwrap()), BigUint::one());
    }

    #[test]
    fn partition_counts() {
        assert_eq!(partitions_of(4).unwrap().len(), 5);
        assert_eq!(partitions_of(1).unwrap(), vec![Partition(vec![1])]);
        assert_eq!(partitions_of(10).unwrap().len() as u64, partition_count(10));
        assert_eq!(partitions_of(10).unwrap().len(), 42);
        assert!(partitions_of(41).is_err());
        assert!(Partition::new(vec![1, 2]).is_err());
    }

    #[test]
    fn rectangle_examples() {
        let r = rectangle_bound(3, 1).unwrap();
        assert_eq!(r.hook_dim, BigUint::from(42u8));
        let direct = 6.0 * 3f64.powi(9) / (2.0 * std::f64::consts::PI * 9.0).powi(3);
        assert!((r.bound - direct).abs() < 1e-9);
        assert!((r.bound - 0.654).abs() < 1e-3);
        assert!(r.holds);
        let one = rectangle_bound(1, 2).unwrap();
        assert_eq!(one.hook_dim, BigUint::one());
        assert!(one.bound < 1.0 && one.holds);
        let trend = rectangle_root_trend(3, 6).unwrap();
        assert!(trend.windows(2).all(|w| w[0].3 < w[1].3));
        assert!(trend.iter().all(|row| row.3 < 3.0));
    }

    #[test]
    fn symmetrizer_shapes() {
        let row = Tableau::canonical(&Partition(vec![4]));
        let (r, c) = symmetrizers(&row).unwrap();
        assert_eq!(r.support_size(), 24);
        assert_eq!(c, GroupAlgebraElement::identity(4));
        let col = Tableau::canonical(&Partition(vec![1, 1, 1]));
        let (r, c) = symmetrizers(&col).unwrap();
        assert_eq!(r, GroupAlgebraElement::identity(3));
        assert_eq!(c.support_size(), 6);
        let t = Tableau::canonical(&Partition(vec![3, 2, 2]));
        assert_eq!(symmetrizers(&t).unwrap().0.support_size(), 6 * 2 * 2);
        assert!(symmetrizers(&Tableau::canonical(&Partition(vec![9]))).is_err());
    }

    #[test]
    fn young_symmetrizer_is_quasi_idempotent() {
        for n in 1..=5 {
            for lambda in partitions_of(n).unwrap() {
                let e = essential_idempotent(&Tableau::canonical(&lambda)).unwrap();
                let gamma = Q::from_integer((factorial(n) / hook_dim(&lambda).to_u128().unwrap()).into());
                assert_eq!(e.mul(&e), e.scale(&gamma), "{lambda}");
            }
        }
    }

    #[test]
    fn column_symmetric_input_is_killed() {
        let t = Tableau::canonical(&Partition(vec![2, 1]));
        // [[x1,x3],x2] + [[x3,x1],x2] is symmetric in x1, x3 which share a column
        let f = MultilinearPoly::from_terms(vec![
            (qi(1), Monomial::left_normed(&[1, 3, 2])),
            (qi(1), Monomial::left_normed(&[3, 1, 2])),
        ])
        .unwrap();
        let (_, c) = symmetrizers(&t).unwrap();
        assert!(c.act(&f).unwrap().is_zero());
    }

    #[test]
    fn tall_shapes_vanish_on_sl2() {
        let sl2 = sl2_factory();
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for shape in [vec![1, 1, 1, 1], vec![2, 1, 1, 1]] {
            let t = Tableau::canonical(&Partition(shape));
            let n = t.size() as u32;
            let f = MultilinearPoly::monomial(Monomial::left_normed(&(1..=n).collect::<Vec<_>>())).unwrap();
            let g = essential_idempotent_apply(&t, &f).unwrap();
            for _ in 0..5 {
                let mut e = Evaluation::new();
                for v in 1..=n {
                    e.set(v, (0..3).map(|_| qi(rng.gen_range(-5..=5))).collect());
                }
                let val = evaluate(&g, &sl2, &e).unwrap();
                assert!(is_zero_vector(&val));
                assert_eq!(val, zero_vector(3));
            }
        }
    }
}
