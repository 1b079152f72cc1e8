//! Ranks of integer matrices: fraction-free elimination over the rationals,
//! elimination over prime fields, and a certified column rank that combines
//! the two.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rayon::prelude::*;

use crate::error::Result;
use crate::linalg::{Subspace, Q};
use crate::ring::PrimeField;

/// Rank over the rationals by Bareiss fraction-free elimination.
pub fn rank_exact(m: &[Vec<BigInt>]) -> usize {
    let rows = m.len();
    if rows == 0 {
        return 0;
    }
    let cols = m[0].len();
    let mut a: Vec<Vec<BigInt>> = m.to_vec();
    let mut prev = BigInt::one();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        for i in r + 1..rows {
            for j in c + 1..cols {
                let v = &a[r][c] * &a[i][j] - &a[i][c] * &a[r][j];
                a[i][j] = v / &prev;
            }
            a[i][c] = BigInt::zero();
        }
        prev = a[r][c].clone();
        r += 1;
    }
    r
}

pub fn rank_exact_i64(m: &[Vec<i64>]) -> usize {
    let big: Vec<Vec<BigInt>> = m.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect();
    rank_exact(&big)
}

/// Rank over `Z/pZ` of an integer matrix.
pub fn rank_mod_p(m: &[Vec<i64>], field: &PrimeField) -> usize {
    let rows = m.len();
    if rows == 0 {
        return 0;
    }
    let mut ech = ModpEchelon::new(*field, m[0].len());
    for row in m {
        let v: Vec<u64> = row.iter().map(|&x| field.reduce_i128(x as i128)).collect();
        ech.insert(v);
    }
    ech.rank()
}

/// Incremental echelon basis of a subspace of `(Z/pZ)^len`.
#[derive(Clone, Debug)]
pub struct ModpEchelon {
    field: PrimeField,
    len: usize,
    // each row is 1 at its pivot
    basis: Vec<(usize, Vec<u64>)>,
}

impl ModpEchelon {
    pub fn new(field: PrimeField, len: usize) -> Self {
        ModpEchelon {
            field,
            len,
            basis: Vec::new(),
        }
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn is_full(&self) -> bool {
        self.basis.len() == self.len
    }

    /// Entries of `v` must lie in `0..p`. Reduction modulo `p` is deferred
    /// while the accumulated products still fit in a `u64`.
    pub fn reduce(&self, mut v: Vec<u64>) -> Vec<u64> {
        let p = self.field.modulus();
        let slack = (u64::MAX - p) / ((p - 1) * (p - 1));
        let mut pending = 0;
        for (piv, row) in &self.basis {
            let f = v[*piv] % p;
            if f == 0 {
                continue;
            }
            if pending == slack {
                v.iter_mut().for_each(|x| *x %= p);
                pending = 0;
            }
            let nf = p - f;
            for (x, &r) in v.iter_mut().zip(row) {
                *x += nf * r;
            }
            pending += 1;
        }
        v.iter_mut().for_each(|x| *x %= p);
        v
    }

    /// Inserts columns in order, reducing them against the current basis in
    /// parallel first; returns the indices that raised the rank.
    pub fn insert_batch(&mut self, batch: Vec<Vec<u64>>) -> Vec<usize> {
        let known = self.basis.len();
        let reduced: Vec<Vec<u64>> = batch.into_par_iter().map(|v| self.reduce(v)).collect();
        let mut grew = Vec::new();
        for (i, v) in reduced.into_iter().enumerate() {
            if self.is_full() {
                break;
            }
            let tail = ModpEchelon {
                field: self.field,
                len: self.len,
                basis: self.basis.split_off(known),
            };
            let w = tail.reduce(v);
            self.basis.extend(tail.basis);
            if self.push_reduced(w) {
                grew.push(i);
            }
        }
        grew
    }

    /// Adds `v`; returns whether the rank grew.
    pub fn insert(&mut self, v: Vec<u64>) -> bool {
        assert_eq!(v.len(), self.len);
        let w = self.reduce(v);
        self.push_reduced(w)
    }

    fn push_reduced(&mut self, w: Vec<u64>) -> bool {
        let Some(piv) = w.iter().position(|&x| x != 0) else {
            return false;
        };
        let inv = self.field.inv(w[piv]).expect("nonzero pivot");
        let p = self.field.modulus();
        let w: Vec<u64> = w.iter().map(|&x| x * inv % p).collect();
        self.basis.push((piv, w));
        true
    }
}

/// Reduced row echelon form over `Z/pZ`; returns pivot columns.
pub fn rref_mod_p(a: &mut [Vec<u64>], field: &PrimeField) -> Vec<usize> {
    let rows = a.len();
    if rows == 0 {
        return Vec::new();
    }
    let p = field.modulus();
    let cols = a[0].len();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(piv) = (r..rows).find(|&i| a[i][c] != 0) else {
            continue;
        };
        a.swap(r, piv);
        let inv = field.inv(a[r][c]).unwrap();
        for x in a[r].iter_mut() {
            *x = *x * inv % p;
        }
        let pivot_row = a[r].clone();
        for (i, row) in a.iter_mut().enumerate() {
            if i == r || row[c] == 0 {
                continue;
            }
            let f = p - row[c];
            for (x, &y) in row.iter_mut().zip(&pivot_row).skip(c) {
                if y != 0 {
                    *x = (*x + f * y) % p;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

/// `x/y` with `x = a y (mod m)` and `|x|, |y| <= sqrt(m/2)`, if one exists.
pub fn rational_reconstruct(a: &BigInt, m: &BigInt) -> Option<Q> {
    let bound = (m / BigInt::from(2)).sqrt();
    let a = a.mod_floor(m);
    if a <= bound {
        return Some(Q::from_integer(a));
    }
    if m - &a <= bound {
        return Some(Q::from_integer(a - m));
    }
    let (mut r0, mut r1) = (m.clone(), a);
    let (mut t0, mut t1) = (BigInt::zero(), BigInt::one());
    while r1 > bound {
        let q = &r0 / &r1;
        let r2 = &r0 - &q * &r1;
        let t2 = &t0 - &q * &t1;
        r0 = std::mem::replace(&mut r1, r2);
        t0 = std::mem::replace(&mut t1, t2);
    }
    if t1.is_zero() || t1.abs() > bound || !r1.gcd(&t1).is_one() {
        return None;
    }
    Some(Q::new(r1, t1))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Certificate {
    /// The prime-field rank equals the number of rows.
    FullRank,
    /// Integer left-kernel vectors, lifted from prime fields and checked
    /// exactly against every column.
    KernelVectors,
    /// Exact elimination over the rationals.
    RationalElimination,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CertifiedRank {
    pub rank: usize,
    pub certificate: Certificate,
    /// Integer vectors `k` with `k . c = 0` for every column `c`; together
    /// with `rank` they span the ambient space.
    pub kernel: Vec<Vec<BigInt>>,
}

const SELECTION_BATCH: usize = 256;

/// Exact rank of the matrix with the given integer columns (each of length
/// `len`). Pivot columns are picked over the first prime; the rank is then
/// certified over the rationals. `primes` must be nonempty.
pub fn certified_column_rank(columns: &[Vec<i128>], len: usize, primes: &[PrimeField]) -> Result<CertifiedRank> {
    let field = primes[0];
    let mut ech = ModpEchelon::new(field, len);
    let mut selected = Vec::new();
    for (start, chunk) in (0..).step_by(SELECTION_BATCH).zip(columns.chunks(SELECTION_BATCH)) {
        if ech.is_full() {
            break;
        }
        let reduced = chunk.iter().map(|c| c.iter().map(|&x| field.reduce_i128(x)).collect()).collect();
        selected.extend(ech.insert_batch(reduced).into_iter().map(|i| start + i));
    }
    let r = ech.rank();
    if r == len {
        return Ok(CertifiedRank {
            rank: r,
            certificate: Certificate::FullRank,
            kernel: Vec::new(),
        });
    }
    if let Some(kernel) = lift_kernel(columns, &selected, len, primes) {
        if kernel_annihilates(&kernel, columns) {
            return Ok(CertifiedRank {
                rank: r,
                certificate: Certificate::KernelVectors,
                kernel,
            });
        }
    }
    Ok(exact_fallback(columns, len))
}

fn exact_fallback(columns: &[Vec<i128>], len: usize) -> CertifiedRank {
    let mut s = Subspace::new(len);
    for c in columns {
        if s.dim() == len {
            break;
        }
        let v: Vec<Q> = c.iter().map(|&x| Q::from_integer(BigInt::from(x))).collect();
        s.insert(&v);
    }
    CertifiedRank {
        rank: s.dim(),
        certificate: Certificate::RationalElimination,
        kernel: Vec::new(),
    }
}

/// Left kernel of the selected columns, computed modulo each prime, combined
/// by CRT and lifted to integer vectors.
fn lift_kernel(columns: &[Vec<i128>], selected: &[usize], len: usize, primes: &[PrimeField]) -> Option<Vec<Vec<BigInt>>> {
    let mut modulus = BigInt::one();
    let mut combined: Option<(Vec<usize>, Vec<Vec<BigInt>>)> = None;
    for field in primes {
        let mut st: Vec<Vec<u64>> = selected
            .iter()
            .map(|&j| columns[j].iter().map(|&x| field.reduce_i128(x)).collect())
            .collect();
        let pivots = rref_mod_p(&mut st, field);
        if pivots.len() != selected.len() {
            // this prime divides a minor; skip it
            continue;
        }
        let p = BigInt::from(field.modulus());
        match &mut combined {
            None => {
                let x = st.iter().map(|row| row.iter().map(|&v| BigInt::from(v)).collect()).collect();
                combined = Some((pivots, x));
                modulus = p;
            }
            Some((piv0, x)) => {
                if *piv0 != pivots {
                    continue;
                }
                let inv = modulus.modpow(&(&p - 2u32), &p);
                for (xrow, srow) in x.iter_mut().zip(&st) {
                    for (a, &b) in xrow.iter_mut().zip(srow) {
                        // a' = a + modulus * ((b - a) * modulus^-1 mod p)
                        let t = ((BigInt::from(b) - &*a) * &inv).mod_floor(&p);
                        *a += &modulus * t;
                    }
                }
                modulus *= p;
            }
        }
    }
    let (pivots, x) = combined?;
    let free: Vec<usize> = (0..len).filter(|i| pivots.binary_search(i).is_err()).collect();
    free.par_iter()
        .map(|&i| {
            // k_i = e_i - sum_t X[t][i] e_{P_t}
            let mut coeffs: Vec<Q> = Vec::with_capacity(pivots.len());
            for row in &x {
                coeffs.push(rational_reconstruct(&row[i], &modulus)?);
            }
            let den = coeffs.iter().fold(BigInt::one(), |acc, q| acc.lcm(q.denom()));
            let mut k = vec![BigInt::zero(); len];
            k[i] = den.clone();
            for (t, q) in coeffs.iter().enumerate() {
                k[pivots[t]] = -(q * Q::from_integer(den.clone())).to_integer();
            }
            Some(k)
        })
        .collect()
}

fn kernel_annihilates(kernel: &[Vec<BigInt>], columns: &[Vec<i128>]) -> bool {
    let sparse: Vec<Vec<(usize, BigInt, Option<i128>)>> = kernel
        .iter()
        .map(|k| {
            k.iter()
                .enumerate()
                .filter(|(_, x)| !x.is_zero())
                .map(|(i, x)| (i, x.clone(), x.to_i128()))
                .collect()
        })
        .collect();
    columns.par_iter().all(|c| sparse.iter().all(|k| dot_is_zero(k, c)))
}

fn dot_is_zero(k: &[(usize, BigInt, Option<i128>)], c: &[i128]) -> bool {
    let mut acc: i128 = 0;
    let mut ok = true;
    for (i, _, small) in k {
        let Some(s) = small else {
            ok = false;
            break;
        };
        match s.checked_mul(c[*i]).and_then(|v| acc.checked_add(v)) {
            Some(v) => acc = v,
            None => {
                ok = false;
                break;
            }
        }
    }
    if ok {
        return acc == 0;
    }
    let total: BigInt = k.iter().map(|(i, big, _)| big * BigInt::from(c[*i])).sum();
    total.is_zero()
}
