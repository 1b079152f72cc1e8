//! Scalar rings used for evaluation: exact rationals, big and checked machine
//! integers, and prime fields.

use std::fmt::Debug;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::linalg::Q;

pub trait Ring: Sync {
    type El: Clone + PartialEq + Debug + Send + Sync;

    fn zero(&self) -> Self::El;
    fn one(&self) -> Self::El;
    fn is_zero(&self, x: &Self::El) -> bool;
    fn add(&self, x: &Self::El, y: &Self::El) -> Self::El;
    fn mul(&self, x: &Self::El, y: &Self::El) -> Self::El;
    fn neg(&self, x: &Self::El) -> Self::El;
    fn from_i64(&self, v: i64) -> Self::El;
    fn from_rational(&self, q: &Q) -> Result<Self::El>;

    fn add_assign(&self, acc: &mut Self::El, x: &Self::El) {
        *acc = self.add(acc, x);
    }

    fn sub(&self, x: &Self::El, y: &Self::El) -> Self::El {
        self.add(x, &self.neg(y))
    }

    /// `acc += x * y`
    fn mul_add_assign(&self, acc: &mut Self::El, x: &Self::El, y: &Self::El) {
        let p = self.mul(x, y);
        self.add_assign(acc, &p);
    }
}

#[derive(Clone, Copy, Debug, Default)]
pub struct Rationals;

impl Ring for Rationals {
    type El = Q;

    fn zero(&self) -> Q {
        Q::zero()
    }
    fn one(&self) -> Q {
        Q::one()
    }
    fn is_zero(&self, x: &Q) -> bool {
        x.is_zero()
    }
    fn add(&self, x: &Q, y: &Q) -> Q {
        x + y
    }
    fn mul(&self, x: &Q, y: &Q) -> Q {
        x * y
    }
    fn neg(&self, x: &Q) -> Q {
        -x
    }
    fn from_i64(&self, v: i64) -> Q {
        Q::from_integer(BigInt::from(v))
    }
    fn from_rational(&self, q: &Q) -> Result<Q> {
        Ok(q.clone())
    }
    fn add_assign(&self, acc: &mut Q, x: &Q) {
        *acc += x;
    }
}

/// Arbitrary-precision integers; only integral rationals embed.
#[derive(Clone, Copy, Debug, Default)]
pub struct BigIntegers;

impl Ring for BigIntegers {
    type El = BigInt;

    fn zero(&self) -> BigInt {
        BigInt::zero()
    }
    fn one(&self) -> BigInt {
        BigInt::one()
    }
    fn is_zero(&self, x: &BigInt) -> bool {
        x.is_zero()
    }
    fn add(&self, x: &BigInt, y: &BigInt) -> BigInt {
        x + y
    }
    fn mul(&self, x: &BigInt, y: &BigInt) -> BigInt {
        x * y
    }
    fn neg(&self, x: &BigInt) -> BigInt {
        -x
    }
    fn from_i64(&self, v: i64) -> BigInt {
        BigInt::from(v)
    }
    fn from_rational(&self, q: &Q) -> Result<BigInt> {
        if q.is_integer() {
            Ok(q.to_integer())
        } else {
            Err(Error::NotRepresentable(q.to_string()))
        }
    }
    fn add_assign(&self, acc: &mut BigInt, x: &BigInt) {
        *acc += x;
    }
}

/// `i128` arithmetic that panics on overflow. Callers bound magnitudes up
/// front (see `codim`), so overflow indicates a broken guard.
#[derive(Clone, Copy, Debug, Default)]
pub struct CheckedI128;

impl Ring for CheckedI128 {
    type El = i128;

    fn zero(&self) -> i128 {
        0
    }
    fn one(&self) -> i128 {
        1
    }
    fn is_zero(&self, x: &i128) -> bool {
        *x == 0
    }
    fn add(&self, x: &i128, y: &i128) -> i128 {
        x.checked_add(*y).expect("i128 overflow in exact evaluation")
    }
    fn mul(&self, x: &i128, y: &i128) -> i128 {
        x.checked_mul(*y).expect("i128 overflow in exact evaluation")
    }
    fn neg(&self, x: &i128) -> i128 {
        x.checked_neg().expect("i128 overflow in exact evaluation")
    }
    fn from_i64(&self, v: i64) -> i128 {
        v as i128
    }
    fn from_rational(&self, q: &Q) -> Result<i128> {
        if !q.is_integer() {
            return Err(Error::NotRepresentable(q.to_string()));
        }
        q.to_integer()
            .to_i128()
            .ok_or_else(|| Error::NotRepresentable(q.to_string()))
    }
}

/// `Z/pZ` for a prime `p < 2^32`, elements kept in `0..p`.
#[derive(Clone, Copy, Debug)]
pub struct PrimeField {
    p: u64,
}

impl PrimeField {
    pub fn new(p: u64) -> Result<Self> {
        if !(2..1 << 32).contains(&p) || !is_prime(p) {
            return Err(Error::InvalidArgument(format!(
                "{p} is not a prime below 2^32"
            )));
        }
        Ok(PrimeField { p })
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    pub fn pow(&self, mut base: u64, mut exp: u64) -> u64 {
        let mut acc = 1u64;
        base %= self.p;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc * base % self.p;
            }
            base = base * base % self.p;
            exp >>= 1;
        }
        acc
    }

    pub fn inv(&self, x: u64) -> Option<u64> {
        if x.is_multiple_of(self.p) {
            None
        } else {
            Some(self.pow(x, self.p - 2))
        }
    }

    pub fn reduce_bigint(&self, v: &BigInt) -> u64 {
        let m = BigInt::from(self.p);
        v.mod_floor(&m).to_u64().unwrap()
    }

    pub fn reduce_i128(&self, v: i128) -> u64 {
        v.rem_euclid(self.p as i128) as u64
    }
}

impl Ring for PrimeField {
    type El = u64;

    fn zero(&self) -> u64 {
        0
    }
    fn one(&self) -> u64 {
        1
    }
    fn is_zero(&self, x: &u64) -> bool {
        *x == 0
    }
    fn add(&self, x: &u64, y: &u64) -> u64 {
        let s = x + y;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }
    fn mul(&self, x: &u64, y: &u64) -> u64 {
        x * y % self.p
    }
    fn neg(&self, x: &u64) -> u64 {
        if *x == 0 {
            0
        } else {
            self.p - x
        }
    }
    fn from_i64(&self, v: i64) -> u64 {
        v.rem_euclid(self.p as i64) as u64
    }
    fn from_rational(&self, q: &Q) -> Result<u64> {
        let num = self.reduce_bigint(q.numer());
        let den = self.reduce_bigint(q.denom());
        let inv = self
            .inv(den)
            .ok_or_else(|| Error::NotRepresentable(format!("{q} mod {}", self.p)))?;
        Ok(num * inv % self.p)
    }
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n.is_multiple_of(2) {
        return n == 2;
    }
    let mut d = 3;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

/// Magnitude of a rational's numerator and denominator, for overflow guards.
pub fn abs_bits(q: &Q) -> u64 {
    q.numer().abs().bits().max(q.denom().bits())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::q;

    #[test]
    fn prime_field_basics() {
        let f = PrimeField::new(1_000_003).unwrap();
        assert_eq!(f.mul(&f.inv(12345).unwrap(), &12345), 1);
        assert_eq!(f.from_rational(&q(1, 2)).unwrap() * 2 % 1_000_003, 1);
        assert_eq!(f.from_i64(-1), 1_000_002);
        assert!(PrimeField::new(1_000_001).is_err());
    }

    #[test]
    fn integer_rings_reject_fractions() {
        assert!(BigIntegers.from_rational(&q(1, 2)).is_err());
        assert_eq!(CheckedI128.from_rational(&q(-6, 3)).unwrap(), -2);
    }
}
