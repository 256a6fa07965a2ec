//! Coefficient fields.
//!
//! Everything in [`crate::linalg`] is written against [`Field`]. Two exact
//! fields are provided: arbitrary-precision rationals and the prime fields
//! [`Fp`]. Integer matrices (for Hermite forms and lattices) use
//! [`num_bigint::BigInt`] directly.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer as _;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use crate::linalg::{rcf, Matrix};

/// An exact commutative field.
pub trait Field:
    Clone
    + PartialEq
    + fmt::Debug
    + fmt::Display
    + Send
    + Sync
    + Zero
    + One
    + Neg<Output = Self>
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
{
    /// Characteristic of the field (0 for the rationals).
    const CHARACTERISTIC: u64;

    fn from_i64(v: i64) -> Self;

    fn from_integer(v: &BigInt) -> Self;

    /// Integer representative, if the element has one: the canonical residue
    /// in a prime field, the value itself for an integral rational.
    fn to_integer(&self) -> Option<BigInt>;

    fn inv(&self) -> Self {
        Self::one() / self.clone()
    }

    /// Bring `m` to reduced row echelon form in place and return the pivot
    /// columns. Implementations may override the generic elimination.
    fn reduce_rows(m: &mut Matrix<Self>) -> Vec<usize> {
        rcf::gauss_jordan(m)
    }
}

impl Field for BigRational {
    const CHARACTERISTIC: u64 = 0;

    fn from_i64(v: i64) -> Self {
        BigRational::from_integer(BigInt::from(v))
    }

    fn from_integer(v: &BigInt) -> Self {
        BigRational::from_integer(v.clone())
    }

    fn to_integer(&self) -> Option<BigInt> {
        self.is_integer().then(|| self.numer().clone())
    }

    fn reduce_rows(m: &mut Matrix<Self>) -> Vec<usize> {
        rcf::fraction_free_rcf(m)
    }
}

/// Integers modulo the prime `P`, stored as the canonical residue `0..P`.
///
/// `P` must be prime and below 2^16 so that products fit comfortably in a
/// `u32` accumulator.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default, PartialOrd, Ord)]
pub struct Fp<const P: u32>(u32);

impl<const P: u32> Fp<P> {
    pub const MODULUS: u32 = P;

    pub fn new(v: i64) -> Self {
        Fp(v.rem_euclid(P as i64) as u32)
    }

    pub fn value(self) -> u32 {
        self.0
    }

    /// Representative in `(-P/2, P/2]`.
    pub fn symmetric(self) -> i64 {
        symmetric_residue(self.0, P)
    }

    pub fn pow(self, mut e: u64) -> Self {
        let mut base = self;
        let mut acc = Fp(1 % P);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base;
            }
            base = base * base;
            e >>= 1;
        }
        acc
    }
}

/// Symmetric lift of a residue `v` in `0..p` to `(-p/2, p/2]`.
pub fn symmetric_residue(v: u32, p: u32) -> i64 {
    let v = (v % p) as i64;
    let p = p as i64;
    if 2 * v > p {
        v - p
    } else {
        v
    }
}

/// Inverse of a nonzero residue modulo the prime `p`.
pub fn inverse_mod(v: u32, p: u32) -> u32 {
    let (mut a, mut b) = ((v % p) as i64, p as i64);
    let (mut x0, mut x1) = (1i64, 0i64);
    assert!(a != 0, "zero has no inverse modulo {p}");
    while b != 0 {
        let q = a / b;
        (a, b) = (b, a - q * b);
        (x0, x1) = (x1, x0 - q * x1);
    }
    debug_assert_eq!(a, 1, "{p} is not prime");
    x0.rem_euclid(p as i64) as u32
}

/// Trial-division primality test (the moduli here are small).
pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= p {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

impl<const P: u32> fmt::Debug for Fp<P> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl<const P: u32> fmt::Display for Fp<P> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl<const P: u32> Add for Fp<P> {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        let s = self.0 + rhs.0;
        Fp(if s >= P { s - P } else { s })
    }
}

impl<const P: u32> Sub for Fp<P> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        Fp(if self.0 >= rhs.0 { self.0 - rhs.0 } else { self.0 + P - rhs.0 })
    }
}

impl<const P: u32> Mul for Fp<P> {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        Fp(((self.0 as u64 * rhs.0 as u64) % P as u64) as u32)
    }
}

impl<const P: u32> Div for Fp<P> {
    type Output = Self;
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn div(self, rhs: Self) -> Self {
        self * Fp(inverse_mod(rhs.0, P))
    }
}

impl<const P: u32> Neg for Fp<P> {
    type Output = Self;
    fn neg(self) -> Self {
        Fp(if self.0 == 0 { 0 } else { P - self.0 })
    }
}

impl<const P: u32> Zero for Fp<P> {
    fn zero() -> Self {
        Fp(0)
    }
    fn is_zero(&self) -> bool {
        self.0 == 0
    }
}

impl<const P: u32> One for Fp<P> {
    fn one() -> Self {
        Fp(1 % P)
    }
}

impl<const P: u32> From<i64> for Fp<P> {
    fn from(v: i64) -> Self {
        Fp::new(v)
    }
}

impl<const P: u32> Field for Fp<P> {
    const CHARACTERISTIC: u64 = P as u64;

    fn from_i64(v: i64) -> Self {
        Fp::new(v)
    }

    fn from_integer(v: &BigInt) -> Self {
        let r = v.mod_floor(&BigInt::from(P));
        Fp(r.to_u32().expect("residue fits in u32"))
    }

    fn to_integer(&self) -> Option<BigInt> {
        Some(BigInt::from(self.0))
    }

    fn inv(&self) -> Self {
        Fp(inverse_mod(self.0, P))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    type F = Fp<101>;

    #[test]
    fn field_axioms_mod_101() {
        for a in 1..101 {
            let x = F::new(a);
            assert_eq!(x * x.inv(), F::one());
            assert_eq!(x + (-x), F::zero());
            assert_eq!(x.pow(100), F::one());
        }
        assert_eq!(F::new(-1).value(), 100);
        assert_eq!(F::new(7) / F::new(7), F::one());
    }

    #[test]
    fn symmetric_residues() {
        assert_eq!(F::new(100).symmetric(), -1);
        assert_eq!(F::new(50).symmetric(), 50);
        assert_eq!(F::new(51).symmetric(), -50);
        assert_eq!(F::new(0).symmetric(), 0);
    }

    #[test]
    fn primality() {
        assert!(is_prime(101));
        assert!(is_prime(65521));
        assert!(!is_prime(1));
        assert!(!is_prime(91));
    }

    #[test]
    fn integer_conversions() {
        assert_eq!(F::from_integer(&BigInt::from(-205)), F::new(-205));
        let half = BigRational::new(BigInt::from(1), BigInt::from(2));
        assert_eq!(Field::to_integer(&half), None);
        assert_eq!(Field::to_integer(&BigRational::from_i64(-3)), Some(BigInt::from(-3)));
    }
}
