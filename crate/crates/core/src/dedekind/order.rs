use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// The maximal order `Z[ω₀]` of `Q(√D)`, `D < 0` fundamental.
///
/// `ω₀² = t·ω₀ − N` with `(t, N) = (0, −D/4)` or `(1, (1−D)/4)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "i64", into = "i64")]
pub struct QuadraticOrder {
    disc: i64,
    trace: i64,
    norm: i64,
}

/// `x + y·ω₀` with rational `x, y`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FieldElement {
    pub x: BigRational,
    pub y: BigRational,
}

pub fn is_squarefree(m: i64) -> bool {
    let m = m.unsigned_abs();
    let mut p = 2u64;
    while p * p <= m {
        if m.is_multiple_of(p * p) {
            return false;
        }
        p += 1;
    }
    true
}

pub fn is_fundamental_discriminant(d: i64) -> bool {
    match d.rem_euclid(4) {
        1 => d != 1 && is_squarefree(d),
        0 => {
            let m = d / 4;
            matches!(m.rem_euclid(4), 2 | 3) && is_squarefree(m)
        }
        _ => false,
    }
}

impl QuadraticOrder {
    pub fn new(disc: i64) -> Result<Self> {
        if disc >= 0 || !is_fundamental_discriminant(disc) {
            return Err(Error::InvalidDiscriminant(disc));
        }
        let (trace, norm) = if disc.rem_euclid(4) == 0 { (0, -disc / 4) } else { (1, (1 - disc) / 4) };
        Ok(Self { disc, trace, norm })
    }

    pub fn disc(&self) -> i64 {
        self.disc
    }

    /// `ω₀ + ω̄₀`.
    pub fn trace(&self) -> i64 {
        self.trace
    }

    /// `ω₀ · ω̄₀`.
    pub fn omega_norm(&self) -> i64 {
        self.norm
    }

    /// Multiplication by `ω₀` on `(x, y)`: `x + yω₀ ↦ −N·y + (x + t·y)ω₀`.
    pub fn omega_times(&self, x: &BigInt, y: &BigInt) -> (BigInt, BigInt) {
        (-(y * self.norm), x + y * self.trace)
    }

    pub fn mul(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        let yy = &a.y * &b.y;
        FieldElement {
            x: &a.x * &b.x - &yy * BigRational::from_integer(self.norm.into()),
            y: &a.x * &b.y + &a.y * &b.x + yy * BigRational::from_integer(self.trace.into()),
        }
    }

    pub fn conj(&self, a: &FieldElement) -> FieldElement {
        FieldElement { x: &a.x + &a.y * BigRational::from_integer(self.trace.into()), y: -a.y.clone() }
    }

    /// `x² + t·x·y + N·y²`.
    pub fn norm(&self, a: &FieldElement) -> BigRational {
        let t = BigRational::from_integer(self.trace.into());
        let n = BigRational::from_integer(self.norm.into());
        &a.x * &a.x + t * &a.x * &a.y + n * &a.y * &a.y
    }

    pub fn inv(&self, a: &FieldElement) -> Option<FieldElement> {
        if a.is_zero() {
            return None;
        }
        let n = self.norm(a);
        let c = self.conj(a);
        Some(FieldElement { x: c.x / &n, y: c.y / n })
    }

    pub fn omega(&self) -> FieldElement {
        FieldElement::from_ints(0, 1)
    }

    pub fn check_same(&self, other: &Self) -> Result<()> {
        if self.disc != other.disc {
            return Err(Error::OrderMismatch(self.disc, other.disc));
        }
        Ok(())
    }
}

impl TryFrom<i64> for QuadraticOrder {
    type Error = Error;
    fn try_from(d: i64) -> Result<Self> {
        Self::new(d)
    }
}

impl From<QuadraticOrder> for i64 {
    fn from(o: QuadraticOrder) -> i64 {
        o.disc
    }
}

impl fmt::Display for QuadraticOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "O(D={})", self.disc)
    }
}

impl FieldElement {
    pub fn new(x: BigRational, y: BigRational) -> Self {
        Self { x, y }
    }

    pub fn from_ints(x: i64, y: i64) -> Self {
        Self { x: BigRational::from_integer(x.into()), y: BigRational::from_integer(y.into()) }
    }

    pub fn from_bigints(x: BigInt, y: BigInt) -> Self {
        Self { x: BigRational::from_integer(x), y: BigRational::from_integer(y) }
    }

    pub fn zero() -> Self {
        Self::from_ints(0, 0)
    }

    pub fn one() -> Self {
        Self::from_ints(1, 0)
    }

    pub fn is_zero(&self) -> bool {
        self.x.is_zero() && self.y.is_zero()
    }

    pub fn is_integral(&self) -> bool {
        self.x.is_integer() && self.y.is_integer()
    }

    pub fn add(&self, o: &Self) -> Self {
        Self { x: &self.x + &o.x, y: &self.y + &o.y }
    }

    pub fn sub(&self, o: &Self) -> Self {
        Self { x: &self.x - &o.x, y: &self.y - &o.y }
    }

    pub fn neg(&self) -> Self {
        Self { x: -self.x.clone(), y: -self.y.clone() }
    }

    pub fn scale(&self, q: &BigRational) -> Self {
        Self { x: &self.x * q, y: &self.y * q }
    }

    /// Least common denominator of both coordinates.
    pub fn denominator(&self) -> BigInt {
        num_integer::Integer::lcm(self.x.denom(), self.y.denom())
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.y.is_zero() {
            return write!(f, "{}", self.x);
        }
        let sign = if self.y.is_negative() { "-" } else { "+" };
        let ay = self.y.abs();
        if ay.is_one() {
            write!(f, "{} {sign} w", self.x)
        } else {
            write!(f, "{} {sign} {ay}w", self.x)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fundamental_discriminants() {
        for d in [-3, -4, -7, -8, -20, -23, -56, -84, -15] {
            assert!(QuadraticOrder::new(d).is_ok(), "{d}");
        }
        for d in [-1, -2, -12, -16, -5, 0, 5, -27] {
            assert!(QuadraticOrder::new(d).is_err(), "{d}");
        }
    }

    #[test]
    fn omega_squares() {
        // D = -20: ω = √-5, ω² = -5.  D = -23: ω = (1+√-23)/2, ω² = ω - 6.
        let o = QuadraticOrder::new(-20).unwrap();
        let w = o.omega();
        assert_eq!(o.mul(&w, &w), FieldElement::from_ints(-5, 0));
        let o = QuadraticOrder::new(-23).unwrap();
        assert_eq!(o.mul(&o.omega(), &o.omega()), FieldElement::from_ints(-6, 1));
        assert_eq!(o.norm(&o.omega()), BigRational::from_integer(6.into()));
        assert_eq!(o.omega_times(&BigInt::from(0), &BigInt::from(1)), (BigInt::from(-6), BigInt::from(1)));
    }

    #[test]
    fn inverse_and_norm() {
        let o = QuadraticOrder::new(-20).unwrap();
        let a = FieldElement::from_ints(1, 1);
        assert_eq!(o.norm(&a), BigRational::from_integer(6.into()));
        let inv = o.inv(&a).unwrap();
        assert_eq!(o.mul(&a, &inv), FieldElement::one());
        assert!(o.inv(&FieldElement::zero()).is_none());
    }
}
