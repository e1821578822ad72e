use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use super::order::{FieldElement, QuadraticOrder};
use crate::error::{Error, Result};
use crate::linalg::hnf;

/// A fractional ideal `(1/d)·(aZ + (b + cω₀)Z)`, with `a, c > 0`, `0 ≤ b < a`
/// and `gcd(d, a, b, c) = 1`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FracIdeal {
    order: QuadraticOrder,
    d: BigInt,
    a: BigInt,
    b: BigInt,
    c: BigInt,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IdealJson {
    pub disc: i64,
    pub d: i64,
    pub a: i64,
    pub b: i64,
    pub c: i64,
}

impl FracIdeal {
    /// The R-module generated by `gens`.
    pub fn from_generators(order: &QuadraticOrder, gens: &[FieldElement]) -> Result<Self> {
        let mut zgens = Vec::with_capacity(2 * gens.len());
        for g in gens {
            zgens.push(g.clone());
            zgens.push(order.mul(g, &order.omega()));
        }
        let den = zgens.iter().fold(BigInt::one(), |acc, g| acc.lcm(&g.denominator()));
        let scale = BigRational::from_integer(den.clone());
        // Columns in the order (y, x), so the row HNF is [[c, b], [0, a]].
        let rows: Vec<Vec<BigInt>> = zgens
            .iter()
            .map(|g| {
                let s = g.scale(&scale);
                vec![s.y.to_integer(), s.x.to_integer()]
            })
            .collect();
        let h = hnf(&rows, 2);
        if h.rank < 2 {
            return Err(Error::Precondition("the zero ideal is not a fractional ideal".into()));
        }
        let (c, b, a) = (h.h[0][0].clone(), h.h[0][1].clone(), h.h[1][1].clone());
        Ok(Self::normalized(*order, den, a, b, c))
    }

    fn normalized(order: QuadraticOrder, d: BigInt, a: BigInt, b: BigInt, c: BigInt) -> Self {
        let g = d.gcd(&a).gcd(&b).gcd(&c);
        Self { order, d: d / &g, a: a / &g, b: b / &g, c: c / g }
    }

    /// The integral ideal with HNF `[[a, 0], [b, c]]`, if that lattice is an ideal.
    pub fn from_hnf(order: &QuadraticOrder, a: i64, b: i64, c: i64) -> Result<Self> {
        if a <= 0 || c <= 0 || b < 0 || b >= a {
            return Err(Error::Precondition(format!("({a},{b},{c}) is not in Hermite normal form")));
        }
        let ideal = Self::from_generators(order, &[FieldElement::from_ints(a, 0), FieldElement::from_ints(b, c)])?;
        let direct = Self::normalized(*order, BigInt::one(), a.into(), b.into(), c.into());
        if ideal != direct {
            return Err(Error::Precondition(format!("lattice [[{a},0],[{b},{c}]] is not stable under ω")));
        }
        Ok(ideal)
    }

    pub fn unit(order: &QuadraticOrder) -> Self {
        Self::normalized(*order, BigInt::one(), BigInt::one(), BigInt::zero(), BigInt::one())
    }

    pub fn principal(order: &QuadraticOrder, x: &FieldElement) -> Result<Self> {
        Self::from_generators(order, std::slice::from_ref(x))
    }

    pub fn order(&self) -> &QuadraticOrder {
        &self.order
    }

    pub fn denominator(&self) -> &BigInt {
        &self.d
    }

    /// `(a, b, c)` of the integral lattice `d·I`.
    pub fn hnf_entries(&self) -> (&BigInt, &BigInt, &BigInt) {
        (&self.a, &self.b, &self.c)
    }

    /// Z-basis `a/d`, `(b + cω₀)/d`.
    pub fn basis(&self) -> [FieldElement; 2] {
        let d = BigRational::from_integer(self.d.clone());
        [
            FieldElement::new(BigRational::from_integer(self.a.clone()) / &d, BigRational::zero()),
            FieldElement::new(BigRational::from_integer(self.b.clone()) / &d, BigRational::from_integer(self.c.clone()) / d),
        ]
    }

    pub fn is_integral(&self) -> bool {
        self.d.is_one()
    }

    pub fn contains(&self, x: &FieldElement) -> bool {
        let d = BigRational::from_integer(self.d.clone());
        let s = x.scale(&d);
        if !s.is_integral() {
            return false;
        }
        let (xs, ys) = (s.x.to_integer(), s.y.to_integer());
        if !ys.is_multiple_of(&self.c) {
            return false;
        }
        let k = ys / &self.c;
        (xs - k * &self.b).is_multiple_of(&self.a)
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.order.check_same(&other.order)?;
        let gens: Vec<FieldElement> = self
            .basis()
            .iter()
            .flat_map(|x| other.basis().into_iter().map(move |y| self.order.mul(x, &y)))
            .collect();
        Self::from_generators(&self.order, &gens)
    }

    /// `[R : I]` for integral `I`, extended multiplicatively.
    pub fn norm(&self) -> BigRational {
        BigRational::new(&self.a * &self.c, &self.d * &self.d)
    }

    pub fn conj(&self) -> Self {
        let gens: Vec<FieldElement> = self.basis().iter().map(|x| self.order.conj(x)).collect();
        Self::from_generators(&self.order, &gens).expect("nonzero")
    }

    /// `Ī / N(I)`.
    pub fn inverse(&self) -> Self {
        let n = self.norm().recip();
        let gens: Vec<FieldElement> = self.basis().iter().map(|x| self.order.conj(x).scale(&n)).collect();
        Self::from_generators(&self.order, &gens).expect("nonzero")
    }

    /// `self · other⁻¹`.
    pub fn div(&self, other: &Self) -> Result<Self> {
        self.mul(&other.inverse())
    }

    pub fn to_json(&self) -> IdealJson {
        let f = |x: &BigInt| x.to_i64().expect("ideal entries fit in i64");
        IdealJson { disc: self.order.disc(), d: f(&self.d), a: f(&self.a), b: f(&self.b), c: f(&self.c) }
    }

    pub fn from_json(j: &IdealJson) -> Result<Self> {
        let order = QuadraticOrder::new(j.disc)?;
        if j.d <= 0 {
            return Err(Error::Parse(format!("denominator {} must be positive", j.d)));
        }
        let integral = Self::from_hnf(&order, j.a, j.b, j.c)?;
        let inv_d = BigRational::new(BigInt::one(), BigInt::from(j.d));
        let gens: Vec<FieldElement> = integral.basis().iter().map(|x| x.scale(&inv_d)).collect();
        Self::from_generators(&order, &gens)
    }
}

impl fmt::Display for FracIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.d.is_one() {
            write!(f, "<{}, {} + {}w>", self.a, self.b, self.c)
        } else {
            write!(f, "1/{}<{}, {} + {}w>", self.d, self.a, self.b, self.c)
        }
    }
}

/// Every integral ideal of norm at most `bound`, in HNF order.
pub fn integral_ideals_up_to(order: &QuadraticOrder, bound: i64) -> Vec<FracIdeal> {
    let mut out = Vec::new();
    for c in 1..=bound {
        for a in (c..=bound / c).step_by(c as usize) {
            for b in (0..a).step_by(c as usize) {
                if let Ok(i) = FracIdeal::from_hnf(order, a, b, c) {
                    out.push(i);
                }
            }
        }
    }
    out
}
