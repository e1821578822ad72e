//! Finite abelian groups in invariant-factor form.

use std::fmt;

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::diagonal_invariant_factors;

/// `Z/d_1 × ⋯ × Z/d_k` with `d_1 | d_2 | ⋯ | d_k` and every `d_i >= 2`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FiniteAbelianGroup {
    invariant_factors: Vec<u64>,
}

/// An element, one coordinate per invariant factor.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct GroupElement {
    pub coordinates: Vec<u64>,
}

/// A two-element subset `{a, b}` of a group; `a` and `b` play distinct roles
/// in the chamber sums, so the pair is ordered.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ClassPair {
    pub a: GroupElement,
    pub b: GroupElement,
}

impl ClassPair {
    pub fn new(a: GroupElement, b: GroupElement) -> Self {
        Self { a, b }
    }
}

/// Checks that every pair has distinct entries.
pub fn check_pairs(pairs: &[ClassPair]) -> Result<()> {
    match pairs.iter().position(|p| p.a == p.b) {
        Some(i) => Err(Error::NotTwoElementSet { position: i + 1 }),
        None => Ok(()),
    }
}

impl FiniteAbelianGroup {
    /// Validates an invariant-factor list.
    pub fn new(invariant_factors: Vec<u64>) -> Result<Self> {
        if invariant_factors.iter().any(|&d| d < 2) {
            return Err(Error::ParameterRange(format!("invariant factors must be >= 2: {invariant_factors:?}")));
        }
        if invariant_factors.windows(2).any(|w| w[1] % w[0] != 0) {
            return Err(Error::ParameterRange(format!("factors must divide each other: {invariant_factors:?}")));
        }
        Ok(Self { invariant_factors })
    }

    pub fn trivial() -> Self {
        Self { invariant_factors: Vec::new() }
    }

    pub fn cyclic(order: u64) -> Self {
        Self::from_orders(&[order]).expect("positive order")
    }

    /// Canonical form of `Z/m_1 × ⋯ × Z/m_k` for arbitrary positive `m_i`.
    pub fn from_orders(orders: &[u64]) -> Result<Self> {
        if orders.contains(&0) {
            return Err(Error::ParameterRange("cyclic factor of order 0".into()));
        }
        let entries: Vec<BigInt> = orders.iter().map(|&m| BigInt::from(m)).collect();
        let factors = diagonal_invariant_factors(&entries)
            .into_iter()
            .map(|d| d.to_u64().expect("fits"))
            .filter(|&d| d > 1)
            .collect();
        Self::new(factors)
    }

    pub fn invariant_factors(&self) -> &[u64] {
        &self.invariant_factors
    }

    pub fn order(&self) -> u64 {
        self.invariant_factors.iter().product()
    }

    pub fn zero(&self) -> GroupElement {
        GroupElement { coordinates: vec![0; self.invariant_factors.len()] }
    }

    /// Element from arbitrary integer coordinates, reduced.
    pub fn element(&self, coords: &[i64]) -> Result<GroupElement> {
        if coords.len() != self.invariant_factors.len() {
            return Err(Error::GroupMismatch(format!(
                "{} coordinates for {} factors",
                coords.len(),
                self.invariant_factors.len()
            )));
        }
        Ok(GroupElement {
            coordinates: coords
                .iter()
                .zip(&self.invariant_factors)
                .map(|(&c, &d)| c.rem_euclid(d as i64) as u64)
                .collect(),
        })
    }

    pub fn contains(&self, g: &GroupElement) -> bool {
        g.coordinates.len() == self.invariant_factors.len()
            && g.coordinates.iter().zip(&self.invariant_factors).all(|(c, d)| c < d)
    }

    pub fn add(&self, x: &GroupElement, y: &GroupElement) -> GroupElement {
        GroupElement {
            coordinates: x
                .coordinates
                .iter()
                .zip(&y.coordinates)
                .zip(&self.invariant_factors)
                .map(|((a, b), d)| (a + b) % d)
                .collect(),
        }
    }

    pub fn neg(&self, x: &GroupElement) -> GroupElement {
        GroupElement {
            coordinates: x
                .coordinates
                .iter()
                .zip(&self.invariant_factors)
                .map(|(a, d)| (d - a) % d)
                .collect(),
        }
    }

    pub fn sum<'a>(&self, xs: impl IntoIterator<Item = &'a GroupElement>) -> GroupElement {
        xs.into_iter().fold(self.zero(), |acc, x| self.add(&acc, x))
    }

    /// All elements in lexicographic order of coordinates.
    pub fn elements(&self) -> Vec<GroupElement> {
        let mut out = vec![self.zero()];
        for (pos, &d) in self.invariant_factors.iter().enumerate() {
            out = out
                .into_iter()
                .flat_map(|g| {
                    (0..d).map(move |c| {
                        let mut g = g.clone();
                        g.coordinates[pos] = c;
                        g
                    })
                })
                .collect();
        }
        out
    }

    /// Position of `g` in [`FiniteAbelianGroup::elements`].
    pub fn index_of(&self, g: &GroupElement) -> usize {
        g.coordinates
            .iter()
            .zip(&self.invariant_factors)
            .fold(0usize, |acc, (&c, &d)| acc * d as usize + c as usize)
    }

    /// Parses a comma-separated list of cyclic orders such as `"2,4"`.
    pub fn parse_orders(s: &str) -> Result<Self> {
        let orders = s
            .split(',')
            .map(|p| p.trim().parse::<u64>().map_err(|e| Error::Parse(format!("{p:?}: {e}"))))
            .collect::<Result<Vec<_>>>()?;
        Self::from_orders(&orders)
    }
}

impl fmt::Display for FiniteAbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.invariant_factors.is_empty() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self.invariant_factors.iter().map(|d| format!("Z/{d}")).collect();
        f.write_str(&parts.join(" x "))
    }
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.coordinates.as_slice() {
            [] => f.write_str("0"),
            [c] => write!(f, "{c}"),
            cs => {
                let parts: Vec<String> = cs.iter().map(u64::to_string).collect();
                write!(f, "[{}]", parts.join(","))
            }
        }
    }
}
