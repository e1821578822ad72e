//! Integer combinations of chambers (tuples of vertex labels).

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;

use serde::Serialize;

use crate::group::GroupElement;

/// `Σ coefficient · chamber` with no zero coefficients stored.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FormalChain<L: Ord> {
    terms: BTreeMap<Vec<L>, i64>,
}

impl<L: Ord> Default for FormalChain<L> {
    fn default() -> Self {
        Self { terms: BTreeMap::new() }
    }
}

impl<L: Ord + Clone> FormalChain<L> {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add_term(&mut self, chamber: Vec<L>, coefficient: i64) {
        if coefficient == 0 {
            return;
        }
        match self.terms.entry(chamber) {
            Entry::Occupied(mut o) => {
                *o.get_mut() += coefficient;
                if *o.get() == 0 {
                    o.remove();
                }
            }
            Entry::Vacant(v) => {
                v.insert(coefficient);
            }
        }
    }

    pub fn coefficient(&self, chamber: &[L]) -> i64 {
        self.terms.get(chamber).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Number of chambers with nonzero coefficient.
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Vec<L>, i64)> {
        self.terms.iter().map(|(k, &v)| (k, v))
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (k, v) in other.iter() {
            out.add_term(k.clone(), v);
        }
        out
    }

    pub fn scale(&self, factor: i64) -> Self {
        let mut out = Self::new();
        for (k, v) in self.iter() {
            out.add_term(k.clone(), v * factor);
        }
        out
    }

    pub fn neg(&self) -> Self {
        self.scale(-1)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    /// Representative of `{z, -z}` whose smallest chamber has positive sign.
    pub fn normalized_up_to_sign(&self) -> Self {
        match self.terms.values().next() {
            Some(&c) if c < 0 => self.neg(),
            _ => self.clone(),
        }
    }

    pub fn map_labels<M: Ord + Clone>(&self, mut f: impl FnMut(usize, &L) -> M) -> FormalChain<M> {
        let mut out = FormalChain::new();
        for (chamber, c) in self.iter() {
            let mapped = chamber.iter().enumerate().map(|(i, l)| f(i, l)).collect();
            out.add_term(mapped, c);
        }
        out
    }
}

impl<L: Ord + Clone> FromIterator<(Vec<L>, i64)> for FormalChain<L> {
    fn from_iter<I: IntoIterator<Item = (Vec<L>, i64)>>(iter: I) -> Self {
        let mut out = Self::new();
        for (k, v) in iter {
            out.add_term(k, v);
        }
        out
    }
}

/// Rendering of a vertex label at a given level (1-based) of a chamber.
pub trait ChamberLabel {
    fn render(&self, level: usize) -> String;
}

impl ChamberLabel for GroupElement {
    fn render(&self, level: usize) -> String {
        format!("C({level},{self})")
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ChainTerm {
    pub coefficient: i64,
    pub chamber: Vec<String>,
}

impl<L: Ord + Clone + ChamberLabel> FormalChain<L> {
    /// JSON form: an array of `{coefficient, chamber: [label, …]}`.
    pub fn to_terms(&self) -> Vec<ChainTerm> {
        self.iter()
            .map(|(chamber, coefficient)| ChainTerm {
                coefficient,
                chamber: chamber.iter().enumerate().map(|(i, l)| l.render(i + 1)).collect(),
            })
            .collect()
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self.to_terms()).expect("serializable")
    }
}
