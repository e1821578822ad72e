//! The order complex `X_n(G)` on `[n] × G` with `(i, a) < (j, b)` iff `i < j`,
//! its augmented integral chain complex, and reduced homology via Smith
//! normal form.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive};
use serde::{Deserialize, Serialize};

use crate::chain::FormalChain;
use crate::error::{Error, Result};
use crate::group::{check_pairs, ClassPair, FiniteAbelianGroup, GroupElement};
use crate::linalg::SparseIntMatrix;

/// A simplex as its vertices `(level, element index)` sorted by level.
pub type Simplex = Vec<(usize, usize)>;

#[derive(Debug, Clone)]
pub struct XnComplex {
    n: usize,
    group: FiniteAbelianGroup,
    elements: Vec<GroupElement>,
    /// `simplices[k]` lists the k-simplices in lexicographic order.
    simplices: Vec<Vec<Simplex>>,
    index: Vec<HashMap<Simplex, usize>>,
}

/// Augmented chain complex: `dims[k + 1] = rank C_k` for `k >= -1`, and
/// `boundaries[k]` is `∂_k : C_k -> C_{k-1}` with one column per k-simplex.
#[derive(Debug, Clone)]
pub struct IntegerChainComplex {
    pub dims: Vec<usize>,
    pub boundaries: Vec<SparseIntMatrix>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DegreeHomology {
    pub degree: usize,
    pub rank: usize,
    pub torsion: Vec<u64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct HomologySummary {
    pub degrees: Vec<DegreeHomology>,
}

impl HomologySummary {
    pub fn is_torsion_free(&self) -> bool {
        self.degrees.iter().all(|d| d.torsion.is_empty())
    }

    pub fn rank(&self, degree: usize) -> usize {
        self.degrees.iter().find(|d| d.degree == degree).map_or(0, |d| d.rank)
    }

    /// Reduced homology of a wedge of `(order - 1)^n` spheres of dimension `n - 1`.
    pub fn matches_wedge(&self, n: usize, order: u64) -> bool {
        let expected = (order as usize - 1).pow(n as u32);
        self.is_torsion_free()
            && self.degrees.iter().all(|d| {
                if d.degree + 1 == n {
                    d.rank == expected
                } else {
                    d.rank == 0
                }
            })
    }
}

impl XnComplex {
    pub fn build(n: usize, group: &FiniteAbelianGroup) -> Result<Self> {
        if n == 0 {
            return Err(Error::ParameterRange("X_n needs n >= 1".into()));
        }
        let elements = group.elements();
        let h = elements.len();
        let mut simplices = Vec::with_capacity(n);
        for size in 1..=n {
            let mut level_sets = Vec::new();
            combinations(n, size, &mut Vec::new(), 1, &mut level_sets);
            let mut deg = Vec::new();
            for levels in &level_sets {
                let count = h.pow(size as u32);
                for code in 0..count {
                    let mut rest = code;
                    let mut s = vec![(0, 0); size];
                    for pos in (0..size).rev() {
                        s[pos] = (levels[pos], rest % h);
                        rest /= h;
                    }
                    deg.push(s);
                }
            }
            deg.sort();
            simplices.push(deg);
        }
        let index = simplices
            .iter()
            .map(|deg| deg.iter().enumerate().map(|(i, s)| (s.clone(), i)).collect())
            .collect();
        Ok(Self { n, group: group.clone(), elements, simplices, index })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn group(&self) -> &FiniteAbelianGroup {
        &self.group
    }

    pub fn dimension(&self) -> usize {
        self.n - 1
    }

    pub fn vertex_count(&self) -> usize {
        self.simplices[0].len()
    }

    pub fn simplex_count(&self, degree: usize) -> usize {
        self.simplices.get(degree).map_or(0, Vec::len)
    }

    /// Maximal simplices `(a_1, …, a_n)` in basis order.
    pub fn chambers(&self) -> Vec<Vec<GroupElement>> {
        self.simplices[self.n - 1]
            .iter()
            .map(|s| s.iter().map(|&(_, g)| self.elements[g].clone()).collect())
            .collect()
    }

    pub fn chain_complex(&self) -> IntegerChainComplex {
        let mut dims = vec![1];
        dims.extend(self.simplices.iter().map(Vec::len));
        let mut boundaries = Vec::with_capacity(self.n);
        for k in 0..self.n {
            let rows = dims[k];
            let cols = dims[k + 1];
            let mut triplets = Vec::new();
            for (col, s) in self.simplices[k].iter().enumerate() {
                if k == 0 {
                    triplets.push((0, col, BigInt::one()));
                    continue;
                }
                for drop in 0..s.len() {
                    let mut face = s.clone();
                    face.remove(drop);
                    let row = self.index[k - 1][&face];
                    let sign = if drop % 2 == 0 { 1 } else { -1 };
                    triplets.push((row, col, BigInt::from(sign)));
                }
            }
            boundaries.push(SparseIntMatrix::from_triplets(rows, cols, triplets));
        }
        IntegerChainComplex { dims, boundaries }
    }

    /// Coordinates of a top-degree chain in the chamber basis.
    pub fn chamber_vector(&self, chain: &FormalChain<GroupElement>) -> Result<Vec<i64>> {
        let mut v = vec![0; self.simplex_count(self.n - 1)];
        for (chamber, c) in chain.iter() {
            if chamber.len() != self.n {
                return Err(Error::RankMismatch { left: chamber.len(), right: self.n });
            }
            let mut s = Vec::with_capacity(self.n);
            for (level, g) in chamber.iter().enumerate() {
                if !self.group.contains(g) {
                    return Err(Error::GroupMismatch(format!("{g} is not an element of {}", self.group)));
                }
                s.push((level + 1, self.group.index_of(g)));
            }
            v[self.index[self.n - 1][&s]] += c;
        }
        Ok(v)
    }

    pub fn is_cycle(&self, chain: &FormalChain<GroupElement>) -> Result<bool> {
        let v = self.chamber_vector(chain)?;
        let b = &self.chain_complex().boundaries[self.n - 1];
        Ok(b.apply(&v).iter().all(|x| x == &BigInt::from(0)))
    }
}

fn combinations(n: usize, size: usize, prefix: &mut Vec<usize>, start: usize, out: &mut Vec<Vec<usize>>) {
    if prefix.len() == size {
        out.push(prefix.clone());
        return;
    }
    for x in start..=n {
        prefix.push(x);
        combinations(n, size, prefix, x + 1, out);
        prefix.pop();
    }
}

impl IntegerChainComplex {
    pub fn top_degree(&self) -> usize {
        self.boundaries.len() - 1
    }

    /// Checks `∂_{k-1} ∘ ∂_k = 0` for every k.
    pub fn is_complex(&self) -> bool {
        self.boundaries.windows(2).all(|w| w[0].mul(&w[1]).is_zero())
    }

    /// Reduced integral homology in degrees `0..=top`.
    pub fn homology(&self) -> HomologySummary {
        let factors: Vec<Vec<BigInt>> = self.boundaries.iter().map(SparseIntMatrix::invariant_factors).collect();
        let top = self.top_degree();
        let degrees = (0..=top)
            .map(|k| {
                let rank_out = factors[k].len();
                let (rank_in, torsion) = match factors.get(k + 1) {
                    Some(f) => (
                        f.len(),
                        f.iter().filter(|d| !d.is_one()).map(|d| d.to_u64().expect("small torsion")).collect(),
                    ),
                    None => (0, Vec::new()),
                };
                DegreeHomology { degree: k, rank: self.dims[k + 1] - rank_out - rank_in, torsion }
            })
            .collect();
        HomologySummary { degrees }
    }
}

/// `X_n(G)`: `n·|G|` vertices and `|G|^n` chambers.
pub fn build_xn(n: usize, group: &FiniteAbelianGroup) -> Result<XnComplex> {
    XnComplex::build(n, group)
}

/// Reduced homology of `X_n(G)`.
pub fn homology(complex: &XnComplex) -> HomologySummary {
    complex.chain_complex().homology()
}

/// `Σ_e (-1)^{Σ e_i} (c_1^e, …, c_n^e)` with `c_i^e = a_i` if `e_i = 1`, else `b_i`.
pub fn sigma_s_cycle(complex: &XnComplex, pairs: &[ClassPair]) -> Result<FormalChain<GroupElement>> {
    if pairs.len() != complex.n() {
        return Err(Error::RankMismatch { left: pairs.len(), right: complex.n() });
    }
    check_pairs(pairs)?;
    for p in pairs {
        if !complex.group().contains(&p.a) || !complex.group().contains(&p.b) {
            return Err(Error::GroupMismatch("class pair outside the group".into()));
        }
    }
    Ok(sigma_s_pattern(pairs.iter().map(|p| (p.a.clone(), p.b.clone())).collect()))
}

/// The alternating cube sum over the given `(a_i, b_i)` labels.
pub fn sigma_s_pattern<L: Ord + Clone>(pairs: Vec<(L, L)>) -> FormalChain<L> {
    let n = pairs.len();
    let mut out = FormalChain::new();
    for mask in 0u32..(1 << n) {
        let chamber = pairs
            .iter()
            .enumerate()
            .map(|(i, (a, b))| if mask >> i & 1 == 1 { a.clone() } else { b.clone() })
            .collect();
        let sign = if mask.count_ones() % 2 == 0 { 1 } else { -1 };
        out.add_term(chamber, sign);
    }
    out
}

/// Rank of the subgroup of `H̃_{n-1}` generated by the classes of `cycles`.
pub fn class_span_rank(complex: &XnComplex, cycles: &[FormalChain<GroupElement>]) -> Result<usize> {
    let cc = complex.chain_complex();
    let top = complex.n() - 1;
    let boundary = &cc.boundaries[top];
    let mut triplets = Vec::new();
    for (col, z) in cycles.iter().enumerate() {
        let v = complex.chamber_vector(z)?;
        if boundary.apply(&v).iter().any(|x| x != &BigInt::from(0)) {
            return Err(Error::NotACycle);
        }
        triplets.extend(v.iter().enumerate().filter(|(_, &x)| x != 0).map(|(row, &x)| (row, col, BigInt::from(x))));
    }
    // Top-degree boundaries vanish in an (n-1)-dimensional complex, so the
    // span in homology is the span in the cycle group.
    let m = SparseIntMatrix::from_triplets(cc.dims[top + 1], cycles.len(), triplets);
    Ok(m.rank())
}
