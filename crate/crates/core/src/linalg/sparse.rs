use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use super::smith::diagonal_invariant_factors;

/// Sparse integer matrix in triplet form.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SparseIntMatrix {
    pub nrows: usize,
    pub ncols: usize,
    /// `(row, col, value)` with nonzero values and no repeated positions.
    pub entries: Vec<(usize, usize, BigInt)>,
}

impl SparseIntMatrix {
    pub fn zero(nrows: usize, ncols: usize) -> Self {
        Self { nrows, ncols, entries: Vec::new() }
    }

    /// Builds from triplets, summing duplicates and dropping zeros.
    pub fn from_triplets(nrows: usize, ncols: usize, triplets: impl IntoIterator<Item = (usize, usize, BigInt)>) -> Self {
        let mut acc: BTreeMap<(usize, usize), BigInt> = BTreeMap::new();
        for (i, j, v) in triplets {
            assert!(i < nrows && j < ncols, "triplet ({i}, {j}) outside {nrows}x{ncols}");
            *acc.entry((i, j)).or_default() += v;
        }
        let entries = acc.into_iter().filter(|(_, v)| !v.is_zero()).map(|((i, j), v)| (i, j, v)).collect();
        Self { nrows, ncols, entries }
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn to_dense(&self) -> Vec<Vec<BigInt>> {
        let mut d = super::zeros(self.nrows, self.ncols);
        for (i, j, v) in &self.entries {
            d[*i][*j] = v.clone();
        }
        d
    }

    /// `self * other`.
    pub fn mul(&self, other: &SparseIntMatrix) -> SparseIntMatrix {
        assert_eq!(self.ncols, other.nrows, "dimension mismatch");
        let mut by_row: BTreeMap<usize, Vec<(usize, &BigInt)>> = BTreeMap::new();
        for (i, j, v) in &other.entries {
            by_row.entry(*i).or_default().push((*j, v));
        }
        let mut out = Vec::new();
        for (i, k, a) in &self.entries {
            if let Some(row) = by_row.get(k) {
                for (j, b) in row {
                    out.push((*i, *j, a * *b));
                }
            }
        }
        SparseIntMatrix::from_triplets(self.nrows, other.ncols, out)
    }

    /// Applies the matrix to a column vector.
    pub fn apply(&self, x: &[i64]) -> Vec<BigInt> {
        assert_eq!(x.len(), self.ncols);
        let mut y = vec![BigInt::zero(); self.nrows];
        for (i, j, v) in &self.entries {
            if x[*j] != 0 {
                y[*i] += v * x[*j];
            }
        }
        y
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    /// Nonzero invariant factors of the Smith normal form, in divisibility
    /// order. Their count is the rank.
    pub fn invariant_factors(&self) -> Vec<BigInt> {
        let mut rows: Vec<BTreeMap<usize, BigInt>> = vec![BTreeMap::new(); self.nrows];
        for (i, j, v) in &self.entries {
            rows[*i].insert(*j, v.clone());
        }
        let mut diag = Vec::new();
        loop {
            // Size-preferential pivot: smallest magnitude, then shortest row.
            let mut best: Option<(usize, usize)> = None;
            for (i, row) in rows.iter().enumerate() {
                for (j, v) in row {
                    let better = match best {
                        None => true,
                        Some((bi, bj)) => {
                            let bv = &rows[bi][&bj];
                            let (a, b) = (v.abs(), bv.abs());
                            a < b || (a == b && row.len() < rows[bi].len())
                        }
                    };
                    if better {
                        best = Some((i, *j));
                    }
                }
            }
            let Some((pr, pc)) = best else { break };
            let pivot = rows[pr][&pc].clone();

            let mut done = true;
            // Row operations clear column pc elsewhere.
            let pivot_row = rows[pr].clone();
            for (i, row) in rows.iter_mut().enumerate() {
                if i == pr {
                    continue;
                }
                let Some(v) = row.get(&pc) else { continue };
                let q = v.div_floor(&pivot);
                for (j, pv) in &pivot_row {
                    let e = row.entry(*j).or_default();
                    *e -= &q * pv;
                    if e.is_zero() {
                        row.remove(j);
                    }
                }
                if row.contains_key(&pc) {
                    done = false;
                }
            }
            // Column operations clear row pr; only row pr can hold column pc now
            // when `done`, otherwise the remainders are handled next round.
            if done {
                let row = &mut rows[pr];
                let others: Vec<usize> = row.keys().copied().filter(|&j| j != pc).collect();
                for j in others {
                    let r = row[&j].mod_floor(&pivot);
                    if r.is_zero() {
                        row.remove(&j);
                    } else {
                        row.insert(j, r);
                        done = false;
                    }
                }
            }
            if done {
                diag.push(pivot.abs());
                rows[pr].clear();
            }
        }
        diagonal_invariant_factors(&diag)
    }

    pub fn rank(&self) -> usize {
        self.invariant_factors().len()
    }
}
