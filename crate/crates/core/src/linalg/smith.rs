use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::{identity, IntMatrix};

/// Smith normal form `U * A * V = D` with `D` diagonal, `d[i] | d[i+1]`.
#[derive(Debug, Clone)]
pub struct Smith {
    /// Diagonal entries, including trailing zeros, of length `min(rows, cols)`.
    pub diagonal: Vec<BigInt>,
    pub u: IntMatrix,
    pub v: IntMatrix,
}

impl Smith {
    pub fn rank(&self) -> usize {
        self.diagonal.iter().filter(|d| !d.is_zero()).count()
    }
}

pub fn smith_normal_form(a: &[Vec<BigInt>], ncols: usize) -> Smith {
    let nrows = a.len();
    let mut m: IntMatrix = a.to_vec();
    let mut u = identity(nrows);
    let mut v = identity(ncols);
    let steps = nrows.min(ncols);

    for t in 0..steps {
        loop {
            // Smallest nonzero entry of the trailing block becomes the pivot.
            let mut best: Option<(usize, usize)> = None;
            for i in t..nrows {
                for j in t..ncols {
                    if m[i][j].is_zero() {
                        continue;
                    }
                    if best.is_none_or(|(bi, bj)| m[i][j].abs() < m[bi][bj].abs()) {
                        best = Some((i, j));
                    }
                }
            }
            let Some((bi, bj)) = best else { break };
            m.swap(t, bi);
            u.swap(t, bi);
            swap_cols(&mut m, t, bj);
            swap_cols(&mut v, t, bj);

            let mut clean = true;
            for i in t + 1..nrows {
                if m[i][t].is_zero() {
                    continue;
                }
                let q = m[i][t].div_floor(&m[t][t]);
                row_axpy(&mut m, i, t, &q);
                row_axpy(&mut u, i, t, &q);
                clean &= m[i][t].is_zero();
            }
            for j in t + 1..ncols {
                if m[t][j].is_zero() {
                    continue;
                }
                let q = m[t][j].div_floor(&m[t][t]);
                col_axpy(&mut m, j, t, &q);
                col_axpy(&mut v, j, t, &q);
                clean &= m[t][j].is_zero();
            }
            if !clean {
                continue;
            }
            // Enforce divisibility of the trailing block by the pivot.
            let bad = (t + 1..nrows)
                .find(|&i| (t + 1..ncols).any(|j| !m[i][j].is_multiple_of(&m[t][t])));
            match bad {
                Some(i) => {
                    let one = -BigInt::one();
                    row_axpy(&mut m, t, i, &one);
                    row_axpy(&mut u, t, i, &one);
                }
                None => break,
            }
        }
        if m.get(t).is_some_and(|r| r[t].is_negative()) {
            for x in m[t].iter_mut() {
                *x = -std::mem::take(x);
            }
            for x in u[t].iter_mut() {
                *x = -std::mem::take(x);
            }
        }
    }
    let diagonal = (0..steps).map(|i| m[i][i].clone()).collect();
    Smith { diagonal, u, v }
}

/// Invariant factors (with divisibility) of a diagonal matrix given by its
/// nonzero diagonal entries; units are kept.
pub fn diagonal_invariant_factors(entries: &[BigInt]) -> Vec<BigInt> {
    let mut d: Vec<BigInt> = entries.iter().map(|x| x.abs()).collect();
    for i in 0..d.len() {
        for j in i + 1..d.len() {
            let g = d[i].gcd(&d[j]);
            let l = d[i].lcm(&d[j]);
            d[i] = g;
            d[j] = l;
        }
    }
    d
}

/// row_target -= q * row_source
fn row_axpy(m: &mut IntMatrix, target: usize, source: usize, q: &BigInt) {
    let src = m[source].clone();
    for (t, s) in m[target].iter_mut().zip(&src) {
        if !s.is_zero() {
            *t -= q * s;
        }
    }
}

/// col_target -= q * col_source
fn col_axpy(m: &mut IntMatrix, target: usize, source: usize, q: &BigInt) {
    for row in m.iter_mut() {
        if !row[source].is_zero() {
            let d = q * &row[source];
            row[target] -= d;
        }
    }
}

fn swap_cols(m: &mut IntMatrix, a: usize, b: usize) {
    if a != b {
        for row in m.iter_mut() {
            row.swap(a, b);
        }
    }
}
