use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use super::{identity, IntMatrix};

/// Row-style Hermite normal form `U * A = H`.
///
/// The first `rank` rows of `h` are nonzero with strictly increasing pivot
/// columns, positive pivots, and entries above each pivot reduced into
/// `[0, pivot)`. The remaining rows are zero. `u` is unimodular when the
/// transform was requested, otherwise empty.
#[derive(Debug, Clone)]
pub struct Hnf {
    pub h: IntMatrix,
    pub u: IntMatrix,
    pub pivots: Vec<usize>,
    pub rank: usize,
    pub ncols: usize,
}

impl Hnf {
    /// The nonzero rows, i.e. a canonical basis of the row lattice.
    pub fn basis(&self) -> IntMatrix {
        self.h[..self.rank].to_vec()
    }
}

pub fn hnf(a: &[Vec<BigInt>], ncols: usize) -> Hnf {
    reduce(a, ncols, false)
}

pub fn hnf_with_transform(a: &[Vec<BigInt>], ncols: usize) -> Hnf {
    reduce(a, ncols, true)
}

/// Basis of `{x in Z^r : x * A = 0}`; the returned lattice is saturated.
pub fn left_kernel(a: &[Vec<BigInt>], ncols: usize) -> IntMatrix {
    let h = hnf_with_transform(a, ncols);
    let kernel = h.u[h.rank..].to_vec();
    // Canonicalize: kernel bases are only unique up to GL(Z).
    let k = kernel.first().map_or(0, Vec::len);
    hnf(&kernel, k).basis()
}

/// Integer solution `x` of `x * A = b`, if one exists.
pub fn solve_left(decomp: &Hnf, b: &[BigInt]) -> Option<Vec<BigInt>> {
    assert!(!decomp.u.is_empty() || decomp.h.is_empty(), "solve_left needs the transform");
    let mut residual = b.to_vec();
    let mut y = vec![BigInt::zero(); decomp.h.len()];
    for (i, &p) in decomp.pivots.iter().enumerate() {
        let (q, r) = residual[p].div_rem(&decomp.h[i][p]);
        if !r.is_zero() {
            return None;
        }
        if !q.is_zero() {
            for (res, hij) in residual.iter_mut().zip(&decomp.h[i]) {
                if !hij.is_zero() {
                    *res -= &q * hij;
                }
            }
        }
        y[i] = q;
    }
    if residual.iter().any(|x| !x.is_zero()) {
        return None;
    }
    let cols = decomp.u.first().map_or(0, Vec::len);
    Some(super::vec_mat(&y, &decomp.u, cols))
}

fn reduce(a: &[Vec<BigInt>], ncols: usize, track: bool) -> Hnf {
    let nrows = a.len();
    let mut h: IntMatrix = a.to_vec();
    let mut u = if track { identity(nrows) } else { Vec::new() };
    let mut pivots = Vec::new();
    let mut pr = 0;

    for col in 0..ncols {
        if pr == nrows {
            break;
        }
        // Euclid on the column: repeatedly move the smallest nonzero entry to
        // the pivot row and reduce the others by nearest-integer quotients.
        // This keeps entries, and the transform, far smaller than pairwise
        // extended-gcd steps.
        let mut found = false;
        loop {
            let best = (pr..nrows)
                .filter(|&i| !h[i][col].is_zero())
                .min_by(|&i, &j| h[i][col].abs().cmp(&h[j][col].abs()));
            let Some(best) = best else { break };
            found = true;
            h.swap(pr, best);
            if track {
                u.swap(pr, best);
            }
            let mut cleared = true;
            for i in pr + 1..nrows {
                if h[i][col].is_zero() {
                    continue;
                }
                let q = nearest_quotient(&h[i][col], &h[pr][col]);
                sub_multiple(&mut h, i, pr, &q);
                if track {
                    sub_multiple(&mut u, i, pr, &q);
                }
                if !h[i][col].is_zero() {
                    cleared = false;
                }
            }
            if cleared {
                break;
            }
        }
        if !found {
            continue;
        }
        if h[pr][col].is_negative() {
            negate(&mut h[pr]);
            if track {
                negate(&mut u[pr]);
            }
        }
        for k in 0..pr {
            let q = h[k][col].div_floor(&h[pr][col]);
            if !q.is_zero() {
                sub_multiple(&mut h, k, pr, &q);
                if track {
                    sub_multiple(&mut u, k, pr, &q);
                }
            }
        }
        pivots.push(col);
        pr += 1;
    }
    Hnf { h, u, rank: pivots.len(), pivots, ncols }
}

/// `round(a / b)` for `b != 0`, as `sign(b)·⌊(2a + |b|) / 2|b|⌋`.
fn nearest_quotient(a: &BigInt, b: &BigInt) -> BigInt {
    let num: BigInt = a * 2 + b.abs();
    let q = num.div_floor(&(b.abs() * 2));
    if b.is_negative() {
        -q
    } else {
        q
    }
}

fn negate(row: &mut [BigInt]) {
    for v in row.iter_mut() {
        *v = -std::mem::take(v);
    }
}

fn sub_multiple(m: &mut IntMatrix, target: usize, source: usize, q: &BigInt) {
    let src = m[source].clone();
    for (t, s) in m[target].iter_mut().zip(&src) {
        if !s.is_zero() {
            *t -= q * s;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{from_i64, mat_mul, vec_mat};

    #[test]
    fn hnf_of_small_matrix() {
        let a = from_i64(&[vec![2, 4, 4], vec![-6, 6, 12], vec![10, -4, -16]]);
        let h = hnf_with_transform(&a, 3);
        assert_eq!(h.rank, 3);
        assert_eq!(mat_mul(&h.u, &a, 3), h.h);
        for (i, &p) in h.pivots.iter().enumerate() {
            assert!(h.h[i][p] > BigInt::zero());
            for k in 0..i {
                assert!(h.h[k][p] >= BigInt::zero() && h.h[k][p] < h.h[i][p]);
            }
        }
        // |det| is preserved
        let det: BigInt = (0..3).map(|i| h.h[i][h.pivots[i]].clone()).product();
        assert_eq!(det, BigInt::from(144));
    }

    #[test]
    fn left_kernel_annihilates() {
        let a = from_i64(&[vec![1, 2], vec![2, 4], vec![3, 7]]);
        let k = left_kernel(&a, 2);
        assert_eq!(k.len(), 1);
        assert_eq!(vec_mat(&k[0], &a, 2), vec![BigInt::zero(), BigInt::zero()]);
    }

    #[test]
    fn solve_left_detects_non_integral() {
        let a = from_i64(&[vec![2, 0], vec![0, 3]]);
        let h = hnf_with_transform(&a, 2);
        let x = solve_left(&h, &[BigInt::from(4), BigInt::from(9)]).unwrap();
        assert_eq!(x, vec![BigInt::from(2), BigInt::from(3)]);
        assert!(solve_left(&h, &[BigInt::from(1), BigInt::from(0)]).is_none());
    }
}
