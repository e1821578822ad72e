use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

/// Reduced row echelon form over Q; returns the pivot columns.
fn rref(m: &mut [Vec<BigRational>], ncols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut pr = 0;
    for col in 0..ncols {
        let Some(p) = (pr..m.len()).find(|&i| !m[i][col].is_zero()) else {
            continue;
        };
        m.swap(pr, p);
        let inv = m[pr][col].recip();
        for x in m[pr].iter_mut() {
            *x *= &inv;
        }
        for i in 0..m.len() {
            if i != pr && !m[i][col].is_zero() {
                let f = m[i][col].clone();
                let src = m[pr].clone();
                for (x, s) in m[i].iter_mut().zip(&src) {
                    *x -= &f * s;
                }
            }
        }
        pivots.push(col);
        pr += 1;
        if pr == m.len() {
            break;
        }
    }
    pivots
}

/// Rank over Q by rational Gauss-Jordan elimination.
pub fn rational_rank(a: &[Vec<BigRational>], ncols: usize) -> usize {
    let mut m = a.to_vec();
    rref(&mut m, ncols).len()
}

/// Basis of `{x in Q^r : x * A = 0}` for an `r x ncols` integer matrix.
pub fn rational_left_nullspace(a: &[Vec<BigInt>], ncols: usize) -> Vec<Vec<BigRational>> {
    let r = a.len();
    // x A = 0  <=>  A^T x^T = 0: row reduce A^T (ncols x r).
    let mut t: Vec<Vec<BigRational>> = (0..ncols)
        .map(|j| a.iter().map(|row| BigRational::from_integer(row[j].clone())).collect())
        .collect();
    let pivots = rref(&mut t, r);
    let free: Vec<usize> = (0..r).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![BigRational::zero(); r];
            v[f] = BigRational::one();
            for (row, &p) in pivots.iter().enumerate() {
                v[p] = -t[row][f].clone();
            }
            v
        })
        .collect()
}
