use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::order::{FieldElement, QuadraticOrder};
use crate::error::{Error, Result};
use crate::linalg::{hnf, is_zero_row, left_kernel, rational_left_nullspace, IntMatrix};

/// An R-submodule of `K^{2n}`, stored as the Z-lattice it spans in `Q^{4n}`.
///
/// Coordinates follow the index order `1, …, n, −n, …, −1`; index `s` owns the
/// pair of columns for `e_s` and `ω₀·e_s`. The basis is the nonzero part of
/// the row HNF of `denom · L`, so equal lattices have equal representations.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RLattice {
    order: QuadraticOrder,
    n: usize,
    denom: BigInt,
    basis: IntMatrix,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LatticeJson {
    pub disc: i64,
    pub n: usize,
    pub rows: Vec<Vec<String>>,
}

/// Position of the index `s ∈ [±n]` in the ordering `1, …, n, −n, …, −1`.
pub fn position(n: usize, s: i32) -> usize {
    assert!(s != 0 && s.unsigned_abs() as usize <= n, "index {s} outside [±{n}]");
    if s > 0 {
        s as usize - 1
    } else {
        2 * n - s.unsigned_abs() as usize
    }
}

/// Inverse of [`position`].
pub fn index_at(n: usize, p: usize) -> i32 {
    if p < n {
        p as i32 + 1
    } else {
        -((2 * n - p) as i32)
    }
}

fn ring_mul(order: &QuadraticOrder, x1: &BigInt, y1: &BigInt, x2: &BigInt, y2: &BigInt) -> (BigInt, BigInt) {
    let yy = y1 * y2;
    (x1 * x2 - &yy * order.omega_norm(), x1 * y2 + x2 * y1 + yy * order.trace())
}

impl RLattice {
    fn canonical(order: QuadraticOrder, n: usize, denom: BigInt, rows: &[Vec<BigInt>]) -> Self {
        let basis = hnf(rows, 4 * n).basis();
        let g = basis.iter().flatten().fold(denom.clone(), |acc, x| acc.gcd(x));
        let basis = if g.is_one() {
            basis
        } else {
            basis.into_iter().map(|r| r.into_iter().map(|x| x / &g).collect()).collect()
        };
        Self { order, n, denom: denom / g, basis }
    }

    fn omega_row(order: &QuadraticOrder, row: &[BigInt]) -> Vec<BigInt> {
        let mut out = Vec::with_capacity(row.len());
        for pair in row.chunks(2) {
            let (x, y) = order.omega_times(&pair[0], &pair[1]);
            out.push(x);
            out.push(y);
        }
        out
    }

    /// The R-span of integer vectors in `Z^{4n}`.
    pub fn from_integer_rows(order: &QuadraticOrder, n: usize, rows: &[Vec<BigInt>]) -> Self {
        let mut all = Vec::with_capacity(2 * rows.len());
        for r in rows {
            assert_eq!(r.len(), 4 * n, "row length must be 4n");
            all.push(r.clone());
            all.push(Self::omega_row(order, r));
        }
        Self::canonical(*order, n, BigInt::one(), &all)
    }

    /// The R-span of rational vectors in `Q^{4n}`.
    pub fn from_rational_rows(order: &QuadraticOrder, n: usize, rows: &[Vec<BigRational>]) -> Self {
        let den = rows.iter().flatten().fold(BigInt::one(), |acc, q| acc.lcm(q.denom()));
        let scaled: Vec<Vec<BigInt>> = rows
            .iter()
            .map(|r| r.iter().map(|q| (q * BigRational::from_integer(den.clone())).to_integer()).collect())
            .collect();
        let mut all = Vec::with_capacity(2 * scaled.len());
        for r in &scaled {
            assert_eq!(r.len(), 4 * n, "row length must be 4n");
            all.push(r.clone());
            all.push(Self::omega_row(order, r));
        }
        Self::canonical(*order, n, den, &all)
    }

    /// The R-span of vectors of `K^{2n}`, given in index order `1, …, n, −n, …, −1`.
    pub fn from_k_vectors(order: &QuadraticOrder, n: usize, vectors: &[Vec<FieldElement>]) -> Self {
        let rows: Vec<Vec<BigRational>> = vectors
            .iter()
            .map(|v| {
                assert_eq!(v.len(), 2 * n, "vector length must be 2n");
                v.iter().flat_map(|e| [e.x.clone(), e.y.clone()]).collect()
            })
            .collect();
        Self::from_rational_rows(order, n, &rows)
    }

    pub fn zero(order: &QuadraticOrder, n: usize) -> Self {
        Self { order: *order, n, denom: BigInt::one(), basis: Vec::new() }
    }

    /// `R^{2n}`.
    pub fn free(order: &QuadraticOrder, n: usize) -> Self {
        Self::coordinate(order, n, &(1..=n as i32).chain((1..=n as i32).map(|i| -i)).collect::<Vec<_>>())
    }

    /// `Σ_{s ∈ indices} R·e_s`.
    pub fn coordinate(order: &QuadraticOrder, n: usize, indices: &[i32]) -> Self {
        let rows: Vec<Vec<BigInt>> = indices
            .iter()
            .map(|&s| {
                let mut r = vec![BigInt::zero(); 4 * n];
                r[2 * position(n, s)] = BigInt::one();
                r
            })
            .collect();
        Self::from_integer_rows(order, n, &rows)
    }

    pub fn order(&self) -> &QuadraticOrder {
        &self.order
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn denominator(&self) -> &BigInt {
        &self.denom
    }

    /// Rows of `denom · L` in HNF.
    pub fn basis(&self) -> &IntMatrix {
        &self.basis
    }

    pub fn z_rank(&self) -> usize {
        self.basis.len()
    }

    /// Rank over R (half the Z-rank).
    pub fn rank(&self) -> usize {
        self.basis.len() / 2
    }

    pub fn is_zero(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn rational_rows(&self) -> Vec<Vec<BigRational>> {
        self.basis
            .iter()
            .map(|r| r.iter().map(|x| BigRational::new(x.clone(), self.denom.clone())).collect())
            .collect()
    }

    /// Z-basis vectors as elements of `K^{2n}`.
    pub fn k_rows(&self) -> Vec<Vec<FieldElement>> {
        self.rational_rows()
            .into_iter()
            .map(|r| r.chunks(2).map(|p| FieldElement::new(p[0].clone(), p[1].clone())).collect())
            .collect()
    }

    fn check_compatible(&self, other: &Self) -> Result<()> {
        self.order.check_same(&other.order)?;
        if self.n != other.n {
            return Err(Error::RankMismatch { left: self.n, right: other.n });
        }
        Ok(())
    }

    /// Rows of both lattices over a common denominator.
    fn common_rows(&self, other: &Self) -> (BigInt, IntMatrix, IntMatrix) {
        let den = self.denom.lcm(&other.denom);
        let scale = |l: &Self| -> IntMatrix {
            let f = &den / &l.denom;
            l.basis.iter().map(|r| r.iter().map(|x| x * &f).collect()).collect()
        };
        (den.clone(), scale(self), scale(other))
    }

    pub fn is_integral(&self) -> bool {
        self.denom.is_one()
    }

    pub fn contains_vector(&self, v: &[BigRational]) -> bool {
        let scaled: Vec<BigRational> = v.iter().map(|q| q * BigRational::from_integer(self.denom.clone())).collect();
        if scaled.iter().any(|q| !q.is_integer()) {
            return false;
        }
        let mut residual: Vec<BigInt> = scaled.into_iter().map(|q| q.to_integer()).collect();
        for row in &self.basis {
            let p = row.iter().position(|x| !x.is_zero()).expect("nonzero basis row");
            let (q, r) = residual[p].div_rem(&row[p]);
            if !r.is_zero() {
                return false;
            }
            if !q.is_zero() {
                for (x, b) in residual.iter_mut().zip(row) {
                    *x -= &q * b;
                }
            }
        }
        is_zero_row(&residual)
    }

    /// `other ⊆ self`.
    pub fn contains(&self, other: &Self) -> bool {
        self.check_compatible(other).is_ok() && other.rational_rows().iter().all(|r| self.contains_vector(r))
    }

    pub fn sum(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        let (den, mut a, b) = self.common_rows(other);
        a.extend(b);
        Ok(Self::canonical(self.order, self.n, den, &a))
    }

    pub fn intersect(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(Self::zero(&self.order, self.n));
        }
        let (den, a, b) = self.common_rows(other);
        let r1 = a.len();
        let mut stacked = a.clone();
        stacked.extend(b);
        // (u, w) with u·A + w·B = 0 gives u·A ∈ A ∩ B.
        let kernel = left_kernel(&stacked, 4 * self.n);
        let rows: Vec<Vec<BigInt>> =
            kernel.iter().map(|k| crate::linalg::vec_mat(&k[..r1], &a, 4 * self.n)).collect();
        Ok(Self::canonical(self.order, self.n, den, &rows))
    }

    /// `(U ⊗ K) ∩ R^{2n}`.
    pub fn saturate(&self) -> Result<Self> {
        if !self.is_integral() {
            return Err(Error::NotInAmbient);
        }
        if self.is_zero() {
            return Ok(self.clone());
        }
        let dim = 4 * self.n;
        let t = crate::linalg::transpose(&self.basis, dim);
        let y = left_kernel(&t, self.basis.len());
        if y.is_empty() {
            return Ok(Self::free(&self.order, self.n));
        }
        let yt = crate::linalg::transpose(&y, dim);
        let sat = left_kernel(&yt, y.len());
        Ok(Self::canonical(self.order, self.n, BigInt::one(), &sat))
    }

    /// A direct summand of `R^{2n}`, i.e. integral and saturated.
    pub fn is_summand(&self) -> bool {
        self.is_integral() && self.saturate().map(|s| &s == self).unwrap_or(false)
    }

    pub fn is_omega_stable(&self) -> bool {
        self.basis.iter().all(|r| {
            let w: Vec<BigRational> = Self::omega_row(&self.order, r)
                .into_iter()
                .map(|x| BigRational::new(x, self.denom.clone()))
                .collect();
            self.contains_vector(&w)
        })
    }

    /// `ω(u, v) ∈ R` as `(x, y)` for integer coordinate vectors.
    pub fn pairing(&self, u: &[BigInt], v: &[BigInt]) -> (BigInt, BigInt) {
        symplectic_pairing(&self.order, self.n, u, v)
    }

    /// `ω` vanishes on all pairs of basis vectors.
    pub fn is_isotropic(&self) -> bool {
        let b = &self.basis;
        (0..b.len()).all(|i| {
            (i + 1..b.len()).all(|j| {
                let (x, y) = self.pairing(&b[i], &b[j]);
                x.is_zero() && y.is_zero()
            })
        })
    }

    /// `ω(self, other) = 0`.
    pub fn is_orthogonal_to(&self, other: &Self) -> bool {
        self.basis.iter().all(|u| {
            other.basis.iter().all(|v| {
                let (x, y) = self.pairing(u, v);
                x.is_zero() && y.is_zero()
            })
        })
    }

    /// Isotropy of `L ⊗ K`, decided from the Gram matrix of a K-basis.
    pub fn is_isotropic_over_k(&self) -> bool {
        let rows = self.k_rows();
        let picked = k_independent_rows(&self.order, &rows);
        for (a, &i) in picked.iter().enumerate() {
            for &j in &picked[a + 1..] {
                if !k_pairing(&self.order, self.n, &rows[i], &rows[j]).is_zero() {
                    return false;
                }
            }
        }
        true
    }

    /// Rows `E_k` of `Z^{4n}` against columns `ω(E_k, b_m)` for each basis vector.
    fn functional_matrix(&self) -> IntMatrix {
        let dim = 4 * self.n;
        (0..dim)
            .map(|k| {
                let mut e = vec![BigInt::zero(); dim];
                e[k] = BigInt::one();
                self.basis
                    .iter()
                    .flat_map(|b| {
                        let (x, y) = self.pairing(&e, b);
                        [x, y]
                    })
                    .collect()
            })
            .collect()
    }

    /// `{x ∈ R^{2n} : ω(x, L) = 0}`.
    pub fn orthogonal_complement(&self) -> Result<Self> {
        if !self.is_summand() {
            return Err(Error::NotSummand("orthogonal complement needs a summand".into()));
        }
        if self.is_zero() {
            return Ok(Self::free(&self.order, self.n));
        }
        let f = self.functional_matrix();
        let k = left_kernel(&f, 2 * self.basis.len());
        Ok(Self::canonical(self.order, self.n, BigInt::one(), &k))
    }

    /// `(L ⊗ K)^⊥ ∩ R^{2n}`, computed through a rational null space.
    pub fn orthogonal_complement_over_k(&self) -> Result<Self> {
        if self.is_zero() {
            return Ok(Self::free(&self.order, self.n));
        }
        let f = self.functional_matrix();
        let null = rational_left_nullspace(&f, 2 * self.basis.len());
        if null.is_empty() {
            return Ok(Self::zero(&self.order, self.n));
        }
        Self::from_rational_rows(&self.order, self.n, &null).saturate_rational()
    }

    /// Saturation of the Q-span, for lattices that need not be integral.
    pub fn saturate_rational(&self) -> Result<Self> {
        Self::canonical(self.order, self.n, BigInt::one(), &self.basis).saturate()
    }

    pub fn to_json(&self) -> LatticeJson {
        LatticeJson {
            disc: self.order.disc(),
            n: self.n,
            rows: self
                .rational_rows()
                .iter()
                .map(|r| r.iter().map(|q| format!("{}/{}", q.numer(), q.denom())).collect())
                .collect(),
        }
    }

    pub fn from_json(j: &LatticeJson) -> Result<Self> {
        let order = QuadraticOrder::new(j.disc)?;
        let rows = j
            .rows
            .iter()
            .map(|r| {
                if r.len() != 4 * j.n {
                    return Err(Error::Parse(format!("row of length {} in a lattice of n = {}", r.len(), j.n)));
                }
                r.iter().map(|s| parse_rational(s)).collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Self::from_rational_rows(&order, j.n, &rows))
    }
}

pub fn parse_rational(s: &str) -> Result<BigRational> {
    let s = s.trim();
    let (num, den) = match s.split_once('/') {
        Some((a, b)) => (a, b),
        None => (s, "1"),
    };
    let num: BigInt = num.trim().parse().map_err(|e| Error::Parse(format!("{s:?}: {e}")))?;
    let den: BigInt = den.trim().parse().map_err(|e| Error::Parse(format!("{s:?}: {e}")))?;
    if den.is_zero() {
        return Err(Error::Parse(format!("{s:?}: zero denominator")));
    }
    Ok(BigRational::new(num, den))
}

/// `ω(u, v) = Σ_{i>0} u_i v_{−i} − u_{−i} v_i` on integer coordinates.
pub fn symplectic_pairing(order: &QuadraticOrder, n: usize, u: &[BigInt], v: &[BigInt]) -> (BigInt, BigInt) {
    let mut x = BigInt::zero();
    let mut y = BigInt::zero();
    for p in 0..2 * n {
        let q = 2 * n - 1 - p;
        if (u[2 * p].is_zero() && u[2 * p + 1].is_zero()) || (v[2 * q].is_zero() && v[2 * q + 1].is_zero()) {
            continue;
        }
        let (px, py) = ring_mul(order, &u[2 * p], &u[2 * p + 1], &v[2 * q], &v[2 * q + 1]);
        if p < n {
            x += px;
            y += py;
        } else {
            x -= px;
            y -= py;
        }
    }
    (x, y)
}

/// The same form on vectors of `K^{2n}`.
pub fn k_pairing(order: &QuadraticOrder, n: usize, u: &[FieldElement], v: &[FieldElement]) -> FieldElement {
    let mut acc = FieldElement::zero();
    for p in 0..2 * n {
        let term = order.mul(&u[p], &v[2 * n - 1 - p]);
        acc = if p < n { acc.add(&term) } else { acc.sub(&term) };
    }
    acc
}

/// Indices of a maximal K-independent subset of `rows`, chosen greedily.
pub fn k_independent_rows(order: &QuadraticOrder, rows: &[Vec<FieldElement>]) -> Vec<usize> {
    k_echelon(order, rows).0
}

/// Greedy K-row echelon: (independent row indices, pivot columns).
pub fn k_echelon(order: &QuadraticOrder, rows: &[Vec<FieldElement>]) -> (Vec<usize>, Vec<usize>) {
    let mut reduced: Vec<(usize, Vec<FieldElement>)> = Vec::new();
    let mut picked = Vec::new();
    let mut pivots = Vec::new();
    for (idx, row) in rows.iter().enumerate() {
        let mut r = row.clone();
        for (p, basis_row) in &reduced {
            if r[*p].is_zero() {
                continue;
            }
            let f = r[*p].clone();
            for (x, b) in r.iter_mut().zip(basis_row) {
                *x = x.sub(&order.mul(&f, b));
            }
        }
        if let Some(p) = r.iter().position(|x| !x.is_zero()) {
            let inv = order.inv(&r[p]).expect("nonzero");
            let normalized: Vec<FieldElement> = r.iter().map(|x| order.mul(x, &inv)).collect();
            // Keep earlier rows reduced at the new pivot as well.
            for (_, other) in reduced.iter_mut() {
                if other[p].is_zero() {
                    continue;
                }
                let f = other[p].clone();
                for (x, b) in other.iter_mut().zip(&normalized) {
                    *x = x.sub(&order.mul(&f, b));
                }
            }
            reduced.push((p, normalized));
            picked.push(idx);
            pivots.push(p);
        }
    }
    (picked, pivots)
}

/// Determinant over K by Gaussian elimination.
pub fn k_determinant(order: &QuadraticOrder, m: &[Vec<FieldElement>]) -> FieldElement {
    let n = m.len();
    let mut a = m.to_vec();
    let mut det = FieldElement::one();
    for col in 0..n {
        let Some(p) = (col..n).find(|&i| !a[i][col].is_zero()) else {
            return FieldElement::zero();
        };
        if p != col {
            a.swap(p, col);
            det = det.neg();
        }
        det = order.mul(&det, &a[col][col]);
        let inv = order.inv(&a[col][col]).expect("nonzero pivot");
        for i in col + 1..n {
            if a[i][col].is_zero() {
                continue;
            }
            let f = order.mul(&a[i][col], &inv);
            let pivot_row = a[col].clone();
            for (x, b) in a[i].iter_mut().zip(&pivot_row).skip(col) {
                *x = x.sub(&order.mul(&f, b));
            }
        }
    }
    det
}

impl fmt::Display for RLattice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "lattice(n={}, rank={}", self.n, self.rank())?;
        if !self.denom.is_one() {
            write!(f, ", denom={}", self.denom)?;
        }
        write!(f, ")")
    }
}
