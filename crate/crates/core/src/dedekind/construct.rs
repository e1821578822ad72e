use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::classgroup::ClassGroup;
use super::lattice::RLattice;
use super::order::QuadraticOrder;
use super::steinitz::{class_or_zero, rank_one_summand_with_class};
use crate::error::{Error, Result};
use crate::group::GroupElement;
use crate::linalg::{hnf_with_transform, left_kernel, solve_left, vec_mat, IntMatrix};

/// Coordinates of each row of `rows` in the Z-basis of `lattice`.
fn coordinates(lattice: &RLattice, rows: &[Vec<BigInt>]) -> Result<IntMatrix> {
    let h = hnf_with_transform(lattice.basis(), 4 * lattice.n());
    rows.iter()
        .map(|r| solve_left(&h, r).ok_or_else(|| Error::Precondition("vector outside the lattice".into())))
        .collect()
}

/// Matrix of multiplication by `ω₀` on the Z-basis of an integral lattice.
fn omega_action(lattice: &RLattice) -> Result<IntMatrix> {
    let order = lattice.order();
    let images: Vec<Vec<BigInt>> = lattice
        .basis()
        .iter()
        .map(|r| {
            r.chunks(2)
                .flat_map(|p| {
                    let (x, y) = order.omega_times(&p[0], &p[1]);
                    [x, y]
                })
                .collect()
        })
        .collect();
    coordinates(lattice, &images)
}

/// An R-submodule `U'` with `W = U ⊕ U'`.
///
/// Solves for an R-linear retraction `r : R^{2n} → U`, which is determined by
/// the images of the `e_s`, and returns `ker r ∩ W`. Since `U ⊆ W` the modular
/// law gives `W = U ⊕ (ker r ∩ W)`.
pub fn complement_in(u: &RLattice, w: &RLattice) -> Result<RLattice> {
    u.order().check_same(w.order())?;
    if !w.is_summand() || !u.is_summand() || !w.contains(u) {
        return Err(Error::NotSummand("complement needs summands U ⊆ W".into()));
    }
    if u.is_zero() {
        return Ok(w.clone());
    }
    if u == w {
        return Ok(RLattice::zero(u.order(), u.n()));
    }
    let kernel = retraction_kernel(u)?;
    let comp = kernel.intersect(w)?;
    debug_assert!(comp.intersect(u)?.is_zero());
    debug_assert_eq!(&comp.sum(u)?, w);
    Ok(comp)
}

/// `ker r` for an R-linear retraction `r : R^{2n} → U`.
fn retraction_kernel(u: &RLattice) -> Result<RLattice> {
    let n = u.n();
    let ru = u.z_rank();
    let omega_u = omega_action(u)?;
    // Unknown row vectors r_p = coords of r(e_p) in the Z-basis of U, one per
    // position p. For each basis vector b_k = Σ_p (α + βω₀) e_p, require
    // Σ_p r_p·(α·1 + β·Ω_U) = e_k.
    let nvars = 2 * n * ru;
    let mut columns: Vec<Vec<BigInt>> = Vec::new();
    let mut rhs: Vec<BigInt> = Vec::new();
    for (k, b) in u.basis().iter().enumerate() {
        for j in 0..ru {
            let mut col = vec![BigInt::zero(); nvars];
            for p in 0..2 * n {
                let (alpha, beta) = (&b[2 * p], &b[2 * p + 1]);
                if alpha.is_zero() && beta.is_zero() {
                    continue;
                }
                col[p * ru + j] += alpha;
                if !beta.is_zero() {
                    for (i, row) in omega_u.iter().enumerate() {
                        col[p * ru + i] += beta * &row[j];
                    }
                }
            }
            columns.push(col);
            rhs.push(if k == j { BigInt::one() } else { BigInt::zero() });
        }
    }
    let ncols = columns.len();
    let e: IntMatrix = (0..nvars).map(|r| columns.iter().map(|col| col[r].clone()).collect()).collect();
    let sol = solve_left(&hnf_with_transform(&e, ncols), &rhs)
        .ok_or_else(|| Error::NotSummand("no R-linear retraction onto U exists".into()))?;
    // Matrix of r on the Z-basis e_p, ω₀e_p of Z^{4n}.
    let mut r: IntMatrix = Vec::with_capacity(4 * n);
    for p in 0..2 * n {
        let rp = sol[p * ru..(p + 1) * ru].to_vec();
        let omega_rp = vec_mat(&rp, &omega_u, ru);
        r.push(rp);
        r.push(omega_rp);
    }
    Ok(RLattice::from_integer_rows(u.order(), n, &left_kernel(&r, ru)))
}

/// An isotropic summand `V = U ⊕ I` with `U ⊂ V ⊂ W`, `rk V = rk U + 1` and `[V] = c`.
pub fn relative_extension(u: &RLattice, w: &RLattice, c: &GroupElement) -> Result<RLattice> {
    u.order().check_same(w.order())?;
    if !u.is_summand() || !w.is_summand() {
        return Err(Error::Precondition("U and W must be summands".into()));
    }
    if !w.contains(u) {
        return Err(Error::Precondition("U must lie in W".into()));
    }
    if !u.is_isotropic() {
        return Err(Error::Precondition("U must be isotropic".into()));
    }
    if !w.is_orthogonal_to(u) {
        return Err(Error::Precondition("W must lie in the orthogonal complement of U".into()));
    }
    if w.rank() < u.rank() + 2 {
        return Err(Error::Precondition(format!("rk W = {} < rk U + 2 = {}", w.rank(), u.rank() + 2)));
    }
    let cg = ClassGroup::for_order(u.order());
    let residual = cg.group().add(c, &cg.group().neg(&class_or_zero(u)?));
    let comp = complement_in(u, w)?;
    let line = rank_one_summand_with_class(&comp, &residual)?;
    u.sum(&line)
}

/// Nested isotropic summands `U_1 ⊂ … ⊂ U_n` of `R^{2n}` with `rk U_i = i`, `[U_i] = c_i`.
pub fn isotropic_chain(order: &QuadraticOrder, n: usize, classes: &[GroupElement]) -> Result<Vec<RLattice>> {
    if n == 0 {
        return Err(Error::ParameterRange("n must be at least 1".into()));
    }
    if classes.len() != n {
        return Err(Error::RankMismatch { left: classes.len(), right: n });
    }
    let mut chain: Vec<RLattice> = Vec::with_capacity(n);
    let mut current = RLattice::zero(order, n);
    let mut ambient = RLattice::free(order, n);
    for c in classes {
        current = relative_extension(&current, &ambient, c)?;
        chain.push(current.clone());
        if chain.len() < n {
            ambient = current.orthogonal_complement()?;
        }
    }
    Ok(chain)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dedekind::steinitz::steinitz_class;

    fn setup(disc: i64) -> (QuadraticOrder, std::sync::Arc<ClassGroup>) {
        let o = QuadraticOrder::new(disc).unwrap();
        let cg = ClassGroup::for_order(&o);
        (o, cg)
    }

    #[test]
    fn complement_of_a_coordinate_line() {
        let (o, _) = setup(-20);
        let u = RLattice::coordinate(&o, 1, &[1]);
        let w = RLattice::free(&o, 1);
        let comp = complement_in(&u, &w).unwrap();
        assert_eq!(comp.rank(), 1);
        assert!(comp.intersect(&u).unwrap().is_zero());
        assert_eq!(comp.sum(&u).unwrap(), w);
        assert!(complement_in(&w, &u).is_err());
    }

    #[test]
    fn complement_of_a_nonfree_line() {
        let (o, cg) = setup(-20);
        let w = RLattice::free(&o, 2);
        let p = cg.element(1).unwrap();
        let u = rank_one_summand_with_class(&w, &p).unwrap();
        let comp = complement_in(&u, &w).unwrap();
        assert_eq!(comp.rank(), 3);
        assert!(comp.is_summand());
        assert_eq!(comp.sum(&u).unwrap(), w);
        assert!(comp.intersect(&u).unwrap().is_zero());
        assert_eq!(steinitz_class(&comp).unwrap(), cg.group().neg(&p));
    }

    #[test]
    fn extension_of_e1_with_class_p() {
        let (o, cg) = setup(-20);
        let p = cg.element(1).unwrap();
        let u = RLattice::coordinate(&o, 2, &[1]);
        let w = u.orthogonal_complement().unwrap();
        let v = relative_extension(&u, &w, &p).unwrap();
        assert_eq!(v.rank(), 2);
        assert!(v.is_isotropic() && v.is_summand());
        assert!(v.contains(&u) && w.contains(&v));
        assert_eq!(steinitz_class(&v).unwrap(), p);
        // rk W = rk U + 1 is too small.
        let small = RLattice::coordinate(&o, 2, &[1, 2]);
        assert!(relative_extension(&u, &small, &p).is_err());
        // W not orthogonal to U.
        assert!(relative_extension(&u, &RLattice::free(&o, 2), &p).is_err());
    }

    #[test]
    fn chains_realize_prescribed_classes() {
        for disc in [-20, -23] {
            let (o, cg) = setup(disc);
            let elems = cg.group().elements();
            for n in 1..=3 {
                let classes: Vec<GroupElement> = (0..n).map(|i| elems[(i + 1) % elems.len()].clone()).collect();
                let chain = isotropic_chain(&o, n, &classes).unwrap();
                for (i, u) in chain.iter().enumerate() {
                    assert_eq!(u.rank(), i + 1);
                    assert!(u.is_isotropic() && u.is_summand());
                    assert_eq!(steinitz_class(u).unwrap(), classes[i]);
                    if i > 0 {
                        assert!(u.contains(&chain[i - 1]));
                    }
                }
            }
        }
    }

    #[test]
    fn trivial_classes_give_a_free_flag() {
        let (o, cg) = setup(-23);
        let zero = vec![cg.group().zero(); 2];
        let chain = isotropic_chain(&o, 2, &zero).unwrap();
        assert!(chain.iter().all(|u| steinitz_class(u).unwrap() == cg.group().zero()));
    }
}
