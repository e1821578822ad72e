use num_bigint::BigInt;
use num_traits::Zero;

use super::classgroup::ClassGroup;
use super::ideal::FracIdeal;
use super::lattice::{k_determinant, k_echelon, RLattice};
use super::order::FieldElement;
use crate::error::{Error, Result};
use crate::group::GroupElement;

/// Default number of max-norm shells searched by [`rank_one_summand_with_class`].
pub const DEFAULT_SEARCH_BOUND: u32 = 40;

/// Reads `SYMPCOH_SEARCH_BOUND`, falling back to [`DEFAULT_SEARCH_BOUND`].
pub fn search_bound() -> u32 {
    std::env::var("SYMPCOH_SEARCH_BOUND").ok().and_then(|s| s.parse().ok()).unwrap_or(DEFAULT_SEARCH_BOUND)
}

/// The fractional ideal spanned by the top-wedge coordinates of `L`.
///
/// Every `r`-subset of the Z-basis contributes its minor on the pivot columns of
/// a K-echelon form, so the result is `∧^r L` read through one fixed coordinate.
pub fn top_wedge_ideal(lattice: &RLattice) -> Result<FracIdeal> {
    let r = lattice.rank();
    if r == 0 {
        return Err(Error::Precondition("the zero module has no Steinitz class".into()));
    }
    let order = lattice.order();
    let rows = lattice.k_rows();
    let (_, pivots) = k_echelon(order, &rows);
    debug_assert_eq!(pivots.len(), r);
    let projected: Vec<Vec<FieldElement>> =
        rows.iter().map(|row| pivots.iter().map(|&p| row[p].clone()).collect()).collect();
    let mut gens = Vec::new();
    for subset in subsets(projected.len(), r) {
        let m: Vec<Vec<FieldElement>> = subset.iter().map(|&i| projected[i].clone()).collect();
        let det = k_determinant(order, &m);
        if !det.is_zero() {
            gens.push(det);
        }
    }
    FracIdeal::from_generators(order, &gens)
}

/// `[L] ∈ cl(R)`.
pub fn steinitz_class(lattice: &RLattice) -> Result<GroupElement> {
    let cg = ClassGroup::for_order(lattice.order());
    cg.ideal_class(&top_wedge_ideal(lattice)?)
}

/// The ideal generated by the coordinates of `v`.
fn content_ideal(lattice: &RLattice, v: &[BigInt]) -> Result<FracIdeal> {
    let gens: Vec<FieldElement> = v
        .chunks(2)
        .filter(|p| !p[0].is_zero() || !p[1].is_zero())
        .map(|p| FieldElement::from_bigints(p[0].clone(), p[1].clone()))
        .collect();
    FracIdeal::from_generators(lattice.order(), &gens)
}

/// `k`-element subsets of `0..n` in lexicographic order.
fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur: Vec<usize> = (0..k).collect();
    if k > n {
        return out;
    }
    loop {
        out.push(cur.clone());
        let Some(i) = (0..k).rev().find(|&i| cur[i] != i + n - k) else {
            return out;
        };
        cur[i] += 1;
        for t in i + 1..k {
            cur[t] = cur[t - 1] + 1;
        }
    }
}

/// Primitive vectors of `Z^dim` with max-norm exactly `shell` and first nonzero
/// entry positive, earlier coordinates varying fastest through `0, 1, −1, 2, −2, …`.
fn shell_vectors(dim: usize, shell: i64) -> impl Iterator<Item = Vec<i64>> {
    let side = (2 * shell + 1) as u64;
    let total = side.pow(dim as u32);
    (0..total).filter_map(move |mut code| {
        let mut x = Vec::with_capacity(dim);
        for _ in 0..dim {
            let d = (code % side) as i64;
            x.push(if d % 2 == 1 { (d + 1) / 2 } else { -(d / 2) });
            code /= side;
        }
        let on_shell = x.iter().any(|c| c.abs() == shell);
        let leading_positive = x.iter().find(|&&c| c != 0).is_some_and(|&c| c > 0);
        let primitive = x.iter().fold(0i64, |g, &c| num_integer::gcd(g, c)) == 1;
        (on_shell && leading_positive && primitive).then_some(x)
    })
}

/// A rank-1 summand of the summand `M` with Steinitz class `c`.
///
/// The search runs over `Kv ∩ R^{2n}` for `v` in the Z-span of a rank-2
/// summand of `M`, in increasing max-norm shells of the coefficient vector.
/// The class of `Kv ∩ R^{2n}` is minus the class of the content ideal of `v`.
pub fn rank_one_summand_with_class(m: &RLattice, c: &GroupElement) -> Result<RLattice> {
    rank_one_summand_with_class_bounded(m, c, search_bound())
}

pub fn rank_one_summand_with_class_bounded(m: &RLattice, c: &GroupElement, bound: u32) -> Result<RLattice> {
    if m.rank() < 2 {
        return Err(Error::Precondition(format!("need rank at least 2, got {}", m.rank())));
    }
    if !m.is_summand() {
        return Err(Error::NotSummand("search space must be a summand".into()));
    }
    let order = m.order();
    let cg = ClassGroup::for_order(order);
    if !cg.group().contains(c) {
        return Err(Error::GroupMismatch(format!("{c} is not a class of {order}")));
    }
    let rows = m.k_rows();
    let (picked, _) = k_echelon(order, &rows);
    let pair: Vec<Vec<BigInt>> = picked[..2].iter().map(|&i| m.basis()[i].clone()).collect();
    let plane = RLattice::from_integer_rows(order, m.n(), &pair).saturate()?;
    let w = plane.basis();
    debug_assert_eq!(w.len(), 4);
    let target = cg.group().neg(c);
    for shell in 1..=bound as i64 {
        for x in shell_vectors(4, shell) {
            let mut v = vec![BigInt::zero(); 4 * m.n()];
            for (coef, row) in x.iter().zip(w) {
                if *coef == 0 {
                    continue;
                }
                let coef = BigInt::from(*coef);
                for (a, b) in v.iter_mut().zip(row) {
                    *a += &coef * b;
                }
            }
            if cg.ideal_class(&content_ideal(m, &v)?)? == target {
                let line = RLattice::from_integer_rows(order, m.n(), &[v]).saturate()?;
                debug_assert!(m.contains(&line));
                return Ok(line);
            }
        }
    }
    Err(Error::SearchExhausted { bound })
}

/// `[L]` for `L` possibly zero, with `[0] = 0`.
pub fn class_or_zero(lattice: &RLattice) -> Result<GroupElement> {
    if lattice.is_zero() {
        Ok(ClassGroup::for_order(lattice.order()).group().zero())
    } else {
        steinitz_class(lattice)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dedekind::order::QuadraticOrder;
    use crate::linalg::from_i64;

    fn d20() -> QuadraticOrder {
        QuadraticOrder::new(-20).unwrap()
    }

    /// `K·(2e_{-1} + (1+√-5)e_1) ∩ R²`.
    fn p_line(o: &QuadraticOrder) -> RLattice {
        RLattice::from_integer_rows(o, 1, &from_i64(&[vec![1, 1, 2, 0]])).saturate().unwrap()
    }

    #[test]
    fn shells_start_at_unit_vectors() {
        let first: Vec<Vec<i64>> = shell_vectors(4, 1).take(3).collect();
        assert_eq!(first, vec![vec![1, 0, 0, 0], vec![0, 1, 0, 0], vec![1, 1, 0, 0]]);
        // 3^4 - 1 nonzero vectors, half with a positive leading entry.
        assert_eq!(shell_vectors(4, 1).count(), 40);
    }

    #[test]
    fn subset_enumeration() {
        assert_eq!(subsets(4, 2).len(), 6);
        assert_eq!(subsets(3, 3), vec![vec![0, 1, 2]]);
        assert_eq!(subsets(5, 0), vec![Vec::<usize>::new()]);
    }

    #[test]
    fn free_modules_are_trivial() {
        let o = d20();
        let cg = ClassGroup::for_order(&o);
        for n in 1..=3 {
            assert_eq!(steinitz_class(&RLattice::free(&o, n)).unwrap(), cg.group().zero());
            assert_eq!(steinitz_class(&RLattice::coordinate(&o, n, &[1])).unwrap(), cg.group().zero());
        }
        assert!(steinitz_class(&RLattice::zero(&o, 2)).is_err());
    }

    #[test]
    fn line_through_p_has_class_p() {
        let o = d20();
        let cg = ClassGroup::for_order(&o);
        let line = p_line(&o);
        assert!(line.is_summand());
        assert_eq!(line.rank(), 1);
        let p = FracIdeal::from_generators(&o, &[FieldElement::from_ints(2, 0), FieldElement::from_ints(1, 1)]).unwrap();
        let cp = cg.ideal_class(&p).unwrap();
        assert_ne!(cp, cg.group().zero());
        assert_eq!(steinitz_class(&line).unwrap(), cp);
    }

    #[test]
    fn additivity_on_direct_sums() {
        // I·e_1 ⊕ J·e_2 has class [I] + [J]; the line above sits in the first plane.
        let o = d20();
        let cg = ClassGroup::for_order(&o);
        let line = p_line(&o);
        let lifted = RLattice::from_integer_rows(&o, 2, &from_i64(&[vec![1, 1, 0, 0, 0, 0, 2, 0]])).saturate().unwrap();
        let other = RLattice::from_integer_rows(&o, 2, &from_i64(&[vec![0, 0, 1, 1, 2, 0, 0, 0]])).saturate().unwrap();
        let sum = lifted.sum(&other).unwrap();
        assert_eq!(sum.rank(), 2);
        let expected = cg.group().add(&steinitz_class(&lifted).unwrap(), &steinitz_class(&other).unwrap());
        assert_eq!(steinitz_class(&sum).unwrap(), expected);
        assert_eq!(expected, cg.group().zero());
        assert_eq!(steinitz_class(&line).unwrap(), steinitz_class(&lifted).unwrap());
    }

    #[test]
    fn search_finds_each_class() {
        for disc in [-20, -23, -56] {
            let o = QuadraticOrder::new(disc).unwrap();
            let cg = ClassGroup::for_order(&o);
            for n in 1..=2 {
                let free = RLattice::free(&o, n);
                for c in cg.group().elements() {
                    let line = rank_one_summand_with_class(&free, &c).unwrap();
                    assert!(line.is_summand());
                    assert_eq!(line.rank(), 1);
                    assert_eq!(steinitz_class(&line).unwrap(), c);
                }
            }
        }
    }

    #[test]
    fn search_rejects_small_inputs() {
        let o = d20();
        let g = ClassGroup::for_order(&o).group().zero();
        assert!(rank_one_summand_with_class(&RLattice::coordinate(&o, 2, &[1]), &g).is_err());
        let two = RLattice::from_integer_rows(&o, 1, &from_i64(&[vec![2, 0, 0, 0], vec![0, 0, 2, 0]]));
        assert!(matches!(rank_one_summand_with_class(&two, &g), Err(Error::NotSummand(_))));
    }
}
