//! Symbolic apartment chains: the signed sum over B_n of the chambers
//! `(σ([1]), …, σ([n]))`, with every vertex replaced by the class label it is
//! forced to carry, plus the partial-sum images of integral frames.

use std::collections::BTreeSet;
use std::fmt;

use serde::Serialize;

use crate::chain::{ChamberLabel, FormalChain};
use crate::error::{Error, Result};
use crate::group::{check_pairs, ClassPair, FiniteAbelianGroup, GroupElement};
use crate::homology::sigma_s_pattern;
use crate::signed_perm::SignedPermutation;

/// Largest rank for which B_n is enumerated symbolically.
pub const SYMBOLIC_RANK_CAP: usize = 5;

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum VertexLabel {
    /// The class `b_i` of `B_i`.
    B(usize),
    /// The class `a_i` shared by every `A_i^{(j)}`.
    A(usize),
    /// An uninterpreted vertex keyed by its subset, sorted by absolute value.
    Opaque(Vec<i32>),
    Concrete(usize, GroupElement),
}

impl fmt::Display for VertexLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            VertexLabel::B(i) => write!(f, "B{i}"),
            VertexLabel::A(i) => write!(f, "A{i}"),
            VertexLabel::Opaque(t) => {
                let parts: Vec<String> = t.iter().map(i32::to_string).collect();
                write!(f, "O{{{}}}", parts.join(","))
            }
            VertexLabel::Concrete(rank, g) => write!(f, "C({rank},{g})"),
        }
    }
}

impl ChamberLabel for VertexLabel {
    fn render(&self, _level: usize) -> String {
        self.to_string()
    }
}

/// Canonical order on subsets of `[±n]`: by absolute value.
pub fn canonical_subset(t: &[i32]) -> Vec<i32> {
    let mut v = t.to_vec();
    v.sort_by_key(|&x| (x.unsigned_abs(), x));
    v
}

fn check_subset(n: usize, t: &[i32]) -> Result<()> {
    let mut seen = BTreeSet::new();
    for &x in t {
        if x == 0 || x.unsigned_abs() as usize > n {
            return Err(Error::MalformedSubset(format!("{x} is not in [±{n}]")));
        }
        if !seen.insert(x.unsigned_abs()) {
            return Err(Error::MalformedSubset(format!("{t:?} contains both ±{} or a repeat", x.unsigned_abs())));
        }
    }
    Ok(())
}

/// Label forced on the vertex `I_T` of a frame, `m = |T|`.
///
/// `T = [m]` gives `B(m)`; `T = [m-1] ∪ {x}` with `x ∈ {-m, ±(m+1), …, ±n}`
/// gives `A(m)`; anything else stays opaque.
pub fn label_of_subset(n: usize, t: &[i32]) -> Result<VertexLabel> {
    check_subset(n, t)?;
    let m = t.len() as i32;
    let missing: Vec<i32> = (1..m).filter(|i| !t.contains(i)).collect();
    if missing.is_empty() {
        let extra = *t.iter().find(|&&x| !(1..m).contains(&x)).expect("m elements, m-1 in [m-1]");
        if extra == m {
            return Ok(VertexLabel::B(m as usize));
        }
        if extra == -m || extra.abs() > m {
            return Ok(VertexLabel::A(m as usize));
        }
    }
    Ok(VertexLabel::Opaque(canonical_subset(t)))
}

fn chamber_of(sigma: &SignedPermutation) -> Vec<VertexLabel> {
    let n = sigma.rank();
    (1..=n)
        .map(|m| label_of_subset(n, &sigma.image_of_initial(m)).expect("images of signed permutations are valid"))
        .collect()
}

fn check_cap(n: usize) -> Result<()> {
    if n == 0 {
        return Err(Error::ParameterRange("rank must be >= 1".into()));
    }
    if n > SYMBOLIC_RANK_CAP {
        return Err(Error::RankCapExceeded { n, cap: SYMBOLIC_RANK_CAP });
    }
    Ok(())
}

/// `Σ_σ (-1)^{len σ} (label(σ[1]), …, label(σ[n]))`.
pub fn apartment_chain_symbolic(n: usize) -> Result<FormalChain<VertexLabel>> {
    let (good, bad) = split_good_bad(n)?;
    Ok(good.add(&bad))
}

/// The same sum restricted to good and to bad σ.
pub fn split_good_bad(n: usize) -> Result<(FormalChain<VertexLabel>, FormalChain<VertexLabel>)> {
    check_cap(n)?;
    let mut good = FormalChain::new();
    let mut bad = FormalChain::new();
    for sigma in SignedPermutation::all(n) {
        let target = if sigma.is_good() { &mut good } else { &mut bad };
        target.add_term(chamber_of(&sigma), sigma.length_parity());
    }
    Ok((good, bad))
}

/// Number of bad elements whose chambers enter the bad sum before cancellation.
pub fn bad_term_count(n: usize) -> Result<usize> {
    check_cap(n)?;
    Ok(SignedPermutation::all(n).iter().filter(|s| !s.is_good()).count())
}

/// `Σ_e (-1)^{Σ ε_i} (x_1, …, x_n)` with `x_i = A(i)` if `ε_i = 1`, else `B(i)`.
pub fn symbolic_sigma_s(n: usize) -> FormalChain<VertexLabel> {
    sigma_s_pattern((1..=n).map(|i| (VertexLabel::A(i), VertexLabel::B(i))).collect())
}

/// Specializes `A(i) ↦ a_i`, `B(i) ↦ b_i`, `Opaque(T) ↦ opaque(T)` and
/// `Concrete(_, g) ↦ g`.
pub fn instantiate(
    chain: &FormalChain<VertexLabel>,
    pairs: &[ClassPair],
    mut opaque: impl FnMut(&[i32]) -> GroupElement,
) -> Result<FormalChain<GroupElement>> {
    check_pairs(pairs)?;
    let mut out = FormalChain::new();
    for (chamber, c) in chain.iter() {
        let mut mapped = Vec::with_capacity(chamber.len());
        for label in chamber {
            let g = match label {
                VertexLabel::B(i) | VertexLabel::A(i) => {
                    let p = pairs.get(i - 1).ok_or(Error::IndexOutOfRange { index: *i, n: pairs.len() })?;
                    if matches!(label, VertexLabel::A(_)) {
                        p.a.clone()
                    } else {
                        p.b.clone()
                    }
                }
                VertexLabel::Opaque(t) => opaque(t),
                VertexLabel::Concrete(_, g) => g.clone(),
            };
            mapped.push(g);
        }
        out.add_term(mapped, c);
    }
    Ok(out)
}

/// Classes `c_j = [I_j]` of an integral frame, `c_{-j}` stored separately.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FrameClasses {
    pub positive: Vec<GroupElement>,
    pub negative: Vec<GroupElement>,
}

impl FrameClasses {
    /// `c_{-j} = -c_j`, as forced by `I_j ⊕ I_{-j} ≅ R^2`.
    pub fn from_positive(group: &FiniteAbelianGroup, positive: Vec<GroupElement>) -> Self {
        let negative = positive.iter().map(|c| group.neg(c)).collect();
        Self { positive, negative }
    }

    pub fn rank(&self) -> usize {
        self.positive.len()
    }

    /// `c_s` for `s ∈ [±n]`.
    pub fn get(&self, s: i32) -> &GroupElement {
        let i = s.unsigned_abs() as usize - 1;
        if s > 0 {
            &self.positive[i]
        } else {
            &self.negative[i]
        }
    }
}

/// `Σ_σ (-1)^{len σ} (c_{σ(1)}, c_{σ(1)} + c_{σ(2)}, …)`.
pub fn integral_image(group: &FiniteAbelianGroup, classes: &FrameClasses) -> Result<FormalChain<GroupElement>> {
    let n = classes.rank();
    if classes.negative.len() != n {
        return Err(Error::RankMismatch { left: n, right: classes.negative.len() });
    }
    check_cap(n)?;
    for (j, (c, d)) in classes.positive.iter().zip(&classes.negative).enumerate() {
        if !group.contains(c) || !group.contains(d) {
            return Err(Error::GroupMismatch(format!("class of I_±{} outside {group}", j + 1)));
        }
        if &group.neg(c) != d {
            return Err(Error::ConstraintViolated(j as i32 + 1));
        }
    }
    let mut out = FormalChain::new();
    for sigma in SignedPermutation::all(n) {
        let mut acc = group.zero();
        let chamber = sigma
            .window()
            .iter()
            .map(|&s| {
                acc = group.add(&acc, classes.get(s));
                acc.clone()
            })
            .collect();
        out.add_term(chamber, sigma.length_parity());
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IntegralImageCount {
    /// Distinct nonzero images, up to sign.
    pub count: u64,
    /// `C(κ, n)` with `κ = ⌊|G|/2⌋`.
    pub kappa_bound: u64,
    /// `(|G| - 1)^n`, the rank of the top reduced homology.
    pub full_rank: u64,
}

impl IntegralImageCount {
    /// `count ≤ C(κ, n) < (|G| - 1)^n`.
    pub fn satisfies_bound(&self) -> bool {
        self.count <= self.kappa_bound && self.kappa_bound < self.full_rank
    }
}

pub fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    (0..k).fold(1u64, |acc, i| acc * (n - i) / (i + 1))
}

/// Enumerates every choice of `c_1, …, c_n` and counts the distinct nonzero
/// integral images up to sign.
pub fn count_integral_images(n: usize, group: &FiniteAbelianGroup) -> Result<IntegralImageCount> {
    let order = group.order();
    if n < 2 || order < 2 {
        return Err(Error::ParameterRange(format!("need n >= 2 and |G| >= 2, got n={n}, |G|={order}")));
    }
    check_cap(n)?;
    let elements = group.elements();
    let mut images = BTreeSet::new();
    let total = (order as usize).pow(n as u32);
    for code in 0..total {
        let mut rest = code;
        let positive = (0..n)
            .map(|_| {
                let g = elements[rest % order as usize].clone();
                rest /= order as usize;
                g
            })
            .collect();
        let image = integral_image(group, &FrameClasses::from_positive(group, positive))?;
        if !image.is_zero() {
            images.insert(image.normalized_up_to_sign());
        }
    }
    Ok(IntegralImageCount {
        count: images.len() as u64,
        kappa_bound: binomial(order / 2, n as u64),
        full_rank: (order - 1).pow(n as u32),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::homology::{sigma_s_cycle, XnComplex};

    #[test]
    fn subset_labels() {
        assert_eq!(label_of_subset(3, &[1, 2, 3]).unwrap(), VertexLabel::B(3));
        assert_eq!(label_of_subset(5, &[3, 1, 2]).unwrap(), VertexLabel::B(3));
        assert_eq!(label_of_subset(3, &[1, 2, -3]).unwrap(), VertexLabel::A(3));
        assert_eq!(label_of_subset(3, &[1, -2, 3]).unwrap(), VertexLabel::Opaque(vec![1, -2, 3]));
        assert_eq!(label_of_subset(3, &[-2]).unwrap(), VertexLabel::A(1));
        assert_eq!(label_of_subset(3, &[2, 1]).unwrap(), VertexLabel::B(2));
        assert_eq!(label_of_subset(3, &[1, 3]).unwrap(), VertexLabel::A(2));
        assert_eq!(label_of_subset(3, &[2, 3]).unwrap(), VertexLabel::Opaque(vec![2, 3]));
        assert!(label_of_subset(3, &[1, -1]).is_err());
        assert!(label_of_subset(3, &[4]).is_err());
        assert_eq!(VertexLabel::Opaque(vec![1, -2, 3]).to_string(), "O{1,-2,3}");
    }

    #[test]
    fn rank_one_chain() {
        let c = apartment_chain_symbolic(1).unwrap();
        assert_eq!(c.len(), 2);
        assert_eq!(c.coefficient(&[VertexLabel::B(1)]), 1);
        assert_eq!(c.coefficient(&[VertexLabel::A(1)]), -1);
        let (good, bad) = split_good_bad(1).unwrap();
        assert_eq!(good.len(), 2);
        assert!(bad.is_zero());
    }

    #[test]
    fn good_part_is_the_cube_pattern() {
        for n in 1..=4 {
            let (good, bad) = split_good_bad(n).unwrap();
            assert_eq!(good, symbolic_sigma_s(n), "n={n}");
            assert!(bad.is_zero(), "n={n}");
            assert_eq!(good.add(&bad), apartment_chain_symbolic(n).unwrap());
        }
        assert_eq!(bad_term_count(3).unwrap(), 40);
        assert_eq!(split_good_bad(6), Err(Error::RankCapExceeded { n: 6, cap: 5 }));
    }

    #[test]
    fn bad_pairs_share_chambers() {
        for n in 2..=4 {
            for s in SignedPermutation::all(n) {
                if let crate::signed_perm::Classification::Bad(c) = s.classify() {
                    assert_eq!(chamber_of(&s), chamber_of(&c.partner), "{s}");
                    assert_eq!(s.length_parity(), -c.partner.length_parity());
                }
            }
        }
    }

    #[test]
    fn instantiation_matches_sigma_s() {
        for order in 2..=4u64 {
            let g = FiniteAbelianGroup::cyclic(order);
            let els = g.elements();
            for n in 1..=3 {
                let x = XnComplex::build(n, &g).unwrap();
                let chain = apartment_chain_symbolic(n).unwrap();
                // A few distinct-entry tuples, varied by shifting.
                for shift in 0..order as usize {
                    let pairs: Vec<ClassPair> = (0..n)
                        .map(|i| {
                            let a = els[(shift + i) % els.len()].clone();
                            let b = els[(shift + 2 * i + 1) % els.len()].clone();
                            ClassPair::new(a, b)
                        })
                        .collect();
                    if check_pairs(&pairs).is_err() {
                        continue;
                    }
                    let image = instantiate(&chain, &pairs, |_| g.zero()).unwrap();
                    assert_eq!(image, sigma_s_cycle(&x, &pairs).unwrap());
                }
            }
        }
        let t = FiniteAbelianGroup::trivial();
        let chain = apartment_chain_symbolic(1).unwrap();
        assert!(instantiate(&chain, &[ClassPair::new(t.zero(), t.zero())], |_| t.zero()).is_err());
    }

    #[test]
    fn integral_examples() {
        let z5 = FiniteAbelianGroup::cyclic(5);
        let c = FrameClasses::from_positive(&z5, vec![z5.element(&[1]).unwrap()]);
        let img = integral_image(&z5, &c).unwrap();
        assert_eq!(img.coefficient(&[z5.element(&[1]).unwrap()]), 1);
        assert_eq!(img.coefficient(&[z5.element(&[4]).unwrap()]), -1);

        let z2 = FiniteAbelianGroup::cyclic(2);
        let c = FrameClasses::from_positive(&z2, vec![z2.element(&[1]).unwrap()]);
        assert!(integral_image(&z2, &c).unwrap().is_zero());

        let bad = FrameClasses { positive: vec![z5.element(&[1]).unwrap()], negative: vec![z5.element(&[1]).unwrap()] };
        assert_eq!(integral_image(&z5, &bad), Err(Error::ConstraintViolated(1)));

        // c_1 = c_2 forces cancellation.
        let c = FrameClasses::from_positive(&z5, vec![z5.element(&[2]).unwrap(); 2]);
        assert!(integral_image(&z5, &c).unwrap().is_zero());
    }

    #[test]
    fn counting_bounds() {
        let z2 = count_integral_images(2, &FiniteAbelianGroup::cyclic(2)).unwrap();
        assert_eq!(z2, IntegralImageCount { count: 0, kappa_bound: 0, full_rank: 1 });
        let z3 = count_integral_images(2, &FiniteAbelianGroup::cyclic(3)).unwrap();
        assert_eq!((z3.count, z3.kappa_bound, z3.full_rank), (0, 0, 4));
        let z5 = count_integral_images(2, &FiniteAbelianGroup::cyclic(5)).unwrap();
        assert_eq!((z5.kappa_bound, z5.full_rank), (1, 16));
        assert!(z5.count <= 1 && z5.satisfies_bound());
        assert!(count_integral_images(1, &FiniteAbelianGroup::cyclic(5)).is_err());
        assert_eq!(binomial(5, 2), 10);
        assert_eq!(binomial(1, 2), 0);
    }

    #[test]
    fn integral_images_are_cycles() {
        let g = FiniteAbelianGroup::cyclic(5);
        let x = XnComplex::build(2, &g).unwrap();
        for a in 0..5 {
            for b in 0..5 {
                let c = FrameClasses::from_positive(&g, vec![g.element(&[a]).unwrap(), g.element(&[b]).unwrap()]);
                assert!(x.is_cycle(&integral_image(&g, &c).unwrap()).unwrap());
            }
        }
    }
}
