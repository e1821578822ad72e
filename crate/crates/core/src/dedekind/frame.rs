use std::collections::{BTreeMap, HashMap};

use num_rational::BigRational;
use serde::{Deserialize, Serialize};
use serde_json::json;

use super::classgroup::ClassGroup;
use super::construct::{isotropic_chain, relative_extension};
use super::ideal::FracIdeal;
use super::lattice::{index_at, position, LatticeJson, RLattice};
use super::order::{FieldElement, QuadraticOrder};
use super::steinitz::steinitz_class;
use crate::chain::FormalChain;
use crate::error::{Error, Result};
use crate::group::{check_pairs, ClassPair, GroupElement};
use crate::report::Check;
use crate::signed_perm::SignedPermutation;
use crate::steinberg::VertexLabel;

/// Largest rank for which [`pushforward_apartment`] enumerates `B_n`.
pub const PUSHFORWARD_RANK_CAP: usize = 3;

/// Intermediate summands recorded while building a frame.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FrameCertificates {
    pub classes: Vec<ClassPair>,
    /// `B_0 = 0, B_1, …, B_n`.
    pub b: Vec<RLattice>,
    /// `(j, [A^{(j)}_1, …])` for `j ∈ {2, …, n}` and `j ∈ {−n, …, −1}`.
    pub a: BTreeMap<i32, Vec<RLattice>>,
    /// `(j, W_{j+1})` for `j = 1, …, n`.
    pub w: BTreeMap<usize, RLattice>,
}

/// Rank-1 summands `I_s`, `s ∈ [±n]`, with optional construction certificates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SymplecticFrame {
    order: QuadraticOrder,
    n: usize,
    pieces: Vec<RLattice>,
    certificates: Option<FrameCertificates>,
}

impl SymplecticFrame {
    pub fn new(order: &QuadraticOrder, n: usize, pieces: BTreeMap<i32, RLattice>) -> Result<Self> {
        let mut slots: Vec<Option<RLattice>> = vec![None; 2 * n];
        for (s, l) in pieces {
            if s == 0 || s.unsigned_abs() as usize > n {
                return Err(Error::IndexOutOfRange { index: s.unsigned_abs() as usize, n });
            }
            order.check_same(l.order())?;
            if l.n() != n {
                return Err(Error::RankMismatch { left: l.n(), right: n });
            }
            slots[position(n, s)] = Some(l);
        }
        let pieces = slots
            .into_iter()
            .enumerate()
            .map(|(p, l)| l.ok_or_else(|| Error::Parse(format!("missing piece I_{}", index_at(n, p)))))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self { order: *order, n, pieces, certificates: None })
    }

    pub fn order(&self) -> &QuadraticOrder {
        &self.order
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// `I_s`.
    pub fn piece(&self, s: i32) -> &RLattice {
        &self.pieces[position(self.n, s)]
    }

    pub fn indices(&self) -> Vec<i32> {
        (0..2 * self.n).map(|p| index_at(self.n, p)).collect()
    }

    pub fn certificates(&self) -> Option<&FrameCertificates> {
        self.certificates.as_ref()
    }

    pub fn set_piece(&mut self, s: i32, lattice: RLattice) {
        let p = position(self.n, s);
        self.pieces[p] = lattice;
    }

    /// `Sat(Σ_{s ∈ subset} I_s)`.
    pub fn saturated_sum(&self, subset: &[i32]) -> Result<RLattice> {
        let mut acc = RLattice::zero(&self.order, self.n);
        for &s in subset {
            acc = acc.sum(self.piece(s))?;
        }
        acc.saturate()
    }

    pub fn to_json(&self) -> FrameJson {
        let cg = ClassGroup::for_order(&self.order);
        let idx = |g: &GroupElement| cg.index_of(g).expect("class of this order");
        FrameJson {
            disc: self.order.disc(),
            n: self.n,
            pieces: self.indices().into_iter().map(|s| PieceJson { index: s, lattice: self.piece(s).to_json() }).collect(),
            certificates: self.certificates.as_ref().map(|c| CertificatesJson {
                classes: c.classes.iter().map(|p| [idx(&p.a), idx(&p.b)]).collect(),
                b: c.b.iter().map(RLattice::to_json).collect(),
                a: c.a.iter().map(|(&j, chain)| ChainJson { index: j, chain: chain.iter().map(RLattice::to_json).collect() }).collect(),
                w: c.w.iter().map(|(&j, l)| PieceJson { index: j as i32, lattice: l.to_json() }).collect(),
            }),
        }
    }

    pub fn from_json(j: &FrameJson) -> Result<Self> {
        let order = QuadraticOrder::new(j.disc)?;
        let parse = |l: &LatticeJson| -> Result<RLattice> {
            if l.disc != j.disc || l.n != j.n {
                return Err(Error::Parse("lattice parameters differ from the frame".into()));
            }
            RLattice::from_json(l)
        };
        let mut pieces = BTreeMap::new();
        for p in &j.pieces {
            pieces.insert(p.index, parse(&p.lattice)?);
        }
        let mut frame = Self::new(&order, j.n, pieces)?;
        if let Some(c) = &j.certificates {
            let cg = ClassGroup::for_order(&order);
            let classes = c
                .classes
                .iter()
                .map(|[a, b]| Ok(ClassPair::new(cg.element(*a)?, cg.element(*b)?)))
                .collect::<Result<Vec<_>>>()?;
            let b = c.b.iter().map(&parse).collect::<Result<Vec<_>>>()?;
            let mut a = BTreeMap::new();
            for ch in &c.a {
                a.insert(ch.index, ch.chain.iter().map(&parse).collect::<Result<Vec<_>>>()?);
            }
            let mut w = BTreeMap::new();
            for p in &c.w {
                w.insert(p.index.unsigned_abs() as usize, parse(&p.lattice)?);
            }
            frame.certificates = Some(FrameCertificates { classes, b, a, w });
        }
        Ok(frame)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PieceJson {
    pub index: i32,
    pub lattice: LatticeJson,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChainJson {
    pub index: i32,
    pub chain: Vec<LatticeJson>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertificatesJson {
    /// Class-group indices `[a_i, b_i]`.
    pub classes: Vec<[usize; 2]>,
    pub b: Vec<LatticeJson>,
    pub a: Vec<ChainJson>,
    pub w: Vec<PieceJson>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FrameJson {
    pub disc: i64,
    pub n: usize,
    pub pieces: Vec<PieceJson>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub certificates: Option<CertificatesJson>,
}

/// `I_s = R·e_s`.
pub fn standard_frame(order: &QuadraticOrder, n: usize) -> Result<SymplecticFrame> {
    let pieces = (1..=n as i32)
        .flat_map(|i| [i, -i])
        .map(|s| (s, RLattice::coordinate(order, n, &[s])))
        .collect();
    SymplecticFrame::new(order, n, pieces)
}

/// Chain `A_1 ⊂ … ⊂ A_top` with `[A_i] = a_i` and `B_{i−1} ⊂ A_i`, built downward
/// from `A_top = relative_extension(B_{top−1}, ambient, a_top)`.
fn a_chain(b: &[RLattice], ambient: &RLattice, a: &[GroupElement], top: usize) -> Result<Vec<RLattice>> {
    let mut chain = vec![relative_extension(&b[top - 1], ambient, &a[top - 1])?];
    for i in (1..top).rev() {
        let next = relative_extension(&b[i - 1], &chain[0], &a[i - 1])?;
        chain.insert(0, next);
    }
    Ok(chain)
}

/// Builds the frame attached to `S = ({a_1, b_1}, …, {a_n, b_n})`.
pub fn build_frame(order: &QuadraticOrder, classes: &[ClassPair]) -> Result<SymplecticFrame> {
    let n = classes.len();
    if n == 0 {
        return Err(Error::ParameterRange("n must be at least 1".into()));
    }
    check_pairs(classes)?;
    let cg = ClassGroup::for_order(order);
    if let Some(p) = classes.iter().find(|p| !cg.group().contains(&p.a) || !cg.group().contains(&p.b)) {
        return Err(Error::GroupMismatch(format!("{} or {} is not a class of {order}", p.a, p.b)));
    }
    let a: Vec<GroupElement> = classes.iter().map(|p| p.a.clone()).collect();
    let bs: Vec<GroupElement> = classes.iter().map(|p| p.b.clone()).collect();

    let mut b = vec![RLattice::zero(order, n)];
    b.extend(isotropic_chain(order, n, &bs)?);

    let mut a_chains: BTreeMap<i32, Vec<RLattice>> = BTreeMap::new();
    let mut pieces: BTreeMap<i32, RLattice> = BTreeMap::new();
    pieces.insert(1, b[1].clone());
    for m in 2..=n {
        let chain = a_chain(&b, &b[m], &a, m - 1)?;
        pieces.insert(m as i32, chain[0].clone());
        a_chains.insert(m as i32, chain);
    }

    let mut ws = BTreeMap::new();
    for j in (1..=n).rev() {
        let mut w = b[j - 1].orthogonal_complement()?;
        for k in j + 1..=n {
            let k = k as i32;
            w = w.intersect(&pieces[&k].orthogonal_complement()?)?;
            w = w.intersect(&pieces[&-k].orthogonal_complement()?)?;
        }
        let chain = a_chain(&b, &w, &a, j)?;
        pieces.insert(-(j as i32), chain[0].clone());
        a_chains.insert(-(j as i32), chain);
        ws.insert(j, w);
    }

    let mut frame = SymplecticFrame::new(order, n, pieces)?;
    frame.certificates = Some(FrameCertificates { classes: classes.to_vec(), b, a: a_chains, w: ws });
    if !frame_axiom_holds(&frame) {
        return Err(Error::FrameAxiom("constructed pieces violate the frame axiom".into()));
    }
    Ok(frame)
}

/// `I_i + I_j` is isotropic exactly when `j ≠ −i`, witnessed pair by pair.
fn frame_axiom_violations(frame: &SymplecticFrame) -> Vec<(i32, i32)> {
    let idx = frame.indices();
    let mut bad = Vec::new();
    for (x, &i) in idx.iter().enumerate() {
        for &j in &idx[x + 1..] {
            let isotropic = frame.piece(i).sum(frame.piece(j)).map(|s| s.is_isotropic()).unwrap_or(false);
            if isotropic == (j == -i) {
                bad.push((i, j));
            }
        }
    }
    bad
}

pub fn frame_axiom_holds(frame: &SymplecticFrame) -> bool {
    frame_axiom_violations(frame).is_empty()
}

/// `R^{2n} = ⊕ I_s`.
pub fn is_integral_frame(frame: &SymplecticFrame) -> bool {
    let mut acc = RLattice::zero(&frame.order, frame.n);
    for p in &frame.pieces {
        acc = match acc.sum(p) {
            Ok(s) => s,
            Err(_) => return false,
        };
    }
    acc == RLattice::free(&frame.order, frame.n)
}

/// The ideal generated by `ω(x, y)` for `x ∈ U`, `y ∈ V`.
pub fn pairing_ideal(u: &RLattice, v: &RLattice) -> Result<FracIdeal> {
    let mut gens = Vec::new();
    for x in u.basis() {
        for y in v.basis() {
            let (a, b) = u.pairing(x, y);
            gens.push(FieldElement::new(
                BigRational::new(a, u.denominator().clone() * v.denominator()),
                BigRational::new(b, u.denominator().clone() * v.denominator()),
            ));
        }
    }
    gens.retain(|g| !g.is_zero());
    if gens.is_empty() {
        return Err(Error::Precondition("the pairing vanishes identically".into()));
    }
    FracIdeal::from_generators(u.order(), &gens)
}

/// `ω` restricts to a perfect pairing `I_j × I_{−j} → R`.
pub fn pair_is_unimodular(frame: &SymplecticFrame, j: i32) -> Result<bool> {
    if j <= 0 || j as usize > frame.n {
        return Err(Error::IndexOutOfRange { index: j.unsigned_abs() as usize, n: frame.n });
    }
    match pairing_ideal(frame.piece(j), frame.piece(-j)) {
        Ok(ideal) => Ok(ideal == FracIdeal::unit(&frame.order)),
        Err(Error::Precondition(_)) => Ok(false),
        Err(e) => Err(e),
    }
}

fn check(name: &str, failures: Vec<String>, total: usize) -> Check {
    let passed = failures.is_empty();
    Check::new(name, passed, json!({ "checked": total, "failures": failures }))
}

/// Replays every identity the construction guarantees.
pub fn verify_frame(frame: &SymplecticFrame) -> Vec<Check> {
    let mut out = Vec::new();
    let n = frame.n;
    let class_of = |l: &RLattice| steinitz_class(l).ok();

    let mut fails = Vec::new();
    for s in frame.indices() {
        let p = frame.piece(s);
        if p.rank() != 1 || !p.is_summand() {
            fails.push(format!("I_{s} is not a rank-1 summand"));
        }
    }
    out.push(check("pieces_are_rank_one_summands", fails, 2 * n));

    let violations = frame_axiom_violations(frame);
    out.push(Check::new(
        "frame_axiom",
        violations.is_empty(),
        json!({ "pairs": n * (2 * n - 1), "violations": violations }),
    ));

    let Some(cert) = frame.certificates.as_ref() else {
        return out;
    };
    let a = |i: usize| &cert.classes[i - 1].a;
    let b = |i: usize| &cert.classes[i - 1].b;
    let bl = &cert.b;

    let mut fails = Vec::new();
    for i in 1..=n {
        let l = &bl[i];
        if l.rank() != i || !l.is_summand() || !l.is_isotropic() || !l.contains(&bl[i - 1]) || l == &bl[i - 1] {
            fails.push(format!("B_{i} shape"));
        }
        if class_of(l).as_ref() != Some(b(i)) {
            fails.push(format!("[B_{i}] != b_{i}"));
        }
    }
    out.push(check("b_chain", fails, n));

    let mut fails = Vec::new();
    let mut count = 0;
    for (&j, chain) in &cert.a {
        for (k, l) in chain.iter().enumerate() {
            let i = k + 1;
            count += 1;
            if l.rank() != i || !l.is_summand() || !l.is_isotropic() || !l.contains(&bl[i - 1]) {
                fails.push(format!("A^({j})_{i} shape"));
            }
            if k > 0 && !l.contains(&chain[k - 1]) {
                fails.push(format!("A^({j})_{i} does not contain A^({j})_{}", i - 1));
            }
            if class_of(l).as_ref() != Some(a(i)) {
                fails.push(format!("[A^({j})_{i}] != a_{i}"));
            }
        }
        let top = chain.last().expect("nonempty chain");
        let ambient = if j > 0 { Some(&bl[j as usize]) } else { cert.w.get(&(j.unsigned_abs() as usize)) };
        if !ambient.is_some_and(|amb| amb.contains(top)) {
            fails.push(format!("top of the A^({j}) chain escapes its ambient summand"));
        }
        if frame.piece(j) != &chain[0] {
            fails.push(format!("I_{j} != A^({j})_1"));
        }
    }
    if frame.piece(1) != &bl[1] {
        fails.push("I_1 != B_1".into());
    }
    out.push(check("a_chains", fails, count));

    let mut fails = Vec::new();
    let mut count = 0;
    for (&j, chain) in &cert.a {
        for (k, l) in chain.iter().enumerate() {
            let i = k + 1;
            count += 1;
            if bl[i].intersect(l).ok().as_ref() != Some(&bl[i - 1]) {
                fails.push(format!("B_{i} ∩ A^({j})_{i} != B_{}", i - 1));
            }
        }
    }
    out.push(check("b_meets_a_in_previous_b", fails, count));

    let mut fails = Vec::new();
    for j in 1..=n {
        if bl[j - 1].contains(frame.piece(j as i32)) {
            fails.push(format!("I_{j} ⊆ B_{}", j - 1));
        }
        if bl[j].contains(frame.piece(-(j as i32))) {
            fails.push(format!("I_-{j} ⊆ B_{j}"));
        }
    }
    out.push(check("pieces_escape_b_chain", fails, 2 * n));

    let mut fails = Vec::new();
    for (&j, w) in &cert.w {
        if !w.contains(&bl[j - 1]) || w.rank() < j + 1 {
            fails.push(format!("W_{} too small", j + 1));
        }
    }
    out.push(check("w_contains_previous_b", fails, n));

    let mut fails = Vec::new();
    let mut subset: Vec<i32> = (1..=n as i32).collect();
    for j in (1..=n).rev() {
        subset.push(-(j as i32));
        let sat = frame.saturated_sum(&subset);
        match sat {
            Ok(s) => {
                if s.rank() != 2 * n - j + 1 {
                    fails.push(format!("rank of Sat(I_1..I_-{j}) is {}", s.rank()));
                }
                if s.orthogonal_complement().ok().as_ref() != Some(&bl[j - 1]) {
                    fails.push(format!("Sat(I_1..I_-{j})^⊥ != B_{}", j - 1));
                }
            }
            Err(e) => fails.push(e.to_string()),
        }
        let pair = frame.piece(j as i32).sum(frame.piece(-(j as i32)));
        if pair.map(|p| p.is_isotropic()).unwrap_or(true) {
            fails.push(format!("I_{j} + I_-{j} is isotropic"));
        }
    }
    out.push(check("partial_frames", fails, n));

    let mut fails = Vec::new();
    for i in 1..=n {
        let subset: Vec<i32> = (1..=i as i32).collect();
        if frame.saturated_sum(&subset).ok().as_ref() != Some(&bl[i]) {
            fails.push(format!("Sat(I_1 + … + I_{i}) != B_{i}"));
        }
    }
    out.push(check("initial_sums_saturate_to_b", fails, n));

    let mut fails = Vec::new();
    let mut count = 0;
    for i in 0..n {
        let mut js = vec![-(i as i32 + 1)];
        for k in i + 2..=n {
            js.push(k as i32);
            js.push(-(k as i32));
        }
        for j in js {
            count += 1;
            let expected = cert.a.get(&j).and_then(|c| c.get(i));
            let got = bl[i].sum(frame.piece(j)).and_then(|s| s.saturate()).ok();
            if got.is_none() || got.as_ref() != expected {
                fails.push(format!("Sat(B_{i} + I_{j}) != A^({j})_{}", i + 1));
            }
        }
    }
    out.push(check("b_plus_piece_saturates_to_a", fails, count));

    let mut fails = Vec::new();
    for s in frame.indices() {
        let expected = if s == 1 { b(1) } else { a(1) };
        if class_of(frame.piece(s)).as_ref() != Some(expected) {
            fails.push(format!("[I_{s}] != {}", if s == 1 { "b_1" } else { "a_1" }));
        }
    }
    out.push(check("piece_classes", fails, 2 * n));
    out
}

/// `Σ_σ (−1)^{len σ} ([I_{σ([1])}], …, [I_{σ([n])}])`, one chamber per signed permutation.
pub fn pushforward_apartment(frame: &SymplecticFrame) -> Result<FormalChain<GroupElement>> {
    let n = frame.n;
    if n > PUSHFORWARD_RANK_CAP {
        return Err(Error::RankCapExceeded { n, cap: PUSHFORWARD_RANK_CAP });
    }
    let mut memo: HashMap<Vec<i32>, GroupElement> = HashMap::new();
    let mut out = FormalChain::new();
    for sigma in SignedPermutation::all(n) {
        let mut chamber = Vec::with_capacity(n);
        for m in 1..=n {
            let subset = sigma.image_of_initial(m);
            let class = match memo.get(&subset) {
                Some(c) => c.clone(),
                None => {
                    let c = steinitz_class(&frame.saturated_sum(&subset)?)?;
                    memo.insert(subset, c.clone());
                    c
                }
            };
            chamber.push(class);
        }
        out.add_term(chamber, sigma.length_parity());
    }
    Ok(out)
}

/// The same chain with `(rank, class)` vertex labels.
pub fn concrete_labels(chain: &FormalChain<GroupElement>) -> FormalChain<VertexLabel> {
    chain.map_labels(|level, g| VertexLabel::Concrete(level + 1, g.clone()))
}
