//! Named verification suites shared by the command line and the acceptance tests.

use std::time::Instant;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::json;

use crate::dedekind::frame::pair_is_unimodular;
use crate::dedekind::sampling::{random_isotropic_summand, random_sublattice, random_summand};
use crate::dedekind::{
    build_frame, complement_in, integral_ideals_up_to, is_integral_frame, pushforward_apartment, standard_frame,
    steinitz_class, verify_frame, ClassGroup, QuadraticOrder, RLattice, SymplecticFrame,
};
use crate::error::{Error, Result};
use crate::group::{ClassPair, FiniteAbelianGroup, GroupElement};
use crate::homology::{build_xn, class_span_rank, homology, sigma_s_cycle};
use crate::report::{Check, Report};
use crate::signed_perm::{Classification, SignedPermutation};
use crate::steinberg::{bad_term_count, count_integral_images, split_good_bad, symbolic_sigma_s};

/// Largest rank for which BFS lengths are compared with determinants.
pub const PARITY_RANK: usize = 4;

fn finish(mut report: Report, start: Instant) -> Report {
    report.elapsed_ms = start.elapsed().as_millis();
    report
}

fn factorial(n: usize) -> usize {
    (1..=n).product()
}

/// Order, good count, the bad-element involution and length parity for `n = 1..=max_n`.
pub fn signed_permutations(max_n: usize) -> Result<Report> {
    let start = Instant::now();
    let mut report = Report::new("signed-permutations", json!({ "max_n": max_n }));
    for n in 1..=max_n {
        let all = SignedPermutation::all(n);
        let expected = (1usize << n) * factorial(n);
        report.push(Check::new(format!("order_n{n}"), all.len() == expected, json!({ "count": all.len(), "expected": expected })));
        let good = all.iter().filter(|s| s.is_good()).count();
        report.push(Check::new(format!("good_count_n{n}"), good == 1 << n, json!({ "good": good, "expected": 1 << n })));

        let mut involution_failures = Vec::new();
        let mut k_failures = Vec::new();
        let mut j_failures = Vec::new();
        let mut bad = 0;
        for s in &all {
            let Classification::Bad(c) = s.classify() else { continue };
            bad += 1;
            let p = &c.partner;
            match p.classify() {
                Classification::Bad(d) => {
                    if p == s || d.partner != *s {
                        involution_failures.push(s.to_string());
                    }
                    if d.k != c.k || d.tau != c.tau {
                        k_failures.push(s.to_string());
                    }
                    if d.j != c.j {
                        j_failures.push(json!({ "sigma": s.to_string(), "j": c.j, "partner": p.to_string(), "partner_j": d.j }));
                    }
                }
                Classification::Good(_) => involution_failures.push(s.to_string()),
            }
        }
        report.push(Check::new(
            format!("involution_fixed_point_free_n{n}"),
            involution_failures.is_empty(),
            json!({ "bad": bad, "failures": involution_failures }),
        ));
        report.push(Check::new(
            format!("k_and_tau_preserved_n{n}"),
            k_failures.is_empty(),
            json!({ "bad": bad, "failures": k_failures }),
        ));
        let shown: Vec<_> = j_failures.iter().take(5).cloned().collect();
        report.push(Check::new(
            format!("j_preserved_n{n}"),
            j_failures.is_empty(),
            json!({ "bad": bad, "violations": j_failures.len(), "first": shown }),
        ));
        if n <= PARITY_RANK {
            let mut mismatches = Vec::new();
            for s in &all {
                let by_length = if s.length()? % 2 == 0 { 1 } else { -1 };
                if by_length != s.length_parity() {
                    mismatches.push(s.to_string());
                }
            }
            report.push(Check::new(format!("parity_matches_determinant_n{n}"), mismatches.is_empty(), json!({ "mismatches": mismatches })));
        }
    }
    Ok(finish(report, start))
}

/// Integral homology of `X_n(G)` against a wedge of `(|G|−1)^n` spheres.
pub fn homology_wedge(cases: &[(usize, FiniteAbelianGroup)]) -> Result<Report> {
    let start = Instant::now();
    let params: Vec<_> = cases.iter().map(|(n, g)| json!({ "n": n, "group": g.to_string() })).collect();
    let mut report = Report::new("homology", json!(params));
    for (n, g) in cases {
        let x = build_xn(*n, g)?;
        let h = homology(&x);
        report.push(Check::new(
            format!("wedge_n{n}_{g}"),
            h.matches_wedge(*n, g.order()),
            json!({ "expected_top_rank": (g.order() as usize - 1).pow(*n as u32), "homology": h }),
        ));
    }
    Ok(finish(report, start))
}

/// Good part of the symbolic apartment equals the `Σ_S` pattern; bad part vanishes.
pub fn symbolic(max_n: usize) -> Result<Report> {
    let start = Instant::now();
    let mut report = Report::new("verify-symbolic", json!({ "max_n": max_n }));
    for n in 1..=max_n {
        let (good, bad) = split_good_bad(n)?;
        let pattern = symbolic_sigma_s(n);
        report.push(Check::new(
            format!("good_part_is_cube_sum_n{n}"),
            good == pattern,
            json!({ "good_terms": good.len(), "pattern_terms": pattern.len(), "difference": good.sub(&pattern).to_json() }),
        ));
        report.push(Check::new(
            format!("bad_part_vanishes_n{n}"),
            bad.is_zero(),
            json!({ "bad_elements": bad_term_count(n)?, "surviving": bad.to_json() }),
        ));
    }
    Ok(finish(report, start))
}

/// Independent count of reduced forms of discriminant `disc`.
fn brute_force_class_number(disc: i64) -> usize {
    let mut h = 0;
    for a in 1..=(-disc) {
        for b in -a..=a {
            let num = b * b - disc;
            if num % (4 * a) != 0 {
                continue;
            }
            let c = num / (4 * a);
            let boundary = b.abs() == a || a == c;
            if c >= a && !(boundary && b < 0) && num_integer::gcd(num_integer::gcd(a, b), c) == 1 {
                h += 1;
            }
        }
    }
    h
}

/// Class number, reduced forms and invariant factors of `disc`, with the count
/// cross-checked against a direct enumeration of reduced forms.
pub fn class_group(disc: i64) -> Result<Report> {
    let start = Instant::now();
    let cg = ClassGroup::get(disc)?;
    let mut report = Report::new("classgroup", json!({ "disc": disc }));
    let forms: Vec<String> = cg.forms().iter().map(|f| format!("({}, {}, {})", f.a, f.b, f.c)).collect();
    let representatives: Vec<String> = cg.representatives().iter().map(ToString::to_string).collect();
    let oracle = brute_force_class_number(disc);
    report.push(Check::new(
        "class_number_matches_oracle",
        oracle == cg.class_number(),
        json!({
            "h": cg.class_number(),
            "oracle": oracle,
            "invariant_factors": cg.group().invariant_factors(),
            "reduced_forms": forms,
            "representatives": representatives,
        }),
    ));
    Ok(finish(report, start))
}

/// Every ordered choice `S = ((a_1, b_1), …, (a_n, b_n))` with `a_i ≠ b_i`.
pub fn all_class_choices(group: &FiniteAbelianGroup, n: usize) -> Vec<Vec<ClassPair>> {
    let elems = group.elements();
    let mut pairs = Vec::new();
    for a in &elems {
        for b in &elems {
            if a != b {
                pairs.push(ClassPair::new(a.clone(), b.clone()));
            }
        }
    }
    let mut out: Vec<Vec<ClassPair>> = vec![Vec::new()];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|prefix| {
                pairs.iter().map(move |p| {
                    let mut next = prefix.clone();
                    next.push(p.clone());
                    next
                })
            })
            .collect();
    }
    out
}

fn class_indices(cg: &ClassGroup, pairs: &[ClassPair]) -> Vec<[usize; 2]> {
    pairs.iter().map(|p| [cg.index_of(&p.a).unwrap_or(usize::MAX), cg.index_of(&p.b).unwrap_or(usize::MAX)]).collect()
}

/// Builds, verifies and pushes forward one frame, comparing its image with `Σ_S`.
pub fn frame_checks(order: &QuadraticOrder, pairs: &[ClassPair]) -> Result<(SymplecticFrame, Vec<Check>)> {
    let cg = ClassGroup::for_order(order);
    let n = pairs.len();
    let tag = class_indices(&cg, pairs).iter().map(|[a, b]| format!("{a}:{b}")).collect::<Vec<_>>().join(",");
    let frame = build_frame(order, pairs)?;
    let mut checks: Vec<Check> = verify_frame(&frame)
        .into_iter()
        .map(|mut c| {
            c.check = format!("{}[{tag}]", c.check);
            c
        })
        .collect();
    let x = build_xn(n, cg.group())?;
    let push = pushforward_apartment(&frame)?;
    let target = sigma_s_cycle(&x, pairs)?;
    let diff = push.sub(&target);
    let rank = class_span_rank(&x, std::slice::from_ref(&diff));
    checks.push(Check::new(
        format!("pushforward_in_cube_class[{tag}]"),
        rank == Ok(0),
        json!({ "span_rank_of_difference": rank.as_ref().ok(), "error": rank.as_ref().err().map(ToString::to_string), "difference": diff.to_json() }),
    ));
    Ok((frame, checks))
}

/// Frames for every admissible `S` over `disc` in rank `n`.
pub fn concrete_frames(disc: i64, n: usize) -> Result<Report> {
    let start = Instant::now();
    let order = QuadraticOrder::new(disc)?;
    let cg = ClassGroup::for_order(&order);
    let mut report = Report::new("concrete-frames", json!({ "disc": disc, "n": n }));
    let oracle = brute_force_class_number(disc);
    report.push(Check::new(
        "class_number_matches_oracle",
        oracle == cg.class_number(),
        json!({ "class_number": cg.class_number(), "oracle": oracle }),
    ));
    for pairs in all_class_choices(cg.group(), n) {
        match frame_checks(&order, &pairs) {
            Ok((_, checks)) => report.extend(checks),
            Err(e) => report.push(Check::new(
                format!("build_frame[{:?}]", class_indices(&cg, &pairs)),
                false,
                json!({ "error": e.to_string() }),
            )),
        }
    }
    Ok(finish(report, start))
}

/// Rank of the span of all frame images in `H̃_{n−1}(X_n(cl(R)))`.
pub fn frame_span(disc: i64, n: usize) -> Result<Report> {
    let start = Instant::now();
    let order = QuadraticOrder::new(disc)?;
    let cg = ClassGroup::for_order(&order);
    let mut report = Report::new("frame-span", json!({ "disc": disc, "n": n }));
    let x = build_xn(n, cg.group())?;
    let mut images = Vec::new();
    let mut failures = Vec::new();
    for pairs in all_class_choices(cg.group(), n) {
        match build_frame(&order, &pairs).and_then(|f| pushforward_apartment(&f)) {
            Ok(p) => images.push(p),
            Err(e) => failures.push(json!({ "classes": class_indices(&cg, &pairs), "error": e.to_string() })),
        }
    }
    report.push(Check::new("all_frames_built", failures.is_empty(), json!({ "built": images.len(), "failures": failures })));
    let expected = (cg.class_number() - 1).pow(n as u32);
    let rank = class_span_rank(&x, &images);
    report.push(Check::new(
        "span_is_full_top_homology",
        rank == Ok(expected),
        json!({ "span_rank": rank.as_ref().ok(), "expected": expected, "error": rank.as_ref().err().map(ToString::to_string) }),
    ));
    Ok(finish(report, start))
}

/// `count ≤ C(κ, n) < (h−1)^n` for integral frames over a cyclic class group of order `h`.
pub fn nonintegrality(cases: &[(u64, usize)]) -> Result<Report> {
    let start = Instant::now();
    let params: Vec<_> = cases.iter().map(|(h, n)| json!({ "cl": h, "n": n })).collect();
    let mut report = Report::new("nonintegrality", json!(params));
    for &(h, n) in cases {
        if h < 2 || n < 2 {
            return Err(Error::ParameterRange(format!("need cl >= 2 and n >= 2, got cl = {h}, n = {n}")));
        }
        let c = count_integral_images(n, &FiniteAbelianGroup::cyclic(h))?;
        report.push(Check::new(format!("integral_bound_cl{h}_n{n}"), c.satisfies_bound(), json!(c)));
    }
    Ok(finish(report, start))
}

/// `[I_j] + [I_{−j}] = 0` and unimodular pairs on the standard frame.
pub fn standard_frame_pairs(disc: i64, n: usize) -> Result<Report> {
    let start = Instant::now();
    let order = QuadraticOrder::new(disc)?;
    let cg = ClassGroup::for_order(&order);
    let frame = standard_frame(&order, n)?;
    let mut report = Report::new("standard-frame-pairs", json!({ "disc": disc, "n": n }));
    report.push(Check::new("standard_frame_is_integral", is_integral_frame(&frame), json!(null)));
    for j in 1..=n as i32 {
        let sum = cg.group().add(&steinitz_class(frame.piece(j))?, &steinitz_class(frame.piece(-j))?);
        report.push(Check::new(format!("classes_cancel_j{j}"), sum == cg.group().zero(), json!({ "sum": sum.to_string() })));
        report.push(Check::new(format!("unimodular_pair_j{j}"), pair_is_unimodular(&frame, j)?, json!(null)));
    }
    Ok(finish(report, start))
}

/// Closure laws, rank and complement identities on seeded random summands,
/// and the class homomorphism on small ideals.
pub fn lattice_properties(seed: u64, samples: usize, norm_bound: i64) -> Result<Report> {
    let start = Instant::now();
    let mut report = Report::new("lattice-properties", json!({ "seed": seed, "samples": samples, "norm_bound": norm_bound }));
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let orders = [QuadraticOrder::new(-20)?, QuadraticOrder::new(-23)?];

    let mut closure = Vec::new();
    let mut intersections = Vec::new();
    let mut complements = Vec::new();
    let mut isotropy = Vec::new();
    let mut steinitz = Vec::new();
    for i in 0..samples {
        let order = &orders[i % 2];
        let n = 1 + i % 3;
        let cg = ClassGroup::for_order(order);
        let rank = 1 + i % (2 * n);

        let l = random_sublattice(&mut rng, order, n, rank);
        let extra = random_sublattice(&mut rng, order, n, 1);
        let bigger = l.sum(&extra)?;
        let sat = l.saturate()?;
        let ok = sat.contains(&l)
            && sat.saturate()? == sat
            && sat.is_omega_stable()
            && bigger.saturate()?.contains(&sat)
            && sat.rank() == l.rank();
        if !ok {
            closure.push(i);
        }

        let u = random_summand(&mut rng, order, n);
        let v = random_summand(&mut rng, order, n);
        let meet = u.intersect(&v)?;
        if meet.rank() + 2 * n < u.rank() + v.rank() || !meet.is_summand() {
            intersections.push(i);
        }

        let perp = u.orthogonal_complement()?;
        let ok = perp == u.orthogonal_complement_over_k()?
            && perp.rank() + u.rank() == 2 * n
            && perp.orthogonal_complement()? == u;
        if !ok {
            complements.push(i);
        }

        let iso = random_isotropic_summand(&mut rng, order, n);
        for w in [&u, &iso] {
            if w.is_isotropic() != w.is_isotropic_over_k() {
                isotropy.push(i);
            }
        }
        if !iso.is_isotropic() {
            isotropy.push(i);
        }

        let free = RLattice::free(order, n);
        if u.rank() < 2 * n {
            let c = complement_in(&u, &free)?;
            let total = cg.group().add(&steinitz_class(&u)?, &steinitz_class(&c)?);
            if total != cg.group().zero() || c.rank() + u.rank() != 2 * n || !c.intersect(&u)?.is_zero() || c.sum(&u)? != free {
                steinitz.push(i);
            }
        }
    }
    report.push(Check::new("saturation_is_a_closure", closure.is_empty(), json!({ "samples": samples, "failures": closure })));
    report.push(Check::new(
        "intersection_rank_bound",
        intersections.is_empty(),
        json!({ "samples": samples, "failures": intersections }),
    ));
    report.push(Check::new(
        "complement_over_r_equals_over_k",
        complements.is_empty(),
        json!({ "samples": samples, "failures": complements }),
    ));
    report.push(Check::new("isotropy_over_r_equals_over_k", isotropy.is_empty(), json!({ "samples": 2 * samples, "failures": isotropy })));
    report.push(Check::new("complement_classes_cancel", steinitz.is_empty(), json!({ "samples": samples, "failures": steinitz })));

    for order in &orders {
        let cg = ClassGroup::for_order(order);
        let ideals = integral_ideals_up_to(order, norm_bound);
        let classes: Vec<GroupElement> = ideals.iter().map(|i| cg.ideal_class(i)).collect::<Result<_>>()?;
        let mut failures = Vec::new();
        for (i, a) in ideals.iter().enumerate() {
            for (j, b) in ideals.iter().enumerate().skip(i) {
                let product = cg.ideal_class(&a.mul(b)?)?;
                if product != cg.group().add(&classes[i], &classes[j]) {
                    failures.push(format!("{a} * {b}"));
                }
            }
        }
        report.push(Check::new(
            format!("class_is_homomorphism_d{}", order.disc()),
            failures.is_empty(),
            json!({ "ideals": ideals.len(), "failures": failures }),
        ));
    }
    Ok(finish(report, start))
}
