use num_bigint::BigInt;
use proptest::prelude::*;

use sympcoh::dedekind::{
    complement_in, integral_ideals_up_to, steinitz_class, ClassGroup, FracIdeal, QuadraticOrder, RLattice,
};
use sympcoh::linalg::{from_i64, hnf_with_transform, left_kernel, mat_mul, rank, solve_left, vec_mat};
use sympcoh::{build_xn, homology, sigma_s_cycle, ClassPair, Classification, FiniteAbelianGroup, FormalChain, SignedPermutation};

fn signed_permutation() -> impl Strategy<Value = SignedPermutation> {
    (1usize..=5).prop_flat_map(|n| {
        let perm = Just((1..=n as i32).collect::<Vec<_>>()).prop_shuffle();
        (perm, prop::collection::vec(any::<bool>(), n)).prop_map(|(p, signs)| {
            let w = p.into_iter().zip(signs).map(|(x, neg)| if neg { -x } else { x }).collect();
            SignedPermutation::new(w).unwrap()
        })
    })
}

fn int_rows(rows: std::ops::RangeInclusive<usize>, cols: usize) -> impl Strategy<Value = Vec<Vec<i64>>> {
    prop::collection::vec(prop::collection::vec(-4i64..=4, cols), rows)
}

/// A random R-span in `R^{2n}` for `n ∈ 1..=2`, over D = -20 or D = -23.
fn sublattice() -> impl Strategy<Value = RLattice> {
    (prop::sample::select(vec![-20i64, -23]), 1usize..=2).prop_flat_map(|(disc, n)| {
        int_rows(1..=2 * n, 4 * n).prop_map(move |rows| {
            let order = QuadraticOrder::new(disc).unwrap();
            let rows: Vec<Vec<BigInt>> = from_i64(&rows);
            RLattice::from_integer_rows(&order, n, &rows)
        })
    })
}

fn same_ambient(a: &RLattice, b: &RLattice) -> bool {
    a.n() == b.n() && a.order() == b.order()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn inverse_cancels(s in signed_permutation()) {
        prop_assert!(s.compose(&s.inverse()).unwrap().is_identity());
        prop_assert!(s.inverse().compose(&s).unwrap().is_identity());
    }

    #[test]
    fn good_elements_are_their_subwords(s in signed_permutation()) {
        if let Classification::Good(cert) = s.classify() {
            prop_assert_eq!(cert.word(), s.clone());
            prop_assert_eq!(cert.sign(), s.length_parity());
        }
    }

    #[test]
    fn bad_pairing_is_a_fixed_point_free_involution(s in signed_permutation()) {
        if let Classification::Bad(cert) = s.classify() {
            prop_assert_ne!(&cert.partner, &s);
            prop_assert_eq!(cert.partner.length_parity(), -s.length_parity());
            match cert.partner.classify() {
                Classification::Bad(back) => {
                    prop_assert_eq!(back.partner, s.clone());
                    prop_assert_eq!(back.k, cert.k);
                    prop_assert_eq!(back.tau, cert.tau);
                }
                Classification::Good(_) => prop_assert!(false, "partner of a bad element is good"),
            }
        }
    }

    #[test]
    fn hnf_transform_and_kernel(rows in int_rows(1..=5, 4)) {
        let a = from_i64(&rows);
        let h = hnf_with_transform(&a, 4);
        prop_assert_eq!(mat_mul(&h.u, &a, 4), h.h.clone());
        prop_assert_eq!(h.rank, rank(&a, 4));
        for k in left_kernel(&a, 4) {
            prop_assert!(vec_mat(&k, &a, 4).iter().all(|x| *x == BigInt::from(0)));
        }
        // Every integer combination of the rows is solvable.
        let x: Vec<BigInt> = (0..a.len()).map(|i| BigInt::from(i as i64 - 1)).collect();
        let b = vec_mat(&x, &a, 4);
        let y = solve_left(&h, &b).unwrap();
        prop_assert_eq!(vec_mat(&y, &a, 4), b);
    }

    #[test]
    fn chain_arithmetic(
        a in prop::collection::vec((prop::collection::vec(0u8..3, 2), -3i64..=3), 0..6),
        b in prop::collection::vec((prop::collection::vec(0u8..3, 2), -3i64..=3), 0..6),
    ) {
        let build = |terms: &[(Vec<u8>, i64)]| {
            let mut c = FormalChain::new();
            for (ch, k) in terms {
                c.add_term(ch.clone(), *k);
            }
            c
        };
        let (a, b) = (build(&a), build(&b));
        prop_assert!(a.sub(&a).is_zero());
        prop_assert_eq!(a.add(&b).sub(&b), a.clone());
        prop_assert_eq!(a.add(&b), b.add(&a));
        prop_assert_eq!(a.scale(-1), a.neg());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn cube_sums_are_cycles(n in 1usize..=3, h in 2u64..=4, seed in any::<u64>()) {
        let g = FiniteAbelianGroup::cyclic(h);
        let x = build_xn(n, &g).unwrap();
        let elems = g.elements();
        let pick = |i: usize| elems[((seed >> (4 * i)) as usize) % elems.len()].clone();
        let pairs: Vec<ClassPair> = (0..n)
            .map(|i| {
                let a = pick(2 * i);
                let mut b = pick(2 * i + 1);
                if b == a {
                    b = g.add(&a, &elems[1]);
                }
                ClassPair::new(a, b)
            })
            .collect();
        prop_assert!(x.is_cycle(&sigma_s_cycle(&x, &pairs).unwrap()).unwrap());
    }

    #[test]
    fn wedge_of_spheres(n in 1usize..=3, orders in prop::sample::select(vec![vec![], vec![2], vec![3], vec![4], vec![2, 2]])) {
        let g = FiniteAbelianGroup::from_orders(&orders).unwrap();
        let h = homology(&build_xn(n, &g).unwrap());
        prop_assert!(h.matches_wedge(n, g.order()));
        prop_assert!(h.is_torsion_free());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn saturation_is_a_closure(l in sublattice()) {
        let sat = l.saturate().unwrap();
        prop_assert!(sat.contains(&l));
        prop_assert_eq!(sat.rank(), l.rank());
        prop_assert!(sat.is_summand());
        prop_assert!(sat.is_omega_stable());
        prop_assert_eq!(sat.saturate().unwrap(), sat);
    }

    #[test]
    fn sums_and_intersections(u in sublattice(), v in sublattice()) {
        prop_assume!(same_ambient(&u, &v));
        let (u, v) = (u.saturate().unwrap(), v.saturate().unwrap());
        let meet = u.intersect(&v).unwrap();
        let join = u.sum(&v).unwrap();
        prop_assert!(u.contains(&meet) && v.contains(&meet));
        prop_assert!(join.contains(&u) && join.contains(&v));
        prop_assert!(meet.is_summand());
        prop_assert_eq!(meet.rank() + join.rank(), u.rank() + v.rank());
    }

    #[test]
    fn orthogonal_complement_is_an_involution(l in sublattice()) {
        let u = l.saturate().unwrap();
        let perp = u.orthogonal_complement().unwrap();
        prop_assert_eq!(perp.rank() + u.rank(), 2 * u.n());
        prop_assert_eq!(&perp.orthogonal_complement().unwrap(), &u);
        prop_assert_eq!(perp, u.orthogonal_complement_over_k().unwrap());
    }

    #[test]
    fn complements_split_and_cancel_classes(l in sublattice()) {
        let u = l.saturate().unwrap();
        let free = RLattice::free(u.order(), u.n());
        prop_assume!(u.rank() < 2 * u.n());
        let c = complement_in(&u, &free).unwrap();
        prop_assert!(c.intersect(&u).unwrap().is_zero());
        prop_assert_eq!(&c.sum(&u).unwrap(), &free);
        let cg = ClassGroup::for_order(u.order());
        let total = cg.group().add(&steinitz_class(&u).unwrap(), &steinitz_class(&c).unwrap());
        prop_assert_eq!(total, cg.group().zero());
    }
}

fn ideals(disc: i64) -> Vec<FracIdeal> {
    integral_ideals_up_to(&QuadraticOrder::new(disc).unwrap(), 40)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn ideal_class_is_a_homomorphism(disc in prop::sample::select(vec![-20i64, -23, -56, -84]), i in any::<prop::sample::Index>(), j in any::<prop::sample::Index>()) {
        let all = ideals(disc);
        let (a, b) = (i.get(&all), j.get(&all));
        let cg = ClassGroup::get(disc).unwrap();
        let product = a.mul(b).unwrap();
        prop_assert_eq!(product.norm(), a.norm() * b.norm());
        prop_assert_eq!(
            cg.ideal_class(&product).unwrap(),
            cg.group().add(&cg.ideal_class(a).unwrap(), &cg.ideal_class(b).unwrap())
        );
        prop_assert_eq!(a.mul(&a.inverse()).unwrap(), FracIdeal::unit(a.order()));
    }
}
