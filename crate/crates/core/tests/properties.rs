use clpforge_core::analyzer::{analyze, AnalyzeOptions};
use clpforge_core::arith::p_part;
use clpforge_core::conjugacy::{class_and_centralizer, DEFAULT_CLASS_CAP};
use clpforge_core::constructions::{alternating, cyclic, direct_product, symmetric, wreath_product};
use clpforge_core::permfile;
use clpforge_core::sylow::{sylow_subgroup, SylowOptions};
use clpforge_core::{Perm, PermGroup};
use num_bigint::BigUint;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Small transitive groups, usable as either factor of a product.
fn small_group(i: u8) -> PermGroup {
    match i % 6 {
        0 => cyclic(2).unwrap(),
        1 => cyclic(3).unwrap(),
        2 => cyclic(4).unwrap(),
        3 => symmetric(3).unwrap(),
        4 => alternating(4).unwrap(),
        _ => cyclic(5).unwrap(),
    }
}

fn perm_strategy(n: usize) -> impl Strategy<Value = Perm> {
    Just((0..n).collect::<Vec<usize>>()).prop_shuffle().prop_map(|v| Perm::from_images(v).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn product_orders(a in 0u8..6, b in 0u8..6) {
        let (g, h) = (small_group(a), small_group(b));
        let d = direct_product(&g, &h).unwrap();
        prop_assert_eq!(d.order(), &(g.order() * h.order()));
        let w = wreath_product(&g, &h).unwrap();
        prop_assert_eq!(w.order(), &(g.order().pow(h.degree() as u32) * h.order()));
    }

    #[test]
    fn class_size_times_centralizer_is_the_order(a in 0u8..6, b in 0u8..6, seed in any::<u64>()) {
        let g = wreath_product(&small_group(a), &small_group(b)).unwrap();
        let x = g.random_element(&mut ChaCha8Rng::seed_from_u64(seed));
        let (info, c) = class_and_centralizer(&g, &x, DEFAULT_CLASS_CAP, seed).unwrap();
        prop_assert_eq!(&info.size * c.order(), g.order().clone());
        prop_assert!(c.contains(&x).unwrap());
        for s in c.generators() {
            prop_assert!(s.commutes_with(&x));
        }
    }

    #[test]
    fn sylow_order_is_the_p_part(a in 0u8..6, b in 0u8..6, p in prop::sample::select(vec![2u64, 3, 5]), seed in any::<u64>()) {
        let g = direct_product(&wreath_product(&small_group(a), &cyclic(2).unwrap()).unwrap(), &small_group(b)).unwrap();
        let expected = p_part(g.order(), p);
        match sylow_subgroup(&g, p, &SylowOptions { seed, ..Default::default() }) {
            Ok(s) => {
                prop_assert_eq!(BigUint::from(s.order), expected);
                for x in s.group.generators() {
                    prop_assert!(g.contains(x).unwrap());
                }
            }
            Err(_) => prop_assert_eq!(expected, BigUint::from(1u32)),
        }
    }

    #[test]
    fn analysis_is_deterministic_for_a_seed(a in 0u8..6, seed in any::<u64>()) {
        let g = wreath_product(&small_group(a), &cyclic(3).unwrap()).unwrap();
        let opts = AnalyzeOptions { seed, ..Default::default() };
        let r1 = analyze(&g, 3, "g", &opts).unwrap();
        let r2 = analyze(&g, 3, "g", &opts).unwrap();
        prop_assert_eq!(r1.verdict, r2.verdict);
        prop_assert_eq!(r1.witness, r2.witness);
        let sizes = |r: &clpforge_core::analyzer::ClpReport| r.classes.iter().map(|c| (c.representative.clone(), c.size.clone())).collect::<Vec<_>>();
        prop_assert_eq!(sizes(&r1), sizes(&r2));
    }

    #[test]
    fn verdict_does_not_depend_on_the_seed(a in 0u8..6, s1 in any::<u64>(), s2 in any::<u64>()) {
        let g = wreath_product(&small_group(a), &cyclic(3).unwrap()).unwrap();
        let v = |seed| analyze(&g, 3, "g", &AnalyzeOptions { seed, ..Default::default() }).unwrap().verdict;
        prop_assert_eq!(v(s1), v(s2));
    }

    #[test]
    fn multiplication_is_associative_and_inverts(a in perm_strategy(9), b in perm_strategy(9), c in perm_strategy(9)) {
        prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
        prop_assert!(a.mul(&a.inverse()).is_identity());
        prop_assert_eq!(a.conjugate(&b).order(), a.order());
        // left to right: (a b)(x) = b(a(x))
        for x in 0..9 {
            prop_assert_eq!(a.mul(&b).image(x), b.image(a.image(x)));
        }
    }

    #[test]
    fn permfile_round_trips(gens in prop::collection::vec(perm_strategy(12), 1..4)) {
        let text = permfile::render(12, &gens);
        let (n, back) = permfile::parse(&text).unwrap();
        prop_assert_eq!(n, 12);
        prop_assert_eq!(back, gens);
    }
}
