//! Algebraic invariants over seeded random inputs, each compared with an independent
//! evaluation (partial maps on a window, brute-force membership, direct recurrences).

use proptest::prelude::*;

use endostar::algebra::Algebra;
use endostar::expr::{algebra_from_json, parse_expr};
use endostar::group::{instance_by_id, BallSpec, GroupInstance, Instance};
use endostar::ktheory::{cokernel_class, one_minus_sigma, solve_recurrence, CoeffGroup, FinSeq};
use endostar::sample::{rng, Sampler};
use endostar::semigroup::{embed, env_identity, env_inv, env_mul, EnvElement};
use endostar::suites::sample_pool;

fn instance(i: usize) -> Instance {
    match i {
        0 => instance_by_id("shift-z", &["G", "H"]).unwrap(),
        1 => instance_by_id("free-shift", &[]).unwrap(),
        _ => instance_by_id("times2", &[]).unwrap(),
    }
}

fn sampler(g: &dyn GroupInstance) -> Sampler<'_> {
    Sampler::new(g, sample_pool(g), 2, 2)
}

fn test_ball(g: &dyn GroupInstance) -> Vec<endostar::group::GroupElement> {
    match g.id() {
        "times2" => g.ball(&BallSpec::l1(0, 24)),
        _ => g.ball(&BallSpec::l1(4, 3)),
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn multiplication_is_associative_and_adjoint_reverses(inst in 0usize..3, seed in any::<u64>()) {
        let g = instance(inst);
        let alg = Algebra::new(&*g);
        let s = sampler(&*g);
        let mut r = rng(seed);
        let x = s.element_sum(&alg, &mut r, 2);
        let y = s.element_sum(&alg, &mut r, 2);
        let z = s.element_sum(&alg, &mut r, 2);
        prop_assert_eq!(alg.mul(&alg.mul(&x, &y), &z), alg.mul(&x, &alg.mul(&y, &z)));
        prop_assert_eq!(alg.adjoint(&alg.mul(&x, &y)), alg.mul(&alg.adjoint(&y), &alg.adjoint(&x)));
        prop_assert_eq!(alg.adjoint(&alg.adjoint(&x)), x);
    }

    #[test]
    fn canonical_form_is_fixed(inst in 0usize..3, seed in any::<u64>()) {
        let g = instance(inst);
        let alg = Algebra::new(&*g);
        let s = sampler(&*g);
        let mut r = rng(seed);
        let m = s.monomial(&alg, &mut r);
        let sub = endostar::lattice::Coset::new(&*g, &g.identity(), m.sub.clone());
        prop_assert_eq!(alg.canonicalize(m.n, &m.a, &sub, &m.b, m.m), Some(m));
    }

    #[test]
    fn monomial_product_composes_partial_maps(inst in 0usize..3, seed in any::<u64>()) {
        let g = instance(inst);
        let alg = Algebra::new(&*g);
        let s = sampler(&*g);
        let mut r = rng(seed);
        let x = s.monomial(&alg, &mut r);
        let y = s.monomial(&alg, &mut r);
        let xy = alg.mono_mul(&x, &y);
        for k in test_ball(&*g) {
            let composed = alg.apply_monomial(&y, &k).and_then(|v| alg.apply_monomial(&x, &v));
            let direct = xy.as_ref().and_then(|m| alg.apply_monomial(m, &k));
            prop_assert_eq!(direct, composed, "k = {}", k);
        }
    }

    #[test]
    fn expectation_is_an_idempotent_bimodule_map(inst in 0usize..3, seed in any::<u64>()) {
        let g = instance(inst);
        let alg = Algebra::new(&*g);
        let s = sampler(&*g);
        let mut r = rng(seed);
        let x = s.element_sum(&alg, &mut r, 3);
        let d = alg.proj(&s.coset(&mut r));
        let t = alg.theta(&x);
        prop_assert_eq!(alg.theta(&t), t.clone());
        prop_assert_eq!(alg.theta(&alg.mul(&d, &x)), alg.mul(&d, &t));
        prop_assert_eq!(alg.theta(&alg.mul(&x, &d)), alg.mul(&t, &d));
    }

    #[test]
    fn rendering_and_json_round_trip(inst in 0usize..3, seed in any::<u64>()) {
        let g = instance(inst);
        let alg = Algebra::new(&*g);
        let s = sampler(&*g);
        let mut r = rng(seed);
        let x = s.element_sum(&alg, &mut r, 3);
        let text = alg.render(&x);
        prop_assert_eq!(&parse_expr(&alg, &text).unwrap(), &x, "{}", text);
        let json = serde_json::to_value(&x).unwrap();
        prop_assert_eq!(&algebra_from_json(&alg, &json).unwrap(), &x);
    }

    #[test]
    fn enveloping_group_laws(inst in 0usize..3, seed in any::<u64>()) {
        let g = instance(inst);
        let s = sampler(&*g);
        let mut r = rng(seed);
        let mut pick = || -> EnvElement {
            let p = embed(&*g, &s.semigroup(&mut r));
            let q = embed(&*g, &s.semigroup(&mut r));
            env_mul(&*g, &env_inv(&*g, &p), &q)
        };
        let (x, y, z) = (pick(), pick(), pick());
        let e = env_identity(&*g);
        prop_assert_eq!(env_mul(&*g, &env_mul(&*g, &x, &y), &z), env_mul(&*g, &x, &env_mul(&*g, &y, &z)));
        prop_assert_eq!(env_mul(&*g, &x, &env_inv(&*g, &x)), e.clone());
        prop_assert_eq!(env_mul(&*g, &env_inv(&*g, &x), &x), e.clone());
        prop_assert_eq!(env_mul(&*g, &e, &x), x.clone());
        prop_assert_eq!(env_inv(&*g, &env_inv(&*g, &x)), x);
    }

    #[test]
    fn coset_meet_matches_membership(inst in 0usize..3, seed in any::<u64>()) {
        let g = instance(inst);
        let s = sampler(&*g);
        let mut r = rng(seed);
        let (a, b) = (s.coset(&mut r), s.coset(&mut r));
        let meet = a.intersect(&*g, &b);
        for k in test_ball(&*g) {
            let both = a.contains(&*g, &k) && b.contains(&*g, &k);
            let inside = meet.as_ref().is_some_and(|c| c.contains(&*g, &k));
            prop_assert_eq!(inside, both, "k = {}", k);
        }
    }

    #[test]
    fn shift_difference_is_injective_with_sum_cokernel(
        entries in proptest::collection::vec((0u64..12, -9i64..10, -9i64..10, 0i64..3), 0..6),
    ) {
        let grp = CoeffGroup::new(2, vec![3]).unwrap();
        let x = FinSeq::from_entries(&grp, entries.iter().map(|&(k, a, b, c)| (k, vec![a, b, c])));
        let y = one_minus_sigma(&grp, &x);
        prop_assert_eq!(y.is_zero(), x.is_zero());
        prop_assert!(grp.is_zero(&cokernel_class(&grp, &y)));
        prop_assert_eq!(solve_recurrence(&grp, &y), Some(x.clone()));
        // Exactness in the middle: a sequence with zero sum is a difference.
        let mut sum = grp.zero();
        for k in 0..12 {
            sum = grp.add(&sum, &x.get(&grp, k));
        }
        let defect = FinSeq::from_entries(&grp, [(0, grp.neg(&sum))]);
        let balanced = FinSeq::from_entries(&grp, (0..12).map(|k| (k + 1, x.get(&grp, k))).chain([(0, grp.neg(&sum))]));
        prop_assert!(grp.is_zero(&cokernel_class(&grp, &balanced)));
        prop_assert!(solve_recurrence(&grp, &balanced).is_some());
        prop_assert_eq!(cokernel_class(&grp, &defect), grp.neg(&sum));
    }
}
