//! Worked examples for every module, each checked against a value computed independently
//! (by hand or by brute force on a finite window).

use endostar::algebra::{Algebra, AlgebraElement};
use endostar::certificate::{certify, decompose_theta, find_a, find_b, CertifyConfig, Critical};
use endostar::expr::parse_expr;
use endostar::group::{instance_by_id, purity_probe, BallSpec, GroupElement, GroupInstance, IndexClass};
use endostar::ktheory::{cokernel_class, one_minus_sigma, CoeffGroup, FinSeq};
use endostar::lattice::{orthogonalize, refine_family, witness_outside, BaseId, Coset, Lattice};
use endostar::scalar::Scalar;
use endostar::semigroup::{
    common_left_multiple, embed, env_factor, env_identity, env_inv, env_mul, env_normalize, ideal_intersect,
    ideal_preimage, li_generators, li_ideal_projection, s_mul, EnvElement, RightIdeal, SemigroupElement,
};
use endostar::window::{represent, Window, WindowSpec};
use endostar::Error;

fn z(p: &[(u32, i64)]) -> GroupElement {
    GroupElement::seq(p)
}

fn w(p: &[(u32, i8)]) -> GroupElement {
    GroupElement::word(p)
}

fn shift_gh() -> endostar::group::Instance {
    instance_by_id("shift-z", &["G", "H"]).unwrap()
}

fn h() -> Lattice {
    Lattice::base(0, BaseId(1))
}

#[test]
fn endomorphism_and_preimages() {
    let g = shift_gh();
    assert_eq!(g.phi_pow(&z(&[(0, 1)]), 2), z(&[(2, 1)]));
    assert_eq!(g.phi_pow(&z(&[(1, 3)]), 0), z(&[(1, 3)]));
    assert_eq!(g.phi_preimage(&z(&[(2, 5)]), 2), Some(z(&[(0, 5)])));
    assert_eq!(g.phi_preimage(&z(&[(0, 1)]), 1), None);
    let f = instance_by_id("free-shift", &[]).unwrap();
    assert_eq!(f.phi(&w(&[(1, 1), (2, -1)])), w(&[(2, 1), (3, -1)]));
    let t = instance_by_id("times2", &[]).unwrap();
    assert_eq!(t.phi_preimage(&GroupElement::Int(6), 1), Some(GroupElement::Int(3)));
}

#[test]
fn membership() {
    let g = shift_gh();
    assert!(g.member(&z(&[(1, 3)]), &Lattice::phi_of_g(1)));
    assert!(g.member(&z(&[(0, 2)]), &h()));
    assert!(!g.member(&z(&[(0, 1)]), &h()));
    for l in [Lattice::whole(), Lattice::phi_of_g(3), h()] {
        assert!(g.member(&g.identity(), &l));
    }
}

#[test]
fn purity_examples() {
    let g = instance_by_id("shift-z", &[]).unwrap();
    let rep = purity_probe(&*g, 5, &BallSpec::boxed(3, 2));
    assert!(rep.passed());
    let e = rep.samples.iter().find(|s| s.element == g.identity()).unwrap();
    assert_eq!(e.survives, 5);
    let t = instance_by_id("times2", &[]).unwrap();
    assert!(purity_probe(&*t, 10, &BallSpec::l1(0, 100)).passed());
}

/// Brute-force membership of a coset intersection over a box.
fn meet_by_search(g: &dyn GroupInstance, a: &Coset, b: &Coset, ball: &[GroupElement]) -> Vec<bool> {
    ball.iter().map(|x| a.contains(g, x) && b.contains(g, x)).collect()
}

#[test]
fn coset_intersections_match_search() {
    let g = shift_gh();
    let ball = g.ball(&BallSpec::boxed(4, 3));
    let phi1 = Coset::subgroup(Lattice::phi_of_g(1), &*g);
    let phi2 = Coset::subgroup(Lattice::phi_of_g(2), &*g);
    assert_eq!(phi1.intersect(&*g, &phi2), Some(phi2.clone()));
    let shifted = Coset::new(&*g, &z(&[(0, 1)]), Lattice::phi_of_g(1));
    assert_eq!(shifted.intersect(&*g, &phi1), None);
    assert!(meet_by_search(&*g, &shifted, &phi1, &ball).iter().all(|&b| !b));

    let a = Coset::new(&*g, &z(&[(0, 2)]), Lattice::phi_of_g(1));
    let hc = Coset::subgroup(h(), &*g);
    let m = a.intersect(&*g, &hc).unwrap();
    assert!(m.contains(&*g, &z(&[(0, 2)])));
    let expect = meet_by_search(&*g, &a, &hc, &ball);
    let got: Vec<bool> = ball.iter().map(|x| m.contains(&*g, x)).collect();
    assert_eq!(got, expect);
}

#[test]
fn coset_translation_and_phi() {
    let g = shift_gh();
    let c = Coset::subgroup(Lattice::phi_of_g(1), &*g);
    let x = z(&[(0, 3), (2, -1)]);
    assert_eq!(c.translate(&*g, &x).translate(&*g, &g.invert(&x)), c);
    let d = Coset::new(&*g, &z(&[(0, 1)]), Lattice::phi_of_g(1));
    assert_eq!(d.phi(&*g, 1), Coset::new(&*g, &z(&[(1, 1)]), Lattice::phi_of_g(2)));
    assert_eq!(d.phi(&*g, 0), d);
}

#[test]
fn index_classes_match_window_counts() {
    let g = shift_gh();
    assert_eq!(g.index_class(&Lattice::phi_of_g(1), &Lattice::phi_of_g(2)).unwrap(), IndexClass::Infinite);
    assert_eq!(g.index_class(&Lattice::whole(), &h()).unwrap(), IndexClass::Finite(2));
    assert_eq!(g.index_class(&h(), &h()).unwrap(), IndexClass::One);
    // Cosets of H in G met by a window: exactly the two parity classes.
    let mut classes: Vec<GroupElement> =
        g.ball(&BallSpec::boxed(3, 3)).iter().map(|x| g.coset_rep(x, &h())).collect();
    classes.sort();
    classes.dedup();
    assert_eq!(classes.len(), 2);
    // Cosets of φ²(G) inside φ(G) grow with the window: the quotient is infinite.
    let count = |r: u32| {
        let mut c: Vec<GroupElement> = g
            .ball(&BallSpec::boxed(3, r))
            .into_iter()
            .filter(|x| g.member(x, &Lattice::phi_of_g(1)))
            .map(|x| g.coset_rep(&x, &Lattice::phi_of_g(2)))
            .collect();
        c.sort();
        c.dedup();
        c.len()
    };
    assert_eq!((count(1), count(2), count(3)), (3, 5, 7));
}

#[test]
fn atom_decompositions_match_brute_force_partition() {
    let g = shift_gh();
    let ball = g.ball(&BallSpec::boxed(4, 2));
    let families = vec![
        vec![
            Coset::subgroup(Lattice::phi_of_g(1), &*g),
            Coset::new(&*g, &z(&[(0, 1)]), Lattice::phi_of_g(1)),
        ],
        vec![Coset::subgroup(Lattice::whole(), &*g), Coset::subgroup(Lattice::phi_of_g(1), &*g)],
        vec![
            Coset::subgroup(Lattice::whole(), &*g),
            Coset::subgroup(h(), &*g),
            Coset::subgroup(Lattice::phi_of_g(1), &*g),
        ],
    ];
    let expected_atoms = [2, 2, 3];
    for (fam, want) in families.iter().zip(expected_atoms) {
        let atoms = orthogonalize(&*g, fam).unwrap();
        assert_eq!(atoms.len(), want);
        // Brute-force partition: the membership pattern of every window point.
        let mut patterns: Vec<Vec<bool>> =
            ball.iter().map(|x| fam.iter().map(|c| c.contains(&*g, x)).collect()).collect();
        patterns.retain(|p| p.iter().any(|&b| b));
        patterns.sort();
        patterns.dedup();
        assert_eq!(patterns.len(), want);
        for x in &ball {
            let pattern: Vec<usize> = (0..fam.len()).filter(|&j| fam[j].contains(&*g, x)).collect();
            for a in &atoms {
                assert_eq!(a.indicator.eval(&*g, x), i64::from(a.members == pattern));
            }
        }
    }
}

#[test]
fn witnesses_follow_enumeration() {
    let g = shift_gh();
    let d = Coset::subgroup(Lattice::whole(), &*g);
    let phi1 = Coset::subgroup(Lattice::phi_of_g(1), &*g);
    assert_eq!(witness_outside(&*g, &d, &[phi1.clone()], 100).unwrap(), z(&[(0, 1)]));
    assert_eq!(witness_outside(&*g, &d, &[], 100).unwrap(), g.identity());
    let other = Coset::new(&*g, &z(&[(0, 1)]), Lattice::phi_of_g(1));
    // Enumeration order 0, 1, -1, 2, ... on coordinate 0.
    assert_eq!(witness_outside(&*g, &d, &[phi1, other], 100).unwrap(), z(&[(0, -1)]));
}

#[test]
fn refinement_examples() {
    let g = shift_gh();
    let chain = [Lattice::phi_of_g(1), Lattice::phi_of_g(2)];
    assert_eq!(refine_family(&*g, &chain).unwrap(), chain.to_vec());
    assert_eq!(refine_family(&*g, &[Lattice::whole(), h()]).unwrap(), vec![h(), h()]);
    assert_eq!(refine_family(&*g, &[h()]).unwrap(), vec![h()]);
}

#[test]
fn canonical_monomials() {
    let g = instance_by_id("shift-z", &[]).unwrap();
    let alg = Algebra::new(&*g);
    let whole = Coset::subgroup(Lattice::whole(), &*g);
    let one = alg.canonicalize(1, &g.identity(), &whole, &g.identity(), 1).unwrap();
    assert_eq!(AlgebraElement::monomial(one, Scalar::one()), alg.one());
    let c = z(&[(0, 2), (1, -1)]);
    let phi_c = g.phi(&c);
    let m = alg.canonicalize(1, &phi_c, &Coset::subgroup(Lattice::phi_of_g(1), &*g), &g.identity(), 1);
    assert_eq!(AlgebraElement::monomial(m.unwrap(), Scalar::one()), alg.u(&c));
    // e_[φ(G)] u_{0:1} is a nonzero partial isometry; conjugating it by s kills it,
    // since {0:1}·φ(k) never lies in φ(G).
    let phi1 = Coset::subgroup(Lattice::phi_of_g(1), &*g);
    let x = alg.canonicalize(0, &g.identity(), &phi1, &z(&[(0, 1)]), 0).unwrap();
    assert_eq!(alg.apply_monomial(&x, &z(&[(0, -1), (1, 1)])), Some(z(&[(1, 1)])));
    assert_eq!(alg.apply_monomial(&x, &g.identity()), None);
    assert_eq!(alg.canonicalize(1, &g.identity(), &phi1, &z(&[(0, 1)]), 1), None);
}


fn shift() -> endostar::group::Instance {
    instance_by_id("shift-z", &[]).unwrap()
}

#[test]
fn products_match_window_matrices() {
    let g = shift();
    let alg = Algebra::new(&*g);
    let w = Window::build(&*g, &WindowSpec { basis: BallSpec::l1(7, 6), core: BallSpec::l1(2, 1) }).unwrap();
    let mat = |x: &AlgebraElement| represent(&alg, x, &w).unwrap();
    let e1 = alg.proj_sub(&Lattice::phi_of_g(1));
    let e2 = alg.proj_sub(&Lattice::phi_of_g(2));
    assert_eq!(alg.mul(&e1, &e2), e2);
    let (gx, hx) = (z(&[(0, 1)]), z(&[(1, -1)]));
    let us = |x: &GroupElement| alg.mul(&alg.u(x), &alg.s());
    let prod = alg.mul(&us(&gx), &us(&hx));
    let expected = alg.mul(&alg.u(&g.multiply(&gx, &g.phi(&hx))), &alg.s_pow(2));
    assert_eq!(prod, expected);
    // The product of the matrices agrees with the matrix of the product on the core.
    assert_eq!(mat(&prod), mat(&expected));
    for &j in w.core() {
        let k = w.element(j);
        let target = g.multiply(&gx, &g.phi(&g.multiply(&hx, &g.phi(k))));
        let col = mat(&prod).column(j).cloned().unwrap_or_default();
        assert_eq!(col.len(), 1);
        assert_eq!(w.element(*col.keys().next().unwrap()), &target);
    }
    let disjoint = alg.mul(&alg.proj(&Coset::new(&*g, &z(&[(0, 1)]), Lattice::phi_of_g(1))), &e1);
    assert!(disjoint.is_zero());
    let u = alg.u(&gx);
    assert_eq!(alg.mul(&alg.adjoint(&u), &u), alg.one());
}

#[test]
fn endomorphism_action_and_degree() {
    let g = shift();
    let alg = Algebra::new(&*g);
    let step = SemigroupElement::new(g.identity(), 1);
    assert_eq!(alg.act_alpha(&step, &alg.one()), alg.proj_sub(&Lattice::phi_of_g(1)));
    assert_eq!(alg.act_alpha(&step, &alg.proj_sub(&Lattice::phi_of_g(1))), alg.proj_sub(&Lattice::phi_of_g(2)));
    let x = z(&[(0, 3)]);
    let conj = alg.act_alpha(&SemigroupElement::new(x.clone(), 0), &alg.proj_sub(&Lattice::phi_of_g(1)));
    assert_eq!(conj, alg.proj(&Coset::new(&*g, &x, Lattice::phi_of_g(1))));

    let degree = |e: &AlgebraElement| alg.degree(e.terms.keys().next().unwrap());
    assert_eq!(degree(&alg.proj_sub(&Lattice::phi_of_g(2))), env_identity(&*g));
    assert_eq!(degree(&alg.u(&x)), EnvElement { g: x.clone(), level: 0, z: 0 });
    let a = z(&[(1, 2)]);
    let balanced = alg.mul_all(&[alg.s_star(), alg.u(&a), alg.u(&g.invert(&a)), alg.s()]);
    assert_eq!(degree(&balanced), env_identity(&*g));
}

#[test]
fn diagonal_norms() {
    let g = shift();
    let alg = Algebra::new(&*g);
    let e1 = alg.proj_sub(&Lattice::phi_of_g(1));
    let norm = |x: &AlgebraElement| alg.diagonal_norm(x).unwrap();
    assert_eq!(norm(&e1.scale(&Scalar::from_int(3))), norm(&alg.scalar(Scalar::from_int(3))));
    assert_eq!(norm(&alg.one().sub(&e1)), norm(&alg.one()));
    assert_eq!(norm(&AlgebraElement::zero()), norm(&alg.scalar(Scalar::zero())));
    assert_ne!(norm(&alg.one()), norm(&AlgebraElement::zero()));
}

#[test]
fn semigroup_examples() {
    let g = shift();
    let p = SemigroupElement::new(z(&[(0, 1)]), 1);
    assert_eq!(s_mul(&*g, &p, &SemigroupElement::new(z(&[(0, 2)]), 0)), SemigroupElement::new(z(&[(0, 1), (1, 2)]), 1));
    let s1 = SemigroupElement::new(g.identity(), 1);
    assert_eq!(s_mul(&*g, &s1, &s1), SemigroupElement::new(g.identity(), 2));

    let (gp, hq) = (z(&[(0, 2), (1, -1)]), z(&[(2, 4)]));
    let (p, q) = (SemigroupElement::new(gp.clone(), 1), SemigroupElement::new(hq.clone(), 2));
    let (cp, cq) = common_left_multiple(&*g, &p, &q);
    assert_eq!(cp, SemigroupElement::new(g.phi_pow(&g.invert(&gp), 2), 2));
    assert_eq!(cq, SemigroupElement::new(g.phi(&g.invert(&hq)), 1));
    assert_eq!(s_mul(&*g, &cp, &p), SemigroupElement::new(g.identity(), 3));
    assert_eq!(s_mul(&*g, &cq, &q), SemigroupElement::new(g.identity(), 3));
    let (a, b) =
        common_left_multiple(&*g, &SemigroupElement::unit(&*g), &SemigroupElement::new(g.identity(), 5));
    assert_eq!((a.n, b.n), (5, 0));
}

#[test]
fn enveloping_group_examples() {
    let g = shift();
    let hx = z(&[(0, 1), (3, 2)]);
    let lifted = EnvElement { g: g.phi(&hx), level: 1, z: 4 };
    assert_eq!(env_normalize(&*g, &lifted), EnvElement { g: hx.clone(), level: 0, z: 4 });
    let (p, q) = env_factor(&*g, &env_identity(&*g));
    assert_eq!((p.n, q.n), (0, 0));
    let x = EnvElement { g: z(&[(0, 1)]), level: 2, z: -1 };
    let (p, q) = env_factor(&*g, &x);
    assert_eq!((p.n, q.n), (2, 1));
    assert_eq!(env_mul(&*g, &env_inv(&*g, &embed(&*g, &p)), &embed(&*g, &q)), env_normalize(&*g, &x));
    let y = embed(&*g, &SemigroupElement::new(hx, 3));
    let (p, q) = env_factor(&*g, &y);
    assert_eq!(env_mul(&*g, &env_inv(&*g, &embed(&*g, &p)), &embed(&*g, &q)), y);
}

/// `x ∈ pS` by search for a right cofactor in a ball.
fn in_ideal_by_search(g: &dyn GroupInstance, p: &SemigroupElement, x: &SemigroupElement, ball: &[GroupElement]) -> bool {
    x.n >= p.n
        && ball.iter().any(|c| s_mul(g, p, &SemigroupElement::new(c.clone(), x.n - p.n)) == *x)
}

#[test]
fn ideal_examples() {
    let g = shift();
    let ball = g.ball(&BallSpec::boxed(3, 1));
    let search = g.ball(&BallSpec::boxed(4, 2));
    let p = |x: GroupElement, n| RightIdeal::principal(&*g, &SemigroupElement::new(x, n));
    assert_eq!(ideal_intersect(&*g, &p(g.identity(), 1), &p(g.identity(), 2)), p(g.identity(), 2));
    let a = SemigroupElement::new(z(&[(0, 1)]), 0);
    let b = SemigroupElement::new(g.identity(), 1);
    let meet = ideal_intersect(&*g, &RightIdeal::principal(&*g, &a), &RightIdeal::principal(&*g, &b));
    for n in 0..3 {
        for x in &ball {
            let s = SemigroupElement::new(x.clone(), n);
            let brute = in_ideal_by_search(&*g, &a, &s, &search) && in_ideal_by_search(&*g, &b, &s, &search);
            assert_eq!(meet.contains(&*g, &s), brute, "{s:?}");
        }
    }
    assert_eq!(ideal_preimage(&*g, &b, &RightIdeal::whole(&*g)), RightIdeal::whole(&*g));

    let alg = Algebra::new(&*g);
    assert_eq!(li_generators(&alg, &SemigroupElement::unit(&*g)), alg.one());
    assert_eq!(li_ideal_projection(&alg, &p(g.identity(), 1)), alg.proj_sub(&Lattice::phi_of_g(1)));
    assert!(li_ideal_projection(&alg, &RightIdeal::Empty).is_zero());
}

#[test]
fn window_sizes_and_representations() {
    let g = shift();
    assert_eq!(g.ball(&BallSpec::boxed(3, 2)).len(), 125);
    let t = instance_by_id("times2", &[]).unwrap();
    assert_eq!(t.ball(&BallSpec::l1(0, 8)).len(), 17);
    let f = instance_by_id("free-shift", &[]).unwrap();
    assert!(f.ball(&BallSpec::l1(2, 2)).contains(&f.identity()));

    let alg = Algebra::new(&*g);
    let w = Window::build(&*g, &WindowSpec { basis: BallSpec::l1(5, 4), core: BallSpec::l1(2, 2) }).unwrap();
    let one = represent(&alg, &alg.one(), &w).unwrap();
    let diag = represent(&alg, &alg.proj_sub(&Lattice::phi_of_g(1)), &w).unwrap();
    for &j in w.core() {
        let col = one.column(j).cloned().unwrap_or_default();
        assert_eq!(col.into_iter().collect::<Vec<_>>(), vec![(j, Scalar::one())]);
        let col = diag.column(j).cloned().unwrap_or_default();
        let inside = g.member(w.element(j), &Lattice::phi_of_g(1));
        assert_eq!(col.get(&j).cloned(), inside.then(Scalar::one));
        assert_eq!(col.len(), usize::from(inside));
    }
}

#[test]
fn certificate_examples() {
    let g = shift_gh();
    let alg = Algebra::new(&*g);
    let cfg = CertifyConfig::default();
    let e1 = alg.proj_sub(&Lattice::phi_of_g(1));

    let d = decompose_theta(&alg, &e1, &cfg).unwrap();
    assert_eq!(d.parts.len(), 1);
    assert_eq!(d.parts[0].lambda, Scalar::one());
    assert_eq!((d.parts[0].h.clone(), d.parts[0].m), (g.identity(), 1));

    let x = e1.scale(&Scalar::from_int(2)).add(&alg.one().sub(&e1));
    let mut lambdas: Vec<Scalar> = decompose_theta(&alg, &x, &cfg).unwrap().parts.into_iter().map(|p| p.lambda).collect();
    lambdas.sort_by(|a, b| a.re().cmp(b.re()));
    assert_eq!(lambdas, vec![Scalar::one(), Scalar::from_int(2)]);

    let gx = z(&[(0, 1)]);
    assert!(matches!(certify(&alg, &alg.u(&gx), &cfg), Err(Error::NotSelfAdjoint)));
    let hop = alg.u(&gx).add(&alg.u(&g.invert(&gx)));
    assert!(matches!(certify(&alg, &hop, &cfg), Err(Error::ThetaZero)));

    let hop = hop.scale(&Scalar::ratio(1, 2));
    let cert = certify(&alg, &e1.add(&hop), &cfg).unwrap();
    assert_eq!(cert.regions.len(), 1);
    assert_eq!(cert.criticals.len(), 2);
    assert!(cert.all_verified());
    let r = &cert.regions[0];
    for c in &cert.criticals {
        assert_ne!(c.value(&*g, &r.a), g.identity());
        assert!(!g.member(&c.value(&*g, &r.a), &Lattice::phi_of_g(r.b)));
    }
}

#[test]
fn critical_search_examples() {
    let g = shift();
    assert_eq!(find_a(&*g, &[], &z(&[(0, 1)]), 1, 10).unwrap(), z(&[(0, 1)]));
    let c = Critical { g: z(&[(0, 1)]), g_prime: g.identity(), l: 1, l_prime: 0 };
    let a = find_a(&*g, &[c.clone()], &g.identity(), 0, 100).unwrap();
    let v = g.multiply(&g.invert(&a), &g.multiply(&z(&[(0, 1)]), &g.phi(&a)));
    assert_ne!(v, g.identity());
    assert_eq!(c.value(&*g, &a), v);

    let deep = Critical { g: z(&[(2, 1)]), g_prime: g.identity(), l: 0, l_prime: 0 };
    assert_eq!(find_b(&*g, &[deep], &g.identity(), 0, 64).unwrap(), 3);
    assert_eq!(find_b(&*g, &[], &g.identity(), 4, 64).unwrap(), 4);
    let t = instance_by_id("times2", &[]).unwrap();
    let four = Critical { g: GroupElement::Int(4), g_prime: t.identity(), l: 0, l_prime: 0 };
    assert_eq!(find_b(&*t, &[four], &t.identity(), 0, 64).unwrap(), 3);
}

#[test]
fn ktheory_examples() {
    let zz = CoeffGroup::new(1, vec![]).unwrap();
    let a = vec![5];
    let single = FinSeq::single(&zz, a.clone());
    let expected = FinSeq::from_entries(&zz, [(0, vec![5]), (1, vec![-5])]);
    assert_eq!(one_minus_sigma(&zz, &single), expected);
    assert!(one_minus_sigma(&zz, &FinSeq::from_entries(&zz, [])).is_zero());
    let pair = FinSeq::from_entries(&zz, [(0, a.clone()), (1, a.clone())]);
    assert_eq!(one_minus_sigma(&zz, &pair), FinSeq::from_entries(&zz, [(0, vec![5]), (2, vec![-5])]));
    assert_eq!(cokernel_class(&zz, &expected), vec![0]);
    assert_eq!(cokernel_class(&zz, &FinSeq::from_entries(&zz, [(0, vec![2]), (1, vec![7])])), vec![9]);

    let tor = CoeffGroup::new(2, vec![3]).unwrap();
    let x = FinSeq::from_entries(&tor, [(0, vec![1, 0, 2]), (4, vec![0, -1, 2])]);
    assert_eq!(cokernel_class(&tor, &x), vec![1, -1, 1]);
    assert!(CoeffGroup::new(0, vec![]).unwrap().is_trivial());
}

#[test]
fn expression_examples() {
    let g = shift();
    let alg = Algebra::new(&*g);
    assert_eq!(parse_expr(&alg, "s* s").unwrap(), alg.one());
    let expected = alg.mul(&alg.u(&z(&[(0, 1), (1, 2)])), &alg.s_pow(2));
    assert_eq!(parse_expr(&alg, "u{0:1} s u{0:2} s").unwrap(), expected);
    assert_eq!(parse_expr(&alg, "e[phi^1] e[phi^2]").unwrap(), alg.proj_sub(&Lattice::phi_of_g(2)));
    assert!(matches!(parse_expr(&alg, "u{0:1} +"), Err(Error::Syntax { .. })));
}
