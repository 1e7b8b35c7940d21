//! Property suites over the provided instances, shared by the CLI and the acceptance tests.
//! Each suite returns a serializable report with a `passed` verdict.

use std::collections::HashSet;

use rand::Rng;
use serde::Serialize;

use crate::algebra::{Algebra, AlgebraElement};
use crate::certificate::{certify, reverify, CertifyConfig};
use crate::error::{Error, Result};
use crate::group::{
    instance_by_id, phi_power_inside_bases, purity_probe, BallSpec, GroupElement, GroupInstance, HypothesisReport,
    IndexClass, PurityReport,
};
use crate::lattice::{orthogonalize, refine_family, witness_outside, Coset, DEFAULT_WITNESS_CAP};
use crate::sample::{rng, Sampler};
use crate::semigroup::{
    common_left_multiple, embed, env_factor, env_identity, env_inv, env_mul, ideal_intersect, ideal_preimage,
    li_generators, li_ideal_projection, s_mul, RightIdeal, SemigroupElement,
};
use crate::window::{
    canonical_monomials, check_relations, compose_on_core, find_collisions, oracle_product_check, Collision,
    Operator, RelationConfig, RelationReport, Window,
};

pub const INSTANCES: [&str; 3] = ["shift-z", "free-shift", "times2"];

/// Keeps the first few failure messages and counts the rest.
#[derive(Clone, Debug, Default, Serialize)]
pub struct Tally {
    pub checks: usize,
    pub failures: usize,
    pub examples: Vec<String>,
}

impl Tally {
    const KEEP: usize = 10;

    pub fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.checks += 1;
        if !ok {
            self.failures += 1;
            if self.examples.len() < Self::KEEP {
                self.examples.push(what());
            }
        }
    }

    pub fn passed(&self) -> bool {
        self.failures == 0 && self.checks > 0
    }
}

/// Pools of small elements used by the samplers, per instance.
pub fn sample_pool(grp: &dyn GroupInstance) -> Vec<GroupElement> {
    match grp.id() {
        "times2" => grp.ball(&BallSpec::l1(0, 4)),
        _ => grp.ball(&BallSpec::l1(2, 2)),
    }
}

fn small_core(grp: &dyn GroupInstance) -> Vec<GroupElement> {
    match grp.id() {
        "times2" => grp.ball(&BallSpec::l1(0, 3)),
        _ => grp.ball(&BallSpec::l1(2, 1)),
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct RelationsSuite {
    pub instance: &'static str,
    pub config: RelationConfig,
    pub window_size: usize,
    pub reports: Vec<RelationReport>,
}

impl RelationsSuite {
    pub fn passed(&self) -> bool {
        self.reports.iter().all(RelationReport::passed)
    }
}

pub fn relations_suite(grp: &dyn GroupInstance, depth: u32) -> Result<RelationsSuite> {
    let config = RelationConfig::for_instance(grp.id(), depth)?;
    let alg = Algebra::new(grp);
    let w = Window::build(grp, &config.window)?;
    let sample = config.sample(grp);
    let reports = check_relations(&alg, &w, &sample)?;
    Ok(RelationsSuite { instance: grp.id(), config, window_size: w.len(), reports })
}

#[derive(Clone, Debug, Serialize)]
pub struct OracleSuite {
    pub instance: &'static str,
    pub pairs: usize,
    pub tally: Tally,
}

/// `represent(mul(x, y)) = represent(x)·represent(y)` on random monomial pairs.
pub fn oracle_suite(grp: &dyn GroupInstance, pairs: usize, seed: u64) -> Result<OracleSuite> {
    let alg = Algebra::new(grp);
    let s = Sampler::new(grp, sample_pool(grp), 2, 2);
    let core = small_core(grp);
    let mut r = rng(seed);
    let mut tally = Tally::default();
    for _ in 0..pairs {
        let x = AlgebraElement::monomial(s.monomial(&alg, &mut r), crate::scalar::Scalar::one());
        let y = AlgebraElement::monomial(s.monomial(&alg, &mut r), crate::scalar::Scalar::one());
        let diff = oracle_product_check(&alg, &core, &x, &y)?;
        tally.check(diff.is_none(), || {
            format!("{} · {}: {}", alg.render(&x), alg.render(&y), diff.unwrap_or_default())
        });
    }
    Ok(OracleSuite { instance: grp.id(), pairs, tally })
}

#[derive(Clone, Debug, Serialize)]
pub struct NormalFormSuite {
    pub instance: &'static str,
    pub monomials: usize,
    pub domain: usize,
    pub collisions: Vec<Collision>,
}

impl NormalFormSuite {
    pub fn passed(&self) -> bool {
        self.collisions.is_empty() && self.monomials > 0
    }
}

/// Every canonical monomial with `n, m ≤ 2` and `a, b` of size at most two, compared as
/// partial maps on a ball.
pub fn normal_form_suite(grp: &dyn GroupInstance) -> Result<NormalFormSuite> {
    let alg = Algebra::new(grp);
    let (elements, domain) = match grp.id() {
        "times2" => (grp.ball(&BallSpec::l1(0, 2)), grp.ball(&BallSpec::l1(0, 40))),
        "free-shift" => (grp.ball(&BallSpec::l1(2, 2)), grp.ball(&BallSpec::l1(3, 5))),
        _ => (grp.ball(&BallSpec::l1(2, 2)), grp.ball(&BallSpec::boxed(4, 4))),
    };
    let mut lattices = Vec::new();
    for n in 0..=2 {
        for b in 0..=grp.bases().len() {
            lattices.push(crate::lattice::Lattice::base(n, crate::lattice::BaseId(b as u8)));
        }
    }
    let lattices: Vec<_> =
        lattices.into_iter().map(|l| crate::lattice::Lattice::canonical(grp, l.terms().to_vec())).collect();
    let monos = canonical_monomials(&alg, 2, &elements, &lattices);
    let collisions = find_collisions(&alg, &monos, &domain);
    Ok(NormalFormSuite { instance: grp.id(), monomials: monos.len(), domain: domain.len(), collisions })
}

#[derive(Clone, Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct ThetaSuite {
    pub instance: &'static str,
    pub samples: usize,
    pub idempotence: Tally,
    pub unitality: Tally,
    pub adjoint: Tally,
    pub bimodule: Tally,
    pub faithfulness: Tally,
    /// Samples whose window representation was nonzero (the faithfulness premise).
    pub nonzero_samples: usize,
}

impl ThetaSuite {
    pub fn passed(&self) -> bool {
        [&self.idempotence, &self.unitality, &self.adjoint, &self.bimodule, &self.faithfulness]
            .iter()
            .all(|t| t.passed())
    }
}

pub fn theta_suite(grp: &dyn GroupInstance, samples: usize, seed: u64) -> Result<ThetaSuite> {
    let alg = Algebra::new(grp);
    let s = Sampler::new(grp, sample_pool(grp), 2, 2);
    let core = small_core(grp);
    let mut r = rng(seed);
    let mut rep = ThetaSuite {
        instance: grp.id(),
        samples,
        idempotence: Tally::default(),
        unitality: Tally::default(),
        adjoint: Tally::default(),
        bimodule: Tally::default(),
        faithfulness: Tally::default(),
        nonzero_samples: 0,
    };
    for _ in 0..samples {
        let terms = r.gen_range(1..=3);
        let x = s.element_sum(&alg, &mut r, terms);
        let th = alg.theta(&x);
        let show = || alg.render(&x);
        rep.idempotence.check(alg.theta(&th) == th, show);
        let c = s.scalar(&mut r);
        let shifted = alg.theta(&x.add(&alg.scalar(c.clone())));
        rep.unitality.check(shifted == th.add(&alg.scalar(c)), show);
        rep.adjoint.check(alg.theta(&alg.adjoint(&x)) == alg.adjoint(&th), show);

        let d1 = alg.proj(&s.coset(&mut r)).scale(&s.scalar(&mut r));
        let d2 = alg.proj(&s.coset(&mut r)).add(&alg.proj(&s.coset(&mut r)));
        let lhs = alg.theta(&alg.mul_all(&[d1.clone(), x.clone(), d2.clone()]));
        let rhs = alg.mul_all(&[d1, th.clone(), d2]);
        rep.bimodule.check(lhs == rhs, show);

        let op = Operator::Alg(x.clone());
        let w = Window::closure(grp, &core, &[&op])?;
        if !compose_on_core(&alg, &w, &[&op])?.is_zero() {
            rep.nonzero_samples += 1;
            let xx = alg.theta(&alg.mul(&alg.adjoint(&x), &x));
            let norm = alg.diagonal_norm(&xx)?;
            rep.faithfulness.check(!xx.is_zero() && norm.squared > num_rational::BigRational::default(), show);
        }
    }
    rep.unitality.check(alg.theta(&alg.one()) == alg.one(), || "theta(1)".into());
    Ok(rep)
}

#[derive(Clone, Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct OreSuite {
    pub instance: &'static str,
    pub samples: usize,
    pub cancellativity: Tally,
    pub common_left_multiple: Tally,
    pub env_factor: Tally,
    pub embed_homomorphism: Tally,
    pub group_laws: Tally,
}

impl OreSuite {
    pub fn passed(&self) -> bool {
        [&self.cancellativity, &self.common_left_multiple, &self.env_factor, &self.embed_homomorphism, &self.group_laws]
            .iter()
            .all(|t| t.passed())
    }
}

pub fn ore_suite(grp: &dyn GroupInstance, samples: usize, seed: u64) -> OreSuite {
    let s = Sampler::new(grp, sample_pool(grp), 3, 0);
    let mut r = rng(seed);
    let mut rep = OreSuite {
        instance: grp.id(),
        samples,
        cancellativity: Tally::default(),
        common_left_multiple: Tally::default(),
        env_factor: Tally::default(),
        embed_homomorphism: Tally::default(),
        group_laws: Tally::default(),
    };
    let e = env_identity(grp);
    for _ in 0..samples {
        let (p, q, t) = (s.semigroup(&mut r), s.semigroup(&mut r), s.semigroup(&mut r));
        let show = || format!("p={p:?} q={q:?} t={t:?}");
        if q != t {
            rep.cancellativity.check(s_mul(grp, &p, &q) != s_mul(grp, &p, &t), show);
            rep.cancellativity.check(s_mul(grp, &q, &p) != s_mul(grp, &t, &p), show);
        }
        let (a, b) = common_left_multiple(grp, &p, &q);
        rep.common_left_multiple.check(s_mul(grp, &a, &p) == s_mul(grp, &b, &q), show);

        let (ep, eq, et) = (embed(grp, &p), embed(grp, &q), embed(grp, &t));
        rep.embed_homomorphism.check(embed(grp, &s_mul(grp, &p, &q)) == env_mul(grp, &ep, &eq), show);

        // A general point of the enveloping group p⁻¹q t⁻¹.
        let x = env_mul(grp, &env_mul(grp, &env_inv(grp, &ep), &eq), &env_inv(grp, &et));
        let (f1, f2) = env_factor(grp, &x);
        let back = env_mul(grp, &env_inv(grp, &embed(grp, &f1)), &embed(grp, &f2));
        rep.env_factor.check(back == x, || format!("{x:?} -> {f1:?}, {f2:?}"));

        rep.group_laws.check(env_mul(grp, &x, &env_inv(grp, &x)) == e, show);
        rep.group_laws.check(env_mul(grp, &env_inv(grp, &x), &x) == e, show);
        let assoc_l = env_mul(grp, &env_mul(grp, &x, &ep), &eq);
        let assoc_r = env_mul(grp, &x, &env_mul(grp, &ep, &eq));
        rep.group_laws.check(assoc_l == assoc_r, show);
    }
    rep
}

#[derive(Clone, Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct IdealsSuite {
    pub instance: &'static str,
    pub depth: u32,
    pub generators: usize,
    pub ideals: usize,
    pub sample: usize,
    pub intersections: Tally,
    pub preimages: Tally,
    pub projections: Tally,
}

impl IdealsSuite {
    pub fn passed(&self) -> bool {
        self.intersections.passed() && self.preimages.passed() && self.projections.passed()
    }
}

/// Ideal membership by search: `y ∈ (h,m)S` iff `y = (h,m)·(c,k)` for some `c` in `search`.
/// The search ball is sized so that the answer is exact for targets in the suite's target ball.
struct BruteIdeal {
    ideal: RightIdeal,
    m: u32,
    heads: HashSet<GroupElement>,
}

impl BruteIdeal {
    fn new(grp: &dyn GroupInstance, ideal: RightIdeal, search: &[GroupElement]) -> Self {
        match &ideal {
            RightIdeal::Empty => BruteIdeal { ideal, m: 0, heads: HashSet::new() },
            RightIdeal::Principal(p) => {
                let heads = search.iter().map(|c| s_mul(grp, p, &SemigroupElement::new(c.clone(), 0)).g).collect();
                BruteIdeal { m: p.n, ideal, heads }
            }
        }
    }

    fn contains(&self, y: &SemigroupElement) -> bool {
        !matches!(self.ideal, RightIdeal::Empty) && y.n >= self.m && self.heads.contains(&y.g)
    }
}

/// Closed forms of `I ∩ J` and `p⁻¹I` against membership found by search, for all
/// generators and principal ideals with powers up to `depth`.
pub fn ideals_suite(grp: &dyn GroupInstance, depth: u32) -> IdealsSuite {
    let alg = Algebra::new(grp);
    // Targets `p·y` stay inside `target`; every solution `c = φ^{-m}(h⁻¹t)` of a target
    // lies in `search`.
    let (gens, sample_ball, target, search) = match grp.id() {
        "times2" => (BallSpec::l1(0, 3), BallSpec::l1(0, 6), BallSpec::l1(0, 51), BallSpec::l1(0, 54)),
        "free-shift" => (BallSpec::l1(2, 1), BallSpec::l1(3, 2), BallSpec::l1(3 + depth, 3), BallSpec::l1(3 + depth, 4)),
        _ => (BallSpec::l1(2, 1), BallSpec::l1(3, 2), BallSpec::l1(3 + depth, 3), BallSpec::l1(3 + depth, 4)),
    };
    let gen_elems = grp.ball(&gens);
    let target: HashSet<GroupElement> = grp.ball(&target).into_iter().collect();
    let search = grp.ball(&search);
    let mut generators = Vec::new();
    for g in &gen_elems {
        for n in 0..=depth {
            generators.push(SemigroupElement::new(g.clone(), n));
        }
    }
    let mut ideals: Vec<RightIdeal> = vec![RightIdeal::Empty];
    let mut seen = HashSet::new();
    for p in &generators {
        let i = RightIdeal::principal(grp, p);
        if seen.insert(i.clone()) {
            ideals.push(i);
        }
    }
    let brute: Vec<BruteIdeal> = ideals.iter().map(|i| BruteIdeal::new(grp, i.clone(), &search)).collect();
    let mut sample = Vec::new();
    for g in grp.ball(&sample_ball) {
        for n in 0..=depth + 2 {
            sample.push(SemigroupElement::new(g.clone(), n));
        }
    }
    let mut rep = IdealsSuite {
        instance: grp.id(),
        depth,
        generators: generators.len(),
        ideals: ideals.len(),
        sample: sample.len(),
        intersections: Tally::default(),
        preimages: Tally::default(),
        projections: Tally::default(),
    };
    for (i, bi) in ideals.iter().zip(&brute) {
        for (j, bj) in ideals.iter().zip(&brute) {
            let meet = ideal_intersect(grp, i, j);
            let ok = sample.iter().all(|y| meet.contains(grp, y) == (bi.contains(y) && bj.contains(y)));
            rep.intersections.check(ok, || format!("{i:?} ∩ {j:?} = {meet:?}"));
            let lhs = li_ideal_projection(&alg, &meet);
            let rhs = alg.mul(&li_ideal_projection(&alg, i), &li_ideal_projection(&alg, j));
            rep.projections.check(lhs == rhs, || format!("e[{i:?}] e[{j:?}]"));
        }
        for p in &generators {
            let pre = ideal_preimage(grp, p, i);
            let ok = sample.iter().all(|y| {
                let t = s_mul(grp, p, y);
                assert!(target.contains(&t.g), "target {} outside the search range", t.g);
                pre.contains(grp, y) == bi.contains(&t)
            });
            rep.preimages.check(ok, || format!("{p:?}^-1 {i:?} = {pre:?}"));
            let v = li_generators(&alg, p);
            let lhs = li_ideal_projection(&alg, &pre);
            let rhs = alg.mul_all(&[alg.adjoint(&v), li_ideal_projection(&alg, i), v]);
            rep.projections.check(lhs == rhs, || format!("v*{p:?} e[{i:?}] v"));
        }
    }
    rep
}

#[derive(Clone, Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct LatticeSuite {
    pub instance: &'static str,
    pub samples: usize,
    pub orthogonality: Tally,
    pub union: Tally,
    pub witnesses: Tally,
    pub refinement: Tally,
    pub covering: Tally,
}

impl LatticeSuite {
    pub fn passed(&self) -> bool {
        [&self.orthogonality, &self.union, &self.witnesses, &self.refinement, &self.covering]
            .iter()
            .all(|t| t.passed())
    }
}

pub fn lattice_suite(grp: &dyn GroupInstance, samples: usize, seed: u64) -> Result<LatticeSuite> {
    let s = Sampler::new(grp, sample_pool(grp), 2, 3);
    let points = match grp.id() {
        "times2" => grp.ball(&BallSpec::l1(0, 40)),
        "free-shift" => grp.ball(&BallSpec::l1(3, 3)),
        _ => grp.ball(&BallSpec::boxed(4, 2)),
    };
    let mut r = rng(seed);
    let mut rep = LatticeSuite {
        instance: grp.id(),
        samples,
        orthogonality: Tally::default(),
        union: Tally::default(),
        witnesses: Tally::default(),
        refinement: Tally::default(),
        covering: Tally::default(),
    };
    for _ in 0..samples {
        let count = r.gen_range(1..=4);
        let family: Vec<Coset> = (0..count).map(|_| s.coset(&mut r)).collect();
        let show = || family.iter().map(|c| c.display(grp)).collect::<Vec<_>>().join(", ");
        let atoms = orthogonalize(grp, &family)?;
        let mut orth = true;
        let mut union = true;
        for x in &points {
            let vals: Vec<i64> = atoms.iter().map(|a| a.indicator.eval(grp, x)).collect();
            let total: i64 = vals.iter().sum();
            orth &= vals.iter().all(|&v| v == 0 || v == 1) && total <= 1;
            union &= total == i64::from(family.iter().any(|c| c.contains(grp, x)));
            for (a, &v) in atoms.iter().zip(&vals) {
                // Indicator 1 exactly on the points lying in the atom's members and no others.
                let inside = (0..family.len()).all(|j| a.members.contains(&j) == family[j].contains(grp, x));
                orth &= (v == 1) == inside;
            }
        }
        rep.orthogonality.check(orth, show);
        rep.union.check(union, show);
        for a in &atoms {
            let ok = a.indicator.eval(grp, &a.witness) == 1
                && (0..family.len()).all(|j| a.members.contains(&j) == family[j].contains(grp, &a.witness));
            rep.witnesses.check(ok, || format!("{} in {}", a.witness, show()));
        }

        let lattices: Vec<_> = family.iter().map(|c| c.sub.clone()).collect();
        let refined = refine_family(grp, &lattices)?;
        let mut ok = true;
        for (k, k2) in lattices.iter().zip(&refined) {
            ok &= grp.contains(k2, k) && !matches!(grp.index_class(k, k2)?, IndexClass::Infinite);
        }
        for a in &refined {
            for b in &refined {
                ok &= grp.index_class(a, b)?.is_one_or_infinite();
            }
        }
        rep.refinement.check(ok, show);

        // Covering lemma: excluded subcosets of infinite index never cover the domain.
        let d = s.coset(&mut r);
        let excluded: Vec<Coset> = (0..r.gen_range(1..=4))
            .filter_map(|_| s.coset(&mut r).intersect(grp, &d))
            .filter(|c| matches!(grp.index_class(&d.sub, &c.sub), Ok(IndexClass::Infinite)))
            .collect();
        match witness_outside(grp, &d, &excluded, DEFAULT_WITNESS_CAP) {
            Ok(w) => rep.covering.check(d.contains(grp, &w) && !excluded.iter().any(|c| c.contains(grp, &w)), || {
                format!("{w} for {}", d.display(grp))
            }),
            Err(e) => rep.covering.check(false, || format!("{}: {e}", d.display(grp))),
        }
    }
    Ok(rep)
}

#[derive(Clone, Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct CertificateRun {
    pub bases: Vec<String>,
    pub certified: usize,
    pub theta_zero_skipped: usize,
    pub regions: usize,
    pub criticals: usize,
    pub transcript_checks: usize,
    pub reverify: Tally,
    pub errors: Vec<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct CertificateSuite {
    pub instance: &'static str,
    pub per_family: usize,
    pub runs: Vec<CertificateRun>,
}

impl CertificateSuite {
    pub fn passed(&self) -> bool {
        self.runs.iter().all(|r| r.errors.is_empty() && r.reverify.passed() && r.certified >= self.per_family)
    }
}

/// Certifies random self-adjoint elements on shift-z for `B = {G}` and `B = {G, H}`.
pub fn certificate_suite(per_family: usize, seed: u64, cfg: &CertifyConfig) -> Result<CertificateSuite> {
    let mut runs = Vec::new();
    for bases in [vec!["G"], vec!["G", "H"]] {
        let grp = instance_by_id("shift-z", &bases)?;
        let alg = Algebra::new(&*grp);
        let s = Sampler::new(&*grp, sample_pool(&*grp), 2, 2);
        let mut r = rng(seed);
        let mut run = CertificateRun {
            bases: bases.iter().map(|b| b.to_string()).collect(),
            certified: 0,
            theta_zero_skipped: 0,
            regions: 0,
            criticals: 0,
            transcript_checks: 0,
            reverify: Tally::default(),
            errors: Vec::new(),
        };
        let mut attempts = 0;
        while run.certified < per_family && attempts < 20 * per_family {
            attempts += 1;
            let terms = r.gen_range(1..=3);
            let x = s.self_adjoint(&alg, &mut r, terms);
            match certify(&alg, &x, cfg) {
                Ok(c) => {
                    run.certified += 1;
                    run.regions += c.regions.len();
                    run.criticals += c.criticals.len();
                    run.transcript_checks += c.transcript.len();
                    let fails = reverify(&alg, &c);
                    run.reverify.check(fails.is_empty(), || format!("{}: {}", alg.render(&x), fails.join("; ")));
                }
                Err(Error::ThetaZero) => run.theta_zero_skipped += 1,
                Err(e) => run.errors.push(format!("{}: {e}", alg.render(&x))),
            }
        }
        runs.push(run);
    }
    Ok(CertificateSuite { instance: "shift-z", per_family, runs })
}

#[derive(Clone, Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct PuritySuite {
    pub probes: Vec<PurityReport>,
    pub hypothesis_good: HypothesisReport,
    pub hypothesis_bad: HypothesisReport,
    pub bad_fixture_error: Option<String>,
}

impl PuritySuite {
    pub fn passed(&self) -> bool {
        self.probes.iter().all(PurityReport::passed)
            && self.hypothesis_good.k == Some(1)
            && self.hypothesis_bad.k.is_none()
            && self.bad_fixture_error.is_some()
    }
}

pub fn purity_suite(depth: u32, cap: u32) -> Result<PuritySuite> {
    let mut probes = Vec::new();
    for (id, ball) in [("shift-z", BallSpec::boxed(3, 2)), ("times2", BallSpec::l1(0, 60))] {
        let grp = instance_by_id(id, &[])?;
        probes.push(purity_probe(&*grp, depth, &ball));
    }
    let good = instance_by_id("shift-z", &["G", "H"])?;
    let bad = instance_by_id("shift-z", &["G", "Even"])?;
    let bad_alg = Algebra::new(&*bad);
    let bad_fixture_error = match certify(&bad_alg, &bad_alg.one(), &CertifyConfig { hypothesis_cap: cap, ..Default::default() }) {
        Err(e @ Error::HypothesisViolation(_)) => Some(e.to_string()),
        _ => None,
    };
    Ok(PuritySuite {
        probes,
        hypothesis_good: phi_power_inside_bases(&*good, cap),
        hypothesis_bad: phi_power_inside_bases(&*bad, cap),
        bad_fixture_error,
    })
}
