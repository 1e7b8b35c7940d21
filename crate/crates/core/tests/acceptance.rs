//! The ten acceptance criteria, each run at full size with exact arithmetic. Prints one
//! `PASS`/`FAIL` line per criterion and fails if any criterion fails.

use std::time::{Duration, Instant};

use endostar::certificate::CertifyConfig;
use endostar::group::instance_by_id;
use endostar::ktheory::{six_term_summary, CoeffGroup};
use endostar::suites::{
    certificate_suite, ideals_suite, lattice_suite, normal_form_suite, ore_suite, oracle_suite, purity_suite,
    relations_suite, theta_suite, INSTANCES,
};

const SEED: u64 = 20_240_917;

struct Outcome {
    ok: bool,
    detail: String,
}

fn run(id: u32, name: &str, limit: Duration, f: impl FnOnce() -> Outcome) -> bool {
    let start = Instant::now();
    let out = f();
    let took = start.elapsed();
    let in_time = took <= limit;
    let ok = out.ok && in_time;
    println!(
        "[{}] criterion {id:>2} {name}: {} ({:.2}s, limit {}s)",
        if ok { "PASS" } else { "FAIL" },
        out.detail,
        took.as_secs_f64(),
        limit.as_secs()
    );
    ok
}

fn relation_suite() -> Outcome {
    let mut ok = true;
    let mut parts = Vec::new();
    for id in INSTANCES {
        let g = instance_by_id(id, &[]).unwrap();
        let start = Instant::now();
        let rep = relations_suite(&*g, 2).unwrap();
        let min = rep.reports.iter().map(|r| r.sample_count).min().unwrap_or(0);
        let fails: usize = rep.reports.iter().map(|r| r.failures.len()).sum();
        ok &= rep.passed() && min >= 500 && start.elapsed() < Duration::from_secs(60);
        parts.push(format!("{id}: {} relations, min {min} instances, {fails} failures", rep.reports.len()));
    }
    Outcome { ok, detail: parts.join("; ") }
}

fn oracle() -> Outcome {
    let mut ok = true;
    let mut parts = Vec::new();
    for id in INSTANCES {
        let g = instance_by_id(id, &[]).unwrap();
        let start = Instant::now();
        let rep = oracle_suite(&*g, 1000, SEED).unwrap();
        ok &= rep.tally.passed() && rep.tally.checks >= 1000 && start.elapsed() < Duration::from_secs(60);
        parts.push(format!("{id}: {}/{} pairs agree", rep.tally.checks - rep.tally.failures, rep.tally.checks));
    }
    Outcome { ok, detail: parts.join("; ") }
}

fn normal_forms() -> Outcome {
    let mut ok = true;
    let mut parts = Vec::new();
    for (id, bases) in [("shift-z", &["G", "H"][..]), ("free-shift", &[][..]), ("times2", &[][..])] {
        let g = instance_by_id(id, bases).unwrap();
        let rep = normal_form_suite(&*g).unwrap();
        ok &= rep.passed();
        parts.push(format!("{id}: {} monomials, {} collisions", rep.monomials, rep.collisions.len()));
    }
    Outcome { ok, detail: parts.join("; ") }
}

fn theta_laws() -> Outcome {
    let mut ok = true;
    let mut parts = Vec::new();
    for id in INSTANCES {
        let g = instance_by_id(id, &[]).unwrap();
        let rep = theta_suite(&*g, 1000, SEED).unwrap();
        ok &= rep.passed() && rep.samples >= 1000;
        let fails = rep.idempotence.failures
            + rep.unitality.failures
            + rep.adjoint.failures
            + rep.bimodule.failures
            + rep.faithfulness.failures;
        parts.push(format!("{id}: {} samples ({} nonzero), {fails} failures", rep.samples, rep.nonzero_samples));
    }
    Outcome { ok, detail: parts.join("; ") }
}

fn ore() -> Outcome {
    let mut ok = true;
    let mut parts = Vec::new();
    for id in INSTANCES {
        let g = instance_by_id(id, &[]).unwrap();
        let rep = ore_suite(&*g, 1000, SEED);
        ok &= rep.passed();
        parts.push(format!("{id}: {} samples ok={}", rep.samples, rep.passed()));
    }
    Outcome { ok, detail: parts.join("; ") }
}

fn ideals() -> Outcome {
    let mut ok = true;
    let mut parts = Vec::new();
    for id in INSTANCES {
        let g = instance_by_id(id, &[]).unwrap();
        let rep = ideals_suite(&*g, 3);
        ok &= rep.passed();
        parts.push(format!(
            "{id}: {} ideal pairs, {} preimages, {} mismatches",
            rep.intersections.checks,
            rep.preimages.checks,
            rep.intersections.failures + rep.preimages.failures + rep.projections.failures
        ));
    }
    Outcome { ok, detail: parts.join("; ") }
}

fn lattice() -> Outcome {
    let mut ok = true;
    let mut parts = Vec::new();
    for (id, bases) in [("shift-z", &["G", "H"][..]), ("free-shift", &[][..]), ("times2", &[][..])] {
        let g = instance_by_id(id, bases).unwrap();
        let rep = lattice_suite(&*g, 300, SEED).unwrap();
        ok &= rep.passed();
        parts.push(format!("{id}: {} families ok={}", rep.samples, rep.passed()));
    }
    Outcome { ok, detail: parts.join("; ") }
}

fn certificates() -> Outcome {
    let rep = certificate_suite(25, SEED, &CertifyConfig::default()).unwrap();
    let parts: Vec<String> = rep
        .runs
        .iter()
        .map(|r| {
            format!(
                "B={{{}}}: {} certified, {} regions, {} criticals, {} errors",
                r.bases.join(","),
                r.certified,
                r.regions,
                r.criticals,
                r.errors.len()
            )
        })
        .collect();
    Outcome { ok: rep.passed(), detail: parts.join("; ") }
}

fn ktheory() -> Outcome {
    let mut ok = true;
    let mut parts = Vec::new();
    for grp in [
        CoeffGroup::new(1, vec![]).unwrap(),
        CoeffGroup::new(2, vec![3]).unwrap(),
        CoeffGroup::new(0, vec![]).unwrap(),
    ] {
        let rep = six_term_summary(&grp, 10_000, SEED);
        ok &= rep.passed();
        parts.push(format!("{} ({} samples ok={})", rep.cokernel, rep.probe.samples, rep.passed()));
    }
    Outcome { ok, detail: parts.join("; ") }
}

fn purity() -> Outcome {
    let rep = purity_suite(8, 64).unwrap();
    let probes: Vec<String> =
        rep.probes.iter().map(|p| format!("{}: {} violators", p.instance, p.violators.len())).collect();
    Outcome {
        ok: rep.passed(),
        detail: format!(
            "{}; B={{G,H}} k={:?}; B={{G,Even}} k={:?} ({})",
            probes.join(", "),
            rep.hypothesis_good.k,
            rep.hypothesis_bad.k,
            rep.bad_fixture_error.as_deref().unwrap_or("not reported")
        ),
    }
}

#[test]
fn acceptance_criteria() {
    let secs = Duration::from_secs;
    let results = [
        run(1, "relation suite", secs(180), relation_suite),
        run(2, "oracle equivalence", secs(180), oracle),
        run(3, "normal-form soundness", secs(120), normal_forms),
        run(4, "conditional expectation laws", secs(120), theta_laws),
        run(5, "Ore structure", secs(10), ore),
        run(6, "constructible ideals", secs(120), ideals),
        run(7, "lattice machinery", secs(30), lattice),
        run(8, "certificate end-to-end", secs(120), certificates),
        run(9, "K-theory shift", secs(5), ktheory),
        run(10, "purity probes", secs(30), purity),
    ];
    let passed = results.iter().filter(|&&ok| ok).count();
    println!("acceptance: {passed}/{} criteria passed", results.len());
    assert!(results.iter().all(|&ok| ok));
}
