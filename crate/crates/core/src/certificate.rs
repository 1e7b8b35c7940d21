//! Witnesses for pure infiniteness: for a self-adjoint `x` with `θ(x) ≠ 0`, projections
//! `f_i = e_[a_i φ^{b_i}(G)]` and isometries `z_i = u_{a_i} s^{b_i}` with
//! (i) `f_i f_j = 0`, (ii) `z_i z_i* = f_i`, `z_i* z_i = 1`,
//! (iii) `‖Σ f_i θ(x) f_i‖ = ‖θ(x)‖` and (iv) `f_i x f_i = λ_i f_i`,
//! every one re-verified as an exact identity.

use serde::Serialize;

use crate::algebra::{Algebra, AlgebraElement, DiagonalNorm, Monomial};
use crate::error::{Error, Result};
use crate::group::{phi_depth, require_hypothesis, GroupElement, GroupInstance};
use crate::lattice::{
    orthogonalize_with_cap, refine_family, Coset, Lattice, VirtualIndicator, DEFAULT_TRANSVERSAL_CAP,
    DEFAULT_WITNESS_CAP,
};
use crate::scalar::Scalar;
use crate::window::{compose_on_core, Operator, Window};

#[derive(Clone, Copy, Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct CertifyConfig {
    pub witness_cap: usize,
    pub hypothesis_cap: u32,
    pub depth_cap: u32,
    pub window_points: usize,
}

impl Default for CertifyConfig {
    fn default() -> Self {
        CertifyConfig { witness_cap: DEFAULT_WITNESS_CAP, hypothesis_cap: 64, depth_cap: 256, window_points: 12 }
    }
}

/// A term `s*^l u_{g⁻¹} e_[J] u_{g'} s^{l'}` of `x − θ(x)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct Critical {
    pub g: GroupElement,
    pub g_prime: GroupElement,
    pub l: u32,
    pub l_prime: u32,
}

impl Critical {
    pub fn from_monomial(grp: &dyn GroupInstance, m: &Monomial) -> Self {
        Critical { g: grp.invert(&m.a), g_prime: m.b.clone(), l: m.n, l_prime: m.m }
    }

    /// `φ^{l'}(a⁻¹)·g'⁻¹·g·φ^l(a)`.
    pub fn value(&self, grp: &dyn GroupInstance, a: &GroupElement) -> GroupElement {
        let left = grp.phi_pow(&grp.invert(a), self.l_prime);
        let mid = grp.multiply(&grp.invert(&self.g_prime), &self.g);
        grp.multiply(&grp.multiply(&left, &mid), &grp.phi_pow(a, self.l))
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct AtomEntry {
    pub members: Vec<usize>,
    pub indicator: VirtualIndicator,
    pub witness: GroupElement,
    pub lambda: Scalar,
}

/// One spectral projection `p` of `θ(x)` with an inner coset `h·φ^m(G) ⊆ p`.
#[derive(Clone, Debug, Serialize)]
pub struct SpectralPart {
    pub lambda: Scalar,
    pub atoms: Vec<usize>,
    pub projection: VirtualIndicator,
    pub h: GroupElement,
    pub m: u32,
}

#[derive(Clone, Debug, Serialize)]
pub struct Decomposition {
    /// Common `s*ⁿ … sⁿ` depth of the diagonal part; canonical diagonal terms have `n = 0`.
    pub n: u32,
    pub hypothesis_k: u32,
    pub cosets: Vec<Coset>,
    pub coefficients: Vec<Scalar>,
    pub atoms: Vec<AtomEntry>,
    pub parts: Vec<SpectralPart>,
}

#[derive(Clone, Debug, Serialize)]
pub struct TranscriptEntry {
    pub identity: String,
    pub status: &'static str,
}

#[derive(Clone, Debug, Serialize)]
pub struct Region {
    pub lambda: Scalar,
    pub h: GroupElement,
    pub m: u32,
    pub a: GroupElement,
    pub b: u32,
    pub f: Monomial,
    pub z: Monomial,
}

#[derive(Clone, Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct Certificate {
    pub x: AlgebraElement,
    pub theta: AlgebraElement,
    pub decomposition: Decomposition,
    pub criticals: Vec<Critical>,
    pub regions: Vec<Region>,
    pub theta_norm: DiagonalNorm,
    pub compressed_norm: DiagonalNorm,
    pub transcript: Vec<TranscriptEntry>,
}

impl Certificate {
    pub fn all_verified(&self) -> bool {
        self.transcript.iter().all(|t| t.status == "verified")
    }
}

fn smallest_phi_inside(grp: &dyn GroupInstance, k: &Lattice, cap: u32) -> Result<u32> {
    (0..=cap)
        .find(|&m| grp.contains(&Lattice::phi_of_g(m), k))
        .ok_or_else(|| Error::HypothesisViolation(format!("no phi^m(G) with m <= {cap} inside {k:?}")))
}

/// Writes `θ(x)` over orthogonal atoms (after index refinement), groups them by exact
/// coefficient and finds `h_i φ^{m_i}(G)` under each nonzero spectral projection.
pub fn decompose_theta(alg: &Algebra<'_>, x: &AlgebraElement, cfg: &CertifyConfig) -> Result<Decomposition> {
    let grp = alg.group();
    if !alg.is_self_adjoint(x) {
        return Err(Error::NotSelfAdjoint);
    }
    let theta = alg.theta(x);
    if theta.is_zero() {
        return Err(Error::ThetaZero);
    }
    let k = require_hypothesis(grp, cfg.hypothesis_cap)?;
    let parts = alg.diagonal_parts(&theta)?;

    // Refine the subgroup family so pairwise indices are 1 or ∞, and split every coset
    // into cosets of its refined subgroup.
    let family: Vec<Lattice> = parts.iter().map(|(c, _)| c.sub.clone()).collect();
    let refined = refine_family(grp, &family)?;
    let mut cosets = Vec::new();
    let mut coefficients = Vec::new();
    for ((c, beta), sub) in parts.iter().zip(&refined) {
        for t in grp.transversal(&c.sub, sub, DEFAULT_TRANSVERSAL_CAP)? {
            cosets.push(Coset::new(grp, &grp.multiply(&c.rep, &t), sub.clone()));
            coefficients.push(beta.clone());
        }
    }

    let raw_atoms = orthogonalize_with_cap(grp, &cosets, cfg.witness_cap)?;
    let atoms: Vec<AtomEntry> = raw_atoms
        .into_iter()
        .map(|a| {
            let mut lambda = Scalar::zero();
            for &i in &a.members {
                lambda = &lambda + &coefficients[i];
            }
            AtomEntry { members: a.members, indicator: a.indicator, witness: a.witness, lambda }
        })
        .collect();

    let mut groups: Vec<(Scalar, Vec<usize>)> = Vec::new();
    for (i, a) in atoms.iter().enumerate() {
        if a.lambda.is_zero() {
            continue;
        }
        match groups.iter_mut().find(|(l, _)| *l == a.lambda) {
            Some((_, v)) => v.push(i),
            None => groups.push((a.lambda.clone(), vec![i])),
        }
    }
    if groups.is_empty() {
        return Err(Error::ThetaZero);
    }

    let mut spectral = Vec::new();
    for (lambda, idx) in groups {
        let mut projection = VirtualIndicator::default();
        for &i in &idx {
            projection.add_all(&atoms[i].indicator, 1);
        }
        let first = &atoms[idx[0]];
        let r = first.witness.clone();
        // r·K sits inside the atom once K is inside every subgroup cutting it out.
        let mut inner = Lattice::whole();
        for c in first.indicator.terms.keys() {
            inner = inner.meet(grp, &c.sub);
        }
        let m = smallest_phi_inside(grp, &inner, cfg.hypothesis_cap + max_depth(&inner))?;
        let h = grp.coset_rep(&r, &Lattice::phi_of_g(m));
        let inner_proj = alg.proj(&Coset::new(grp, &h, Lattice::phi_of_g(m)));
        let p = indicator_to_algebra(alg, &projection);
        if alg.mul(&inner_proj, &p) != inner_proj {
            return Err(Error::VerificationFailure(format!(
                "e[{}·phi^{m}(G)] is not below the projection for λ = {lambda}",
                h
            )));
        }
        spectral.push(SpectralPart { lambda, atoms: idx, projection, h, m });
    }
    Ok(Decomposition { n: 0, hypothesis_k: k, cosets, coefficients, atoms, parts: spectral })
}

fn max_depth(l: &Lattice) -> u32 {
    l.terms().iter().map(|t| t.n).max().unwrap_or(0)
}

pub fn indicator_to_algebra(alg: &Algebra<'_>, v: &VirtualIndicator) -> AlgebraElement {
    let mut out = AlgebraElement::zero();
    for (c, &k) in &v.terms {
        out = out.add(&alg.proj(c).scale(&Scalar::from_int(k)));
    }
    out
}

/// First `a ∈ h·φ^m(G)`, in enumeration order, with every critical value `≠ e`.
pub fn find_a(
    grp: &dyn GroupInstance,
    criticals: &[Critical],
    h: &GroupElement,
    m: u32,
    cap: usize,
) -> Result<GroupElement> {
    let sub = Lattice::phi_of_g(m);
    let e = grp.identity();
    for t in grp.enumerate().take(cap) {
        let a = grp.multiply(h, &grp.subgroup_element(&sub, &t));
        if criticals.iter().all(|c| c.value(grp, &a) != e) {
            return Ok(a);
        }
    }
    Err(Error::NotFound { bound: cap })
}

/// Smallest-style `b ≥ floor` with no critical value in `φ^b(G)`: one past the deepest
/// `φⁿ(G)` containing any critical value.
pub fn find_b(grp: &dyn GroupInstance, criticals: &[Critical], a: &GroupElement, floor: u32, cap: u32) -> Result<u32> {
    let mut b = floor;
    for c in criticals {
        let v = c.value(grp, a);
        let d = phi_depth(grp, &v, cap);
        if d >= cap {
            return Err(Error::HypothesisViolation(format!(
                "critical value {v} lies in phi^{cap}(G); the endomorphism does not look pure"
            )));
        }
        b = b.max(d + 1);
    }
    Ok(b)
}

pub fn certify(alg: &Algebra<'_>, x: &AlgebraElement, cfg: &CertifyConfig) -> Result<Certificate> {
    let grp = alg.group();
    let decomposition = decompose_theta(alg, x, cfg)?;
    let theta = alg.theta(x);
    let off = x.sub(&theta);
    let criticals: Vec<Critical> = off.terms.keys().map(|m| Critical::from_monomial(grp, m)).collect();

    let mut regions = Vec::new();
    for part in &decomposition.parts {
        let a = find_a(grp, &criticals, &part.h, part.m, cfg.witness_cap)?;
        let b = find_b(grp, &criticals, &a, part.m, cfg.depth_cap)?;
        let f = alg
            .proj(&Coset::new(grp, &a, Lattice::phi_of_g(b)))
            .terms
            .into_keys()
            .next()
            .ok_or_else(|| Error::VerificationFailure("f_i vanished".into()))?;
        let z = alg
            .mul(&alg.u(&a), &alg.s_pow(b))
            .terms
            .into_keys()
            .next()
            .ok_or_else(|| Error::VerificationFailure("z_i vanished".into()))?;
        regions.push(Region { lambda: part.lambda.clone(), h: part.h.clone(), m: part.m, a, b, f, z });
    }

    let mut transcript = Vec::new();
    let mut record = |identity: String, ok: bool| {
        transcript.push(TranscriptEntry { identity, status: if ok { "verified" } else { "failed" } });
        ok
    };
    let mono = |m: &Monomial| AlgebraElement::monomial(m.clone(), Scalar::one());
    let mut ok = true;

    for (i, ri) in regions.iter().enumerate() {
        for (j, rj) in regions.iter().enumerate().skip(i + 1) {
            ok &= record(format!("(i) f_{i} f_{j} = 0"), alg.mul(&mono(&ri.f), &mono(&rj.f)).is_zero());
        }
    }
    for (i, r) in regions.iter().enumerate() {
        let z = mono(&r.z);
        let zs = alg.adjoint(&z);
        ok &= record(format!("(ii) z_{i} z_{i}* = f_{i}"), alg.mul(&z, &zs) == mono(&r.f));
        ok &= record(format!("(ii) z_{i}* z_{i} = 1"), alg.mul(&zs, &z) == alg.one());
    }

    let mut compressed = AlgebraElement::zero();
    for r in &regions {
        let f = mono(&r.f);
        compressed = compressed.add(&alg.mul(&alg.mul(&f, &theta), &f));
    }
    let theta_norm = alg.diagonal_norm(&theta)?;
    let compressed_norm = alg.diagonal_norm(&compressed)?;
    ok &= record(
        format!("(iii) ||sum f_i theta(x) f_i||^2 = ||theta(x)||^2 = {}", crate::scalar::rational_to_string(&theta_norm.squared)),
        theta_norm == compressed_norm,
    );

    for (i, r) in regions.iter().enumerate() {
        let f = mono(&r.f);
        let fxf = alg.mul(&alg.mul(&f, x), &f);
        ok &= record(format!("(iv) f_{i} x f_{i} = ({}) f_{i}", r.lambda), fxf == f.scale(&r.lambda));
        let part = &decomposition.parts[i];
        let p = indicator_to_algebra(alg, &part.projection);
        ok &= record(format!("f_{i} <= p_{i}"), alg.mul(&f, &p) == f);
        ok &= record(
            format!("window: f_{i} x f_{i} = ({}) f_{i}", r.lambda),
            window_check(alg, x, r, cfg.window_points).unwrap_or(false),
        );
    }

    let cert = Certificate {
        x: x.clone(),
        theta,
        decomposition,
        criticals,
        regions,
        theta_norm,
        compressed_norm,
        transcript,
    };
    if !ok {
        let failed = cert.transcript.iter().find(|t| t.status != "verified").map(|t| t.identity.clone());
        return Err(Error::VerificationFailure(failed.unwrap_or_default()));
    }
    Ok(cert)
}

/// Replays every identity of a certificate from its witness data alone, returning the
/// identities that fail.
pub fn reverify(alg: &Algebra<'_>, cert: &Certificate) -> Vec<String> {
    let grp = alg.group();
    let mut fails = Vec::new();
    let x = &cert.x;
    let theta = alg.theta(x);
    let fs: Vec<AlgebraElement> = cert
        .regions
        .iter()
        .map(|r| alg.proj(&Coset::new(grp, &r.a, Lattice::phi_of_g(r.b))))
        .collect();
    let mut compressed = AlgebraElement::zero();
    for (i, r) in cert.regions.iter().enumerate() {
        let f = &fs[i];
        if *f != AlgebraElement::monomial(r.f.clone(), Scalar::one()) {
            fails.push(format!("f_{i} label"));
        }
        let z = alg.mul(&alg.u(&r.a), &alg.s_pow(r.b));
        let zs = alg.adjoint(&z);
        if alg.mul(&z, &zs) != *f {
            fails.push(format!("z_{i} z_{i}* = f_{i}"));
        }
        if alg.mul(&zs, &z) != alg.one() {
            fails.push(format!("z_{i}* z_{i} = 1"));
        }
        for (j, g) in fs.iter().enumerate().skip(i + 1) {
            if !alg.mul(f, g).is_zero() {
                fails.push(format!("f_{i} f_{j} = 0"));
            }
        }
        if alg.mul_all(&[f.clone(), x.clone(), f.clone()]) != f.scale(&r.lambda) {
            fails.push(format!("f_{i} x f_{i} = λ_{i} f_{i}"));
        }
        let p = indicator_to_algebra(alg, &cert.decomposition.parts[i].projection);
        if alg.mul(f, &p) != *f {
            fails.push(format!("f_{i} <= p_{i}"));
        }
        compressed = compressed.add(&alg.mul_all(&[f.clone(), theta.clone(), f.clone()]));
    }
    match (alg.diagonal_norm(&theta), alg.diagonal_norm(&compressed)) {
        (Ok(a), Ok(b)) if a == b => {}
        _ => fails.push("||sum f_i theta(x) f_i|| = ||theta(x)||".into()),
    }
    fails
}

/// `represent(f x f) = λ·represent(f)` on a window whose core mixes points of the region
/// `a·φ^b(G)` with points outside it.
fn window_check(alg: &Algebra<'_>, x: &AlgebraElement, r: &Region, points: usize) -> Result<bool> {
    let grp = alg.group();
    let sub = Lattice::phi_of_g(r.b);
    let mut core: Vec<GroupElement> = grp
        .enumerate()
        .take(points)
        .map(|t| grp.multiply(&r.a, &grp.subgroup_element(&sub, &t)))
        .collect();
    core.extend(grp.enumerate().take(points));
    core.sort();
    core.dedup();
    let f = Operator::Alg(AlgebraElement::monomial(r.f.clone(), Scalar::one()));
    let xo = Operator::Alg(x.clone());
    let w = Window::closure(grp, &core, &[&f, &xo, &f])?;
    let lhs = compose_on_core(alg, &w, &[&f, &xo, &f])?;
    let rhs = compose_on_core(alg, &w, &[&f])?.scale(&r.lambda);
    Ok(lhs == rhs)
}
