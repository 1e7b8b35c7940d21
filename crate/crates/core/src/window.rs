//! The regular representation on finite windows of `l²(G)`.
//!
//! Every generator maps basis vectors to basis vectors (or to zero), so an operator is
//! computed exactly on a column by following points. A window is a finite basis plus a
//! core of columns; evaluating a chain of operators on a core column fails loudly if any
//! intermediate point leaves the basis, so results are never silently truncated.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use serde::Serialize;

use crate::algebra::{Algebra, AlgebraElement, Monomial};
use crate::error::{Error, Result};
use crate::group::{BallSpec, GroupElement, GroupInstance};
use crate::lattice::{union_indicator, Coset, Lattice, VirtualIndicator};
use crate::scalar::Scalar;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct WindowSpec {
    pub basis: BallSpec,
    pub core: BallSpec,
}

#[derive(Clone, Debug)]
pub struct Window {
    basis: Vec<GroupElement>,
    index: HashMap<GroupElement, usize>,
    core: Vec<usize>,
}

impl Window {
    pub fn build(g: &dyn GroupInstance, spec: &WindowSpec) -> Result<Window> {
        let basis = g.ball(&spec.basis);
        let core = g.ball(&spec.core);
        Window::from_parts(basis, &core)
    }

    /// A window whose core elements must already lie in `basis`.
    pub fn from_parts(basis: Vec<GroupElement>, core: &[GroupElement]) -> Result<Window> {
        let mut seen = BTreeSet::new();
        let basis: Vec<GroupElement> = basis.into_iter().filter(|x| seen.insert(x.clone())).collect();
        let index: HashMap<GroupElement, usize> = basis.iter().cloned().enumerate().map(|(i, x)| (x, i)).collect();
        let mut core_idx = Vec::with_capacity(core.len());
        for x in core {
            match index.get(x) {
                Some(&i) => core_idx.push(i),
                None => return Err(Error::ConfigTooSmall(format!("core element {x} is outside the basis"))),
            }
        }
        core_idx.sort_unstable();
        core_idx.dedup();
        if core_idx.is_empty() {
            return Err(Error::ConfigTooSmall("empty core".into()));
        }
        Ok(Window { basis, index, core: core_idx })
    }

    /// The smallest window containing `core` on which the operator chain (applied right
    /// to left) never leaves the basis.
    pub fn closure(g: &dyn GroupInstance, core: &[GroupElement], chain: &[&Operator]) -> Result<Window> {
        let alg = Algebra::new(g);
        let mut basis: Vec<GroupElement> = core.to_vec();
        let mut seen: BTreeSet<GroupElement> = core.iter().cloned().collect();
        let mut frontier: BTreeSet<GroupElement> = seen.clone();
        for op in chain.iter().rev() {
            let mut next = BTreeSet::new();
            for x in &frontier {
                for (y, _) in op.apply(&alg, x) {
                    next.insert(y);
                }
            }
            for y in &next {
                if seen.insert(y.clone()) {
                    basis.push(y.clone());
                }
            }
            frontier = next;
        }
        Window::from_parts(basis, core)
    }

    pub fn len(&self) -> usize {
        self.basis.len()
    }

    pub fn is_empty(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn basis(&self) -> &[GroupElement] {
        &self.basis
    }

    pub fn core(&self) -> &[usize] {
        &self.core
    }

    pub fn core_elements(&self) -> impl Iterator<Item = &GroupElement> {
        self.core.iter().map(|&i| &self.basis[i])
    }

    pub fn element(&self, i: usize) -> &GroupElement {
        &self.basis[i]
    }

    pub fn index_of(&self, x: &GroupElement) -> Option<usize> {
        self.index.get(x).copied()
    }
}

/// The concrete operators on `l²(G)`.
#[derive(Clone, Debug)]
pub enum Operator {
    U(GroupElement),
    S,
    SStar,
    E(Coset),
    Indicator(VirtualIndicator),
    Alg(AlgebraElement),
}

impl Operator {
    /// Image of the basis vector `ξ_x` as a combination of basis vectors.
    pub fn apply(&self, alg: &Algebra<'_>, x: &GroupElement) -> Vec<(GroupElement, Scalar)> {
        let g = alg.group();
        match self {
            Operator::U(h) => vec![(g.multiply(h, x), Scalar::one())],
            Operator::S => vec![(g.phi(x), Scalar::one())],
            Operator::SStar => g.phi_preimage(x, 1).map(|y| (y, Scalar::one())).into_iter().collect(),
            Operator::E(c) => {
                if c.contains(g, x) {
                    vec![(x.clone(), Scalar::one())]
                } else {
                    vec![]
                }
            }
            Operator::Indicator(v) => match v.eval(g, x) {
                0 => vec![],
                k => vec![(x.clone(), Scalar::from_int(k))],
            },
            Operator::Alg(a) => {
                let mut out: BTreeMap<GroupElement, Scalar> = BTreeMap::new();
                for (m, c) in &a.terms {
                    if let Some(y) = alg.apply_monomial(m, x) {
                        let slot = out.entry(y).or_insert_with(Scalar::zero);
                        *slot += c;
                    }
                }
                out.into_iter().filter(|(_, c)| !c.is_zero()).collect()
            }
        }
    }
}

pub type SparseVec = BTreeMap<usize, Scalar>;

/// Columns of an operator restricted to the window core.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct PartialMapMatrix {
    pub cols: BTreeMap<usize, SparseVec>,
}

impl PartialMapMatrix {
    pub fn is_zero(&self) -> bool {
        self.cols.values().all(|c| c.is_empty())
    }

    pub fn column(&self, j: usize) -> Option<&SparseVec> {
        self.cols.get(&j)
    }

    /// First column where the two matrices differ.
    pub fn first_difference(&self, other: &PartialMapMatrix) -> Option<usize> {
        let keys: BTreeSet<usize> = self.cols.keys().chain(other.cols.keys()).copied().collect();
        let empty = SparseVec::new();
        keys.into_iter()
            .find(|k| self.cols.get(k).unwrap_or(&empty) != other.cols.get(k).unwrap_or(&empty))
    }

    pub fn scale(&self, c: &Scalar) -> PartialMapMatrix {
        let mut out = PartialMapMatrix::default();
        for (&j, col) in &self.cols {
            let v: SparseVec =
                col.iter().map(|(&i, x)| (i, x * c)).filter(|(_, x)| !x.is_zero()).collect();
            out.cols.insert(j, v);
        }
        out
    }

    pub fn add(&self, other: &PartialMapMatrix) -> PartialMapMatrix {
        let mut out = self.clone();
        for (&j, col) in &other.cols {
            let target = out.cols.entry(j).or_default();
            for (&i, x) in col {
                add_entry(target, i, x);
            }
        }
        out
    }
}

fn add_entry(v: &mut SparseVec, i: usize, x: &Scalar) {
    let slot = v.entry(i).or_insert_with(Scalar::zero);
    *slot += x;
    if slot.is_zero() {
        v.remove(&i);
    }
}

/// `ops[0] ∘ ops[1] ∘ … ∘ ops[last]` applied to `ξ_{basis[col]}`.
pub fn apply_chain(alg: &Algebra<'_>, w: &Window, ops: &[&Operator], col: usize) -> Result<SparseVec> {
    let mut v = SparseVec::new();
    v.insert(col, Scalar::one());
    for op in ops.iter().rev() {
        let mut next = SparseVec::new();
        for (&i, c) in &v {
            for (y, d) in op.apply(alg, w.element(i)) {
                let j = w.index_of(&y).ok_or_else(|| {
                    Error::ConfigTooSmall(format!("image {y} of {} leaves the window", w.element(col)))
                })?;
                add_entry(&mut next, j, &(c * &d));
            }
        }
        v = next;
    }
    Ok(v)
}

pub fn compose_on_core(alg: &Algebra<'_>, w: &Window, ops: &[&Operator]) -> Result<PartialMapMatrix> {
    let mut out = PartialMapMatrix::default();
    for &j in w.core() {
        out.cols.insert(j, apply_chain(alg, w, ops, j)?);
    }
    Ok(out)
}

pub fn represent(alg: &Algebra<'_>, x: &AlgebraElement, w: &Window) -> Result<PartialMapMatrix> {
    compose_on_core(alg, w, &[&Operator::Alg(x.clone())])
}

pub fn render_column(w: &Window, v: &SparseVec) -> String {
    if v.is_empty() {
        return "0".into();
    }
    v.iter()
        .map(|(&i, c)| {
            if c == &Scalar::one() {
                format!("ξ{}", w.element(i))
            } else {
                format!("({c})ξ{}", w.element(i))
            }
        })
        .collect::<Vec<_>>()
        .join(" + ")
}

#[derive(Clone, Debug, Serialize)]
pub struct RelationFailure {
    pub witness: GroupElement,
    pub lhs: String,
    pub rhs: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub instance: Option<String>,
}

#[derive(Clone, Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct RelationReport {
    pub relation: String,
    pub sample_count: usize,
    pub failures: Vec<RelationFailure>,
}

impl RelationReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Generator sample for the relation suite.
#[derive(Clone, Debug)]
pub struct RelationSample {
    pub elements: Vec<GroupElement>,
    pub max_power: u32,
    pub cosets: Vec<Coset>,
}

#[derive(Clone, Debug, Serialize)]
pub struct RelationConfig {
    pub window: WindowSpec,
    pub generators: BallSpec,
    pub max_power: u32,
    pub coset_reps: BallSpec,
    pub coset_depth: u32,
    pub coset_count: usize,
}

impl RelationConfig {
    /// Windows sized so that every chain of the suite stays inside the basis for
    /// `n, m ≤ depth`.
    pub fn for_instance(id: &str, depth: u32) -> Result<RelationConfig> {
        let d = depth;
        Ok(match id {
            "shift-z" => RelationConfig {
                window: WindowSpec { basis: BallSpec::l1(2 + 2 * d, 5), core: BallSpec::l1(2, 1) },
                generators: BallSpec::l1(2, 2),
                max_power: d,
                coset_reps: BallSpec::l1(3, 2),
                coset_depth: 3,
                coset_count: 30,
            },
            "free-shift" => RelationConfig {
                window: WindowSpec { basis: BallSpec::l1(6 + d, 3), core: BallSpec::l1(2, 1) },
                generators: BallSpec::l1(4, 1),
                max_power: d,
                coset_reps: BallSpec::l1(3, 2),
                coset_depth: 3,
                coset_count: 30,
            },
            "times2" => {
                let p = 1u32 << d.min(20);
                RelationConfig {
                    window: WindowSpec {
                        basis: BallSpec::l1(0, 5 + p * (5 + 2 * p) + 8),
                        core: BallSpec::l1(0, 2),
                    },
                    generators: BallSpec::l1(0, 5),
                    max_power: d,
                    coset_reps: BallSpec::l1(0, 8),
                    coset_depth: 4,
                    coset_count: 31,
                }
            }
            other => return Err(Error::Config(format!("no relation windows for instance {other:?}"))),
        })
    }

    pub fn sample(&self, g: &dyn GroupInstance) -> RelationSample {
        let elements = g.ball(&self.generators);
        let reps = g.ball(&self.coset_reps);
        let mut lattices = Vec::new();
        for n in 0..=self.coset_depth {
            lattices.push(Lattice::phi_of_g(n));
            for b in 1..=g.bases().len() {
                lattices.push(Lattice::base(n, crate::lattice::BaseId(b as u8)));
            }
        }
        let mut seen = BTreeSet::new();
        let mut cosets = Vec::new();
        'outer: for r in &reps {
            for l in &lattices {
                let l = Lattice::canonical(g, l.terms().to_vec());
                let c = Coset::new(g, r, l);
                if seen.insert(c.clone()) {
                    cosets.push(c);
                    if cosets.len() >= self.coset_count {
                        break 'outer;
                    }
                }
            }
        }
        RelationSample { elements, max_power: self.max_power, cosets }
    }
}

struct Checker<'a, 'g> {
    alg: &'a Algebra<'g>,
    w: &'a Window,
    report: RelationReport,
}

impl Checker<'_, '_> {
    fn check(&mut self, label: impl FnOnce() -> String, lhs: &[&Operator], rhs: &[&Operator]) {
        self.report.sample_count += 1;
        let l = compose_on_core(self.alg, self.w, lhs);
        let r = compose_on_core(self.alg, self.w, rhs);
        match (l, r) {
            (Ok(l), Ok(r)) => {
                if let Some(j) = l.first_difference(&r) {
                    let empty = SparseVec::new();
                    self.report.failures.push(RelationFailure {
                        witness: self.w.element(j).clone(),
                        lhs: render_column(self.w, l.column(j).unwrap_or(&empty)),
                        rhs: render_column(self.w, r.column(j).unwrap_or(&empty)),
                        instance: Some(label()),
                    });
                }
            }
            (Err(e), _) | (_, Err(e)) => self.report.failures.push(RelationFailure {
                witness: self.w.element(self.w.core()[0]).clone(),
                lhs: e.to_string(),
                rhs: String::new(),
                instance: Some(label()),
            }),
        }
    }
}

fn powers(op: &Operator, k: u32) -> Vec<&Operator> {
    vec![op; k as usize]
}

/// Checks the five defining relations as exact identities on the window core.
pub fn check_relations(alg: &Algebra<'_>, w: &Window, sample: &RelationSample) -> Result<Vec<RelationReport>> {
    let g = alg.group();
    let s = Operator::S;
    let s_star = Operator::SStar;
    let new = |name: &str| RelationReport { relation: name.into(), sample_count: 0, failures: vec![] };
    let mut reports = Vec::new();

    // (i) u_g sⁿ u_h sᵐ = u_{gφⁿ(h)} s^{n+m}, and (iii) e_[G] = 1 against the same chains.
    let mut c1 = Checker { alg, w, report: new("(i) u_g s^n u_h s^m = u_{g phi^n(h)} s^(n+m)") };
    let e_g = Operator::E(Coset::subgroup(Lattice::whole(), g));
    let mut c3 = Checker { alg, w, report: new("(iii) e[G] = 1") };
    c3.check(|| "e[G] on the core".into(), &[&e_g], &[]);
    for gx in &sample.elements {
        for hx in &sample.elements {
            for n in 0..=sample.max_power {
                for m in 0..=sample.max_power {
                    let ug = Operator::U(gx.clone());
                    let uh = Operator::U(hx.clone());
                    let mut lhs = vec![&ug];
                    lhs.extend(powers(&s, n));
                    lhs.push(&uh);
                    lhs.extend(powers(&s, m));
                    let prod = Operator::U(g.multiply(gx, &g.phi_pow(hx, n)));
                    let mut rhs = vec![&prod];
                    rhs.extend(powers(&s, n + m));
                    let label = || format!("g={gx} h={hx} n={n} m={m}");
                    c1.check(label, &lhs, &rhs);
                    let mut with_e = vec![&e_g];
                    with_e.extend(lhs.iter().copied());
                    c3.check(label, &with_e, &lhs);
                }
            }
        }
    }
    reports.push(c1.report);

    // (ii) u_g sⁿ e_[X] s*ⁿ u_{g⁻¹} = e_[gφⁿ(X)].
    let mut c2 = Checker { alg, w, report: new("(ii) u_g s^n e[X] s*^n u_{g^-1} = e[g phi^n(X)]") };
    for gx in &sample.elements {
        let ug = Operator::U(gx.clone());
        let ug_inv = Operator::U(g.invert(gx));
        for n in 0..=sample.max_power {
            for x in &sample.cosets {
                let ex = Operator::E(x.clone());
                let mut lhs = vec![&ug];
                lhs.extend(powers(&s, n));
                lhs.push(&ex);
                lhs.extend(powers(&s_star, n));
                lhs.push(&ug_inv);
                let image = Operator::E(x.phi(g, n).translate(g, gx));
                c2.check(|| format!("g={gx} n={n} X={}", x.display(g)), &lhs, &[&image]);
            }
        }
    }
    reports.push(c2.report);
    reports.push(c3.report);

    // (iv) e_[X] e_[Y] = e_[X∩Y] and (v) e_[X] + e_[Y] = e_[X∪Y] + e_[X∩Y].
    let mut c4 = Checker { alg, w, report: new("(iv) e[X] e[Y] = e[X cap Y]") };
    let mut c5 = Checker { alg, w, report: new("(v) e[X] + e[Y] = e[X cup Y] + e[X cap Y]") };
    for x in &sample.cosets {
        for y in &sample.cosets {
            let (ex, ey) = (Operator::E(x.clone()), Operator::E(y.clone()));
            let meet = x.intersect(g, y);
            let meet_ind = match &meet {
                Some(c) => VirtualIndicator::single(c.clone()),
                None => VirtualIndicator::default(),
            };
            let meet_op = Operator::Indicator(meet_ind.clone());
            let label = || format!("X={} Y={}", x.display(g), y.display(g));
            c4.check(label, &[&ex, &ey], &[&meet_op]);

            let mut sum = VirtualIndicator::single(x.clone());
            sum.add(y.clone(), 1);
            let mut rhs = union_indicator(g, &[x.clone(), y.clone()])?;
            rhs.add_all(&meet_ind, 1);
            c5.check(label, &[&Operator::Indicator(sum)], &[&Operator::Indicator(rhs)]);
        }
    }
    reports.push(c4.report);
    reports.push(c5.report);
    Ok(reports)
}

/// `represent(mul(x,y)) = represent(x)·represent(y)` on a window closed under both factors.
pub fn oracle_product_check(
    alg: &Algebra<'_>,
    core: &[GroupElement],
    x: &AlgebraElement,
    y: &AlgebraElement,
) -> Result<Option<String>> {
    let (ox, oy) = (Operator::Alg(x.clone()), Operator::Alg(y.clone()));
    let w = Window::closure(alg.group(), core, &[&ox, &oy])?;
    let prod = Operator::Alg(alg.mul(x, y));
    let lhs = compose_on_core(alg, &w, &[&prod])?;
    let rhs = compose_on_core(alg, &w, &[&ox, &oy])?;
    Ok(lhs.first_difference(&rhs).map(|j| {
        let empty = SparseVec::new();
        format!(
            "at {}: symbolic {} vs composed {}",
            w.element(j),
            render_column(&w, lhs.column(j).unwrap_or(&empty)),
            render_column(&w, rhs.column(j).unwrap_or(&empty))
        )
    }))
}

/// Action of a monomial on every point of `domain`: the signature used to tell labels apart.
pub fn signature(alg: &Algebra<'_>, m: &Monomial, domain: &[GroupElement]) -> Vec<Option<GroupElement>> {
    domain.iter().map(|k| alg.apply_monomial(m, k)).collect()
}

#[derive(Clone, Debug, Serialize)]
pub struct Collision {
    pub first: String,
    pub second: String,
}

/// Groups monomials by their action on `domain`; every group of size > 1 is a collision.
pub fn find_collisions(alg: &Algebra<'_>, monomials: &[Monomial], domain: &[GroupElement]) -> Vec<Collision> {
    let mut by_sig: HashMap<Vec<Option<GroupElement>>, usize> = HashMap::new();
    let mut out = Vec::new();
    for (i, m) in monomials.iter().enumerate() {
        match by_sig.entry(signature(alg, m, domain)) {
            std::collections::hash_map::Entry::Occupied(e) => out.push(Collision {
                first: alg.render_monomial(&monomials[*e.get()]),
                second: alg.render_monomial(m),
            }),
            std::collections::hash_map::Entry::Vacant(e) => {
                e.insert(i);
            }
        }
    }
    out
}

/// Every canonical monomial `(n, a, L, b, m)` with `n, m ≤ max_power`, `a, b` drawn from
/// `elements` and `L` from `lattices`, deduplicated.
pub fn canonical_monomials(
    alg: &Algebra<'_>,
    max_power: u32,
    elements: &[GroupElement],
    lattices: &[Lattice],
) -> Vec<Monomial> {
    let g = alg.group();
    let mut out = BTreeSet::new();
    for n in 0..=max_power {
        for m in 0..=max_power {
            for a in elements {
                for b in elements {
                    for l in lattices {
                        if let Some(mono) = alg.canonicalize(n, a, &Coset::subgroup(l.clone(), g), b, m) {
                            out.insert(mono);
                        }
                    }
                }
            }
        }
    }
    out.into_iter().collect()
}
