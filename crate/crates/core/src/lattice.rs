//! Lattice subgroups `⋂ φ^{n_i}(H_i)`, their left cosets, integer combinations of coset
//! indicators, and the combinatorics built on them: atom decomposition, covering
//! witnesses and index refinement.

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::group::{GroupElement, GroupInstance, IndexClass};

pub const DEFAULT_WITNESS_CAP: usize = 1_000_000;
pub const DEFAULT_TRANSVERSAL_CAP: usize = 100_000;
const MAX_ORTHOGONALIZE_INPUTS: usize = 20;

/// Index into `{G} ∪ B`; `0` is always `G`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct BaseId(pub u8);

impl BaseId {
    pub const G: BaseId = BaseId(0);
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Term {
    pub n: u32,
    #[serde(rename = "baseId")]
    pub base: BaseId,
}

/// Descriptor of `⋂ φ^{n_i}(H_i)`. Values built through [`Lattice::canonical`] have
/// sorted terms with every term implied by the others removed.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct Lattice {
    terms: Vec<Term>,
}

impl Lattice {
    /// Uses the terms as given.
    pub fn raw(terms: Vec<Term>) -> Self {
        Lattice { terms }
    }

    pub fn whole() -> Self {
        Lattice::phi_of_g(0)
    }

    pub fn phi_of_g(n: u32) -> Self {
        Lattice { terms: vec![Term { n, base: BaseId::G }] }
    }

    pub fn base(n: u32, base: BaseId) -> Self {
        Lattice { terms: vec![Term { n, base }] }
    }

    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    pub fn canonical(g: &dyn GroupInstance, mut terms: Vec<Term>) -> Self {
        terms.sort();
        terms.dedup();
        'outer: loop {
            if terms.len() <= 1 {
                break;
            }
            for i in 0..terms.len() {
                let others: Vec<Term> =
                    terms.iter().enumerate().filter(|(j, _)| *j != i).map(|(_, t)| *t).collect();
                if g.contains(&Lattice::raw(others), &Lattice::raw(vec![terms[i]])) {
                    terms.remove(i);
                    continue 'outer;
                }
            }
            break;
        }
        if terms.is_empty() {
            terms.push(Term { n: 0, base: BaseId::G });
        }
        Lattice { terms }
    }

    pub fn meet(&self, g: &dyn GroupInstance, other: &Lattice) -> Lattice {
        let mut terms = self.terms.clone();
        terms.extend_from_slice(&other.terms);
        Lattice::canonical(g, terms)
    }

    /// `φ^k` of the subgroup. Containment is preserved by the injective `φ`, so the
    /// result stays canonical.
    pub fn phi(&self, k: u32) -> Lattice {
        Lattice { terms: self.terms.iter().map(|t| Term { n: t.n + k, base: t.base }).collect() }
    }

    /// `L₀` with `φ^k(L₀) = self`, read off the descriptor when every term has `n ≥ k`.
    pub fn phi_preimage(&self, k: u32) -> Option<Lattice> {
        self.terms
            .iter()
            .all(|t| t.n >= k)
            .then(|| Lattice { terms: self.terms.iter().map(|t| Term { n: t.n - k, base: t.base }).collect() })
    }

    pub fn is_whole(&self) -> bool {
        self.terms == [Term { n: 0, base: BaseId::G }]
    }

    pub fn display(&self, g: &dyn GroupInstance) -> String {
        self.terms
            .iter()
            .map(|t| {
                let b = g.base_name(t.base);
                match t.n {
                    0 => b,
                    1 => format!("phi({b})"),
                    n => format!("phi^{n}({b})"),
                }
            })
            .collect::<Vec<_>>()
            .join("∩")
    }
}

/// A left coset `rep·sub` with `rep` the instance's canonical representative.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Coset {
    pub rep: GroupElement,
    pub sub: Lattice,
}

impl Coset {
    pub fn new(g: &dyn GroupInstance, rep: &GroupElement, sub: Lattice) -> Self {
        Coset { rep: g.coset_rep(rep, &sub), sub }
    }

    pub fn subgroup(sub: Lattice, g: &dyn GroupInstance) -> Self {
        Coset { rep: g.identity(), sub }
    }

    pub fn contains(&self, g: &dyn GroupInstance, x: &GroupElement) -> bool {
        g.member(&g.multiply(&g.invert(&self.rep), x), &self.sub)
    }

    pub fn is_subset(&self, g: &dyn GroupInstance, other: &Coset) -> bool {
        g.contains(&self.sub, &other.sub) && other.contains(g, &self.rep)
    }

    pub fn intersect(&self, g: &dyn GroupInstance, other: &Coset) -> Option<Coset> {
        let x = g.coset_meet(&self.rep, &self.sub, &other.rep, &other.sub)?;
        Some(Coset::new(g, &x, self.sub.meet(g, &other.sub)))
    }

    pub fn translate(&self, g: &dyn GroupInstance, by: &GroupElement) -> Coset {
        Coset::new(g, &g.multiply(by, &self.rep), self.sub.clone())
    }

    pub fn phi(&self, g: &dyn GroupInstance, k: u32) -> Coset {
        Coset::new(g, &g.phi_pow(&self.rep, k), self.sub.phi(k))
    }

    pub fn display(&self, g: &dyn GroupInstance) -> String {
        if self.rep == g.identity() {
            self.sub.display(g)
        } else {
            format!("{}·{}", self.rep, self.sub.display(g))
        }
    }
}

/// A finite integer combination of coset indicator functions.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct VirtualIndicator {
    pub terms: BTreeMap<Coset, i64>,
}

impl VirtualIndicator {
    pub fn single(c: Coset) -> Self {
        let mut v = VirtualIndicator::default();
        v.add(c, 1);
        v
    }

    pub fn add(&mut self, c: Coset, coeff: i64) {
        if coeff == 0 {
            return;
        }
        match self.terms.entry(c) {
            Entry::Occupied(mut e) => {
                *e.get_mut() += coeff;
                if *e.get() == 0 {
                    e.remove();
                }
            }
            Entry::Vacant(e) => {
                e.insert(coeff);
            }
        }
    }

    pub fn add_all(&mut self, other: &VirtualIndicator, scale: i64) {
        for (c, k) in &other.terms {
            self.add(c.clone(), k * scale);
        }
    }

    pub fn eval(&self, g: &dyn GroupInstance, x: &GroupElement) -> i64 {
        self.terms.iter().filter(|(c, _)| c.contains(g, x)).map(|(_, k)| k).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

impl Serialize for VirtualIndicator {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Item<'a> {
            coset: &'a Coset,
            coeff: i64,
        }
        s.collect_seq(self.terms.iter().map(|(coset, &coeff)| Item { coset, coeff }))
    }
}

/// One nonempty cell of the Boolean algebra generated by a coset family: the points
/// lying in exactly the inputs listed in `members`.
#[derive(Clone, Debug, Serialize)]
pub struct Atom {
    pub members: Vec<usize>,
    pub indicator: VirtualIndicator,
    pub witness: GroupElement,
}

/// Decides whether `d \ ⋃ parts` is nonempty, where each part is a subcoset of `d`.
///
/// Parts of index one cover `d`. Parts of infinite index cannot cover any coset of a
/// finite-index subgroup of `sub(d)` (a finite union of cosets of infinite-index
/// subgroups never covers a group), so only the finite-index parts matter, and those
/// are decided on the cosets of their common intersection.
pub fn difference_nonempty(g: &dyn GroupInstance, d: &Coset, parts: &[Coset], cap: usize) -> Result<bool> {
    let mut finite = Vec::new();
    for p in parts {
        match g.index_class(&d.sub, &p.sub)? {
            IndexClass::One => return Ok(false),
            IndexClass::Finite(_) => finite.push(p),
            IndexClass::Infinite => {}
        }
    }
    if finite.is_empty() {
        return Ok(true);
    }
    let mut k = d.sub.clone();
    for p in &finite {
        k = k.meet(g, &p.sub);
    }
    let reps = g.transversal(&d.sub, &k, cap)?;
    Ok(reps.iter().any(|c| {
        let x = g.multiply(&d.rep, c);
        !finite.iter().any(|p| p.contains(g, &x))
    }))
}

/// Atom decomposition of a coset family with inclusion–exclusion indicators.
pub fn orthogonalize(g: &dyn GroupInstance, cosets: &[Coset]) -> Result<Vec<Atom>> {
    orthogonalize_with_cap(g, cosets, DEFAULT_WITNESS_CAP)
}

pub fn orthogonalize_with_cap(g: &dyn GroupInstance, cosets: &[Coset], cap: usize) -> Result<Vec<Atom>> {
    let k = cosets.len();
    if k > MAX_ORTHOGONALIZE_INPUTS {
        return Err(Error::CapExceeded { what: "orthogonalize inputs", cap: MAX_ORTHOGONALIZE_INPUTS });
    }
    // Nonempty intersections D_S, keyed by the bitmask of S.
    let mut meets: BTreeMap<u32, Coset> = BTreeMap::new();
    fn grow(g: &dyn GroupInstance, cosets: &[Coset], mask: u32, cur: &Coset, from: usize, out: &mut BTreeMap<u32, Coset>) {
        for j in from..cosets.len() {
            if let Some(next) = cur.intersect(g, &cosets[j]) {
                let m = mask | (1 << j);
                grow(g, cosets, m, &next, j + 1, out);
                out.insert(m, next);
            }
        }
    }
    for (i, c) in cosets.iter().enumerate() {
        meets.insert(1 << i, c.clone());
        grow(g, cosets, 1 << i, c, i + 1, &mut meets);
    }
    let mut atoms = Vec::new();
    for (&mask, d) in &meets {
        let parts: Vec<Coset> = (0..k)
            .filter(|j| mask & (1 << j) == 0)
            .filter_map(|j| meets.get(&(mask | (1 << j))).cloned())
            .collect();
        if !difference_nonempty(g, d, &parts, DEFAULT_TRANSVERSAL_CAP)? {
            continue;
        }
        let witness = witness_outside(g, d, &parts, cap)?;
        let mut indicator = VirtualIndicator::default();
        for (&t, c) in meets.range(mask..) {
            if t & mask == mask {
                let sign = if (t & !mask).count_ones() % 2 == 0 { 1 } else { -1 };
                indicator.add(c.clone(), sign);
            }
        }
        let members = (0..k).filter(|j| mask & (1 << j) != 0).collect();
        atoms.push(Atom { members, indicator, witness });
    }
    Ok(atoms)
}

/// The union `⋃ cosets` as an integer combination, summed from the atoms.
pub fn union_indicator(g: &dyn GroupInstance, cosets: &[Coset]) -> Result<VirtualIndicator> {
    let mut out = VirtualIndicator::default();
    for a in orthogonalize(g, cosets)? {
        out.add_all(&a.indicator, 1);
    }
    Ok(out)
}

/// First element of `d`, in the instance's enumeration of `sub(d)`, outside every excluded coset.
pub fn witness_outside(g: &dyn GroupInstance, d: &Coset, excluded: &[Coset], cap: usize) -> Result<GroupElement> {
    for x in g.enumerate().take(cap) {
        let r = g.multiply(&d.rep, &g.subgroup_element(&d.sub, &x));
        if !excluded.iter().any(|c| c.contains(g, &r)) {
            return Ok(r);
        }
    }
    Err(Error::NotFound { bound: cap })
}

/// [`witness_outside`] for a domain given as an intersection of cosets.
pub fn witness_outside_meet(
    g: &dyn GroupInstance,
    domain: &[Coset],
    excluded: &[Coset],
    cap: usize,
) -> Result<GroupElement> {
    let mut it = domain.iter();
    let mut d = it.next().cloned().unwrap_or_else(|| Coset::subgroup(Lattice::whole(), g));
    for c in it {
        d = d.intersect(g, c).ok_or(Error::EmptyDomain)?;
    }
    witness_outside(g, &d, excluded, cap)
}

/// Replaces a family of lattice subgroups by one whose pairwise indices are all one or
/// infinite, by the inductive double pass: first shrink the new member against each
/// earlier one with finite index greater than one, then shrink earlier members against it.
pub fn refine_family(g: &dyn GroupInstance, family: &[Lattice]) -> Result<Vec<Lattice>> {
    let finite_gt_one = |c: IndexClass| matches!(c, IndexClass::Finite(_));
    let mut out: Vec<Lattice> = Vec::with_capacity(family.len());
    for next in family {
        let mut k = next.clone();
        for kj in &out {
            if finite_gt_one(g.index_class(&k, kj)?) {
                k = k.meet(g, kj);
            }
        }
        for kj in out.iter_mut() {
            if finite_gt_one(g.index_class(kj, &k)?) {
                *kj = kj.meet(g, &k);
            }
        }
        out.push(k);
    }
    Ok(out)
}
