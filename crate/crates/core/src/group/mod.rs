//! Computable groups carrying an injective endomorphism `φ`.
//!
//! Every algorithm in the crate talks to a group through [`GroupInstance`]: the
//! group law, `φ` and its partial inverse, and the oracles on lattice subgroups
//! `⋂ φ^{n_i}(H_i)` that the coset machinery needs. Three instances are provided:
//! [`ShiftZ`], [`FreeShift`] and [`Times2`].

mod free_shift;
mod shift_z;
mod times2;

use std::fmt;
use std::sync::Arc;

use serde::ser::SerializeSeq;
use serde::{Serialize, Serializer};
use serde_json::Value;

use crate::error::{Error, Result};
use crate::lattice::{BaseId, Lattice};

pub use free_shift::FreeShift;
pub use shift_z::{all_even, Moduli, ShiftZ};
pub use times2::Times2;

/// A letter `a_gen^{exp}` of a free-group word, `exp = ±1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Letter {
    pub gen: u32,
    pub exp: i8,
}

/// Canonical payload of a group element.
///
/// `Seq` is a finitely supported sequence stored as sorted `(index, value)` pairs
/// without zeros; `Word` is a freely reduced word; `Int` is an integer.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum GroupElement {
    Seq(Vec<(u32, i64)>),
    Word(Vec<Letter>),
    Int(i64),
}

impl GroupElement {
    pub fn seq(pairs: &[(u32, i64)]) -> Self {
        let mut v: Vec<(u32, i64)> = Vec::new();
        let mut sorted = pairs.to_vec();
        sorted.sort_by_key(|p| p.0);
        for (i, x) in sorted {
            match v.last_mut() {
                Some(last) if last.0 == i => last.1 += x,
                _ => v.push((i, x)),
            }
        }
        v.retain(|p| p.1 != 0);
        GroupElement::Seq(v)
    }

    /// Reduced word from `(generator, ±1)` pairs.
    pub fn word(letters: &[(u32, i8)]) -> Self {
        let mut out: Vec<Letter> = Vec::new();
        for &(gen, exp) in letters {
            let l = Letter { gen, exp };
            match out.last() {
                Some(p) if p.gen == gen && p.exp == -exp => {
                    out.pop();
                }
                _ => out.push(l),
            }
        }
        GroupElement::Word(out)
    }
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupElement::Seq(v) => {
                write!(f, "{{")?;
                for (k, (i, x)) in v.iter().enumerate() {
                    if k > 0 {
                        write!(f, ",")?;
                    }
                    write!(f, "{i}:{x}")?;
                }
                write!(f, "}}")
            }
            GroupElement::Word(w) => {
                if w.is_empty() {
                    return write!(f, "e");
                }
                for l in w {
                    if l.exp == 1 {
                        write!(f, "a{}", l.gen)?;
                    } else {
                        write!(f, "a{}^-1", l.gen)?;
                    }
                }
                Ok(())
            }
            GroupElement::Int(x) => write!(f, "{x}"),
        }
    }
}

impl Serialize for GroupElement {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            GroupElement::Seq(v) => {
                let mut seq = s.serialize_seq(Some(v.len()))?;
                for (i, x) in v {
                    seq.serialize_element(&(i, x))?;
                }
                seq.end()
            }
            GroupElement::Word(w) => {
                let mut seq = s.serialize_seq(Some(w.len()))?;
                for l in w {
                    seq.serialize_element(&(l.gen, l.exp))?;
                }
                seq.end()
            }
            GroupElement::Int(x) => s.serialize_i64(*x),
        }
    }
}

/// `#[L / (L∩M)]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase", tag = "class", content = "index")]
pub enum IndexClass {
    One,
    Finite(u64),
    Infinite,
}

impl IndexClass {
    pub fn is_one_or_infinite(self) -> bool {
        matches!(self, IndexClass::One | IndexClass::Infinite)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum BallShape {
    /// Sum of absolute values (word length for words) bounded by `max_norm`.
    L1,
    /// Every coordinate bounded by `max_norm` in absolute value.
    Box,
}

/// A finite neighbourhood of the identity, interpreted per instance:
/// support/generator indices below `max_index` and size at most `max_norm`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct BallSpec {
    pub max_index: u32,
    pub max_norm: u32,
    pub shape: BallShape,
}

impl BallSpec {
    pub const fn l1(max_index: u32, max_norm: u32) -> Self {
        BallSpec { max_index, max_norm, shape: BallShape::L1 }
    }

    pub const fn boxed(max_index: u32, max_norm: u32) -> Self {
        BallSpec { max_index, max_norm, shape: BallShape::Box }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct InstanceMeta {
    pub id: &'static str,
    pub infinite_cokernel: bool,
    pub pure: bool,
    pub amenable: bool,
    pub note: &'static str,
}

/// A named base subgroup `H ∈ B` (the whole group `G` is implicit as [`BaseId::G`]).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BaseSubgroup {
    pub name: String,
    pub moduli: Moduli,
}

/// A countable group `G` with an injective endomorphism `φ` and the subgroup oracles
/// used throughout the engine.
///
/// Lattice arguments are descriptors of `⋂ φ^{n_i}(H_i)` built over this instance's
/// base family; the oracles must be exact.
pub trait GroupInstance: Send + Sync + fmt::Debug {
    fn meta(&self) -> InstanceMeta;

    fn id(&self) -> &'static str {
        self.meta().id
    }

    fn identity(&self) -> GroupElement;
    fn multiply(&self, x: &GroupElement, y: &GroupElement) -> GroupElement;
    fn invert(&self, x: &GroupElement) -> GroupElement;
    fn phi(&self, x: &GroupElement) -> GroupElement;

    fn phi_pow(&self, x: &GroupElement, n: u32) -> GroupElement {
        let mut y = x.clone();
        for _ in 0..n {
            y = self.phi(&y);
        }
        y
    }

    /// The unique `h` with `φⁿ(h) = x`, if `x ∈ φⁿ(G)`.
    fn phi_preimage(&self, x: &GroupElement, n: u32) -> Option<GroupElement>;

    fn is_canonical(&self, x: &GroupElement) -> bool;
    fn canonical_bytes(&self, x: &GroupElement) -> Vec<u8>;

    /// All of `G`, duplicate-free, deterministic, starting at the identity.
    fn enumerate(&self) -> Box<dyn Iterator<Item = GroupElement> + '_>;
    fn ball(&self, spec: &BallSpec) -> Vec<GroupElement>;

    /// Base subgroups other than `G`; `BaseId(i)` refers to `bases()[i - 1]`.
    fn bases(&self) -> &[BaseSubgroup];

    fn member(&self, g: &GroupElement, l: &Lattice) -> bool;
    /// `l ⊆ m`.
    fn contains(&self, l: &Lattice, m: &Lattice) -> bool;
    fn index_class(&self, l: &Lattice, m: &Lattice) -> Result<IndexClass>;
    /// Canonical representative of the left coset `g·l`.
    fn coset_rep(&self, g: &GroupElement, l: &Lattice) -> GroupElement;
    /// Some element of `t1·l1 ∩ t2·l2`, or `None` when the intersection is empty.
    fn coset_meet(
        &self,
        t1: &GroupElement,
        l1: &Lattice,
        t2: &GroupElement,
        l2: &Lattice,
    ) -> Option<GroupElement>;
    /// Representatives of the left cosets of `l∩m` in `l` when that index is finite.
    fn transversal(&self, l: &Lattice, m: &Lattice, cap: usize) -> Result<Vec<GroupElement>>;
    /// A bijection `G → l`, used to enumerate a lattice subgroup in a deterministic order.
    fn subgroup_element(&self, l: &Lattice, x: &GroupElement) -> GroupElement;

    fn parse_element(&self, text: &str) -> Result<GroupElement>;
    fn element_from_json(&self, v: &Value) -> Result<GroupElement>;

    fn base_name(&self, id: BaseId) -> String {
        if id == BaseId::G {
            "G".to_string()
        } else {
            self.bases()
                .get(id.0 as usize - 1)
                .map(|b| b.name.clone())
                .unwrap_or_else(|| format!("B{}", id.0))
        }
    }

    fn base_by_name(&self, name: &str) -> Option<BaseId> {
        if name == "G" {
            return Some(BaseId::G);
        }
        self.bases()
            .iter()
            .position(|b| b.name == name)
            .map(|i| BaseId(i as u8 + 1))
    }
}

pub type Instance = Arc<dyn GroupInstance>;

/// Builds a provided instance by id with the named base subgroups (besides `G`).
pub fn instance_by_id(id: &str, bases: &[&str]) -> Result<Instance> {
    let extra: Vec<&str> = bases.iter().copied().filter(|b| *b != "G").collect();
    match id {
        "shift-z" => {
            let mut list = Vec::new();
            for name in extra {
                match name {
                    "H" => list.push(shift_z::h_even_zero()),
                    "Even" => list.push(shift_z::all_even()),
                    other => {
                        return Err(Error::Config(format!("unknown base subgroup {other:?} for shift-z")))
                    }
                }
            }
            Ok(Arc::new(ShiftZ::with_bases(list)))
        }
        "free-shift" | "times2" if !extra.is_empty() => Err(Error::Config(format!(
            "instance {id} supports only B = {{G}}, got extra bases {extra:?}"
        ))),
        "free-shift" => Ok(Arc::new(FreeShift)),
        "times2" => Ok(Arc::new(Times2)),
        other => Err(Error::Config(format!("unknown instance id {other:?}"))),
    }
}

pub fn pow(g: &dyn GroupInstance, x: &GroupElement, k: i64) -> GroupElement {
    let base = if k < 0 { g.invert(x) } else { x.clone() };
    let mut acc = g.identity();
    for _ in 0..k.unsigned_abs() {
        acc = g.multiply(&acc, &base);
    }
    acc
}

pub fn mul3(g: &dyn GroupInstance, x: &GroupElement, y: &GroupElement, z: &GroupElement) -> GroupElement {
    g.multiply(&g.multiply(x, y), z)
}

/// Largest `n ≤ cap` with `x ∈ φⁿ(G)`.
pub fn phi_depth(g: &dyn GroupInstance, x: &GroupElement, cap: u32) -> u32 {
    let mut cur = x.clone();
    let mut n = 0;
    while n < cap {
        match g.phi_preimage(&cur, 1) {
            Some(y) => {
                cur = y;
                n += 1;
            }
            None => break,
        }
    }
    n
}

#[derive(Clone, Debug, Serialize)]
pub struct PuritySample {
    pub element: GroupElement,
    pub survives: u32,
}

#[derive(Clone, Debug, Serialize)]
pub struct PurityReport {
    pub instance: &'static str,
    pub depth: u32,
    pub samples: Vec<PuritySample>,
    pub violators: Vec<GroupElement>,
}

impl PurityReport {
    pub fn passed(&self) -> bool {
        self.violators.is_empty()
    }
}

/// Checks that no non-identity element of the window lies in `φⁿ(G)` for every `n ≤ depth`.
pub fn purity_probe(g: &dyn GroupInstance, depth: u32, window: &BallSpec) -> PurityReport {
    assert!(depth >= 1, "purity probe needs depth >= 1");
    let e = g.identity();
    let mut samples = Vec::new();
    let mut violators = Vec::new();
    for x in g.ball(window) {
        let survives = phi_depth(g, &x, depth);
        if x != e && survives >= depth {
            violators.push(x.clone());
        }
        samples.push(PuritySample { element: x, survives });
    }
    PurityReport { instance: g.id(), depth, samples, violators }
}

#[derive(Clone, Debug, Serialize)]
pub struct HypothesisReport {
    pub bases: Vec<String>,
    pub k: Option<u32>,
    pub searched_up_to: u32,
}

/// Smallest `k ≤ cap` with `φ^k(G) ⊆ ⋂_{H∈B} H`.
pub fn phi_power_inside_bases(g: &dyn GroupInstance, cap: u32) -> HypothesisReport {
    let all: Vec<BaseId> = (0..=g.bases().len()).map(|i| BaseId(i as u8)).collect();
    let meet = Lattice::raw(all.iter().map(|&b| crate::lattice::Term { n: 0, base: b }).collect());
    let k = (0..=cap).find(|&k| g.contains(&Lattice::phi_of_g(k), &meet));
    HypothesisReport { bases: all.iter().map(|&b| g.base_name(b)).collect(), k, searched_up_to: cap }
}

pub fn require_hypothesis(g: &dyn GroupInstance, cap: u32) -> Result<u32> {
    let rep = phi_power_inside_bases(g, cap);
    rep.k.ok_or_else(|| {
        Error::HypothesisViolation(format!(
            "no k <= {cap} with phi^k(G) contained in every base of {:?}",
            rep.bases
        ))
    })
}

pub(crate) fn json_pairs(v: &Value) -> Result<Vec<(i64, i64)>> {
    let bad = || Error::Config(format!("malformed element JSON: {v}"));
    let arr = v.as_array().ok_or_else(bad)?;
    arr.iter()
        .map(|p| {
            let pair = p.as_array().filter(|a| a.len() == 2).ok_or_else(bad)?;
            Ok((pair[0].as_i64().ok_or_else(bad)?, pair[1].as_i64().ok_or_else(bad)?))
        })
        .collect()
}

/// Parses `i:v,j:w` pair lists, accepting optional braces and `e` for the empty list.
pub(crate) fn parse_pairs(text: &str) -> Result<Vec<(i64, i64)>> {
    let t = text.trim().trim_start_matches('{').trim_end_matches('}').trim();
    if t.is_empty() || t == "e" {
        return Ok(Vec::new());
    }
    t.split(',')
        .map(|item| {
            let bad = || Error::Syntax { pos: 0, msg: format!("bad pair {item:?} in {text:?}") };
            let (a, b) = item.split_once(':').ok_or_else(bad)?;
            Ok((a.trim().parse().map_err(|_| bad())?, b.trim().parse().map_err(|_| bad())?))
        })
        .collect()
}

/// Ordering key for coordinate values: `0 < 1 < -1 < 2 < -2 < …`.
pub(crate) fn signed_key(v: i64) -> (u64, bool) {
    (v.unsigned_abs(), v < 0)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn constructors_canonicalize() {
        assert_eq!(GroupElement::seq(&[(1, 2), (0, 0), (1, -2)]), GroupElement::Seq(vec![]));
        assert_eq!(
            GroupElement::word(&[(1, 1), (2, 1), (2, -1)]),
            GroupElement::Word(vec![Letter { gen: 1, exp: 1 }])
        );
    }

    #[test]
    fn instance_lookup() {
        assert!(instance_by_id("shift-z", &["G", "H"]).is_ok());
        assert!(instance_by_id("times2", &["G"]).is_ok());
        assert!(matches!(instance_by_id("times2", &["H"]), Err(Error::Config(_))));
        assert!(matches!(instance_by_id("nope", &[]), Err(Error::Config(_))));
    }

    #[test]
    fn pair_parsing() {
        assert_eq!(parse_pairs("{0:1,1:-2}").unwrap(), vec![(0, 1), (1, -2)]);
        assert_eq!(parse_pairs("e").unwrap(), vec![]);
        assert!(parse_pairs("0-1").is_err());
    }
}
