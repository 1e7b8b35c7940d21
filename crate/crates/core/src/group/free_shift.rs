//! The free group on `a_1, a_2, …` with `φ(a_i) = a_{i+1}`.
//!
//! Only `B = {G}` is supported, so every lattice subgroup is some `φ^d(G)`: the
//! reduced words whose letters all have index `> d`.

use serde_json::Value;

use super::{
    json_pairs, parse_pairs, BallSpec, BaseSubgroup, GroupElement, GroupInstance, IndexClass,
    InstanceMeta, Letter,
};
use crate::error::{Error, Result};
use crate::lattice::Lattice;

#[derive(Clone, Copy, Debug, Default)]
pub struct FreeShift;

fn letters(x: &GroupElement) -> &[Letter] {
    match x {
        GroupElement::Word(w) => w,
        other => panic!("free-shift received a foreign element {other:?}"),
    }
}

fn depth(l: &Lattice) -> u32 {
    l.terms().iter().map(|t| t.n).max().unwrap_or(0)
}

fn inside(w: &[Letter], d: u32) -> bool {
    w.iter().all(|l| l.gen > d)
}

fn letter_key(l: &Letter) -> (u32, bool) {
    (l.gen, l.exp < 0)
}

/// Enumeration order: weight `length + max generator index`, then length, then
/// lexicographic on letters ordered `a_1 < a_1⁻¹ < a_2 < …`.
pub(crate) fn order_key(x: &GroupElement) -> (u32, usize, Vec<(u32, bool)>) {
    let w = letters(x);
    let top = w.iter().map(|l| l.gen).max().unwrap_or(0);
    (w.len() as u32 + top, w.len(), w.iter().map(letter_key).collect())
}

/// Reduced words of length `len` over `a_1..a_k` in key order.
fn words(len: usize, k: u32, out: &mut Vec<Vec<Letter>>) {
    fn rec(len: usize, k: u32, cur: &mut Vec<Letter>, out: &mut Vec<Vec<Letter>>) {
        if cur.len() == len {
            out.push(cur.clone());
            return;
        }
        for gen in 1..=k {
            for exp in [1i8, -1] {
                if cur.last().is_some_and(|p| p.gen == gen && p.exp == -exp) {
                    continue;
                }
                cur.push(Letter { gen, exp });
                rec(len, k, cur, out);
                cur.pop();
            }
        }
    }
    rec(len, k, &mut Vec::with_capacity(len), out);
}

impl GroupInstance for FreeShift {
    fn meta(&self) -> InstanceMeta {
        InstanceMeta {
            id: "free-shift",
            infinite_cokernel: true,
            pure: true,
            amenable: false,
            note: "free group with the generator shift; not amenable",
        }
    }

    fn identity(&self) -> GroupElement {
        GroupElement::Word(Vec::new())
    }

    fn multiply(&self, x: &GroupElement, y: &GroupElement) -> GroupElement {
        let mut out = letters(x).to_vec();
        for &l in letters(y) {
            match out.last() {
                Some(p) if p.gen == l.gen && p.exp == -l.exp => {
                    out.pop();
                }
                _ => out.push(l),
            }
        }
        GroupElement::Word(out)
    }

    fn invert(&self, x: &GroupElement) -> GroupElement {
        GroupElement::Word(letters(x).iter().rev().map(|l| Letter { gen: l.gen, exp: -l.exp }).collect())
    }

    fn phi(&self, x: &GroupElement) -> GroupElement {
        self.phi_pow(x, 1)
    }

    fn phi_pow(&self, x: &GroupElement, n: u32) -> GroupElement {
        GroupElement::Word(letters(x).iter().map(|l| Letter { gen: l.gen + n, exp: l.exp }).collect())
    }

    fn phi_preimage(&self, x: &GroupElement, n: u32) -> Option<GroupElement> {
        let w = letters(x);
        inside(w, n).then(|| GroupElement::Word(w.iter().map(|l| Letter { gen: l.gen - n, exp: l.exp }).collect()))
    }

    fn is_canonical(&self, x: &GroupElement) -> bool {
        match x {
            GroupElement::Word(w) => {
                w.iter().all(|l| l.gen >= 1 && (l.exp == 1 || l.exp == -1))
                    && w.windows(2).all(|p| !(p[0].gen == p[1].gen && p[0].exp == -p[1].exp))
            }
            _ => false,
        }
    }

    fn canonical_bytes(&self, x: &GroupElement) -> Vec<u8> {
        let mut out = vec![b'f'];
        for l in letters(x) {
            out.extend_from_slice(&l.gen.to_le_bytes());
            out.push(l.exp as u8);
        }
        out
    }

    fn enumerate(&self) -> Box<dyn Iterator<Item = GroupElement> + '_> {
        let shells = (2u32..).flat_map(|w| {
            let mut out = Vec::new();
            for len in 1..w as usize {
                let k = w - len as u32;
                let mut batch = Vec::new();
                words(len, k, &mut batch);
                out.extend(
                    batch
                        .into_iter()
                        .filter(|v| v.iter().any(|l| l.gen == k))
                        .map(GroupElement::Word),
                );
            }
            out
        });
        Box::new(std::iter::once(self.identity()).chain(shells))
    }

    fn ball(&self, spec: &BallSpec) -> Vec<GroupElement> {
        let mut out = Vec::new();
        for len in 0..=spec.max_norm as usize {
            let mut batch = Vec::new();
            words(len, spec.max_index, &mut batch);
            out.extend(batch.into_iter().map(GroupElement::Word));
        }
        out.sort_by_cached_key(order_key);
        out
    }

    fn bases(&self) -> &[BaseSubgroup] {
        &[]
    }

    fn member(&self, g: &GroupElement, l: &Lattice) -> bool {
        inside(letters(g), depth(l))
    }

    fn contains(&self, l: &Lattice, m: &Lattice) -> bool {
        depth(l) >= depth(m)
    }

    fn index_class(&self, l: &Lattice, m: &Lattice) -> Result<IndexClass> {
        Ok(if depth(l) >= depth(m) { IndexClass::One } else { IndexClass::Infinite })
    }

    fn coset_rep(&self, g: &GroupElement, l: &Lattice) -> GroupElement {
        let d = depth(l);
        let w = letters(g);
        let keep = w.iter().rposition(|x| x.gen <= d).map_or(0, |i| i + 1);
        GroupElement::Word(w[..keep].to_vec())
    }

    fn coset_meet(
        &self,
        t1: &GroupElement,
        l1: &Lattice,
        t2: &GroupElement,
        l2: &Lattice,
    ) -> Option<GroupElement> {
        // The lattice is a chain, so the intersection is the smaller coset or empty.
        let (big_t, big, small_t) = if depth(l1) <= depth(l2) { (t1, l1, t2) } else { (t2, l2, t1) };
        self.member(&self.multiply(&self.invert(big_t), small_t), big).then(|| small_t.clone())
    }

    fn transversal(&self, l: &Lattice, m: &Lattice, _cap: usize) -> Result<Vec<GroupElement>> {
        match self.index_class(l, m)? {
            IndexClass::One => Ok(vec![self.identity()]),
            _ => Err(Error::UnsupportedPair {
                sub: format!("{l:?}"),
                other: format!("{m:?} (infinite index has no finite transversal)"),
            }),
        }
    }

    fn subgroup_element(&self, l: &Lattice, x: &GroupElement) -> GroupElement {
        self.phi_pow(x, depth(l))
    }

    fn parse_element(&self, text: &str) -> Result<GroupElement> {
        let inner = text.trim().trim_start_matches('{').trim_end_matches('}').trim();
        if inner.starts_with('a') {
            return parse_letters(inner).ok_or_else(|| Error::Syntax { pos: 0, msg: format!("bad word {text:?}") });
        }
        let pairs = parse_pairs(text)?;
        to_word(&pairs).map_err(|msg| Error::Syntax { pos: 0, msg: format!("{msg} in {text:?}") })
    }

    fn element_from_json(&self, v: &Value) -> Result<GroupElement> {
        to_word(&json_pairs(v)?).map_err(|msg| Error::Config(format!("{msg} in {v}")))
    }
}

/// `a1a2^-1a3` style words.
fn parse_letters(text: &str) -> Option<GroupElement> {
    let mut pairs = Vec::new();
    let mut rest = text;
    while !rest.is_empty() {
        rest = rest.strip_prefix('a')?;
        let end = rest.find(|c: char| !c.is_ascii_digit()).unwrap_or(rest.len());
        let gen: i64 = rest[..end].parse().ok()?;
        rest = &rest[end..];
        let exp = match rest.strip_prefix("^-1") {
            Some(r) => {
                rest = r;
                -1
            }
            None => 1,
        };
        pairs.push((gen, exp));
    }
    to_word(&pairs).ok()
}

fn to_word(pairs: &[(i64, i64)]) -> std::result::Result<GroupElement, String> {
    let mut out = Vec::with_capacity(pairs.len());
    for &(g, e) in pairs {
        if g < 1 || g > u32::MAX as i64 {
            return Err(format!("generator index {g} out of range"));
        }
        if e != 1 && e != -1 {
            return Err(format!("exponent {e} is not +-1"));
        }
        out.push((g as u32, e as i8));
    }
    Ok(GroupElement::word(&out))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::{BaseId, Term};

    fn w(p: &[(u32, i8)]) -> GroupElement {
        GroupElement::word(p)
    }

    fn phi_g(n: u32) -> Lattice {
        Lattice::raw(vec![Term { n, base: BaseId::G }])
    }

    #[test]
    fn generator_relabeling() {
        assert_eq!(FreeShift.phi_pow(&w(&[(1, 1), (2, -1)]), 1), w(&[(2, 1), (3, -1)]));
        assert_eq!(FreeShift.phi_preimage(&w(&[(2, 1)]), 1), Some(w(&[(1, 1)])));
        assert_eq!(FreeShift.phi_preimage(&w(&[(2, 1), (1, 1)]), 1), None);
    }

    #[test]
    fn coset_representatives_strip_suffix() {
        let g = w(&[(3, 1), (1, 1), (2, 1), (3, -1)]);
        assert_eq!(FreeShift.coset_rep(&g, &phi_g(1)), w(&[(3, 1), (1, 1)]));
        assert_eq!(FreeShift.coset_rep(&g, &phi_g(0)), w(&[]));
        let r = FreeShift.coset_rep(&g, &phi_g(2));
        let h = FreeShift.multiply(&r, &w(&[(5, 1)]));
        assert_eq!(FreeShift.coset_rep(&h, &phi_g(2)), r);
    }

    #[test]
    fn enumeration_order() {
        let first: Vec<String> = FreeShift.enumerate().take(7).map(|x| x.to_string()).collect();
        assert_eq!(first, ["e", "a1", "a1^-1", "a2", "a2^-1", "a1a1", "a1^-1a1^-1"]);
        let v: Vec<_> = FreeShift.enumerate().take(4000).collect();
        assert!(v.windows(2).all(|p| order_key(&p[0]) < order_key(&p[1])));
    }

    #[test]
    fn ball_counts() {
        // 1 + 4 + 4·3 words of length ≤ 2 over two generators.
        assert_eq!(FreeShift.ball(&BallSpec::l1(2, 2)).len(), 17);
    }
}
