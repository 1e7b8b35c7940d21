//! `G = ℤ` with `φ(x) = 2x`. The cokernel `ℤ/2` is finite, so this instance is only a
//! contrast case for the engine; results that need an infinite cokernel are not claimed.

use serde_json::Value;

use super::{BallSpec, BaseSubgroup, GroupElement, GroupInstance, IndexClass, InstanceMeta};
use crate::error::{Error, Result};
use crate::lattice::Lattice;

#[derive(Clone, Copy, Debug, Default)]
pub struct Times2;

fn int(x: &GroupElement) -> i64 {
    match x {
        GroupElement::Int(v) => *v,
        other => panic!("times2 received a foreign element {other:?}"),
    }
}

fn depth(l: &Lattice) -> u32 {
    l.terms().iter().map(|t| t.n).max().unwrap_or(0)
}

/// `2^d` when it fits; `None` means only `0` lies in `2^d ℤ` within `i64`.
fn modulus(d: u32) -> Option<i64> {
    (d < 63).then(|| 1i64 << d)
}

fn in_depth(x: i64, d: u32) -> bool {
    match modulus(d) {
        Some(m) => x.rem_euclid(m) == 0,
        None => x == 0,
    }
}

impl GroupInstance for Times2 {
    fn meta(&self) -> InstanceMeta {
        InstanceMeta {
            id: "times2",
            infinite_cokernel: false,
            pure: true,
            amenable: true,
            note: "finite cokernel Z/2: contrast instance, infinite-cokernel results not claimed",
        }
    }

    fn identity(&self) -> GroupElement {
        GroupElement::Int(0)
    }

    fn multiply(&self, x: &GroupElement, y: &GroupElement) -> GroupElement {
        GroupElement::Int(int(x).checked_add(int(y)).expect("times2 element overflow"))
    }

    fn invert(&self, x: &GroupElement) -> GroupElement {
        GroupElement::Int(-int(x))
    }

    fn phi(&self, x: &GroupElement) -> GroupElement {
        self.phi_pow(x, 1)
    }

    fn phi_pow(&self, x: &GroupElement, n: u32) -> GroupElement {
        let v = int(x);
        if v == 0 {
            return GroupElement::Int(0);
        }
        let m = modulus(n).expect("times2 element overflow");
        GroupElement::Int(v.checked_mul(m).expect("times2 element overflow"))
    }

    fn phi_preimage(&self, x: &GroupElement, n: u32) -> Option<GroupElement> {
        let v = int(x);
        if !in_depth(v, n) {
            return None;
        }
        Some(GroupElement::Int(if v == 0 { 0 } else { v >> n }))
    }

    fn is_canonical(&self, x: &GroupElement) -> bool {
        matches!(x, GroupElement::Int(_))
    }

    fn canonical_bytes(&self, x: &GroupElement) -> Vec<u8> {
        let mut out = vec![b't'];
        out.extend_from_slice(&int(x).to_le_bytes());
        out
    }

    fn enumerate(&self) -> Box<dyn Iterator<Item = GroupElement> + '_> {
        Box::new(std::iter::once(GroupElement::Int(0)).chain(
            (1i64..).flat_map(|k| [GroupElement::Int(k), GroupElement::Int(-k)]),
        ))
    }

    fn ball(&self, spec: &BallSpec) -> Vec<GroupElement> {
        self.enumerate().take(2 * spec.max_norm as usize + 1).collect()
    }

    fn bases(&self) -> &[BaseSubgroup] {
        &[]
    }

    fn member(&self, g: &GroupElement, l: &Lattice) -> bool {
        in_depth(int(g), depth(l))
    }

    fn contains(&self, l: &Lattice, m: &Lattice) -> bool {
        depth(l) >= depth(m)
    }

    fn index_class(&self, l: &Lattice, m: &Lattice) -> Result<IndexClass> {
        let (dl, dm) = (depth(l), depth(m));
        if dl >= dm {
            return Ok(IndexClass::One);
        }
        let gap = dm - dl;
        if gap >= 64 {
            return Err(Error::CapExceeded { what: "finite index", cap: u64::MAX as usize });
        }
        Ok(IndexClass::Finite(1u64 << gap))
    }

    fn coset_rep(&self, g: &GroupElement, l: &Lattice) -> GroupElement {
        let v = int(g);
        GroupElement::Int(match modulus(depth(l)) {
            Some(m) => v.rem_euclid(m),
            None => v,
        })
    }

    fn coset_meet(
        &self,
        t1: &GroupElement,
        l1: &Lattice,
        t2: &GroupElement,
        l2: &Lattice,
    ) -> Option<GroupElement> {
        let (big_t, big, small_t) = if depth(l1) <= depth(l2) { (t1, l1, t2) } else { (t2, l2, t1) };
        in_depth(int(small_t) - int(big_t), depth(big)).then(|| small_t.clone())
    }

    fn transversal(&self, l: &Lattice, m: &Lattice, cap: usize) -> Result<Vec<GroupElement>> {
        let count = match self.index_class(l, m)? {
            IndexClass::One => 1,
            IndexClass::Finite(k) => k,
            IndexClass::Infinite => unreachable!("times2 indices are finite"),
        };
        if count as u128 > cap as u128 {
            return Err(Error::CapExceeded { what: "transversal", cap });
        }
        let step = modulus(depth(l)).ok_or(Error::CapExceeded { what: "transversal step", cap })?;
        Ok((0..count as i64).map(|k| GroupElement::Int(k * step)).collect())
    }

    fn subgroup_element(&self, l: &Lattice, x: &GroupElement) -> GroupElement {
        self.phi_pow(x, depth(l))
    }

    fn parse_element(&self, text: &str) -> Result<GroupElement> {
        text.trim()
            .trim_start_matches('{')
            .trim_end_matches('}')
            .trim()
            .parse()
            .map(GroupElement::Int)
            .map_err(|_| Error::Syntax { pos: 0, msg: format!("expected an integer, got {text:?}") })
    }

    fn element_from_json(&self, v: &Value) -> Result<GroupElement> {
        v.as_i64().map(GroupElement::Int).ok_or_else(|| Error::Config(format!("expected an integer, got {v}")))
    }
}
