//! `G = ⊕_{i∈ℕ} ℤ` with the index shift `φ(x)_{i+1} = x_i`, `φ(x)_0 = 0`.
//!
//! Lattice subgroups here are all of the form `{x : d_i | x_i}` with one modulus per
//! coordinate (`0` meaning the coordinate must vanish), which makes every oracle a
//! per-coordinate congruence computation.

use std::cmp::Ordering;

use num_integer::Integer;
use serde_json::Value;

use super::{
    json_pairs, parse_pairs, signed_key, BallShape, BallSpec, BaseSubgroup,
    GroupElement, GroupInstance, IndexClass, InstanceMeta,
};
use crate::error::{Error, Result};
use crate::lattice::{BaseId, Lattice};

/// Coordinate moduli: coordinate `i` is constrained to `prefix[i]·ℤ` (or `tail·ℤ` past the prefix).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Moduli {
    pub prefix: Vec<u64>,
    pub tail: u64,
}

fn lcm0(a: u64, b: u64) -> u64 {
    if a == 0 || b == 0 {
        0
    } else {
        a.lcm(&b)
    }
}

impl Moduli {
    pub fn whole() -> Self {
        Moduli { prefix: Vec::new(), tail: 1 }
    }

    fn normalized(mut self) -> Self {
        while self.prefix.last() == Some(&self.tail) {
            self.prefix.pop();
        }
        self
    }

    pub fn at(&self, i: usize) -> u64 {
        self.prefix.get(i).copied().unwrap_or(self.tail)
    }

    pub fn shift(&self, n: u32) -> Self {
        let mut prefix = vec![0; n as usize];
        prefix.extend_from_slice(&self.prefix);
        Moduli { prefix, tail: self.tail }.normalized()
    }

    pub fn meet(&self, other: &Moduli) -> Self {
        let len = self.prefix.len().max(other.prefix.len());
        let prefix = (0..len).map(|i| lcm0(self.at(i), other.at(i))).collect();
        Moduli { prefix, tail: lcm0(self.tail, other.tail) }.normalized()
    }

    fn span(&self, other: &Moduli) -> usize {
        self.prefix.len().max(other.prefix.len())
    }

    fn allows(&self, i: usize, v: i64) -> bool {
        match self.at(i) {
            0 => v == 0,
            d => v.rem_euclid(d as i64) == 0,
        }
    }
}

fn divides_sub(dl: u64, dm: u64) -> bool {
    dl == 0 || (dm != 0 && dl % dm == 0)
}

/// The subgroup `{x : x_0 even}`.
pub(super) fn h_even_zero() -> BaseSubgroup {
    BaseSubgroup { name: "H".into(), moduli: Moduli { prefix: vec![2], tail: 1 } }
}

/// All coordinates even. It contains no `φ^k(G)`, so it serves as a fixture that
/// violates the base-family hypothesis.
pub fn all_even() -> BaseSubgroup {
    BaseSubgroup { name: "Even".into(), moduli: Moduli { prefix: Vec::new(), tail: 2 } }
}

#[derive(Clone, Debug, Default)]
pub struct ShiftZ {
    bases: Vec<BaseSubgroup>,
}

impl ShiftZ {
    pub fn new() -> Self {
        ShiftZ::default()
    }

    pub fn with_bases(bases: Vec<BaseSubgroup>) -> Self {
        ShiftZ { bases }
    }

    pub fn moduli(&self, l: &Lattice) -> Moduli {
        let mut acc = Moduli::whole();
        for t in l.terms() {
            let base = if t.base == BaseId::G {
                Moduli::whole()
            } else {
                self.bases[t.base.0 as usize - 1].moduli.clone()
            };
            acc = acc.meet(&base.shift(t.n));
        }
        acc
    }
}

fn pairs(x: &GroupElement) -> &[(u32, i64)] {
    match x {
        GroupElement::Seq(v) => v,
        other => panic!("shift-z received a foreign element {other:?}"),
    }
}

fn dense(x: &GroupElement) -> Vec<i64> {
    let p = pairs(x);
    let len = p.last().map_or(0, |q| q.0 as usize + 1);
    let mut v = vec![0; len];
    for &(i, x) in p {
        v[i as usize] = x;
    }
    v
}

fn from_dense(v: &[i64]) -> GroupElement {
    GroupElement::Seq(
        v.iter()
            .enumerate()
            .filter(|(_, x)| **x != 0)
            .map(|(i, x)| (i as u32, *x))
            .collect(),
    )
}

/// Enumeration order: weight `(max index + 1) + Σ|x_i|` (the identity has weight 0),
/// then max index, then lexicographic with `0 < 1 < -1 < 2 < …` per coordinate.
pub(crate) fn order_key(x: &GroupElement) -> (u64, usize, Vec<(u64, bool)>) {
    let v = dense(x);
    let weight = if v.is_empty() { 0 } else { v.len() as u64 + v.iter().map(|a| a.unsigned_abs()).sum::<u64>() };
    (weight, v.len(), v.iter().map(|&a| signed_key(a)).collect())
}

fn values_in_order(max_abs: u64) -> impl Iterator<Item = i64> {
    (0..=max_abs as i64).flat_map(|a| if a == 0 { vec![0] } else { vec![a, -a] })
}

/// Vectors of the given length with `Σ|v_i| = total` and nonzero last entry, in key order.
fn shell(len: usize, total: u64, out: &mut Vec<GroupElement>) {
    fn rec(pos: usize, len: usize, left: u64, cur: &mut Vec<i64>, out: &mut Vec<GroupElement>) {
        if pos + 1 == len {
            if left > 0 {
                for v in [left as i64, -(left as i64)] {
                    cur.push(v);
                    out.push(from_dense(cur));
                    cur.pop();
                }
            }
            return;
        }
        for v in values_in_order(left.saturating_sub(1)) {
            cur.push(v);
            rec(pos + 1, len, left - v.unsigned_abs(), cur, out);
            cur.pop();
        }
    }
    rec(0, len, total, &mut Vec::with_capacity(len), out);
}

fn ball_rec(spec: &BallSpec, pos: usize, left: u64, cur: &mut Vec<i64>, out: &mut Vec<GroupElement>) {
    if pos == spec.max_index as usize {
        out.push(from_dense(cur));
        return;
    }
    let bound = match spec.shape {
        BallShape::L1 => left,
        BallShape::Box => spec.max_norm as u64,
    };
    for v in values_in_order(bound) {
        cur.push(v);
        let rest = match spec.shape {
            BallShape::L1 => left - v.unsigned_abs(),
            BallShape::Box => left,
        };
        ball_rec(spec, pos + 1, rest, cur, out);
        cur.pop();
    }
}

fn crt(t1: i64, d1: u64, t2: i64, d2: u64) -> Option<i64> {
    match (d1, d2) {
        (0, 0) => (t1 == t2).then_some(t1),
        (0, d) => ((t1 - t2).rem_euclid(d as i64) == 0).then_some(t1),
        (d, 0) => ((t2 - t1).rem_euclid(d as i64) == 0).then_some(t2),
        (d1, d2) => {
            let (d1, d2) = (d1 as i128, d2 as i128);
            let g = d1.gcd(&d2);
            let diff = t2 as i128 - t1 as i128;
            if diff % g != 0 {
                return None;
            }
            let m = d2 / g;
            let e = (d1 / g).extended_gcd(&m);
            let k = ((diff / g) % m * e.x).rem_euclid(m);
            i64::try_from(t1 as i128 + d1 * k).ok()
        }
    }
}

impl GroupInstance for ShiftZ {
    fn meta(&self) -> InstanceMeta {
        InstanceMeta {
            id: "shift-z",
            infinite_cokernel: true,
            pure: true,
            amenable: true,
            note: "direct sum of copies of Z indexed by N with the index shift",
        }
    }

    fn identity(&self) -> GroupElement {
        GroupElement::Seq(Vec::new())
    }

    fn multiply(&self, x: &GroupElement, y: &GroupElement) -> GroupElement {
        let (a, b) = (pairs(x), pairs(y));
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() || j < b.len() {
            let ord = match (a.get(i), b.get(j)) {
                (Some(p), Some(q)) => p.0.cmp(&q.0),
                (Some(_), None) => Ordering::Less,
                _ => Ordering::Greater,
            };
            match ord {
                Ordering::Less => {
                    out.push(a[i]);
                    i += 1;
                }
                Ordering::Greater => {
                    out.push(b[j]);
                    j += 1;
                }
                Ordering::Equal => {
                    let s = a[i].1 + b[j].1;
                    if s != 0 {
                        out.push((a[i].0, s));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        GroupElement::Seq(out)
    }

    fn invert(&self, x: &GroupElement) -> GroupElement {
        GroupElement::Seq(pairs(x).iter().map(|&(i, v)| (i, -v)).collect())
    }

    fn phi(&self, x: &GroupElement) -> GroupElement {
        self.phi_pow(x, 1)
    }

    fn phi_pow(&self, x: &GroupElement, n: u32) -> GroupElement {
        GroupElement::Seq(pairs(x).iter().map(|&(i, v)| (i + n, v)).collect())
    }

    fn phi_preimage(&self, x: &GroupElement, n: u32) -> Option<GroupElement> {
        let p = pairs(x);
        if p.first().is_some_and(|q| q.0 < n) {
            return None;
        }
        Some(GroupElement::Seq(p.iter().map(|&(i, v)| (i - n, v)).collect()))
    }

    fn is_canonical(&self, x: &GroupElement) -> bool {
        match x {
            GroupElement::Seq(v) => v.iter().all(|p| p.1 != 0) && v.windows(2).all(|w| w[0].0 < w[1].0),
            _ => false,
        }
    }

    fn canonical_bytes(&self, x: &GroupElement) -> Vec<u8> {
        let mut out = vec![b'z'];
        for &(i, v) in pairs(x) {
            out.extend_from_slice(&i.to_le_bytes());
            out.extend_from_slice(&v.to_le_bytes());
        }
        out
    }

    fn enumerate(&self) -> Box<dyn Iterator<Item = GroupElement> + '_> {
        let shells = (1u64..).flat_map(|w| {
            let mut out = Vec::new();
            for len in 1..w as usize {
                shell(len, w - len as u64, &mut out);
            }
            out
        });
        Box::new(std::iter::once(self.identity()).chain(shells))
    }

    fn ball(&self, spec: &BallSpec) -> Vec<GroupElement> {
        let mut out = Vec::new();
        ball_rec(spec, 0, spec.max_norm as u64, &mut Vec::new(), &mut out);
        out.sort_by_cached_key(order_key);
        out
    }

    fn bases(&self) -> &[BaseSubgroup] {
        &self.bases
    }

    fn member(&self, g: &GroupElement, l: &Lattice) -> bool {
        let m = self.moduli(l);
        pairs(g).iter().all(|&(i, v)| m.allows(i as usize, v))
    }

    fn contains(&self, l: &Lattice, m: &Lattice) -> bool {
        let (a, b) = (self.moduli(l), self.moduli(m));
        (0..a.span(&b)).all(|i| divides_sub(a.at(i), b.at(i))) && divides_sub(a.tail, b.tail)
    }

    fn index_class(&self, l: &Lattice, m: &Lattice) -> Result<IndexClass> {
        let (a, b) = (self.moduli(l), self.moduli(m));
        let factor = |dl: u64, dm: u64| -> Option<u64> {
            if dl == 0 {
                Some(1)
            } else {
                match lcm0(dl, dm) {
                    0 => None,
                    k => Some(k / dl),
                }
            }
        };
        if factor(a.tail, b.tail) != Some(1) {
            return Ok(IndexClass::Infinite);
        }
        let mut total: u64 = 1;
        for i in 0..a.span(&b) {
            match factor(a.at(i), b.at(i)) {
                None => return Ok(IndexClass::Infinite),
                Some(f) => {
                    total = total
                        .checked_mul(f)
                        .ok_or(Error::CapExceeded { what: "finite index", cap: u64::MAX as usize })?
                }
            }
        }
        Ok(if total == 1 { IndexClass::One } else { IndexClass::Finite(total) })
    }

    fn coset_rep(&self, g: &GroupElement, l: &Lattice) -> GroupElement {
        let m = self.moduli(l);
        GroupElement::Seq(
            pairs(g)
                .iter()
                .map(|&(i, v)| match m.at(i as usize) {
                    0 => (i, v),
                    d => (i, v.rem_euclid(d as i64)),
                })
                .filter(|p| p.1 != 0)
                .collect(),
        )
    }

    fn coset_meet(
        &self,
        t1: &GroupElement,
        l1: &Lattice,
        t2: &GroupElement,
        l2: &Lattice,
    ) -> Option<GroupElement> {
        let (m1, m2) = (self.moduli(l1), self.moduli(l2));
        let (a, b) = (dense(t1), dense(t2));
        let len = a.len().max(b.len());
        let mut out = vec![0; len];
        for (i, slot) in out.iter_mut().enumerate() {
            let x1 = a.get(i).copied().unwrap_or(0);
            let x2 = b.get(i).copied().unwrap_or(0);
            *slot = crt(x1, m1.at(i), x2, m2.at(i))?;
        }
        Some(from_dense(&out))
    }

    fn transversal(&self, l: &Lattice, m: &Lattice, cap: usize) -> Result<Vec<GroupElement>> {
        let (a, b) = (self.moduli(l), self.moduli(m));
        if self.index_class(l, m)? == IndexClass::Infinite {
            return Err(Error::UnsupportedPair {
                sub: format!("{l:?}"),
                other: format!("{m:?} (infinite index has no finite transversal)"),
            });
        }
        let mut reps: Vec<Vec<i64>> = vec![vec![0; a.span(&b)]];
        for i in 0..a.span(&b) {
            let (dl, dm) = (a.at(i), b.at(i));
            if dl == 0 {
                continue;
            }
            let f = lcm0(dl, dm) / dl;
            if f == 1 {
                continue;
            }
            let mut next = Vec::with_capacity(reps.len() * f as usize);
            for r in &reps {
                for k in 0..f {
                    let mut r2 = r.clone();
                    r2[i] = (k * dl) as i64;
                    next.push(r2);
                }
            }
            if next.len() > cap {
                return Err(Error::CapExceeded { what: "transversal", cap });
            }
            reps = next;
        }
        Ok(reps.iter().map(|v| from_dense(v)).collect())
    }

    fn subgroup_element(&self, l: &Lattice, x: &GroupElement) -> GroupElement {
        let m = self.moduli(l);
        let free: Vec<(usize, u64)> = {
            let need = pairs(x).last().map_or(0, |p| p.0 as usize + 1);
            let mut v = Vec::with_capacity(need);
            let mut i = 0;
            while v.len() < need {
                let d = m.at(i);
                if d != 0 {
                    v.push((i, d));
                }
                i += 1;
            }
            v
        };
        GroupElement::seq(
            &pairs(x)
                .iter()
                .map(|&(j, v)| {
                    let (i, d) = free[j as usize];
                    (i as u32, v * d as i64)
                })
                .collect::<Vec<_>>(),
        )
    }

    fn parse_element(&self, text: &str) -> Result<GroupElement> {
        let mut out = Vec::new();
        for (i, v) in parse_pairs(text)? {
            let i = u32::try_from(i)
                .map_err(|_| Error::Syntax { pos: 0, msg: format!("negative index in {text:?}") })?;
            out.push((i, v));
        }
        Ok(GroupElement::seq(&out))
    }

    fn element_from_json(&self, v: &Value) -> Result<GroupElement> {
        let mut out = Vec::new();
        for (i, x) in json_pairs(v)? {
            let i = u32::try_from(i).map_err(|_| Error::Config(format!("negative index in {v}")))?;
            out.push((i, x));
        }
        Ok(GroupElement::seq(&out))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::Term;

    fn z(p: &[(u32, i64)]) -> GroupElement {
        GroupElement::seq(p)
    }

    fn g_h() -> ShiftZ {
        ShiftZ::with_bases(vec![h_even_zero()])
    }

    fn single(n: u32, base: u8) -> Lattice {
        Lattice::raw(vec![Term { n, base: BaseId(base) }])
    }

    #[test]
    fn shift_and_preimage() {
        let g = ShiftZ::new();
        assert_eq!(g.phi_pow(&z(&[(0, 1)]), 2), z(&[(2, 1)]));
        assert_eq!(g.phi_preimage(&z(&[(2, 5)]), 2), Some(z(&[(0, 5)])));
        assert_eq!(g.phi_preimage(&z(&[(0, 1)]), 1), None);
    }

    #[test]
    fn membership_and_index() {
        let g = g_h();
        assert!(g.member(&z(&[(1, 3)]), &single(1, 0)));
        assert!(g.member(&z(&[(0, 2)]), &single(0, 1)));
        assert!(!g.member(&z(&[(0, 1)]), &single(0, 1)));
        assert_eq!(g.index_class(&single(1, 0), &single(2, 0)).unwrap(), IndexClass::Infinite);
        assert_eq!(g.index_class(&single(0, 0), &single(0, 1)).unwrap(), IndexClass::Finite(2));
        assert_eq!(g.index_class(&single(0, 1), &single(0, 1)).unwrap(), IndexClass::One);
        assert!(g.contains(&single(1, 0), &single(0, 1)));
    }

    #[test]
    fn enumeration_prefix() {
        let g = ShiftZ::new();
        let first: Vec<String> = g.enumerate().take(8).map(|x| x.to_string()).collect();
        assert_eq!(first, ["{}", "{0:1}", "{0:-1}", "{0:2}", "{0:-2}", "{1:1}", "{1:-1}", "{0:3}"]);
    }

    #[test]
    fn enumeration_is_duplicate_free() {
        let g = ShiftZ::new();
        let v: Vec<_> = g.enumerate().take(5000).collect();
        let set: std::collections::BTreeSet<_> = v.iter().cloned().collect();
        assert_eq!(set.len(), v.len());
        assert!(v.windows(2).all(|w| order_key(&w[0]) < order_key(&w[1])));
    }

    #[test]
    fn ball_sizes() {
        let g = ShiftZ::new();
        assert_eq!(g.ball(&BallSpec::boxed(3, 2)).len(), 125);
        assert_eq!(g.ball(&BallSpec::l1(2, 1)).len(), 5);
    }

    #[test]
    fn crt_cases() {
        assert_eq!(crt(1, 2, 0, 3), Some(3));
        assert_eq!(crt(1, 2, 0, 4), None);
        assert_eq!(crt(5, 0, 1, 4), Some(5));
        assert_eq!(crt(5, 0, 4, 0), None);
    }

    #[test]
    fn subgroup_enumeration_lands_inside() {
        let g = g_h();
        let l = Lattice::raw(vec![Term { n: 1, base: BaseId(1) }]);
        for x in g.enumerate().take(300) {
            assert!(g.member(&g.subgroup_element(&l, &x), &l));
        }
    }
}
