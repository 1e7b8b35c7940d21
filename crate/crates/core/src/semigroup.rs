//! The Ore semigroup `S = G ⋊_φ ℕ`, its enveloping group `𝔾 ⋊ ℤ` (with `𝔾` the direct
//! limit of `G → G → …` along `φ`), constructible right ideals, and the map into the
//! star-algebra sending `(g,n)` to `u_g sⁿ`.

use serde::ser::SerializeMap;
use serde::{Serialize, Serializer};

use crate::algebra::{Algebra, AlgebraElement};
use crate::group::{GroupElement, GroupInstance};
use crate::lattice::{Coset, Lattice};

/// `(g, n) ∈ S`, multiplied by `(g,n)(h,m) = (g·φⁿ(h), n+m)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct SemigroupElement {
    pub g: GroupElement,
    pub n: u32,
}

impl SemigroupElement {
    pub fn new(g: GroupElement, n: u32) -> Self {
        SemigroupElement { g, n }
    }

    pub fn unit(grp: &dyn GroupInstance) -> Self {
        SemigroupElement { g: grp.identity(), n: 0 }
    }
}

pub fn s_mul(grp: &dyn GroupInstance, p: &SemigroupElement, q: &SemigroupElement) -> SemigroupElement {
    SemigroupElement { g: grp.multiply(&p.g, &grp.phi_pow(&q.g, p.n)), n: p.n + q.n }
}

/// `(c_p, c_q)` with `c_p·p = c_q·q = (e, n_p + n_q)`.
pub fn common_left_multiple(
    grp: &dyn GroupInstance,
    p: &SemigroupElement,
    q: &SemigroupElement,
) -> (SemigroupElement, SemigroupElement) {
    (
        SemigroupElement { g: grp.phi_pow(&grp.invert(&p.g), q.n), n: q.n },
        SemigroupElement { g: grp.phi_pow(&grp.invert(&q.g), p.n), n: p.n },
    )
}

/// The class of `(φ̄^{-level}(g), z)` in `𝔾 ⋊ ℤ`; `(g, i)` and `(φ(g), i+1)` name the
/// same point of `𝔾`. Values from [`env_normalize`] sit at the minimal level.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct EnvElement {
    pub g: GroupElement,
    pub level: u32,
    pub z: i64,
}

pub fn env_normalize(grp: &dyn GroupInstance, x: &EnvElement) -> EnvElement {
    let mut g = x.g.clone();
    let mut level = x.level;
    while level > 0 {
        match grp.phi_preimage(&g, 1) {
            Some(h) => {
                g = h;
                level -= 1;
            }
            None => break,
        }
    }
    EnvElement { g, level, z: x.z }
}

pub fn env_identity(grp: &dyn GroupInstance) -> EnvElement {
    EnvElement { g: grp.identity(), level: 0, z: 0 }
}

pub fn embed(grp: &dyn GroupInstance, p: &SemigroupElement) -> EnvElement {
    env_normalize(grp, &EnvElement { g: p.g.clone(), level: 0, z: p.n as i64 })
}

/// `(x, z)(y, w) = (x·φ̄^z(y), z+w)`, evaluated at a level where both factors are honest
/// elements of `G`.
pub fn env_mul(grp: &dyn GroupInstance, x: &EnvElement, y: &EnvElement) -> EnvElement {
    let lift = y.level as i64 - x.z;
    let level = (x.level as i64).max(lift);
    let left = grp.phi_pow(&x.g, (level - x.level as i64) as u32);
    let right = grp.phi_pow(&y.g, (level - lift) as u32);
    env_normalize(
        grp,
        &EnvElement { g: grp.multiply(&left, &right), level: level as u32, z: x.z + y.z },
    )
}

pub fn env_inv(grp: &dyn GroupInstance, x: &EnvElement) -> EnvElement {
    let inv = grp.invert(&x.g);
    let level = x.level as i64 + x.z;
    let raw = if level >= 0 {
        EnvElement { g: inv, level: level as u32, z: -x.z }
    } else {
        EnvElement { g: grp.phi_pow(&inv, (-level) as u32), level: 0, z: -x.z }
    };
    env_normalize(grp, &raw)
}

/// `(p, q)` in `S` with `x = embed(p)⁻¹·embed(q)`: `p = (g⁻¹, i)` and `q = (e, i+z)`,
/// after lifting `x` to a level `i` with `i + z ≥ 0`.
pub fn env_factor(grp: &dyn GroupInstance, x: &EnvElement) -> (SemigroupElement, SemigroupElement) {
    let raise = (-(x.level as i64 + x.z)).max(0) as u32;
    let g = grp.phi_pow(&x.g, raise);
    let level = x.level + raise;
    (
        SemigroupElement { g: grp.invert(&g), n: level },
        SemigroupElement { g: grp.identity(), n: (level as i64 + x.z) as u32 },
    )
}

/// A constructible right ideal: `∅` or `(g,n)S`. The generator is stored with `g`
/// reduced to the canonical representative of `g·φⁿ(G)`, so equal ideals compare equal.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum RightIdeal {
    Empty,
    Principal(SemigroupElement),
}

impl Serialize for RightIdeal {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            RightIdeal::Empty => {
                let mut m = s.serialize_map(Some(1))?;
                m.serialize_entry("empty", &true)?;
                m.end()
            }
            RightIdeal::Principal(p) => p.serialize(s),
        }
    }
}

impl RightIdeal {
    pub fn principal(grp: &dyn GroupInstance, p: &SemigroupElement) -> Self {
        RightIdeal::Principal(SemigroupElement {
            g: grp.coset_rep(&p.g, &Lattice::phi_of_g(p.n)),
            n: p.n,
        })
    }

    pub fn whole(grp: &dyn GroupInstance) -> Self {
        RightIdeal::Principal(SemigroupElement::unit(grp))
    }

    pub fn contains(&self, grp: &dyn GroupInstance, x: &SemigroupElement) -> bool {
        match self {
            RightIdeal::Empty => false,
            RightIdeal::Principal(p) => {
                x.n >= p.n && grp.member(&grp.multiply(&grp.invert(&p.g), &x.g), &Lattice::phi_of_g(p.n))
            }
        }
    }
}

pub fn ideal_intersect(grp: &dyn GroupInstance, i: &RightIdeal, j: &RightIdeal) -> RightIdeal {
    let (p, q) = match (i, j) {
        (RightIdeal::Principal(p), RightIdeal::Principal(q)) => (p, q),
        _ => return RightIdeal::Empty,
    };
    let (lo, hi) = if p.n <= q.n { (p, q) } else { (q, p) };
    if grp.member(&grp.multiply(&grp.invert(&lo.g), &hi.g), &Lattice::phi_of_g(lo.n)) {
        RightIdeal::principal(grp, hi)
    } else {
        RightIdeal::Empty
    }
}

/// `p⁻¹I = {q ∈ S : p·q ∈ I}`.
pub fn ideal_preimage(grp: &dyn GroupInstance, p: &SemigroupElement, i: &RightIdeal) -> RightIdeal {
    let q = match i {
        RightIdeal::Empty => return RightIdeal::Empty,
        RightIdeal::Principal(q) => q,
    };
    let diff = grp.multiply(&grp.invert(&p.g), &q.g);
    if p.n >= q.n {
        if grp.member(&diff, &Lattice::phi_of_g(q.n)) {
            RightIdeal::whole(grp)
        } else {
            RightIdeal::Empty
        }
    } else {
        match grp.phi_preimage(&diff, p.n) {
            Some(c) => RightIdeal::principal(grp, &SemigroupElement { g: c, n: q.n - p.n }),
            None => RightIdeal::Empty,
        }
    }
}

/// `v_{(g,n)} ↦ u_g sⁿ`.
pub fn li_generators(alg: &Algebra<'_>, p: &SemigroupElement) -> AlgebraElement {
    alg.mul(&alg.u(&p.g), &alg.s_pow(p.n))
}

/// `e_{(h,m)S} ↦ e_[h·φ^m(G)]`, `∅ ↦ 0`.
pub fn li_ideal_projection(alg: &Algebra<'_>, i: &RightIdeal) -> AlgebraElement {
    match i {
        RightIdeal::Empty => AlgebraElement::zero(),
        RightIdeal::Principal(p) => alg.proj(&Coset::new(alg.group(), &p.g, Lattice::phi_of_g(p.n))),
    }
}

/// Brute-force membership table of an ideal over a finite sample of `S`.
pub fn ideal_profile(grp: &dyn GroupInstance, i: &RightIdeal, sample: &[SemigroupElement]) -> Vec<bool> {
    sample.iter().map(|x| i.contains(grp, x)).collect()
}
