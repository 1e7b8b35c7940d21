//! The dense *-algebra spanned by the monomials `s*ⁿ u_a e_[L] u_b sᵐ`.
//!
//! A monomial acts on `l²(G)` as the partial map `ξ_k ↦ ξ_{φ^{-n}(a·b·φ^m(k))}`, defined
//! when `b·φ^m(k) ∈ L` and `a·b·φ^m(k) ∈ φⁿ(G)`. Canonical labels absorb both gates into
//! `L`, push common powers of `φ` out of `(n, m)` and pick the canonical representative
//! of `a·L`, so a product of two monomials is again zero or a single monomial.

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt::Write as _;

use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::group::{GroupElement, GroupInstance};
use crate::lattice::{orthogonalize, Coset, Lattice};
use crate::scalar::{exact_sqrt, rational_to_string, Scalar};
use crate::semigroup::{env_identity, env_normalize, EnvElement, SemigroupElement};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Monomial {
    pub n: u32,
    pub a: GroupElement,
    #[serde(rename = "L")]
    pub sub: Lattice,
    pub b: GroupElement,
    pub m: u32,
}

/// A finite combination of canonical monomials with nonzero Gaussian-rational coefficients.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct AlgebraElement {
    pub terms: BTreeMap<Monomial, Scalar>,
}

impl AlgebraElement {
    pub fn zero() -> Self {
        AlgebraElement::default()
    }

    pub fn monomial(m: Monomial, c: Scalar) -> Self {
        let mut x = AlgebraElement::zero();
        x.add_term(m, c);
        x
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, m: Monomial, c: Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            Entry::Occupied(mut e) => {
                let sum = &*e.get() + &c;
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
            Entry::Vacant(e) => {
                e.insert(c);
            }
        }
    }

    pub fn add(&self, other: &AlgebraElement) -> AlgebraElement {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &AlgebraElement) -> AlgebraElement {
        self.add(&other.scale(&-Scalar::one()))
    }

    pub fn scale(&self, c: &Scalar) -> AlgebraElement {
        let mut out = AlgebraElement::zero();
        for (m, d) in &self.terms {
            out.add_term(m.clone(), d * c);
        }
        out
    }

    pub fn neg(&self) -> AlgebraElement {
        self.scale(&-Scalar::one())
    }
}

impl Serialize for AlgebraElement {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Item<'a> {
            monomial: &'a Monomial,
            re: String,
            im: String,
        }
        s.collect_seq(self.terms.iter().map(|(monomial, c)| Item {
            monomial,
            re: rational_to_string(c.re()),
            im: rational_to_string(c.im()),
        }))
    }
}

/// Operator norm of a diagonal element: `max |λ_A|` over its atoms, kept exact as the
/// squared modulus, with the square root when it is rational.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DiagonalNorm {
    #[serde(serialize_with = "ser_rational")]
    pub squared: BigRational,
    #[serde(serialize_with = "ser_opt_rational")]
    pub value: Option<BigRational>,
}

fn ser_rational<S: Serializer>(r: &BigRational, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&rational_to_string(r))
}

fn ser_opt_rational<S: Serializer>(r: &Option<BigRational>, s: S) -> std::result::Result<S::Ok, S::Error> {
    match r {
        Some(r) => s.serialize_str(&rational_to_string(r)),
        None => s.serialize_none(),
    }
}

impl DiagonalNorm {
    fn from_squared(squared: BigRational) -> Self {
        let value = exact_sqrt(&squared);
        DiagonalNorm { squared, value }
    }
}

/// The algebra over a fixed group instance.
#[derive(Clone, Copy)]
pub struct Algebra<'g> {
    g: &'g dyn GroupInstance,
}

impl<'g> Algebra<'g> {
    pub fn new(g: &'g dyn GroupInstance) -> Self {
        Algebra { g }
    }

    pub fn group(&self) -> &'g dyn GroupInstance {
        self.g
    }

    /// Canonical form of `s*ⁿ u_a e_[x] u_b sᵐ`, or `None` when it is zero.
    pub fn canonicalize(&self, n: u32, a: &GroupElement, x: &Coset, b: &GroupElement, m: u32) -> Option<Monomial> {
        let g = self.g;
        let range = Coset::new(g, b, Lattice::phi_of_g(m));
        let gate = Coset::new(g, &g.invert(a), Lattice::phi_of_g(n));
        let eff = x.intersect(g, &range)?.intersect(g, &gate)?;
        let t = eff.rep.clone();
        let mut a = g.multiply(a, &t);
        let mut b = g.multiply(&g.invert(&t), b);
        let mut sub = eff.sub;
        let (mut n, mut m) = (n, m);
        while n > 0 && m > 0 {
            let (Some(a0), Some(b0), Some(l0)) =
                (g.phi_preimage(&a, 1), g.phi_preimage(&b, 1), sub.phi_preimage(1))
            else {
                break;
            };
            a = a0;
            b = b0;
            sub = l0;
            n -= 1;
            m -= 1;
        }
        let a2 = g.coset_rep(&a, &sub);
        let l = g.multiply(&g.invert(&a), &a2);
        let b = g.multiply(&g.invert(&l), &b);
        Some(Monomial { n, a: a2, sub, b, m })
    }

    pub fn from_raw(&self, n: u32, a: &GroupElement, x: &Coset, b: &GroupElement, m: u32) -> AlgebraElement {
        match self.canonicalize(n, a, x, b, m) {
            Some(mono) => AlgebraElement::monomial(mono, Scalar::one()),
            None => AlgebraElement::zero(),
        }
    }

    fn whole(&self) -> Coset {
        Coset::subgroup(Lattice::whole(), self.g)
    }

    pub fn one(&self) -> AlgebraElement {
        let e = self.g.identity();
        self.from_raw(0, &e, &self.whole(), &e, 0)
    }

    pub fn u(&self, x: &GroupElement) -> AlgebraElement {
        self.from_raw(0, x, &self.whole(), &self.g.identity(), 0)
    }

    pub fn s(&self) -> AlgebraElement {
        self.s_pow(1)
    }

    pub fn s_pow(&self, k: u32) -> AlgebraElement {
        let e = self.g.identity();
        self.from_raw(0, &e, &self.whole(), &e, k)
    }

    pub fn s_star(&self) -> AlgebraElement {
        self.s_star_pow(1)
    }

    pub fn s_star_pow(&self, k: u32) -> AlgebraElement {
        let e = self.g.identity();
        self.from_raw(k, &e, &self.whole(), &e, 0)
    }

    /// `e_[c]`, written as `u_t e_[L] u_{t⁻¹}` for `c = t·L`.
    pub fn proj(&self, c: &Coset) -> AlgebraElement {
        let e = self.g.identity();
        self.from_raw(0, &e, c, &e, 0)
    }

    pub fn proj_sub(&self, l: &Lattice) -> AlgebraElement {
        self.proj(&Coset::subgroup(l.clone(), self.g))
    }

    pub fn scalar(&self, c: Scalar) -> AlgebraElement {
        self.one().scale(&c)
    }

    pub fn mono_mul(&self, x: &Monomial, y: &Monomial) -> Option<Monomial> {
        let g = self.g;
        let c1 = g.multiply(&x.a, &x.b);
        let c2 = g.multiply(&y.a, &y.b);
        // e_[L1] u_{b1} = u_{b1} e_[b1⁻¹L1] and u_{a2} e_[L2] = e_[a2 L2] u_{a2}; the middle
        // e_[X1] s^{m1} s*^{n2} e_[Y2] becomes s*^{n2} e_[φ^{n2}X1 ∩ φ^{n2+m1}G ∩ φ^{m1}Y2] s^{m1}.
        let x1 = Coset::new(g, &g.invert(&x.b), x.sub.clone()).phi(g, y.n);
        let y2 = Coset::new(g, &y.a, y.sub.clone()).phi(g, x.m);
        let mid = Coset::subgroup(Lattice::phi_of_g(y.n + x.m), g);
        let z = x1.intersect(g, &mid)?.intersect(g, &y2)?;
        self.canonicalize(x.n + y.n, &g.phi_pow(&c1, y.n), &z, &g.phi_pow(&c2, x.m), x.m + y.m)
    }

    pub fn mul(&self, x: &AlgebraElement, y: &AlgebraElement) -> AlgebraElement {
        let mut out = AlgebraElement::zero();
        for (m1, c1) in &x.terms {
            for (m2, c2) in &y.terms {
                if let Some(m) = self.mono_mul(m1, m2) {
                    out.add_term(m, c1 * c2);
                }
            }
        }
        out
    }

    pub fn mul_all(&self, factors: &[AlgebraElement]) -> AlgebraElement {
        factors.iter().fold(self.one(), |acc, f| self.mul(&acc, f))
    }

    pub fn mono_adjoint(&self, x: &Monomial) -> Monomial {
        let g = self.g;
        let l = Coset::subgroup(x.sub.clone(), g);
        self.canonicalize(x.m, &g.invert(&x.b), &l, &g.invert(&x.a), x.n)
            .expect("adjoint of a nonzero monomial is nonzero")
    }

    pub fn adjoint(&self, x: &AlgebraElement) -> AlgebraElement {
        let mut out = AlgebraElement::zero();
        for (m, c) in &x.terms {
            out.add_term(self.mono_adjoint(m), c.conj());
        }
        out
    }

    pub fn is_self_adjoint(&self, x: &AlgebraElement) -> bool {
        &self.adjoint(x) == x
    }

    /// `u_g sⁿ · x · s*ⁿ u_{g⁻¹}`.
    pub fn act_alpha(&self, p: &SemigroupElement, x: &AlgebraElement) -> AlgebraElement {
        let v = self.mul(&self.u(&p.g), &self.s_pow(p.n));
        self.mul(&self.mul(&v, x), &self.adjoint(&v))
    }

    /// `(φ̄^{-n}(a·b), m−n)` in the enveloping group.
    pub fn degree(&self, x: &Monomial) -> EnvElement {
        env_normalize(
            self.g,
            &EnvElement { g: self.g.multiply(&x.a, &x.b), level: x.n, z: x.m as i64 - x.n as i64 },
        )
    }

    pub fn is_diagonal_monomial(&self, x: &Monomial) -> bool {
        self.degree(x) == env_identity(self.g)
    }

    pub fn theta(&self, x: &AlgebraElement) -> AlgebraElement {
        AlgebraElement {
            terms: x
                .terms
                .iter()
                .filter(|(m, _)| self.is_diagonal_monomial(m))
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    /// The coset `a·L` of a diagonal monomial `(0, a, L, a⁻¹, 0) = e_[aL]`.
    pub fn diagonal_coset(&self, x: &Monomial) -> Result<Coset> {
        if !self.is_diagonal_monomial(x) {
            return Err(Error::NotDiagonal(self.render_monomial(x)));
        }
        if x.n == 0 {
            return Ok(Coset::new(self.g, &x.a, x.sub.clone()));
        }
        // s*ⁿ e_[aL] sⁿ = e_[φ^{-n}(aL)] when the descriptor could not be depth-reduced.
        let a0 = self.g.phi_preimage(&x.a, x.n);
        let l0 = x.sub.phi_preimage(x.n);
        match (a0, l0) {
            (Some(a0), Some(l0)) => Ok(Coset::new(self.g, &a0, l0)),
            _ => Err(Error::NotDiagonal(self.render_monomial(x))),
        }
    }

    /// Diagonal `x` as `Σ c_i 1_{C_i}`.
    pub fn diagonal_parts(&self, x: &AlgebraElement) -> Result<Vec<(Coset, Scalar)>> {
        x.terms.iter().map(|(m, c)| Ok((self.diagonal_coset(m)?, c.clone()))).collect()
    }

    /// Atom coefficients `λ_A` of a diagonal element, in atom order.
    pub fn diagonal_spectrum(&self, x: &AlgebraElement) -> Result<Vec<(crate::lattice::Atom, Scalar)>> {
        let parts = self.diagonal_parts(x)?;
        let cosets: Vec<Coset> = parts.iter().map(|p| p.0.clone()).collect();
        let atoms = orthogonalize(self.g, &cosets)?;
        Ok(atoms
            .into_iter()
            .map(|a| {
                let mut lambda = Scalar::zero();
                for &i in &a.members {
                    lambda = &lambda + &parts[i].1;
                }
                (a, lambda)
            })
            .collect())
    }

    pub fn diagonal_norm(&self, x: &AlgebraElement) -> Result<DiagonalNorm> {
        let mut best = BigRational::zero();
        for (_, lambda) in self.diagonal_spectrum(x)? {
            let n = lambda.norm_sqr();
            if n > best {
                best = n;
            }
        }
        debug_assert!(!best.is_negative());
        Ok(DiagonalNorm::from_squared(best))
    }

    /// Partial map of a monomial on basis vectors.
    pub fn apply_monomial(&self, x: &Monomial, k: &GroupElement) -> Option<GroupElement> {
        let g = self.g;
        let y = g.multiply(&x.b, &g.phi_pow(k, x.m));
        if !g.member(&y, &x.sub) {
            return None;
        }
        g.phi_preimage(&g.multiply(&x.a, &y), x.n)
    }

    /// Text form accepted by the expression parser; `e[L]` is left out when the gates of
    /// `u_a`, `u_b`, `s` and `s*` already imply it.
    pub fn render_monomial(&self, x: &Monomial) -> String {
        let e = self.g.identity();
        let elem = |g: &GroupElement| {
            let t = g.to_string();
            format!("u{{{}}}", t.trim_start_matches('{').trim_end_matches('}'))
        };
        let mut parts = Vec::new();
        match x.n {
            0 => {}
            1 => parts.push("s*".to_string()),
            k => parts.push(format!("s*^{k}")),
        }
        if x.a != e {
            parts.push(elem(&x.a));
        }
        let implied = self.canonicalize(x.n, &x.a, &self.whole(), &x.b, x.m).as_ref() == Some(x);
        if !implied {
            parts.push(format!("e[{}]", x.sub.display(self.g)));
        }
        if x.b != e {
            parts.push(elem(&x.b));
        }
        match x.m {
            0 => {}
            1 => parts.push("s".to_string()),
            k => parts.push(format!("s^{k}")),
        }
        if parts.is_empty() {
            "1".to_string()
        } else {
            parts.join(" ")
        }
    }

    pub fn render(&self, x: &AlgebraElement) -> String {
        if x.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (i, (m, c)) in x.terms.iter().enumerate() {
            if i > 0 {
                out.push_str(" + ");
            }
            let body = self.render_monomial(m);
            if c == &Scalar::one() {
                out.push_str(&body);
            } else if body == "1" {
                let _ = write!(out, "({c})");
            } else {
                let _ = write!(out, "({c}) {body}");
            }
        }
        out
    }
}
