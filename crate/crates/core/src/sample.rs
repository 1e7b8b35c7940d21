//! Seeded random generators for elements, lattices, monomials and self-adjoint elements.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::{Algebra, AlgebraElement, Monomial};
use crate::group::{GroupElement, GroupInstance};
use crate::lattice::{BaseId, Coset, Lattice, Term};
use crate::scalar::Scalar;
use crate::semigroup::SemigroupElement;

pub const DEFAULT_SEED: u64 = 0x5eed_2024;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Draws from a fixed pool of elements (usually a ball) plus the lattice depths used for
/// subgroups and powers of `s`.
pub struct Sampler<'a> {
    pub grp: &'a dyn GroupInstance,
    pub pool: Vec<GroupElement>,
    pub max_power: u32,
    pub lattice_depth: u32,
}

impl<'a> Sampler<'a> {
    pub fn new(grp: &'a dyn GroupInstance, pool: Vec<GroupElement>, max_power: u32, lattice_depth: u32) -> Self {
        assert!(!pool.is_empty(), "empty sample pool");
        Sampler { grp, pool, max_power, lattice_depth }
    }

    pub fn element<R: Rng>(&self, rng: &mut R) -> GroupElement {
        self.pool.choose(rng).expect("nonempty pool").clone()
    }

    pub fn semigroup<R: Rng>(&self, rng: &mut R) -> SemigroupElement {
        SemigroupElement::new(self.element(rng), rng.gen_range(0..=self.max_power))
    }

    /// A random member of `B'`: an intersection of up to two `φⁿ(K)`, `K ∈ B`.
    pub fn lattice<R: Rng>(&self, rng: &mut R) -> Lattice {
        let nbases = self.grp.bases().len() as u8;
        let count = rng.gen_range(1..=2);
        let terms = (0..count)
            .map(|_| Term { n: rng.gen_range(0..=self.lattice_depth), base: BaseId(rng.gen_range(0..=nbases)) })
            .collect();
        Lattice::canonical(self.grp, terms)
    }

    pub fn coset<R: Rng>(&self, rng: &mut R) -> Coset {
        Coset::new(self.grp, &self.element(rng), self.lattice(rng))
    }

    pub fn monomial<R: Rng>(&self, alg: &Algebra<'_>, rng: &mut R) -> Monomial {
        loop {
            let n = rng.gen_range(0..=self.max_power);
            let m = rng.gen_range(0..=self.max_power);
            let a = self.element(rng);
            let b = self.element(rng);
            let x = self.coset(rng);
            if let Some(mono) = alg.canonicalize(n, &a, &x, &b, m) {
                return mono;
            }
        }
    }

    pub fn scalar<R: Rng>(&self, rng: &mut R) -> Scalar {
        let re = Scalar::ratio(rng.gen_range(-3..=3), rng.gen_range(1..=3));
        if rng.gen_bool(0.25) {
            &re + &(&Scalar::i() * &Scalar::from_int(rng.gen_range(-2..=2)))
        } else {
            re
        }
    }

    pub fn element_sum<R: Rng>(&self, alg: &Algebra<'_>, rng: &mut R, terms: usize) -> AlgebraElement {
        let mut out = AlgebraElement::zero();
        for _ in 0..terms {
            out.add_term(self.monomial(alg, rng), self.scalar(rng));
        }
        out
    }

    /// `y + y* + c·e_[C]` with a nonzero real `c`, so the diagonal part is rarely zero.
    pub fn self_adjoint<R: Rng>(&self, alg: &Algebra<'_>, rng: &mut R, terms: usize) -> AlgebraElement {
        let y = self.element_sum(alg, rng, terms);
        let mut c = 0;
        while c == 0 {
            c = rng.gen_range(-3..=3);
        }
        let d = alg.proj(&self.coset(rng)).scale(&Scalar::from_int(c));
        y.add(&alg.adjoint(&y)).add(&d)
    }
}
