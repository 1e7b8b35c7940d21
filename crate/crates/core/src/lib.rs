//! Exact symbolic engine for the universal C*-algebra generated by a group `G`, an
//! injective endomorphism `φ` of it and a family `B` of subgroups: normal forms in the
//! dense *-algebra, the conditional expectation onto the diagonal, coset-lattice
//! combinatorics, the Ore semigroup `G ⋊_φ ℕ`, pure-infiniteness certificates and the
//! K-theory shift, cross-checked against the regular representation on finite windows.

pub mod algebra;
pub mod certificate;
pub mod cli;
pub mod error;
pub mod expr;
pub mod group;
pub mod ktheory;
pub mod lattice;
pub mod sample;
pub mod scalar;
pub mod semigroup;
pub mod suites;
pub mod window;

pub use error::{Error, Result};
