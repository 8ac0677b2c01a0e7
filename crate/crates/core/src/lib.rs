//! Exact arithmetic in the two-generator free group modulo terms of its lower
//! central series, and the Baer-invariants `N_c M(G)` of nilpotent products of
//! two cyclic groups built on top of it.
//!
//! The crate is `no_std` and only needs `alloc`. Everything here is a pure
//! function over immutable values; IO, the command line and file formats live
//! in the `baer` companion crate.
//!
//! Layering, bottom-up:
//!
//! * [`word`] and [`expr`]: reduced words in `F = <x, y>` and commutator
//!   expressions over them.
//! * [`magnus`]: truncated noncommutative power series and the Magnus
//!   embedding, which decides membership in `γ_k(F)`.
//! * [`lyndon`]: basic commutators as bracketed Lyndon words, Witt ranks and
//!   Lie coordinates.
//! * [`nilform`]: exponent coordinates of elements of `γ_w(F)/γ_{k+1}(F)`.
//! * [`intlin`] and [`abelian`]: Smith normal form and finite abelian groups.
//! * [`baer`]: generators of `ρ_{c+1}(S)`, Baer-invariants, closed-form
//!   predictions and congruence checks.
#![no_std]
#![warn(missing_docs)]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod abelian;
pub mod baer;
pub mod expr;
pub mod intlin;
pub mod lyndon;
pub mod magnus;
pub mod nilform;
pub mod word;

pub use abelian::AbelianStructure;
pub use baer::{BaerError, ProblemSpec};
pub use expr::CommutatorExpr;
pub use magnus::{LcsClass, TruncatedSeries};
pub use word::{Generator, Letter, Word};

/// Arbitrary-precision integer used for every coefficient and exponent.
pub type Int = num_bigint::BigInt;

/// Largest nilpotency class (Magnus degree cap) any computation may request.
///
/// On two letters a series truncated at degree 12 already has 8191 monomials.
pub const MAX_CAP: usize = 12;
