//! Permutation groups: stabiliser chains, classes, normal structure and a
//! small-group isomorphism test.

mod chain;
mod group;
mod iso;
mod perm;

pub use chain::StabChain;
pub use group::{alternating, symmetric, ConjugacyClass, PermGroup};
pub use iso::{iso_small, Invariants, IsoResult, Isomorphism};
pub use perm::Perm;
