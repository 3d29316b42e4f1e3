//! Flabby resolutions of G-lattices and the invariants they carry.
//!
//! Every lattice M sits in a short exact sequence 0 → M → P → F → 0 with P a
//! permutation lattice and F flabby; the class of F up to stable isomorphism
//! is the flabby class [M]^fl. This crate builds such resolutions (with an
//! optional greedy rank-reduction pass), derives the invariant tuple
//! [l1, l2, l3, l4] that classifies the stable type of the class, and
//! reports its behaviour at a single prime via Sylow restriction and mod-p
//! indecomposability certificates.

pub mod invariants;
pub mod oracle;
pub mod ppart;
pub mod resolution;

pub use invariants::{torus_invariants, TiOptions, TorusInvariants, L1};
pub use oracle::ResolutionOracle;
pub use ppart::{p_part_report, PPartReport};
pub use resolution::{
    flabby_resolution, second_flabby, FlabbyOptions, FlabbyResolution,
};
