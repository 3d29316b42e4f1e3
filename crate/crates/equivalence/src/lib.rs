//! Deciding and refuting stable isomorphism of lattices over a finite
//! integral matrix group.
//!
//! The pipeline has three sound layers:
//!
//! 1. **Screening** ([`possibility_basis`]): additive invariants (traces,
//!    fixed ranks, Tate summand counts) of both sides must balance against
//!    permutation summands; the integer solution lattice of that system
//!    either rules out every candidate shape or nominates one.
//! 2. **Certificates** ([`certificate_space`], [`combo_search`]): a
//!    unimodular element of the intertwiner space between the two assembled
//!    sides proves isomorphism; [`verify_certificate`] re-checks every
//!    claimed witness.
//! 3. **Mod-p refutation** ([`modp_obstruction`]): when every integral
//!    intertwiner is singular modulo a prime, no base change of determinant
//!    ±1 exists.
//!
//! [`stably_equivalent_decision`] wires the layers together and never
//! asserts beyond what a certificate or obstruction backs up. On top sit
//! the twist classification ([`aut_glnz`], [`aut_classes`]) and the
//! subdirect-product screen ([`wsec_screen`]).

pub mod autos;
pub mod decide;
pub mod modp;
pub mod possibility;
pub mod screen;
pub mod search;
pub mod space;

pub use autos::{
    aut_classes, aut_glnz, lattice_iso_search, small_degree_test, z_membership,
    AutClasses, AutOptions, FlabbyOracle, IsoStatus, YStatus,
};
pub use decide::{
    prime_divisors, stably_equivalent_decision, CertificateP, DecisionOptions,
    DecisionReport, StableDecision,
};
pub use modp::{modp_obstruction, ModpVerdict};
pub use possibility::{
    choose_solution, possibility_basis, side_split, PossibilityBasis,
    PossibilityOptions, PossibilityStatus, SideDescriptor,
};
pub use screen::{screen_product, wsec_screen, ScreenOutcome};
pub use search::{
    affine_det_probe, block_search, combo_search, is_primitive, merge_blocks,
    BlockStrategy, ComboWitness, ProbeMode, ProbeResult, SearchBudget,
};
pub use space::{
    assemble_side, certificate_space, coordinate_components, row_blocks,
    verify_certificate, verify_intertwiner, CertificateSpace, RowBlocks,
};
