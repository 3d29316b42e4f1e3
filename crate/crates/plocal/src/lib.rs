//! Endomorphism rings of lattices reduced mod p, with idempotent
//! enumeration, Jacobson radicals, and indecomposability certificates.
//!
//! The local analysis answers one question: can the p-adic completion of a
//! lattice split off a direct summand? A nontrivial idempotent of
//! `End(M)/p` exhibits a splitting; a local endomorphism ring (radical of
//! codimension 1) or an exhaustive enumeration finding only `{0, 1}` rules
//! every splitting out.

pub mod algebra;
pub mod idempotents;
pub mod indec;
pub mod radical;

pub use algebra::{endo_mod_p, FpAlgebra};
pub use idempotents::{idempotents_mod_p, PlocalError, DEFAULT_IDEMPOTENT_CAP};
pub use indec::{
    decide_from_algebra, indecomposable_mod_p, indecomposable_with_cap,
    Indecomposability,
};
pub use radical::{
    brute_force_radical, element_count, radical, radical_codim1, BRUTE_FORCE_CAP,
};
