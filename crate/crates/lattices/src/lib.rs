//! G-lattices: free Z-modules with a right action of a finite integral
//! matrix group.
//!
//! [`GLattice`] stores one unimodular matrix per group element and checks the
//! homomorphism property on construction. Constructors cover the natural
//! lattice of a matrix group, permutation lattices from right cosets
//! ([`PermLattice`]), duals, direct sums, restrictions, twists by
//! automorphisms, stable sublattices and Chevalley-style lattices. The
//! companion functions compute intertwiner spaces ([`hom_basis`]), fixed
//! sublattices and norm elements.

mod hom;
mod lattice;
mod perm;

pub use hom::{fixed_sublattice, hom_basis, norm_element};
pub use lattice::{
    direct_sum, dual, lattice_of_group, restrict, sublattice_action,
    trivial_lattice, twist, zero_lattice, GLattice, LatticeError,
};
pub use perm::{
    chevalley, perm_lattice_sum, permutation_lattice, PermLattice,
    PermSummand,
};
