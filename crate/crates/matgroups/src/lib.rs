//! Finite integral matrix groups.
//!
//! [`MatGroup`] closes a set of unimodular generators into a full element
//! list with a canonical order, multiplication table and word DAG. On top of
//! that sit subgroup conjugacy-class catalogs ([`SubgroupCatalog`]),
//! quotients, automorphism groups, and Goursat-style subdirect-product
//! enumeration ([`SubdirectProduct`]); everything abstract is also available
//! for plain multiplication-table groups through the [`FinGroup`] trait.

mod auto;
mod bitset;
mod cosets;
mod fingroup;
mod goursat;
mod group;
mod structure;
mod subgroups;

pub use auto::{automorphisms, inner_count, Automorphism};
pub use bitset::BitSet;
pub use cosets::{
    coset_orbit_sizes, coset_perm, fixed_coset_count, right_cosets,
};
pub use fingroup::{
    abelian_invariants, abelianization, closure_from_gens, conjugate_subgroup,
    derived_subgroup, element_conjugacy_classes, isomorphisms, quotient_table,
    small_generating_set, subgroup_table, FinGroup, TableGroup,
};
pub use goursat::{
    direct_product_matgroup, goursat_subdirect_products, pair_group_table,
    project_left, project_right, subdirect_products_brute, validate_subdirect,
    PairGroup, SubdirectProduct,
};
pub use group::{GroupError, MatGroup, DEFAULT_ELEMENT_CAP};
pub use structure::structure_name;
pub use subgroups::{
    all_subgroups, centre, maximal_invariant_normal_subgroup, normal_subgroups,
    subgroup_catalog, sylow, Subgroup, SubgroupCatalog, SubgroupClass,
};

/// Quotient of a matrix group by a normal subgroup: coset table plus the
/// coset index of every parent element.
pub struct QuotientGroup {
    pub group: TableGroup,
    pub coset_of: Vec<usize>,
    pub cosets: Vec<Vec<usize>>,
}

#[derive(thiserror::Error, Debug)]
pub enum QuotientError {
    #[error("subgroup is not normal")]
    NotNormal,
}

pub fn quotient(
    g: &impl FinGroup,
    n: &Subgroup,
) -> Result<QuotientGroup, QuotientError> {
    if !n.is_normal(g) {
        return Err(QuotientError::NotNormal);
    }
    let (group, coset_of, cosets) = quotient_table(g, &n.elems);
    Ok(QuotientGroup { group, coset_of, cosets })
}

impl FinGroup for QuotientGroup {
    fn order(&self) -> usize {
        self.group.order()
    }
    fn id(&self) -> usize {
        self.group.id()
    }
    fn mul(&self, a: usize, b: usize) -> usize {
        self.group.mul(a, b)
    }
    fn inv(&self, a: usize) -> usize {
        self.group.inv(a)
    }
}
