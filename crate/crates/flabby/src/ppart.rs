//! Behaviour of the flabby class at a single prime: restrict to a Sylow
//! p-subgroup, resolve there, and certify indecomposability of the
//! restricted quotient with the mod-p endomorphism machinery.

use lattices::{restrict, GLattice};
use matgroups::{subgroup_catalog, sylow, SubgroupCatalog};
use plocal::{indecomposable_mod_p, Indecomposability};

use crate::resolution::{flabby_resolution, FlabbyOptions};

/// What the prime `p` sees of the flabby class of a lattice.
#[derive(Clone)]
pub struct PPartReport {
    pub p: u64,
    /// Order of the Sylow p-subgroup used for the restriction.
    pub sylow_order: usize,
    /// Class index of that Sylow subgroup in the parent catalog.
    pub sylow_class: usize,
    /// Quotient of the flabby resolution of the restricted lattice,
    /// a lattice over the standalone Sylow group.
    pub f_restricted: GLattice,
    pub f_rank: usize,
    /// Verdict of the mod-p splitting test on `f_restricted`.
    pub indecomposable: Indecomposability,
    /// Whether `f_restricted` is a faithful lattice for the Sylow group.
    pub faithful: bool,
    /// Rank of the p-part: equal to `f_rank` when the indecomposability
    /// certificate succeeds, 0 when p does not divide the group order, and
    /// undetermined otherwise (a splitting could shed permutation summands).
    pub npart_rank: Option<usize>,
}

/// Restrict `m` to a Sylow p-subgroup, build a flabby resolution over that
/// subgroup, and run the faithfulness and mod-p indecomposability checks on
/// its quotient.
pub fn p_part_report(
    m: &GLattice,
    catalog: &SubgroupCatalog,
    p: u64,
    opts: &FlabbyOptions,
) -> PPartReport {
    let g = m.group().clone();
    let sy = sylow(g.as_ref(), catalog, p as usize);
    let sylow_class = catalog
        .class_of(&sy.elems)
        .expect("Sylow subgroup appears in the catalog");
    let sylow_order = sy.order;
    let m_res = restrict(m, &sy);
    let hcat = subgroup_catalog(m_res.group().as_ref());
    let f = flabby_resolution(&m_res, &hcat, opts).f;
    let f_rank = f.rank();
    let indecomposable = indecomposable_mod_p(&f, p);
    let (faithful, npart_rank) = if sylow_order == 1 {
        (true, Some(0))
    } else {
        let nr = if indecomposable.is_yes() { Some(f_rank) } else { None };
        (f.is_faithful(), nr)
    };
    PPartReport {
        p,
        sylow_order,
        sylow_class,
        f_restricted: f,
        f_rank,
        indecomposable,
        faithful,
        npart_rank,
    }
}
