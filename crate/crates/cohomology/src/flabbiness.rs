//! Flabby / coflabby predicates, checked over a full catalog of subgroup
//! classes (cohomology only depends on the conjugacy class).

use exact_linalg::AbInv;
use lattices::{restrict, GLattice};
use matgroups::{abelianization, FinGroup, MatGroup, SubgroupCatalog};

use crate::cocycle::h1;
use crate::tate::tate_hm1;

/// Flabby: degree minus-one Tate cohomology vanishes for every subgroup.
pub fn is_flabby(m: &GLattice, catalog: &SubgroupCatalog) -> bool {
    catalog
        .classes
        .iter()
        .all(|cls| tate_hm1(m, &cls.rep).is_trivial())
}

/// Coflabby: first cohomology vanishes for every subgroup.
pub fn is_coflabby(m: &GLattice, catalog: &SubgroupCatalog) -> bool {
    let g = m.group();
    catalog.classes.iter().all(|cls| {
        if cls.order == 1 {
            true
        } else if cls.order == g.order() {
            h1(m).is_trivial()
        } else {
            h1(&restrict(m, &cls.rep)).is_trivial()
        }
    })
}

/// `H^1(H, M)` for every subgroup class, in catalog order.
pub fn h1_class_vector(
    m: &GLattice,
    catalog: &SubgroupCatalog,
) -> Vec<AbInv> {
    let g = m.group();
    catalog
        .classes
        .iter()
        .map(|cls| {
            if cls.order == 1 {
                AbInv::trivial()
            } else if cls.order == g.order() {
                h1(m)
            } else {
                h1(&restrict(m, &cls.rep))
            }
        })
        .collect()
}

/// Second cohomology of a coset lattice `Z[H\G]` without any cocycle work:
/// it is the abelianization of H.
pub fn h2_perm_class(
    group: &MatGroup,
    catalog: &SubgroupCatalog,
    class: usize,
) -> AbInv {
    abelianization(group, &catalog.classes[class].rep.elems)
}
