//! Permutation lattices Z[H\G] built from right cosets, direct sums of
//! them, and the Chevalley-style lattice attached to a coset space.

use std::sync::Arc;

use exact_linalg::IntMat;
use matgroups::{right_cosets, FinGroup, MatGroup, SubgroupCatalog};

use crate::lattice::{dual, sublattice_action, GLattice};

/// One permutation summand Z[H\G]: which catalog class it came from, where
/// its block sits inside the big lattice, and the coset partition behind the
/// basis (basis vector j of the block corresponds to `cosets[j]`).
#[derive(Clone)]
pub struct PermSummand {
    pub class: usize,
    pub offset: usize,
    pub rank: usize,
    pub cosets: Vec<Vec<usize>>,
    pub coset_of: Vec<usize>,
}

/// A direct sum of coset lattices, with the combinatorial data kept around
/// so traces, fixed ranks and orbit counts can be read off the cosets.
#[derive(Clone)]
pub struct PermLattice {
    pub lattice: GLattice,
    pub summands: Vec<PermSummand>,
}

impl PermLattice {
    pub fn rank(&self) -> usize {
        self.lattice.rank()
    }
}

/// Z[H\G] for one subgroup class, as a block of a (possibly larger) sum.
fn summand_data(
    group: &MatGroup,
    catalog: &SubgroupCatalog,
    class: usize,
    offset: usize,
) -> PermSummand {
    let h = &catalog.classes[class].rep;
    let (cosets, coset_of) = right_cosets(group, &h.elems);
    PermSummand { class, offset, rank: cosets.len(), cosets, coset_of }
}

/// Direct sum of permutation lattices `Z[H\G]` over the listed subgroup
/// classes (repetition allowed; block order follows the list).
pub fn perm_lattice_sum(
    group: &Arc<MatGroup>,
    catalog: &SubgroupCatalog,
    classes: &[usize],
) -> PermLattice {
    let mut summands = Vec::with_capacity(classes.len());
    let mut offset = 0;
    for &c in classes {
        let s = summand_data(group, catalog, c, offset);
        offset += s.rank;
        summands.push(s);
    }
    let total = offset;
    let n = group.order();
    let mut action = Vec::with_capacity(n);
    for e in 0..n {
        let mut m = IntMat::zero(total, total);
        for s in &summands {
            for j in 0..s.rank {
                let img = s.coset_of[group.mul(s.cosets[j][0], e)];
                m.set(s.offset + j, s.offset + img, 1.into());
            }
        }
        action.push(m);
    }
    let tag = classes
        .iter()
        .map(|c| format!("Z[G/H{c}]"))
        .collect::<Vec<_>>()
        .join(" + ");
    let lattice = GLattice::from_action(group.clone(), action, tag)
        .expect("coset permutations form a representation");
    PermLattice { lattice, summands }
}

/// The single-summand coset lattice Z[H\G].
pub fn permutation_lattice(
    group: &Arc<MatGroup>,
    catalog: &SubgroupCatalog,
    class: usize,
) -> PermLattice {
    perm_lattice_sum(group, catalog, &[class])
}

/// Chevalley-style lattice of a coset space: the dual of the augmentation
/// kernel of Z[H\G] -> Z. Rank is one less than the number of cosets.
pub fn chevalley(
    group: &Arc<MatGroup>,
    catalog: &SubgroupCatalog,
    class: usize,
) -> GLattice {
    let p = permutation_lattice(group, catalog, class);
    let r = p.rank();
    // augmentation kernel basis: rows e_i - e_{r-1}, i = 0..r-1
    let mut basis = IntMat::zero(r.saturating_sub(1), r);
    for i in 0..r.saturating_sub(1) {
        basis.set(i, i, 1.into());
        basis.set(i, r - 1, (-1).into());
    }
    let aug_kernel = sublattice_action(&p.lattice, &basis)
        .expect("augmentation kernel is stable");
    dual(&aug_kernel).with_tag(format!("J[G/H{class}]"))
}
