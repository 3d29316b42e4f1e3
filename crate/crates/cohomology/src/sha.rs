//! Kernels of restriction to cyclic subgroups.
//!
//! `sha_omega1` is the subgroup of `H^1(G, M)` of classes that die on every
//! cyclic subgroup; `sha_omega2` is the same in degree two, computed through
//! the coinduced shift. A class vanishes on a cyclic subgroup exactly when
//! its value on a generator g0 lies in the row span of `a(g0) - I`, which
//! turns membership into one auxiliary linear system per cyclic class.

use exact_linalg::{
    lattice_intersection, left_kernel_basis, nonzero_hnf_rows, solve_left,
    AbInv, IntMat,
};
use lattices::GLattice;
use matgroups::{FinGroup, SubgroupCatalog};

use crate::cocycle::{cocycle_data, finite_quotient};
use crate::shift::coinduced_shift;

/// Least element index generating the subgroup when it is cyclic.
pub fn cyclic_generator(
    g: &impl FinGroup,
    cls: &matgroups::SubgroupClass,
) -> Option<usize> {
    cls.rep
        .elems
        .iter()
        .find(|&e| g.element_order(e) == cls.order)
}

/// Classes in `H^1(G, M)` restricting to zero on every cyclic subgroup.
pub fn sha_omega1(m: &GLattice, catalog: &SubgroupCatalog) -> AbInv {
    let g = m.group();
    let data = cocycle_data(m);
    let k = data.z1.rows();
    if k == 0 {
        return AbInv::trivial();
    }
    let r = m.rank();
    let mut survivors = IntMat::identity(k);
    for cls in &catalog.classes {
        if cls.order == 1 {
            continue;
        }
        let Some(g0) = cyclic_generator(g.as_ref(), cls) else {
            continue;
        };
        // t survives <=> t * (z1 L_g0) = y * (a(g0) - I) for some y
        let a = data.z1.mul(&data.l[g0]);
        let rmat = m.act(g0).sub(&IntMat::identity(r));
        let w = IntMat::vstack(&[&a, &rmat.neg()]);
        let ker = left_kernel_basis(&w);
        if ker.rows() == 0 {
            survivors = IntMat::zero(0, k);
            break;
        }
        let tpart = ker.submatrix(0, ker.rows(), 0, k);
        survivors = lattice_intersection(&survivors, &nonzero_hnf_rows(&tpart));
        if survivors.rows() == 0 {
            break;
        }
    }
    if survivors.rows() == 0 {
        return AbInv::trivial();
    }
    let coords = solve_left(&survivors, &data.b1_coords)
        .expect("coboundaries restrict to coboundaries on every subgroup");
    finite_quotient(&coords)
}

/// Classes in `H^2(G, M)` restricting to zero on every cyclic subgroup,
/// via the coinduced shift (which commutes with restriction).
pub fn sha_omega2(m: &GLattice, catalog: &SubgroupCatalog) -> AbInv {
    sha_omega1(&coinduced_shift(m), catalog)
}
