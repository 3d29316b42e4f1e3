//! Tate cohomology in degrees 0 and -1, straight from the definitions.

use exact_linalg::{left_kernel_basis, solve_left, AbInv, IntMat};
use lattices::{fixed_sublattice, norm_element, GLattice};
use matgroups::Subgroup;

use crate::cocycle::finite_quotient;

/// Degree-zero Tate cohomology of a subgroup: fixed vectors modulo norms,
/// `M^H / (M * N_H)`.
pub fn tate_h0(m: &GLattice, sub: &Subgroup) -> AbInv {
    let fixed = fixed_sublattice(m, sub);
    if fixed.rows() == 0 {
        return AbInv::trivial();
    }
    let n = norm_element(m, sub);
    let coords = solve_left(&fixed, &n)
        .expect("norm images are fixed vectors and the fixed basis is saturated");
    finite_quotient(&coords)
}

/// Degree minus-one Tate cohomology of a subgroup: the norm kernel modulo
/// the span of `v (a(s) - I)` over the subgroup's generators.
pub fn tate_hm1(m: &GLattice, sub: &Subgroup) -> AbInv {
    let n = norm_element(m, sub);
    let kernel = left_kernel_basis(&n);
    if kernel.rows() == 0 {
        return AbInv::trivial();
    }
    let r = m.rank();
    let id = IntMat::identity(r);
    let diffs: Vec<IntMat> =
        sub.gens.iter().map(|&s| m.act(s).sub(&id)).collect();
    if diffs.is_empty() {
        // only the trivial subgroup has no generators; its norm is the
        // identity, so the kernel above was already empty
        return AbInv::trivial();
    }
    let refs: Vec<&IntMat> = diffs.iter().collect();
    let d = IntMat::vstack(&refs);
    let coords = solve_left(&kernel, &d)
        .expect("augmentation images lie in the norm kernel");
    finite_quotient(&coords)
}
