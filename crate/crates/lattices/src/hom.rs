//! Intertwiners, fixed sublattices and norm elements.

use std::sync::Arc;

use exact_linalg::{left_kernel_basis, IntMat};
use matgroups::Subgroup;
use num_bigint::BigInt;

use crate::lattice::GLattice;

/// Saturated basis of `Hom_G(M1, M2) = { P : a1(g) P = P a2(g) }`, the
/// integer matrices intertwining the two actions. Row-vectorizing turns each
/// generator constraint into `vec(P) * (a1(g)^T kron I - I kron a2(g)) = 0`,
/// so the basis is the left kernel of those blocks stacked side by side.
/// Commuting with the generators forces commuting with every element.
pub fn hom_basis(m1: &GLattice, m2: &GLattice) -> Vec<IntMat> {
    assert!(
        Arc::ptr_eq(m1.group(), m2.group()),
        "hom_basis needs both lattices over the same group"
    );
    let (r1, r2) = (m1.rank(), m2.rank());
    if r1 == 0 || r2 == 0 {
        return Vec::new();
    }
    let id1 = IntMat::identity(r1);
    let id2 = IntMat::identity(r2);
    let blocks: Vec<IntMat> = m1
        .group()
        .generator_indices()
        .iter()
        .map(|&g| {
            m1.act(g)
                .transpose()
                .kron(&id2)
                .sub(&id1.kron(m2.act(g)))
        })
        .collect();
    if blocks.is_empty() {
        // trivial group: every matrix intertwines
        return (0..r1 * r2)
            .map(|k| {
                let mut m = IntMat::zero(r1, r2);
                m.set(k / r2, k % r2, 1.into());
                m
            })
            .collect();
    }
    let refs: Vec<&IntMat> = blocks.iter().collect();
    let basis = left_kernel_basis(&IntMat::hstack(&refs));
    (0..basis.rows())
        .map(|i| unvec(basis.row_slice(i), r1, r2))
        .collect()
}

fn unvec(row: &[BigInt], r1: usize, r2: usize) -> IntMat {
    let mut m = IntMat::zero(r1, r2);
    for i in 0..r1 {
        for j in 0..r2 {
            m.set(i, j, row[i * r2 + j].clone());
        }
    }
    m
}

/// Saturated basis (rows) of the sublattice fixed pointwise by a subgroup:
/// `{ v : v a(s) = v }` for the subgroup's generators.
pub fn fixed_sublattice(m: &GLattice, sub: &Subgroup) -> IntMat {
    let r = m.rank();
    if sub.gens.is_empty() || r == 0 {
        return IntMat::identity(r);
    }
    let id = IntMat::identity(r);
    let blocks: Vec<IntMat> =
        sub.gens.iter().map(|&s| m.act(s).sub(&id)).collect();
    let refs: Vec<&IntMat> = blocks.iter().collect();
    left_kernel_basis(&IntMat::hstack(&refs))
}

/// Norm of a subgroup on the lattice: the sum of the action matrices over
/// all subgroup elements.
pub fn norm_element(m: &GLattice, sub: &Subgroup) -> IntMat {
    let mut n = IntMat::zero(m.rank(), m.rank());
    for h in sub.elems.iter() {
        n = n.add(m.act(h));
    }
    n
}
