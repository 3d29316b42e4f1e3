//! First cohomology through explicit cocycles.
//!
//! A 1-cocycle is a map `c: G -> M` with `c(gh) = c(g) a(h) + c(h)` (right
//! action). Its values are determined by the values on the generators, so a
//! cocycle is a row vector `X` of length `u = #gens * rank`, and the value at
//! any element e is `X * L_e` for matrices `L` built along the word DAG:
//! `L_id = 0`, `L_(p g) = L_p a(g) + E_g`, with `E_g` the block injection of
//! the unknown for generator g. Imposing the cocycle identity on every
//! (element, generator) pair forces it for all products.

use exact_linalg::{
    left_kernel_intersection, row_cokernel_invariants, solve_left, AbInv,
    IntMat,
};
use lattices::GLattice;
use matgroups::FinGroup;

/// The linear algebra behind `H^1(G, M)`: the value matrices `L`, a
/// saturated basis of the cocycle space, and the coboundaries expressed in
/// that basis.
pub struct CocycleData {
    /// number of unknowns, `#gens * rank`
    pub unknowns: usize,
    /// per element: `u x rank` matrix with `c(e) = X * L_e`
    pub l: Vec<IntMat>,
    /// rows: saturated basis of the cocycle space inside `Z^u`
    pub z1: IntMat,
    /// rows: the coboundary generators written in the `z1` basis (`rank x k`)
    pub b1_coords: IntMat,
}

pub fn cocycle_data(m: &GLattice) -> CocycleData {
    let g = m.group();
    let slots = g.generator_indices().len();
    let r = m.rank();
    let u = slots * r;
    if u == 0 {
        return CocycleData {
            unknowns: 0,
            l: vec![IntMat::zero(0, r); g.order()],
            z1: IntMat::zero(0, 0),
            b1_coords: IntMat::zero(r, 0),
        };
    }
    // block injections E_k and the (L, action) pairs along the word DAG
    let mut e_blocks = Vec::with_capacity(slots);
    for k in 0..slots {
        let mut e = IntMat::zero(u, r);
        for i in 0..r {
            e.set(k * r + i, i, 1.into());
        }
        e_blocks.push(e);
    }
    let gen_pairs: Vec<(IntMat, IntMat)> = g
        .generator_indices()
        .iter()
        .enumerate()
        .map(|(k, &gi)| (e_blocks[k].clone(), m.act(gi).clone()))
        .collect();
    let pairs = g.evaluate_words(
        (IntMat::zero(u, r), IntMat::identity(r)),
        &gen_pairs,
        |p, q| (p.0.mul(&q.1).add(&q.0), p.1.mul(&q.1)),
    );
    let l: Vec<IntMat> = pairs.into_iter().map(|p| p.0).collect();

    // cocycle conditions on every (element, generator) pair; conditions
    // already enforced by the word DAG come out as zero blocks and are
    // skipped
    let n = g.order();
    let blocks = (0..n).flat_map(|x| {
        let l = &l;
        let e_blocks = &e_blocks;
        (0..slots).filter_map(move |k| {
            let gi = g.generator_indices()[k];
            let d = l[x]
                .mul(m.act(gi))
                .add(&e_blocks[k])
                .sub(&l[g.mul(x, gi)]);
            if d.is_zero() {
                None
            } else {
                Some(d)
            }
        })
    });
    let z1 = left_kernel_intersection(u, blocks);

    // coboundaries: c_v(g) = v (a(g) - I), one generator per basis vector
    let id = IntMat::identity(r);
    let cob_blocks: Vec<IntMat> = g
        .generator_indices()
        .iter()
        .map(|&gi| m.act(gi).sub(&id))
        .collect();
    let refs: Vec<&IntMat> = cob_blocks.iter().collect();
    let b = IntMat::hstack(&refs);
    let b1_coords = solve_left(&z1, &b)
        .expect("coboundaries are cocycles and the cocycle basis is saturated");
    CocycleData { unknowns: u, l, z1, b1_coords }
}

/// `H^1(G, M)` as an abelian group (always finite for a lattice).
pub fn h1(m: &GLattice) -> AbInv {
    let data = cocycle_data(m);
    finite_quotient(&data.b1_coords)
}

/// Quotient of `Z^cols` by the row span, asserting the result is finite.
pub(crate) fn finite_quotient(coords: &IntMat) -> AbInv {
    let inv = row_cokernel_invariants(coords);
    assert_eq!(
        inv.free_rank(),
        0,
        "cohomology of a lattice over a finite group must be finite"
    );
    inv
}
