//! Assembling candidate-isomorphism sides and their intertwiner spaces.
//!
//! A solution vector proposes `lhs ≅ rhs` for two direct sums of permutation
//! lattices and input-lattice copies. The certificate space is a saturated
//! basis of `Hom(rhs, lhs)`; a certificate is an unimodular member. The hom
//! basis is assembled block by block over the finest coordinate
//! decomposition both actions expose, which keeps every kernel computation
//! small and makes each basis element supported on a single row block.

use exact_linalg::{is_unimodular, IntMat};
use lattices::{direct_sum, hom_basis, perm_lattice_sum, zero_lattice, GLattice};
use matgroups::{MatGroup, SubgroupCatalog};
use num_bigint::BigInt;
use num_traits::Zero;
use std::sync::Arc;

use crate::possibility::{side_split, SideDescriptor};

/// Partition of certificate rows into independent search blocks, plus the
/// matching partition of the basis indices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RowBlocks {
    /// Basis indices grouped by the row block that supports them.
    pub bp_blocks: Vec<Vec<usize>>,
    /// Row indices grouped into blocks, each sorted, ordered by least row.
    pub row_blocks: Vec<Vec<usize>>,
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind { parent: (0..n).collect() }
    }
    fn find(&mut self, x: usize) -> usize {
        if self.parent[x] != x {
            let r = self.find(self.parent[x]);
            self.parent[x] = r;
        }
        self.parent[x]
    }
    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[ra.max(rb)] = ra.min(rb);
        }
    }
}

fn components(n: usize, uf: &mut UnionFind) -> Vec<Vec<usize>> {
    let mut by_root: Vec<Vec<usize>> = vec![Vec::new(); n];
    for x in 0..n {
        let r = uf.find(x);
        by_root[r].push(x);
    }
    by_root.into_iter().filter(|c| !c.is_empty()).collect()
}

/// Group the rows touched by each basis matrix into connected blocks; each
/// matrix then lives in exactly one block.
pub fn row_blocks(basis: &[IntMat]) -> RowBlocks {
    if basis.is_empty() {
        return RowBlocks { bp_blocks: Vec::new(), row_blocks: Vec::new() };
    }
    let rows = basis[0].rows();
    let mut uf = UnionFind::new(rows);
    let supports: Vec<Vec<usize>> = basis
        .iter()
        .map(|m| {
            (0..m.rows())
                .filter(|&r| (0..m.cols()).any(|c| !m.at(r, c).is_zero()))
                .collect::<Vec<usize>>()
        })
        .collect();
    for sup in &supports {
        for w in sup.windows(2) {
            uf.union(w[0], w[1]);
        }
    }
    let row_blocks = components(rows, &mut uf);
    let block_of_row: Vec<usize> = {
        let mut v = vec![0usize; rows];
        for (bi, block) in row_blocks.iter().enumerate() {
            for &r in block {
                v[r] = bi;
            }
        }
        v
    };
    let mut bp_blocks: Vec<Vec<usize>> = vec![Vec::new(); row_blocks.len()];
    for (i, sup) in supports.iter().enumerate() {
        let bi = sup.first().map(|&r| block_of_row[r]).unwrap_or(0);
        bp_blocks[bi].push(i);
    }
    RowBlocks { bp_blocks, row_blocks }
}

/// Finest coordinate partition left invariant by every action matrix:
/// connected components of the nonzero entry pattern.
pub fn coordinate_components(m: &GLattice) -> Vec<Vec<usize>> {
    let n = m.rank();
    if n == 0 {
        return Vec::new();
    }
    let mut uf = UnionFind::new(n);
    for a in m.action() {
        for i in 0..n {
            for j in 0..n {
                if !a.at(i, j).is_zero() {
                    uf.union(i, j);
                }
            }
        }
    }
    components(n, &mut uf)
}

/// Restriction of the action to one coordinate component.
fn component_lattice(m: &GLattice, coords: &[usize]) -> GLattice {
    let action: Vec<IntMat> = m
        .action()
        .iter()
        .map(|a| {
            let mut sub = IntMat::zero(coords.len(), coords.len());
            for (i, &r) in coords.iter().enumerate() {
                for (j, &c) in coords.iter().enumerate() {
                    sub.set(i, j, a.at(r, c).clone());
                }
            }
            sub
        })
        .collect();
    GLattice::from_action(m.group().clone(), action, format!("{}|comp", m.tag()))
        .expect("a coordinate component carries a valid action")
}

/// Build the direct-sum lattice a side descriptor denotes.
pub fn assemble_side(
    group: &Arc<MatGroup>,
    catalog: &SubgroupCatalog,
    desc: &SideDescriptor,
    left: &GLattice,
    right: &GLattice,
) -> GLattice {
    let mut parts: Vec<GLattice> = Vec::new();
    let mut classes: Vec<usize> = Vec::new();
    for &(class, mult) in &desc.perm_classes {
        for _ in 0..mult {
            classes.push(class);
        }
    }
    if !classes.is_empty() {
        parts.push(perm_lattice_sum(group, catalog, &classes).lattice);
    }
    for _ in 0..desc.left_copies {
        if left.rank() > 0 {
            parts.push(left.clone());
        }
    }
    for _ in 0..desc.right_copies {
        if right.rank() > 0 {
            parts.push(right.clone());
        }
    }
    if parts.is_empty() {
        return zero_lattice(group);
    }
    let refs: Vec<&GLattice> = parts.iter().collect();
    direct_sum(&refs).expect("side summands share the group")
}

/// Saturated intertwiner space between the two sides a solution vector
/// proposes, with the assembled sides kept for verification and reporting.
/// Certificates map the right-hand side to the left-hand side, so basis
/// matrices have `rhs.rank()` rows and `lhs.rank()` columns.
#[derive(Clone)]
pub struct CertificateSpace {
    pub basis: Vec<IntMat>,
    pub lhs: GLattice,
    pub rhs: GLattice,
    pub lhs_desc: SideDescriptor,
    pub rhs_desc: SideDescriptor,
}

impl CertificateSpace {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }
}

/// Hom basis between the assembled sides of `v`, built blockwise.
pub fn certificate_space(
    group: &Arc<MatGroup>,
    catalog: &SubgroupCatalog,
    v: &[BigInt],
    left: &GLattice,
    right: &GLattice,
) -> CertificateSpace {
    let (lhs_desc, rhs_desc) = side_split(v);
    let lhs = assemble_side(group, catalog, &lhs_desc, left, right);
    let rhs = assemble_side(group, catalog, &rhs_desc, left, right);

    let rcomps = coordinate_components(&rhs);
    let lcomps = coordinate_components(&lhs);
    let rparts: Vec<GLattice> =
        rcomps.iter().map(|c| component_lattice(&rhs, c)).collect();
    let lparts: Vec<GLattice> =
        lcomps.iter().map(|c| component_lattice(&lhs, c)).collect();

    let mut basis = Vec::new();
    for (rc, rl) in rcomps.iter().zip(&rparts) {
        for (lc, ll) in lcomps.iter().zip(&lparts) {
            for small in hom_basis(rl, ll) {
                let mut big = IntMat::zero(rhs.rank(), lhs.rank());
                for (i, &r) in rc.iter().enumerate() {
                    for (j, &c) in lc.iter().enumerate() {
                        big.set(r, c, small.at(i, j).clone());
                    }
                }
                basis.push(big);
            }
        }
    }
    CertificateSpace { basis, lhs, rhs, lhs_desc, rhs_desc }
}

/// Whether `p` intertwines the two sides of `v` on every generator and is
/// unimodular: exactly the conditions a certificate must satisfy.
pub fn verify_certificate(
    group: &Arc<MatGroup>,
    catalog: &SubgroupCatalog,
    v: &[BigInt],
    left: &GLattice,
    right: &GLattice,
    p: &IntMat,
) -> bool {
    let (lhs_desc, rhs_desc) = side_split(v);
    let lhs = assemble_side(group, catalog, &lhs_desc, left, right);
    let rhs = assemble_side(group, catalog, &rhs_desc, left, right);
    verify_intertwiner(&rhs, &lhs, p)
}

/// Shared check: `p` maps `src` to `dst`, commutes with every generator and
/// has determinant ±1.
pub fn verify_intertwiner(src: &GLattice, dst: &GLattice, p: &IntMat) -> bool {
    if p.rows() != src.rank() || p.cols() != dst.rank() || p.rows() != p.cols() {
        return false;
    }
    if !is_unimodular(p) {
        return false;
    }
    src.group()
        .generator_indices()
        .iter()
        .all(|&g| src.act(g).mul(p) == p.mul(dst.act(g)))
}
