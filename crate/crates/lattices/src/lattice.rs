//! Lattices with an action of a finite integral matrix group.
//!
//! Elements act on the right: a row vector `m` is moved to `m * action(g)`,
//! and the matrices satisfy `action(g) * action(h) = action(gh)`. Every
//! constructor checks that the assignment really is a homomorphism into
//! `GL(rank, Z)`, so a successfully built [`GLattice`] is always a genuine
//! representation.

use std::sync::Arc;

use exact_linalg::{det, solve_left, FpMat, IntMat};
use matgroups::{FinGroup, MatGroup, Subgroup};
use num_bigint::BigInt;
use num_traits::One;

#[derive(thiserror::Error, Debug)]
pub enum LatticeError {
    #[error("generator image is not square of the expected rank")]
    RankMismatch,
    #[error("wrong number of generator images: expected {expected}, got {got}")]
    GeneratorCount { expected: usize, got: usize },
    #[error("generator image has determinant != +-1")]
    NonUnimodular,
    #[error("matrices do not define a homomorphism from the group")]
    NotARepresentation,
    #[error("lattices live over different groups")]
    DifferentGroups,
    #[error("sublattice basis is not stable under the group action")]
    NotStable,
    #[error("direct sum needs at least one summand")]
    EmptySum,
}

/// A free Z-module of finite rank together with a right action of a finite
/// matrix group. `action[i]` is the matrix of the i-th group element.
#[derive(Clone)]
pub struct GLattice {
    group: Arc<MatGroup>,
    rank: usize,
    action: Vec<IntMat>,
    tag: String,
}

impl GLattice {
    /// Build a lattice from images of the group generators (aligned with
    /// `group.generator_indices()`), extend along words, and verify the
    /// homomorphism property on every (element, generator) pair.
    pub fn new(
        group: Arc<MatGroup>,
        gen_images: &[IntMat],
        tag: impl Into<String>,
    ) -> Result<GLattice, LatticeError> {
        let gens = group.generator_indices().len();
        if gen_images.len() != gens {
            return Err(LatticeError::GeneratorCount {
                expected: gens,
                got: gen_images.len(),
            });
        }
        let rank = gen_images.first().map_or(0, |m| m.rows());
        for m in gen_images {
            if m.rows() != rank || m.cols() != rank {
                return Err(LatticeError::RankMismatch);
            }
        }
        let action = group.evaluate_words(
            IntMat::identity(rank),
            gen_images,
            |a, b| a.mul(b),
        );
        Self::from_action(group, action, tag)
    }

    /// Build a lattice from a full list of action matrices, one per group
    /// element in element order. Checks `action[x] * action[g] = action[xg]`
    /// for every element x and generator g, which forces the homomorphism
    /// property on all pairs, and checks the generators are unimodular.
    pub fn from_action(
        group: Arc<MatGroup>,
        action: Vec<IntMat>,
        tag: impl Into<String>,
    ) -> Result<GLattice, LatticeError> {
        if action.len() != group.order() {
            return Err(LatticeError::NotARepresentation);
        }
        let rank = action.first().map_or(0, |m| m.rows());
        for m in &action {
            if m.rows() != rank || m.cols() != rank {
                return Err(LatticeError::RankMismatch);
            }
        }
        if !action[group.id()].is_identity() {
            return Err(LatticeError::NotARepresentation);
        }
        if rank > 0 {
            let one: BigInt = One::one();
            for &gi in group.generator_indices() {
                let d = det(&action[gi]);
                if d != one && d != -one.clone() {
                    return Err(LatticeError::NonUnimodular);
                }
            }
        }
        for x in 0..group.order() {
            for &gi in group.generator_indices() {
                let xg = group.mul(x, gi);
                if action[x].mul(&action[gi]) != action[xg] {
                    return Err(LatticeError::NotARepresentation);
                }
            }
        }
        Ok(GLattice { group, rank, action, tag: tag.into() })
    }

    pub fn group(&self) -> &Arc<MatGroup> {
        &self.group
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    /// Action matrix of the group element with index `i`.
    pub fn act(&self, i: usize) -> &IntMat {
        &self.action[i]
    }

    pub fn action(&self) -> &[IntMat] {
        &self.action
    }

    pub fn tag(&self) -> &str {
        &self.tag
    }

    pub fn with_tag(mut self, tag: impl Into<String>) -> GLattice {
        self.tag = tag.into();
        self
    }

    /// Same group (by pointer) and identical action matrices.
    pub fn same_action(&self, other: &GLattice) -> bool {
        Arc::ptr_eq(&self.group, &other.group) && self.action == other.action
    }

    /// The action is faithful when only the identity acts as the identity.
    pub fn is_faithful(&self) -> bool {
        self.action.iter().filter(|m| m.is_identity()).count() == 1
    }

    /// Reduce every action matrix modulo p.
    pub fn mod_p(&self, p: u64) -> Vec<FpMat> {
        self.action.iter().map(|m| FpMat::from_int(m, p)).collect()
    }
}

/// The group acting on Z^degree by its own matrices.
pub fn lattice_of_group(group: &Arc<MatGroup>) -> GLattice {
    let action: Vec<IntMat> = group.elements().to_vec();
    GLattice::from_action(group.clone(), action, "M")
        .expect("group matrices form a representation")
}

/// Z^rank with every element acting as the identity.
pub fn trivial_lattice(group: &Arc<MatGroup>, rank: usize) -> GLattice {
    let action = vec![IntMat::identity(rank); group.order()];
    GLattice::from_action(group.clone(), action, "Z")
        .expect("identity matrices form a representation")
}

/// The rank-zero lattice.
pub fn zero_lattice(group: &Arc<MatGroup>) -> GLattice {
    let action = vec![IntMat::zero(0, 0); group.order()];
    GLattice::from_action(group.clone(), action, "0")
        .expect("empty matrices form a representation")
}

/// Dual lattice: `action*(g) = action(g^-1)^T`, the contragredient.
pub fn dual(m: &GLattice) -> GLattice {
    let g = m.group();
    let action: Vec<IntMat> = (0..g.order())
        .map(|i| m.act(g.inv(i)).transpose())
        .collect();
    GLattice::from_action(g.clone(), action, format!("dual({})", m.tag()))
        .expect("contragredient of a representation is a representation")
}

/// Block-diagonal direct sum. All summands must live over the same group.
pub fn direct_sum(parts: &[&GLattice]) -> Result<GLattice, LatticeError> {
    let first = parts.first().ok_or(LatticeError::EmptySum)?;
    let g = first.group();
    for p in parts.iter().skip(1) {
        if !Arc::ptr_eq(g, p.group()) {
            return Err(LatticeError::DifferentGroups);
        }
    }
    let action: Vec<IntMat> = (0..g.order())
        .map(|i| {
            let blocks: Vec<&IntMat> = parts.iter().map(|p| p.act(i)).collect();
            IntMat::block_diag(&blocks)
        })
        .collect();
    let tag = parts
        .iter()
        .map(|p| p.tag().to_string())
        .collect::<Vec<_>>()
        .join(" + ");
    GLattice::from_action(g.clone(), action, tag)
}

/// Restrict the action to a subgroup. The subgroup is closed into its own
/// standalone matrix group (with its own canonical element order); the
/// returned lattice lives over that group.
pub fn restrict(m: &GLattice, sub: &Subgroup) -> GLattice {
    let parent = m.group();
    let hgroup = Arc::new(sub.to_matgroup(parent));
    let action: Vec<IntMat> = hgroup
        .elements()
        .iter()
        .map(|mat| {
            let pi = parent
                .index_of(mat)
                .expect("subgroup element belongs to the parent group");
            m.act(pi).clone()
        })
        .collect();
    GLattice::from_action(hgroup, action, format!("res({})", m.tag()))
        .expect("restriction of a representation is a representation")
}

/// Precompose the action with a group automorphism given as a permutation of
/// element indices: the new action of g is the old action of sigma(g).
pub fn twist(m: &GLattice, sigma: &[u32]) -> GLattice {
    let g = m.group();
    assert_eq!(sigma.len(), g.order(), "permutation length mismatch");
    let action: Vec<IntMat> = (0..g.order())
        .map(|i| m.act(sigma[i] as usize).clone())
        .collect();
    GLattice::from_action(g.clone(), action, format!("twist({})", m.tag()))
        .expect("twist by an automorphism is a representation")
}

/// Action induced on a stable sublattice, written in the given basis (rows).
/// Fails with `NotStable` if some basis row leaves the row span.
pub fn sublattice_action(
    m: &GLattice,
    basis: &IntMat,
) -> Result<GLattice, LatticeError> {
    let g = m.group();
    assert_eq!(basis.cols(), m.rank(), "basis width must match lattice rank");
    if basis.rows() == 0 {
        return Ok(zero_lattice(g));
    }
    let mut action = Vec::with_capacity(g.order());
    for i in 0..g.order() {
        let moved = basis.mul(m.act(i));
        let a = solve_left(basis, &moved).ok_or(LatticeError::NotStable)?;
        action.push(a);
    }
    GLattice::from_action(g.clone(), action, format!("sub({})", m.tag()))
}
