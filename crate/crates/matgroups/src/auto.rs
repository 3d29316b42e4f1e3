//! Automorphism groups of finite groups, as element-index permutations.

use crate::fingroup::{isomorphisms, FinGroup};
use crate::group::GroupError;
use std::collections::HashSet;

/// An automorphism, stored as the image index of every element.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Automorphism {
    pub perm: Vec<u32>,
    pub is_inner: bool,
}

impl Automorphism {
    pub fn apply(&self, x: usize) -> usize {
        self.perm[x] as usize
    }

    pub fn compose(&self, then: &Automorphism) -> Vec<u32> {
        self.perm.iter().map(|&x| then.perm[x as usize]).collect()
    }

    pub fn is_identity(&self) -> bool {
        self.perm.iter().enumerate().all(|(i, &x)| i == x as usize)
    }
}

/// All automorphisms, deterministically ordered (inner ones flagged).
/// Errors when |G| exceeds the cap (the search is quadratic per candidate).
pub fn automorphisms(
    g: &impl FinGroup,
    cap: usize,
) -> Result<Vec<Automorphism>, GroupError> {
    if g.order() > cap {
        return Err(GroupError::OrderOverCap { cap, order: g.order() });
    }
    let inner: HashSet<Vec<u32>> = (0..g.order())
        .map(|c| {
            (0..g.order())
                .map(|x| g.conj(x, c) as u32)
                .collect::<Vec<u32>>()
        })
        .collect();
    let mut perms = isomorphisms(g, g, None);
    perms.sort();
    Ok(perms
        .into_iter()
        .map(|perm| {
            let is_inner = inner.contains(&perm);
            Automorphism { perm, is_inner }
        })
        .collect())
}

/// Number of inner automorphisms = |G / Z(G)|.
pub fn inner_count(auts: &[Automorphism]) -> usize {
    auts.iter().filter(|a| a.is_inner).count()
}
