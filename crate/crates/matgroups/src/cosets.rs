//! Right-coset combinatorics: coset partitions, the permutation action on
//! cosets, and orbit decompositions of one subgroup acting on the cosets of
//! another. These drive permutation-lattice constructions and the
//! fixed-point/orbit counting shortcuts.

use crate::bitset::BitSet;
use crate::fingroup::FinGroup;

/// Partition of the group into right cosets H\G = { Hx }. Returns the coset
/// member lists (each sorted; cosets ordered by least member, so the coset of
/// the identity — H itself — comes first when H contains the least index...
/// ordering is simply by least member) and the coset index of every element.
pub fn right_cosets(
    g: &impl FinGroup,
    h: &BitSet,
) -> (Vec<Vec<usize>>, Vec<usize>) {
    let n = g.order();
    let mut coset_of = vec![usize::MAX; n];
    let mut cosets: Vec<Vec<usize>> = Vec::new();
    for x in 0..n {
        if coset_of[x] != usize::MAX {
            continue;
        }
        let mut members: Vec<usize> = h.iter().map(|hh| g.mul(hh, x)).collect();
        members.sort_unstable();
        let ci = cosets.len();
        for &m in &members {
            coset_of[m] = ci;
        }
        cosets.push(members);
    }
    (cosets, coset_of)
}

/// Permutation induced by right multiplication: coset Hx maps to Hxg.
/// `perm[i] = j` means coset i is sent to coset j.
pub fn coset_perm(
    g: &impl FinGroup,
    cosets: &[Vec<usize>],
    coset_of: &[usize],
    elem: usize,
) -> Vec<usize> {
    cosets
        .iter()
        .map(|c| coset_of[g.mul(c[0], elem)])
        .collect()
}

/// Orbit sizes of a subgroup K acting on the cosets H\G by right
/// multiplication, sorted ascending.
pub fn coset_orbit_sizes(
    g: &impl FinGroup,
    cosets: &[Vec<usize>],
    coset_of: &[usize],
    k_gens: &[usize],
) -> Vec<usize> {
    let perms: Vec<Vec<usize>> = k_gens
        .iter()
        .map(|&k| coset_perm(g, cosets, coset_of, k))
        .collect();
    let m = cosets.len();
    let mut seen = vec![false; m];
    let mut sizes = Vec::new();
    for start in 0..m {
        if seen[start] {
            continue;
        }
        let mut stack = vec![start];
        seen[start] = true;
        let mut size = 0;
        while let Some(c) = stack.pop() {
            size += 1;
            for p in &perms {
                let d = p[c];
                if !seen[d] {
                    seen[d] = true;
                    stack.push(d);
                }
            }
        }
        sizes.push(size);
    }
    sizes.sort_unstable();
    sizes
}

/// Number of cosets of H fixed by right multiplication with `elem`
/// (= the trace of the permutation action).
pub fn fixed_coset_count(
    g: &impl FinGroup,
    cosets: &[Vec<usize>],
    coset_of: &[usize],
    elem: usize,
) -> usize {
    cosets
        .iter()
        .enumerate()
        .filter(|(i, c)| coset_of[g.mul(c[0], elem)] == *i)
        .count()
}
