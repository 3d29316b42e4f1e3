//! Subdirect products of two finite groups, enumerated by Goursat triples
//! (N normal in G, N' normal in G', isomorphism G/N -> G'/N') and
//! deduplicated up to conjugacy inside the full direct product.

use crate::bitset::BitSet;
use crate::fingroup::{
    isomorphisms, quotient_table, small_generating_set, FinGroup, TableGroup,
};
use crate::group::{GroupError, MatGroup};
use crate::subgroups::{normal_subgroups, subgroup_catalog, Subgroup};
use exact_linalg::IntMat;
use std::collections::{HashMap, HashSet};

/// A subgroup of G x G' projecting onto both factors, stored as sorted
/// element-index pairs.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct SubdirectProduct {
    pub pairs: Vec<(u32, u32)>,
}

impl SubdirectProduct {
    pub fn order(&self) -> usize {
        self.pairs.len()
    }

    /// N = phi_1(ker phi_2): left components paired with the identity.
    pub fn left_kernel(&self, gp: &impl FinGroup) -> Vec<usize> {
        let mut v: Vec<usize> = self
            .pairs
            .iter()
            .filter(|&&(_, r)| r as usize == gp.id())
            .map(|&(l, _)| l as usize)
            .collect();
        v.sort_unstable();
        v
    }

    /// N' = phi_2(ker phi_1): right components paired with the identity.
    pub fn right_kernel(&self, g: &impl FinGroup) -> Vec<usize> {
        let mut v: Vec<usize> = self
            .pairs
            .iter()
            .filter(|&&(l, _)| l as usize == g.id())
            .map(|&(_, r)| r as usize)
            .collect();
        v.sort_unstable();
        v
    }

    /// When both kernels are trivial the subdirect product is the graph of an
    /// isomorphism G -> G'; returns that element map.
    pub fn graph_iso(&self, g: &impl FinGroup, gp: &impl FinGroup) -> Option<Vec<usize>> {
        if self.pairs.len() != g.order()
            || self.left_kernel(gp).len() != 1
            || self.right_kernel(g).len() != 1
        {
            return None;
        }
        let mut map = vec![usize::MAX; g.order()];
        for &(l, r) in &self.pairs {
            if map[l as usize] != usize::MAX {
                return None;
            }
            map[l as usize] = r as usize;
        }
        Some(map)
    }

    /// The induced isomorphism between the coset groups G/N and G'/N':
    /// returns (coset map of G, coset map of G', coset-index bijection).
    pub fn quotient_iso(
        &self,
        g: &impl FinGroup,
        gp: &impl FinGroup,
    ) -> (Vec<usize>, Vec<usize>, Vec<usize>) {
        let n = BitSet::from_indices(g.order(), &self.left_kernel(gp));
        let np = BitSet::from_indices(gp.order(), &self.right_kernel(g));
        let (q, coset_of, _) = quotient_table(g, &n);
        let (qp, coset_of_p, _) = quotient_table(gp, &np);
        assert_eq!(q.order(), qp.order());
        let mut sigma = vec![usize::MAX; q.order()];
        for &(l, r) in &self.pairs {
            let cl = coset_of[l as usize];
            let cr = coset_of_p[r as usize];
            if sigma[cl] == usize::MAX {
                sigma[cl] = cr;
            } else {
                assert_eq!(sigma[cl], cr, "pairs do not induce a map on cosets");
            }
        }
        (coset_of, coset_of_p, sigma)
    }

    /// Block-diagonal matrix group realizing the subdirect product, of degree
    /// deg(G) + deg(G').
    pub fn ambient_matgroup(
        &self,
        g: &MatGroup,
        gp: &MatGroup,
        cap: usize,
    ) -> Result<MatGroup, GroupError> {
        let pg = PairGroup::new(g, gp, self.pairs.clone());
        let full: Vec<usize> = (0..pg.order()).collect();
        let all = BitSet::from_indices(pg.order(), &full);
        let gens = small_generating_set(&pg, &all);
        let mats: Vec<IntMat> = gens
            .iter()
            .map(|&i| {
                let (l, r) = pg.pairs[i];
                IntMat::block_diag(&[g.element(l as usize), gp.element(r as usize)])
            })
            .collect();
        let mats = if mats.is_empty() {
            vec![IntMat::identity(g.degree() + gp.degree())]
        } else {
            mats
        };
        MatGroup::close(&mats, cap)
    }
}

/// A subgroup of a direct product, presented as an index-pair group (the
/// multiplication is componentwise in the parents).
pub struct PairGroup<'a, A: FinGroup, B: FinGroup> {
    pub a: &'a A,
    pub b: &'a B,
    pub pairs: Vec<(u32, u32)>,
    index: HashMap<(u32, u32), usize>,
}

impl<'a, A: FinGroup, B: FinGroup> PairGroup<'a, A, B> {
    pub fn new(a: &'a A, b: &'a B, pairs: Vec<(u32, u32)>) -> Self {
        let index = pairs
            .iter()
            .enumerate()
            .map(|(i, &p)| (p, i))
            .collect::<HashMap<_, _>>();
        PairGroup { a, b, pairs, index }
    }

    pub fn pair(&self, i: usize) -> (usize, usize) {
        let (l, r) = self.pairs[i];
        (l as usize, r as usize)
    }
}

impl<A: FinGroup, B: FinGroup> FinGroup for PairGroup<'_, A, B> {
    fn order(&self) -> usize {
        self.pairs.len()
    }
    fn id(&self) -> usize {
        self.index[&(self.a.id() as u32, self.b.id() as u32)]
    }
    fn mul(&self, x: usize, y: usize) -> usize {
        let (l1, r1) = self.pairs[x];
        let (l2, r2) = self.pairs[y];
        self.index[&(
            self.a.mul(l1 as usize, l2 as usize) as u32,
            self.b.mul(r1 as usize, r2 as usize) as u32,
        )]
    }
    fn inv(&self, x: usize) -> usize {
        let (l, r) = self.pairs[x];
        self.index[&(self.a.inv(l as usize) as u32, self.b.inv(r as usize) as u32)]
    }
}

/// Orbit-minimal form of a pair set under conjugation by G x G'.
fn canonical_pair_set(
    g: &impl FinGroup,
    gp: &impl FinGroup,
    pairs: Vec<(u32, u32)>,
    conj_g: &[usize],
    conj_gp: &[usize],
) -> Vec<(u32, u32)> {
    let mut start = pairs;
    start.sort_unstable();
    let mut seen: HashSet<Vec<(u32, u32)>> = HashSet::new();
    seen.insert(start.clone());
    let mut queue = vec![start.clone()];
    let mut best = start;
    while let Some(cur) = queue.pop() {
        for &c in conj_g {
            let mut next: Vec<(u32, u32)> = cur
                .iter()
                .map(|&(l, r)| (g.conj(l as usize, c) as u32, r))
                .collect();
            next.sort_unstable();
            if seen.insert(next.clone()) {
                if next < best {
                    best = next.clone();
                }
                queue.push(next);
            }
        }
        for &c in conj_gp {
            let mut next: Vec<(u32, u32)> = cur
                .iter()
                .map(|&(l, r)| (l, gp.conj(r as usize, c) as u32))
                .collect();
            next.sort_unstable();
            if seen.insert(next.clone()) {
                if next < best {
                    best = next.clone();
                }
                queue.push(next);
            }
        }
    }
    best
}

/// All subdirect products of G and G' up to (G x G')-conjugacy,
/// deterministically ordered by (order, pair list).
pub fn goursat_subdirect_products(
    g: &impl FinGroup,
    gp: &impl FinGroup,
) -> Vec<SubdirectProduct> {
    let cat_g = subgroup_catalog(g);
    let cat_gp = subgroup_catalog(gp);
    let normals_g = normal_subgroups(&cat_g);
    let normals_gp = normal_subgroups(&cat_gp);

    let full_g = BitSet::from_indices(g.order(), &(0..g.order()).collect::<Vec<_>>());
    let full_gp =
        BitSet::from_indices(gp.order(), &(0..gp.order()).collect::<Vec<_>>());
    let conj_g = small_generating_set(g, &full_g);
    let conj_gp = small_generating_set(gp, &full_gp);

    let mut seen: HashSet<Vec<(u32, u32)>> = HashSet::new();
    let mut out: Vec<SubdirectProduct> = Vec::new();

    for n in &normals_g {
        let (q, coset_of, _) = quotient_table(g, &n.elems);
        for np in &normals_gp {
            if g.order() * np.order != gp.order() * n.order {
                continue; // quotient orders differ
            }
            let (qp, _, cosets_p) = quotient_table(gp, &np.elems);
            for sigma in isomorphisms(&q, &qp, None) {
                let mut pairs: Vec<(u32, u32)> = Vec::new();
                for x in 0..g.order() {
                    let target = sigma[coset_of[x]] as usize;
                    for &y in &cosets_p[target] {
                        pairs.push((x as u32, y as u32));
                    }
                }
                let canon = canonical_pair_set(g, gp, pairs, &conj_g, &conj_gp);
                if seen.insert(canon.clone()) {
                    out.push(SubdirectProduct { pairs: canon });
                }
            }
        }
    }
    out.sort_by(|a, b| {
        (a.pairs.len(), &a.pairs).cmp(&(b.pairs.len(), &b.pairs))
    });
    out
}

/// Brute-force check used in tests: enumerate subgroups of the pair group
/// G x G' directly and keep those surjecting onto both factors, up to
/// conjugacy.
pub fn subdirect_products_brute(
    g: &impl FinGroup,
    gp: &impl FinGroup,
) -> Vec<SubdirectProduct> {
    let mut pairs = Vec::new();
    for l in 0..g.order() {
        for r in 0..gp.order() {
            pairs.push((l as u32, r as u32));
        }
    }
    let product = PairGroup::new(g, gp, pairs);
    let subs = crate::subgroups::all_subgroups(&product);
    let full_g = BitSet::from_indices(g.order(), &(0..g.order()).collect::<Vec<_>>());
    let full_gp =
        BitSet::from_indices(gp.order(), &(0..gp.order()).collect::<Vec<_>>());
    let conj_g = small_generating_set(g, &full_g);
    let conj_gp = small_generating_set(gp, &full_gp);
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for s in subs {
        let ps: Vec<(u32, u32)> = s.iter().map(|i| product.pairs[i]).collect();
        let mut lefts: Vec<u32> = ps.iter().map(|&(l, _)| l).collect();
        lefts.sort_unstable();
        lefts.dedup();
        let mut rights: Vec<u32> = ps.iter().map(|&(_, r)| r).collect();
        rights.sort_unstable();
        rights.dedup();
        if lefts.len() != g.order() || rights.len() != gp.order() {
            continue;
        }
        let canon = canonical_pair_set(g, gp, ps, &conj_g, &conj_gp);
        if seen.insert(canon.clone()) {
            out.push(SubdirectProduct { pairs: canon });
        }
    }
    out.sort_by(|a, b| {
        (a.pairs.len(), &a.pairs).cmp(&(b.pairs.len(), &b.pairs))
    });
    out
}

/// Convenience: the full direct product of two matrix groups as a
/// block-diagonal matrix group.
pub fn direct_product_matgroup(
    g: &MatGroup,
    gp: &MatGroup,
    cap: usize,
) -> Result<MatGroup, GroupError> {
    let mut gens = Vec::new();
    let idg = IntMat::identity(g.degree());
    let idgp = IntMat::identity(gp.degree());
    for &i in g.generator_indices() {
        gens.push(IntMat::block_diag(&[g.element(i), &idgp]));
    }
    for &j in gp.generator_indices() {
        gens.push(IntMat::block_diag(&[&idg, gp.element(j)]));
    }
    MatGroup::close(&gens, cap)
}

/// Assert the subdirect-product invariants (|S| = |G|·|N'| = |G'|·|N|) and
/// that the induced quotient map commutes with the projections.
pub fn validate_subdirect(
    s: &SubdirectProduct,
    g: &impl FinGroup,
    gp: &impl FinGroup,
) -> bool {
    let n = s.left_kernel(gp);
    let np = s.right_kernel(g);
    if s.order() != g.order() * np.len() || s.order() != gp.order() * n.len() {
        return false;
    }
    // closure under multiplication
    let pg = PairGroup::new(g, gp, s.pairs.clone());
    for i in 0..pg.order().min(64) {
        for j in 0..pg.order().min(64) {
            let _ = pg.mul(i, j); // panics via index if not closed
        }
    }
    let (coset_of, coset_of_p, sigma) = s.quotient_iso(g, gp);
    s.pairs
        .iter()
        .all(|&(l, r)| sigma[coset_of[l as usize]] == coset_of_p[r as usize])
}

/// Table clone of a pair group (owned, detached from parents).
pub fn pair_group_table(pg: &PairGroup<impl FinGroup, impl FinGroup>) -> TableGroup {
    let n = pg.order();
    let mut table = vec![0u32; n * n];
    for i in 0..n {
        for j in 0..n {
            table[i * n + j] = pg.mul(i, j) as u32;
        }
    }
    TableGroup::from_table(n, pg.id(), table)
}

/// Subgroup of the left factor generated by left components (helper for
/// screening projections).
pub fn project_left(
    g: &impl FinGroup,
    pairs: &[(u32, u32)],
) -> Subgroup {
    let mut elems = BitSet::new(g.order());
    for &(l, _) in pairs {
        elems.insert(l as usize);
    }
    Subgroup::from_bitset(g, elems)
}

pub fn project_right(
    gp: &impl FinGroup,
    pairs: &[(u32, u32)],
) -> Subgroup {
    let mut elems = BitSet::new(gp.order());
    for &(_, r) in pairs {
        elems.insert(r as usize);
    }
    Subgroup::from_bitset(gp, elems)
}
