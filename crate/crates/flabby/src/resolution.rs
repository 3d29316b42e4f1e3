//! Flabby resolutions 0 → M → P → F → 0 with a permutation middle term.
//!
//! The construction runs on the dual side. For each subgroup class H the
//! fixed sublattice (M°)^H has a saturated basis; every basis row `v` yields
//! an equivariant map ℤ[H\G] → M°, e_{Hx} ↦ v·ρ°(x), which is well defined
//! because `v` is H-fixed. Summing these maps over a set of candidate rows
//! gives ψ: P° → M° with P a permutation lattice. Whenever ψ restricts to a
//! surjection on H-fixed points for every subgroup H, its kernel C is
//! coflabby, so dualizing 0 → C → P° → M° → 0 produces the resolution
//! 0 → M → P → C° → 0 with F = C° flabby.
//!
//! Fixed-point surjectivity only needs checking on one representative per
//! conjugacy class: if u is fixed by g₀⁻¹Hg₀ then u·ρ°(g₀⁻¹) is fixed by H,
//! and any preimage of it can be moved back with ρ(g₀).

use std::collections::{HashMap, HashSet};
use std::time::Instant;

use cohomology::is_flabby;
use exact_linalg::{
    is_saturated_basis, left_kernel_basis, nonzero_hnf_rows,
    row_cokernel_invariants, solve_left, IntMat,
};
use lattices::fixed_sublattice;
use lattices::{dual, perm_lattice_sum, sublattice_action, GLattice, PermLattice};
use matgroups::{right_cosets, FinGroup, MatGroup, Subgroup, SubgroupCatalog};
use num_bigint::BigInt;
use num_traits::Zero;

/// Knobs for [`flabby_resolution`].
#[derive(Clone, Debug)]
pub struct FlabbyOptions {
    /// Greedily drop permutation generators to cut the rank of `F`.
    pub low_rank: bool,
    /// Recorded for reproducibility; the greedy pass itself is deterministic.
    pub seed: u64,
    /// Wall-clock cap in milliseconds for the pruning phase; `None` means no
    /// cap. When the budget runs out the unpruned resolution is returned.
    pub budget_millis: Option<u64>,
}

impl Default for FlabbyOptions {
    fn default() -> Self {
        FlabbyOptions { low_rank: true, seed: 1, budget_millis: None }
    }
}

/// A short exact sequence 0 → M → P → F → 0 with P a permutation lattice and
/// F flabby, written in the row-vector convention: `incl` is rank(M)×rank(P)
/// acting by `z ↦ z·incl`, `surj` is rank(P)×rank(F).
#[derive(Clone)]
pub struct FlabbyResolution {
    pub m: GLattice,
    pub p: PermLattice,
    pub f: GLattice,
    pub incl: IntMat,
    pub surj: IntMat,
}

impl FlabbyResolution {
    /// Check every structural invariant of the sequence. Exactness at P
    /// follows from the checked facts: the image of `incl` is saturated of
    /// rank `rank M`, it sits inside the kernel of `surj` (composition is
    /// zero), and that kernel is saturated of the same rank because `surj`
    /// is onto ℤ^{rank F}; a saturated sublattice equals any saturated
    /// sublattice of equal rank containing it.
    pub fn verify(&self, catalog: &SubgroupCatalog) -> Result<(), String> {
        let g = self.m.group().clone();
        let n = self.m.rank();
        let np = self.p.rank();
        let k = self.f.rank();
        if self.incl.rows() != n || self.incl.cols() != np {
            return Err("inclusion matrix has wrong shape".into());
        }
        if self.surj.rows() != np || self.surj.cols() != k {
            return Err("projection matrix has wrong shape".into());
        }
        if np != n + k {
            return Err(format!("rank additivity fails: {np} != {n} + {k}"));
        }
        if !is_saturated_basis(&self.incl) {
            return Err("inclusion must embed M as a saturated sublattice".into());
        }
        if !row_cokernel_invariants(&self.incl).torsion().is_empty() {
            return Err("cokernel of the inclusion must be torsion-free".into());
        }
        if !self.incl.mul(&self.surj).is_zero() {
            return Err("projection must kill the image of the inclusion".into());
        }
        if !row_cokernel_invariants(&self.surj).is_trivial() {
            return Err("projection must map onto Z^{rank F}".into());
        }
        for e in 0..g.order() {
            if self.m.act(e).mul(&self.incl) != self.incl.mul(self.p.lattice.act(e)) {
                return Err("inclusion is not equivariant".into());
            }
            if self.p.lattice.act(e).mul(&self.surj) != self.surj.mul(self.f.act(e)) {
                return Err("projection is not equivariant".into());
            }
        }
        if !is_flabby(&self.f, catalog) {
            return Err("quotient lattice is not flabby".into());
        }
        Ok(())
    }
}

/// One generator of the dual-side map: a row of the saturated basis of
/// (M°)^H for the subgroup class `class`, contributing a ℤ[H\G] summand.
struct Candidate {
    class: usize,
    vector: IntMat,
}

/// Shared data for pruning trials: coset partitions per class, fixed-point
/// targets per class, and for every (candidate, test class) pair the images
/// of the orbit-sum basis of the candidate's summand fixed points.
struct PruneContext {
    targets: Vec<IntMat>,
    rows: Vec<Vec<Vec<Vec<BigInt>>>>,
    width: usize,
}

fn class_cosets(
    group: &MatGroup,
    catalog: &SubgroupCatalog,
    class: usize,
) -> (Vec<Vec<usize>>, Vec<usize>) {
    right_cosets(group, &catalog.classes[class].rep.elems)
}

/// Orbit-sum matrices Σ_{j∈O} ρ°(x_j) for the orbits O of `sub` acting on
/// the right of the coset space, one matrix per orbit in first-seen order.
fn orbit_sum_matrices(
    group: &MatGroup,
    md: &GLattice,
    cosets: &[Vec<usize>],
    coset_of: &[usize],
    sub: &Subgroup,
) -> Vec<IntMat> {
    let n = md.rank();
    let mut seen = vec![false; cosets.len()];
    let mut out = Vec::new();
    for j0 in 0..cosets.len() {
        if seen[j0] {
            continue;
        }
        let mut orbit = Vec::new();
        for h in sub.elems.iter() {
            let j = coset_of[group.mul(cosets[j0][0], h)];
            if !seen[j] {
                seen[j] = true;
                orbit.push(j);
            }
        }
        let mut sum = IntMat::zero(n, n);
        for &j in &orbit {
            sum = sum.add(md.act(cosets[j][0]));
        }
        out.push(sum);
    }
    out
}

fn prune_context(
    group: &MatGroup,
    md: &GLattice,
    catalog: &SubgroupCatalog,
    cands: &[Candidate],
) -> PruneContext {
    let targets: Vec<IntMat> = catalog
        .classes
        .iter()
        .map(|cls| fixed_sublattice(md, &cls.rep))
        .collect();
    let mut coset_cache: HashMap<usize, (Vec<Vec<usize>>, Vec<usize>)> =
        HashMap::new();
    let mut sum_cache: HashMap<(usize, usize), Vec<IntMat>> = HashMap::new();
    let mut rows = Vec::with_capacity(cands.len());
    for cand in cands {
        let mut per_class = Vec::with_capacity(catalog.classes.len());
        for t in 0..catalog.classes.len() {
            let sums = sum_cache.entry((cand.class, t)).or_insert_with(|| {
                let (cosets, coset_of) = coset_cache
                    .entry(cand.class)
                    .or_insert_with(|| class_cosets(group, catalog, cand.class));
                orbit_sum_matrices(
                    group,
                    md,
                    cosets,
                    coset_of,
                    &catalog.classes[t].rep,
                )
            });
            let imgs: Vec<Vec<BigInt>> = sums
                .iter()
                .map(|s| cand.vector.mul(s).row_slice(0).to_vec())
                .collect();
            per_class.push(imgs);
        }
        rows.push(per_class);
    }
    PruneContext { targets, rows, width: md.rank() }
}

/// Whether the kept candidates still hit every fixed-point target: for each
/// subgroup class the H-fixed rows of the candidate summands must span the
/// saturated basis of (M°)^H over ℤ. Duplicate rows (frequent, since orbit
/// images often repeat up to sign) are dropped before the Hermite solve.
fn kept_is_valid(ctx: &PruneContext, kept: &[bool]) -> bool {
    for (t, target) in ctx.targets.iter().enumerate() {
        if target.rows() == 0 {
            continue;
        }
        let mut seen: HashSet<&[BigInt]> = HashSet::new();
        let mut rows: Vec<&[BigInt]> = Vec::new();
        for (i, on) in kept.iter().enumerate() {
            if !on {
                continue;
            }
            for row in &ctx.rows[i][t] {
                if row.iter().any(|x| !x.is_zero()) && seen.insert(row) {
                    rows.push(row);
                }
            }
        }
        let mut img = IntMat::zero(rows.len(), ctx.width);
        for (r, row) in rows.iter().enumerate() {
            for (c, x) in row.iter().enumerate() {
                img.set(r, c, x.clone());
            }
        }
        if solve_left(&img, target).is_none() {
            return false;
        }
    }
    true
}

/// Greedy removal pass over the candidates in descending summand rank,
/// repeated until no further candidate can be dropped. Returns `None` when
/// the wall-clock deadline is hit.
fn prune(
    ctx: &PruneContext,
    cands: &[Candidate],
    summand_rank: impl Fn(usize) -> usize,
    deadline: Option<Instant>,
) -> Option<Vec<usize>> {
    let mut kept = vec![true; cands.len()];
    let mut order: Vec<usize> = (0..cands.len()).collect();
    order.sort_by_key(|&i| (usize::MAX - summand_rank(cands[i].class), i));
    loop {
        let mut removed_any = false;
        for &i in &order {
            if !kept[i] {
                continue;
            }
            if let Some(d) = deadline {
                if Instant::now() >= d {
                    return None;
                }
            }
            kept[i] = false;
            if kept_is_valid(ctx, &kept) {
                removed_any = true;
            } else {
                kept[i] = true;
            }
        }
        if !removed_any {
            break;
        }
    }
    Some((0..cands.len()).filter(|&i| kept[i]).collect())
}

fn assemble(
    m: &GLattice,
    md: &GLattice,
    catalog: &SubgroupCatalog,
    cands: &[Candidate],
    kept: &[usize],
) -> FlabbyResolution {
    let group = m.group().clone();
    let classes: Vec<usize> = kept.iter().map(|&i| cands[i].class).collect();
    let p = perm_lattice_sum(&group, catalog, &classes);
    let n = m.rank();
    let mut s = IntMat::zero(p.rank(), n);
    for (b, &i) in kept.iter().enumerate() {
        let summand = &p.summands[b];
        for j in 0..summand.rank {
            let row = cands[i].vector.mul(md.act(summand.cosets[j][0]));
            for c in 0..n {
                s.set(summand.offset + j, c, row.at(0, c).clone());
            }
        }
    }
    let kernel = left_kernel_basis(&s);
    let klat = sublattice_action(&p.lattice, &kernel)
        .expect("kernel of an equivariant map is stable");
    let f = dual(&klat).with_tag(format!("F[{}]", m.tag()));
    FlabbyResolution {
        m: m.clone(),
        p,
        f,
        incl: s.transpose(),
        surj: kernel.transpose(),
    }
}

/// Build a flabby resolution of `m`. With `low_rank` the candidate set is
/// pruned greedily (largest summands first, repeated to a fixed point) while
/// every fixed-point target stays covered; without it, or when the pruning
/// budget runs out, the full candidate set is used.
pub fn flabby_resolution(
    m: &GLattice,
    catalog: &SubgroupCatalog,
    opts: &FlabbyOptions,
) -> FlabbyResolution {
    let group = m.group().clone();
    let md = dual(m);
    let mut cands = Vec::new();
    for (ci, cls) in catalog.classes.iter().enumerate() {
        // Hermite-reduce the fixed basis so the generators are canonical;
        // for permutation lattices this makes single coset vectors appear
        // as candidates, which the pruning pass can then reduce to.
        let fixed = nonzero_hnf_rows(&fixed_sublattice(&md, &cls.rep));
        for r in 0..fixed.rows() {
            cands.push(Candidate {
                class: ci,
                vector: IntMat::row_vector(fixed.row_slice(r).to_vec()),
            });
        }
    }
    let all: Vec<usize> = (0..cands.len()).collect();
    let kept = if opts.low_rank {
        let ctx = prune_context(&group, &md, catalog, &cands);
        let deadline = opts
            .budget_millis
            .map(|ms| Instant::now() + std::time::Duration::from_millis(ms));
        let rank_of =
            |class: usize| group.order() / catalog.classes[class].order;
        prune(&ctx, &cands, rank_of, deadline).unwrap_or(all)
    } else {
        all
    };
    assemble(m, &md, catalog, &cands, &kept)
}

/// Representative of the flabby class of the flabby class: the F-part of a
/// flabby resolution of `f`.
pub fn second_flabby(
    f: &GLattice,
    catalog: &SubgroupCatalog,
    opts: &FlabbyOptions,
) -> GLattice {
    flabby_resolution(f, catalog, opts).f
}
