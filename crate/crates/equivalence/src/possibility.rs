//! Integer screening systems for stable-isomorphism questions.
//!
//! For lattices `L` (left) and `R` (right) over a group with subgroup classes
//! `H_1, ..., H_s`, the unknown vector `(a_1, ..., a_s, b_1)` ranges over
//! integer solutions of one linear equation per numerical invariant:
//!
//!   sum_i a_i * inv(Z[H_i\G])  +  b_1 * (inv(L) - inv(R))  =  0
//!
//! where `inv` runs over character values (one per element conjugacy class),
//! fixed-sublattice ranks (one per subgroup class), counts of `Z/p^e`
//! summands of the zeroth Tate cohomology of every subgroup class, and
//! optionally the same counts for second cohomology. Every such `inv` is
//! additive over direct sums and constant on isomorphism classes, so any
//! isomorphism `L ⊕ P ≅ R ⊕ Q` with permutation lattices `P`, `Q` yields a
//! solution with `b_1 = 1`; an infeasible system therefore refutes all of
//! them at once.

use std::sync::Arc;

use cohomology::{h2, tate_h0};
use exact_linalg::{left_kernel_basis, nonzero_hnf_rows, solve_left, AbInv, IntMat};
use lattices::{fixed_sublattice, restrict, GLattice};
use matgroups::{
    abelianization, coset_orbit_sizes, element_conjugacy_classes, fixed_coset_count,
    right_cosets, BitSet, FinGroup, MatGroup, Subgroup, SubgroupCatalog,
};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// Options controlling which equation families are generated.
#[derive(Clone, Debug)]
pub struct PossibilityOptions {
    /// Also generate second-cohomology summand counts. These need a
    /// coinduction shift per subgroup on the lattice side, so they are kept
    /// behind a flag and an order cap.
    pub use_h2: bool,
    /// Subgroups larger than this are skipped by the `use_h2` equations.
    pub h2_order_cap: usize,
}

impl Default for PossibilityOptions {
    fn default() -> Self {
        PossibilityOptions { use_h2: false, h2_order_cap: 8 }
    }
}

/// Feasibility summary of a [`PossibilityBasis`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PossibilityStatus {
    /// The solution lattice is zero: no candidate identity exists at all.
    Impossible,
    /// Solutions exist but none has `b_1 = ±1`; the gcd of the attainable
    /// `b_1` values is recorded (0 when every solution has `b_1 = 0`).
    /// Unusable for certificates, and equally a refutation.
    NoUnitB { gcd: BigInt },
    /// Some integer combination reaches `b_1 = 1`.
    Viable,
}

/// Canonical basis of the integer solution lattice of the screening system.
#[derive(Clone, Debug)]
pub struct PossibilityBasis {
    /// One name per unknown: `Z[G/H1]`, ..., then `b1`.
    pub legend: Vec<String>,
    /// Rows form a basis, Hermite-reduced and then sign-flipped so that no
    /// row has a negative last coordinate.
    pub basis: IntMat,
    pub status: PossibilityStatus,
}

impl PossibilityBasis {
    /// Number of unknowns `s + 1`.
    pub fn width(&self) -> usize {
        self.legend.len()
    }

    /// Whether `v` lies in the integer row span of the basis.
    pub fn contains(&self, v: &[BigInt]) -> bool {
        if self.basis.rows() == 0 {
            return v.iter().all(|x| x.is_zero());
        }
        solve_left(&self.basis, &IntMat::row_vector(v.to_vec())).is_some()
    }
}

/// Right-coset bookkeeping for one subgroup class, reused by every equation.
struct ClassCosets {
    cosets: Vec<Vec<usize>>,
    coset_of: Vec<usize>,
}

fn class_cosets(g: &MatGroup, catalog: &SubgroupCatalog) -> Vec<ClassCosets> {
    catalog
        .classes
        .iter()
        .map(|cl| {
            let (cosets, coset_of) = right_cosets(g, &cl.rep.elems);
            ClassCosets { cosets, coset_of }
        })
        .collect()
}

fn p_valuation(mut n: usize, p: usize) -> u32 {
    let mut e = 0;
    while n % p == 0 {
        n /= p;
        e += 1;
    }
    e
}

/// Prime factorization of a subgroup order as `(p, max exponent)` pairs.
fn prime_powers(order: usize) -> Vec<(usize, u32)> {
    let mut n = order;
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            let mut e = 0;
            while n % p == 0 {
                n /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

/// `Z/p^e` summand count of `⊕_orbits Z/(|K|/s)`: the zeroth Tate group of a
/// coset lattice is one cyclic block per orbit, of order index-of-orbit.
fn orbit_tate_count(orbit_sizes: &[usize], k_order: usize, p: usize, e: u32) -> usize {
    orbit_sizes
        .iter()
        .filter(|&&s| {
            let m = k_order / s;
            m % p == 0 && p_valuation(m, p) == e
        })
        .count()
}

/// Stabilizer of one coset under the right action of `k`, as a subgroup of
/// the ambient group.
fn coset_stabilizer(
    g: &MatGroup,
    cc: &ClassCosets,
    coset: usize,
    k: &Subgroup,
) -> BitSet {
    let rep = cc.cosets[coset][0];
    let mut elems = BitSet::new(g.order());
    for x in k.elems.iter() {
        if cc.coset_of[g.mul(rep, x)] == coset {
            elems.insert(x);
        }
    }
    elems
}

/// Second cohomology of a coset lattice restricted to `k`: one abelianized
/// stabilizer per `k`-orbit on the cosets.
fn perm_h2_counts(
    g: &MatGroup,
    cc: &ClassCosets,
    k: &Subgroup,
) -> Vec<AbInv> {
    let mut seen = vec![false; cc.cosets.len()];
    let mut out = Vec::new();
    for start in 0..cc.cosets.len() {
        if seen[start] {
            continue;
        }
        // breadth-first orbit of the coset under right multiplication by K
        let mut stack = vec![start];
        seen[start] = true;
        while let Some(c) = stack.pop() {
            for &s in &k.gens {
                let d = cc.coset_of[g.mul(cc.cosets[c][0], s)];
                if !seen[d] {
                    seen[d] = true;
                    stack.push(d);
                }
            }
        }
        let stab = coset_stabilizer(g, cc, start, k);
        out.push(abelianization(g, &stab));
    }
    out
}

/// Second cohomology of a lattice restricted to a subgroup, routed through
/// the cheap norm-quotient form when the subgroup is cyclic.
fn lattice_h2(m: &GLattice, sub: &Subgroup) -> AbInv {
    if m.rank() == 0 {
        return AbInv::trivial();
    }
    let is_cyclic = sub
        .elems
        .iter()
        .any(|x| m.group().order_of(x) == sub.order);
    if is_cyclic {
        return tate_h0(m, sub);
    }
    h2(&restrict(m, sub))
}

/// Build the screening system for `left` vs `right` and return the canonical
/// basis of its integer solution lattice.
pub fn possibility_basis(
    catalog: &SubgroupCatalog,
    left: &GLattice,
    right: &GLattice,
    opts: &PossibilityOptions,
) -> PossibilityBasis {
    assert!(
        Arc::ptr_eq(left.group(), right.group()),
        "possibility_basis needs both lattices over the same group"
    );
    let group = left.group().as_ref();
    let s = catalog.classes.len();
    let width = s + 1;
    let cosets = class_cosets(group, catalog);

    // K-orbit sizes on the cosets of every class pair, reused by the rank and
    // Tate equations.
    let orbit_sizes: Vec<Vec<Vec<usize>>> = (0..s)
        .map(|i| {
            catalog
                .classes
                .iter()
                .map(|k| coset_orbit_sizes(group, &cosets[i].cosets, &cosets[i].coset_of, &k.rep.gens))
                .collect()
        })
        .collect();

    let tate_left: Vec<AbInv> = catalog
        .classes
        .iter()
        .map(|k| tate_h0(left, &k.rep))
        .collect();
    let tate_right: Vec<AbInv> = catalog
        .classes
        .iter()
        .map(|k| tate_h0(right, &k.rep))
        .collect();

    let mut columns: Vec<Vec<BigInt>> = Vec::new();

    // Character values, one per element conjugacy class.
    for class in element_conjugacy_classes(group) {
        let e = class[0];
        let mut col = Vec::with_capacity(width);
        for cc in &cosets {
            col.push(BigInt::from(fixed_coset_count(group, &cc.cosets, &cc.coset_of, e)));
        }
        col.push(left.act(e).trace() - right.act(e).trace());
        columns.push(col);
    }

    // Fixed-sublattice ranks, one per subgroup class.
    for (ki, k) in catalog.classes.iter().enumerate() {
        let mut col = Vec::with_capacity(width);
        for i in 0..s {
            col.push(BigInt::from(orbit_sizes[i][ki].len()));
        }
        let lr = fixed_sublattice(left, &k.rep).rows() as i64;
        let rr = fixed_sublattice(right, &k.rep).rows() as i64;
        col.push(BigInt::from(lr - rr));
        columns.push(col);
    }

    // Z/p^e summand counts of zeroth Tate cohomology per subgroup class.
    for (ki, k) in catalog.classes.iter().enumerate() {
        for (p, emax) in prime_powers(k.order) {
            for e in 1..=emax {
                let mut col = Vec::with_capacity(width);
                for i in 0..s {
                    col.push(BigInt::from(orbit_tate_count(
                        &orbit_sizes[i][ki],
                        k.order,
                        p,
                        e,
                    )));
                }
                let lc = tate_left[ki].p_power_count(p as u64, e) as i64;
                let rc = tate_right[ki].p_power_count(p as u64, e) as i64;
                col.push(BigInt::from(lc - rc));
                columns.push(col);
            }
        }
    }

    // Optional second-cohomology summand counts.
    if opts.use_h2 {
        for (ki, k) in catalog.classes.iter().enumerate() {
            if k.order == 1 || k.order > opts.h2_order_cap {
                continue;
            }
            let perm_h2: Vec<Vec<AbInv>> = (0..s)
                .map(|i| perm_h2_counts(group, &cosets[i], &catalog.classes[ki].rep))
                .collect();
            let lh = lattice_h2(left, &k.rep);
            let rh = lattice_h2(right, &k.rep);
            for (p, emax) in prime_powers(k.order) {
                for e in 1..=emax {
                    let mut col = Vec::with_capacity(width);
                    for summands in perm_h2.iter().take(s) {
                        let c: usize = summands
                            .iter()
                            .map(|ab| ab.p_power_count(p as u64, e))
                            .sum();
                        col.push(BigInt::from(c));
                    }
                    let lc = lh.p_power_count(p as u64, e) as i64;
                    let rc = rh.p_power_count(p as u64, e) as i64;
                    col.push(BigInt::from(lc - rc));
                    columns.push(col);
                }
            }
        }
    }

    let mut data = Vec::with_capacity(width * columns.len());
    for r in 0..width {
        for col in &columns {
            data.push(col[r].clone());
        }
    }
    let a = IntMat::new(width, columns.len(), data);
    let kernel = left_kernel_basis(&a);
    let mut basis = nonzero_hnf_rows(&kernel);

    // Flip rows whose last coordinate is negative so b1 >= 0 everywhere.
    for r in 0..basis.rows() {
        if basis.at(r, width - 1).is_negative() {
            for c in 0..width {
                let v = -basis.at(r, c).clone();
                basis.set(r, c, v);
            }
        }
    }

    let status = if basis.rows() == 0 {
        PossibilityStatus::Impossible
    } else {
        let mut g = BigInt::zero();
        for r in 0..basis.rows() {
            g = g.gcd(basis.at(r, width - 1));
        }
        if g.is_one() {
            PossibilityStatus::Viable
        } else {
            PossibilityStatus::NoUnitB { gcd: g }
        }
    };

    let mut legend: Vec<String> =
        (1..=s).map(|i| format!("Z[G/H{i}]")).collect();
    legend.push("b1".to_string());

    PossibilityBasis { legend, basis, status }
}

fn nearest_quotient(num: &BigInt, den: &BigInt) -> BigInt {
    // round(num / den) for den > 0, ties toward +infinity
    let doubled: BigInt = num * 2 + den;
    doubled.div_floor(&(den * 2))
}

fn scaled_sub(v: &mut [BigInt], t: &BigInt, z: &[BigInt]) {
    for (a, b) in v.iter_mut().zip(z) {
        *a -= t * b;
    }
}

/// Pick one solution with `b_1 = +1` from the basis, then shrink it: first
/// nearest-integer reduction against the `b_1 = 0` sublattice, then greedy
/// descent on the total side weight (`costs` holds the rank contributed by a
/// unit of each unknown). Deterministic; `None` when no unit-`b_1` solution
/// exists.
pub fn choose_solution(basis: &IntMat, costs: &[u64]) -> Option<Vec<BigInt>> {
    if basis.rows() == 0 {
        return None;
    }
    let width = basis.cols();
    assert_eq!(costs.len(), width, "one cost per unknown");
    let b_idx = width - 1;

    let mut v: Option<Vec<BigInt>> = None;
    for r in 0..basis.rows() {
        let row = basis.row_slice(r).to_vec();
        if row[b_idx].is_zero() {
            continue;
        }
        v = Some(match v {
            None => row,
            Some(cur) => {
                let eg = cur[b_idx].extended_gcd(&row[b_idx]);
                let mut next = vec![BigInt::zero(); width];
                for c in 0..width {
                    next[c] = &eg.x * &cur[c] + &eg.y * &row[c];
                }
                next
            }
        });
        if v.as_ref().unwrap()[b_idx].is_one() {
            break;
        }
    }
    let mut v = v?;
    if !v[b_idx].is_one() {
        return None;
    }

    // Basis of the b1 = 0 sublattice: every row minus its b1-multiple of v.
    let mut zrows: Vec<Vec<BigInt>> = Vec::new();
    for r in 0..basis.rows() {
        let row = basis.row_slice(r);
        let beta = row[b_idx].clone();
        let z: Vec<BigInt> =
            (0..width).map(|c| &row[c] - &beta * &v[c]).collect();
        if z.iter().any(|x| !x.is_zero()) {
            zrows.push(z);
        }
    }
    if zrows.is_empty() {
        return Some(v);
    }
    let z = nonzero_hnf_rows(&IntMat::from_rows(zrows));

    for _ in 0..4 {
        let mut changed = false;
        for r in 0..z.rows() {
            let zr = z.row_slice(r);
            let dot: BigInt = v.iter().zip(zr).map(|(a, b)| a * b).sum();
            let norm: BigInt = zr.iter().map(|b| b * b).sum();
            let t = nearest_quotient(&dot, &norm);
            if !t.is_zero() {
                scaled_sub(&mut v, &t, zr);
                changed = true;
            }
        }
        if !changed {
            break;
        }
    }

    let cost = |v: &[BigInt]| -> BigInt {
        v.iter()
            .zip(costs)
            .map(|(a, &c)| a.abs() * BigInt::from(c))
            .sum()
    };
    let mut best = cost(&v);
    for _ in 0..128 {
        let mut improved = false;
        'rows: for r in 0..z.rows() {
            for sign in [1i64, -1] {
                let t = BigInt::from(-sign);
                let mut cand = v.clone();
                scaled_sub(&mut cand, &t, z.row_slice(r));
                let c = cost(&cand);
                if c < best {
                    v = cand;
                    best = c;
                    improved = true;
                    break 'rows;
                }
            }
        }
        if !improved {
            break;
        }
    }
    Some(v)
}

/// One side of a candidate isomorphism: permutation summands by subgroup
/// class plus copies of the left/right input lattices.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct SideDescriptor {
    /// `(subgroup class index, multiplicity)`, ascending by class.
    pub perm_classes: Vec<(usize, u32)>,
    pub left_copies: u32,
    pub right_copies: u32,
}

impl SideDescriptor {
    pub fn is_empty(&self) -> bool {
        self.perm_classes.is_empty() && self.left_copies == 0 && self.right_copies == 0
    }
}

/// Split a solution vector into the two sides of the isomorphism it
/// proposes: positive coefficients on the left-hand side, negative on the
/// right-hand side, and the `b_1` multiplicity placing the `left` input on
/// the side of its sign (the `right` input goes opposite).
pub fn side_split(v: &[BigInt]) -> (SideDescriptor, SideDescriptor) {
    assert!(!v.is_empty());
    let b_idx = v.len() - 1;
    let mut lhs = SideDescriptor::default();
    let mut rhs = SideDescriptor::default();
    for (i, a) in v.iter().enumerate().take(b_idx) {
        let m: u32 = a
            .abs()
            .try_into()
            .expect("side multiplicity exceeds u32");
        if m == 0 {
            continue;
        }
        if a.is_positive() {
            lhs.perm_classes.push((i, m));
        } else {
            rhs.perm_classes.push((i, m));
        }
    }
    let b = &v[b_idx];
    let m: u32 = b.abs().try_into().expect("b1 multiplicity exceeds u32");
    if m > 0 {
        if b.is_positive() {
            lhs.left_copies = m;
            rhs.right_copies = m;
        } else {
            rhs.left_copies = m;
            lhs.right_copies = m;
        }
    }
    (lhs, rhs)
}
