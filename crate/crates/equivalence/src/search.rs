//! Search for unimodular combinations of an intertwiner basis.
//!
//! Because the hom space is closed under integer combinations, any hit
//! `P = Σ c_i P_i` with `det P = ±1` intertwines by construction, so the
//! search only has to chase the determinant. Candidates are screened by the
//! determinant modulo two word-sized primes before any exact determinant is
//! computed. Stages run from cheap to expensive: single elements, one
//! element per row block, a full small coefficient box, seeded random
//! sampling (sparse `{0,1}` first, then the caller's coefficient set), and
//! finally a blockwise build that keeps primitive partial matrices per row
//! block and merges them. A miss is never a refutation.

use exact_linalg::{det, inv_mod, is_unimodular, smith_normal_form, IntMat};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::collections::HashSet;
use std::time::Instant;

use crate::space::row_blocks;

const PREFILTER_PRIMES: [u64; 2] = [2_147_483_629, 2_147_483_587];
const BLOCK_CANDIDATE_CAP: usize = 1024;
const MERGE_CAP: usize = 4096;

/// Resource limits for one search run.
#[derive(Clone, Debug)]
pub struct SearchBudget {
    /// Upper bound on random candidates across the sampling stages.
    pub max_trials: u64,
    /// Wall-clock cutoff checked between candidates.
    pub time_limit_secs: Option<u64>,
}

impl Default for SearchBudget {
    fn default() -> Self {
        SearchBudget { max_trials: 200_000, time_limit_secs: None }
    }
}

/// A found certificate combination, with enough context to replay it.
#[derive(Clone, Debug)]
pub struct ComboWitness {
    pub p: IntMat,
    pub coeffs: Vec<i64>,
    pub seed: u64,
    pub strategy: String,
    pub trials: u64,
}

/// How [`block_search`] walks the combinations of one row block.
#[derive(Clone, Debug)]
pub enum BlockStrategy {
    /// Every combination supported on at most `max_support` basis elements,
    /// coefficients from `coeffs` (zeros are ignored).
    Exhaustive { max_support: usize, coeffs: Vec<i64> },
    /// `trials` random coefficient vectors over `coeffs`.
    Random { trials: u64, coeffs: Vec<i64>, seed: u64 },
}

fn to_i64(m: &IntMat) -> Option<Vec<i64>> {
    m.entries().iter().map(|x| i64::try_from(x).ok()).collect()
}

fn det_mod_p_i64(data: &[i64], n: usize, p: u64) -> u64 {
    let mut a: Vec<u64> = data
        .iter()
        .map(|&x| (x.rem_euclid(p as i64)) as u64)
        .collect();
    let mut res: u64 = 1;
    for col in 0..n {
        let mut piv = usize::MAX;
        for r in col..n {
            if a[r * n + col] != 0 {
                piv = r;
                break;
            }
        }
        if piv == usize::MAX {
            return 0;
        }
        if piv != col {
            for c in 0..n {
                a.swap(piv * n + c, col * n + c);
            }
            res = p - res;
        }
        let pv = a[col * n + col];
        res = res * pv % p;
        let inv = inv_mod(pv, p);
        for r in (col + 1)..n {
            let f = a[r * n + col] * inv % p;
            if f == 0 {
                continue;
            }
            for c in col..n {
                let sub = f * a[col * n + c] % p;
                a[r * n + c] = (a[r * n + c] + p - sub) % p;
            }
        }
    }
    res % p
}

fn prefilter_ok(data: &[i64], n: usize) -> bool {
    PREFILTER_PRIMES
        .iter()
        .all(|&p| matches!(det_mod_p_i64(data, n, p), d if d == 1 || d == p - 1))
}

fn intmat_from_i64(data: &[i64], rows: usize, cols: usize) -> IntMat {
    IntMat::new(rows, cols, data.iter().map(|&x| BigInt::from(x)).collect())
}

/// All invariant factors 1: the rows extend to a basis of the full lattice.
pub fn is_primitive(m: &IntMat) -> bool {
    if m.rows() == 0 {
        return true;
    }
    if m.rows() > m.cols() {
        return false;
    }
    let snf = smith_normal_form(m);
    let inv = snf.invariant_factors();
    inv.len() == m.rows() && inv.iter().all(|d| d.is_one())
}

struct Clock {
    start: Instant,
    limit: Option<u64>,
}

impl Clock {
    fn new(budget: &SearchBudget) -> Self {
        Clock { start: Instant::now(), limit: budget.time_limit_secs }
    }
    fn expired(&self) -> bool {
        match self.limit {
            Some(s) => self.start.elapsed().as_secs() >= s,
            None => false,
        }
    }
}

/// Search one row block: combinations of the block's basis matrices,
/// restricted to `rows`, that are primitive (extendable to a unimodular
/// matrix). Deterministic given the strategy.
pub fn block_search(
    basis: &[IntMat],
    rows: &[usize],
    strategy: &BlockStrategy,
) -> Vec<IntMat> {
    if basis.is_empty() {
        return Vec::new();
    }
    let restricted: Vec<IntMat> =
        basis.iter().map(|m| m.select_rows(rows)).collect();
    let mut out: Vec<IntMat> = Vec::new();
    let mut seen: HashSet<Vec<BigInt>> = HashSet::new();
    let mut push = |cand: IntMat, out: &mut Vec<IntMat>| {
        if out.len() >= BLOCK_CANDIDATE_CAP {
            return false;
        }
        if is_primitive(&cand) && seen.insert(cand.entries().to_vec()) {
            out.push(cand);
        }
        true
    };
    match strategy {
        BlockStrategy::Exhaustive { max_support, coeffs } => {
            let nz: Vec<i64> =
                coeffs.iter().copied().filter(|&c| c != 0).collect();
            // support size 1, then 2, ... up to the cap
            for support in 1..=(*max_support).min(restricted.len()) {
                let mut idx: Vec<usize> = (0..support).collect();
                loop {
                    let mut cvec = vec![0usize; support];
                    loop {
                        let cand = idx.iter().zip(&cvec).fold(
                            IntMat::zero(rows.len(), restricted[0].cols()),
                            |acc, (&i, &ci)| {
                                acc.add(&restricted[i].scale(&BigInt::from(nz[ci])))
                            },
                        );
                        if !push(cand, &mut out) {
                            return out;
                        }
                        // odometer over coefficient choices
                        let mut k = 0;
                        loop {
                            if k == support {
                                break;
                            }
                            cvec[k] += 1;
                            if cvec[k] < nz.len() {
                                break;
                            }
                            cvec[k] = 0;
                            k += 1;
                        }
                        if k == support {
                            break;
                        }
                    }
                    // next support combination (lexicographic)
                    let mut k = support;
                    let mut advanced = false;
                    while k > 0 {
                        k -= 1;
                        if idx[k] + (support - k) < restricted.len() {
                            idx[k] += 1;
                            for j in (k + 1)..support {
                                idx[j] = idx[j - 1] + 1;
                            }
                            advanced = true;
                            break;
                        }
                    }
                    if !advanced {
                        break; // this support size is exhausted
                    }
                }
            }
        }
        BlockStrategy::Random { trials, coeffs, seed } => {
            let mut rng = ChaCha8Rng::seed_from_u64(*seed);
            for _ in 0..*trials {
                let cand = restricted.iter().fold(
                    IntMat::zero(rows.len(), restricted[0].cols()),
                    |acc, m| {
                        let c = coeffs[rng.gen_range(0..coeffs.len())];
                        if c == 0 {
                            acc
                        } else {
                            acc.add(&m.scale(&BigInt::from(c)))
                        }
                    },
                );
                if !push(cand, &mut out) {
                    break;
                }
            }
        }
    }
    out
}

/// Vertical concatenations of candidate partial matrices that stay
/// primitive; full-height square results are additionally filtered down to
/// determinant ±1.
pub fn merge_blocks(a: &[IntMat], b: &[IntMat], full_rows: usize) -> Vec<IntMat> {
    let mut out = Vec::new();
    for x in a {
        for y in b {
            if out.len() >= MERGE_CAP {
                return out;
            }
            if x.cols() != y.cols() {
                continue;
            }
            let cand = IntMat::vstack(&[x, y]);
            if cand.rows() == full_rows && cand.rows() == cand.cols() {
                if is_unimodular(&cand) {
                    out.push(cand);
                }
            } else if is_primitive(&cand) {
                out.push(cand);
            }
        }
    }
    out
}

/// Which exact determinant probe to evaluate.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ProbeMode {
    Linear,
    Bilinear,
    Quadratic,
}

/// Result of an [`affine_det_probe`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ProbeResult {
    Vector(Vec<BigInt>),
    Matrix(IntMat),
}

/// Exact determinant probes around a base matrix `m`:
/// linear `det(m + P_i)`, bilinear `det(m + P_i + Q_j)`, and the quadratic
/// interaction `(det(m + P_i + Q_j) - det(m + P_i) - det(m + Q_j)) / 2`.
pub fn affine_det_probe(
    m: &IntMat,
    p1: &[IntMat],
    p2: Option<&[IntMat]>,
    mode: ProbeMode,
) -> ProbeResult {
    match mode {
        ProbeMode::Linear => ProbeResult::Vector(
            p1.iter().map(|p| det(&m.add(p))).collect(),
        ),
        ProbeMode::Bilinear => {
            let q = p2.unwrap_or(p1);
            let rows: Vec<Vec<BigInt>> = p1
                .iter()
                .map(|pi| {
                    q.iter().map(|qj| det(&m.add(pi).add(qj))).collect()
                })
                .collect();
            ProbeResult::Matrix(IntMat::from_rows(rows))
        }
        ProbeMode::Quadratic => {
            let q = p2.unwrap_or(p1);
            let di: Vec<BigInt> = p1.iter().map(|p| det(&m.add(p))).collect();
            let dj: Vec<BigInt> = q.iter().map(|p| det(&m.add(p))).collect();
            let rows: Vec<Vec<BigInt>> = p1
                .iter()
                .enumerate()
                .map(|(i, pi)| {
                    q.iter()
                        .enumerate()
                        .map(|(j, qj)| {
                            let both = det(&m.add(pi).add(qj));
                            let num = both - &di[i] - &dj[j];
                            let (half, rem) =
                                num.div_rem(&BigInt::from(2));
                            assert!(
                                rem.is_zero(),
                                "quadratic probe value is even by bilinearity"
                            );
                            half
                        })
                        .collect()
                })
                .collect();
            ProbeResult::Matrix(IntMat::from_rows(rows))
        }
    }
}

struct FastBasis {
    mats: Vec<Vec<i64>>,
    rows: usize,
    cols: usize,
}

impl FastBasis {
    fn build(basis: &[IntMat]) -> Option<FastBasis> {
        let rows = basis[0].rows();
        let cols = basis[0].cols();
        let mut mats = Vec::with_capacity(basis.len());
        for m in basis {
            if m.rows() != rows || m.cols() != cols {
                return None;
            }
            mats.push(to_i64(m)?);
        }
        Some(FastBasis { mats, rows, cols })
    }

    fn combine(&self, coeffs: &[i64]) -> Option<Vec<i64>> {
        let mut acc = vec![0i64; self.rows * self.cols];
        for (c, m) in coeffs.iter().zip(&self.mats) {
            if *c == 0 {
                continue;
            }
            for (a, &x) in acc.iter_mut().zip(m) {
                *a = a.checked_add(c.checked_mul(x)?)?;
            }
        }
        Some(acc)
    }
}

fn verify_combo(
    fast: &FastBasis,
    coeffs: &[i64],
    strategy: &str,
    seed: u64,
    trials: u64,
) -> Option<ComboWitness> {
    let n = fast.rows;
    let data = fast.combine(coeffs)?;
    if !prefilter_ok(&data, n) {
        return None;
    }
    let p = intmat_from_i64(&data, n, n);
    if !is_unimodular(&p) {
        return None;
    }
    Some(ComboWitness {
        p,
        coeffs: coeffs.to_vec(),
        seed,
        strategy: strategy.to_string(),
        trials,
    })
}

/// Staged search for `Σ c_i P_i` with determinant ±1 over the basis `𝒫`.
/// `coeffs` is the widest coefficient set the random stages may use; `seed`
/// makes every stage replayable. `None` is a budget exhaustion, never a
/// refutation.
pub fn combo_search(
    basis: &[IntMat],
    coeffs: &[i64],
    seed: u64,
    budget: &SearchBudget,
) -> Option<ComboWitness> {
    if basis.is_empty() {
        return None;
    }
    let n = basis[0].rows();
    if n != basis[0].cols() || n == 0 {
        return None;
    }
    let fast = FastBasis::build(basis)?;
    let dim = basis.len();
    let clock = Clock::new(budget);
    let mut trials: u64 = 0;

    // Stage 1: single basis elements.
    for i in 0..dim {
        trials += 1;
        let mut c = vec![0i64; dim];
        c[i] = 1;
        if let Some(w) = verify_combo(&fast, &c, "singleton", seed, trials) {
            return Some(w);
        }
    }
    if clock.expired() {
        return None;
    }

    // Stage 2: one element (coefficient 1) per row block.
    let blocks = row_blocks(basis);
    if blocks.bp_blocks.len() > 1 {
        let sizes: Vec<usize> =
            blocks.bp_blocks.iter().map(|b| b.len()).collect();
        let product: u128 = sizes.iter().map(|&s| s.max(1) as u128).product();
        if product <= 500_000 && sizes.iter().all(|&s| s > 0) {
            let mut pick = vec![0usize; sizes.len()];
            'outer: loop {
                trials += 1;
                let mut c = vec![0i64; dim];
                for (bi, &pi) in pick.iter().enumerate() {
                    c[blocks.bp_blocks[bi][pi]] = 1;
                }
                if let Some(w) =
                    verify_combo(&fast, &c, "block-singleton", seed, trials)
                {
                    return Some(w);
                }
                if trials % 1024 == 0 && clock.expired() {
                    return None;
                }
                let mut k = 0;
                loop {
                    if k == sizes.len() {
                        break 'outer;
                    }
                    pick[k] += 1;
                    if pick[k] < sizes[k] {
                        break;
                    }
                    pick[k] = 0;
                    k += 1;
                }
            }
        }
    }
    if clock.expired() {
        return None;
    }

    // Stage 3: exhaustive small coefficient box.
    let box_size = (coeffs.len() as u128).checked_pow(dim as u32);
    if let Some(total) = box_size {
        if total <= 300_000 {
            let mut idx = vec![0usize; dim];
            'boxes: loop {
                let c: Vec<i64> = idx.iter().map(|&i| coeffs[i]).collect();
                if c.iter().any(|&x| x != 0) {
                    trials += 1;
                    if let Some(w) =
                        verify_combo(&fast, &c, "exhaustive-box", seed, trials)
                    {
                        return Some(w);
                    }
                    if trials % 1024 == 0 && clock.expired() {
                        return None;
                    }
                }
                let mut k = 0;
                loop {
                    if k == dim {
                        break 'boxes;
                    }
                    idx[k] += 1;
                    if idx[k] < coeffs.len() {
                        break;
                    }
                    idx[k] = 0;
                    k += 1;
                }
            }
        }
    }
    if clock.expired() {
        return None;
    }

    // Stages 4 and 5: seeded random sampling, sparse {0,1} first.
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let nz: Vec<i64> = coeffs.iter().copied().filter(|&c| c != 0).collect();
    let full: Vec<i64> = if coeffs.contains(&0) {
        coeffs.to_vec()
    } else {
        let mut v = coeffs.to_vec();
        v.push(0);
        v
    };
    let phases: [(&str, Vec<i64>); 2] =
        [("random-01", vec![0, 1]), ("random-box", full)];
    for (name, set) in &phases {
        let phase_budget = budget.max_trials / 2;
        for _ in 0..phase_budget {
            trials += 1;
            let c: Vec<i64> = (0..dim)
                .map(|_| set[rng.gen_range(0..set.len())])
                .collect();
            if let Some(w) = verify_combo(&fast, &c, name, seed, trials) {
                return Some(w);
            }
            if trials % 256 == 0 && clock.expired() {
                return None;
            }
        }
    }

    // Stage 6: blockwise build and merge.
    if blocks.bp_blocks.len() > 1 {
        let mut lists: Vec<Vec<IntMat>> = Vec::new();
        for (bi, bp) in blocks.bp_blocks.iter().enumerate() {
            let sub: Vec<IntMat> =
                bp.iter().map(|&i| basis[i].clone()).collect();
            let strat = BlockStrategy::Exhaustive {
                max_support: 2,
                coeffs: nz.clone(),
            };
            let found =
                block_search(&sub, &blocks.row_blocks[bi], &strat);
            if found.is_empty() {
                return None;
            }
            lists.push(found);
            if clock.expired() {
                return None;
            }
        }
        let mut partial = lists[0].clone();
        for item in lists.iter().skip(1) {
            partial = merge_blocks(&partial, item, n);
            if partial.is_empty() || clock.expired() {
                return None;
            }
        }
        if let Some(p) = partial.into_iter().find(is_unimodular) {
            if p.rows() == n && p.cols() == n {
                return Some(ComboWitness {
                    p,
                    coeffs: Vec::new(),
                    seed,
                    strategy: "block-merge".to_string(),
                    trials,
                });
            }
        }
    }
    None
}
