//! Jacobson radical of a finite-dimensional algebra over a prime field.
//!
//! Characteristic p defeats the plain trace form (trace pairings degenerate
//! whenever p divides a composition multiplicity), so the chain here uses
//! divided traces of integer lifts: stage i keeps x with
//! `Tr(lift(L_{x y})^(p^i)) / p^i = 0 mod p` for all y in the current stage,
//! for `p^i` up to the algebra dimension. Each stage is linear in x, so it is
//! a kernel computation. The final space is checked to be a nilpotent
//! two-sided ideal — that containment in the true radical is unconditional —
//! and small algebras fall back to an exhaustive search if the check fails.

use exact_linalg::{FpMat, IntMat};
use num_bigint::BigInt;
use num_traits::Zero;

use crate::algebra::FpAlgebra;

/// Largest element count we are willing to enumerate exhaustively.
pub const BRUTE_FORCE_CAP: u128 = 1 << 12;

/// Coordinate basis of the Jacobson radical `J(A)`.
pub fn radical(a: &FpAlgebra) -> Vec<Vec<u64>> {
    if a.dim() == 0 {
        return Vec::new();
    }
    if let Some(j) = chain_radical(a) {
        if is_nilpotent_ideal(a, &j) {
            return j;
        }
    }
    // The divided-trace chain answered inconsistently; fall back when the
    // algebra is small enough to enumerate.
    let count = element_count(a);
    assert!(
        count.is_some_and(|c| c <= BRUTE_FORCE_CAP),
        "radical chain failed on an algebra too large to enumerate"
    );
    brute_force_radical(a)
}

/// True iff `A / J(A)` is one-dimensional, i.e. the algebra is local with
/// residue field `F_p`. When this returns true the verdict is unconditional:
/// the computed subspace is verified to be a nilpotent proper ideal of
/// codimension 1, which pins the radical exactly.
pub fn radical_codim1(a: &FpAlgebra) -> bool {
    if a.dim() == 0 {
        return false;
    }
    radical(a).len() == a.dim() - 1
}

/// `p^dim` as a u128 if it fits.
pub fn element_count(a: &FpAlgebra) -> Option<u128> {
    let mut out: u128 = 1;
    for _ in 0..a.dim() {
        out = out.checked_mul(a.p() as u128)?;
        if out > u64::MAX as u128 * 2 {
            return Some(out); // already far beyond any cap we use
        }
    }
    Some(out)
}

/// Exhaustive radical for tiny algebras: the largest nil left ideal, found
/// as `{ x nilpotent : y x nilpotent for every y }`. Panics above
/// [`BRUTE_FORCE_CAP`] elements.
pub fn brute_force_radical(a: &FpAlgebra) -> Vec<Vec<u64>> {
    let m = a.dim();
    if m == 0 {
        return Vec::new();
    }
    let count = element_count(a).expect("element count overflow");
    assert!(
        count <= BRUTE_FORCE_CAP,
        "brute-force radical needs {count} elements, cap is {BRUTE_FORCE_CAP}"
    );
    let count = count as usize;
    let p = a.p();
    let nil: Vec<bool> = (0..count)
        .map(|code| a.is_nilpotent(&decode(code, p, m)))
        .collect();
    let mut members = Vec::new();
    'cand: for (code, &is_nil) in nil.iter().enumerate() {
        if !is_nil {
            continue;
        }
        let x = decode(code, p, m);
        for ycode in 0..count {
            let prod = a.mul_coords(&decode(ycode, p, m), &x);
            if !nil[encode(&prod, p)] {
                continue 'cand;
            }
        }
        members.push(x);
    }
    // The member set is a linear subspace (it is the radical); reduce to a
    // basis for the common output format.
    subspace_basis(a.p(), m, &members)
}

fn decode(mut code: usize, p: u64, m: usize) -> Vec<u64> {
    let mut out = vec![0u64; m];
    for slot in out.iter_mut() {
        *slot = (code as u64) % p;
        code /= p as usize;
    }
    out
}

fn encode(coords: &[u64], p: u64) -> usize {
    let mut code = 0usize;
    for &c in coords.iter().rev() {
        code = code * p as usize + c as usize;
    }
    code
}

/// Row basis of the span of the given coordinate vectors.
fn subspace_basis(p: u64, m: usize, vectors: &[Vec<u64>]) -> Vec<Vec<u64>> {
    if vectors.is_empty() {
        return Vec::new();
    }
    let mut stack = FpMat::zero(p, vectors.len(), m);
    for (i, v) in vectors.iter().enumerate() {
        for (j, &c) in v.iter().enumerate() {
            stack.set(i, j, c);
        }
    }
    let (r, pivots) = stack.rref();
    (0..pivots.len())
        .map(|i| (0..m).map(|j| r.at(i, j)).collect())
        .collect()
}

/// The divided-trace descending chain. Returns None if a required
/// divisibility fails, which signals that the chain's assumptions broke.
fn chain_radical(a: &FpAlgebra) -> Option<Vec<Vec<u64>>> {
    let m = a.dim();
    let p = a.p();
    // Current subspace as rows over the algebra's coordinates.
    let mut space: Vec<Vec<u64>> = (0..m).map(|k| a.unit_coords(k)).collect();
    let mut q: u64 = 1; // p^i
    while q as usize <= m && !space.is_empty() {
        let dim = space.len();
        // conditions[s][r] = tau_i(space[r] * space[s])
        let mut conditions = FpMat::zero(p, dim, dim);
        for s in 0..dim {
            for r in 0..dim {
                let z = a.mul_coords(&space[r], &space[s]);
                let val = divided_trace(a, &z, q)?;
                conditions.set(s, r, val);
            }
        }
        let kernel = conditions.right_kernel();
        let mut next = Vec::with_capacity(kernel.rows());
        for krow in 0..kernel.rows() {
            let mut vec = vec![0u64; m];
            for (r, row) in space.iter().enumerate() {
                let c = kernel.at(krow, r);
                if c == 0 {
                    continue;
                }
                for (slot, &v) in vec.iter_mut().zip(row.iter()) {
                    *slot = (*slot + c * v) % p;
                }
            }
            next.push(vec);
        }
        space = next;
        q = q.checked_mul(p)?;
    }
    Some(space)
}

/// `Tr(lift(L_z)^q) / q mod p`, or None if the trace is not divisible by q.
/// The lift has entries in `[0, p)`, so the trace is nonnegative and plain
/// truncated division is exact division here.
fn divided_trace(a: &FpAlgebra, z: &[u64], q: u64) -> Option<u64> {
    let lift = a.left_mul_lift(z);
    let tr = int_pow(&lift, q).trace();
    let qq = BigInt::from(q);
    if !(&tr % &qq).is_zero() {
        return None;
    }
    let red = (tr / qq) % BigInt::from(a.p());
    Some(red.try_into().expect("reduced residue fits in u64"))
}

fn int_pow(m: &IntMat, e: u64) -> IntMat {
    let mut result = IntMat::identity(m.rows());
    let mut base = m.clone();
    let mut e = e;
    while e > 0 {
        if e & 1 == 1 {
            result = result.mul(&base);
        }
        e >>= 1;
        if e > 0 {
            base = base.mul(&base);
        }
    }
    result
}

/// Checks that the span of `j` is a two-sided ideal consisting of nilpotent
/// elements (equivalently here: a nilpotent ideal). Such an ideal is always
/// contained in the Jacobson radical.
fn is_nilpotent_ideal(a: &FpAlgebra, j: &[Vec<u64>]) -> bool {
    let m = a.dim();
    if j.is_empty() {
        return true;
    }
    let p = a.p();
    let mut stack = FpMat::zero(p, j.len(), m);
    for (i, v) in j.iter().enumerate() {
        for (c, &val) in v.iter().enumerate() {
            stack.set(i, c, val);
        }
    }
    let in_span = |v: &[u64]| stack.solve_left(v).is_some();
    for k in 0..m {
        let b = a.unit_coords(k);
        for v in j {
            if !in_span(&a.mul_coords(&b, v)) || !in_span(&a.mul_coords(v, &b)) {
                return false;
            }
        }
    }
    // Nilpotency of the ideal: powers of the subspace must die out.
    let mut power: Vec<Vec<u64>> = j.to_vec();
    for _ in 0..m {
        if power.is_empty() {
            return true;
        }
        let mut products = Vec::new();
        for x in &power {
            for y in j {
                products.push(a.mul_coords(x, y));
            }
        }
        power = subspace_basis(p, m, &products)
            .into_iter()
            .filter(|v| v.iter().any(|&c| c != 0))
            .collect();
    }
    power.is_empty()
}
