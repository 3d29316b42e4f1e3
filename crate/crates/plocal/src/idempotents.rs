//! Exhaustive idempotent enumeration, with a bit-sliced Gray-code walk for
//! p = 2 and a local-ring shortcut when enumeration would be too large.

use thiserror::Error;

use crate::algebra::FpAlgebra;
use crate::radical::{element_count, radical_codim1};

/// Default ceiling on the number of elements enumerated.
pub const DEFAULT_IDEMPOTENT_CAP: u128 = 1 << 24;

#[derive(Debug, Error)]
pub enum PlocalError {
    #[error("enumerating idempotents needs {needed} elements (cap {cap}) and no local-ring shortcut applies")]
    CapExceeded { needed: u128, cap: u128 },
}

/// All idempotents of the algebra, as coordinate vectors.
///
/// Enumerates the whole algebra when `p^dim <= cap`. Beyond the cap, a
/// verified codimension-1 radical proves the algebra is local, whose only
/// idempotents are 0 and 1; otherwise the call errors out.
pub fn idempotents_mod_p(
    a: &FpAlgebra,
    cap: u128,
) -> Result<Vec<Vec<u64>>, PlocalError> {
    let m = a.dim();
    if m == 0 {
        // The zero ring has the single element 0 = 1, which is idempotent.
        return Ok(vec![Vec::new()]);
    }
    let needed = element_count(a).unwrap_or(u128::MAX);
    if needed <= cap {
        if a.p() == 2 && m <= 63 {
            return Ok(enumerate_bits(a));
        }
        return Ok(enumerate_generic(a));
    }
    if radical_codim1(a) {
        return Ok(vec![a.zero_coords(), a.identity_coords().to_vec()]);
    }
    Err(PlocalError::CapExceeded { needed, cap })
}

/// Gray-code walk over F_2 coordinates. The state keeps, for each basis
/// index i, the partial sum `s[i] = sum_{j in e} table[i][j]` as a bitmask,
/// so that `e^2 = xor_{i in e} s[i]`; flipping one coordinate of e updates
/// every `s[i]` with a single xor.
fn enumerate_bits(a: &FpAlgebra) -> Vec<Vec<u64>> {
    let m = a.dim();
    // table entries as bitmasks over coordinates
    let mut t = vec![0u64; m * m];
    for i in 0..m {
        for j in 0..m {
            let coords = a.mul_coords(&a.unit_coords(i), &a.unit_coords(j));
            let mut mask = 0u64;
            for (k, &c) in coords.iter().enumerate() {
                if c != 0 {
                    mask |= 1 << k;
                }
            }
            t[i * m + j] = mask;
        }
    }
    let mut s = vec![0u64; m];
    let mut e: u64 = 0;
    let mut out = Vec::new();
    let total: u64 = 1 << m;
    for step in 0..total {
        if step > 0 {
            let flip = step.trailing_zeros() as usize;
            e ^= 1 << flip;
            for i in 0..m {
                s[i] ^= t[i * m + flip];
            }
        }
        let mut square = 0u64;
        let mut bits = e;
        while bits != 0 {
            let i = bits.trailing_zeros() as usize;
            bits &= bits - 1;
            square ^= s[i];
        }
        if square == e {
            out.push((0..m).map(|k| (e >> k) & 1).collect());
        }
    }
    out
}

/// Mixed-radix odometer over coordinates for any p, keeping the vectors
/// `u[i] = e * basis[i]` updated incrementally so each step squares e in
/// O(dim^2).
fn enumerate_generic(a: &FpAlgebra) -> Vec<Vec<u64>> {
    let m = a.dim();
    let p = a.p();
    let mut e = vec![0u64; m];
    // u[i] = coords of e * b_i
    let mut u = vec![vec![0u64; m]; m];
    let mut out = Vec::new();
    loop {
        // e^2 = sum_i e_i * (e * b_i)  -- note e * b_i is linear in e, and
        // right-multiplying the sum decomposition of e works symmetrically.
        let mut square = vec![0u64; m];
        for (i, &ei) in e.iter().enumerate() {
            if ei == 0 {
                continue;
            }
            for (slot, &v) in square.iter_mut().zip(u[i].iter()) {
                *slot = (*slot + ei * v) % p;
            }
        }
        if square == e {
            out.push(e.clone());
        }
        // Advance the odometer; on digit k changing by +1, every u[i] gains
        // b_k * b_i, and on a rollover to 0 it loses (p-1) of them.
        let mut k = 0;
        loop {
            if k == m {
                return out;
            }
            if e[k] + 1 < p {
                e[k] += 1;
                add_row_multiple(a, &mut u, k, 1);
                break;
            }
            e[k] = 0;
            add_row_multiple(a, &mut u, k, 1); // wraps p-1 -> p ≡ 0 by adding one more
            k += 1;
        }
    }
}

/// Adds `c * (b_k * b_i)` into `u[i]` for every i.
fn add_row_multiple(a: &FpAlgebra, u: &mut [Vec<u64>], k: usize, c: u64) {
    let p = a.p();
    for (i, ui) in u.iter_mut().enumerate() {
        let prod = a.mul_coords(&a.unit_coords(k), &a.unit_coords(i));
        for (slot, &v) in ui.iter_mut().zip(prod.iter()) {
            *slot = (*slot + c * v) % p;
        }
    }
}
