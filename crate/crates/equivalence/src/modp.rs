//! Mod-p rank certificates against integral isomorphism.
//!
//! If the stacked transposed basis of a saturated intertwiner space has
//! rank < n over `F_p`, every basis matrix — hence every integer
//! combination, hence every integral intertwiner — kills a common nonzero
//! vector mod p and is singular there. An integral isomorphism would itself
//! be an intertwiner with determinant ±1, invertible modulo every prime, so
//! a deficient rank soundly refutes all of them at once.

use exact_linalg::{rank_mod_p, IntMat};

/// Outcome of the stacked-rank test, with the observed rank attached.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ModpVerdict {
    /// No integral intertwiner is invertible mod `p`; certified by
    /// `rank < n`.
    Blocked { rank: usize },
    /// The stacked basis has full column rank mod `p`; nothing is refuted.
    Open { rank: usize },
}

impl ModpVerdict {
    pub fn is_blocked(&self) -> bool {
        matches!(self, ModpVerdict::Blocked { .. })
    }

    pub fn rank(&self) -> usize {
        match self {
            ModpVerdict::Blocked { rank } | ModpVerdict::Open { rank } => *rank,
        }
    }
}

/// Stack the transposes of the basis matrices and compare their `F_p` rank
/// against the ambient dimension `n`.
pub fn modp_obstruction(basis: &[IntMat], p: u64, n: usize) -> ModpVerdict {
    if n == 0 {
        // the empty matrix is an isomorphism of zero lattices
        return ModpVerdict::Open { rank: 0 };
    }
    if basis.is_empty() {
        return ModpVerdict::Blocked { rank: 0 };
    }
    let transposed: Vec<IntMat> = basis.iter().map(|m| m.transpose()).collect();
    let refs: Vec<&IntMat> = transposed.iter().collect();
    let stacked = IntMat::vstack(&refs);
    let rank = rank_mod_p(&stacked, p);
    if rank < n {
        ModpVerdict::Blocked { rank }
    } else {
        ModpVerdict::Open { rank }
    }
}
