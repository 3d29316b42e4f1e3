//! Indecomposability certificates for lattices via their endomorphism ring
//! mod p.

use lattices::GLattice;

use crate::algebra::{endo_mod_p, FpAlgebra};
use crate::idempotents::{idempotents_mod_p, DEFAULT_IDEMPOTENT_CAP};
use crate::radical::radical_codim1;

/// Verdict on p-local indecomposability of a lattice.
///
/// `Yes` certifies that the p-adic completion of the lattice is an
/// indecomposable module: nontrivial integral idempotents reduce to
/// nontrivial idempotents mod p, so an endomorphism ring with only trivial
/// idempotents mod p leaves nothing to split off. `No` carries a nontrivial
/// idempotent of the endomorphism ring mod p, which lifts p-adically to a
/// genuine splitting.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Indecomposability {
    Yes { reason: String },
    No { idempotent: Vec<u64> },
    Unknown,
}

impl Indecomposability {
    pub fn is_yes(&self) -> bool {
        matches!(self, Indecomposability::Yes { .. })
    }

    pub fn is_no(&self) -> bool {
        matches!(self, Indecomposability::No { .. })
    }
}

/// Decides indecomposability of `M` at `p` with the default enumeration cap.
pub fn indecomposable_mod_p(m: &GLattice, p: u64) -> Indecomposability {
    indecomposable_with_cap(m, p, DEFAULT_IDEMPOTENT_CAP)
}

/// Decides indecomposability of `M` at `p`.
///
/// First tries the local-ring certificate (radical of codimension 1), then
/// full idempotent enumeration under `cap`: exactly the two trivial
/// idempotents certify Yes, any third one is a No witness. If neither path
/// is available the verdict is Unknown.
pub fn indecomposable_with_cap(m: &GLattice, p: u64, cap: u128) -> Indecomposability {
    if m.rank() == 0 {
        // The zero module splits (vacuously) and is not indecomposable.
        return Indecomposability::No { idempotent: Vec::new() };
    }
    let a = endo_mod_p(m, p);
    decide_from_algebra(&a, cap)
}

/// Same decision, starting from an already-computed endomorphism algebra.
pub fn decide_from_algebra(a: &FpAlgebra, cap: u128) -> Indecomposability {
    if a.dim() == 0 {
        return Indecomposability::No { idempotent: Vec::new() };
    }
    if radical_codim1(a) {
        return Indecomposability::Yes {
            reason: format!(
                "endomorphism ring mod {} is local (radical of codimension 1)",
                a.p()
            ),
        };
    }
    match idempotents_mod_p(a, cap) {
        Ok(es) => {
            if let Some(e) = es
                .iter()
                .find(|e| !is_zero(e) && e.as_slice() != a.identity_coords())
            {
                Indecomposability::No { idempotent: e.clone() }
            } else {
                debug_assert_eq!(es.len(), 2);
                Indecomposability::Yes {
                    reason: format!(
                        "endomorphism ring mod {} has only the trivial idempotents",
                        a.p()
                    ),
                }
            }
        }
        Err(_) => Indecomposability::Unknown,
    }
}

fn is_zero(v: &[u64]) -> bool {
    v.iter().all(|&c| c == 0)
}
