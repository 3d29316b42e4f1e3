//! The four-part invariant tuple attached to a lattice through its flabby
//! class: the stable type of [M]^fl (zero / invertible / neither), H¹(G, F),
//! Ш¹_ω(G, M°), and H¹(G, F(F)).

use std::fmt;

use cohomology::{h1, h1_class_vector, sha_omega1};
use equivalence::{
    stably_equivalent_decision, CertificateP, DecisionOptions, StableDecision,
};
use exact_linalg::AbInv;
use lattices::{direct_sum, dual, zero_lattice, GLattice};
use matgroups::SubgroupCatalog;

use crate::resolution::{flabby_resolution, FlabbyOptions};

/// Stable type of the flabby class. `Zero` and `Invertible` are backed by a
/// verified certificate; `NotInvertible` by an exact cohomological
/// obstruction or a refuted screening system; `Unknown` means the searches
/// ran out of budget without either.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum L1 {
    Zero,
    Invertible,
    NotInvertible,
    Unknown,
}

impl L1 {
    /// Numeric code: 0 = zero, 1 = invertible, 2 = not invertible.
    pub fn code(&self) -> Option<u8> {
        match self {
            L1::Zero => Some(0),
            L1::Invertible => Some(1),
            L1::NotInvertible => Some(2),
            L1::Unknown => None,
        }
    }
}

/// Knobs for [`torus_invariants`]: resolution options shared by both flabby
/// resolutions, plus separate decision budgets for the two certificate
/// searches (F stably trivial; F ⊕ F(F) stably trivial).
#[derive(Clone, Debug, Default)]
pub struct TiOptions {
    pub resolution: FlabbyOptions,
    pub zero_test: DecisionOptions,
    pub invertible_test: DecisionOptions,
}

/// The invariant tuple [l1, l2, l3, l4] together with the witness that
/// settled l1: a verified certificate for Zero/Invertible, an obstruction
/// description for NotInvertible.
#[derive(Clone, Debug)]
pub struct TorusInvariants {
    pub l1: L1,
    /// H¹(G, F) for F the flabby-resolution quotient of M.
    pub l2: AbInv,
    /// Ш¹_ω(G, M°): classes vanishing on every cyclic subgroup.
    pub l3: AbInv,
    /// H¹(G, F₂) for F₂ the flabby-resolution quotient of F.
    pub l4: AbInv,
    pub f_rank: usize,
    pub f2_rank: usize,
    pub certificate: Option<CertificateP>,
    pub obstruction: Option<String>,
}

fn fmt_ab(ab: &AbInv, out: &mut fmt::Formatter<'_>) -> fmt::Result {
    write!(out, "(")?;
    let mut first = true;
    for d in ab.torsion() {
        if !first {
            write!(out, ",")?;
        }
        write!(out, "{d}")?;
        first = false;
    }
    if ab.free_rank() > 0 {
        if !first {
            write!(out, ",")?;
        }
        write!(out, "Z^{}", ab.free_rank())?;
    }
    write!(out, ")")
}

impl fmt::Display for TorusInvariants {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.l1.code() {
            Some(c) => write!(out, "[{c}, ")?,
            None => write!(out, "[?, ")?,
        }
        fmt_ab(&self.l2, out)?;
        write!(out, ", ")?;
        fmt_ab(&self.l3, out)?;
        write!(out, ", ")?;
        fmt_ab(&self.l4, out)?;
        write!(out, "]")
    }
}

/// Compute the invariant tuple of `m`.
///
/// l2–l4 are exact. l1 is decided in order: any nonzero H¹(H, F) for a
/// subgroup class (which includes l2) or nonzero l4 refutes invertibility
/// outright, since an invertible lattice is a direct summand of a
/// permutation lattice and those have vanishing H¹ on every subgroup — and
/// not invertible implies not zero, so no search is needed. With a clean
/// obstruction scan, a stable-triviality certificate for F gives `Zero`;
/// failing that, a stable-triviality certificate for F ⊕ F(F) gives
/// `Invertible` (the flabby class of F(F) is the inverse of [F] exactly when
/// [F] is invertible), a refutation of that comparison gives
/// `NotInvertible`, and otherwise l1 is `Unknown`.
pub fn torus_invariants(
    m: &GLattice,
    catalog: &SubgroupCatalog,
    opts: &TiOptions,
) -> TorusInvariants {
    let f = flabby_resolution(m, catalog, &opts.resolution).f;
    let f2 = flabby_resolution(&f, catalog, &opts.resolution).f;
    let l2 = h1(&f);
    let l3 = sha_omega1(&dual(m), catalog);
    let l4 = h1(&f2);
    let zero = zero_lattice(m.group());
    let mut out = TorusInvariants {
        l1: L1::Unknown,
        l2,
        l3,
        l4,
        f_rank: f.rank(),
        f2_rank: f2.rank(),
        certificate: None,
        obstruction: None,
    };

    if !out.l2.is_trivial() {
        out.l1 = L1::NotInvertible;
        out.obstruction = Some(format!("H1(G, F) = {} is nonzero", out.l2));
        return out;
    }
    if !out.l4.is_trivial() {
        out.l1 = L1::NotInvertible;
        out.obstruction = Some(format!("H1(G, F(F)) = {} is nonzero", out.l4));
        return out;
    }
    let h1f = h1_class_vector(&f, catalog);
    if let Some((idx, bad)) = h1f.iter().enumerate().find(|(_, a)| !a.is_trivial())
    {
        out.l1 = L1::NotInvertible;
        out.obstruction = Some(format!(
            "H1(H, F) = {bad} is nonzero on subgroup class {idx}"
        ));
        return out;
    }

    let rep_zero = stably_equivalent_decision(catalog, &f, &zero, &opts.zero_test);
    if let StableDecision::Equivalent(cert) = rep_zero.decision {
        out.l1 = L1::Zero;
        out.certificate = Some(*cert);
        return out;
    }

    let both = direct_sum(&[&f, &f2]).expect("F and F(F) share the group");
    let rep_inv =
        stably_equivalent_decision(catalog, &both, &zero, &opts.invertible_test);
    match rep_inv.decision {
        StableDecision::Equivalent(cert) => {
            out.l1 = L1::Invertible;
            out.certificate = Some(*cert);
        }
        StableDecision::NotEquivalent { reason } => {
            out.l1 = L1::NotInvertible;
            out.obstruction =
                Some(format!("F + F(F) is not stably a permutation lattice: {reason}"));
        }
        StableDecision::Unknown => {
            out.l1 = L1::Unknown;
        }
    }
    out
}
