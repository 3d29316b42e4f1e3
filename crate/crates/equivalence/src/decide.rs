//! Deciding stable isomorphism of two lattices over one group.
//!
//! `left` and `right` are stably isomorphic when `left ⊕ P ≅ right ⊕ Q`
//! for some permutation lattices `P`, `Q`. The decision runs the screening
//! system first: an infeasible system refutes every candidate shape at
//! once. A feasible system nominates a concrete shape, for which the
//! intertwiner search hunts a unimodular certificate. When the system forces
//! the paddings to agree (`basis = {(0,…,0,1)}`), cancellation over `F_p`
//! reduces stable isomorphism to plain isomorphism and a mod-p rank
//! deficiency refutes it. Everything else stays `Unknown`.

use exact_linalg::IntMat;
use lattices::GLattice;
use matgroups::{FinGroup, SubgroupCatalog};
use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::modp::{modp_obstruction, ModpVerdict};
use crate::possibility::{
    choose_solution, possibility_basis, side_split, PossibilityBasis,
    PossibilityOptions, PossibilityStatus, SideDescriptor,
};
use crate::search::{combo_search, ComboWitness, SearchBudget};
use crate::space::{certificate_space, verify_certificate, CertificateSpace};

/// A verified certificate: `p` intertwines the assembled right side onto the
/// assembled left side of `vector` with determinant ±1.
#[derive(Clone, Debug)]
pub struct CertificateP {
    pub p: IntMat,
    pub vector: Vec<BigInt>,
    pub lhs: SideDescriptor,
    pub rhs: SideDescriptor,
    pub strategy: String,
    pub seed: u64,
    pub trials: u64,
}

/// Outcome of [`stably_equivalent_decision`].
#[derive(Clone, Debug)]
pub enum StableDecision {
    Equivalent(Box<CertificateP>),
    NotEquivalent { reason: String },
    Unknown,
}

impl StableDecision {
    pub fn is_equivalent(&self) -> bool {
        matches!(self, StableDecision::Equivalent(_))
    }
    pub fn is_not_equivalent(&self) -> bool {
        matches!(self, StableDecision::NotEquivalent { .. })
    }
}

/// Knobs for the decision pipeline.
#[derive(Clone, Debug)]
pub struct DecisionOptions {
    pub seed: u64,
    pub budget: SearchBudget,
    /// Coefficient set for the certificate search.
    pub coeffs: Vec<i64>,
    pub possibility: PossibilityOptions,
    /// Primes for the forced-shape refutation; `None` means the prime
    /// divisors of the group order.
    pub primes: Option<Vec<u64>>,
}

impl Default for DecisionOptions {
    fn default() -> Self {
        DecisionOptions {
            seed: 1,
            budget: SearchBudget::default(),
            coeffs: vec![-1, 0, 1],
            possibility: PossibilityOptions::default(),
            primes: None,
        }
    }
}

/// Decision plus the evidence that produced it.
#[derive(Clone, Debug)]
pub struct DecisionReport {
    pub decision: StableDecision,
    pub possibility: PossibilityBasis,
    /// The solution vector the certificate search used, if any.
    pub chosen: Option<Vec<BigInt>>,
}

pub fn prime_divisors(mut n: usize) -> Vec<u64> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            out.push(p as u64);
            while n % p == 0 {
                n /= p;
            }
        }
        p += 1;
    }
    if n > 1 {
        out.push(n as u64);
    }
    out
}

fn unit_b_vector(width: usize) -> Vec<BigInt> {
    let mut v = vec![BigInt::zero(); width];
    v[width - 1] = BigInt::one();
    v
}

/// Whether the solution basis is exactly the single row `(0, …, 0, 1)`:
/// every stable isomorphism is then padding-free up to identical paddings,
/// which is the shape cancellation arguments apply to.
fn forces_bare_shape(pb: &PossibilityBasis) -> bool {
    if pb.basis.rows() != 1 {
        return false;
    }
    let w = pb.basis.cols();
    (0..w - 1).all(|c| pb.basis.at(0, c).is_zero())
        && pb.basis.at(0, w - 1).is_one()
}

/// Decide whether `left` and `right` are stably isomorphic over the group of
/// the catalog. Sound by construction: `Equivalent` carries a verified
/// certificate, `NotEquivalent` carries an infeasible screening system or a
/// blocked mod-p rank on the forced shape, everything else is `Unknown`.
pub fn stably_equivalent_decision(
    catalog: &SubgroupCatalog,
    left: &GLattice,
    right: &GLattice,
    opts: &DecisionOptions,
) -> DecisionReport {
    let group = left.group().clone();
    let pb = possibility_basis(catalog, left, right, &opts.possibility);
    let width = pb.width();

    // Equal actions: the identity certifies the padding-free shape.
    if left.same_action(right) {
        let v = unit_b_vector(width);
        let (lhs, rhs) = side_split(&v);
        let p = IntMat::identity(left.rank());
        debug_assert!(verify_certificate(&group, catalog, &v, left, right, &p));
        return DecisionReport {
            decision: StableDecision::Equivalent(Box::new(CertificateP {
                p,
                vector: v.clone(),
                lhs,
                rhs,
                strategy: "identity".to_string(),
                seed: opts.seed,
                trials: 0,
            })),
            possibility: pb,
            chosen: Some(v),
        };
    }

    match &pb.status {
        PossibilityStatus::Impossible => {
            return DecisionReport {
                decision: StableDecision::NotEquivalent {
                    reason: "screening system has no integer solutions".to_string(),
                },
                possibility: pb,
                chosen: None,
            };
        }
        PossibilityStatus::NoUnitB { gcd } => {
            return DecisionReport {
                decision: StableDecision::NotEquivalent {
                    reason: format!(
                        "screening system has no solution with b1 = ±1 (b1 gcd {gcd})"
                    ),
                },
                possibility: pb,
                chosen: None,
            };
        }
        PossibilityStatus::Viable => {}
    }

    let mut costs: Vec<u64> = catalog
        .classes
        .iter()
        .map(|c| (group.order() / c.order) as u64)
        .collect();
    costs.push((left.rank() + right.rank()) as u64);
    let v = choose_solution(&pb.basis, &costs)
        .expect("a viable system yields a unit-b1 solution");

    let space: CertificateSpace =
        certificate_space(&group, catalog, &v, left, right);
    debug_assert_eq!(
        space.lhs.rank(),
        space.rhs.rank(),
        "the identity-trace equation forces equal side ranks"
    );

    if let Some(w) = combo_search(&space.basis, &opts.coeffs, opts.seed, &opts.budget)
    {
        let ComboWitness { p, seed, strategy, trials, .. } = w;
        assert!(
            verify_certificate(&group, catalog, &v, left, right, &p),
            "search outputs must verify"
        );
        return DecisionReport {
            decision: StableDecision::Equivalent(Box::new(CertificateP {
                p,
                vector: v.clone(),
                lhs: space.lhs_desc.clone(),
                rhs: space.rhs_desc.clone(),
                strategy,
                seed,
                trials,
            })),
            possibility: pb,
            chosen: Some(v),
        };
    }

    // Forced padding-free shape: mod-p cancellation applies.
    if forces_bare_shape(&pb) {
        let primes = opts
            .primes
            .clone()
            .unwrap_or_else(|| prime_divisors(group.order()));
        let bare = unit_b_vector(width);
        let bare_space = if v == bare {
            space
        } else {
            certificate_space(&group, catalog, &bare, left, right)
        };
        let n = bare_space.rhs.rank();
        for p in primes {
            if let ModpVerdict::Blocked { rank } =
                modp_obstruction(&bare_space.basis, p, n)
            {
                return DecisionReport {
                    decision: StableDecision::NotEquivalent {
                        reason: format!(
                            "all integral intertwiners are singular mod {p} \
                             (stacked rank {rank} < {n}) and the screening \
                             system forces identical paddings"
                        ),
                    },
                    possibility: pb,
                    chosen: Some(v),
                };
            }
        }
    }

    DecisionReport { decision: StableDecision::Unknown, possibility: pb, chosen: Some(v) }
}
