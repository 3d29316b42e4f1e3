//! Automorphism-induced lattice twists: which group automorphisms are
//! realized by unimodular base changes, which preserve flabby classes, and
//! which preserve labelled subgroup classes.

use exact_linalg::IntMat;
use lattices::{hom_basis, twist, GLattice};
use matgroups::{Automorphism, BitSet, FinGroup, MatGroup, SubgroupCatalog};

use crate::decide::{
    prime_divisors, stably_equivalent_decision, DecisionOptions, StableDecision,
};
use crate::modp::{modp_obstruction, ModpVerdict};
use crate::search::{combo_search, SearchBudget};
use crate::space::verify_intertwiner;

/// Outcome of searching a unimodular intertwiner `M -> M^sigma`.
#[derive(Clone, Debug)]
pub enum IsoStatus {
    Member { witness: IntMat },
    Refuted { p: u64, rank: usize },
    Inconclusive,
}

impl IsoStatus {
    pub fn is_member(&self) -> bool {
        matches!(self, IsoStatus::Member { .. })
    }
    pub fn is_refuted(&self) -> bool {
        matches!(self, IsoStatus::Refuted { .. })
    }
}

/// Knobs for the intertwiner searches.
#[derive(Clone, Debug)]
pub struct AutOptions {
    pub seed: u64,
    pub budget: SearchBudget,
    pub coeffs: Vec<i64>,
    /// Primes for mod-p refutation; `None` means the prime divisors of the
    /// group order.
    pub primes: Option<Vec<u64>>,
}

impl Default for AutOptions {
    fn default() -> Self {
        AutOptions {
            seed: 1,
            budget: SearchBudget::default(),
            coeffs: vec![-1, 0, 1],
            primes: None,
        }
    }
}

/// Search a unimodular intertwiner between two lattices of one group;
/// refute over `F_p` when every integral intertwiner is singular mod p.
pub fn lattice_iso_search(
    m1: &GLattice,
    m2: &GLattice,
    opts: &AutOptions,
) -> IsoStatus {
    let basis = hom_basis(m1, m2);
    if let Some(w) = combo_search(&basis, &opts.coeffs, opts.seed, &opts.budget) {
        debug_assert!(verify_intertwiner(m1, m2, &w.p));
        return IsoStatus::Member { witness: w.p };
    }
    let primes = opts
        .primes
        .clone()
        .unwrap_or_else(|| prime_divisors(m1.group().order()));
    let n = m1.rank();
    if n == m2.rank() {
        for p in primes {
            if let ModpVerdict::Blocked { rank } = modp_obstruction(&basis, p, n) {
                return IsoStatus::Refuted { p, rank };
            }
        }
    }
    IsoStatus::Inconclusive
}

fn inner_conjugator(g: &MatGroup, sigma: &Automorphism) -> Option<usize> {
    let gens = g.generator_indices();
    (0..g.order()).find(|&c| {
        gens.iter().all(|&x| g.conj(x, c) == sigma.apply(x))
    })
}

/// For each automorphism, decide whether the twisted lattice `M^sigma` is
/// isomorphic to `M`. Inner automorphisms get the action matrix of a
/// conjugating element as an instant witness; the rest go through the
/// intertwiner search and mod-p refutation.
pub fn aut_glnz(
    m: &GLattice,
    auts: &[Automorphism],
    opts: &AutOptions,
) -> Vec<IsoStatus> {
    let g = m.group().clone();
    auts.iter()
        .map(|sigma| {
            let twisted = twist(m, &sigma.perm);
            if sigma.is_inner {
                let c = inner_conjugator(&g, sigma)
                    .expect("inner automorphisms have a conjugator");
                let witness = m.act(c).clone();
                debug_assert!(verify_intertwiner(m, &twisted, &witness));
                return IsoStatus::Member { witness };
            }
            lattice_iso_search(m, &twisted, opts)
        })
        .collect()
}

/// Produces the flabby class representative of a lattice; implemented by the
/// resolution machinery downstream so the twist classification can compare
/// flabby classes without a dependency cycle.
pub trait FlabbyOracle {
    fn flabby_of(&self, m: &GLattice) -> GLattice;
}

/// Membership of a twist in the flabby-class stabilizer.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum YStatus {
    Member,
    NonMember,
    Unknown,
}

/// The three nested stabilizer subsets of the automorphism list:
/// `x` — twists isomorphic to the lattice itself;
/// `y` — twists with stably isomorphic flabby class;
/// `z` — twists preserving every labelled subgroup class.
#[derive(Clone, Debug)]
pub struct AutClasses {
    pub x: Vec<IsoStatus>,
    pub y: Vec<YStatus>,
    pub z: Vec<bool>,
}

impl AutClasses {
    pub fn x_count(&self) -> usize {
        self.x.iter().filter(|s| s.is_member()).count()
    }
    pub fn y_member_count(&self) -> usize {
        self.y.iter().filter(|s| **s == YStatus::Member).count()
    }
    pub fn z_count(&self) -> usize {
        self.z.iter().filter(|&&b| b).count()
    }
}

fn z_membership_filtered<L: PartialEq>(
    g: &MatGroup,
    catalog: &SubgroupCatalog,
    auts: &[Automorphism],
    labels: &[L],
    allow: impl Fn(usize) -> bool,
) -> Vec<bool> {
    assert_eq!(labels.len(), catalog.classes.len(), "one label per class");
    auts.iter()
        .map(|sigma| {
            catalog.classes.iter().enumerate().all(|(ci, class)| {
                if !allow(ci) {
                    return true;
                }
                let mut img = BitSet::new(g.order());
                for x in class.rep.elems.iter() {
                    img.insert(sigma.apply(x));
                }
                let ic = catalog
                    .class_of(&img)
                    .expect("automorphic image of a subgroup is a subgroup");
                labels[ic] == labels[ci]
            })
        })
        .collect()
}

/// Which automorphisms preserve the label of every subgroup class.
pub fn z_membership<L: PartialEq>(
    g: &MatGroup,
    catalog: &SubgroupCatalog,
    auts: &[Automorphism],
    labels: &[L],
) -> Vec<bool> {
    z_membership_filtered(g, catalog, auts, labels, |_| true)
}

/// Classify every automorphism into the stabilizer subsets. `oracle`
/// enables the flabby-class comparison; without it, non-`x` members get
/// `YStatus::Unknown`.
pub fn aut_classes<L: PartialEq>(
    m: &GLattice,
    catalog: &SubgroupCatalog,
    auts: &[Automorphism],
    labels: &[L],
    oracle: Option<&dyn FlabbyOracle>,
    opts: &AutOptions,
) -> AutClasses {
    let g = m.group().clone();
    let x = aut_glnz(m, auts, opts);
    let z = z_membership(&g, catalog, auts, labels);
    let dopts = DecisionOptions {
        seed: opts.seed,
        budget: opts.budget.clone(),
        coeffs: opts.coeffs.clone(),
        possibility: Default::default(),
        primes: opts.primes.clone(),
    };
    let flabby = oracle.map(|o| o.flabby_of(m));
    let y = auts
        .iter()
        .zip(&x)
        .map(|(sigma, xs)| {
            if xs.is_member() {
                return YStatus::Member;
            }
            let (Some(oracle), Some(f)) = (oracle, flabby.as_ref()) else {
                return YStatus::Unknown;
            };
            let f_twisted = oracle.flabby_of(&twist(m, &sigma.perm));
            let report = stably_equivalent_decision(catalog, f, &f_twisted, &dopts);
            match report.decision {
                StableDecision::Equivalent(_) => YStatus::Member,
                StableDecision::NotEquivalent { .. } => YStatus::NonMember,
                StableDecision::Unknown => YStatus::Unknown,
            }
        })
        .collect();
    AutClasses { x, y, z }
}

/// The shortest prefix of the distinct subgroup indices `[G:H]`, in
/// increasing order, whose label-preservation test already cuts the
/// automorphism list down to the full test's survivors.
pub fn small_degree_test<L: PartialEq>(
    g: &MatGroup,
    catalog: &SubgroupCatalog,
    auts: &[Automorphism],
    labels: &[L],
) -> Vec<usize> {
    let order = g.order();
    let mut indices: Vec<usize> =
        catalog.classes.iter().map(|c| order / c.order).collect();
    let mut distinct = indices.clone();
    distinct.sort_unstable();
    distinct.dedup();
    indices.shrink_to_fit();

    let z_full = z_membership(g, catalog, auts, labels);
    for l in 1..=distinct.len() {
        let cut = distinct[l - 1];
        let z_l = z_membership_filtered(g, catalog, auts, labels, |ci| {
            indices[ci] <= cut
        });
        if z_l == z_full {
            return distinct[..l].to_vec();
        }
    }
    distinct
}
