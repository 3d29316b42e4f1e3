use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;
use std::fmt;

/// Isomorphism type of a finitely generated abelian group in invariant-factor
/// form: `Z/d_1 x ... x Z/d_k x Z^free_rank` with `1 < d_1 | d_2 | ... | d_k`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct AbInv {
    torsion: Vec<BigInt>,
    free_rank: usize,
}

impl AbInv {
    /// Build from invariant factors already in divisibility order with every
    /// entry > 1.
    pub fn new(torsion: Vec<BigInt>, free_rank: usize) -> Self {
        for w in torsion.windows(2) {
            debug_assert!(w[1].is_multiple_of(&w[0]), "invariant factors out of order");
        }
        debug_assert!(torsion.iter().all(|d| *d > BigInt::from(1)));
        AbInv { torsion, free_rank }
    }

    pub fn trivial() -> Self {
        AbInv { torsion: Vec::new(), free_rank: 0 }
    }

    pub fn free(rank: usize) -> Self {
        AbInv { torsion: Vec::new(), free_rank: rank }
    }

    /// Finite cyclic group of order n (n = 1 gives the trivial group).
    pub fn cyclic(n: u64) -> Self {
        if n <= 1 {
            AbInv::trivial()
        } else {
            AbInv { torsion: vec![BigInt::from(n)], free_rank: 0 }
        }
    }

    /// Elementary abelian (Z/p)^k.
    pub fn elementary(p: u64, k: usize) -> Self {
        AbInv { torsion: vec![BigInt::from(p); k], free_rank: 0 }
    }

    pub fn torsion(&self) -> &[BigInt] {
        &self.torsion
    }

    pub fn free_rank(&self) -> usize {
        self.free_rank
    }

    pub fn is_trivial(&self) -> bool {
        self.torsion.is_empty() && self.free_rank == 0
    }

    pub fn is_finite(&self) -> bool {
        self.free_rank == 0
    }

    /// Order of the torsion subgroup.
    pub fn torsion_order(&self) -> BigInt {
        let mut o = BigInt::from(1);
        for d in &self.torsion {
            o *= d;
        }
        o
    }

    /// Number of invariant factors with p-adic valuation exactly e (e >= 1);
    /// this is the number of `Z/p^e` summands in the primary decomposition.
    pub fn p_power_count(&self, p: u64, e: u32) -> usize {
        let pb = BigInt::from(p);
        self.torsion
            .iter()
            .filter(|d| {
                let mut v = 0u32;
                let mut x = (*d).clone();
                while x.is_multiple_of(&pb) && !x.is_zero() {
                    x /= &pb;
                    v += 1;
                }
                v == e
            })
            .count()
    }

    /// Largest p-adic valuation appearing among the invariant factors.
    pub fn max_p_valuation(&self, p: u64) -> u32 {
        let pb = BigInt::from(p);
        self.torsion
            .iter()
            .map(|d| {
                let mut v = 0u32;
                let mut x = d.clone();
                while x.is_multiple_of(&pb) && !x.is_zero() {
                    x /= &pb;
                    v += 1;
                }
                v
            })
            .max()
            .unwrap_or(0)
    }

    /// The p-primary part, as an AbInv of p-power cyclic factors.
    pub fn p_part(&self, p: u64) -> AbInv {
        let pb = BigInt::from(p);
        let mut parts: Vec<BigInt> = Vec::new();
        for d in &self.torsion {
            let mut pe = BigInt::from(1);
            let mut x = d.clone();
            while x.is_multiple_of(&pb) && !x.is_zero() {
                x /= &pb;
                pe *= &pb;
            }
            if pe > BigInt::from(1) {
                parts.push(pe);
            }
        }
        parts.sort();
        AbInv { torsion: parts, free_rank: 0 }
    }

    /// Direct sum, renormalized to invariant-factor form.
    pub fn direct_sum(&self, other: &AbInv) -> AbInv {
        let mut all: Vec<BigInt> = self
            .torsion
            .iter()
            .chain(other.torsion.iter())
            .cloned()
            .collect();
        // Renormalize by repeated (gcd, lcm) folding until pairwise divisible.
        let mut changed = true;
        while changed {
            changed = false;
            all.sort();
            for i in 0..all.len() {
                for j in i + 1..all.len() {
                    if !all[j].is_multiple_of(&all[i]) {
                        let g = all[i].gcd(&all[j]);
                        let l = (&all[i] * &all[j]) / &g;
                        all[i] = g;
                        all[j] = l;
                        changed = true;
                    }
                }
            }
        }
        all.retain(|d| *d > BigInt::from(1));
        AbInv { torsion: all, free_rank: self.free_rank + other.free_rank }
    }
}

impl fmt::Display for AbInv {
    /// Torsion printed as a parenthesized divisibility chain, e.g. `(2,4)`;
    /// trivial torsion prints `()`; a free part appends ` + Z^r`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, d) in self.torsion.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{}", d)?;
        }
        write!(f, ")")?;
        if self.free_rank > 0 {
            write!(f, " + Z^{}", self.free_rank)?;
        }
        Ok(())
    }
}
