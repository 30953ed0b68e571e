use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::pid::{factor, DomainElement, Ring};

/// A finitely generated module in canonical form: `R^free_rank` plus
/// `R/(t_1) ⊕ ... ⊕ R/(t_k)` with canonical non-unit `t_1 | t_2 | ... | t_k`.
///
/// Two modules are isomorphic exactly when their canonical forms are equal.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FgModule {
    ring: Ring,
    free_rank: usize,
    torsion: Vec<DomainElement>,
}

impl FgModule {
    /// Canonicalizes an arbitrary list of cyclic orders. Zeros become free
    /// summands, units vanish, and the rest is regrouped into an invariant
    /// factor chain through prime factorization.
    pub fn new(ring: Ring, free_rank: usize, orders: Vec<DomainElement>) -> FgModule {
        let mut free_rank = free_rank;
        let mut by_prime: BTreeMap<DomainElement, Vec<u32>> = BTreeMap::new();
        for t in orders {
            assert_eq!(t.ring(), ring, "torsion order from a different domain");
            if t.is_zero() {
                free_rank += 1;
                continue;
            }
            if t.is_unit() {
                continue;
            }
            let f = factor(&t).expect("nonzero non-unit");
            for (p, e) in f.factors {
                by_prime.entry(p).or_default().push(e);
            }
        }
        let count = by_prime.values().map(Vec::len).max().unwrap_or(0);
        let mut chain = vec![ring.one(); count];
        for (p, mut exps) in by_prime {
            exps.sort_unstable_by(|a, b| b.cmp(a));
            // Largest exponents go to the last (largest) invariant factor.
            for (k, e) in exps.into_iter().enumerate() {
                let slot = &mut chain[count - 1 - k];
                *slot = &*slot * &p.pow(e);
            }
        }
        FgModule { ring, free_rank, torsion: chain }
    }

    /// Trusted constructor for lists that already form a canonical chain.
    pub(crate) fn from_chain(ring: Ring, free_rank: usize, chain: Vec<DomainElement>) -> FgModule {
        debug_assert!(chain.iter().all(|t| !t.is_zero() && !t.is_unit() && t.is_canonical()));
        debug_assert!(chain.windows(2).all(|w| w[0].divides(&w[1])));
        FgModule { ring, free_rank, torsion: chain }
    }

    pub fn zero(ring: Ring) -> FgModule {
        FgModule { ring, free_rank: 0, torsion: Vec::new() }
    }

    pub fn free(ring: Ring, rank: usize) -> FgModule {
        FgModule { ring, free_rank: rank, torsion: Vec::new() }
    }

    pub fn ring(&self) -> Ring {
        self.ring
    }

    pub fn free_rank(&self) -> usize {
        self.free_rank
    }

    pub fn torsion(&self) -> &[DomainElement] {
        &self.torsion
    }

    pub fn is_zero(&self) -> bool {
        self.free_rank == 0 && self.torsion.is_empty()
    }

    pub fn is_torsion(&self) -> bool {
        self.free_rank == 0
    }

    /// Minimal number of generators.
    pub fn is_torsion_free(&self) -> bool {
        self.torsion.is_empty()
    }

    pub fn num_generators(&self) -> usize {
        self.free_rank + self.torsion.len()
    }

    pub fn direct_sum(&self, other: &FgModule) -> FgModule {
        let orders = self.torsion.iter().chain(&other.torsion).cloned().collect();
        FgModule::new(self.ring, self.free_rank + other.free_rank, orders)
    }

    /// Total multiplicity of the prime `p` across the torsion orders.
    pub fn length_at(&self, p: &DomainElement) -> Result<u32> {
        if !self.is_torsion() {
            return Err(Error::NotTorsion);
        }
        if p.ring() != self.ring {
            return Err(Error::DomainMismatch(self.ring, p.ring()));
        }
        if p.is_zero() || p.is_unit() {
            return Err(Error::pre(format!("{p} is not a prime")));
        }
        Ok(self.torsion.iter().map(|t| t.valuation(p)).sum())
    }
}

/// Isomorphism test by comparison of canonical forms.
pub fn module_iso(m: &FgModule, n: &FgModule) -> bool {
    m == n
}

impl fmt::Display for FgModule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let ring = match self.ring {
            Ring::Integers => "Z".to_string(),
            Ring::Poly { p } => format!("F{p}[x]"),
        };
        let mut parts = Vec::new();
        if self.free_rank > 0 {
            parts.push(if self.free_rank == 1 {
                ring.clone()
            } else {
                format!("{ring}^{}", self.free_rank)
            });
        }
        for t in &self.torsion {
            parts.push(format!("{ring}/({t})"));
        }
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

impl fmt::Debug for FgModule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FgModule({self})")
    }
}
