//! Bounded chain complexes of finitely generated free modules, with
//! homological indexing: `d_n : X_n -> X_{n-1}`.

mod build;
mod homotopy;
mod ses;
mod truncate;

use std::borrow::Cow;
use std::fmt;
use std::ops::RangeInclusive;

use crate::error::{Error, Result};
use crate::linalg::{cokernel, elementary_divisors, kernel_basis, rank, solve, FgModule, Matrix};
use crate::pid::Ring;

pub use build::{cone, cyl_functorial, cylinder, shift, shift_map, structure_maps, Cone, StructureMaps};
pub use homotopy::{homotopy_between, nullhomotopy};
pub use ses::{
    is_degreewise_short_exact, kernel_image_sequences, quasi_iso_degree, split_quotient, ComplexSes,
    QisDegree,
};
pub use truncate::{
    canonical_triple, truncate_ge, truncate_ge_map, truncate_le, truncate_le_map, truncation_splitting, TruncationSplitting,
    TruncationTriple,
};

/// A bounded complex with explicit contiguous support `lo..=hi`. Ranks may
/// be zero inside the support; the empty complex has no degrees at all.
#[derive(Clone, PartialEq, Eq)]
pub struct ChainComplex {
    ring: Ring,
    lo: i64,
    ranks: Vec<usize>,
    /// `diffs[k]` is `d_{lo+k+1}`.
    diffs: Vec<Matrix>,
}

impl ChainComplex {
    /// `diffs` lists `d_{lo+1}, ..., d_{hi}`; `d_lo` is implicitly zero.
    pub fn new(ring: Ring, lo: i64, ranks: Vec<usize>, diffs: Vec<Matrix>) -> Result<ChainComplex> {
        if ranks.is_empty() {
            if !diffs.is_empty() {
                return Err(Error::dims(format_args!("differentials given for an empty complex")));
            }
            return Ok(ChainComplex::zero(ring));
        }
        if diffs.len() != ranks.len() - 1 {
            return Err(Error::dims(format_args!(
                "{} degrees need {} differentials, got {}",
                ranks.len(),
                ranks.len() - 1,
                diffs.len()
            )));
        }
        for (k, d) in diffs.iter().enumerate() {
            if d.ring() != ring {
                return Err(Error::DomainMismatch(ring, d.ring()));
            }
            if d.shape() != (ranks[k], ranks[k + 1]) {
                return Err(Error::dims(format_args!(
                    "d_{} is {}x{}, expected {}x{}",
                    lo + k as i64 + 1,
                    d.rows(),
                    d.cols(),
                    ranks[k],
                    ranks[k + 1]
                )));
            }
        }
        for k in 1..diffs.len() {
            if !(&diffs[k - 1] * &diffs[k]).is_zero() {
                return Err(Error::NotAComplex(format!(
                    "d_{} d_{} is not zero",
                    lo + k as i64,
                    lo + k as i64 + 1
                )));
            }
        }
        Ok(ChainComplex { ring, lo, ranks, diffs })
    }

    /// Builds from per-degree callbacks over `lo..=hi`; the result must be a
    /// complex, so this is for constructions that guarantee `d² = 0`.
    pub(crate) fn assemble(
        ring: Ring,
        lo: i64,
        hi: i64,
        rank: impl Fn(i64) -> usize,
        mut d: impl FnMut(i64) -> Matrix,
    ) -> ChainComplex {
        if hi < lo {
            return ChainComplex::zero(ring);
        }
        let ranks = (lo..=hi).map(rank).collect();
        let diffs = (lo + 1..=hi).map(&mut d).collect();
        ChainComplex::new(ring, lo, ranks, diffs).expect("construction yields a complex")
    }

    /// The empty complex.
    pub fn zero(ring: Ring) -> ChainComplex {
        ChainComplex { ring, lo: 0, ranks: Vec::new(), diffs: Vec::new() }
    }

    /// `R^rank` in degree `n`.
    pub fn concentrated(ring: Ring, n: i64, rank: usize) -> ChainComplex {
        ChainComplex { ring, lo: n, ranks: vec![rank], diffs: Vec::new() }
    }

    /// `[X_top -d-> X_{top-1}]`.
    pub fn two_term(d: Matrix, top: i64) -> ChainComplex {
        ChainComplex {
            ring: d.ring(),
            lo: top - 1,
            ranks: vec![d.rows(), d.cols()],
            diffs: vec![d],
        }
    }

    pub fn ring(&self) -> Ring {
        self.ring
    }

    pub fn is_empty(&self) -> bool {
        self.ranks.is_empty()
    }

    /// Lowest degree of the support (0 for the empty complex).
    pub fn lo(&self) -> i64 {
        self.lo
    }

    /// Highest degree of the support (`lo - 1` for the empty complex).
    pub fn hi(&self) -> i64 {
        self.lo + self.ranks.len() as i64 - 1
    }

    pub fn degrees(&self) -> RangeInclusive<i64> {
        self.lo..=self.hi()
    }

    pub fn in_support(&self, n: i64) -> bool {
        n >= self.lo && n <= self.hi()
    }

    pub fn rank(&self, n: i64) -> usize {
        if self.in_support(n) {
            self.ranks[(n - self.lo) as usize]
        } else {
            0
        }
    }

    /// `d_n : X_n -> X_{n-1}`, an empty or zero matrix outside the interior.
    pub fn d(&self, n: i64) -> Cow<'_, Matrix> {
        if n > self.lo && n <= self.hi() {
            Cow::Borrowed(&self.diffs[(n - self.lo - 1) as usize])
        } else {
            Cow::Owned(Matrix::zeros(self.ring, self.rank(n - 1), self.rank(n)))
        }
    }

    pub fn total_rank(&self) -> usize {
        self.ranks.iter().sum()
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.degrees()
            .map(|n| if n.rem_euclid(2) == 0 { 1 } else { -1 } * self.rank(n) as i64)
            .sum()
    }

    /// `H_n = ker d_n / im d_{n+1}`. The free rank is
    /// `rank X_n - rank d_n - rank d_{n+1}` and the torsion is that of the
    /// cokernel of `d_{n+1}`, since `ker d_n` is a direct summand of `X_n`.
    pub fn homology(&self, n: i64) -> FgModule {
        if !self.in_support(n) {
            return FgModule::zero(self.ring);
        }
        let below = rank(&self.d(n));
        let divisors = elementary_divisors(&self.d(n + 1));
        let free = self.rank(n) - below - divisors.len();
        FgModule::new(self.ring, free, divisors)
    }

    /// Homology in every degree of the support.
    pub fn homology_all(&self) -> Vec<(i64, FgModule)> {
        self.degrees().map(|n| (n, self.homology(n))).collect()
    }

    pub fn is_acyclic(&self) -> bool {
        self.degrees().all(|n| self.homology(n).is_zero())
    }

    /// Whether every homology module is torsion.
    pub fn has_torsion_homology(&self) -> bool {
        self.degrees().all(|n| self.homology(n).is_torsion())
    }

    pub fn direct_sum(&self, other: &ChainComplex) -> ChainComplex {
        let Some((lo, hi)) = hull(&[self, other]) else {
            return ChainComplex::zero(self.ring);
        };
        ChainComplex::assemble(
            self.ring,
            lo,
            hi,
            |n| self.rank(n) + other.rank(n),
            |n| Matrix::block_diag(self.ring, &[&self.d(n), &other.d(n)]),
        )
    }

    /// The same complex with support widened to contain `lo..=hi`.
    pub fn padded(&self, lo: i64, hi: i64) -> ChainComplex {
        let (lo, hi) = if self.is_empty() { (lo, hi) } else { (lo.min(self.lo), hi.max(self.hi())) };
        ChainComplex::assemble(self.ring, lo, hi, |n| self.rank(n), |n| self.d(n).into_owned())
    }
}

/// Contiguous hull of the supports of the nonempty complexes.
pub(crate) fn hull(xs: &[&ChainComplex]) -> Option<(i64, i64)> {
    xs.iter()
        .filter(|x| !x.is_empty())
        .map(|x| (x.lo(), x.hi()))
        .reduce(|(a, b), (c, d)| (a.min(c), b.max(d)))
}

/// Homology computed from an explicit basis of cycles: the cokernel of
/// `d_{n+1}` written in cycle coordinates. Slower than
/// [`ChainComplex::homology`]; kept as an independent check.
pub fn homology_via_cycles(x: &ChainComplex, n: i64) -> FgModule {
    let cycles = kernel_basis(&x.d(n));
    let boundaries = solve(&cycles, &x.d(n + 1))
        .expect("shapes agree")
        .expect("boundaries are cycles");
    cokernel(&boundaries)
}

impl fmt::Debug for ChainComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return write!(f, "ChainComplex(0)");
        }
        writeln!(f, "ChainComplex over {} in degrees {}..={}", self.ring, self.lo, self.hi())?;
        for n in self.degrees().rev() {
            writeln!(f, "  X_{n}: rank {}", self.rank(n))?;
            if n > self.lo {
                writeln!(f, "  d_{n} = {:?}", self.d(n))?;
            }
        }
        Ok(())
    }
}

/// A chain map, stored over the support of its source.
#[derive(Clone, PartialEq, Eq)]
pub struct ChainMap {
    source: ChainComplex,
    target: ChainComplex,
    comps: Vec<Matrix>,
}

impl ChainMap {
    /// `comps[k]` is the component in degree `source.lo() + k`. Shapes and
    /// `d^Y f = f d^X` are checked.
    pub fn new(source: ChainComplex, target: ChainComplex, comps: Vec<Matrix>) -> Result<ChainMap> {
        if source.ring != target.ring {
            return Err(Error::DomainMismatch(source.ring, target.ring));
        }
        if comps.len() != source.ranks.len() {
            return Err(Error::dims(format_args!(
                "{} components for {} source degrees",
                comps.len(),
                source.ranks.len()
            )));
        }
        for (k, c) in comps.iter().enumerate() {
            let n = source.lo + k as i64;
            if c.ring() != source.ring {
                return Err(Error::DomainMismatch(source.ring, c.ring()));
            }
            if c.shape() != (target.rank(n), source.rank(n)) {
                return Err(Error::dims(format_args!(
                    "f_{n} is {}x{}, expected {}x{}",
                    c.rows(),
                    c.cols(),
                    target.rank(n),
                    source.rank(n)
                )));
            }
        }
        let f = ChainMap { source, target, comps };
        if let Some(n) = f.first_noncommuting_degree() {
            return Err(Error::NotAChainMap(format!("d_{n} f_{n} != f_{} d_{n}", n - 1)));
        }
        Ok(f)
    }

    fn first_noncommuting_degree(&self) -> Option<i64> {
        let (x, y) = (&self.source, &self.target);
        if x.is_empty() {
            return None;
        }
        (x.lo..=x.hi() + 1).find(|&n| &*y.d(n) * &*self.component(n) != &*self.component(n - 1) * &*x.d(n))
    }

    pub fn from_fn(
        source: &ChainComplex,
        target: &ChainComplex,
        f: impl FnMut(i64) -> Matrix,
    ) -> Result<ChainMap> {
        let comps = source.degrees().map(f).collect();
        ChainMap::new(source.clone(), target.clone(), comps)
    }

    /// For constructions that are chain maps by design.
    pub(crate) fn assemble(source: &ChainComplex, target: &ChainComplex, f: impl FnMut(i64) -> Matrix) -> ChainMap {
        ChainMap::from_fn(source, target, f).expect("construction yields a chain map")
    }

    pub fn identity(x: &ChainComplex) -> ChainMap {
        ChainMap::assemble(x, x, |n| Matrix::identity(x.ring, x.rank(n)))
    }

    pub fn zero(x: &ChainComplex, y: &ChainComplex) -> ChainMap {
        ChainMap::assemble(x, y, |n| Matrix::zeros(x.ring, y.rank(n), x.rank(n)))
    }

    pub fn source(&self) -> &ChainComplex {
        &self.source
    }

    pub fn target(&self) -> &ChainComplex {
        &self.target
    }

    pub fn ring(&self) -> Ring {
        self.source.ring
    }

    pub fn component(&self, n: i64) -> Cow<'_, Matrix> {
        if self.source.in_support(n) {
            Cow::Borrowed(&self.comps[(n - self.source.lo) as usize])
        } else {
            Cow::Owned(Matrix::zeros(self.source.ring, self.target.rank(n), 0))
        }
    }

    /// `self ∘ first`.
    pub fn after(&self, first: &ChainMap) -> Result<ChainMap> {
        if first.target != self.source {
            return Err(Error::dims(format_args!("composition through different complexes")));
        }
        Ok(ChainMap::assemble(&first.source, &self.target, |n| {
            &*self.component(n) * &*first.component(n)
        }))
    }

    fn same_ends(&self, other: &ChainMap) -> Result<()> {
        if self.source != other.source || self.target != other.target {
            return Err(Error::dims(format_args!("maps are not parallel")));
        }
        Ok(())
    }

    pub fn add(&self, other: &ChainMap) -> Result<ChainMap> {
        self.same_ends(other)?;
        Ok(ChainMap::assemble(&self.source, &self.target, |n| {
            &*self.component(n) + &*other.component(n)
        }))
    }

    pub fn sub(&self, other: &ChainMap) -> Result<ChainMap> {
        self.same_ends(other)?;
        Ok(ChainMap::assemble(&self.source, &self.target, |n| {
            &*self.component(n) - &*other.component(n)
        }))
    }

    pub fn neg(&self) -> ChainMap {
        ChainMap::assemble(&self.source, &self.target, |n| -&*self.component(n))
    }

    pub fn is_zero(&self) -> bool {
        self.comps.iter().all(Matrix::is_zero)
    }

    pub fn is_identity(&self) -> bool {
        self.source == self.target && self.comps.iter().all(Matrix::is_identity)
    }

    /// Every component has a left inverse over the domain.
    pub fn is_degreewise_split_mono(&self) -> bool {
        self.comps.iter().all(|c| crate::linalg::left_inverse(c).is_some())
    }

    /// Whether the induced maps on homology are all isomorphisms.
    pub fn is_quasi_iso(&self) -> bool {
        cone(self).complex.is_acyclic()
    }
}

impl fmt::Debug for ChainMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "ChainMap")?;
        for n in self.source.degrees().rev() {
            writeln!(f, "  f_{n} = {:?}", self.component(n))?;
        }
        Ok(())
    }
}

/// A homotopy `H` between parallel maps `u, v : X -> Y`, with
/// `d^Y_{n+1} H_n + H_{n-1} d^X_n = u_n - v_n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Homotopy {
    u: ChainMap,
    v: ChainMap,
    comps: Vec<Matrix>,
}

impl Homotopy {
    /// `comps[k]` is `H_{lo+k} : X_{lo+k} -> Y_{lo+k+1}` over the source support.
    pub fn new(u: ChainMap, v: ChainMap, comps: Vec<Matrix>) -> Result<Homotopy> {
        u.same_ends(&v)?;
        let (x, y) = (&u.source, &u.target);
        if comps.len() != x.ranks.len() {
            return Err(Error::dims(format_args!("{} homotopy components for {} degrees", comps.len(), x.ranks.len())));
        }
        for (k, h) in comps.iter().enumerate() {
            let n = x.lo + k as i64;
            if h.shape() != (y.rank(n + 1), x.rank(n)) {
                return Err(Error::dims(format_args!("H_{n} has shape {:?}", h.shape())));
            }
        }
        let (x, y) = (x.clone(), y.clone());
        let h = Homotopy { u, v, comps };
        for n in x.degrees() {
            let lhs = &(&*y.d(n + 1) * &*h.component(n)) + &(&*h.component(n - 1) * &*x.d(n));
            let rhs = &*h.u.component(n) - &*h.v.component(n);
            if lhs != rhs {
                return Err(Error::NotAHomotopy(format!("fails in degree {n}")));
            }
        }
        Ok(h)
    }

    pub fn u(&self) -> &ChainMap {
        &self.u
    }

    pub fn v(&self) -> &ChainMap {
        &self.v
    }

    pub fn component(&self, n: i64) -> Cow<'_, Matrix> {
        let x = &self.u.source;
        if x.in_support(n) {
            Cow::Borrowed(&self.comps[(n - x.lo) as usize])
        } else {
            Cow::Owned(Matrix::zeros(x.ring, self.u.target.rank(n + 1), x.rank(n)))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const Z: Ring = Ring::Integers;

    fn m(r: usize, c: usize, e: &[i64]) -> Matrix {
        Matrix::from_i64(Z, r, c, e)
    }

    #[test]
    fn rejects_non_complex() {
        let err = ChainComplex::new(Z, 0, vec![1, 1, 1], vec![m(1, 1, &[1]), m(1, 1, &[1])]).unwrap_err();
        assert_eq!(err.kind(), "not-a-complex");
        let err = ChainComplex::new(Z, 0, vec![1, 2], vec![m(1, 1, &[1])]).unwrap_err();
        assert_eq!(err.kind(), "dimension-mismatch");
    }

    #[test]
    fn homology_examples() {
        let x = ChainComplex::two_term(m(1, 1, &[6]), 1);
        assert_eq!(x.homology(0), FgModule::new(Z, 0, vec![6.into()]));
        assert!(x.homology(1).is_zero());
        let id = ChainComplex::two_term(Matrix::identity(Z, 3), 1);
        assert!(id.is_acyclic());
        let flat = ChainComplex::new(Z, 0, vec![2, 3], vec![Matrix::zeros(Z, 2, 3)]).unwrap();
        assert_eq!(flat.homology(0), FgModule::free(Z, 2));
        assert_eq!(flat.homology(1), FgModule::free(Z, 3));
    }

    #[test]
    fn homology_routes_agree() {
        // Z -> Z^2 -> Z^2 with d_2 = (2, 2)^T, d_1 = [[1, -1], [3, -3]].
        let x = ChainComplex::new(Z, 0, vec![2, 2, 1], vec![m(2, 2, &[1, -1, 3, -3]), m(2, 1, &[2, 2])]).unwrap();
        for n in x.degrees() {
            assert_eq!(x.homology(n), homology_via_cycles(&x, n), "degree {n}");
        }
        assert_eq!(x.homology(1), FgModule::new(Z, 0, vec![2.into()]));
    }

    #[test]
    fn chain_map_law_checked() {
        let x = ChainComplex::two_term(m(1, 1, &[2]), 1);
        assert!(ChainMap::new(x.clone(), x.clone(), vec![m(1, 1, &[3]), m(1, 1, &[3])]).is_ok());
        let err = ChainMap::new(x.clone(), x, vec![m(1, 1, &[1]), m(1, 1, &[3])]).unwrap_err();
        assert_eq!(err.kind(), "not-a-chain-map");
    }

    #[test]
    fn homotopy_law_checked() {
        let x = ChainComplex::two_term(m(1, 1, &[1]), 1);
        let id = ChainMap::identity(&x);
        let zero = ChainMap::zero(&x, &x);
        assert!(Homotopy::new(id.clone(), zero.clone(), vec![m(1, 1, &[1]), m(0, 1, &[])]).is_ok());
        let err = Homotopy::new(id, zero, vec![m(1, 1, &[2]), m(0, 1, &[])]).unwrap_err();
        assert_eq!(err.kind(), "not-a-homotopy");
    }

    #[test]
    fn euler_characteristic_and_sums() {
        let x = ChainComplex::two_term(m(1, 2, &[1, 2]), 1);
        assert_eq!(x.euler_characteristic(), -1);
        let y = ChainComplex::concentrated(Z, 3, 2);
        let s = x.direct_sum(&y);
        assert_eq!(s.degrees(), 0..=3);
        assert_eq!(s.euler_characteristic(), -3);
    }
}
