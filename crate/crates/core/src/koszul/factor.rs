//! Factoring a morphism of complexes with torsion homology into degreewise
//! split monos with spherical subquotients, followed by a
//! quasi-isomorphism.

use super::{in_a, in_a_n};
use crate::complex::{
    cone, hull, nullhomotopy, quasi_iso_degree, shift, split_quotient, structure_maps, truncation_splitting,
    ChainComplex, ChainMap, QisDegree,
};
use crate::error::{Error, Result};
use crate::linalg::Matrix;

/// One factorization step `f = h ∘ g` through `Z`, the fiber of
/// `a b : Y -> W` where `W = τ≥n+2 Cone f`, `b` is the inclusion of `Y`
/// into the cone and `a` is the retraction onto `W`.
///
/// `Z_k = W_{k+1} ⊕ Y_k` with `d^Z = [[-d^W, a b], [0, d^Y]]`,
/// `g = (H; f)` and `h = (0, 1)`, where `H = -a ι` for the inclusion
/// `ι : X_k -> Cone(f)_{k+1}`, so that `d H + H d = a b f`.
#[derive(Clone, Debug)]
pub struct FactorStep {
    pub n: i64,
    pub f: ChainMap,
    pub w: ChainComplex,
    /// `a b : Y -> W`.
    pub ab: ChainMap,
    pub z: ChainComplex,
    pub g: ChainMap,
    pub h: ChainMap,
}

/// Outcome of the checks on a [`FactorStep`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FactorStepReport {
    pub composite: bool,
    pub cone_g_spherical: bool,
    /// `H_k(Cone h) ≅ H_k(W)` in every degree.
    pub cone_h_homology: bool,
    /// Explicit maps `Cone h ⇄ W` composing to the identity on `W` and to
    /// a map homotopic to the identity on `Cone h`; only attempted for
    /// narrow inputs.
    pub cone_h_equivalence: Option<bool>,
}

impl FactorStepReport {
    pub fn passed(&self) -> bool {
        self.composite && self.cone_g_spherical && self.cone_h_homology && self.cone_h_equivalence != Some(false)
    }
}

/// Support width above which the homotopy-equivalence search is skipped.
const EQUIVALENCE_WIDTH: i64 = 3;

fn width(xs: &[&ChainComplex]) -> i64 {
    hull(xs).map_or(0, |(lo, hi)| hi - lo + 1)
}

impl FactorStep {
    pub fn verify(&self) -> FactorStepReport {
        let composite = self.h.after(&self.g).is_ok_and(|c| c == self.f);
        let cone_g_spherical = in_a_n(&cone(&self.g).complex, self.n + 1).holds();
        let ch = cone(&self.h).complex;
        let cone_h_homology = match hull(&[&ch, &self.w]) {
            None => true,
            Some((lo, hi)) => (lo..=hi).all(|k| ch.homology(k) == self.w.homology(k)),
        };
        let narrow = width(&[self.f.source(), self.f.target()]) <= EQUIVALENCE_WIDTH;
        let cone_h_equivalence = narrow.then(|| self.cone_h_equivalence(&ch));
        FactorStepReport { composite, cone_g_spherical, cone_h_homology, cone_h_equivalence }
    }

    /// `Cone(h)_k = W_k ⊕ Y_{k-1} ⊕ Y_k`; `π = (1, 0, -ab)` and
    /// `ι = (1; 0; 0)` with `π ι = 1` and `ι π` homotopic to `1`.
    fn cone_h_equivalence(&self, ch: &ChainComplex) -> bool {
        let (w, y) = (&self.w, self.f.target());
        let ring = self.f.ring();
        let pi = ChainMap::from_fn(ch, w, |k| {
            let ab = -&*self.ab.component(k);
            Matrix::hstack(
                ring,
                w.rank(k),
                &[&Matrix::identity(ring, w.rank(k)), &Matrix::zeros(ring, w.rank(k), y.rank(k - 1)), &ab],
            )
        });
        let iota = ChainMap::from_fn(w, ch, |k| {
            Matrix::vstack(
                ring,
                w.rank(k),
                &[&Matrix::identity(ring, w.rank(k)), &Matrix::zeros(ring, y.rank(k - 1) + y.rank(k), w.rank(k))],
            )
        });
        let (Ok(pi), Ok(iota)) = (pi, iota) else { return false };
        let Ok(back) = pi.after(&iota) else { return false };
        let Ok(round) = iota.after(&pi) else { return false };
        back.is_identity() && nullhomotopy(&round.sub(&ChainMap::identity(ch)).expect("parallel")).is_some()
    }
}

fn require_torsion_homology(f: &ChainMap) -> Result<()> {
    if !in_a(f.source()).holds() || !in_a(f.target()).holds() {
        return Err(Error::pre("source and target must have torsion homology"));
    }
    Ok(())
}

/// Refused unless `f` is an `n`-quasi-isomorphism between complexes with
/// torsion homology.
pub fn factor_step(f: &ChainMap, n: i64) -> Result<FactorStep> {
    require_torsion_homology(f)?;
    if quasi_iso_degree(f) < QisDegree::Finite(n) {
        return Err(Error::pre(format!("the map is not an {n}-quasi-isomorphism")));
    }
    let ring = f.ring();
    let (x, y) = (f.source(), f.target());
    let c = cone(f);
    let split = truncation_splitting(&c.complex, n + 1)?;
    let w = split.triple.sub.clone();
    let a = &split.u;
    let ab = a.after(&c.into)?;

    let z = match hull(&[&shift(&w, 1), y]) {
        None => ChainComplex::zero(ring),
        Some((lo, hi)) => ChainComplex::new(
            ring,
            lo,
            (lo..=hi).map(|k| w.rank(k + 1) + y.rank(k)).collect(),
            (lo + 1..=hi)
                .map(|k| {
                    Matrix::blocks(
                        ring,
                        &[w.rank(k), y.rank(k - 1)],
                        &[w.rank(k + 1), y.rank(k)],
                        &[vec![Some(&-&*w.d(k + 1)), Some(&ab.component(k))], vec![None, Some(&y.d(k))]],
                    )
                })
                .collect(),
        )?,
    };

    let g = ChainMap::from_fn(x, &z, |k| {
        let iota = Matrix::vstack(
            ring,
            x.rank(k),
            &[&Matrix::identity(ring, x.rank(k)), &Matrix::zeros(ring, y.rank(k + 1), x.rank(k))],
        );
        let hk = -&(&*a.component(k + 1) * &iota);
        Matrix::vstack(ring, x.rank(k), &[&hk, &f.component(k)])
    })?;
    let h = ChainMap::from_fn(&z, y, |k| {
        Matrix::hstack(
            ring,
            y.rank(k),
            &[&Matrix::zeros(ring, y.rank(k), w.rank(k + 1)), &Matrix::identity(ring, y.rank(k))],
        )
    })?;
    Ok(FactorStep { n, f: f.clone(), w, ab, z, g, h })
}

/// `X = X^0 -> X^1 -> ... -> X^m -> Y`: every stage is a degreewise split
/// mono whose quotient is spherical in the recorded degree, and the final
/// map is a quasi-isomorphism.
#[derive(Clone, Debug)]
pub struct CellularFactorization {
    pub f: ChainMap,
    pub stages: Vec<ChainMap>,
    /// Spherical degree of each stage's subquotient.
    pub degrees: Vec<i64>,
    pub subquotients: Vec<ChainComplex>,
    pub final_map: ChainMap,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FactorizationReport {
    pub split_monos: bool,
    pub final_quasi_iso: bool,
    pub spherical_subquotients: bool,
    pub composes_to_f: bool,
    pub stage_count: usize,
    /// Support width of source and target together.
    pub width: usize,
}

impl FactorizationReport {
    pub fn passed(&self) -> bool {
        self.split_monos
            && self.final_quasi_iso
            && self.spherical_subquotients
            && self.composes_to_f
            && self.stage_count <= self.width + 1
    }
}

impl CellularFactorization {
    pub fn verify(&self) -> FactorizationReport {
        let split_monos = self.stages.iter().all(ChainMap::is_degreewise_split_mono);
        let final_quasi_iso = self.final_map.is_quasi_iso();
        let spherical_subquotients = self.stages.iter().zip(&self.degrees).all(|(s, &k)| {
            split_quotient(s).is_some_and(|(q, _)| in_a_n(&q, k).holds())
        }) && self.subquotients.iter().zip(&self.degrees).all(|(q, &k)| in_a_n(q, k).holds());
        let composes_to_f = self
            .stages
            .iter()
            .try_fold(ChainMap::identity(self.f.source()), |acc, s| s.after(&acc))
            .and_then(|acc| self.final_map.after(&acc))
            .is_ok_and(|c| c == self.f);
        FactorizationReport {
            split_monos,
            final_quasi_iso,
            spherical_subquotients,
            composes_to_f,
            stage_count: self.stages.len(),
            width: width(&[self.f.source(), self.f.target()]) as usize,
        }
    }
}

/// Iterates [`factor_step`] at the current quasi-isomorphism degree,
/// replacing each intermediate object by the mapping cylinder of `g` so
/// that the stage `X^k -> Cyl g` is a degreewise split mono and the new
/// map is `h ∘ p`.
pub fn cellular_factorization(f: &ChainMap) -> Result<CellularFactorization> {
    require_torsion_homology(f)?;
    let mut cur = f.clone();
    let (mut stages, mut degrees, mut subquotients) = (Vec::new(), Vec::new(), Vec::new());
    while let QisDegree::Finite(n) = quasi_iso_degree(&cur) {
        if degrees.last().is_some_and(|&k| n < k) {
            return Err(Error::pre("the quasi-isomorphism degree failed to increase"));
        }
        let step = factor_step(&cur, n)?;
        let sm = structure_maps(&step.g);
        let (q, _) = split_quotient(&sm.j1).expect("j1 is a coordinate inclusion");
        cur = step.h.after(&sm.p)?;
        stages.push(sm.j1);
        degrees.push(n + 1);
        subquotients.push(q);
    }
    Ok(CellularFactorization { f: f.clone(), stages, degrees, subquotients, final_map: cur })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::FgModule;
    use crate::pid::Ring;

    const Z: Ring = Ring::Integers;

    fn m(r: usize, c: usize, e: &[i64]) -> Matrix {
        Matrix::from_i64(Z, r, c, e)
    }

    fn two(d: i64) -> ChainComplex {
        ChainComplex::two_term(m(1, 1, &[d]), 1)
    }

    #[test]
    fn quasi_iso_above_support_is_unchanged() {
        let y = two(2);
        let f = ChainMap::identity(&y);
        let step = factor_step(&f, 5).unwrap();
        assert_eq!(step.w.total_rank(), 0);
        assert_eq!(step.h.after(&step.g).unwrap(), f);
        assert!(step.verify().passed());
    }

    #[test]
    fn zero_source_into_koszul_object() {
        let y = two(6);
        let f = ChainMap::zero(&ChainComplex::zero(Z), &y);
        let step = factor_step(&f, -1).unwrap();
        let report = step.verify();
        assert!(report.passed(), "{report:?}");
        assert_eq!(cone(&step.g).complex.homology(0), FgModule::new(Z, 0, vec![6.into()]));
    }

    #[test]
    fn step_below_qis_degree_is_refused() {
        let f = ChainMap::zero(&ChainComplex::zero(Z), &two(2));
        assert_eq!(factor_step(&f, 0).unwrap_err().kind(), "precondition");
    }

    #[test]
    fn doubling_on_a_two_term_complex() {
        let x = ChainComplex::two_term(m(1, 1, &[4]), 1);
        let f = ChainMap::from_fn(&x, &x, |_| m(1, 1, &[2])).unwrap();
        let step = factor_step(&f, quasi_iso_degree(&f).finite().unwrap()).unwrap();
        assert!(step.verify().passed());
    }

    #[test]
    fn factorization_of_a_quasi_iso_has_no_stages() {
        let y = two(2);
        let c = cellular_factorization(&ChainMap::identity(&y)).unwrap();
        assert!(c.stages.is_empty());
        assert!(c.verify().passed());
    }

    #[test]
    fn factorization_from_zero() {
        let y = two(2);
        let f = ChainMap::zero(&ChainComplex::zero(Z), &y);
        let c = cellular_factorization(&f).unwrap();
        assert_eq!(c.stages.len(), 1);
        assert_eq!(c.degrees, vec![0]);
        assert_eq!(c.subquotients[0].homology(0), FgModule::new(Z, 0, vec![2.into()]));
        let report = c.verify();
        assert!(report.passed(), "{report:?}");
    }

    #[test]
    fn factorization_of_three_term_map() {
        let x = ChainComplex::new(Z, 0, vec![1, 2, 1], vec![m(1, 2, &[1, 0]), m(2, 1, &[0, 3])]).unwrap();
        let y = two(2);
        let f = ChainMap::zero(&x, &y);
        let c = cellular_factorization(&f).unwrap();
        let report = c.verify();
        assert!(report.passed(), "{report:?}");
    }
}
