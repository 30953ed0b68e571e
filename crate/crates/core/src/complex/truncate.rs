//! Good truncations `τ≥n` (ending in `ker d_n`) and `τ≤n` (starting with
//! `im d_{n+1}`), the canonical short exact sequence
//! `τ≥n+1 X -> X -> τ≤n X`, and its splitting for complexes with torsion
//! homology.

use super::{ChainComplex, ChainMap};
use crate::error::{Error, Result};
use crate::linalg::{image_basis, kernel_basis, right_inverse, solve, Matrix};

/// `τ≥n X` with its inclusion into `X`.
fn ge_with_inclusion(x: &ChainComplex, n: i64) -> (ChainComplex, ChainMap) {
    let ring = x.ring();
    if x.is_empty() || n <= x.lo() {
        return (x.clone(), ChainMap::identity(x));
    }
    if n > x.hi() {
        let z = ChainComplex::zero(ring);
        return (z.clone(), ChainMap::zero(&z, x));
    }
    let k = kernel_basis(&x.d(n));
    let top = solve(&k, &x.d(n + 1)).expect("shapes agree").expect("boundaries are cycles");
    let t = ChainComplex::assemble(
        ring,
        n,
        x.hi(),
        |j| if j == n { k.cols() } else { x.rank(j) },
        |j| if j == n + 1 { top.clone() } else { x.d(j).into_owned() },
    );
    let f = ChainMap::assemble(&t, x, |j| if j == n { k.clone() } else { Matrix::identity(ring, x.rank(j)) });
    (t, f)
}

/// `τ≤n X` with the projection from `X`.
fn le_with_projection(x: &ChainComplex, n: i64) -> (ChainComplex, ChainMap) {
    let ring = x.ring();
    if x.is_empty() || n >= x.hi() {
        return (x.clone(), ChainMap::identity(x));
    }
    if n < x.lo() {
        let z = ChainComplex::zero(ring);
        return (z.clone(), ChainMap::zero(x, &z));
    }
    let b = image_basis(&x.d(n + 1));
    let g_top = solve(&b, &x.d(n + 1)).expect("shapes agree").expect("image lies in its span");
    let t = ChainComplex::assemble(
        ring,
        x.lo(),
        n + 1,
        |j| if j == n + 1 { b.cols() } else { x.rank(j) },
        |j| if j == n + 1 { b.clone() } else { x.d(j).into_owned() },
    );
    let g = ChainMap::assemble(x, &t, |j| {
        if j <= n {
            Matrix::identity(ring, x.rank(j))
        } else if j == n + 1 {
            g_top.clone()
        } else {
            Matrix::zeros(ring, 0, x.rank(j))
        }
    });
    (t, g)
}

pub fn truncate_ge(x: &ChainComplex, n: i64) -> ChainComplex {
    ge_with_inclusion(x, n).0
}

pub fn truncate_le(x: &ChainComplex, n: i64) -> ChainComplex {
    le_with_projection(x, n).0
}

/// `τ≥n f`, the unique lift through the inclusions.
pub fn truncate_ge_map(f: &ChainMap, n: i64) -> ChainMap {
    let (tx, ix) = ge_with_inclusion(f.source(), n);
    let (ty, iy) = ge_with_inclusion(f.target(), n);
    ChainMap::assemble(&tx, &ty, |j| {
        let image = &*f.component(j) * &*ix.component(j);
        solve(&iy.component(j), &image).expect("shapes agree").expect("f maps cycles to cycles")
    })
}

/// `τ≤n f`, induced through the projections.
pub fn truncate_le_map(f: &ChainMap, n: i64) -> ChainMap {
    let (tx, px) = le_with_projection(f.source(), n);
    let (ty, py) = le_with_projection(f.target(), n);
    ChainMap::assemble(&tx, &ty, |j| {
        let section = right_inverse(&px.component(j)).expect("the projection is onto");
        &(&*py.component(j) * &*f.component(j)) * &section
    })
}

/// `sub = τ≥n+1 X -f-> X -g-> τ≤n X = quotient`.
#[derive(Clone, Debug)]
pub struct TruncationTriple {
    pub n: i64,
    pub sub: ChainComplex,
    pub quotient: ChainComplex,
    pub f: ChainMap,
    pub g: ChainMap,
}

pub fn canonical_triple(x: &ChainComplex, n: i64) -> TruncationTriple {
    let (sub, f) = ge_with_inclusion(x, n + 1);
    let (quotient, g) = le_with_projection(x, n);
    TruncationTriple { n, sub, quotient, f, g }
}

/// Retraction `u : X -> τ≥n+1 X` and section `v : τ≤n X -> X` of the
/// canonical triple, with `g v = 1`, `u f = 1`, `u v = 0`, `g f = 0` and
/// `f u + v g = 1`.
#[derive(Clone, Debug)]
pub struct TruncationSplitting {
    pub triple: TruncationTriple,
    pub u: ChainMap,
    pub v: ChainMap,
}

impl TruncationSplitting {
    /// The five identities, each checked entrywise.
    pub fn identities(&self) -> [bool; 5] {
        let TruncationTriple { f, g, sub, quotient, .. } = &self.triple;
        let x = f.target();
        let gv = g.after(&self.v).expect("composable");
        let uf = self.u.after(f).expect("composable");
        let uv = self.u.after(&self.v).expect("composable");
        let gf = g.after(f).expect("composable");
        let fu = f.after(&self.u).expect("composable");
        let vg = self.v.after(g).expect("composable");
        [
            gv == ChainMap::identity(quotient),
            uf == ChainMap::identity(sub),
            uv.is_zero(),
            gf.is_zero(),
            fu.add(&vg).expect("parallel") == ChainMap::identity(x),
        ]
    }
}

/// Splits the canonical triple at `n`. The degreewise sections live in
/// degree `n + 1`, the only degree where neither map is an identity.
/// Refused unless every homology module of `X` is torsion.
pub fn truncation_splitting(x: &ChainComplex, n: i64) -> Result<TruncationSplitting> {
    if !x.has_torsion_homology() {
        return Err(Error::HypothesisNotMet("the complex has homology with a free part".into()));
    }
    let ring = x.ring();
    let triple = canonical_triple(x, n);
    let m = n + 1;
    let (s, t) = if x.in_support(m) && x.lo() <= n {
        let g_m = triple.g.component(m).into_owned();
        let k = triple.f.component(m).into_owned();
        let s = right_inverse(&g_m).expect("projection onto the image basis is onto");
        let rest = &Matrix::identity(ring, x.rank(m)) - &(&s * &g_m);
        let t = solve(&k, &rest).expect("shapes agree").expect("complement lies in the cycles");
        (s, t)
    } else {
        (Matrix::zeros(ring, 0, 0), Matrix::zeros(ring, 0, 0))
    };
    let TruncationTriple { sub, quotient, .. } = &triple;
    let u = ChainMap::assemble(x, sub, |k| {
        if sub.is_empty() || k < sub.lo() {
            Matrix::zeros(ring, sub.rank(k), x.rank(k))
        } else if k == m && x.lo() <= n {
            t.clone()
        } else {
            Matrix::identity(ring, x.rank(k))
        }
    });
    let v = ChainMap::assemble(quotient, x, |k| {
        if k == m {
            s.clone()
        } else if k <= n {
            Matrix::identity(ring, x.rank(k))
        } else {
            Matrix::zeros(ring, x.rank(k), quotient.rank(k))
        }
    });
    Ok(TruncationSplitting { triple, u, v })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::is_degreewise_short_exact;
    use crate::linalg::FgModule;
    use crate::pid::Ring;

    const Z: Ring = Ring::Integers;

    fn m(r: usize, c: usize, e: &[i64]) -> Matrix {
        Matrix::from_i64(Z, r, c, e)
    }

    /// `Z -0-> Z -2-> Z` in degrees 2, 1, 0.
    fn zero_then_two() -> ChainComplex {
        ChainComplex::new(Z, 0, vec![1, 1, 1], vec![m(1, 1, &[2]), m(1, 1, &[0])]).unwrap()
    }

    #[test]
    fn truncated_maps_are_functorial() {
        let x = zero_then_two();
        let y = x.direct_sum(&ChainComplex::two_term(m(1, 1, &[3]), 2));
        // Twice the summand inclusion, and the summand projection.
        let f = ChainMap::from_fn(&x, &y, |n| Matrix::identity(Z, y.rank(n)).columns(0..1).scale(&2.into())).unwrap();
        let g = ChainMap::from_fn(&y, &x, |n| Matrix::identity(Z, y.rank(n)).row_range(0..1)).unwrap();
        for n in -1..=3 {
            assert!(truncate_ge_map(&ChainMap::identity(&x), n).is_identity());
            assert!(truncate_le_map(&ChainMap::identity(&y), n).is_identity());
            let gf = g.after(&f).unwrap();
            assert_eq!(truncate_ge_map(&g, n).after(&truncate_ge_map(&f, n)).unwrap(), truncate_ge_map(&gf, n));
            assert_eq!(truncate_le_map(&g, n).after(&truncate_le_map(&f, n)).unwrap(), truncate_le_map(&gf, n));
        }
    }

    #[test]
    fn injective_two_term() {
        let x = ChainComplex::two_term(m(1, 1, &[2]), 1);
        assert_eq!(truncate_ge(&x, 1).total_rank(), 0);
        assert_eq!(truncate_le(&x, 0), x);
    }

    #[test]
    fn three_term_truncations() {
        let x = zero_then_two();
        let ge = truncate_ge(&x, 1);
        // ker d_1 = 0, so only degree 2 survives.
        assert_eq!(ge.rank(2), 1);
        assert_eq!(ge.rank(1), 0);
        let le = truncate_le(&x, 0);
        assert_eq!(le.degrees(), 0..=1);
        assert_eq!(*le.d(1), m(1, 1, &[2]));
        assert_eq!(le.homology(0), FgModule::new(Z, 0, vec![2.into()]));
    }

    #[test]
    fn truncation_outside_support_is_identity() {
        let x = zero_then_two();
        assert_eq!(truncate_ge(&x, -3), x);
        assert_eq!(truncate_le(&x, 5), x);
        assert!(truncate_ge(&x, 3).is_empty());
        assert!(truncate_le(&x, -1).is_empty());
    }

    #[test]
    fn canonical_triple_is_exact() {
        let x = ChainComplex::new(Z, 0, vec![2, 3, 1], vec![m(2, 3, &[1, 0, 2, 0, 3, 0]), m(3, 1, &[2, 0, -1])]).unwrap();
        for n in -1..=3 {
            let t = canonical_triple(&x, n);
            assert!(is_degreewise_short_exact(&t.f, &t.g), "n = {n}");
        }
    }

    #[test]
    fn splitting_of_two_term_at_zero() {
        let x = ChainComplex::two_term(m(1, 1, &[2]), 1);
        let s = truncation_splitting(&x, 0).unwrap();
        assert!(s.u.is_zero());
        assert!(s.v.is_identity());
        assert_eq!(s.identities(), [true; 5]);
    }

    #[test]
    fn splitting_identities_on_torsion_complex() {
        // Z^2 -> Z^2 -> Z in degrees 2, 1, 0 with torsion homology only.
        let x = ChainComplex::new(Z, 0, vec![1, 2, 1], vec![m(1, 2, &[1, 1]), m(2, 1, &[3, -3])]).unwrap();
        assert!(x.has_torsion_homology());
        for n in -2..=3 {
            let s = truncation_splitting(&x, n).unwrap();
            assert_eq!(s.identities(), [true; 5], "n = {n}");
        }
    }

    #[test]
    fn splitting_refused_with_free_homology() {
        let err = truncation_splitting(&zero_then_two(), 0).unwrap_err();
        assert_eq!(err.kind(), "hypothesis-not-met");
    }
}
