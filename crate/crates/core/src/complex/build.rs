//! Shift, mapping cone and mapping cylinder, with their structure maps.
//!
//! Signs: `d^Cone = [[-d^X, 0], [-f, d^Y]]` and
//! `d^Cyl = [[d^X, 1, 0], [0, -d^X, 0], [0, -f, d^Y]]`, the choice for which
//! `d² = 0` and `j1`, `j2`, `p` are chain maps with `p j2 = 1`.

use super::{hull, ChainComplex, ChainMap};
use crate::error::{Error, Result};
use crate::linalg::Matrix;

/// `X[k]_n = X_{n+k}` with `d^{X[k]}_n = (-1)^k d^X_{n+k}`.
pub fn shift(x: &ChainComplex, k: i64) -> ChainComplex {
    if x.is_empty() {
        return x.clone();
    }
    let sign = k.rem_euclid(2) == 1;
    ChainComplex::assemble(
        x.ring(),
        x.lo() - k,
        x.hi() - k,
        |n| x.rank(n + k),
        |n| if sign { -&*x.d(n + k) } else { x.d(n + k).into_owned() },
    )
}

/// `f[k]_n = f_{n+k}`.
pub fn shift_map(f: &ChainMap, k: i64) -> ChainMap {
    let (x, y) = (shift(f.source(), k), shift(f.target(), k));
    ChainMap::assemble(&x, &y, |n| f.component(n + k).into_owned())
}

/// The mapping cone `C_n = X_{n-1} ⊕ Y_n` with the inclusion of `Y` and
/// the projection onto `X[-1]`.
#[derive(Clone, Debug)]
pub struct Cone {
    pub complex: ChainComplex,
    pub into: ChainMap,
    pub onto: ChainMap,
}

pub fn cone(f: &ChainMap) -> Cone {
    let (x, y) = (f.source(), f.target());
    let ring = f.ring();
    let x1 = shift(x, -1);
    let c = match hull(&[&x1, y]) {
        None => ChainComplex::zero(ring),
        Some((lo, hi)) => ChainComplex::assemble(
            ring,
            lo,
            hi,
            |n| x.rank(n - 1) + y.rank(n),
            |n| {
                Matrix::blocks(
                    ring,
                    &[x.rank(n - 2), y.rank(n - 1)],
                    &[x.rank(n - 1), y.rank(n)],
                    &[
                        vec![Some(&-&*x.d(n - 1)), None],
                        vec![Some(&-&*f.component(n - 1)), Some(&y.d(n))],
                    ],
                )
            },
        ),
    };
    let into = ChainMap::assemble(y, &c, |n| {
        Matrix::vstack(ring, y.rank(n), &[&Matrix::zeros(ring, x.rank(n - 1), y.rank(n)), &Matrix::identity(ring, y.rank(n))])
    });
    let onto = ChainMap::assemble(&c, &x1, |n| {
        Matrix::hstack(ring, x.rank(n - 1), &[&Matrix::identity(ring, x.rank(n - 1)), &Matrix::zeros(ring, x.rank(n - 1), y.rank(n))])
    });
    Cone { complex: c, into, onto }
}

/// The mapping cylinder `Cyl_n = X_n ⊕ X_{n-1} ⊕ Y_n`.
pub fn cylinder(f: &ChainMap) -> ChainComplex {
    let (x, y) = (f.source(), f.target());
    let ring = f.ring();
    let Some((lo, hi)) = hull(&[x, &shift(x, -1), y]) else {
        return ChainComplex::zero(ring);
    };
    ChainComplex::assemble(
        ring,
        lo,
        hi,
        |n| x.rank(n) + x.rank(n - 1) + y.rank(n),
        |n| {
            let id = Matrix::identity(ring, x.rank(n - 1));
            Matrix::blocks(
                ring,
                &[x.rank(n - 1), x.rank(n - 2), y.rank(n - 1)],
                &[x.rank(n), x.rank(n - 1), y.rank(n)],
                &[
                    vec![Some(&x.d(n)), Some(&id), None],
                    vec![None, Some(&-&*x.d(n - 1)), None],
                    vec![None, Some(&-&*f.component(n - 1)), Some(&y.d(n))],
                ],
            )
        },
    )
}

/// `j1 : X -> Cyl f`, `j2 : Y -> Cyl f` and `p : Cyl f -> Y`, with
/// `p j1 = f` and `p j2 = 1`.
#[derive(Clone, Debug)]
pub struct StructureMaps {
    pub cyl: ChainComplex,
    pub j1: ChainMap,
    pub j2: ChainMap,
    pub p: ChainMap,
}

pub fn structure_maps(f: &ChainMap) -> StructureMaps {
    let (x, y) = (f.source(), f.target());
    let ring = f.ring();
    let cyl = cylinder(f);
    let j1 = ChainMap::assemble(x, &cyl, |n| {
        Matrix::blocks(
            ring,
            &[x.rank(n), x.rank(n - 1), y.rank(n)],
            &[x.rank(n)],
            &[vec![Some(&Matrix::identity(ring, x.rank(n)))], vec![None], vec![None]],
        )
    });
    let j2 = ChainMap::assemble(y, &cyl, |n| {
        Matrix::blocks(
            ring,
            &[x.rank(n), x.rank(n - 1), y.rank(n)],
            &[y.rank(n)],
            &[vec![None], vec![None], vec![Some(&Matrix::identity(ring, y.rank(n)))]],
        )
    });
    let p = ChainMap::assemble(&cyl, y, |n| {
        Matrix::blocks(
            ring,
            &[y.rank(n)],
            &[x.rank(n), x.rank(n - 1), y.rank(n)],
            &[vec![Some(&f.component(n)), None, Some(&Matrix::identity(ring, y.rank(n)))]],
        )
    });
    StructureMaps { cyl, j1, j2, p }
}

/// `Cyl(a, b) : Cyl f -> Cyl g` for a commuting square `b f = g a`,
/// with components `diag(a_n, a_{n-1}, b_n)`.
pub fn cyl_functorial(f: &ChainMap, g: &ChainMap, a: &ChainMap, b: &ChainMap) -> Result<ChainMap> {
    if a.source() != f.source() || a.target() != g.source() || b.source() != f.target() || b.target() != g.target() {
        return Err(Error::MalformedDiagram("square maps do not line up".into()));
    }
    if b.after(f)? != g.after(a)? {
        return Err(Error::MalformedDiagram("square does not commute".into()));
    }
    let ring = f.ring();
    let (src, dst) = (cylinder(f), cylinder(g));
    ChainMap::from_fn(&src, &dst, |n| {
        Matrix::block_diag(ring, &[&a.component(n), &a.component(n - 1), &b.component(n)])
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::nullhomotopy;
    use crate::linalg::FgModule;
    use crate::pid::Ring;

    const Z: Ring = Ring::Integers;

    fn m(r: usize, c: usize, e: &[i64]) -> Matrix {
        Matrix::from_i64(Z, r, c, e)
    }

    fn two(d: i64) -> ChainComplex {
        ChainComplex::two_term(m(1, 1, &[d]), 1)
    }

    fn scalar_map(x: &ChainComplex, c: i64) -> ChainMap {
        ChainMap::from_fn(x, x, |n| Matrix::identity(Z, x.rank(n)).scale(&c.into())).unwrap()
    }

    #[test]
    fn shift_examples() {
        let x = two(2);
        assert_eq!(shift(&x, 0), x);
        assert_eq!(shift(&shift(&x, 1), -1), x);
        let s = shift(&x, 1);
        assert_eq!(s.degrees(), -1..=0);
        assert_eq!(*s.d(0), m(1, 1, &[-2]));
        assert_eq!(s.homology(-1), x.homology(0));
    }

    #[test]
    fn cone_of_identity_is_acyclic() {
        let x = ChainComplex::new(Z, 0, vec![1, 2, 1], vec![m(1, 2, &[2, 0]), m(2, 1, &[0, 3])]).unwrap();
        assert!(cone(&ChainMap::identity(&x)).complex.is_acyclic());
    }

    #[test]
    fn cone_of_zero_source() {
        let y = two(2);
        let f = ChainMap::zero(&ChainComplex::zero(Z), &y);
        assert_eq!(cone(&f).complex, y);
    }

    /// Multiplication by 3 on `[Z -2-> Z]`: both homology modules of the
    /// cone are read off by brute force from its 4-term form.
    #[test]
    fn cone_of_tripling() {
        let x = two(2);
        let c = cone(&scalar_map(&x, 3)).complex;
        assert_eq!(c.degrees(), 0..=2);
        // C_2 = Z, C_1 = Z^2, C_0 = Z; d_2 = (-2, -3)^T, d_1 = (-3, 2).
        assert_eq!(*c.d(2), m(2, 1, &[-2, -3]));
        assert_eq!(*c.d(1), m(1, 2, &[-3, 2]));
        assert_eq!(c.homology(0), FgModule::zero(Z));
        assert_eq!(c.homology(1), FgModule::zero(Z));
        assert_eq!(c.homology(2), FgModule::zero(Z));
        // H(X) = Z/2 and tripling is invertible on it, so the cone is acyclic;
        // with doubling it is not.
        let c2 = cone(&scalar_map(&x, 2)).complex;
        assert_eq!(c2.homology(0), FgModule::new(Z, 0, vec![2.into()]));
        assert_eq!(c2.homology(1), FgModule::new(Z, 0, vec![2.into()]));
    }

    #[test]
    fn cylinder_identities() {
        let x = two(2);
        let f = scalar_map(&x, 5);
        let s = structure_maps(&f);
        assert_eq!(s.p.after(&s.j1).unwrap(), f);
        assert!(s.p.after(&s.j2).unwrap().is_identity());
        let defect = s.j2.after(&s.p).unwrap().sub(&ChainMap::identity(&s.cyl)).unwrap();
        assert!(nullhomotopy(&defect).is_some());
        for n in s.cyl.degrees() {
            assert_eq!(s.cyl.homology(n), x.homology(n));
        }
    }

    #[test]
    fn cylinder_of_zero_on_zero() {
        let z = ChainComplex::zero(Z);
        assert!(cylinder(&ChainMap::identity(&z)).is_empty());
    }

    #[test]
    fn cyl_functorial_identity_and_zero() {
        let x = two(2);
        let f = scalar_map(&x, 3);
        let id = ChainMap::identity(&x);
        assert!(cyl_functorial(&f, &f, &id, &id).unwrap().is_identity());
        let zero = ChainMap::zero(&x, &x);
        assert!(cyl_functorial(&f, &f, &zero, &zero).unwrap().is_zero());
        let err = cyl_functorial(&f, &f, &id, &scalar_map(&x, 2)).unwrap_err();
        assert_eq!(err.kind(), "malformed-diagram");
    }
}
