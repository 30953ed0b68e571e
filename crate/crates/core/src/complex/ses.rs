use std::fmt;

use super::{cone, ChainComplex, ChainMap};
use crate::error::{Error, Result};
use crate::linalg::{
    cokernel, image_basis, is_exact_at, is_injective, kernel_basis, left_inverse, solve, Matrix,
};

/// `0 -> A -f-> B -g-> C -> 0` of free modules: `f` injective, `g` onto,
/// and `im f = ker g`.
pub(crate) fn is_short_exact_free(f: &Matrix, g: &Matrix) -> bool {
    f.rows() == g.cols()
        && is_injective(f)
        && cokernel(g).is_zero()
        && (g * f).is_zero()
        && is_exact_at(f, g).unwrap_or(false)
}

/// Whether `0 -> X -i-> Y -p-> Z -> 0` is exact in every degree.
pub fn is_degreewise_short_exact(i: &ChainMap, p: &ChainMap) -> bool {
    if i.target() != p.source() {
        return false;
    }
    let y = i.target();
    let degrees = i.source().degrees().chain(y.degrees()).chain(p.target().degrees());
    let (lo, hi) = degrees.fold((i64::MAX, i64::MIN), |(a, b), n| (a.min(n), b.max(n)));
    (lo..=hi).all(|n| is_short_exact_free(&i.component(n), &p.component(n)))
}

/// A degreewise short exact sequence of complexes.
#[derive(Clone, Debug)]
pub struct ComplexSes {
    pub i: ChainMap,
    pub p: ChainMap,
}

impl ComplexSes {
    pub fn new(i: ChainMap, p: ChainMap) -> Result<ComplexSes> {
        if i.target() != p.source() {
            return Err(Error::MalformedDiagram("maps do not compose".into()));
        }
        if !is_degreewise_short_exact(&i, &p) {
            return Err(Error::MalformedDiagram("not degreewise short exact".into()));
        }
        Ok(ComplexSes { i, p })
    }
}

/// Exactness of `0 -> ker d_n^X -> ker d_n^Y -> ker d_n^Z -> 0` and of
/// `0 -> im d_n^X -> im d_n^Y -> im d_n^Z -> 0`, under the hypothesis
/// `H_{n-1}(X) = 0` or `H_n(Z) = 0`.
pub fn kernel_image_sequences(ses: &ComplexSes, n: i64) -> Result<(bool, bool)> {
    let (x, y, z) = (ses.i.source(), ses.i.target(), ses.p.target());
    if !(x.homology(n - 1).is_zero() || z.homology(n).is_zero()) {
        return Err(Error::HypothesisNotMet(format!("H_{}(X) and H_{n}(Z) are both nonzero", n - 1)));
    }
    let induced = |basis_to: &Matrix, image: Matrix| {
        solve(basis_to, &image).expect("shapes agree").expect("chain maps preserve cycles and boundaries")
    };

    let (kx, ky, kz) = (kernel_basis(&x.d(n)), kernel_basis(&y.d(n)), kernel_basis(&z.d(n)));
    let a = induced(&ky, &*ses.i.component(n) * &kx);
    let b = induced(&kz, &*ses.p.component(n) * &ky);
    let kernels = is_short_exact_free(&a, &b);

    let (bx, by, bz) = (image_basis(&x.d(n)), image_basis(&y.d(n)), image_basis(&z.d(n)));
    let a = induced(&by, &*ses.i.component(n - 1) * &bx);
    let b = induced(&bz, &*ses.p.component(n - 1) * &by);
    let images = is_short_exact_free(&a, &b);

    Ok((kernels, images))
}

/// Quotient `B / i(A)` of a degreewise split mono `i : A -> B`, with the
/// projection. In each degree the quotient is the kernel of a retraction
/// `r` of `i`, and the projection is `1 - i r` written in a basis of that
/// kernel. Returns `None` if some component has no retraction.
pub fn split_quotient(i: &ChainMap) -> Option<(ChainComplex, ChainMap)> {
    let b = i.target();
    let ring = i.ring();
    let mut bases = Vec::new();
    let mut projections = Vec::new();
    for n in b.degrees() {
        let i_n = i.component(n).into_owned();
        let r = left_inverse(&i_n)?;
        let k = kernel_basis(&r);
        let rest = &Matrix::identity(ring, b.rank(n)) - &(&i_n * &r);
        projections.push(solve(&k, &rest).expect("shapes agree").expect("1 - i r lands in ker r"));
        bases.push(k);
    }
    let at = |v: &Vec<Matrix>, n: i64| v[(n - b.lo()) as usize].clone();
    let q = ChainComplex::assemble(
        ring,
        b.lo(),
        b.hi(),
        |n| bases[(n - b.lo()) as usize].cols(),
        |n| &(&at(&projections, n - 1) * &b.d(n)) * &at(&bases, n),
    );
    let pi = ChainMap::assemble(b, &q, |n| at(&projections, n));
    Some((q, pi))
}

/// The largest `n` with `H_k(Cone f) = 0` for all `k <= n`, or infinity
/// for a quasi-isomorphism.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum QisDegree {
    Finite(i64),
    Infinite,
}

impl QisDegree {
    pub fn finite(self) -> Option<i64> {
        match self {
            QisDegree::Finite(n) => Some(n),
            QisDegree::Infinite => None,
        }
    }
}

impl fmt::Display for QisDegree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            QisDegree::Finite(n) => write!(f, "{n}"),
            QisDegree::Infinite => write!(f, "inf"),
        }
    }
}

pub fn quasi_iso_degree(f: &ChainMap) -> QisDegree {
    let c = cone(f).complex;
    c.degrees()
        .find(|&k| !c.homology(k).is_zero())
        .map_or(QisDegree::Infinite, |k| QisDegree::Finite(k - 1))
}
