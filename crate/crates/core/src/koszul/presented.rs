//! Two-term complexes whose entries are finitely presented modules:
//! `[X_1 -d-> X_0]` with `d` injective and `H_0` torsion.

use super::KoszulObject;
use crate::error::{Error, Result};
use crate::linalg::{image_basis, is_short_exact, solve, Matrix, ModuleHom, PresentedModule};
use crate::pid::Ring;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PresentedKoszul {
    pub x1: PresentedModule,
    pub x0: PresentedModule,
    /// `d` on generators.
    pub d: Matrix,
}

impl PresentedKoszul {
    pub fn new(x1: PresentedModule, x0: PresentedModule, d: Matrix) -> Result<PresentedKoszul> {
        let hom = ModuleHom::new(x1.clone(), x0.clone(), d.clone())?;
        if !hom.is_injective() {
            return Err(Error::pre("d is not injective"));
        }
        let x = PresentedKoszul { x1, x0, d };
        if !x.h0().canonical().is_torsion() {
            return Err(Error::pre("H_0 has a free part"));
        }
        Ok(x)
    }

    pub fn from_free(x: &KoszulObject) -> PresentedKoszul {
        let ring = x.ring();
        PresentedKoszul {
            x1: PresentedModule::free(ring, x.rank()),
            x0: PresentedModule::free(ring, x.rank()),
            d: x.d().clone(),
        }
    }

    pub fn ring(&self) -> Ring {
        self.d.ring()
    }

    pub fn d_hom(&self) -> ModuleHom {
        ModuleHom { source: self.x1.clone(), target: self.x0.clone(), matrix: self.d.clone() }
    }

    /// `H_0 = X_0 / d(X_1)` on the generators of `X_0`.
    pub fn h0(&self) -> PresentedModule {
        self.x0.quotient(&self.d)
    }

    pub fn is_acyclic(&self) -> bool {
        self.h0().is_zero()
    }

    /// Both entries are free modules.
    pub fn has_free_entries(&self) -> bool {
        self.x1.canonical().is_torsion_free() && self.x0.canonical().is_torsion_free()
    }
}

/// A map of presented two-term complexes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PresentedKoszulMap {
    pub source: PresentedKoszul,
    pub target: PresentedKoszul,
    pub f1: Matrix,
    pub f0: Matrix,
}

impl PresentedKoszulMap {
    /// Checks both components are well defined and `f_0 d = d f_1` modulo
    /// the relations of the target's `X_0`.
    pub fn new(source: PresentedKoszul, target: PresentedKoszul, f1: Matrix, f0: Matrix) -> Result<PresentedKoszulMap> {
        ModuleHom::new(source.x1.clone(), target.x1.clone(), f1.clone())?;
        ModuleHom::new(source.x0.clone(), target.x0.clone(), f0.clone())?;
        let defect = &(&f0 * &source.d) - &(&target.d * &f1);
        if !target.x0.vanishes(&defect) {
            return Err(Error::NotAChainMap("f_0 d differs from d f_1".into()));
        }
        Ok(PresentedKoszulMap { source, target, f1, f0 })
    }

    pub fn component(&self, n: i64) -> ModuleHom {
        let (s, t, m) = match n {
            1 => (&self.source.x1, &self.target.x1, &self.f1),
            _ => (&self.source.x0, &self.target.x0, &self.f0),
        };
        ModuleHom { source: s.clone(), target: t.clone(), matrix: m.clone() }
    }

    pub fn is_degreewise_surjective(&self) -> bool {
        self.component(1).is_surjective() && self.component(0).is_surjective()
    }
}

/// `0 -> X -> Y -> Z -> 0` of presented two-term complexes, exact in
/// both degrees.
#[derive(Clone, Debug)]
pub struct PresentedExactSequence {
    pub mono: PresentedKoszulMap,
    pub epi: PresentedKoszulMap,
}

impl PresentedExactSequence {
    pub fn new(mono: PresentedKoszulMap, epi: PresentedKoszulMap) -> Result<PresentedExactSequence> {
        let s = PresentedExactSequence { mono, epi };
        if s.mono.target != s.epi.source || !s.is_exact() {
            return Err(Error::MalformedDiagram("not exact in both degrees".into()));
        }
        Ok(s)
    }

    pub fn is_exact(&self) -> bool {
        (0..=1).all(|n| is_short_exact(&self.mono.component(n), &self.epi.component(n)))
    }

    pub fn left(&self) -> &PresentedKoszul {
        &self.mono.source
    }

    pub fn middle(&self) -> &PresentedKoszul {
        &self.mono.target
    }

    pub fn right(&self) -> &PresentedKoszul {
        &self.epi.target
    }

    /// `0 -> H_0 X -> H_0 Y -> H_0 Z -> 0` is exact.
    pub fn h0_exact(&self) -> bool {
        let (x, y, z) = (self.left(), self.middle(), self.right());
        let a = ModuleHom::new(x.h0(), y.h0(), self.mono.f0.clone());
        let b = ModuleHom::new(y.h0(), z.h0(), self.epi.f0.clone());
        matches!((a, b), (Ok(a), Ok(b)) if is_short_exact(&a, &b))
    }
}

/// An admissible epimorphism `e : Y -> Z` from a free Koszul object, with
/// its kernel, itself a free Koszul object, included by `(k_1, k_0)`.
#[derive(Clone, Debug)]
pub struct Resolution {
    pub y: KoszulObject,
    pub e: PresentedKoszulMap,
    pub kernel: KoszulObject,
    pub k1: Matrix,
    pub k0: Matrix,
}

impl Resolution {
    /// `e` is onto in both degrees and `0 -> K -> Y -> Z -> 0` is exact in
    /// both degrees, with `k` a chain map.
    pub fn verify(&self) -> bool {
        let ring = self.y.ring();
        let free = |r| PresentedModule::free(ring, r);
        let chain = (self.y.d() * &self.k1) == (&self.k0 * self.kernel.d());
        let exact = |n: i64, k: &Matrix| {
            let e = self.e.component(n);
            let incl = ModuleHom { source: free(k.cols()), target: e.source.clone(), matrix: k.clone() };
            is_short_exact(&incl, &e)
        };
        chain && self.e.is_degreewise_surjective() && exact(1, &self.k1) && exact(0, &self.k0)
    }
}

/// Covers `Z` by `Y_0 = R^{g_0}` mapping identically onto the generators of
/// `Z_0`, and `Y_1 = ker(Y_0 -> Z_0 -> H_0 Z)`, spanned by the columns of
/// `d^Z` and the relations of `Z_0`. The degree-1 component is the lift of
/// `Y_1 -> Z_0` through `d^Z`.
pub fn resolve_in_kos1(z: &PresentedKoszul) -> Result<Resolution> {
    let ring = z.ring();
    let (g1, g0) = (z.x1.gens(), z.x0.gens());
    let span = Matrix::hstack(ring, g0, &[&z.d, z.x0.relations()]);
    let b = image_basis(&span);
    let y = KoszulObject::new(b.clone())?;
    let coords = solve(&span, &b)?.expect("the basis lies in the span");
    let e1 = coords.row_range(0..g1);
    let e = PresentedKoszulMap::new(PresentedKoszul::from_free(&y), z.clone(), e1.clone(), Matrix::identity(ring, g0))?;

    let k0 = ModuleHom::new(PresentedModule::free(ring, g0), z.x0.clone(), Matrix::identity(ring, g0))?.kernel().matrix;
    let k1 = ModuleHom::new(PresentedModule::free(ring, y.rank()), z.x1.clone(), e1)?.kernel().matrix;
    let dk = solve(&k0, &(&b * &k1))?.expect("d^Y maps the kernel into the kernel");
    let kernel = KoszulObject::new(dk)?;
    Ok(Resolution { y, e, kernel, k1, k0 })
}

/// `[X_1 = X_1] -> X -> [0 -> H_0 X]`, with components `(1, d)` and
/// `(0, projection)`.
pub fn e_functor(x: &PresentedKoszul) -> Result<PresentedExactSequence> {
    let ring = x.ring();
    let (g1, g0) = (x.x1.gens(), x.x0.gens());
    let left = PresentedKoszul { x1: x.x1.clone(), x0: x.x1.clone(), d: Matrix::identity(ring, g1) };
    let right = PresentedKoszul { x1: PresentedModule::free(ring, 0), x0: x.h0(), d: Matrix::zeros(ring, g0, 0) };
    let mono = PresentedKoszulMap::new(left, x.clone(), Matrix::identity(ring, g1), x.d.clone())?;
    let epi = PresentedKoszulMap::new(x.clone(), right, Matrix::zeros(ring, 0, g1), Matrix::identity(ring, g0))?;
    PresentedExactSequence::new(mono, epi)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::FgModule;

    const Z: Ring = Ring::Integers;

    fn m(r: usize, c: usize, e: &[i64]) -> Matrix {
        Matrix::from_i64(Z, r, c, e)
    }

    fn z_mod(n: i64) -> PresentedModule {
        PresentedModule::new(m(1, 1, &[n]))
    }

    #[test]
    fn resolution_of_z_mod_two_in_degree_zero() {
        let z = PresentedKoszul::new(PresentedModule::free(Z, 0), z_mod(2), m(1, 0, &[])).unwrap();
        let r = resolve_in_kos1(&z).unwrap();
        assert_eq!(r.y.d(), &m(1, 1, &[2]));
        assert_eq!(r.e.f0, m(1, 1, &[1]));
        assert!(r.kernel.is_acyclic());
        assert!(r.verify());
    }

    #[test]
    fn resolution_of_free_object() {
        let x = KoszulObject::new(m(2, 2, &[2, 1, 0, 3])).unwrap();
        let r = resolve_in_kos1(&PresentedKoszul::from_free(&x)).unwrap();
        assert!(r.verify());
        assert_eq!(r.y.h0(), x.h0());
    }

    #[test]
    fn resolution_of_zero() {
        let z = PresentedKoszul::new(PresentedModule::free(Z, 0), PresentedModule::free(Z, 0), m(0, 0, &[])).unwrap();
        let r = resolve_in_kos1(&z).unwrap();
        assert_eq!(r.y.rank(), 0);
        assert!(r.verify());
    }

    /// `Z/2 -> Z/4` by doubling, with torsion entries in both degrees.
    #[test]
    fn resolution_with_torsion_entries() {
        let z = PresentedKoszul::new(z_mod(2), z_mod(4), m(1, 1, &[2])).unwrap();
        assert_eq!(z.h0().canonical(), FgModule::new(Z, 0, vec![2.into()]));
        let r = resolve_in_kos1(&z).unwrap();
        assert!(r.verify());
        assert_eq!(r.y.h0(), z.h0().canonical());
    }

    #[test]
    fn ill_formed_presented_objects_are_rejected() {
        // Doubling Z/2 -> Z/2 is zero, hence not injective.
        assert_eq!(PresentedKoszul::new(z_mod(2), z_mod(2), m(1, 1, &[2])).unwrap_err().kind(), "precondition");
        // Z -> Z/2 is not well defined on Z/2 -> Z.
        assert_eq!(
            PresentedKoszul::new(z_mod(2), PresentedModule::free(Z, 1), m(1, 1, &[1])).unwrap_err().kind(),
            "ill-defined-map"
        );
    }

    #[test]
    fn e_functor_of_multiplication_by_two() {
        let x = PresentedKoszul::from_free(&KoszulObject::new(m(1, 1, &[2])).unwrap());
        let s = e_functor(&x).unwrap();
        assert!(s.left().is_acyclic());
        assert_eq!(s.right().x0.canonical(), FgModule::new(Z, 0, vec![2.into()]));
        assert!(s.h0_exact());
        let acyclic = PresentedKoszul::from_free(&KoszulObject::identity(Z, 2));
        assert!(e_functor(&acyclic).unwrap().right().x0.is_zero());
    }
}
