//! Finitely presented modules `R^g / im Rel` and maps between them given on
//! generators. Equality of maps is equality modulo the target relations.

use super::{cokernel, image_basis, kernel_basis, solve, FgModule, Matrix};
use crate::error::{Error, Result};
use crate::pid::Ring;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PresentedModule {
    rel: Matrix,
}

impl PresentedModule {
    /// `R^rel.rows() / im rel`.
    pub fn new(rel: Matrix) -> PresentedModule {
        PresentedModule { rel }
    }

    pub fn free(ring: Ring, rank: usize) -> PresentedModule {
        PresentedModule { rel: Matrix::zeros(ring, rank, 0) }
    }

    /// One generator per summand of the canonical form.
    pub fn from_fg(m: &FgModule) -> PresentedModule {
        let ring = m.ring();
        let g = m.num_generators();
        let mut rel = Matrix::zeros(ring, g, m.torsion().len());
        for (k, t) in m.torsion().iter().enumerate() {
            rel.set(m.free_rank() + k, k, t.clone());
        }
        PresentedModule { rel }
    }

    pub fn ring(&self) -> Ring {
        self.rel.ring()
    }

    pub fn gens(&self) -> usize {
        self.rel.rows()
    }

    pub fn relations(&self) -> &Matrix {
        &self.rel
    }

    pub fn canonical(&self) -> FgModule {
        cokernel(&self.rel)
    }

    pub fn is_zero(&self) -> bool {
        self.canonical().is_zero()
    }

    /// Whether every column of `v` vanishes in the module.
    pub fn vanishes(&self, v: &Matrix) -> bool {
        debug_assert_eq!(v.rows(), self.gens());
        v.is_zero() || solve(&self.rel, v).expect("shapes agree").is_some()
    }

    pub fn direct_sum(&self, other: &PresentedModule) -> PresentedModule {
        PresentedModule { rel: Matrix::block_diag(self.ring(), &[&self.rel, &other.rel]) }
    }

    /// The same generators with extra relations appended.
    pub fn quotient(&self, extra: &Matrix) -> PresentedModule {
        PresentedModule { rel: Matrix::hstack(self.ring(), self.gens(), &[&self.rel, extra]) }
    }
}

/// A map of presented modules, given by the images of the source
/// generators in target generator coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModuleHom {
    pub source: PresentedModule,
    pub target: PresentedModule,
    pub matrix: Matrix,
}

impl ModuleHom {
    /// Checks shapes and that source relations land in the target relations.
    pub fn new(source: PresentedModule, target: PresentedModule, matrix: Matrix) -> Result<ModuleHom> {
        if matrix.shape() != (target.gens(), source.gens()) {
            return Err(Error::dims(format_args!(
                "map is {}x{}, modules have {} -> {} generators",
                matrix.rows(),
                matrix.cols(),
                source.gens(),
                target.gens()
            )));
        }
        if !target.vanishes(&(&matrix * source.relations())) {
            return Err(Error::IllDefinedMap);
        }
        Ok(ModuleHom { source, target, matrix })
    }

    pub fn identity(m: &PresentedModule) -> ModuleHom {
        ModuleHom {
            source: m.clone(),
            target: m.clone(),
            matrix: Matrix::identity(m.ring(), m.gens()),
        }
    }

    pub fn zero(source: &PresentedModule, target: &PresentedModule) -> ModuleHom {
        ModuleHom {
            source: source.clone(),
            target: target.clone(),
            matrix: Matrix::zeros(source.ring(), target.gens(), source.gens()),
        }
    }

    /// `self ∘ first`.
    pub fn after(&self, first: &ModuleHom) -> Result<ModuleHom> {
        if first.target.gens() != self.source.gens() {
            return Err(Error::dims(format_args!("composition through mismatched modules")));
        }
        Ok(ModuleHom {
            source: first.source.clone(),
            target: self.target.clone(),
            matrix: &self.matrix * &first.matrix,
        })
    }

    pub fn equals(&self, other: &ModuleHom) -> bool {
        self.matrix.shape() == other.matrix.shape() && self.target.vanishes(&(&self.matrix - &other.matrix))
    }

    pub fn is_zero(&self) -> bool {
        self.target.vanishes(&self.matrix)
    }

    /// Kernel as a presented module together with its inclusion.
    pub fn kernel(&self) -> ModuleHom {
        let ring = self.matrix.ring();
        let s = self.source.gens();
        let t = self.target.relations();
        let joint = Matrix::hstack(ring, self.target.gens(), &[&self.matrix, t]);
        let k = kernel_basis(&joint).row_range(0..s);
        let basis = image_basis(&k);
        // Source relations lie in the kernel, so they are combinations of the basis.
        let rel = solve(&basis, self.source.relations())
            .expect("shapes agree")
            .expect("relations lie in the kernel");
        ModuleHom {
            source: PresentedModule::new(rel),
            target: self.source.clone(),
            matrix: basis,
        }
    }

    /// Cokernel as a presented module together with the projection.
    pub fn cokernel(&self) -> ModuleHom {
        let q = self.target.quotient(&self.matrix);
        ModuleHom {
            source: self.target.clone(),
            matrix: Matrix::identity(q.ring(), q.gens()),
            target: q,
        }
    }

    /// Image presented on the source generators, with its inclusion.
    pub fn image(&self) -> ModuleHom {
        self.image_factors().1
    }

    /// `self = mono ∘ epi` through the image.
    pub fn image_factors(&self) -> (ModuleHom, ModuleHom) {
        let k = self.kernel().matrix;
        let im = self.source.quotient(&k);
        let epi = ModuleHom {
            source: self.source.clone(),
            target: im.clone(),
            matrix: Matrix::identity(im.ring(), im.gens()),
        };
        let mono = ModuleHom { source: im, target: self.target.clone(), matrix: self.matrix.clone() };
        (epi, mono)
    }

    pub fn is_injective(&self) -> bool {
        self.kernel().source.is_zero()
    }

    pub fn is_surjective(&self) -> bool {
        let ring = self.matrix.ring();
        let span = Matrix::hstack(ring, self.target.gens(), &[&self.matrix, self.target.relations()]);
        let id = Matrix::identity(ring, self.target.gens());
        solve(&span, &id).expect("shapes agree").is_some()
    }

    pub fn is_iso(&self) -> bool {
        self.is_surjective() && self.is_injective()
    }

    /// Lifts `m` through this map when it is injective and `m` lands in its
    /// image: returns `l` with `self ∘ l = m`.
    pub fn lift(&self, m: &ModuleHom) -> Option<ModuleHom> {
        let ring = self.matrix.ring();
        let span = Matrix::hstack(ring, self.target.gens(), &[&self.matrix, self.target.relations()]);
        let x = solve(&span, &m.matrix).ok()??;
        let l = x.row_range(0..self.source.gens());
        ModuleHom::new(m.source.clone(), self.source.clone(), l).ok()
    }
}

/// `0 -> A -f-> B -g-> C -> 0` is exact.
pub fn is_short_exact(f: &ModuleHom, g: &ModuleHom) -> bool {
    f.is_injective() && g.is_surjective() && is_exact_between(f, g)
}

/// `im f = ker g` for composable module maps.
pub fn is_exact_between(f: &ModuleHom, g: &ModuleHom) -> bool {
    let Ok(gf) = g.after(f) else { return false };
    if !gf.is_zero() {
        return false;
    }
    let k = g.kernel();
    let ring = f.matrix.ring();
    let span = Matrix::hstack(ring, f.target.gens(), &[&f.matrix, f.target.relations()]);
    solve(&span, &k.matrix).expect("shapes agree").is_some()
}

/// Pushout of `B <-f- A -a-> C`, with the legs out of `B` and `C`.
pub fn pushout(f: &ModuleHom, a: &ModuleHom) -> Result<(PresentedModule, ModuleHom, ModuleHom)> {
    if f.source != a.source {
        return Err(Error::dims(format_args!("span legs have different sources")));
    }
    let ring = f.matrix.ring();
    let (b, c) = (&f.target, &a.target);
    let glue = Matrix::vstack(ring, f.source.gens(), &[&f.matrix, &-&a.matrix]);
    let p = b.direct_sum(c).quotient(&glue);
    let (nb, nc) = (b.gens(), c.gens());
    let from_b = Matrix::vstack(ring, nb, &[&Matrix::identity(ring, nb), &Matrix::zeros(ring, nc, nb)]);
    let from_c = Matrix::vstack(ring, nc, &[&Matrix::zeros(ring, nb, nc), &Matrix::identity(ring, nc)]);
    let leg_b = ModuleHom { source: b.clone(), target: p.clone(), matrix: from_b };
    let leg_c = ModuleHom { source: c.clone(), target: p.clone(), matrix: from_c };
    Ok((p, leg_b, leg_c))
}

/// Pushout of a span of free modules given by matrices.
pub fn pushout_of_span(f: &Matrix, a: &Matrix) -> Result<(PresentedModule, ModuleHom, ModuleHom)> {
    if f.cols() != a.cols() {
        return Err(Error::dims(format_args!("span legs have {} and {} columns", f.cols(), a.cols())));
    }
    let ring = f.ring();
    let src = PresentedModule::free(ring, f.cols());
    let fh = ModuleHom::new(src.clone(), PresentedModule::free(ring, f.rows()), f.clone())?;
    let ah = ModuleHom::new(src, PresentedModule::free(ring, a.rows()), a.clone())?;
    pushout(&fh, &ah)
}

/// Pullback of `B -b-> D <-c- C`, with the legs into `B` and `C`.
pub fn pullback(b: &ModuleHom, c: &ModuleHom) -> Result<(PresentedModule, ModuleHom, ModuleHom)> {
    if b.target != c.target {
        return Err(Error::dims(format_args!("cospan legs have different targets")));
    }
    let ring = b.matrix.ring();
    let (nb, nc) = (b.source.gens(), c.source.gens());
    let sum = b.source.direct_sum(&c.source);
    let diff = ModuleHom {
        source: sum,
        target: b.target.clone(),
        matrix: Matrix::hstack(ring, b.target.gens(), &[&b.matrix, &-&c.matrix]),
    };
    let k = diff.kernel();
    let p = k.source.clone();
    let to_b = ModuleHom { source: p.clone(), target: b.source.clone(), matrix: k.matrix.row_range(0..nb) };
    let to_c = ModuleHom { source: p.clone(), target: c.source.clone(), matrix: k.matrix.row_range(nb..nb + nc) };
    Ok((p, to_b, to_c))
}

/// Generators of `Hom(S, T)` as a list of matrices; every well-defined map
/// is a combination of them modulo maps into the relations.
pub fn hom_generators(s: &PresentedModule, t: &PresentedModule) -> Vec<Matrix> {
    let ring = s.ring();
    let (gs, gt) = (s.gens(), t.gens());
    let (rs, rt) = (s.relations(), t.relations());
    // vec(M Rs) = (Rs^T ⊗ I) vec(M), vec(Rt Y) = (I ⊗ Rt) vec(Y).
    let lhs = rs.transpose().kron(&Matrix::identity(ring, gt));
    let rhs = -&Matrix::identity(ring, rs.cols()).kron(rt);
    let system = Matrix::hstack(ring, gt * rs.cols(), &[&lhs, &rhs]);
    let k = image_basis(&kernel_basis(&system).row_range(0..gt * gs));
    (0..k.cols())
        .map(|j| {
            let col: Vec<_> = (0..gt * gs).map(|i| k.get(i, j).clone()).collect();
            Matrix::from_vectorized(ring, gt, gs, &col)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    const Z: Ring = Ring::Integers;

    fn m(r: usize, c: usize, e: &[i64]) -> Matrix {
        Matrix::from_i64(Z, r, c, e)
    }

    fn cyclic(n: i64) -> PresentedModule {
        PresentedModule::new(m(1, 1, &[n]))
    }

    #[test]
    fn ill_defined_map_rejected() {
        // Z/2 -> Z/3 sending 1 to 1 is not well defined.
        let err = ModuleHom::new(cyclic(2), cyclic(3), m(1, 1, &[1])).unwrap_err();
        assert_eq!(err, Error::IllDefinedMap);
        assert!(ModuleHom::new(cyclic(2), cyclic(4), m(1, 1, &[2])).is_ok());
    }

    #[test]
    fn kernel_and_cokernel_of_multiplication() {
        // Z/4 --2--> Z/4: kernel Z/2, cokernel Z/2, image Z/2.
        let f = ModuleHom::new(cyclic(4), cyclic(4), m(1, 1, &[2])).unwrap();
        let z2 = FgModule::new(Z, 0, vec![2.into()]);
        assert_eq!(f.kernel().source.canonical(), z2);
        assert_eq!(f.cokernel().target.canonical(), z2);
        assert_eq!(f.image().source.canonical(), z2);
        assert!(!f.is_injective() && !f.is_surjective());
        assert!(is_exact_between(&f.kernel(), &f));
        assert!(is_short_exact(&f.kernel(), &f.image_factors().0));
    }

    #[test]
    fn pushout_examples() {
        // a = identity: the pushout is the target of f.
        let f = m(2, 1, &[2, 3]);
        let (p, _, _) = pushout_of_span(&f, &m(1, 1, &[1])).unwrap();
        assert_eq!(p.canonical(), FgModule::free(Z, 2));
        // f = (2), a = (3): Z^2 / (2, -3) ≅ Z.
        let (p, lb, lc) = pushout_of_span(&m(1, 1, &[2]), &m(1, 1, &[3])).unwrap();
        assert_eq!(p.canonical(), FgModule::free(Z, 1));
        assert_eq!(p.relations(), &m(2, 1, &[2, -3]));
        let src = PresentedModule::free(Z, 1);
        let fh = ModuleHom::new(src.clone(), PresentedModule::free(Z, 1), m(1, 1, &[2])).unwrap();
        let ah = ModuleHom::new(src, PresentedModule::free(Z, 1), m(1, 1, &[3])).unwrap();
        assert!(lb.after(&fh).unwrap().equals(&lc.after(&ah).unwrap()));
    }

    #[test]
    fn pullback_of_projections() {
        // Z -> Z/6 <- Z: pullback is {(x, y) : x ≡ y mod 6} ≅ Z^2.
        let q = ModuleHom::new(PresentedModule::free(Z, 1), cyclic(6), m(1, 1, &[1])).unwrap();
        let (p, a, b) = pullback(&q, &q).unwrap();
        assert_eq!(p.canonical(), FgModule::free(Z, 2));
        assert!(q.after(&a).unwrap().equals(&q.after(&b).unwrap()));
    }

    #[test]
    fn hom_generators_between_cyclics() {
        // Hom(Z/4, Z/6) ≅ Z/2, generated by 1 -> 3.
        let gens = hom_generators(&cyclic(4), &cyclic(6));
        assert!(!gens.is_empty());
        for g in &gens {
            ModuleHom::new(cyclic(4), cyclic(6), g.clone()).unwrap();
        }
        let nonzero = gens
            .iter()
            .filter(|g| !cyclic(6).vanishes(g))
            .map(|g| g.get(0, 0).to_i64().unwrap().rem_euclid(6))
            .collect::<Vec<_>>();
        assert!(nonzero.iter().all(|&v| v == 3), "{nonzero:?}");
        assert!(!nonzero.is_empty());
    }

    #[test]
    fn lift_through_inclusion() {
        // 2Z/4Z inside Z/4, lift of the map Z -> Z/4, 1 -> 2.
        let f = ModuleHom::new(cyclic(4), cyclic(4), m(1, 1, &[2])).unwrap();
        let inc = f.image();
        let g = ModuleHom::new(PresentedModule::free(Z, 1), cyclic(4), m(1, 1, &[2])).unwrap();
        let l = inc.lift(&g).unwrap();
        assert!(inc.after(&l).unwrap().equals(&g));
        let h = ModuleHom::new(PresentedModule::free(Z, 1), cyclic(4), m(1, 1, &[1])).unwrap();
        assert!(inc.lift(&h).is_none());
    }
}
