//! Executable forms of the base-change lemma for morphisms of short exact
//! sequences and of the two sequences extracted from a 3x3 diagram.

use super::presented::{is_short_exact, pullback, pushout};
use super::{Matrix, ModuleHom, PresentedModule};
use crate::error::{Error, Result};

/// A morphism of short exact sequences
///
/// ```text
/// X  -i->  Y  -p->  Z
/// |a       |b       |c
/// X' -i'-> Y' -p'-> Z'
/// ```
#[derive(Clone, Debug)]
pub struct SesMorphism {
    pub i: ModuleHom,
    pub p: ModuleHom,
    pub i2: ModuleHom,
    pub p2: ModuleHom,
    pub a: ModuleHom,
    pub b: ModuleHom,
    pub c: ModuleHom,
}

/// Both sides of both halves of the base-change lemma, computed separately.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BaseChangeVerdict {
    pub left_square_cocartesian: bool,
    pub c_iso: bool,
    pub right_square_cartesian: bool,
    pub a_iso: bool,
}

impl BaseChangeVerdict {
    pub fn agrees(&self) -> bool {
        self.left_square_cocartesian == self.c_iso && self.right_square_cartesian == self.a_iso
    }
}

fn composable(first: &ModuleHom, second: &ModuleHom, what: &str) -> Result<()> {
    if first.target != second.source {
        return Err(Error::MalformedDiagram(format!("{what}: maps do not compose")));
    }
    Ok(())
}

fn commutes(l1: &ModuleHom, l2: &ModuleHom, r1: &ModuleHom, r2: &ModuleHom, what: &str) -> Result<()> {
    composable(l1, l2, what)?;
    composable(r1, r2, what)?;
    let left = l2.after(l1)?;
    let right = r2.after(r1)?;
    if left.source != right.source || left.target != right.target || !left.equals(&right) {
        return Err(Error::MalformedDiagram(format!("{what} does not commute")));
    }
    Ok(())
}

fn exact_row(f: &ModuleHom, g: &ModuleHom, what: &str) -> Result<()> {
    composable(f, g, what)?;
    if !is_short_exact(f, g) {
        return Err(Error::MalformedDiagram(format!("{what} is not short exact")));
    }
    Ok(())
}

impl SesMorphism {
    pub fn validate(&self) -> Result<()> {
        exact_row(&self.i, &self.p, "top row")?;
        exact_row(&self.i2, &self.p2, "bottom row")?;
        commutes(&self.i, &self.b, &self.a, &self.i2, "left square")?;
        commutes(&self.p, &self.c, &self.b, &self.p2, "right square")
    }
}

/// Decides whether the left square is a pushout and whether the right
/// square is a pullback, independently of whether `c` and `a` are
/// isomorphisms.
pub fn base_change_check(d: &SesMorphism) -> Result<BaseChangeVerdict> {
    d.validate()?;
    let ring = d.b.matrix.ring();

    let (po, _, _) = pushout(&d.i, &d.a)?;
    let y2 = &d.b.target;
    let phi = ModuleHom::new(po, y2.clone(), Matrix::hstack(ring, y2.gens(), &[&d.b.matrix, &d.i2.matrix]))?;

    let (pb, to_y2, to_z) = pullback(&d.p2, &d.c)?;
    let sum = y2.direct_sum(&d.c.source);
    let incl = ModuleHom {
        source: pb,
        target: sum.clone(),
        matrix: Matrix::vstack(ring, to_y2.source.gens(), &[&to_y2.matrix, &to_z.matrix]),
    };
    let pair = ModuleHom::new(
        d.b.source.clone(),
        sum,
        Matrix::vstack(ring, d.b.source.gens(), &[&d.b.matrix, &d.p.matrix]),
    )?;
    let psi = incl.lift(&pair).expect("the pair lands in the pullback");

    Ok(BaseChangeVerdict {
        left_square_cocartesian: phi.is_iso(),
        c_iso: d.c.is_iso(),
        right_square_cartesian: psi.is_iso(),
        a_iso: d.a.is_iso(),
    })
}

/// A 3x3 diagram with short exact rows and columns
///
/// ```text
/// X  -ix-> X'  -px-> X''
/// |f       |f1       |f2
/// Y  -iy-> Y'  -py-> Y''
/// |g       |g1       |g2
/// Z  -iz-> Z'  -pz-> Z''
/// ```
#[derive(Clone, Debug)]
pub struct ThreeByThree {
    pub ix: ModuleHom,
    pub px: ModuleHom,
    pub iy: ModuleHom,
    pub py: ModuleHom,
    pub iz: ModuleHom,
    pub pz: ModuleHom,
    pub f: ModuleHom,
    pub g: ModuleHom,
    pub f1: ModuleHom,
    pub g1: ModuleHom,
    pub f2: ModuleHom,
    pub g2: ModuleHom,
}

impl ThreeByThree {
    pub fn validate(&self) -> Result<()> {
        exact_row(&self.ix, &self.px, "first row")?;
        exact_row(&self.iy, &self.py, "second row")?;
        exact_row(&self.iz, &self.pz, "third row")?;
        exact_row(&self.f, &self.g, "first column")?;
        exact_row(&self.f1, &self.g1, "second column")?;
        exact_row(&self.f2, &self.g2, "third column")?;
        commutes(&self.ix, &self.f1, &self.f, &self.iy, "upper left square")?;
        commutes(&self.px, &self.f2, &self.f1, &self.py, "upper right square")?;
        commutes(&self.iy, &self.g1, &self.g, &self.iz, "lower left square")?;
        commutes(&self.py, &self.g2, &self.g1, &self.pz, "lower right square")
    }

    /// The diagram of a module `M` with submodules `A` and `B` spanned by the
    /// columns of `a_gens` and `b_gens`:
    /// `X = A ∩ B`, `X' = A`, `Y = B`, `Y' = M`, and quotients elsewhere.
    pub fn from_submodules(m: &PresentedModule, a_gens: &Matrix, b_gens: &Matrix) -> Result<ThreeByThree> {
        let ring = m.ring();
        let span_a = ModuleHom::new(PresentedModule::free(ring, a_gens.cols()), m.clone(), a_gens.clone())?;
        let span_b = ModuleHom::new(PresentedModule::free(ring, b_gens.cols()), m.clone(), b_gens.clone())?;
        let f1 = span_a.image();
        let iy = span_b.image();
        let (_, ix, f) = pullback(&f1, &iy)?;
        let px = ix.cokernel();
        let py = iy.cokernel();
        let g = f.cokernel();
        let g1 = f1.cokernel();
        let z2 = py.target.quotient(&f1.matrix);
        let pz = ModuleHom::new(g1.target.clone(), z2.clone(), Matrix::identity(ring, m.gens()))?;
        let g2 = ModuleHom::new(py.target.clone(), z2, Matrix::identity(ring, m.gens()))?;
        let f2 = ModuleHom::new(px.target.clone(), py.target.clone(), f1.matrix.clone())?;
        let iz = ModuleHom::new(g.target.clone(), g1.target.clone(), iy.matrix.clone())?;
        Ok(ThreeByThree { ix, px, iy, py, iz, pz, f, g, f1, g1, f2, g2 })
    }
}

/// Verdicts for `Y ⊔_X X' -> Y' -> Z''` and `X -> Y' -> Z' ×_{Z''} Y''`.
pub fn three_by_three_sequences(d: &ThreeByThree) -> Result<(bool, bool)> {
    d.validate()?;
    let ring = d.iy.matrix.ring();
    let y1 = &d.iy.target;

    let (po, _, _) = pushout(&d.f, &d.ix)?;
    let into_y1 = ModuleHom::new(po, y1.clone(), Matrix::hstack(ring, y1.gens(), &[&d.iy.matrix, &d.f1.matrix]))?;
    let onto_z2 = d.pz.after(&d.g1)?;
    let first = is_short_exact(&into_y1, &onto_z2);

    let (pb, to_z1, to_y2) = pullback(&d.pz, &d.g2)?;
    let sum = d.pz.source.direct_sum(&d.g2.source);
    let incl = ModuleHom {
        source: pb,
        target: sum.clone(),
        matrix: Matrix::vstack(ring, to_z1.source.gens(), &[&to_z1.matrix, &to_y2.matrix]),
    };
    let pair = ModuleHom::new(y1.clone(), sum, Matrix::vstack(ring, y1.gens(), &[&d.g1.matrix, &d.py.matrix]))?;
    let onto_pb = incl.lift(&pair).expect("the pair lands in the pullback");
    let from_x = d.iy.after(&d.f)?;
    let second = is_short_exact(&from_x, &onto_pb);

    Ok((first, second))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pid::Ring;

    const Z: Ring = Ring::Integers;

    fn m(r: usize, c: usize, e: &[i64]) -> Matrix {
        Matrix::from_i64(Z, r, c, e)
    }

    fn free(n: usize) -> PresentedModule {
        PresentedModule::free(Z, n)
    }

    fn hom(s: usize, t: usize, e: &[i64]) -> ModuleHom {
        ModuleHom::new(free(s), free(t), m(t, s, e)).unwrap()
    }

    /// Split rows `Z -> Z^2 -> Z` with verticals `a`, `diag(b1, b2)`, `c`.
    fn split(a: i64, b: [i64; 4], c: i64) -> SesMorphism {
        SesMorphism {
            i: hom(1, 2, &[1, 0]),
            p: hom(2, 1, &[0, 1]),
            i2: hom(1, 2, &[1, 0]),
            p2: hom(2, 1, &[0, 1]),
            a: hom(1, 1, &[a]),
            b: hom(2, 2, &b),
            c: hom(1, 1, &[c]),
        }
    }

    #[test]
    fn identity_verticals() {
        let v = base_change_check(&split(1, [1, 0, 0, 1], 1)).unwrap();
        assert!(v.agrees() && v.left_square_cocartesian && v.right_square_cartesian);
    }

    #[test]
    fn doubling_on_the_quotient() {
        let v = base_change_check(&split(1, [1, 0, 0, 2], 2)).unwrap();
        assert!(v.agrees());
        assert!(!v.left_square_cocartesian && !v.c_iso);
        assert!(v.right_square_cartesian && v.a_iso);
    }

    #[test]
    fn doubling_on_the_sub() {
        let v = base_change_check(&split(2, [2, 0, 0, 1], 1)).unwrap();
        assert!(v.agrees());
        assert!(v.left_square_cocartesian && v.c_iso);
        assert!(!v.right_square_cartesian && !v.a_iso);
    }

    #[test]
    fn non_commuting_square_rejected() {
        let err = base_change_check(&split(1, [3, 0, 0, 1], 1)).unwrap_err();
        assert_eq!(err.kind(), "malformed-diagram");
    }

    #[test]
    fn split_three_by_three() {
        let d = ThreeByThree::from_submodules(&free(2), &m(2, 1, &[1, 0]), &m(2, 1, &[0, 1])).unwrap();
        assert_eq!(three_by_three_sequences(&d).unwrap(), (true, true));
    }

    #[test]
    fn even_integers_three_by_three() {
        // M = Z, A = 2Z, B = 3Z.
        let d = ThreeByThree::from_submodules(&free(1), &m(1, 1, &[2]), &m(1, 1, &[3])).unwrap();
        assert_eq!(three_by_three_sequences(&d).unwrap(), (true, true));
        // M = Z/12, A = <4>, B = <6>.
        let z12 = PresentedModule::new(m(1, 1, &[12]));
        let d = ThreeByThree::from_submodules(&z12, &m(1, 1, &[4]), &m(1, 1, &[6])).unwrap();
        assert_eq!(three_by_three_sequences(&d).unwrap(), (true, true));
    }
}
