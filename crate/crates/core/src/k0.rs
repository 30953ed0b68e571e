//! `K_0` invariants in classified form. A torsion module has the class
//! `p ↦ length at p`; a Koszul object up to quasi-isomorphism has the class
//! of its `H_0`; and a Koszul object up to isomorphism has the pair
//! (rank of `X_1`, class of `H_0`).

use std::collections::BTreeMap;
use std::fmt;
use std::ops::Add;

use crate::error::{Error, Result};
use crate::koszul::{retraction_q, AdmissibleExactSequence, KoszulObject, PresentedExactSequence, PresentedKoszul};
use crate::linalg::FgModule;
use crate::pid::{factor, DomainElement};

/// Finitely supported map from canonical primes to integers; zero
/// multiplicities are never stored.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct K0TorsionClass {
    mults: BTreeMap<DomainElement, i64>,
}

impl K0TorsionClass {
    pub fn zero() -> K0TorsionClass {
        K0TorsionClass::default()
    }

    pub fn from_pairs(pairs: impl IntoIterator<Item = (DomainElement, i64)>) -> Result<K0TorsionClass> {
        let mut c = K0TorsionClass::zero();
        for (p, m) in pairs {
            if !crate::pid::is_irreducible(&p) || !p.is_canonical() {
                return Err(Error::InvalidInput(format!("{p} is not a canonical prime")));
            }
            c.bump(p, m);
        }
        Ok(c)
    }

    fn bump(&mut self, p: DomainElement, m: i64) {
        let e = self.mults.entry(p.clone()).or_insert(0);
        *e += m;
        if *e == 0 {
            self.mults.remove(&p);
        }
    }

    pub fn get(&self, p: &DomainElement) -> i64 {
        self.mults.get(p).copied().unwrap_or(0)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&DomainElement, i64)> {
        self.mults.iter().map(|(p, m)| (p, *m))
    }

    pub fn is_zero(&self) -> bool {
        self.mults.is_empty()
    }
}

impl Add for &K0TorsionClass {
    type Output = K0TorsionClass;

    fn add(self, rhs: &K0TorsionClass) -> K0TorsionClass {
        let mut out = self.clone();
        for (p, m) in rhs.iter() {
            out.bump(p.clone(), m);
        }
        out
    }
}

impl fmt::Display for K0TorsionClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.iter().map(|(p, m)| format!("{p}:{m}")).collect();
        write!(f, "{{{}}}", parts.join(", "))
    }
}

/// `(rank, torsion)`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct K0KosClass {
    pub rank: i64,
    pub torsion: K0TorsionClass,
}

impl Add for &K0KosClass {
    type Output = K0KosClass;

    fn add(self, rhs: &K0KosClass) -> K0KosClass {
        K0KosClass { rank: self.rank + rhs.rank, torsion: &self.torsion + &rhs.torsion }
    }
}

impl fmt::Display for K0KosClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.rank, self.torsion)
    }
}

/// `p ↦ length_p(M)`, summed over the prime factorizations of the
/// invariant factors.
pub fn class_torsion(m: &FgModule) -> Result<K0TorsionClass> {
    if !m.is_torsion() {
        return Err(Error::NotTorsion);
    }
    let mut c = K0TorsionClass::zero();
    for t in m.torsion() {
        for (p, e) in factor(t)?.factors {
            c.bump(p, e as i64);
        }
    }
    Ok(c)
}

pub fn class_kos_qis(x: &KoszulObject) -> K0TorsionClass {
    class_torsion(&x.h0()).expect("Koszul objects have torsion H_0")
}

pub fn class_kos_isom(x: &KoszulObject) -> K0KosClass {
    K0KosClass { rank: x.rank() as i64, torsion: class_kos_qis(x) }
}

/// Class of an acyclic object: the rank of `X_1`.
pub fn class_acyclic(x: &KoszulObject) -> Result<i64> {
    if !x.is_acyclic() {
        return Err(Error::pre("the object is not acyclic"));
    }
    Ok(x.rank() as i64)
}

/// `class_kos_isom(X) = (class of r(X), class_kos_qis(X))`.
pub fn decomposition_check(x: &KoszulObject) -> bool {
    let r = class_acyclic(&retraction_q(x)).expect("r(X) is acyclic");
    class_kos_isom(x) == K0KosClass { rank: r, torsion: class_kos_qis(x) }
}

/// For presented entries the rank part is the rank of `X_1`; torsion
/// modules contribute nothing to it.
pub fn class_presented_isom(x: &PresentedKoszul) -> K0KosClass {
    K0KosClass { rank: x.x1.canonical().free_rank() as i64, torsion: class_presented_qis(x) }
}

pub fn class_presented_qis(x: &PresentedKoszul) -> K0TorsionClass {
    class_torsion(&x.h0().canonical()).expect("H_0 is torsion")
}

/// Which class an additivity check compares.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Classifier {
    /// [`class_kos_isom`].
    Isom,
    /// [`class_kos_qis`].
    Qis,
}

impl std::str::FromStr for Classifier {
    type Err = Error;

    fn from_str(s: &str) -> Result<Classifier> {
        match s {
            "isom" => Ok(Classifier::Isom),
            "qis" => Ok(Classifier::Qis),
            _ => Err(Error::InvalidInput(format!("unknown classifier {s:?}"))),
        }
    }
}

/// `class(Y) = class(X) + class(Z)` for a sequence of Koszul objects.
pub fn additivity_check(seq: &AdmissibleExactSequence, which: Classifier) -> Result<bool> {
    let x = KoszulObject::from_complex(seq.left())?;
    let y = KoszulObject::from_complex(seq.middle())?;
    let z = KoszulObject::from_complex(seq.right())?;
    Ok(match which {
        Classifier::Isom => class_kos_isom(&y) == &class_kos_isom(&x) + &class_kos_isom(&z),
        Classifier::Qis => class_kos_qis(&y) == &class_kos_qis(&x) + &class_kos_qis(&z),
    })
}

/// The same check for presented entries.
pub fn additivity_check_presented(seq: &PresentedExactSequence, which: Classifier) -> bool {
    let (x, y, z) = (seq.left(), seq.middle(), seq.right());
    match which {
        Classifier::Isom => class_presented_isom(y) == &class_presented_isom(x) + &class_presented_isom(z),
        Classifier::Qis => class_presented_qis(y) == &class_presented_qis(x) + &class_presented_qis(z),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::ChainMap;
    use crate::koszul::e_functor;
    use crate::linalg::Matrix;
    use crate::pid::Ring;

    const Z: Ring = Ring::Integers;

    fn n(v: i64) -> DomainElement {
        Z.from_i64(v)
    }

    fn ko(r: usize, e: &[i64]) -> KoszulObject {
        KoszulObject::new(Matrix::from_i64(Z, r, r, e)).unwrap()
    }

    #[test]
    fn torsion_classes() {
        let c = class_torsion(&FgModule::new(Z, 0, vec![n(12)])).unwrap();
        assert_eq!(c, K0TorsionClass::from_pairs([(n(2), 2), (n(3), 1)]).unwrap());
        assert!(class_torsion(&FgModule::zero(Z)).unwrap().is_zero());
        let c = class_torsion(&FgModule::new(Z, 0, vec![n(2), n(2)])).unwrap();
        assert_eq!(c.get(&n(2)), 2);
        assert_eq!(class_torsion(&FgModule::free(Z, 1)).unwrap_err(), Error::NotTorsion);
    }

    #[test]
    fn polynomial_torsion_class() {
        let r = Ring::poly(2).unwrap();
        let x = r.x().unwrap();
        let x1 = r.poly_from(&[1, 1]).unwrap();
        // x^2 (x + 1) has lengths 2 at x and 1 at x + 1.
        let m = FgModule::new(r, 0, vec![&(&x * &x) * &x1]);
        let c = class_torsion(&m).unwrap();
        assert_eq!((c.get(&x), c.get(&x1)), (2, 1));
    }

    #[test]
    fn koszul_classes() {
        let x = ko(1, &[6]);
        assert_eq!(class_kos_qis(&x), K0TorsionClass::from_pairs([(n(2), 1), (n(3), 1)]).unwrap());
        assert_eq!(class_kos_isom(&x).rank, 1);
        let acyclic = ko(3, &[1, 2, 3, 0, 1, 4, 0, 0, 1]);
        assert_eq!(class_kos_isom(&acyclic), K0KosClass { rank: 3, torsion: K0TorsionClass::zero() });
        assert_eq!(class_kos_qis(&x.direct_sum(&acyclic)), class_kos_qis(&x));
        let s = x.direct_sum(&ko(1, &[4]));
        assert_eq!(class_kos_isom(&s), &class_kos_isom(&x) + &class_kos_isom(&ko(1, &[4])));
        assert!(decomposition_check(&s));
    }

    #[test]
    fn additivity_on_split_sequence() {
        let (a, b) = (ko(1, &[6]), ko(1, &[10]));
        let y = a.direct_sum(&b);
        let i = ChainMap::from_fn(&a.complex(), &y.complex(), |_| Matrix::from_i64(Z, 2, 1, &[1, 0])).unwrap();
        let seq = AdmissibleExactSequence::from_split_mono(i).unwrap();
        assert!(additivity_check(&seq, Classifier::Isom).unwrap());
        assert!(additivity_check(&seq, Classifier::Qis).unwrap());
    }

    #[test]
    fn additivity_on_e_functor_triple() {
        let x = PresentedKoszul::from_free(&ko(1, &[6]));
        let s = e_functor(&x).unwrap();
        assert_eq!(class_presented_isom(s.left()).rank, 1);
        assert!(class_presented_isom(s.left()).torsion.is_zero());
        assert_eq!(class_presented_isom(s.right()).rank, 0);
        assert_eq!(class_presented_isom(s.middle()), class_kos_isom(&ko(1, &[6])));
        assert!(additivity_check_presented(&s, Classifier::Isom));
        assert!(additivity_check_presented(&s, Classifier::Qis));
    }
}
