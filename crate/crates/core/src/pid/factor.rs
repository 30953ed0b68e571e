use dashu_int::IBig;

use super::{DomainElement, FpPoly};
use crate::error::{Error, Result};

/// Canonical primes with multiplicities, sorted by prime. The product of
/// `prime^mult` equals the factored element up to a unit.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factorization {
    pub factors: Vec<(DomainElement, u32)>,
}

impl Factorization {
    pub fn multiply_back(&self, ring: super::Ring) -> DomainElement {
        self.factors
            .iter()
            .fold(ring.one(), |acc, (p, m)| &acc * &p.pow(*m))
    }

    pub fn multiplicity(&self, prime: &DomainElement) -> u32 {
        self.factors
            .iter()
            .find(|(p, _)| p == prime)
            .map_or(0, |(_, m)| *m)
    }
}

pub(super) fn factor(a: &DomainElement) -> Result<Factorization> {
    if a.is_zero() || a.is_unit() {
        return Err(Error::NotFactorable(a.to_string()));
    }
    let mut factors = match a {
        DomainElement::Int(n) => factor_int(n),
        DomainElement::Poly(q) => factor_poly(q),
    };
    factors.sort();
    Ok(Factorization { factors })
}

fn factor_int(n: &IBig) -> Vec<(DomainElement, u32)> {
    let mut n = if *n < IBig::ZERO { -n } else { n.clone() };
    let mut out = Vec::new();
    if let Ok(mut m) = u64::try_from(&n) {
        let mut d = 2u64;
        while d.saturating_mul(d) <= m {
            let mut k = 0;
            while m % d == 0 {
                m /= d;
                k += 1;
            }
            if k > 0 {
                out.push((DomainElement::from(IBig::from(d)), k));
            }
            d += if d == 2 { 1 } else { 2 };
        }
        if m > 1 {
            out.push((DomainElement::from(IBig::from(m)), 1));
        }
        return out;
    }
    // Beyond u64: slow but exact.
    let mut d = IBig::from(2);
    while &d * &d <= n {
        let mut k = 0;
        while (&n % &d) == IBig::ZERO {
            n = &n / &d;
            k += 1;
        }
        if k > 0 {
            out.push((DomainElement::Int(d.clone()), k));
        }
        d += IBig::ONE;
    }
    if n > IBig::ONE {
        out.push((DomainElement::Int(n), 1));
    }
    out
}

fn factor_poly(q: &FpPoly) -> Vec<(DomainElement, u32)> {
    let p = q.characteristic();
    let (_, mut rest) = q.monic();
    let mut out = Vec::new();
    let mut k = 1;
    while rest.degree().unwrap_or(0) >= 2 * k {
        for cand in FpPoly::monics_of_degree(p, k) {
            let mut mult = 0;
            loop {
                let (quot, rem) = rest.div_rem(&cand);
                if !rem.is_zero() {
                    break;
                }
                rest = quot;
                mult += 1;
            }
            if mult > 0 {
                out.push((DomainElement::Poly(cand), mult));
            }
            if rest.degree().unwrap_or(0) < 2 * k {
                break;
            }
        }
        k += 1;
    }
    if rest.degree().unwrap_or(0) >= 1 {
        // Whatever survives trial division up to half its degree is irreducible.
        out.push((DomainElement::Poly(rest), 1));
    }
    out
}

/// Irreducibility by exhaustive trial division.
pub fn is_irreducible(a: &DomainElement) -> bool {
    matches!(factor(a), Ok(f) if f.factors.len() == 1 && f.factors[0].1 == 1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pid::Ring;

    #[test]
    fn twelve() {
        let f = factor(&DomainElement::from(12)).unwrap();
        assert_eq!(
            f.factors,
            vec![(DomainElement::from(2), 2), (DomainElement::from(3), 1)]
        );
        assert_eq!(f.multiply_back(Ring::Integers), DomainElement::from(12));
    }

    #[test]
    fn prime_and_negative() {
        assert_eq!(factor(&DomainElement::from(7)).unwrap().factors, vec![(DomainElement::from(7), 1)]);
        let f = factor(&DomainElement::from(-18)).unwrap();
        assert_eq!(f.multiply_back(Ring::Integers), DomainElement::from(18));
    }

    #[test]
    fn zero_and_units_rejected() {
        assert_eq!(factor(&DomainElement::from(0)).unwrap_err().kind(), "not-factorable");
        assert_eq!(factor(&DomainElement::from(-1)).unwrap_err().kind(), "not-factorable");
    }

    #[test]
    fn x_squared_plus_x_over_f2() {
        let r = Ring::Poly { p: 2 };
        let f = factor(&r.poly_from(&[0, 1, 1]).unwrap()).unwrap();
        assert_eq!(
            f.factors,
            vec![(r.poly_from(&[0, 1]).unwrap(), 1), (r.poly_from(&[1, 1]).unwrap(), 1)]
        );
    }

    /// Brute-force oracle: no reported prime has a monic divisor of
    /// smaller positive degree.
    #[test]
    fn poly_factors_are_irreducible_and_multiply_back() {
        let r = Ring::Poly { p: 3 };
        let a = r.poly_from(&[2, 0, 1, 1, 0, 2, 1]).unwrap();
        let f = factor(&a).unwrap();
        assert_eq!(f.multiply_back(r), a.canonical());
        for (prime, _) in &f.factors {
            let DomainElement::Poly(pp) = prime else { unreachable!() };
            let d = pp.degree().unwrap();
            for k in 1..d {
                for cand in FpPoly::monics_of_degree(3, k) {
                    assert!(!pp.div_rem(&cand).1.is_zero(), "{prime} divisible by {cand}");
                }
            }
        }
    }

    #[test]
    fn repeated_irreducible_tail() {
        let r = Ring::Poly { p: 2 };
        // (x^2 + x + 1)^2
        let q = r.poly_from(&[1, 1, 1]).unwrap();
        let f = factor(&(&q * &q)).unwrap();
        assert_eq!(f.factors, vec![(q, 2)]);
    }
}
