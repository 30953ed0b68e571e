//! Exact arithmetic over the two supported Euclidean domains: the integers
//! and univariate polynomials over a prime field.
//!
//! Canonical associates are nonnegative integers and monic polynomials, so
//! that elementary-divisor lists can be compared by plain equality.

mod factor;
mod poly;

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use dashu_int::IBig;

use crate::error::{Error, Result};

pub use factor::{is_irreducible, Factorization};
pub use poly::FpPoly;

/// Which Euclidean domain a value lives in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Ring {
    /// The integers.
    Integers,
    /// `F_p[x]` for a prime `p`.
    Poly { p: u32 },
}

fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

impl Ring {
    /// `F_p[x]`; rejects composite `p`.
    pub fn poly(p: u32) -> Result<Ring> {
        if !is_prime_u64(p as u64) {
            return Err(Error::InvalidInput(format!("{p} is not prime")));
        }
        Ok(Ring::Poly { p })
    }

    pub fn zero(self) -> DomainElement {
        match self {
            Ring::Integers => DomainElement::Int(IBig::ZERO),
            Ring::Poly { p } => DomainElement::Poly(FpPoly::zero(p)),
        }
    }

    pub fn one(self) -> DomainElement {
        self.from_i64(1)
    }

    /// The image of an integer under the unique ring map from `Z`.
    pub fn from_i64(self, n: i64) -> DomainElement {
        match self {
            Ring::Integers => DomainElement::Int(IBig::from(n)),
            Ring::Poly { p } => DomainElement::Poly(FpPoly::constant(p, n)),
        }
    }

    /// The variable `x`; `None` over the integers.
    pub fn x(self) -> Option<DomainElement> {
        match self {
            Ring::Integers => None,
            Ring::Poly { p } => Some(DomainElement::Poly(FpPoly::monomial(p, 1))),
        }
    }

    pub fn poly_from(self, coeffs: &[i64]) -> Option<DomainElement> {
        match self {
            Ring::Integers => None,
            Ring::Poly { p } => Some(DomainElement::Poly(FpPoly::new(p, coeffs.iter().copied()))),
        }
    }
}

impl fmt::Display for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Ring::Integers => write!(f, "Z"),
            Ring::Poly { p } => write!(f, "fpx:{p}"),
        }
    }
}

impl FromStr for Ring {
    type Err = Error;

    fn from_str(s: &str) -> Result<Ring> {
        let s = s.trim();
        if s == "Z" {
            return Ok(Ring::Integers);
        }
        match s.strip_prefix("fpx:").map(str::parse::<u32>) {
            Some(Ok(p)) => Ring::poly(p),
            _ => Err(Error::InvalidInput(format!(
                "unknown ring {s:?}; expected \"Z\" or \"fpx:<p>\""
            ))),
        }
    }
}

/// An element of one of the supported Euclidean domains.
#[derive(Clone, PartialEq, Eq, Hash)]
pub enum DomainElement {
    Int(IBig),
    Poly(FpPoly),
}

impl DomainElement {
    pub fn ring(&self) -> Ring {
        match self {
            DomainElement::Int(_) => Ring::Integers,
            DomainElement::Poly(q) => Ring::Poly { p: q.characteristic() },
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            DomainElement::Int(a) => *a == IBig::ZERO,
            DomainElement::Poly(q) => q.is_zero(),
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            DomainElement::Int(a) => *a == IBig::ONE,
            DomainElement::Poly(q) => q.coeffs() == [1],
        }
    }

    pub fn is_unit(&self) -> bool {
        match self {
            DomainElement::Int(a) => *a == IBig::ONE || *a == IBig::NEG_ONE,
            DomainElement::Poly(q) => q.degree() == Some(0),
        }
    }

    /// Inverse of a unit; `None` for non-units.
    pub fn unit_inverse(&self) -> Option<DomainElement> {
        if !self.is_unit() {
            return None;
        }
        Some(match self {
            DomainElement::Int(a) => DomainElement::Int(a.clone()),
            DomainElement::Poly(q) => {
                let p = q.characteristic();
                DomainElement::Poly(FpPoly::from_residues(p, vec![poly::inv_mod(q.leading(), p)]))
            }
        })
    }

    /// Compares Euclidean sizes: absolute value for integers, degree for
    /// polynomials. Zero is the smallest.
    pub fn size_cmp(&self, other: &DomainElement) -> Ordering {
        match (self, other) {
            (DomainElement::Int(a), DomainElement::Int(b)) => {
                let (a, b): (IBig, IBig) = (abs(a), abs(b));
                a.cmp(&b)
            }
            (DomainElement::Poly(a), DomainElement::Poly(b)) => a.coeffs().len().cmp(&b.coeffs().len()),
            _ => panic!("size_cmp across domains"),
        }
    }

    /// Euclidean division with a remainder strictly smaller than the divisor.
    /// Integer remainders are nonnegative. Panics on a zero divisor.
    pub fn div_rem(&self, b: &DomainElement) -> (DomainElement, DomainElement) {
        match (self, b) {
            (DomainElement::Int(a), DomainElement::Int(b)) => {
                assert!(*b != IBig::ZERO, "division by zero");
                let mut q = a / b;
                let mut r = a % b;
                if r < IBig::ZERO {
                    if *b > IBig::ZERO {
                        q -= IBig::ONE;
                        r += b;
                    } else {
                        q += IBig::ONE;
                        r -= b;
                    }
                }
                (DomainElement::Int(q), DomainElement::Int(r))
            }
            (DomainElement::Poly(a), DomainElement::Poly(b)) => {
                let (q, r) = a.div_rem(b);
                (DomainElement::Poly(q), DomainElement::Poly(r))
            }
            _ => panic!("div_rem across domains"),
        }
    }

    /// Quotient whose remainder is as small as possible (rounded to nearest
    /// for integers). Used by elimination to keep entries small.
    pub(crate) fn nearest_quotient(&self, b: &DomainElement) -> DomainElement {
        match (self, b) {
            (DomainElement::Int(_), DomainElement::Int(bb)) => match self.div_rem(b) {
                (DomainElement::Int(mut q), DomainElement::Int(r)) => {
                    if IBig::from(2) * &r > abs(bb) {
                        if *bb > IBig::ZERO {
                            q += IBig::ONE;
                        } else {
                            q -= IBig::ONE;
                        }
                    }
                    DomainElement::Int(q)
                }
                _ => unreachable!(),
            },
            _ => self.div_rem(b).0,
        }
    }

    /// `self / b` when `b` divides `self`.
    pub fn exact_div(&self, b: &DomainElement) -> Option<DomainElement> {
        if b.is_zero() {
            return if self.is_zero() { Some(self.clone()) } else { None };
        }
        let (q, r) = self.div_rem(b);
        r.is_zero().then_some(q)
    }

    /// Whether `self` divides `other`.
    pub fn divides(&self, other: &DomainElement) -> bool {
        other.exact_div(self).is_some()
    }

    /// Splits into `(unit, canonical associate)` with `self = unit * canonical`.
    /// `normalize(0) = (1, 0)`.
    pub fn normalize(&self) -> (DomainElement, DomainElement) {
        match self {
            DomainElement::Int(a) => {
                if *a < IBig::ZERO {
                    (DomainElement::Int(IBig::NEG_ONE), DomainElement::Int(-a))
                } else {
                    (DomainElement::Int(IBig::ONE), self.clone())
                }
            }
            DomainElement::Poly(q) => {
                let (lc, m) = q.monic();
                (
                    DomainElement::Poly(FpPoly::from_residues(q.characteristic(), vec![lc])),
                    DomainElement::Poly(m),
                )
            }
        }
    }

    pub fn canonical(&self) -> DomainElement {
        self.normalize().1
    }

    pub fn is_canonical(&self) -> bool {
        self.normalize().0.is_one()
    }

    pub fn pow(&self, e: u32) -> DomainElement {
        let mut acc = self.ring().one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Multiplicity of the prime `p` in `self` (`self` nonzero).
    pub fn valuation(&self, p: &DomainElement) -> u32 {
        assert!(!self.is_zero(), "valuation of zero");
        let mut k = 0;
        let mut cur = self.clone();
        while let Some(q) = cur.exact_div(p) {
            cur = q;
            k += 1;
        }
        k
    }

    /// Integer value when it fits in an `i64`.
    pub fn to_i64(&self) -> Option<i64> {
        match self {
            DomainElement::Int(a) => i64::try_from(a).ok(),
            DomainElement::Poly(_) => None,
        }
    }

    fn check_same(&self, other: &DomainElement) -> Result<()> {
        if self.ring() == other.ring() {
            Ok(())
        } else {
            Err(Error::DomainMismatch(self.ring(), other.ring()))
        }
    }
}

fn abs(a: &IBig) -> IBig {
    if *a < IBig::ZERO {
        -a
    } else {
        a.clone()
    }
}

/// Extended gcd: returns `(g, s, t)` with `g = s*a + t*b` and `g` the
/// canonical associate of the gcd.
pub fn ext_gcd(
    a: &DomainElement,
    b: &DomainElement,
) -> Result<(DomainElement, DomainElement, DomainElement)> {
    a.check_same(b)?;
    let ring = a.ring();
    let (mut r0, mut r1) = (a.clone(), b.clone());
    let (mut s0, mut s1) = (ring.one(), ring.zero());
    let (mut t0, mut t1) = (ring.zero(), ring.one());
    while !r1.is_zero() {
        let (q, r) = r0.div_rem(&r1);
        let s2 = &s0 - &(&q * &s1);
        let t2 = &t0 - &(&q * &t1);
        r0 = std::mem::replace(&mut r1, r);
        s0 = std::mem::replace(&mut s1, s2);
        t0 = std::mem::replace(&mut t1, t2);
    }
    let (u, g) = r0.normalize();
    let inv = u.unit_inverse().expect("normalize returns a unit");
    Ok((g, &s0 * &inv, &t0 * &inv))
}

/// Canonical gcd.
pub fn gcd(a: &DomainElement, b: &DomainElement) -> DomainElement {
    ext_gcd(a, b).expect("gcd across domains").0
}

/// Splits an element into a unit and its canonical associate.
pub fn normalize(a: &DomainElement) -> (DomainElement, DomainElement) {
    a.normalize()
}

/// Prime factorization by trial division.
pub fn factor(a: &DomainElement) -> Result<Factorization> {
    factor::factor(a)
}

impl Ord for DomainElement {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (DomainElement::Int(a), DomainElement::Int(b)) => a.cmp(b),
            (DomainElement::Poly(a), DomainElement::Poly(b)) => a
                .characteristic()
                .cmp(&b.characteristic())
                .then_with(|| a.cmp_key(b)),
            (DomainElement::Int(_), DomainElement::Poly(_)) => Ordering::Less,
            (DomainElement::Poly(_), DomainElement::Int(_)) => Ordering::Greater,
        }
    }
}

impl PartialOrd for DomainElement {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for DomainElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DomainElement::Int(a) => write!(f, "{a}"),
            DomainElement::Poly(q) => write!(f, "{q}"),
        }
    }
}

impl fmt::Debug for DomainElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl<'a> Add<&'a DomainElement> for &'a DomainElement {
    type Output = DomainElement;

    fn add(self, rhs: &DomainElement) -> DomainElement {
        match (self, rhs) {
            (DomainElement::Int(a), DomainElement::Int(b)) => DomainElement::Int(a + b),
            (DomainElement::Poly(a), DomainElement::Poly(b)) => DomainElement::Poly(a.add(b)),
            _ => panic!("addition across domains"),
        }
    }
}

impl<'a> Sub<&'a DomainElement> for &'a DomainElement {
    type Output = DomainElement;

    fn sub(self, rhs: &DomainElement) -> DomainElement {
        match (self, rhs) {
            (DomainElement::Int(a), DomainElement::Int(b)) => DomainElement::Int(a - b),
            (DomainElement::Poly(a), DomainElement::Poly(b)) => DomainElement::Poly(a.sub(b)),
            _ => panic!("subtraction across domains"),
        }
    }
}

impl<'a> Mul<&'a DomainElement> for &'a DomainElement {
    type Output = DomainElement;

    fn mul(self, rhs: &DomainElement) -> DomainElement {
        match (self, rhs) {
            (DomainElement::Int(a), DomainElement::Int(b)) => DomainElement::Int(a * b),
            (DomainElement::Poly(a), DomainElement::Poly(b)) => DomainElement::Poly(a.mul(b)),
            _ => panic!("multiplication across domains"),
        }
    }
}

impl Neg for &DomainElement {
    type Output = DomainElement;

    fn neg(self) -> DomainElement {
        match self {
            DomainElement::Int(a) => DomainElement::Int(-a),
            DomainElement::Poly(a) => DomainElement::Poly(a.neg()),
        }
    }
}

impl Neg for DomainElement {
    type Output = DomainElement;

    fn neg(self) -> DomainElement {
        -&self
    }
}

impl From<i64> for DomainElement {
    fn from(n: i64) -> Self {
        DomainElement::Int(IBig::from(n))
    }
}

impl From<IBig> for DomainElement {
    fn from(n: IBig) -> Self {
        DomainElement::Int(n)
    }
}

impl From<FpPoly> for DomainElement {
    fn from(q: FpPoly) -> Self {
        DomainElement::Poly(q)
    }
}
