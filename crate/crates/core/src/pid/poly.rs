//! Dense univariate polynomials over a prime field `F_p`.

use std::cmp::Ordering;
use std::fmt;

/// A polynomial with coefficients in `[0, p)`, stored lowest degree first.
/// The coefficient vector never has a trailing zero, so the zero
/// polynomial is the empty vector.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FpPoly {
    p: u32,
    coeffs: Vec<u32>,
}

fn mul_mod(a: u32, b: u32, p: u32) -> u32 {
    ((a as u64 * b as u64) % p as u64) as u32
}

fn add_mod(a: u32, b: u32, p: u32) -> u32 {
    ((a as u64 + b as u64) % p as u64) as u32
}

fn sub_mod(a: u32, b: u32, p: u32) -> u32 {
    ((a as u64 + p as u64 - b as u64) % p as u64) as u32
}

/// Inverse of a nonzero residue modulo the prime `p`.
pub(crate) fn inv_mod(a: u32, p: u32) -> u32 {
    debug_assert!(!a.is_multiple_of(p));
    let (mut r0, mut r1) = (p as i64, (a % p) as i64);
    let (mut t0, mut t1) = (0i64, 1i64);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    t0.rem_euclid(p as i64) as u32
}

impl FpPoly {
    /// Builds a polynomial from arbitrary integer coefficients, reducing them
    /// modulo `p`.
    pub fn new(p: u32, coeffs: impl IntoIterator<Item = i64>) -> Self {
        let coeffs = coeffs
            .into_iter()
            .map(|c| c.rem_euclid(p as i64) as u32)
            .collect();
        Self::from_residues(p, coeffs)
    }

    pub(crate) fn from_residues(p: u32, mut coeffs: Vec<u32>) -> Self {
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        FpPoly { p, coeffs }
    }

    pub fn zero(p: u32) -> Self {
        FpPoly { p, coeffs: Vec::new() }
    }

    pub fn constant(p: u32, c: i64) -> Self {
        Self::new(p, [c])
    }

    /// The monomial `x^k`.
    pub fn monomial(p: u32, k: usize) -> Self {
        let mut coeffs = vec![0; k + 1];
        coeffs[k] = 1;
        FpPoly { p, coeffs }
    }

    pub fn characteristic(&self) -> u32 {
        self.p
    }

    pub fn coeffs(&self) -> &[u32] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> u32 {
        self.coeffs.last().copied().unwrap_or(0)
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let c = (0..n)
            .map(|i| {
                let a = self.coeffs.get(i).copied().unwrap_or(0);
                let b = other.coeffs.get(i).copied().unwrap_or(0);
                add_mod(a, b, self.p)
            })
            .collect();
        Self::from_residues(self.p, c)
    }

    pub fn sub(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let c = (0..n)
            .map(|i| {
                let a = self.coeffs.get(i).copied().unwrap_or(0);
                let b = other.coeffs.get(i).copied().unwrap_or(0);
                sub_mod(a, b, self.p)
            })
            .collect();
        Self::from_residues(self.p, c)
    }

    pub fn neg(&self) -> Self {
        let c = self.coeffs.iter().map(|&a| sub_mod(0, a, self.p)).collect();
        Self::from_residues(self.p, c)
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero(self.p);
        }
        let p = self.p as u64;
        let mut acc = vec![0u64; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                acc[i + j] = (acc[i + j] + a as u64 * b as u64) % p;
            }
        }
        Self::from_residues(self.p, acc.into_iter().map(|c| c as u32).collect())
    }

    pub fn scale(&self, c: u32) -> Self {
        let c = self.coeffs.iter().map(|&a| mul_mod(a, c, self.p)).collect();
        Self::from_residues(self.p, c)
    }

    /// Long division; panics on a zero divisor.
    pub fn div_rem(&self, divisor: &Self) -> (Self, Self) {
        let dd = divisor.degree().expect("polynomial division by zero");
        let inv = inv_mod(divisor.leading(), self.p);
        let mut rem = self.coeffs.clone();
        let Some(nd) = self.degree() else {
            return (Self::zero(self.p), Self::zero(self.p));
        };
        if nd < dd {
            return (Self::zero(self.p), self.clone());
        }
        let mut quot = vec![0u32; nd - dd + 1];
        for k in (0..=nd - dd).rev() {
            let c = mul_mod(rem[k + dd], inv, self.p);
            quot[k] = c;
            if c == 0 {
                continue;
            }
            for (j, &b) in divisor.coeffs.iter().enumerate() {
                rem[k + j] = sub_mod(rem[k + j], mul_mod(c, b, self.p), self.p);
            }
        }
        rem.truncate(dd);
        (
            Self::from_residues(self.p, quot),
            Self::from_residues(self.p, rem),
        )
    }

    /// Scales to a monic polynomial; returns `(leading coefficient, monic)`.
    /// The zero polynomial maps to `(1, 0)`.
    pub fn monic(&self) -> (u32, Self) {
        if self.is_zero() {
            return (1, self.clone());
        }
        let lc = self.leading();
        (lc, self.scale(inv_mod(lc, self.p)))
    }

    pub(crate) fn cmp_key(&self, other: &Self) -> Ordering {
        self.coeffs
            .len()
            .cmp(&other.coeffs.len())
            .then_with(|| self.coeffs.iter().rev().cmp(other.coeffs.iter().rev()))
    }

    /// All monic polynomials of exact degree `k`, in a fixed order.
    pub(crate) fn monics_of_degree(p: u32, k: usize) -> impl Iterator<Item = FpPoly> {
        let count = (p as u64).pow(k as u32);
        (0..count).map(move |mut idx| {
            let mut c = Vec::with_capacity(k + 1);
            for _ in 0..k {
                c.push((idx % p as u64) as u32);
                idx /= p as u64;
            }
            c.push(1);
            FpPoly { p, coeffs: c }
        })
    }
}

impl fmt::Display for FpPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, &c) in self.coeffs.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            if !first {
                write!(f, "+")?;
            }
            first = false;
            match (k, c) {
                (0, c) => write!(f, "{c}")?,
                (1, 1) => write!(f, "x")?,
                (1, c) => write!(f, "{c}x")?,
                (k, 1) => write!(f, "x^{k}")?,
                (k, c) => write!(f, "{c}x^{k}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for FpPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self} (mod {})", self.p)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn division_identity() {
        let a = FpPoly::new(5, [3, 0, 2, 4, 1]);
        let b = FpPoly::new(5, [1, 2]);
        let (q, r) = a.div_rem(&b);
        assert_eq!(q.mul(&b).add(&r), a);
        assert!(r.degree().unwrap_or(0) < 1);
    }

    #[test]
    fn monic_scaling() {
        let a = FpPoly::new(3, [2, 2]);
        let (lc, m) = a.monic();
        assert_eq!(lc, 2);
        assert_eq!(m, FpPoly::new(3, [1, 1]));
    }

    #[test]
    fn inverse_mod_prime() {
        for a in 1..13 {
            assert_eq!(mul_mod(a, inv_mod(a, 13), 13), 1);
        }
    }

    #[test]
    fn monic_enumeration_counts() {
        assert_eq!(FpPoly::monics_of_degree(3, 2).count(), 9);
        assert!(FpPoly::monics_of_degree(2, 3).all(|q| q.degree() == Some(3) && q.leading() == 1));
    }
}
