//! Smith normal form by elementary row and column operations.
//!
//! Pivots are chosen by smallest Euclidean size (absolute value over `Z`,
//! degree over `F_p[x]`), preferring units. The elimination first reaches a
//! diagonal form, then the diagonal is repaired into a divisibility chain
//! with 2x2 gcd/lcm moves.

use crate::linalg::Matrix;
use crate::pid::{ext_gcd, DomainElement, Ring};

/// Witness `U * A * V = D` with `U`, `V` unimodular and `D` diagonal with
/// canonical entries `d_1 | d_2 | ... | d_r`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SnfCertificate {
    pub u: Matrix,
    pub d: Matrix,
    pub v: Matrix,
    /// Nonzero diagonal entries of `d`, in order.
    pub divisors: Vec<DomainElement>,
}

impl SnfCertificate {
    pub fn rank(&self) -> usize {
        self.divisors.len()
    }

    /// Checks every claim of the certificate against the source matrix.
    pub fn verify(&self, a: &Matrix) -> bool {
        let (m, n) = a.shape();
        if self.u.shape() != (m, m) || self.v.shape() != (n, n) || self.d.shape() != (m, n) {
            return false;
        }
        if &(&self.u * a) * &self.v != self.d {
            return false;
        }
        if !self.u.is_unimodular() || !self.v.is_unimodular() {
            return false;
        }
        for i in 0..m {
            for j in 0..n {
                let e = self.d.get(i, j);
                let expected_nonzero = i == j && i < self.divisors.len();
                if expected_nonzero {
                    if *e != self.divisors[i] {
                        return false;
                    }
                } else if !e.is_zero() {
                    return false;
                }
            }
        }
        self.divisors.iter().all(|d| !d.is_zero() && d.is_canonical())
            && self.divisors.windows(2).all(|w| w[0].divides(&w[1]))
    }
}

/// Elimination state. `left` receives every row operation applied to `d`
/// and `right` every column operation.
pub(crate) struct Reduction {
    pub d: Matrix,
    pub left: Option<Matrix>,
    pub right: Option<Matrix>,
    pub rank: usize,
}

impl Reduction {
    pub fn new(a: &Matrix, left: Option<Matrix>, track_right: bool) -> Reduction {
        if let Some(l) = &left {
            assert_eq!(l.rows(), a.rows(), "left companion row count");
        }
        let right = track_right.then(|| Matrix::identity(a.ring(), a.cols()));
        Reduction { d: a.clone(), left, right, rank: 0 }
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        self.d.swap_rows(a, b);
        if let Some(l) = &mut self.left {
            l.swap_rows(a, b);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        self.d.swap_cols(a, b);
        if let Some(r) = &mut self.right {
            r.swap_cols(a, b);
        }
    }

    fn add_row(&mut self, target: usize, source: usize, c: &DomainElement) {
        self.d.add_row_multiple(target, source, c);
        if let Some(l) = &mut self.left {
            l.add_row_multiple(target, source, c);
        }
    }

    fn add_col(&mut self, target: usize, source: usize, c: &DomainElement) {
        self.d.add_col_multiple(target, source, c);
        if let Some(r) = &mut self.right {
            r.add_col_multiple(target, source, c);
        }
    }

    fn scale_row(&mut self, i: usize, c: &DomainElement) {
        self.d.scale_row(i, c);
        if let Some(l) = &mut self.left {
            l.scale_row(i, c);
        }
    }

    /// Position of the best pivot in the trailing submatrix starting at
    /// `(t, t)`: the first unit found, otherwise the smallest nonzero entry.
    fn find_pivot(&self, t: usize) -> Option<(usize, usize)> {
        let (m, n) = self.d.shape();
        let mut best: Option<(usize, usize)> = None;
        for i in t..m {
            for j in t..n {
                let e = self.d.get(i, j);
                if e.is_zero() {
                    continue;
                }
                if e.is_unit() {
                    return Some((i, j));
                }
                match best {
                    Some((bi, bj)) if e.size_cmp(self.d.get(bi, bj)).is_ge() => {}
                    _ => best = Some((i, j)),
                }
            }
        }
        best
    }

    /// Reduces `d` to diagonal form; returns the rank.
    pub fn diagonalize(&mut self) -> usize {
        let (m, n) = self.d.shape();
        let mut t = 0;
        while t < m.min(n) {
            let Some((pi, pj)) = self.find_pivot(t) else { break };
            self.swap_rows(t, pi);
            self.swap_cols(t, pj);
            loop {
                for i in t + 1..m {
                    if self.d.get(i, t).is_zero() {
                        continue;
                    }
                    let q = self.d.get(i, t).nearest_quotient(self.d.get(t, t));
                    self.add_row(i, t, &-q);
                }
                for j in t + 1..n {
                    if self.d.get(t, j).is_zero() {
                        continue;
                    }
                    let q = self.d.get(t, j).nearest_quotient(self.d.get(t, t));
                    self.add_col(j, t, &-q);
                }
                // Any leftover remainder is smaller than the pivot; promote it.
                let mut smallest: Option<(usize, bool)> = None;
                for i in t + 1..m {
                    let e = self.d.get(i, t);
                    if !e.is_zero() && smallest.is_none_or(|(k, row)| e.size_cmp(self.at(t, k, row)).is_lt()) {
                        smallest = Some((i, true));
                    }
                }
                for j in t + 1..n {
                    let e = self.d.get(t, j);
                    if !e.is_zero() && smallest.is_none_or(|(k, row)| e.size_cmp(self.at(t, k, row)).is_lt()) {
                        smallest = Some((j, false));
                    }
                }
                match smallest {
                    Some((i, true)) => self.swap_rows(t, i),
                    Some((j, false)) => self.swap_cols(t, j),
                    None => break,
                }
            }
            t += 1;
        }
        self.rank = t;
        t
    }

    fn at(&self, t: usize, k: usize, row: bool) -> &DomainElement {
        if row { self.d.get(k, t) } else { self.d.get(t, k) }
    }

    /// Turns the diagonal into a canonical divisibility chain.
    pub fn fix_chain(&mut self) {
        let r = self.rank;
        let ring = self.d.ring();
        for i in 0..r {
            for j in i + 1..r {
                let a = self.d.get(i, i).clone();
                let b = self.d.get(j, j).clone();
                if a.divides(&b) {
                    continue;
                }
                let (g, s, t) = ext_gcd(&a, &b).expect("single domain");
                let a_g = a.exact_div(&g).expect("gcd divides");
                let b_g = b.exact_div(&g).expect("gcd divides");
                // L = [[s, t], [-b/g, a/g]], R = [[1, -t b/g], [1, s a/g]]
                self.combine_rows(i, j, [&s, &t, &-&b_g, &a_g]);
                self.combine_cols(i, j, [&ring.one(), &ring.one(), &-&(&t * &b_g), &(&s * &a_g)]);
            }
        }
        for i in 0..r {
            let (u, _) = self.d.get(i, i).normalize();
            if !u.is_one() {
                let inv = u.unit_inverse().expect("unit");
                self.scale_row(i, &inv);
            }
        }
    }

    /// Rows `(i, j) <- (c0*ri + c1*rj, c2*ri + c3*rj)`.
    fn combine_rows(&mut self, i: usize, j: usize, c: [&DomainElement; 4]) {
        fn apply(m: &mut Matrix, i: usize, j: usize, c: [&DomainElement; 4]) {
            for k in 0..m.cols() {
                let (x, y) = (m.get(i, k).clone(), m.get(j, k).clone());
                if x.is_zero() && y.is_zero() {
                    continue;
                }
                *m.entry_mut(i, k) = &(c[0] * &x) + &(c[1] * &y);
                *m.entry_mut(j, k) = &(c[2] * &x) + &(c[3] * &y);
            }
        }
        apply(&mut self.d, i, j, c);
        if let Some(l) = &mut self.left {
            apply(l, i, j, c);
        }
    }

    /// Columns `(i, j) <- (c0*ci + c1*cj, c2*ci + c3*cj)`.
    fn combine_cols(&mut self, i: usize, j: usize, c: [&DomainElement; 4]) {
        fn apply(m: &mut Matrix, i: usize, j: usize, c: [&DomainElement; 4]) {
            for k in 0..m.rows() {
                let (x, y) = (m.get(k, i).clone(), m.get(k, j).clone());
                if x.is_zero() && y.is_zero() {
                    continue;
                }
                *m.entry_mut(k, i) = &(c[0] * &x) + &(c[1] * &y);
                *m.entry_mut(k, j) = &(c[2] * &x) + &(c[3] * &y);
            }
        }
        apply(&mut self.d, i, j, c);
        if let Some(r) = &mut self.right {
            apply(r, i, j, c);
        }
    }

    pub fn diagonal(&self) -> Vec<DomainElement> {
        (0..self.rank).map(|i| self.d.get(i, i).clone()).collect()
    }
}

/// Full Smith normal form with both transforms.
pub fn snf(a: &Matrix) -> SnfCertificate {
    let mut red = Reduction::new(a, Some(Matrix::identity(a.ring(), a.rows())), true);
    red.diagonalize();
    red.fix_chain();
    let divisors = red.diagonal();
    SnfCertificate {
        u: red.left.expect("tracked"),
        v: red.right.expect("tracked"),
        d: red.d,
        divisors,
    }
}

/// Elementary divisors only; skips the transforms.
pub fn elementary_divisors(a: &Matrix) -> Vec<DomainElement> {
    let mut red = Reduction::new(a, None, false);
    red.diagonalize();
    red.fix_chain();
    red.diagonal()
}

pub fn rank(a: &Matrix) -> usize {
    Reduction::new(a, None, false).diagonalize()
}

/// Elementary divisors of `diag(entries)`; a test oracle for module
/// canonicalization that does not go through factorization.
pub fn chain_of_diagonal(ring: Ring, entries: &[DomainElement]) -> Vec<DomainElement> {
    elementary_divisors(&Matrix::diagonal(ring, entries))
}

#[cfg(test)]
mod tests {
    use super::*;

    const Z: Ring = Ring::Integers;

    #[test]
    fn diag_two_three() {
        let a = Matrix::from_i64(Z, 2, 2, &[2, 0, 0, 3]);
        let c = snf(&a);
        assert!(c.verify(&a));
        assert_eq!(c.d, Matrix::from_i64(Z, 2, 2, &[1, 0, 0, 6]));
    }

    #[test]
    fn identity_and_zero() {
        let i = Matrix::identity(Z, 4);
        let c = snf(&i);
        assert!(c.verify(&i));
        assert_eq!(c.d, i);
        let z = Matrix::zeros(Z, 3, 2);
        let c = snf(&z);
        assert!(c.verify(&z));
        assert!(c.divisors.is_empty());
        assert!(c.d.is_zero());
    }

    #[test]
    fn empty_shapes() {
        for (m, n) in [(0, 0), (0, 3), (2, 0)] {
            let a = Matrix::zeros(Z, m, n);
            assert!(snf(&a).verify(&a));
        }
    }

    #[test]
    fn classic_example() {
        let a = Matrix::from_i64(Z, 3, 3, &[2, 4, 4, -6, 6, 12, 10, -4, -16]);
        let c = snf(&a);
        assert!(c.verify(&a));
        let d: Vec<i64> = c.divisors.iter().map(|d| d.to_i64().unwrap()).collect();
        assert_eq!(d, vec![2, 6, 12]);
    }

    #[test]
    fn polynomial_matrix() {
        let r = Ring::Poly { p: 2 };
        let x = r.x().unwrap();
        let one = r.one();
        let x1 = &x + &one;
        let a = Matrix::from_rows(r, vec![vec![x.clone(), r.zero()], vec![r.zero(), x1.clone()]]).unwrap();
        let c = snf(&a);
        assert!(c.verify(&a));
        assert_eq!(c.divisors, vec![one, &x * &x1]);
    }
}
