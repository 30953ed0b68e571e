use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};
use crate::pid::{DomainElement, Ring};

/// A dense matrix over one of the supported domains. Zero rows or columns
/// are allowed everywhere.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    ring: Ring,
    rows: usize,
    cols: usize,
    data: Vec<DomainElement>,
}

impl Matrix {
    pub fn zeros(ring: Ring, rows: usize, cols: usize) -> Matrix {
        Matrix {
            ring,
            rows,
            cols,
            data: vec![ring.zero(); rows * cols],
        }
    }

    pub fn identity(ring: Ring, n: usize) -> Matrix {
        let mut m = Matrix::zeros(ring, n, n);
        for i in 0..n {
            m.data[i * n + i] = ring.one();
        }
        m
    }

    pub fn from_fn(
        ring: Ring,
        rows: usize,
        cols: usize,
        mut f: impl FnMut(usize, usize) -> DomainElement,
    ) -> Matrix {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                let e = f(i, j);
                assert_eq!(e.ring(), ring, "entry from a different domain");
                data.push(e);
            }
        }
        Matrix { ring, rows, cols, data }
    }

    /// Row-major construction; every row must have the same length and every
    /// entry must live in `ring`.
    pub fn from_rows(ring: Ring, rows: Vec<Vec<DomainElement>>) -> Result<Matrix> {
        let cols = rows.first().map_or(0, Vec::len);
        let n = rows.len();
        let mut data = Vec::with_capacity(n * cols);
        for row in rows {
            if row.len() != cols {
                return Err(Error::dims(format_args!("ragged rows: {} vs {cols}", row.len())));
            }
            for e in row {
                if e.ring() != ring {
                    return Err(Error::DomainMismatch(ring, e.ring()));
                }
                data.push(e);
            }
        }
        Ok(Matrix { ring, rows: n, cols, data })
    }

    /// Integer-literal construction, mapped into `ring` (constants for
    /// polynomial rings).
    pub fn from_i64(ring: Ring, rows: usize, cols: usize, entries: &[i64]) -> Matrix {
        assert_eq!(entries.len(), rows * cols, "entry count");
        Matrix::from_fn(ring, rows, cols, |i, j| ring.from_i64(entries[i * cols + j]))
    }

    pub fn diagonal(ring: Ring, diag: &[DomainElement]) -> Matrix {
        let n = diag.len();
        Matrix::from_fn(ring, n, n, |i, j| if i == j { diag[i].clone() } else { ring.zero() })
    }

    pub fn column(ring: Ring, entries: Vec<DomainElement>) -> Matrix {
        let n = entries.len();
        Matrix { ring, rows: n, cols: 1, data: entries }
    }

    pub fn ring(&self) -> Ring {
        self.ring
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &DomainElement {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: DomainElement) {
        assert_eq!(v.ring(), self.ring);
        self.data[i * self.cols + j] = v;
    }

    pub(crate) fn entry_mut(&mut self, i: usize, j: usize) -> &mut DomainElement {
        &mut self.data[i * self.cols + j]
    }

    pub fn entries(&self) -> impl Iterator<Item = &DomainElement> {
        self.data.iter()
    }

    pub fn row(&self, i: usize) -> &[DomainElement] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(DomainElement::is_zero)
    }

    pub fn is_identity(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| {
                (0..self.cols).all(|j| {
                    let e = self.get(i, j);
                    if i == j { e.is_one() } else { e.is_zero() }
                })
            })
    }

    pub fn transpose(&self) -> Matrix {
        Matrix::from_fn(self.ring, self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn scale(&self, c: &DomainElement) -> Matrix {
        Matrix {
            ring: self.ring,
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|e| e * c).collect(),
        }
    }

    pub fn submatrix(&self, rows: std::ops::Range<usize>, cols: std::ops::Range<usize>) -> Matrix {
        assert!(rows.end <= self.rows && cols.end <= self.cols, "submatrix out of range");
        let (r0, c0) = (rows.start, cols.start);
        Matrix::from_fn(self.ring, rows.len(), cols.len(), |i, j| self.get(r0 + i, c0 + j).clone())
    }

    pub fn columns(&self, cols: std::ops::Range<usize>) -> Matrix {
        self.submatrix(0..self.rows, cols)
    }

    pub fn row_range(&self, rows: std::ops::Range<usize>) -> Matrix {
        self.submatrix(rows, 0..self.cols)
    }

    /// Keeps the listed columns, in order.
    pub fn select_columns(&self, idx: &[usize]) -> Matrix {
        Matrix::from_fn(self.ring, self.rows, idx.len(), |i, j| self.get(i, idx[j]).clone())
    }

    pub fn select_rows(&self, idx: &[usize]) -> Matrix {
        Matrix::from_fn(self.ring, idx.len(), self.cols, |i, j| self.get(idx[i], j).clone())
    }

    /// `[A | B | ...]`; all blocks share the row count.
    pub fn hstack(ring: Ring, rows: usize, blocks: &[&Matrix]) -> Matrix {
        let cols = blocks.iter().map(|b| b.cols).sum();
        let mut out = Matrix::zeros(ring, rows, cols);
        let mut c0 = 0;
        for b in blocks {
            assert_eq!(b.rows, rows, "hstack row mismatch");
            out.paste(0, c0, b);
            c0 += b.cols;
        }
        out
    }

    pub fn vstack(ring: Ring, cols: usize, blocks: &[&Matrix]) -> Matrix {
        let rows = blocks.iter().map(|b| b.rows).sum();
        let mut out = Matrix::zeros(ring, rows, cols);
        let mut r0 = 0;
        for b in blocks {
            assert_eq!(b.cols, cols, "vstack column mismatch");
            out.paste(r0, 0, b);
            r0 += b.rows;
        }
        out
    }

    pub fn block_diag(ring: Ring, blocks: &[&Matrix]) -> Matrix {
        let rows = blocks.iter().map(|b| b.rows).sum();
        let cols = blocks.iter().map(|b| b.cols).sum();
        let mut out = Matrix::zeros(ring, rows, cols);
        let (mut r0, mut c0) = (0, 0);
        for b in blocks {
            out.paste(r0, c0, b);
            r0 += b.rows;
            c0 += b.cols;
        }
        out
    }

    /// Assembles a block matrix. `row_sizes[i] x col_sizes[j]` is the shape
    /// of block `(i, j)`; `None` blocks are zero.
    pub fn blocks(
        ring: Ring,
        row_sizes: &[usize],
        col_sizes: &[usize],
        grid: &[Vec<Option<&Matrix>>],
    ) -> Matrix {
        assert_eq!(grid.len(), row_sizes.len());
        let rows = row_sizes.iter().sum();
        let cols = col_sizes.iter().sum();
        let mut out = Matrix::zeros(ring, rows, cols);
        let mut r0 = 0;
        for (bi, grow) in grid.iter().enumerate() {
            assert_eq!(grow.len(), col_sizes.len());
            let mut c0 = 0;
            for (bj, blk) in grow.iter().enumerate() {
                if let Some(b) = blk {
                    assert_eq!(b.shape(), (row_sizes[bi], col_sizes[bj]), "block ({bi},{bj}) shape");
                    out.paste(r0, c0, b);
                }
                c0 += col_sizes[bj];
            }
            r0 += row_sizes[bi];
        }
        out
    }

    pub fn paste(&mut self, r0: usize, c0: usize, b: &Matrix) {
        assert!(r0 + b.rows <= self.rows && c0 + b.cols <= self.cols, "paste out of range");
        for i in 0..b.rows {
            for j in 0..b.cols {
                self.data[(r0 + i) * self.cols + c0 + j] = b.get(i, j).clone();
            }
        }
    }

    /// Kronecker product `A ⊗ B`.
    pub fn kron(&self, b: &Matrix) -> Matrix {
        let mut out = Matrix::zeros(self.ring, self.rows * b.rows, self.cols * b.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = self.get(i, j);
                if a.is_zero() {
                    continue;
                }
                for k in 0..b.rows {
                    for l in 0..b.cols {
                        let e = b.get(k, l);
                        if !e.is_zero() {
                            *out.entry_mut(i * b.rows + k, j * b.cols + l) = a * e;
                        }
                    }
                }
            }
        }
        out
    }

    /// Column-major flattening into a single column.
    pub fn vectorize(&self) -> Vec<DomainElement> {
        let mut v = Vec::with_capacity(self.rows * self.cols);
        for j in 0..self.cols {
            for i in 0..self.rows {
                v.push(self.get(i, j).clone());
            }
        }
        v
    }

    pub fn from_vectorized(ring: Ring, rows: usize, cols: usize, v: &[DomainElement]) -> Matrix {
        assert_eq!(v.len(), rows * cols);
        Matrix::from_fn(ring, rows, cols, |i, j| v[j * rows + i].clone())
    }

    pub fn try_mul(&self, other: &Matrix) -> Result<Matrix> {
        if self.cols != other.rows {
            return Err(Error::dims(format_args!(
                "{}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        Ok(self * other)
    }

    /// Determinant by fraction-free (Bareiss) elimination; exact in any
    /// integral domain.
    pub fn det(&self) -> DomainElement {
        assert!(self.is_square(), "determinant of a non-square matrix");
        let n = self.rows;
        let ring = self.ring;
        if n == 0 {
            return ring.one();
        }
        let mut a = self.clone();
        let mut sign_flip = false;
        let mut prev = ring.one();
        for k in 0..n - 1 {
            if a.get(k, k).is_zero() {
                let Some(swap) = (k + 1..n).find(|&i| !a.get(i, k).is_zero()) else {
                    return ring.zero();
                };
                a.swap_rows(k, swap);
                sign_flip = !sign_flip;
            }
            let pivot = a.get(k, k).clone();
            for i in k + 1..n {
                for j in k + 1..n {
                    let num = &(&pivot * a.get(i, j)) - &(a.get(i, k) * a.get(k, j));
                    let q = num.exact_div(&prev).expect("Bareiss division is exact");
                    *a.entry_mut(i, j) = q;
                }
                *a.entry_mut(i, k) = ring.zero();
            }
            prev = pivot;
        }
        let d = a.get(n - 1, n - 1).clone();
        if sign_flip { -d } else { d }
    }

    pub fn is_unimodular(&self) -> bool {
        self.is_square() && self.det().is_unit()
    }

    pub(crate) fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub(crate) fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// `row[target] += c * row[source]`.
    pub(crate) fn add_row_multiple(&mut self, target: usize, source: usize, c: &DomainElement) {
        if c.is_zero() {
            return;
        }
        for j in 0..self.cols {
            let s = &self.data[source * self.cols + j];
            if s.is_zero() {
                continue;
            }
            let add = c * s;
            let t = &mut self.data[target * self.cols + j];
            *t = &*t + &add;
        }
    }

    /// `col[target] += c * col[source]`.
    pub(crate) fn add_col_multiple(&mut self, target: usize, source: usize, c: &DomainElement) {
        if c.is_zero() {
            return;
        }
        for i in 0..self.rows {
            let s = &self.data[i * self.cols + source];
            if s.is_zero() {
                continue;
            }
            let add = c * s;
            let t = &mut self.data[i * self.cols + target];
            *t = &*t + &add;
        }
    }

    pub(crate) fn scale_row(&mut self, i: usize, c: &DomainElement) {
        for j in 0..self.cols {
            let t = &mut self.data[i * self.cols + j];
            if !t.is_zero() {
                *t = &*t * c;
            }
        }
    }
}

impl Mul for &Matrix {
    type Output = Matrix;

    fn mul(self, rhs: &Matrix) -> Matrix {
        assert_eq!(
            self.cols, rhs.rows,
            "matrix product {}x{} * {}x{}",
            self.rows, self.cols, rhs.rows, rhs.cols
        );
        assert_eq!(self.ring, rhs.ring, "matrix product across domains");
        let mut out = Matrix::zeros(self.ring, self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = rhs.get(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    let t = &mut out.data[i * rhs.cols + j];
                    *t = &*t + &(a * b);
                }
            }
        }
        out
    }
}

impl Add for &Matrix {
    type Output = Matrix;

    fn add(self, rhs: &Matrix) -> Matrix {
        assert_eq!(self.shape(), rhs.shape(), "matrix sum shape");
        Matrix {
            ring: self.ring,
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a + b).collect(),
        }
    }
}

impl Sub for &Matrix {
    type Output = Matrix;

    fn sub(self, rhs: &Matrix) -> Matrix {
        assert_eq!(self.shape(), rhs.shape(), "matrix difference shape");
        Matrix {
            ring: self.ring,
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a - b).collect(),
        }
    }
}

impl Neg for &Matrix {
    type Output = Matrix;

    fn neg(self) -> Matrix {
        Matrix {
            ring: self.ring,
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|a| -a).collect(),
        }
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Matrix[{}x{} over {}]", self.rows, self.cols, self.ring)?;
        for i in 0..self.rows {
            write!(f, "\n  [")?;
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", self.get(i, j))?;
            }
            write!(f, "]")?;
        }
        Ok(())
    }
}
