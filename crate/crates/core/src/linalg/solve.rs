//! Linear algebra over the domain decided through the diagonal form:
//! solving, kernels, images, cokernels and exactness.

use super::snf::Reduction;
use super::{FgModule, Matrix};
use crate::error::{Error, Result};

/// Solves `A x = b` over the domain (`b` may have several columns).
///
/// Returns `None` exactly when some column has no solution. The solution is
/// the particular one with zero homogeneous part in the diagonal
/// coordinates, so it is deterministic.
pub fn solve(a: &Matrix, b: &Matrix) -> Result<Option<Matrix>> {
    if a.rows() != b.rows() {
        return Err(Error::dims(format_args!(
            "solve: A is {}x{}, b has {} rows",
            a.rows(),
            a.cols(),
            b.rows()
        )));
    }
    let ring = a.ring();
    let mut red = Reduction::new(a, Some(b.clone()), true);
    let r = red.diagonalize();
    let bb = red.left.as_ref().expect("tracked");
    let mut y = Matrix::zeros(ring, a.cols(), b.cols());
    for k in 0..b.cols() {
        for i in 0..a.rows() {
            let rhs = bb.get(i, k);
            if i < r {
                match rhs.exact_div(red.d.get(i, i)) {
                    Some(q) => y.set(i, k, q),
                    None => return Ok(None),
                }
            } else if !rhs.is_zero() {
                return Ok(None);
            }
        }
    }
    Ok(Some(red.right.as_ref().expect("tracked") * &y))
}

/// Columns form a basis of `{x : A x = 0}`. The basis comes from the
/// right transform of the diagonal form, so it is saturated.
pub fn kernel_basis(a: &Matrix) -> Matrix {
    let mut red = Reduction::new(a, None, true);
    let r = red.diagonalize();
    red.right.expect("tracked").columns(r..a.cols())
}

/// Columns form a basis of the column span of `A`. When `A` has full
/// column rank its own columns are returned unchanged.
pub fn image_basis(a: &Matrix) -> Matrix {
    let mut red = Reduction::new(a, None, true);
    let r = red.diagonalize();
    if r == a.cols() {
        return a.clone();
    }
    a * &red.right.expect("tracked").columns(0..r)
}

pub fn is_injective(a: &Matrix) -> bool {
    super::rank(a) == a.cols()
}

/// Canonical form of `R^rows / im A`.
pub fn cokernel(a: &Matrix) -> FgModule {
    let divisors = super::elementary_divisors(a);
    let free = a.rows() - divisors.len();
    FgModule::from_chain(a.ring(), free, divisors.into_iter().filter(|d| !d.is_unit()).collect())
}

/// Whether `im A = ker B`; requires `B A = 0`.
pub fn is_exact_at(a: &Matrix, b: &Matrix) -> Result<bool> {
    let ba = b.try_mul(a)?;
    if !ba.is_zero() {
        return Err(Error::NotAComplex("B * A is not zero".into()));
    }
    let k = kernel_basis(b);
    Ok(solve(a, &k)?.is_some())
}

/// Inverse of a unimodular matrix, or `None` if the matrix is not invertible
/// over the domain.
pub fn inverse(a: &Matrix) -> Option<Matrix> {
    if !a.is_square() {
        return None;
    }
    solve(a, &Matrix::identity(a.ring(), a.rows())).ok().flatten()
}

/// A left inverse `L` with `L A = I`, when one exists.
pub fn left_inverse(a: &Matrix) -> Option<Matrix> {
    let t = solve(&a.transpose(), &Matrix::identity(a.ring(), a.cols())).ok()??;
    Some(t.transpose())
}

/// A right inverse `S` with `A S = I`, when one exists.
pub fn right_inverse(a: &Matrix) -> Option<Matrix> {
    solve(a, &Matrix::identity(a.ring(), a.rows())).ok()?
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pid::Ring;

    const Z: Ring = Ring::Integers;

    fn m(r: usize, c: usize, e: &[i64]) -> Matrix {
        Matrix::from_i64(Z, r, c, e)
    }

    #[test]
    fn solve_scalar_cases() {
        assert_eq!(solve(&m(1, 1, &[2]), &m(1, 1, &[4])).unwrap(), Some(m(1, 1, &[2])));
        assert_eq!(solve(&m(1, 1, &[2]), &m(1, 1, &[3])).unwrap(), None);
    }

    #[test]
    fn solve_diagonal_system() {
        let a = m(2, 2, &[1, 0, 0, 6]);
        let x = solve(&a, &m(2, 1, &[5, 12])).unwrap().unwrap();
        assert_eq!(x, m(2, 1, &[5, 2]));
    }

    #[test]
    fn solve_dimension_mismatch() {
        let err = solve(&m(2, 2, &[1, 0, 0, 1]), &m(3, 1, &[1, 2, 3])).unwrap_err();
        assert_eq!(err.kind(), "dimension-mismatch");
    }

    #[test]
    fn kernel_examples() {
        assert_eq!(kernel_basis(&m(1, 1, &[2])).cols(), 0);
        assert_eq!(kernel_basis(&m(1, 1, &[0])), m(1, 1, &[1]));
        let a = m(1, 2, &[2, 3]);
        let k = kernel_basis(&a);
        assert_eq!(k.cols(), 1);
        assert!((&a * &k).is_zero());
        // Saturated: (3, -2) up to sign.
        let v = (k.get(0, 0).to_i64().unwrap(), k.get(1, 0).to_i64().unwrap());
        assert!(v == (3, -2) || v == (-3, 2), "{v:?}");
    }

    #[test]
    fn cokernel_examples() {
        assert_eq!(cokernel(&m(1, 1, &[6])), FgModule::new(Z, 0, vec![6.into()]));
        assert_eq!(cokernel(&Matrix::identity(Z, 3)), FgModule::zero(Z));
        assert_eq!(
            cokernel(&m(3, 3, &[1, 0, 0, 0, 2, 0, 0, 0, 0])),
            FgModule::new(Z, 1, vec![2.into()])
        );
    }

    #[test]
    fn exactness_examples() {
        // Z --2--> Z --> 0: cokernel Z/2, not exact at the middle.
        assert!(!is_exact_at(&m(1, 1, &[2]), &Matrix::zeros(Z, 0, 1)).unwrap());
        assert!(is_exact_at(&Matrix::identity(Z, 2), &Matrix::zeros(Z, 0, 2)).unwrap());
        // 0 -> Z --1--> Z is exact at the middle Z.
        assert!(is_exact_at(&Matrix::zeros(Z, 1, 0), &m(1, 1, &[1])).unwrap());
        let err = is_exact_at(&m(1, 1, &[1]), &m(1, 1, &[1])).unwrap_err();
        assert_eq!(err.kind(), "not-a-complex");
    }

    #[test]
    fn inverse_of_unimodular() {
        let a = m(2, 2, &[2, 1, 1, 1]);
        let inv = inverse(&a).unwrap();
        assert!((&a * &inv).is_identity());
        assert!(inverse(&m(2, 2, &[2, 0, 0, 1])).is_none());
    }
}
