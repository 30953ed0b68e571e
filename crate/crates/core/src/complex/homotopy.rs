use super::{ChainMap, Homotopy};
use crate::linalg::{solve, Matrix};

/// Finds `H` with `dH + Hd = u`, or `None` if no such `H` exists over the
/// domain. All degrees are solved together as one linear system in
/// `vec(H_n)`, using `vec(A H B) = (B^T ⊗ A) vec(H)`.
pub fn nullhomotopy(u: &ChainMap) -> Option<Homotopy> {
    let (x, y) = (u.source(), u.target());
    let ring = u.ring();
    let degrees: Vec<i64> = x.degrees().collect();
    let mut col_off = Vec::with_capacity(degrees.len());
    let mut row_off = Vec::with_capacity(degrees.len());
    let (mut cols, mut rows) = (0, 0);
    for &n in &degrees {
        col_off.push(cols);
        row_off.push(rows);
        cols += y.rank(n + 1) * x.rank(n);
        rows += y.rank(n) * x.rank(n);
    }
    let mut system = Matrix::zeros(ring, rows, cols);
    let mut rhs = Matrix::zeros(ring, rows, 1);
    for (k, &n) in degrees.iter().enumerate() {
        let (xn, yn) = (x.rank(n), y.rank(n));
        if xn * yn == 0 {
            continue;
        }
        system.paste(row_off[k], col_off[k], &Matrix::identity(ring, xn).kron(&y.d(n + 1)));
        if k > 0 {
            system.paste(row_off[k], col_off[k - 1], &x.d(n).transpose().kron(&Matrix::identity(ring, yn)));
        }
        rhs.paste(row_off[k], 0, &Matrix::column(ring, u.component(n).vectorize()));
    }
    let sol = solve(&system, &rhs).expect("shapes agree")?;
    let comps = degrees
        .iter()
        .enumerate()
        .map(|(k, &n)| {
            let (r, c) = (y.rank(n + 1), x.rank(n));
            let v: Vec<_> = (0..r * c).map(|i| sol.get(col_off[k] + i, 0).clone()).collect();
            Matrix::from_vectorized(ring, r, c, &v)
        })
        .collect();
    let zero = ChainMap::zero(x, y);
    Some(Homotopy::new(u.clone(), zero, comps).expect("solution of the homotopy system"))
}

/// A homotopy from `u` to `v`, if one exists.
pub fn homotopy_between(u: &ChainMap, v: &ChainMap) -> Option<Homotopy> {
    let h = nullhomotopy(&u.sub(v).ok()?)?;
    let comps = u.source().degrees().map(|n| h.component(n).into_owned()).collect();
    Some(Homotopy::new(u.clone(), v.clone(), comps).expect("same components"))
}
