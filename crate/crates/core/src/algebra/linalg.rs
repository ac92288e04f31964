//! Dense linear algebra over exact scalar rings.
//!
//! Matrices are row-major `Vec<Vec<S>>`.  Elimination uses the first
//! invertible entry of each column as pivot, which is exact for fields
//! (rationals, rational functions) and correct for power series whenever the
//! matrix is invertible (some entry of each pivot column is then a unit).

use super::rational::Rational;
use super::{AlgebraError, ScalarField};

/// A row-major matrix.
pub type Matrix<S> = Vec<Vec<S>>;

/// Identity matrix of size `n`, with entries shaped like `proto`.
pub fn identity<S: ScalarField>(n: usize, proto: &S) -> Matrix<S> {
    (0..n).map(|i| (0..n).map(|j| if i == j { proto.one_like() } else { proto.zero_like() }).collect()).collect()
}

/// Transpose.
pub fn transpose<S: Clone>(m: &Matrix<S>) -> Matrix<S> {
    if m.is_empty() {
        return Vec::new();
    }
    (0..m[0].len()).map(|j| m.iter().map(|row| row[j].clone()).collect()).collect()
}

/// Matrix product `a * b`.
pub fn mat_mul<S: ScalarField>(a: &Matrix<S>, b: &Matrix<S>) -> Matrix<S> {
    let inner = b.len();
    let cols = if inner == 0 { 0 } else { b[0].len() };
    a.iter()
        .map(|row| {
            assert_eq!(row.len(), inner, "dimension mismatch in matrix product");
            (0..cols)
                .map(|j| {
                    let mut acc = row[0].zero_like();
                    for k in 0..inner {
                        if !row[k].vanishes() && !b[k][j].vanishes() {
                            acc = acc.add(&row[k].mul(&b[k][j]));
                        }
                    }
                    acc
                })
                .collect()
        })
        .collect()
}

/// Matrix–vector product.
pub fn mat_vec<S: ScalarField>(a: &Matrix<S>, v: &[S]) -> Vec<S> {
    a.iter()
        .map(|row| {
            assert_eq!(row.len(), v.len(), "dimension mismatch in matrix-vector product");
            let mut acc = v[0].zero_like();
            for (x, y) in row.iter().zip(v) {
                if !x.vanishes() && !y.vanishes() {
                    acc = acc.add(&x.mul(y));
                }
            }
            acc
        })
        .collect()
}

fn find_pivot<S: ScalarField>(m: &Matrix<S>, col: usize, from: usize) -> Option<(usize, S)> {
    (from..m.len()).find_map(|r| if m[r][col].vanishes() { None } else { m[r][col].try_inv().map(|inv| (r, inv)) })
}

/// Inverse of a square matrix.
pub fn inverse<S: ScalarField>(m: &Matrix<S>) -> Result<Matrix<S>, AlgebraError> {
    let n = m.len();
    if n == 0 {
        return Ok(Vec::new());
    }
    let id = identity(n, &m[0][0]);
    solve_many(m, &id)
}

/// Solve `a x = b` for a square invertible `a` and a matrix right-hand side.
pub fn solve_many<S: ScalarField>(a: &Matrix<S>, b: &Matrix<S>) -> Result<Matrix<S>, AlgebraError> {
    let n = a.len();
    assert!(a.iter().all(|r| r.len() == n), "matrix must be square");
    assert_eq!(b.len(), n, "right-hand side has wrong row count");
    let mut aug: Matrix<S> = a.iter().zip(b).map(|(r, s)| r.iter().chain(s.iter()).cloned().collect()).collect();
    let width = aug.first().map_or(0, Vec::len);
    for col in 0..n {
        let (p, inv) = find_pivot(&aug, col, col).ok_or(AlgebraError::Singular)?;
        aug.swap(col, p);
        aug[col] = aug[col].iter().map(|x| x.mul(&inv)).collect();
        for r in 0..n {
            if r != col && !aug[r][col].vanishes() {
                let f = aug[r][col].clone();
                for c in col..width {
                    if !aug[col][c].vanishes() {
                        let d = f.mul(&aug[col][c]);
                        aug[r][c] = aug[r][c].sub(&d);
                    }
                }
            }
        }
    }
    Ok(aug.into_iter().map(|r| r[n..].to_vec()).collect())
}

/// Solve `a x = b` for a square invertible `a`.
pub fn solve<S: ScalarField>(a: &Matrix<S>, b: &[S]) -> Result<Vec<S>, AlgebraError> {
    let rhs: Matrix<S> = b.iter().map(|x| vec![x.clone()]).collect();
    Ok(solve_many(a, &rhs)?.into_iter().map(|mut r| r.remove(0)).collect())
}

/// Determinant by fraction-producing elimination.
pub fn determinant<S: ScalarField>(m: &Matrix<S>) -> Result<S, AlgebraError> {
    let n = m.len();
    assert!(m.iter().all(|r| r.len() == n), "matrix must be square");
    if n == 0 {
        return Err(AlgebraError::Singular);
    }
    let mut a = m.clone();
    let mut det = a[0][0].one_like();
    for col in 0..n {
        let Some((p, inv)) = find_pivot(&a, col, col) else {
            if (col..n).all(|r| a[r][col].vanishes()) {
                return Ok(det.zero_like());
            }
            // A nonzero non-unit column (power series): not decidable here.
            return Err(AlgebraError::NonUnit);
        };
        if p != col {
            a.swap(p, col);
            det = det.neg();
        }
        det = det.mul(&a[col][col]);
        for r in col + 1..n {
            if !a[r][col].vanishes() {
                let f = a[r][col].mul(&inv);
                for c in col..n {
                    if !a[col][c].vanishes() {
                        let d = f.mul(&a[col][c]);
                        a[r][c] = a[r][c].sub(&d);
                    }
                }
            }
        }
    }
    Ok(det)
}

/// Reduced row-echelon form and the list of pivot columns.
pub fn rref<S: ScalarField>(m: &Matrix<S>) -> (Matrix<S>, Vec<usize>) {
    let mut a = m.clone();
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..cols {
        if r == rows {
            break;
        }
        let Some((p, inv)) = find_pivot(&a, col, r) else { continue };
        a.swap(r, p);
        a[r] = a[r].iter().map(|x| x.mul(&inv)).collect();
        for i in 0..rows {
            if i != r && !a[i][col].vanishes() {
                let f = a[i][col].clone();
                for c in col..cols {
                    if !a[r][c].vanishes() {
                        let d = f.mul(&a[r][c]);
                        a[i][c] = a[i][c].sub(&d);
                    }
                }
            }
        }
        pivots.push(col);
        r += 1;
    }
    (a, pivots)
}

/// Rank of a matrix over a field.
pub fn rank<S: ScalarField>(m: &Matrix<S>) -> usize {
    rref(m).1.len()
}

/// A basis of the right null space `{x : m x = 0}`.
pub fn nullspace<S: ScalarField>(m: &Matrix<S>, proto: &S) -> Vec<Vec<S>> {
    let cols = m.first().map_or(0, Vec::len);
    let (r, pivots) = rref(m);
    (0..cols)
        .filter(|c| !pivots.contains(c))
        .map(|free| {
            let mut v = vec![proto.zero_like(); cols];
            v[free] = proto.one_like();
            for (i, &p) in pivots.iter().enumerate() {
                v[p] = r[i][free].neg();
            }
            v
        })
        .collect()
}

/// General solution of a possibly non-square system `a x = b`.
///
/// Returns a particular solution (free variables set to zero) and a null-space
/// basis, or `None` if the system is inconsistent.
pub fn solve_general<S: ScalarField>(a: &Matrix<S>, b: &[S], proto: &S) -> Option<(Vec<S>, Vec<Vec<S>>)> {
    let cols = a.first().map_or(0, Vec::len);
    let aug: Matrix<S> = a.iter().zip(b).map(|(r, x)| r.iter().cloned().chain(std::iter::once(x.clone())).collect()).collect();
    let (r, pivots) = rref(&aug);
    if pivots.last() == Some(&cols) {
        return None;
    }
    let mut x = vec![proto.zero_like(); cols];
    for (i, &p) in pivots.iter().enumerate() {
        x[p] = r[i][cols].clone();
    }
    Some((x, nullspace(a, proto)))
}

/// Convenience: a rational matrix from integer entries.
pub fn rational_matrix(rows: &[&[i64]]) -> Matrix<Rational> {
    rows.iter().map(|r| r.iter().map(|&x| Rational::from_integer(x.into())).collect()).collect()
}

#[cfg(test)]
mod tests {
    use super::super::rational::{int, rat};
    use super::*;

    #[test]
    fn inverse_roundtrip() {
        let m = rational_matrix(&[&[2, 1, 0], &[0, 0, 3], &[1, 0, 1]]);
        let inv = inverse(&m).unwrap();
        assert_eq!(mat_mul(&m, &inv), identity(3, &int(0)));
        assert_eq!(determinant(&m).unwrap(), int(3));
    }

    #[test]
    fn singular_is_reported() {
        let m = rational_matrix(&[&[1, 2], &[2, 4]]);
        assert_eq!(inverse(&m), Err(AlgebraError::Singular));
        assert_eq!(determinant(&m).unwrap(), int(0));
        assert_eq!(rank(&m), 1);
        let ns = nullspace(&m, &int(0));
        assert_eq!(ns, vec![vec![int(-2), int(1)]]);
    }

    #[test]
    fn general_solution() {
        let a = rational_matrix(&[&[1, 1, 1], &[1, -1, 0]]);
        let (x, ns) = solve_general(&a, &[int(2), int(1)], &int(0)).unwrap();
        assert_eq!(mat_vec(&a, &x), vec![int(2), int(1)]);
        assert_eq!(ns.len(), 1);
        assert!(mat_vec(&a, &ns[0]).iter().all(|v| *v == int(0)));
        let bad = rational_matrix(&[&[1, 1], &[2, 2]]);
        assert!(solve_general(&bad, &[int(1), int(3)], &int(0)).is_none());
        assert_eq!(solve(&rational_matrix(&[&[2, 0], &[0, 4]]), &[int(1), int(1)]).unwrap(), vec![rat(1, 2), rat(1, 4)]);
    }
}
