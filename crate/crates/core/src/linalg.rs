//! Small dense eigen and null-space routines (Jacobi methods).
//!
//! The matrices handled here are at most a few dozen rows wide, so cyclic
//! Jacobi is accurate and fast enough.

use num_complex::Complex;

use crate::algebra::haar::{hdot, vnorm};
use crate::algebra::CMatrix;
use crate::scalar::Real;

/// Eigen-decomposition of a real symmetric matrix. Eigenvalues ascending,
/// eigenvectors returned as the matching list of unit vectors.
pub fn symmetric_eigen<T: Real>(mut a: Vec<Vec<T>>) -> (Vec<T>, Vec<Vec<T>>) {
    let n = a.len();
    let mut v: Vec<Vec<T>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| if i == j { T::one() } else { T::zero() })
                .collect()
        })
        .collect();
    for _sweep in 0..100 {
        let off: T = (0..n)
            .flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j)))
            .fold(T::zero(), |acc, (i, j)| acc + a[i][j] * a[i][j]);
        let scale: T = (0..n).fold(T::zero(), |acc, i| acc + a[i][i] * a[i][i]);
        if off <= T::epsilon() * T::epsilon() * (scale + off) || off == T::zero() {
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                let apq = a[p][q];
                if apq == T::zero() {
                    continue;
                }
                let theta = (a[q][q] - a[p][p]) / (T::lit(2.0) * apq);
                let t = theta.signum() / (theta.abs() + (theta * theta + T::one()).sqrt());
                let c = T::one() / (t * t + T::one()).sqrt();
                let s = t * c;
                for k in 0..n {
                    let akp = a[k][p];
                    let akq = a[k][q];
                    a[k][p] = c * akp - s * akq;
                    a[k][q] = s * akp + c * akq;
                }
                for k in 0..n {
                    let apk = a[p][k];
                    let aqk = a[q][k];
                    a[p][k] = c * apk - s * aqk;
                    a[q][k] = s * apk + c * aqk;
                }
                for row in v.iter_mut() {
                    let vkp = row[p];
                    let vkq = row[q];
                    row[p] = c * vkp - s * vkq;
                    row[q] = s * vkp + c * vkq;
                }
            }
        }
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a[i][i].partial_cmp(&a[j][j]).unwrap());
    let values = order.iter().map(|&i| a[i][i]).collect();
    let vectors = order
        .iter()
        .map(|&i| (0..n).map(|k| v[k][i]).collect())
        .collect();
    (values, vectors)
}

/// Eigen-decomposition of a Hermitian matrix via its real `2n x 2n` embedding.
/// Eigenvalues ascending with orthonormal eigenvectors.
pub fn hermitian_eigen<T: Real>(h: &CMatrix<T>) -> (Vec<T>, Vec<Vec<Complex<T>>>) {
    let n = h.dim();
    let mut real = vec![vec![T::zero(); 2 * n]; 2 * n];
    for r in 0..n {
        for c in 0..n {
            // symmetrize against rounding in the input
            let z = (h[(r, c)] + h[(c, r)].conj()) * T::lit(0.5);
            real[r][c] = z.re;
            real[r + n][c + n] = z.re;
            real[r][c + n] = -z.im;
            real[r + n][c] = z.im;
        }
    }
    let (vals, vecs) = symmetric_eigen(real);
    let mut out_vals = Vec::with_capacity(n);
    let mut out_vecs: Vec<Vec<Complex<T>>> = Vec::with_capacity(n);
    for (lam, v) in vals.into_iter().zip(vecs) {
        if out_vecs.len() == n {
            break;
        }
        let mut cv: Vec<Complex<T>> = (0..n).map(|k| Complex::new(v[k], v[k + n])).collect();
        for _ in 0..2 {
            for f in &out_vecs {
                let proj = hdot(f, &cv);
                for (x, y) in cv.iter_mut().zip(f) {
                    *x = *x - proj * y;
                }
            }
        }
        let norm = vnorm(&cv);
        if norm > T::lit(1e-6) {
            out_vals.push(lam);
            out_vecs.push(cv.into_iter().map(|z| z / norm).collect());
        }
    }
    (out_vals, out_vecs)
}

/// Singular values of a real `m x ncols` matrix given by rows, with the
/// right singular vectors (one-sided Jacobi). Returned unsorted, paired.
pub fn singular_values<T: Real>(rows: &[Vec<T>], ncols: usize) -> (Vec<T>, Vec<Vec<T>>) {
    let m = rows.len();
    // column-major working copy
    let mut cols: Vec<Vec<T>> = (0..ncols)
        .map(|c| (0..m).map(|r| rows[r][c]).collect())
        .collect();
    let mut v: Vec<Vec<T>> = (0..ncols)
        .map(|i| {
            (0..ncols)
                .map(|j| if i == j { T::one() } else { T::zero() })
                .collect()
        })
        .collect();
    let dot = |a: &[T], b: &[T]| a.iter().zip(b).fold(T::zero(), |acc, (x, y)| acc + *x * *y);
    for _sweep in 0..80 {
        let mut rotated = false;
        for p in 0..ncols {
            for q in p + 1..ncols {
                let alpha = dot(&cols[p], &cols[p]);
                let beta = dot(&cols[q], &cols[q]);
                let gamma = dot(&cols[p], &cols[q]);
                if gamma.abs() <= T::epsilon() * (alpha * beta).sqrt() || gamma == T::zero() {
                    continue;
                }
                rotated = true;
                let zeta = (beta - alpha) / (T::lit(2.0) * gamma);
                let t = zeta.signum() / (zeta.abs() + (T::one() + zeta * zeta).sqrt());
                let c = T::one() / (T::one() + t * t).sqrt();
                let s = c * t;
                for k in 0..m {
                    let a = cols[p][k];
                    let b = cols[q][k];
                    cols[p][k] = c * a - s * b;
                    cols[q][k] = s * a + c * b;
                }
                for k in 0..ncols {
                    let a = v[p][k];
                    let b = v[q][k];
                    v[p][k] = c * a - s * b;
                    v[q][k] = s * a + c * b;
                }
            }
        }
        if !rotated {
            break;
        }
    }
    let sigmas = cols.iter().map(|c| dot(c, c).sqrt()).collect();
    (sigmas, v)
}

/// Orthonormal basis of the null space of a real matrix given by rows. A
/// singular value counts as zero when it is at most `rel_tol` times the
/// largest one (or when the matrix vanishes).
pub fn null_space<T: Real>(rows: &[Vec<T>], ncols: usize, rel_tol: T) -> Vec<Vec<T>> {
    if rows.is_empty() {
        return (0..ncols)
            .map(|i| {
                (0..ncols)
                    .map(|j| if i == j { T::one() } else { T::zero() })
                    .collect()
            })
            .collect();
    }
    let (sig, v) = singular_values(rows, ncols);
    let smax = sig.iter().fold(T::zero(), |a, &b| a.max(b));
    let cut = if smax == T::zero() {
        T::one()
    } else {
        smax * rel_tol
    };
    sig.iter()
        .zip(v)
        .filter(|(s, _)| **s <= cut)
        .map(|(_, v)| v)
        .collect()
}

/// Numerical rank with the same cut as [`null_space`].
pub fn rank<T: Real>(rows: &[Vec<T>], ncols: usize, rel_tol: T) -> usize {
    ncols - null_space(rows, ncols, rel_tol).len()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn symmetric_eigen_2x2() {
        let (vals, vecs) = symmetric_eigen(vec![vec![2.0f64, 1.0], vec![1.0, 2.0]]);
        assert!((vals[0] - 1.0).abs() < 1e-14 && (vals[1] - 3.0).abs() < 1e-14);
        assert!((vecs[0][0].abs() - vecs[0][1].abs()).abs() < 1e-14);
    }

    #[test]
    fn hermitian_eigen_reconstructs() {
        let c = |a: f64, b: f64| Complex::new(a, b);
        let h = CMatrix::from_rows(vec![
            vec![c(2.0, 0.0), c(0.0, 1.0), c(1.0, -1.0)],
            vec![c(0.0, -1.0), c(-1.0, 0.0), c(0.5, 0.0)],
            vec![c(1.0, 1.0), c(0.5, 0.0), c(0.3, 0.0)],
        ])
        .unwrap();
        let (vals, vecs) = hermitian_eigen(&h);
        assert_eq!(vals.len(), 3);
        for (lam, v) in vals.iter().zip(&vecs) {
            let hv = h.mul_vec(v);
            for (a, b) in hv.iter().zip(v) {
                assert!((a - b * lam).norm() < 1e-12);
            }
        }
        let tr: f64 = vals.iter().sum();
        assert!((tr - 1.3).abs() < 1e-12);
    }

    #[test]
    fn hermitian_eigen_degenerate() {
        let h = CMatrix::<f64>::diag(&[Complex::new(1.0, 0.0); 4]);
        let (vals, vecs) = hermitian_eigen(&h);
        assert_eq!(vals.len(), 4);
        for i in 0..4 {
            for j in 0..4 {
                let g = hdot(&vecs[i], &vecs[j]).norm();
                assert!((g - if i == j { 1.0 } else { 0.0 }).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn null_space_dims() {
        let rows = vec![vec![1.0, 0.0, 0.0], vec![2.0, 0.0, 0.0]];
        assert_eq!(null_space(&rows, 3, 1e-9).len(), 2);
        let rows = vec![
            vec![1.0, 1.0, 0.0],
            vec![0.0, 1.0, 1.0],
            vec![1.0, 2.0, 1.0],
        ];
        let ns = null_space(&rows, 3, 1e-9);
        assert_eq!(ns.len(), 1);
        for r in &rows {
            let d: f64 = r.iter().zip(&ns[0]).map(|(a, b)| a * b).sum();
            assert!(d.abs() < 1e-12);
        }
        assert_eq!(rank(&[vec![0.0, 0.0]], 2, 1e-9), 0);
    }
}
