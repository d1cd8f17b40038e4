use std::ops::{Add, Index, IndexMut, Mul, Neg, Sub};

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::scalar::Real;

/// Dense square complex matrix, row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct CMatrix<T> {
    n: usize,
    data: Vec<Complex<T>>,
}

impl<T: Real> CMatrix<T> {
    pub fn zeros(n: usize) -> Self {
        Self {
            n,
            data: vec![Complex::new(T::zero(), T::zero()); n * n],
        }
    }

    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, |r, c| {
            if r == c {
                Complex::new(T::one(), T::zero())
            } else {
                czero()
            }
        })
    }

    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> Complex<T>) -> Self {
        let mut data = Vec::with_capacity(n * n);
        for r in 0..n {
            for c in 0..n {
                data.push(f(r, c));
            }
        }
        Self { n, data }
    }

    pub fn from_rows(rows: Vec<Vec<Complex<T>>>) -> Result<Self> {
        let n = rows.len();
        let mut data = Vec::with_capacity(n * n);
        for row in rows {
            if row.len() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    got: row.len(),
                });
            }
            data.extend(row);
        }
        Ok(Self { n, data })
    }

    pub fn diag(entries: &[Complex<T>]) -> Self {
        Self::from_fn(
            entries.len(),
            |r, c| if r == c { entries[r] } else { czero() },
        )
    }

    /// `i * diag(d)`: the diagonal elements of `u(n)` used throughout.
    pub fn i_diag(d: &[T]) -> Self {
        Self::from_fn(d.len(), |r, c| {
            if r == c {
                Complex::new(T::zero(), d[r])
            } else {
                czero()
            }
        })
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn as_slice(&self) -> &[Complex<T>] {
        &self.data
    }

    pub fn adjoint(&self) -> Self {
        Self::from_fn(self.n, |r, c| self[(c, r)].conj())
    }

    pub fn conj(&self) -> Self {
        Self::from_fn(self.n, |r, c| self[(r, c)].conj())
    }

    pub fn trace(&self) -> Complex<T> {
        (0..self.n).fold(czero(), |acc, i| acc + self[(i, i)])
    }

    pub fn scale(&self, s: T) -> Self {
        Self {
            n: self.n,
            data: self.data.iter().map(|z| z * s).collect(),
        }
    }

    pub fn scale_c(&self, s: Complex<T>) -> Self {
        Self {
            n: self.n,
            data: self.data.iter().map(|z| z * s).collect(),
        }
    }

    pub fn frobenius_sqr(&self) -> T {
        self.data
            .iter()
            .fold(T::zero(), |acc, z| acc + z.norm_sqr())
    }

    pub fn frobenius(&self) -> T {
        self.frobenius_sqr().sqrt()
    }

    pub fn max_abs(&self) -> T {
        self.data.iter().fold(T::zero(), |acc, z| acc.max(z.norm()))
    }

    /// `A B A*`.
    pub fn conjugate(&self, b: &Self) -> Self {
        &(self * b) * &self.adjoint()
    }

    pub fn commutator(&self, other: &Self) -> Self {
        &(self * other) - &(other * self)
    }

    /// Determinant by Gaussian elimination with partial pivoting.
    pub fn det(&self) -> Complex<T> {
        let n = self.n;
        let mut m = self.data.clone();
        let mut det = Complex::new(T::one(), T::zero());
        for col in 0..n {
            let pivot = (col..n)
                .max_by(|&a, &b| {
                    m[a * n + col]
                        .norm()
                        .partial_cmp(&m[b * n + col].norm())
                        .unwrap()
                })
                .unwrap();
            if m[pivot * n + col].norm() == T::zero() {
                return czero();
            }
            if pivot != col {
                for c in 0..n {
                    m.swap(pivot * n + c, col * n + c);
                }
                det = -det;
            }
            let p = m[col * n + col];
            det = det * p;
            for r in col + 1..n {
                let f = m[r * n + col] / p;
                for c in col..n {
                    let v = m[col * n + c];
                    m[r * n + c] = m[r * n + c] - f * v;
                }
            }
        }
        det
    }

    /// `|A* A - I|_F`.
    pub fn unitarity_deviation(&self) -> T {
        (&(&self.adjoint() * self) - &Self::identity(self.n)).frobenius()
    }

    /// Largest of the unitarity and `|det - 1|` deviations.
    pub fn special_unitary_deviation(&self) -> T {
        self.unitarity_deviation()
            .max((self.det() - Complex::new(T::one(), T::zero())).norm())
    }

    pub fn is_special_unitary(&self) -> bool {
        self.special_unitary_deviation() <= T::group_tol()
    }

    /// Errors unless the matrix is in `SU(n)` within the group tolerance.
    pub fn check_special_unitary(&self) -> Result<()> {
        let dev = self.special_unitary_deviation();
        if dev <= T::group_tol() {
            Ok(())
        } else {
            Err(Error::NotSpecialUnitary(dev.to_f64().unwrap_or(f64::NAN)))
        }
    }

    /// Upper-left `k x k` block.
    pub fn leading_block(&self, k: usize) -> Self {
        Self::from_fn(k, |r, c| self[(r, c)])
    }

    /// Block diagonal `diag(self, other)`.
    pub fn block_diag(&self, other: &Self) -> Self {
        let n = self.n + other.n;
        Self::from_fn(n, |r, c| {
            if r < self.n && c < self.n {
                self[(r, c)]
            } else if r >= self.n && c >= self.n {
                other[(r - self.n, c - self.n)]
            } else {
                czero()
            }
        })
    }

    pub fn column(&self, c: usize) -> Vec<Complex<T>> {
        (0..self.n).map(|r| self[(r, c)]).collect()
    }

    pub fn mul_vec(&self, v: &[Complex<T>]) -> Vec<Complex<T>> {
        (0..self.n)
            .map(|r| (0..self.n).fold(czero(), |acc, c| acc + self[(r, c)] * v[c]))
            .collect()
    }

    /// `-Re tr(A B)`.
    pub fn neg_re_trace_product(&self, other: &Self) -> T {
        let n = self.n;
        let mut acc = T::zero();
        for r in 0..n {
            for c in 0..n {
                let a = self.data[r * n + c];
                let b = other.data[c * n + r];
                acc = acc + (a.re * b.re - a.im * b.im);
            }
        }
        -acc
    }
}

pub(crate) fn czero<T: Real>() -> Complex<T> {
    Complex::new(T::zero(), T::zero())
}

impl<T> Index<(usize, usize)> for CMatrix<T> {
    type Output = Complex<T>;
    fn index(&self, (r, c): (usize, usize)) -> &Complex<T> {
        &self.data[r * self.n + c]
    }
}

impl<T> IndexMut<(usize, usize)> for CMatrix<T> {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut Complex<T> {
        &mut self.data[r * self.n + c]
    }
}

impl<T: Real> Mul for &CMatrix<T> {
    type Output = CMatrix<T>;
    fn mul(self, o: &CMatrix<T>) -> CMatrix<T> {
        assert_eq!(self.n, o.n, "matrix dimension mismatch");
        let n = self.n;
        let mut out = CMatrix::zeros(n);
        for r in 0..n {
            for k in 0..n {
                let a = self.data[r * n + k];
                if a.re == T::zero() && a.im == T::zero() {
                    continue;
                }
                for c in 0..n {
                    out.data[r * n + c] = out.data[r * n + c] + a * o.data[k * n + c];
                }
            }
        }
        out
    }
}

impl<T: Real> Add for &CMatrix<T> {
    type Output = CMatrix<T>;
    fn add(self, o: &CMatrix<T>) -> CMatrix<T> {
        assert_eq!(self.n, o.n, "matrix dimension mismatch");
        CMatrix {
            n: self.n,
            data: self.data.iter().zip(&o.data).map(|(a, b)| a + b).collect(),
        }
    }
}

impl<T: Real> Sub for &CMatrix<T> {
    type Output = CMatrix<T>;
    fn sub(self, o: &CMatrix<T>) -> CMatrix<T> {
        assert_eq!(self.n, o.n, "matrix dimension mismatch");
        CMatrix {
            n: self.n,
            data: self.data.iter().zip(&o.data).map(|(a, b)| a - b).collect(),
        }
    }
}

impl<T: Real> Neg for &CMatrix<T> {
    type Output = CMatrix<T>;
    fn neg(self) -> CMatrix<T> {
        CMatrix {
            n: self.n,
            data: self.data.iter().map(|a| -a).collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    type C = Complex<f64>;

    #[test]
    fn det_of_permutation_and_diagonal() {
        let one = C::new(1.0, 0.0);
        let z = C::new(0.0, 0.0);
        // cyclic permutation e2, e3, e1 has det +1
        let p =
            CMatrix::from_rows(vec![vec![z, one, z], vec![z, z, one], vec![one, z, z]]).unwrap();
        assert!((p.det() - one).norm() < 1e-15);
        let d = CMatrix::diag(&[C::new(0.0, 1.0), C::new(0.0, 1.0), C::new(-1.0, 0.0)]);
        assert!((d.det() - one).norm() < 1e-15);
        assert!(d.is_special_unitary());
    }

    #[test]
    fn trace_product_form() {
        let x = CMatrix::<f64>::i_diag(&[1.0, -1.0, 0.0]);
        assert_eq!(x.neg_re_trace_product(&x), 2.0);
    }

    #[test]
    fn from_rows_rejects_ragged() {
        let z = C::new(0.0, 0.0);
        assert!(CMatrix::from_rows(vec![vec![z, z], vec![z]]).is_err());
    }
}
