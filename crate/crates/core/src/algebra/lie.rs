use num_complex::Complex;

use super::matrix::CMatrix;
use super::quaternion::Quaternion;
use crate::error::{Error, Result};
use crate::scalar::Real;

/// Element of `su(n)` (anti-Hermitian traceless matrix) or of `Im H ⊕ Im H`.
#[derive(Debug, Clone, PartialEq)]
pub enum LieVector<T> {
    Matrix(CMatrix<T>),
    QuatPair(Quaternion<T>, Quaternion<T>),
}

impl<T: Real> LieVector<T> {
    pub fn quat_pair(v: Quaternion<T>, w: Quaternion<T>) -> Self {
        LieVector::QuatPair(v, w)
    }

    /// `i * diag(d)`.
    pub fn i_diag(d: &[T]) -> Self {
        LieVector::Matrix(CMatrix::i_diag(d))
    }

    pub fn zero_like(&self) -> Self {
        match self {
            LieVector::Matrix(m) => LieVector::Matrix(CMatrix::zeros(m.dim())),
            LieVector::QuatPair(..) => LieVector::QuatPair(Quaternion::zero(), Quaternion::zero()),
        }
    }

    /// Matrix dimension, or 0 for the quaternion-pair form.
    pub fn dim(&self) -> usize {
        match self {
            LieVector::Matrix(m) => m.dim(),
            LieVector::QuatPair(..) => 0,
        }
    }

    pub fn as_matrix(&self) -> Option<&CMatrix<T>> {
        match self {
            LieVector::Matrix(m) => Some(m),
            LieVector::QuatPair(..) => None,
        }
    }

    pub fn as_quat_pair(&self) -> Option<(Quaternion<T>, Quaternion<T>)> {
        match self {
            LieVector::QuatPair(v, w) => Some((*v, *w)),
            LieVector::Matrix(_) => None,
        }
    }

    fn check_compatible(&self, other: &Self) -> Result<()> {
        match (self, other) {
            (LieVector::Matrix(a), LieVector::Matrix(b)) if a.dim() != b.dim() => {
                Err(Error::DimensionMismatch {
                    expected: a.dim(),
                    got: b.dim(),
                })
            }
            (LieVector::Matrix(_), LieVector::Matrix(_)) => Ok(()),
            (LieVector::QuatPair(..), LieVector::QuatPair(..)) => Ok(()),
            _ => Err(Error::RepresentationMismatch),
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        Ok(match (self, other) {
            (LieVector::Matrix(a), LieVector::Matrix(b)) => LieVector::Matrix(a + b),
            (LieVector::QuatPair(a, b), LieVector::QuatPair(c, d)) => {
                LieVector::QuatPair(*a + *c, *b + *d)
            }
            _ => unreachable!(),
        })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.scale(-T::one()))
    }

    pub fn scale(&self, s: T) -> Self {
        match self {
            LieVector::Matrix(a) => LieVector::Matrix(a.scale(s)),
            LieVector::QuatPair(a, b) => LieVector::QuatPair(a.scale(s), b.scale(s)),
        }
    }

    /// `a * self + b * other`.
    pub fn lin_comb(&self, a: T, other: &Self, b: T) -> Result<Self> {
        self.scale(a).add(&other.scale(b))
    }

    /// `[X, Y]`; componentwise for quaternion pairs.
    pub fn bracket(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        Ok(match (self, other) {
            (LieVector::Matrix(a), LieVector::Matrix(b)) => LieVector::Matrix(a.commutator(b)),
            (LieVector::QuatPair(a, b), LieVector::QuatPair(c, d)) => {
                LieVector::QuatPair(*a * *c - *c * *a, *b * *d - *d * *b)
            }
            _ => unreachable!(),
        })
    }

    /// Bi-invariant inner product: `-Re tr(XY)` for matrices, the Euclidean
    /// product of coefficients for quaternion pairs.
    pub fn inner0(&self, other: &Self) -> Result<T> {
        self.check_compatible(other)?;
        Ok(match (self, other) {
            (LieVector::Matrix(a), LieVector::Matrix(b)) => a.neg_re_trace_product(b),
            (LieVector::QuatPair(a, b), LieVector::QuatPair(c, d)) => a.dot(c) + b.dot(d),
            _ => unreachable!(),
        })
    }

    pub fn norm_sqr(&self) -> T {
        match self {
            LieVector::Matrix(a) => a.frobenius_sqr(),
            LieVector::QuatPair(a, b) => a.norm_sqr() + b.norm_sqr(),
        }
    }

    /// Norm of `inner0` (the Frobenius norm for anti-Hermitian matrices).
    pub fn norm(&self) -> T {
        self.norm_sqr().sqrt()
    }

    /// `Ad_g X = g X g*` for a unitary `g`.
    pub fn ad(&self, g: &CMatrix<T>) -> Result<Self> {
        match self {
            LieVector::Matrix(a) if a.dim() == g.dim() => Ok(LieVector::Matrix(g.conjugate(a))),
            LieVector::Matrix(a) => Err(Error::DimensionMismatch {
                expected: a.dim(),
                got: g.dim(),
            }),
            LieVector::QuatPair(..) => Err(Error::RepresentationMismatch),
        }
    }

    /// Deviation from `X* = -X, tr X = 0` (zero for quaternion pairs with zero real parts).
    pub fn algebra_deviation(&self) -> T {
        match self {
            LieVector::Matrix(a) => {
                let herm = (a + &a.adjoint()).frobenius();
                herm.max(a.trace().norm())
            }
            LieVector::QuatPair(a, b) => a.w.abs().max(b.w.abs()),
        }
    }

    /// Orthonormal real basis of the ambient Lie algebra (w.r.t. `inner0`).
    pub fn basis_like(&self) -> Vec<Self> {
        match self {
            LieVector::Matrix(a) => su_basis(a.dim()),
            LieVector::QuatPair(..) => quat_pair_basis(),
        }
    }

    /// Coordinates with respect to [`LieVector::basis_like`].
    pub fn coordinates(&self) -> Vec<T> {
        self.basis_like()
            .iter()
            .map(|b| self.inner0(b).expect("same representation"))
            .collect()
    }

    pub fn from_coordinates(template: &Self, coords: &[T]) -> Self {
        let basis = template.basis_like();
        let mut acc = template.zero_like();
        for (b, &c) in basis.iter().zip(coords) {
            acc = acc.add(&b.scale(c)).expect("same representation");
        }
        acc
    }
}

/// Orthonormal basis of `su(n)` under `-Re tr(XY)`.
pub fn su_basis<T: Real>(n: usize) -> Vec<LieVector<T>> {
    let mut out = Vec::with_capacity(n * n - 1);
    let s = T::one() / T::lit(2.0).sqrt();
    for r in 0..n {
        for c in r + 1..n {
            let mut a = CMatrix::zeros(n);
            a[(r, c)] = Complex::new(s, T::zero());
            a[(c, r)] = Complex::new(-s, T::zero());
            out.push(LieVector::Matrix(a));
            let mut b = CMatrix::zeros(n);
            b[(r, c)] = Complex::new(T::zero(), s);
            b[(c, r)] = Complex::new(T::zero(), s);
            out.push(LieVector::Matrix(b));
        }
    }
    for m in 1..n {
        let mf = T::from_usize(m).unwrap();
        let norm = (mf * (mf + T::one())).sqrt();
        let mut d = vec![T::zero(); n];
        for e in d.iter_mut().take(m) {
            *e = T::one() / norm;
        }
        d[m] = -mf / norm;
        out.push(LieVector::i_diag(&d));
    }
    out
}

fn quat_pair_basis<T: Real>() -> Vec<LieVector<T>> {
    let z = Quaternion::zero();
    let units = [Quaternion::i(), Quaternion::j(), Quaternion::k()];
    let mut out = Vec::with_capacity(6);
    for u in units {
        out.push(LieVector::QuatPair(u, z));
    }
    for u in units {
        out.push(LieVector::QuatPair(z, u));
    }
    out
}

/// Free function form of [`LieVector::bracket`].
pub fn bracket<T: Real>(x: &LieVector<T>, y: &LieVector<T>) -> Result<LieVector<T>> {
    x.bracket(y)
}

/// Free function form of [`LieVector::inner0`].
pub fn inner0<T: Real>(x: &LieVector<T>, y: &LieVector<T>) -> Result<T> {
    x.inner0(y)
}

#[cfg(test)]
mod tests {
    use super::*;

    type L = LieVector<f64>;

    #[test]
    fn bracket_examples() {
        let x = L::i_diag(&[1.0, -1.0, 0.0]);
        let y = L::i_diag(&[0.0, 1.0, -1.0]);
        assert!(x.bracket(&x).unwrap().norm() == 0.0);
        assert!(x.bracket(&y).unwrap().norm() == 0.0);

        let y1 = L::i_diag(&[-2.0, 1.0, 1.0]);
        let mut e = CMatrix::zeros(3);
        e[(0, 1)] = Complex::new(1.0, 0.0);
        e[(1, 0)] = Complex::new(-1.0, 0.0);
        let b = y1.bracket(&L::Matrix(e)).unwrap();
        let m = b.as_matrix().unwrap();
        // [i diag(-2,1,1), E12 - E21] has entries -3i at (1,2) and (2,1)
        for r in 0..3 {
            for c in 0..3 {
                let expect = if (r, c) == (0, 1) || (r, c) == (1, 0) {
                    3.0
                } else {
                    0.0
                };
                assert!((m[(r, c)].norm() - expect).abs() < 1e-15, "({r},{c})");
            }
        }
    }

    #[test]
    fn inner0_example() {
        let x = L::i_diag(&[1.0, -1.0, 0.0]);
        assert_eq!(x.inner0(&x).unwrap(), 2.0);
    }

    #[test]
    fn mismatches_are_errors() {
        let a = L::i_diag(&[1.0, -1.0, 0.0]);
        let b = L::i_diag(&[1.0, -1.0, 0.0, 0.0]);
        assert!(matches!(
            a.bracket(&b),
            Err(Error::DimensionMismatch { .. })
        ));
        let q = L::quat_pair(Quaternion::i(), Quaternion::j());
        assert!(matches!(a.inner0(&q), Err(Error::RepresentationMismatch)));
    }

    #[test]
    fn basis_is_orthonormal() {
        for n in 2..=5 {
            let basis = su_basis::<f64>(n);
            assert_eq!(basis.len(), n * n - 1);
            for (i, a) in basis.iter().enumerate() {
                assert!(a.algebra_deviation() < 1e-15);
                for (j, b) in basis.iter().enumerate() {
                    let g = a.inner0(b).unwrap();
                    let expect = if i == j { 1.0 } else { 0.0 };
                    assert!((g - expect).abs() < 1e-14);
                }
            }
        }
    }
}
