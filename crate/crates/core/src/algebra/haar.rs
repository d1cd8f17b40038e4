use num_complex::Complex;
use rand::Rng;
use rand_distr::StandardNormal;

use super::matrix::CMatrix;
use crate::error::{Error, Result};
use crate::scalar::Real;

pub(crate) fn gaussian_c<T: Real, R: Rng + ?Sized>(rng: &mut R) -> Complex<T> {
    let s = std::f64::consts::FRAC_1_SQRT_2;
    Complex::new(
        T::lit(rng.sample::<f64, _>(StandardNormal) * s),
        T::lit(rng.sample::<f64, _>(StandardNormal) * s),
    )
}

/// Hermitian inner product `<a, b> = sum conj(a_i) b_i`.
pub fn hdot<T: Real>(a: &[Complex<T>], b: &[Complex<T>]) -> Complex<T> {
    a.iter()
        .zip(b)
        .fold(Complex::new(T::zero(), T::zero()), |acc, (x, y)| {
            acc + x.conj() * y
        })
}

pub fn vnorm<T: Real>(a: &[Complex<T>]) -> T {
    a.iter().fold(T::zero(), |acc, z| acc + z.norm_sqr()).sqrt()
}

/// Orthogonalize `v` against every vector of `frame` (assumed orthonormal), then normalize.
/// Returns `None` if nothing is left.
pub fn orthonormalize_against<T: Real>(
    mut v: Vec<Complex<T>>,
    frame: &[Vec<Complex<T>>],
) -> Option<Vec<Complex<T>>> {
    let start = vnorm(&v);
    // two passes of modified Gram-Schmidt
    for _ in 0..2 {
        for f in frame {
            let c = hdot(f, &v);
            for (x, y) in v.iter_mut().zip(f) {
                *x = *x - c * y;
            }
        }
    }
    let n = vnorm(&v);
    if n <= start * T::lit(1e-8) || n == T::zero() {
        return None;
    }
    Some(v.into_iter().map(|z| z / n).collect())
}

/// Haar-distributed element of `U(n)`: Gram-Schmidt on a complex Gaussian
/// matrix (QR with a positive real diagonal of R).
pub fn haar_u<T: Real, R: Rng + ?Sized>(n: usize, rng: &mut R) -> CMatrix<T> {
    let mut cols: Vec<Vec<Complex<T>>> = Vec::with_capacity(n);
    while cols.len() < n {
        let v: Vec<Complex<T>> = (0..n).map(|_| gaussian_c(rng)).collect();
        if let Some(u) = orthonormalize_against(v, &cols) {
            cols.push(u);
        }
    }
    CMatrix::from_fn(n, |r, c| cols[c][r])
}

/// Haar-distributed element of `SU(n)`, `n` in `2..=5`: a Haar unitary with its
/// determinant phase divided out.
pub fn haar_unitary<T: Real, R: Rng + ?Sized>(n: usize, rng: &mut R) -> Result<CMatrix<T>> {
    if !(2..=5).contains(&n) {
        return Err(Error::UnsupportedDimension(n));
    }
    let u = haar_u(n, rng);
    Ok(project_det_phase(&u))
}

/// Multiply a unitary by `det^(-1/n)` so the determinant becomes 1.
pub fn project_det_phase<T: Real>(u: &CMatrix<T>) -> CMatrix<T> {
    let det = u.det();
    let n = T::from_usize(u.dim()).unwrap();
    let phase = Complex::from_polar(T::one(), -det.arg() / n);
    u.scale_c(phase)
}

/// Uniform unit vector in `C^n`.
pub fn random_unit_vector<T: Real, R: Rng + ?Sized>(n: usize, rng: &mut R) -> Vec<Complex<T>> {
    loop {
        let v: Vec<Complex<T>> = (0..n).map(|_| gaussian_c(rng)).collect();
        let norm = vnorm(&v);
        if norm > T::lit(1e-6) {
            return v.into_iter().map(|z| z / norm).collect();
        }
    }
}

/// Haar-like element of `SU(n)` conditioned on the entry `(row, col)` vanishing:
/// the column is drawn uniformly from the unit sphere of the coordinate
/// hyperplane, the rest is completed at random.
pub fn special_unitary_with_zero<T: Real, R: Rng + ?Sized>(
    n: usize,
    row: usize,
    col: usize,
    rng: &mut R,
) -> Result<CMatrix<T>> {
    if !(2..=5).contains(&n) {
        return Err(Error::UnsupportedDimension(n));
    }
    let mut first: Vec<Complex<T>> = random_unit_vector(n, rng);
    first[row] = Complex::new(T::zero(), T::zero());
    let norm = vnorm(&first);
    let mut cols = vec![first.into_iter().map(|z| z / norm).collect::<Vec<_>>()];
    while cols.len() < n {
        if let Some(v) = orthonormalize_against(random_unit_vector(n, rng), &cols) {
            cols.push(v);
        }
    }
    // move the constrained column into place; fix det on another column
    let constrained = cols.remove(0);
    cols.insert(col, constrained);
    let other = if col == 0 { 1 } else { 0 };
    let det = CMatrix::from_fn(n, |r, c| cols[c][r]).det();
    cols[other].iter_mut().for_each(|z| *z = *z * det.conj());
    Ok(CMatrix::from_fn(n, |r, c| cols[c][r]))
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn special_unitary_output() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for n in 2..=5 {
            for _ in 0..50 {
                let a: CMatrix<f64> = haar_unitary(n, &mut rng).unwrap();
                assert!(a.unitarity_deviation() <= 1e-10);
                assert!((a.det() - Complex::new(1.0, 0.0)).norm() <= 1e-10);
            }
        }
    }

    #[test]
    fn conditioned_zero_entry() {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        for n in 2..=5 {
            let a: CMatrix<f64> = special_unitary_with_zero(n, n - 1, 0, &mut rng).unwrap();
            assert!(a.is_special_unitary());
            assert!(a[(n - 1, 0)].norm() == 0.0);
        }
    }

    #[test]
    fn unsupported_dimension() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        assert!(matches!(
            haar_unitary::<f64, _>(6, &mut rng),
            Err(Error::UnsupportedDimension(6))
        ));
        assert!(haar_unitary::<f64, _>(1, &mut rng).is_err());
    }

    #[test]
    fn f32_samples_are_special_unitary() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let a: CMatrix<f32> = haar_unitary(4, &mut rng).unwrap();
        assert!(a.is_special_unitary());
    }
}
