use std::ops::{Add, Mul, Neg, Sub};

use rand::Rng;
use rand_distr::StandardNormal;

use crate::error::{Error, Result};
use crate::scalar::Real;

/// `w + x i + y j + z k`.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Quaternion<T> {
    pub w: T,
    pub x: T,
    pub y: T,
    pub z: T,
}

impl<T: Real> Quaternion<T> {
    pub fn new(w: T, x: T, y: T, z: T) -> Self {
        Self { w, x, y, z }
    }

    pub fn zero() -> Self {
        Self::new(T::zero(), T::zero(), T::zero(), T::zero())
    }

    pub fn one() -> Self {
        Self::new(T::one(), T::zero(), T::zero(), T::zero())
    }

    pub fn i() -> Self {
        Self::new(T::zero(), T::one(), T::zero(), T::zero())
    }

    pub fn j() -> Self {
        Self::new(T::zero(), T::zero(), T::one(), T::zero())
    }

    pub fn k() -> Self {
        Self::new(T::zero(), T::zero(), T::zero(), T::one())
    }

    /// Pure imaginary quaternion `x i + y j + z k`.
    pub fn imag(x: T, y: T, z: T) -> Self {
        Self::new(T::zero(), x, y, z)
    }

    /// `a + b j` with `a, b` complex, i.e. the splitting `H = C + C j`.
    pub fn from_complex_pair(a: num_complex::Complex<T>, b: num_complex::Complex<T>) -> Self {
        // (a0 + a1 i) + (b0 + b1 i) j = a0 + a1 i + b0 j + b1 k
        Self::new(a.re, a.im, b.re, b.im)
    }

    /// Unit complex number `e^{i theta}` as a quaternion.
    pub fn circle(theta: T) -> Self {
        Self::new(theta.cos(), theta.sin(), T::zero(), T::zero())
    }

    pub fn conj(&self) -> Self {
        Self::new(self.w, -self.x, -self.y, -self.z)
    }

    pub fn norm_sqr(&self) -> T {
        self.w * self.w + self.x * self.x + self.y * self.y + self.z * self.z
    }

    pub fn norm(&self) -> T {
        self.norm_sqr().sqrt()
    }

    pub fn scale(&self, s: T) -> Self {
        Self::new(self.w * s, self.x * s, self.y * s, self.z * s)
    }

    pub fn normalized(&self) -> Self {
        self.scale(T::one() / self.norm())
    }

    /// Euclidean inner product of the coefficient vectors.
    pub fn dot(&self, other: &Self) -> T {
        self.w * other.w + self.x * other.x + self.y * other.y + self.z * other.z
    }

    /// Imaginary part as a vector in R^3.
    pub fn vector(&self) -> [T; 3] {
        [self.x, self.y, self.z]
    }

    pub fn from_vector(v: [T; 3]) -> Self {
        Self::imag(v[0], v[1], v[2])
    }

    pub fn is_unit(&self) -> bool {
        (self.norm_sqr() - T::one()).abs() <= T::lit(1e-12).max(T::epsilon() * T::lit(16.0))
    }

    pub fn is_imaginary(&self) -> bool {
        self.w == T::zero()
    }

    pub fn powi(&self, n: i64) -> Self {
        let base = if n < 0 {
            self.conj().scale(T::one() / self.norm_sqr())
        } else {
            *self
        };
        let mut acc = Self::one();
        let mut b = base;
        let mut e = n.unsigned_abs();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * b;
            }
            b = b * b;
            e >>= 1;
        }
        acc
    }

    /// Rotation matrix of `v -> q v q^-1` for unit `q`, standard formula.
    pub fn rotation_matrix(&self) -> [[T; 3]; 3] {
        let two = T::lit(2.0);
        let (w, x, y, z) = (self.w, self.x, self.y, self.z);
        [
            [
                T::one() - two * (y * y + z * z),
                two * (x * y - w * z),
                two * (x * z + w * y),
            ],
            [
                two * (x * y + w * z),
                T::one() - two * (x * x + z * z),
                two * (y * z - w * x),
            ],
            [
                two * (x * z - w * y),
                two * (y * z + w * x),
                T::one() - two * (x * x + y * y),
            ],
        ]
    }

    /// Uniform sample on `S^3`.
    pub fn random_unit<R: Rng + ?Sized>(rng: &mut R) -> Self {
        loop {
            let q = Self::new(gauss(rng), gauss(rng), gauss(rng), gauss(rng));
            let n = q.norm();
            if n > T::lit(1e-6) {
                return q.scale(T::one() / n);
            }
        }
    }

    /// Uniform sample on the unit sphere of `Im H`.
    pub fn random_unit_imag<R: Rng + ?Sized>(rng: &mut R) -> Self {
        loop {
            let q = Self::imag(gauss(rng), gauss(rng), gauss(rng));
            let n = q.norm();
            if n > T::lit(1e-6) {
                return q.scale(T::one() / n);
            }
        }
    }
}

fn gauss<T: Real, R: Rng + ?Sized>(rng: &mut R) -> T {
    T::lit(rng.sample::<f64, _>(StandardNormal))
}

/// `q v q̄`: the adjoint action of a unit quaternion on `Im H`.
pub fn quat_ad<T: Real>(q: &Quaternion<T>, v: &Quaternion<T>) -> Result<Quaternion<T>> {
    if !q.is_unit() {
        return Err(Error::NotUnitQuaternion(
            q.norm_sqr().to_f64().unwrap_or(f64::NAN),
        ));
    }
    if !v.is_imaginary() {
        return Err(Error::NotImaginary(v.w.to_f64().unwrap_or(f64::NAN)));
    }
    let mut r = *q * *v * q.conj();
    // q v q̄ is exactly imaginary; drop the rounding residue.
    r.w = T::zero();
    Ok(r)
}

impl<T: Real> Add for Quaternion<T> {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        Self::new(self.w + o.w, self.x + o.x, self.y + o.y, self.z + o.z)
    }
}

impl<T: Real> Sub for Quaternion<T> {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        Self::new(self.w - o.w, self.x - o.x, self.y - o.y, self.z - o.z)
    }
}

impl<T: Real> Neg for Quaternion<T> {
    type Output = Self;
    fn neg(self) -> Self {
        Self::new(-self.w, -self.x, -self.y, -self.z)
    }
}

impl<T: Real> Mul for Quaternion<T> {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        Self::new(
            self.w * o.w - self.x * o.x - self.y * o.y - self.z * o.z,
            self.w * o.x + self.x * o.w + self.y * o.z - self.z * o.y,
            self.w * o.y - self.x * o.z + self.y * o.w + self.z * o.x,
            self.w * o.z + self.x * o.y - self.y * o.x + self.z * o.w,
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    type Q = Quaternion<f64>;

    #[test]
    fn hamilton_relations() {
        let (i, j, k) = (Q::i(), Q::j(), Q::k());
        assert_eq!(i * j, k);
        assert_eq!(j * k, i);
        assert_eq!(k * i, j);
        assert_eq!(i * i, -Q::one());
        assert_eq!(i * j * k, -Q::one());
    }

    #[test]
    fn ad_identity_and_j() {
        assert_eq!(quat_ad(&Q::one(), &Q::i()).unwrap(), Q::i());
        assert_eq!(quat_ad(&Q::j(), &Q::i()).unwrap(), -Q::i());
    }

    #[test]
    fn ad_rejects_bad_input() {
        let q = Q::new(1.0, 1.0, 0.0, 0.0);
        assert!(matches!(
            quat_ad(&q, &Q::i()),
            Err(Error::NotUnitQuaternion(_))
        ));
        assert!(matches!(
            quat_ad(&Q::one(), &Q::one()),
            Err(Error::NotImaginary(_))
        ));
    }

    #[test]
    fn j_conjugates_complex_numbers() {
        // j z = z̄ j
        let z = Q::new(0.3, -1.7, 0.0, 0.0);
        assert!(((Q::j() * z) - (z.conj() * Q::j())).norm() < 1e-15);
    }

    #[test]
    fn ad_matches_rotation_matrix() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..200 {
            let q = Q::random_unit(&mut rng);
            let v = Q::imag(rng.random(), rng.random(), rng.random());
            let r = quat_ad(&q, &v).unwrap();
            let m = q.rotation_matrix();
            let vv = v.vector();
            for row in 0..3 {
                let expect: f64 = (0..3).map(|c| m[row][c] * vv[c]).sum();
                assert!((expect - r.vector()[row]).abs() < 1e-12);
            }
            assert!((r.norm() - v.norm()).abs() < 1e-12);
        }
    }

    #[test]
    fn powers() {
        let z = Q::circle(0.4);
        assert!((z.powi(3) - Q::circle(1.2)).norm() < 1e-14);
        assert!((z.powi(-2) - Q::circle(-0.8)).norm() < 1e-14);
        assert_eq!(z.powi(0), Q::one());
    }
}
