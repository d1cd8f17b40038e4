//! Cheeger-deformed metrics on symmetric pairs and the zero-curvature plane test.
//!
//! For a symmetric pair `(G, K)` with `g = k ⊕ p` (orthogonal for `<,>_0`),
//! the deformed metric is `<X, Y>_1 = <X, Φ(Y)>_0` with `Φ(Y) = Y_p + λ Y_k`,
//! `λ = t / (t + 1)`. It is the metric making `(g, k) ↦ g k⁻¹` a Riemannian
//! submersion from `(G × K, <,>_0 ⊕ t <,>_0|_k)`.
//!
//! A plane spanned by `Φ⁻¹(X), Φ⁻¹(Y)` is flat for `<,>_1` exactly when
//! `[X, Y]`, `[X_k, Y_k]` and `[X_p, Y_p]` all vanish.

use serde::{Deserialize, Serialize};

use crate::algebra::{CMatrix, LieVector};
use crate::error::{Error, Result};
use crate::scalar::Real;

/// Which symmetric pair is in force.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum PairKind {
    /// `U(2) ⊂ SU(3)` via `A ↦ diag(A, conj det A)`.
    Su3U2,
    /// `U(4) ⊂ SU(5)` via `A ↦ diag(A, conj det A)`.
    Su5U4,
    /// Diagonal `S^3 ⊂ S^3 × S^3`.
    S3S3Diag,
}

impl PairKind {
    pub const ALL: [PairKind; 3] = [PairKind::Su3U2, PairKind::Su5U4, PairKind::S3S3Diag];

    /// Matrix size of `G`, or `None` for the quaternion-pair representation.
    pub fn matrix_dim(self) -> Option<usize> {
        match self {
            PairKind::Su3U2 => Some(3),
            PairKind::Su5U4 => Some(5),
            PairKind::S3S3Diag => None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SymmetricPairContext<T> {
    pub pair: PairKind,
    lambda: T,
}

impl<T: Real> SymmetricPairContext<T> {
    pub fn new(pair: PairKind, lambda: T) -> Result<Self> {
        if !(lambda > T::zero() && lambda < T::one()) {
            return Err(Error::InvalidLambda(lambda.to_f64().unwrap_or(f64::NAN)));
        }
        Ok(Self { pair, lambda })
    }

    /// From the Cheeger parameter `t > 0`, `λ = t / (t + 1)`.
    pub fn from_t(pair: PairKind, t: T) -> Result<Self> {
        Self::new(pair, t / (t + T::one()))
    }

    /// `λ = 1/2`.
    pub fn default_for(pair: PairKind) -> Self {
        Self {
            pair,
            lambda: T::lit(0.5),
        }
    }

    pub fn lambda(&self) -> T {
        self.lambda
    }

    /// `t = λ / (1 - λ)`.
    pub fn t(&self) -> T {
        self.lambda / (T::one() - self.lambda)
    }

    fn check(&self, x: &LieVector<T>) -> Result<()> {
        match (self.pair.matrix_dim(), x) {
            (Some(n), LieVector::Matrix(m)) if m.dim() == n => Ok(()),
            (Some(n), LieVector::Matrix(m)) => Err(Error::DimensionMismatch {
                expected: n,
                got: m.dim(),
            }),
            (None, LieVector::QuatPair(..)) => Ok(()),
            _ => Err(Error::RepresentationMismatch),
        }
    }

    /// `X = X_k + X_p`.
    pub fn split(&self, x: &LieVector<T>) -> Result<(LieVector<T>, LieVector<T>)> {
        self.check(x)?;
        Ok(match x {
            LieVector::Matrix(m) => {
                let n = m.dim();
                let last = n - 1;
                let in_k = |r: usize, c: usize| (r < last) == (c < last);
                let k = CMatrix::from_fn(n, |r, c| if in_k(r, c) { m[(r, c)] } else { zero() });
                let p = CMatrix::from_fn(n, |r, c| if in_k(r, c) { zero() } else { m[(r, c)] });
                (LieVector::Matrix(k), LieVector::Matrix(p))
            }
            LieVector::QuatPair(v, w) => {
                let half = T::lit(0.5);
                let s = (*v + *w).scale(half);
                let d = (*v - *w).scale(half);
                (LieVector::QuatPair(s, s), LieVector::QuatPair(d, -d))
            }
        })
    }

    /// `Φ(X) = X_p + λ X_k`.
    pub fn phi(&self, x: &LieVector<T>) -> Result<LieVector<T>> {
        let (k, p) = self.split(x)?;
        p.add(&k.scale(self.lambda))
    }

    /// `Φ⁻¹(X) = X_p + X_k / λ`.
    pub fn phi_inv(&self, x: &LieVector<T>) -> Result<LieVector<T>> {
        let (k, p) = self.split(x)?;
        p.add(&k.scale(T::one() / self.lambda))
    }

    /// `<X, Y>_1 = <X, Φ(Y)>_0`.
    pub fn inner1(&self, x: &LieVector<T>, y: &LieVector<T>) -> Result<T> {
        x.inner0(&self.phi(y)?)
    }

    /// Horizontal lift of `W ∈ g` through `(g, k) ↦ g k⁻¹` at the identity.
    ///
    /// The kernel of the differential `(X, Z) ↦ X - Z` is `{(V, V) : V ∈ k}`;
    /// orthogonality to it under `<,>_0 ⊕ t <,>_0` forces `Z = -X_k / t`, and
    /// `X - Z = W` then gives `X = W_p + λ W_k`, `Z = -(1 - λ) W_k`.
    pub fn horizontal_lift(&self, w: &LieVector<T>) -> Result<(LieVector<T>, LieVector<T>)> {
        let (k, p) = self.split(w)?;
        let x = p.add(&k.scale(self.lambda))?;
        let z = k.scale(-(T::one() - self.lambda));
        Ok((x, z))
    }

    /// Norm of `(X, Z)` in `<,>_0 ⊕ t <,>_0|_k`.
    pub fn product_norm(&self, x: &LieVector<T>, z: &LieVector<T>) -> T {
        (x.norm_sqr() + self.t() * z.norm_sqr()).sqrt()
    }
}

fn zero<T: Real>() -> num_complex::Complex<T> {
    num_complex::Complex::new(T::zero(), T::zero())
}

fn check_plane<T: Real>(x: &LieVector<T>, y: &LieVector<T>) -> Result<()> {
    let xx = x.norm_sqr();
    let yy = y.norm_sqr();
    let xy = x.inner0(y)?;
    if xx == T::zero() || yy == T::zero() {
        return Err(Error::DegeneratePlane);
    }
    // scale-free Gram determinant
    let gram = (xx * yy - xy * xy) / (xx * yy);
    if gram <= T::lit(1e-12) {
        return Err(Error::DegeneratePlane);
    }
    Ok(())
}

/// Relative sizes of `[X,Y]`, `[X_k,Y_k]`, `[X_p,Y_p]`, each divided by `|X| |Y|`.
pub fn bracket_residuals<T: Real>(
    ctx: &SymmetricPairContext<T>,
    x: &LieVector<T>,
    y: &LieVector<T>,
) -> Result<[T; 3]> {
    let (xk, xp) = ctx.split(x)?;
    let (yk, yp) = ctx.split(y)?;
    let scale = x.norm() * y.norm();
    Ok([
        x.bracket(y)?.norm() / scale,
        xk.bracket(&yk)?.norm() / scale,
        xp.bracket(&yp)?.norm() / scale,
    ])
}

/// Whether `Span{Φ⁻¹(X), Φ⁻¹(Y)}` has zero `<,>_1` curvature, with the default tolerance.
pub fn plane_zero_curvature<T: Real>(
    ctx: &SymmetricPairContext<T>,
    x: &LieVector<T>,
    y: &LieVector<T>,
) -> Result<bool> {
    plane_zero_curvature_tol(ctx, x, y, T::bracket_tol())
}

pub fn plane_zero_curvature_tol<T: Real>(
    ctx: &SymmetricPairContext<T>,
    x: &LieVector<T>,
    y: &LieVector<T>,
    tol: T,
) -> Result<bool> {
    ctx.check(x)?;
    ctx.check(y)?;
    check_plane(x, y)?;
    Ok(bracket_residuals(ctx, x, y)?.iter().all(|&r| r <= tol))
}

/// Independent check through the submersion `G × K → G`: lift `Φ⁻¹(X)` and
/// `Φ⁻¹(Y)` horizontally and test whether the lifts commute in `g ⊕ k`
/// (flatness for the bi-invariant product metric).
pub fn lifted_bracket_oracle<T: Real>(
    ctx: &SymmetricPairContext<T>,
    x: &LieVector<T>,
    y: &LieVector<T>,
) -> Result<bool> {
    lifted_bracket_oracle_tol(ctx, x, y, T::bracket_tol())
}

pub fn lifted_bracket_oracle_tol<T: Real>(
    ctx: &SymmetricPairContext<T>,
    x: &LieVector<T>,
    y: &LieVector<T>,
    tol: T,
) -> Result<bool> {
    ctx.check(x)?;
    ctx.check(y)?;
    check_plane(x, y)?;
    let (gx, kx) = ctx.horizontal_lift(&ctx.phi_inv(x)?)?;
    let (gy, ky) = ctx.horizontal_lift(&ctx.phi_inv(y)?)?;
    let scale = ctx.product_norm(&gx, &kx) * ctx.product_norm(&gy, &ky);
    let g_res = gx.bracket(&gy)?.norm();
    let k_res = ctx.t().sqrt() * kx.bracket(&ky)?.norm();
    Ok(g_res <= tol * scale && k_res <= tol * scale)
}

/// Thresholds used by the zero-plane deciders and witness checks.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerances<T> {
    /// Relative bracket vanishing.
    pub bracket: T,
    /// Relative horizontality defect of witness vectors.
    pub horiz: T,
    /// Margin for "range contains zero" and "residual vanishes" decisions.
    pub margin: T,
}

impl<T: Real> Default for Tolerances<T> {
    fn default() -> Self {
        Self {
            bracket: T::bracket_tol(),
            horiz: T::horiz_tol(),
            margin: T::margin(),
        }
    }
}

/// Basis of `{X : [X,Y] = [X_k,Y_k] = [X_p,Y_p] = 0, <X, c>_0 = 0 for c in ortho}`,
/// i.e. the vectors completing `Y` to a flat plane subject to the given linear
/// orthogonality constraints. Solved as a null space over the orthonormal
/// basis of the ambient Lie algebra.
pub fn flat_partners<T: Real>(
    ctx: &SymmetricPairContext<T>,
    y: &LieVector<T>,
    ortho: &[LieVector<T>],
) -> Result<Vec<LieVector<T>>> {
    ctx.check(y)?;
    for c in ortho {
        ctx.check(c)?;
    }
    let basis = y.basis_like();
    let (yk, yp) = ctx.split(y)?;
    // one column per basis vector
    let mut columns: Vec<Vec<T>> = Vec::with_capacity(basis.len());
    for b in &basis {
        let (bk, bp) = ctx.split(b)?;
        let mut col = Vec::new();
        col.extend(b.bracket(y)?.coordinates());
        col.extend(bk.bracket(&yk)?.coordinates());
        col.extend(bp.bracket(&yp)?.coordinates());
        for c in ortho {
            let n = c.norm();
            let scale = if n > T::zero() {
                T::one() / n
            } else {
                T::one()
            };
            col.push(b.inner0(c)? * scale);
        }
        columns.push(col);
    }
    let m = columns[0].len();
    let rows: Vec<Vec<T>> = (0..m)
        .map(|r| columns.iter().map(|c| c[r]).collect())
        .collect();
    let ns = crate::linalg::null_space(&rows, basis.len(), T::rank_tol());
    Ok(ns
        .iter()
        .map(|coords| LieVector::from_coordinates(y, coords))
        .collect())
}

/// A vector `X`, `<X, Y>_0 = 0`, with `Span{Φ⁻¹(X), Φ⁻¹(Y)}` flat and `X`
/// orthogonal to every vector in `ortho`.
pub fn complete_flat_plane<T: Real>(
    ctx: &SymmetricPairContext<T>,
    y: &LieVector<T>,
    ortho: &[LieVector<T>],
) -> Result<Option<LieVector<T>>> {
    let mut all = ortho.to_vec();
    all.push(y.clone());
    let sols = flat_partners(ctx, y, &all)?;
    Ok(sols.into_iter().next().map(|x| {
        let n = x.norm();
        x.scale(T::one() / n)
    }))
}

/// Largest `|<Φ⁻¹(X), V>_1| / (|X| |V|)` over the vertical vectors `V`.
pub fn horizontality_defect<T: Real>(
    ctx: &SymmetricPairContext<T>,
    x: &LieVector<T>,
    vertical: &[LieVector<T>],
) -> Result<T> {
    let lifted = ctx.phi_inv(x)?;
    let mut worst = T::zero();
    for v in vertical {
        let nv = v.norm();
        if nv == T::zero() {
            continue;
        }
        let d = ctx.inner1(&lifted, v)?.abs() / (x.norm() * nv);
        worst = worst.max(d);
    }
    Ok(worst)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Quaternion;
    use num_complex::Complex;

    type L = LieVector<f64>;
    type Ctx = SymmetricPairContext<f64>;

    fn su3() -> Ctx {
        Ctx::default_for(PairKind::Su3U2)
    }

    fn p_vector(entries: &[((usize, usize), Complex<f64>)]) -> L {
        let mut m = CMatrix::zeros(3);
        for &((r, c), z) in entries {
            m[(r, c)] = z;
            m[(c, r)] = -z.conj();
        }
        L::Matrix(m)
    }

    #[test]
    fn lambda_range() {
        assert!(Ctx::new(PairKind::Su3U2, 0.0).is_err());
        assert!(Ctx::new(PairKind::Su3U2, 1.0).is_err());
        assert!(Ctx::new(PairKind::Su3U2, f64::NAN).is_err());
        let c = Ctx::from_t(PairKind::Su3U2, 1.0).unwrap();
        assert_eq!(c.lambda(), 0.5);
        assert!((c.t() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn split_examples() {
        let x = L::i_diag(&[1.0, 1.0, -2.0]);
        let (k, p) = su3().split(&x).unwrap();
        assert_eq!(k, x);
        assert_eq!(p.norm(), 0.0);

        let y = p_vector(&[
            ((0, 2), Complex::new(1.0, 2.0)),
            ((1, 2), Complex::new(-0.5, 0.0)),
        ]);
        let (k, p) = su3().split(&y).unwrap();
        assert_eq!(p, y);
        assert_eq!(k.norm(), 0.0);

        let s3 = Ctx::default_for(PairKind::S3S3Diag);
        let v = Quaternion::imag(1.0, 2.0, 0.0);
        let w = Quaternion::imag(0.0, -1.0, 3.0);
        let (k, p) = s3.split(&L::quat_pair(v, w)).unwrap();
        assert_eq!(k, L::quat_pair((v + w).scale(0.5), (v + w).scale(0.5)));
        assert_eq!(p, L::quat_pair((v - w).scale(0.5), (w - v).scale(0.5)));
        assert!(k.inner0(&p).unwrap().abs() < 1e-15);
    }

    #[test]
    fn split_rejects_wrong_dimension() {
        let x = L::i_diag(&[1.0, -1.0]);
        assert!(matches!(
            su3().split(&x),
            Err(Error::DimensionMismatch {
                expected: 3,
                got: 2
            })
        ));
        let q = L::quat_pair(Quaternion::i(), Quaternion::j());
        assert!(matches!(
            su3().split(&q),
            Err(Error::RepresentationMismatch)
        ));
    }

    #[test]
    fn phi_examples() {
        let y = p_vector(&[((0, 2), Complex::new(1.0, 0.0))]);
        assert_eq!(su3().phi(&y).unwrap(), y);
        let x = L::i_diag(&[1.0, -1.0, 0.0]);
        assert_eq!(su3().phi(&x).unwrap(), x.scale(0.5));
        assert_eq!(su3().phi_inv(&x).unwrap(), x.scale(2.0));
    }

    #[test]
    fn lift_is_horizontal_and_projects() {
        let ctx = Ctx::new(PairKind::Su3U2, 0.3).unwrap();
        let w = p_vector(&[((0, 2), Complex::new(0.4, -1.0))])
            .add(&L::i_diag(&[0.5, 1.5, -2.0]))
            .unwrap();
        let (x, z) = ctx.horizontal_lift(&w).unwrap();
        // dπ(X, Z) = X - Z
        assert!(x.sub(&z).unwrap().sub(&w).unwrap().norm() < 1e-14);
        // orthogonal to every vertical (V, V), V ∈ k: X_k + t Z = 0
        let (xk, _) = ctx.split(&x).unwrap();
        assert!(xk.add(&z.scale(ctx.t())).unwrap().norm() < 1e-14);
    }

    #[test]
    fn zero_curvature_examples() {
        let ctx = su3();
        let x = L::i_diag(&[1.0, -1.0, 0.0]);
        let y = L::i_diag(&[0.0, 1.0, -1.0]);
        assert!(plane_zero_curvature(&ctx, &x, &y).unwrap());
        assert!(lifted_bracket_oracle(&ctx, &x, &y).unwrap());

        let y1 = L::i_diag(&[-2.0, 1.0, 1.0]);
        let yp = p_vector(&[((0, 2), Complex::new(1.0, 0.0))]);
        assert!(!plane_zero_curvature(&ctx, &y1, &yp).unwrap());
        assert!(!lifted_bracket_oracle(&ctx, &y1, &yp).unwrap());

        let s3 = Ctx::default_for(PairKind::S3S3Diag);
        let v = Quaternion::imag(0.3, -0.2, 0.9);
        let z = Quaternion::zero();
        let a = L::quat_pair(v, z);
        let b = L::quat_pair(z, v);
        assert!(plane_zero_curvature(&s3, &a, &b).unwrap());
        assert!(lifted_bracket_oracle(&s3, &a, &b).unwrap());
    }

    #[test]
    fn degenerate_planes_rejected() {
        let x = L::i_diag(&[1.0, -1.0, 0.0]);
        assert!(matches!(
            plane_zero_curvature(&su3(), &x, &x.scale(2.0)),
            Err(Error::DegeneratePlane)
        ));
        assert!(matches!(
            lifted_bracket_oracle(&su3(), &x, &x.zero_like()),
            Err(Error::DegeneratePlane)
        ));
    }
}
