//! Torus actions on `S^3 x S^3` that are diagonal on the right:
//!
//! * `U_L`: `(z, w) * (q1, q2) = (z q1, w q2)`,
//! * `U_{a,b}`: `(z q1 conj(z^a w^b), w q2 conj(z^a w^b))`,
//! * `U_c`: `(z q1 w̄, z^c q2 w̄)`.
//!
//! The metric is the Cheeger deformation along `ΔS^3`. Flat planes have the
//! form `Span{Φ⁻¹(v,0), Φ⁻¹(0,v)}`, `v ∈ Im H`, so counting horizontal flat
//! planes at a point is a linear problem in `v`.

use std::fmt;

use num_complex::Complex;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::algebra::{quat_ad, LieVector, Quaternion};
use crate::cheeger::{
    horizontality_defect, plane_zero_curvature_tol, PairKind, SymmetricPairContext, Tolerances,
};
use crate::error::{Error, Result};
use crate::linalg::null_space;
use crate::scalar::Real;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "SCREAMING_SNAKE_CASE")]
pub enum TorusAction {
    L,
    Ab { a: i64, b: i64 },
    C { c: i64 },
}

impl fmt::Display for TorusAction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TorusAction::L => write!(f, "U_L"),
            TorusAction::Ab { a, b } => write!(f, "U_{{{a},{b}}}"),
            TorusAction::C { c } => write!(f, "U_{c}"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum SpecialPoint {
    #[serde(rename = "(1,1)")]
    OneOne,
    #[serde(rename = "(1,j)")]
    OneJ,
    #[serde(rename = "(j,1)")]
    JOne,
    #[serde(rename = "(j,j)")]
    JJ,
}

impl SpecialPoint {
    pub const ALL: [SpecialPoint; 4] = [
        SpecialPoint::OneOne,
        SpecialPoint::OneJ,
        SpecialPoint::JOne,
        SpecialPoint::JJ,
    ];

    pub fn quaternions<T: Real>(self) -> (Quaternion<T>, Quaternion<T>) {
        let (one, j) = (Quaternion::one(), Quaternion::j());
        match self {
            SpecialPoint::OneOne => (one, one),
            SpecialPoint::OneJ => (one, j),
            SpecialPoint::JOne => (j, one),
            SpecialPoint::JJ => (j, j),
        }
    }
}

impl fmt::Display for SpecialPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SpecialPoint::OneOne => "(1,1)",
            SpecialPoint::OneJ => "(1,j)",
            SpecialPoint::JOne => "(j,1)",
            SpecialPoint::JJ => "(j,j)",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Kernel {
    Trivial,
    DeltaZ2,
}

/// `±(1,1)` acts trivially when `a + b` (resp. `c`) is odd.
pub fn ineffective_kernel(action: &TorusAction) -> Kernel {
    match action {
        TorusAction::Ab { a, b } if (a + b) % 2 != 0 => Kernel::DeltaZ2,
        TorusAction::C { c } if c % 2 != 0 => Kernel::DeltaZ2,
        _ => Kernel::Trivial,
    }
}

/// The circle the stabilizer lives in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Relation {
    #[serde(rename = "z=w")]
    ZEqualsW,
    #[serde(rename = "z=conj(w)")]
    ZEqualsWBar,
}

/// Stabilizer of a special point: `{(z, w) : relation, z^e = 1}`.
pub fn fixed_exponents(action: &TorusAction, point: SpecialPoint) -> Result<(Relation, i64)> {
    use Relation::*;
    use SpecialPoint::*;
    match *action {
        TorusAction::L => Err(Error::InvalidParameters(
            "U_L acts freely; no isotropy exponents".into(),
        )),
        TorusAction::Ab { a, b } => Ok(match point {
            OneOne => (ZEqualsW, 1 - a - b),
            OneJ => (ZEqualsWBar, 1 - a + b),
            JOne => (ZEqualsWBar, 1 + a - b),
            JJ => (ZEqualsW, 1 + a + b),
        }),
        TorusAction::C { c } => Ok(match point {
            OneOne => (ZEqualsW, c - 1),
            OneJ => (ZEqualsW, c + 1),
            JOne => (ZEqualsWBar, c + 1),
            JJ => (ZEqualsWBar, c - 1),
        }),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct IsotropyRecord {
    pub point: SpecialPoint,
    /// Order of the isotropy group modulo the ineffective kernel; 0 stands for `S^1`.
    pub order: u64,
}

/// Isotropy groups at the four special points, in the order `(1,1), (1,j), (j,1), (j,j)`.
pub fn isotropy_table(action: &TorusAction) -> Vec<IsotropyRecord> {
    let halve = ineffective_kernel(action) == Kernel::DeltaZ2;
    SpecialPoint::ALL
        .iter()
        .map(|&point| {
            let order = match fixed_exponents(action, point) {
                Err(_) => 1,
                Ok((_, e)) if halve => e.unsigned_abs() / 2,
                Ok((_, e)) => e.unsigned_abs(),
            };
            IsotropyRecord { point, order }
        })
        .collect()
}

pub fn is_free(action: &TorusAction) -> bool {
    matches!(
        action,
        TorusAction::L | TorusAction::Ab { a: 0, b: 0 } | TorusAction::C { c: 0 }
    )
}

/// The action of `(z, w)` on `(q1, q2)`.
pub fn orbit_map<T: Real>(
    action: &TorusAction,
    z: Complex<T>,
    w: Complex<T>,
    q1: Quaternion<T>,
    q2: Quaternion<T>,
) -> (Quaternion<T>, Quaternion<T>) {
    let c = |x: Complex<T>| Quaternion::from_complex_pair(x, Complex::new(T::zero(), T::zero()));
    let (zq, wq) = (c(z), c(w));
    match *action {
        TorusAction::L => (zq * q1, wq * q2),
        TorusAction::Ab { a, b } => {
            let r = (zq.powi(a) * wq.powi(b)).conj();
            (zq * q1 * r, wq * q2 * r)
        }
        TorusAction::C { c: e } => (zq * q1 * wq.conj(), zq.powi(e) * q2 * wq.conj()),
    }
}

/// `Ad_{q̄} i`.
pub fn adjoint_i<T: Real>(q: &Quaternion<T>) -> Result<Quaternion<T>> {
    quat_ad(&q.conj(), &Quaternion::i())
}

/// `det [[<u1,j>, <u1,k>], [<u2,j>, <u2,k>]]` with `u = Ad_{q̄} i`; zero exactly
/// when `i, u1, u2` are linearly dependent.
pub fn dependence_det<T: Real>(q1: &Quaternion<T>, q2: &Quaternion<T>) -> Result<T> {
    let u1 = adjoint_i(q1)?;
    let u2 = adjoint_i(q2)?;
    Ok(u1.y * u2.z - u1.z * u2.y)
}

/// Vertical space at `(q1, q2)` left-translated to the identity, as the two
/// vectors for `∂θ` and `∂φ`.
pub fn vertical_vectors<T: Real>(
    action: &TorusAction,
    q1: &Quaternion<T>,
    q2: &Quaternion<T>,
) -> Result<[LieVector<T>; 2]> {
    let u1 = adjoint_i(q1)?;
    let u2 = adjoint_i(q2)?;
    let i = Quaternion::i();
    let half = T::lit(0.5);
    let f = |x: i64| T::from_i64(x).unwrap();
    let (vt, vp) = match *action {
        TorusAction::L => ((u1, Quaternion::zero()), (Quaternion::zero(), u2)),
        TorusAction::Ab { a, b } => (
            (u1 - i.scale(f(a)), -i.scale(f(a))),
            (-i.scale(f(b)), u2 - i.scale(f(b))),
        ),
        TorusAction::C { c } => ((u1, u2.scale(f(c))), (-i, -i)),
    };
    Ok([
        LieVector::quat_pair(vt.0.scale(half), vt.1.scale(half)),
        LieVector::quat_pair(vp.0.scale(half), vp.1.scale(half)),
    ])
}

/// Rows `r` with `<r, v> = 0` iff `Span{Φ⁻¹(v,0), Φ⁻¹(0,v)}` is horizontal,
/// read off the vertical vectors.
pub fn constraint_rows<T: Real>(
    action: &TorusAction,
    q1: &Quaternion<T>,
    q2: &Quaternion<T>,
) -> Result<Vec<[T; 3]>> {
    let mut rows = Vec::with_capacity(4);
    for v in vertical_vectors(action, q1, q2)? {
        let (first, second) = v.as_quat_pair().expect("quaternion pair");
        rows.push(first.vector());
        rows.push(second.vector());
    }
    Ok(rows)
}

/// The same rows written directly from the horizontality equations in `v`
/// (`Ad_{q1} v - a v ⊥ i`, `a v ⊥ i`, ... for `U_{a,b}`;
/// `Ad_{q1} v ⊥ i`, `c Ad_{q2} v ⊥ i`, `v ⊥ i` for `U_c`).
pub fn equation_rows<T: Real>(
    action: &TorusAction,
    q1: &Quaternion<T>,
    q2: &Quaternion<T>,
) -> Result<Vec<[T; 3]>> {
    let u1 = adjoint_i(q1)?.vector();
    let u2 = adjoint_i(q2)?.vector();
    let e1 = [T::one(), T::zero(), T::zero()];
    let f = |x: i64| T::from_i64(x).unwrap();
    let sub = |u: [T; 3], s: T| [u[0] - s, u[1], u[2]];
    let sc = |u: [T; 3], s: T| u.map(|x| x * s);
    Ok(match *action {
        TorusAction::L => vec![u1, u2],
        TorusAction::Ab { a, b } => vec![sub(u1, f(a)), sc(e1, f(a)), sub(u2, f(b)), sc(e1, f(b))],
        TorusAction::C { c } => vec![u1, sc(u2, f(c)), e1],
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum ZeroPlaneStatus {
    None,
    Unique,
    Circle,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ZeroPlaneSolution<T> {
    pub status: ZeroPlaneStatus,
    /// Orthonormal basis of the admissible `v`.
    pub basis: Vec<Quaternion<T>>,
}

fn solve_rows<T: Real>(rows: &[[T; 3]]) -> ZeroPlaneSolution<T> {
    let rows: Vec<Vec<T>> = rows.iter().map(|r| r.to_vec()).collect();
    let ns = null_space(&rows, 3, T::rank_tol());
    let status = match ns.len() {
        0 => ZeroPlaneStatus::None,
        1 => ZeroPlaneStatus::Unique,
        _ => ZeroPlaneStatus::Circle,
    };
    let basis = ns
        .into_iter()
        .map(|v| Quaternion::from_vector([v[0], v[1], v[2]]))
        .collect();
    ZeroPlaneSolution { status, basis }
}

/// Classifies the horizontal flat planes at `(q1, q2)`: none, a unique one, or
/// a circle of them (a 2-dimensional space of `v`).
pub fn zero_plane_solution<T: Real>(
    action: &TorusAction,
    q1: &Quaternion<T>,
    q2: &Quaternion<T>,
) -> Result<ZeroPlaneSolution<T>> {
    Ok(solve_rows(&constraint_rows(action, q1, q2)?))
}

pub fn zero_plane_status<T: Real>(
    action: &TorusAction,
    q1: &Quaternion<T>,
    q2: &Quaternion<T>,
) -> Result<ZeroPlaneStatus> {
    Ok(zero_plane_solution(action, q1, q2)?.status)
}

/// Same classification through [`equation_rows`].
pub fn zero_plane_status_by_equations<T: Real>(
    action: &TorusAction,
    q1: &Quaternion<T>,
    q2: &Quaternion<T>,
) -> Result<ZeroPlaneStatus> {
    Ok(solve_rows(&equation_rows(action, q1, q2)?).status)
}

/// Flatness and horizontality of `Span{Φ⁻¹(v,0), Φ⁻¹(0,v)}`.
pub fn validate_plane<T: Real>(
    action: &TorusAction,
    q1: &Quaternion<T>,
    q2: &Quaternion<T>,
    v: &Quaternion<T>,
    ctx: &SymmetricPairContext<T>,
    tol: &Tolerances<T>,
) -> Result<bool> {
    if ctx.pair != PairKind::S3S3Diag {
        return Err(Error::RepresentationMismatch);
    }
    let x = LieVector::quat_pair(*v, Quaternion::zero());
    let y = LieVector::quat_pair(Quaternion::zero(), *v);
    let vertical = vertical_vectors(action, q1, q2)?;
    let flat = plane_zero_curvature_tol(ctx, &x, &y, tol.bracket)?;
    let hx = horizontality_defect(ctx, &x, &vertical)?;
    let hy = horizontality_defect(ctx, &y, &vertical)?;
    Ok(flat && hx <= tol.horiz && hy <= tol.horiz)
}

/// Unit `r` with `Ad_r a = b` for unit imaginary `a ≠ -b`.
fn rotation_between<T: Real>(a: &Quaternion<T>, b: &Quaternion<T>) -> Quaternion<T> {
    (Quaternion::one() - *b * *a).normalized()
}

/// Unit `q` with `Ad_{q̄} i = t` (`t` unit imaginary), times a random phase.
pub fn with_adjoint_i<T: Real, R: Rng + ?Sized>(t: &Quaternion<T>, rng: &mut R) -> Quaternion<T> {
    let i = Quaternion::i();
    let r = if (*t + i).norm() < T::lit(1e-6) {
        Quaternion::j()
    } else {
        rotation_between(&i, t)
    };
    let phase = Quaternion::circle(T::lit(rng.random::<f64>() * std::f64::consts::TAU));
    (phase * r.conj()).normalized()
}

/// Random point with `dependence_det = 0`: `Ad_{q̄2} i` is drawn from the span
/// of `i` and `Ad_{q̄1} i`.
pub fn hypersurface_point<T: Real, R: Rng + ?Sized>(rng: &mut R) -> (Quaternion<T>, Quaternion<T>) {
    let q1 = Quaternion::random_unit(rng);
    let u1 = adjoint_i(&q1).expect("unit");
    let i = Quaternion::i();
    let th = T::lit(rng.random::<f64>() * std::f64::consts::TAU);
    // orthonormal frame of span(i, u1)
    let perp = u1 - i.scale(u1.x);
    let perp = if perp.norm() < T::lit(1e-9) {
        Quaternion::j()
    } else {
        perp.normalized()
    };
    let t = (i.scale(th.cos()) + perp.scale(th.sin())).normalized();
    let q2 = with_adjoint_i(&t, rng);
    (q1, q2)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum RemarkLocus {
    /// `q1 ∈ C` or `C j`.
    Q1Complex,
    /// `q2 ∈ C` or `C j`.
    Q2Complex,
    /// `Ad_{q̄1} i = Ad_{q̄2} i`.
    EqualAdjoint,
    /// `Ad_{q̄1} i = -Ad_{q̄2} i`.
    OppositeAdjoint,
}

/// Random point of one of the loci where flat planes always exist.
pub fn remark_point<T: Real, R: Rng + ?Sized>(
    kind: RemarkLocus,
    rng: &mut R,
) -> (Quaternion<T>, Quaternion<T>) {
    let phase =
        |rng: &mut R| Quaternion::circle(T::lit(rng.random::<f64>() * std::f64::consts::TAU));
    let complex_or_cj = |rng: &mut R| {
        let p = phase(rng);
        if rng.random::<bool>() {
            p
        } else {
            p * Quaternion::j()
        }
    };
    match kind {
        RemarkLocus::Q1Complex => (complex_or_cj(rng), Quaternion::random_unit(rng)),
        RemarkLocus::Q2Complex => (Quaternion::random_unit(rng), complex_or_cj(rng)),
        RemarkLocus::EqualAdjoint => {
            let q1 = Quaternion::random_unit(rng);
            (q1, phase(rng) * q1)
        }
        RemarkLocus::OppositeAdjoint => {
            let q1 = Quaternion::random_unit(rng);
            (q1, phase(rng) * Quaternion::j() * q1)
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Verdict {
    AlmostPositive,
    NotAlmostPositiveFree,
}

/// Almost positive exactly when the action is not free.
pub fn curvature_verdict(action: &TorusAction) -> Verdict {
    if is_free(action) {
        Verdict::NotAlmostPositiveFree
    } else {
        Verdict::AlmostPositive
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Certification {
    pub verdict: Verdict,
    pub samples: usize,
    /// Samples with `|dependence_det| > 1e-6`.
    pub off_surface: usize,
    pub off_surface_none: usize,
    pub on_surface: usize,
    pub on_surface_planes: usize,
    pub special_points_with_planes: usize,
    /// Every reported plane passed [`validate_plane`].
    pub witnesses_valid: bool,
    pub consistent: bool,
}

/// Empirical support for [`curvature_verdict`]: random points off the
/// dependence hypersurface, constructed points on it and the special points.
pub fn certify_verdict<R: Rng + ?Sized>(
    action: &TorusAction,
    samples: usize,
    ctx: &SymmetricPairContext<f64>,
    tol: &Tolerances<f64>,
    rng: &mut R,
) -> Result<Certification> {
    let verdict = curvature_verdict(action);
    let mut c = Certification {
        verdict,
        samples,
        off_surface: 0,
        off_surface_none: 0,
        on_surface: 0,
        on_surface_planes: 0,
        special_points_with_planes: 0,
        witnesses_valid: true,
        consistent: true,
    };
    let check = |q1: &Quaternion<f64>,
                 q2: &Quaternion<f64>,
                 c: &mut Certification|
     -> Result<ZeroPlaneStatus> {
        let sol = zero_plane_solution(action, q1, q2)?;
        for v in &sol.basis {
            if !validate_plane(action, q1, q2, v, ctx, tol)? {
                c.witnesses_valid = false;
            }
        }
        Ok(sol.status)
    };
    for _ in 0..samples {
        let q1 = Quaternion::random_unit(rng);
        let q2 = Quaternion::random_unit(rng);
        let status = check(&q1, &q2, &mut c)?;
        if dependence_det(&q1, &q2)?.abs() > 1e-6 {
            c.off_surface += 1;
            if status == ZeroPlaneStatus::None {
                c.off_surface_none += 1;
            }
        }
        if verdict == Verdict::NotAlmostPositiveFree && status == ZeroPlaneStatus::None {
            c.consistent = false;
        }
        let (h1, h2) = hypersurface_point(rng);
        c.on_surface += 1;
        if check(&h1, &h2, &mut c)? != ZeroPlaneStatus::None {
            c.on_surface_planes += 1;
        }
    }
    for p in SpecialPoint::ALL {
        let (q1, q2) = p.quaternions();
        if check(&q1, &q2, &mut c)? != ZeroPlaneStatus::None {
            c.special_points_with_planes += 1;
        }
    }
    c.consistent &= c.witnesses_valid
        && c.on_surface_planes == c.on_surface
        && c.special_points_with_planes == 4;
    if verdict == Verdict::AlmostPositive {
        c.consistent &= c.off_surface_none == c.off_surface;
    }
    Ok(c)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    type Q = Quaternion<f64>;

    fn orders(action: TorusAction) -> Vec<u64> {
        isotropy_table(&action).iter().map(|r| r.order).collect()
    }

    #[test]
    fn kernel_examples() {
        assert_eq!(
            ineffective_kernel(&TorusAction::Ab { a: 1, b: 1 }),
            Kernel::Trivial
        );
        assert_eq!(
            ineffective_kernel(&TorusAction::Ab { a: 3, b: 0 }),
            Kernel::DeltaZ2
        );
        assert_eq!(
            ineffective_kernel(&TorusAction::C { c: 2 }),
            Kernel::Trivial
        );
        assert_eq!(ineffective_kernel(&TorusAction::L), Kernel::Trivial);
    }

    #[test]
    fn exponent_examples() {
        let ab = TorusAction::Ab { a: 2, b: 5 };
        assert_eq!(
            fixed_exponents(&ab, SpecialPoint::OneOne).unwrap(),
            (Relation::ZEqualsW, -6)
        );
        assert_eq!(
            fixed_exponents(&ab, SpecialPoint::JJ).unwrap(),
            (Relation::ZEqualsW, 8)
        );
        assert_eq!(
            fixed_exponents(&TorusAction::C { c: 2 }, SpecialPoint::OneJ)
                .unwrap()
                .1,
            3
        );
        assert!(fixed_exponents(&TorusAction::L, SpecialPoint::OneOne).is_err());
    }

    #[test]
    fn isotropy_examples() {
        assert_eq!(orders(TorusAction::Ab { a: 1, b: 1 }), vec![1, 1, 1, 3]);
        assert_eq!(orders(TorusAction::C { c: 3 }), vec![1, 2, 2, 1]);
        assert_eq!(orders(TorusAction::Ab { a: 3, b: 0 }), vec![1, 1, 2, 2]);
        assert_eq!(orders(TorusAction::C { c: 2 }), vec![1, 3, 3, 1]);
        assert_eq!(orders(TorusAction::C { c: 1 }), vec![0, 1, 1, 0]);
    }

    #[test]
    fn freeness_examples() {
        assert!(is_free(&TorusAction::Ab { a: 0, b: 0 }));
        assert!(is_free(&TorusAction::C { c: 0 }));
        assert!(is_free(&TorusAction::L));
        assert!(!is_free(&TorusAction::Ab { a: 1, b: 1 }));
    }

    #[test]
    fn dependence_det_examples() {
        assert_eq!(dependence_det(&Q::one(), &Q::one()).unwrap(), 0.0);
        assert_eq!(dependence_det(&Q::one(), &Q::j()).unwrap(), 0.0);
        assert!(matches!(
            dependence_det(&Q::new(2.0, 0.0, 0.0, 0.0), &Q::one()),
            Err(Error::NotUnitQuaternion(_))
        ));
    }

    #[test]
    fn rotation_helper() {
        let mut rng = ChaCha8Rng::seed_from_u64(21);
        for _ in 0..20 {
            let t = Q::random_unit_imag(&mut rng);
            let q = with_adjoint_i(&t, &mut rng);
            let u = adjoint_i(&q).unwrap();
            assert!((u - t).norm() < 1e-12);
        }
    }

    #[test]
    fn status_examples() {
        let mut rng = ChaCha8Rng::seed_from_u64(22);
        let (q1, q2) = (Q::random_unit(&mut rng), Q::random_unit(&mut rng));
        assert_eq!(
            zero_plane_status(&TorusAction::Ab { a: 0, b: 0 }, &q1, &q2).unwrap(),
            ZeroPlaneStatus::Unique
        );
        let z = Q::circle(0.7);
        assert_eq!(
            zero_plane_status(&TorusAction::C { c: 0 }, &z, &q2).unwrap(),
            ZeroPlaneStatus::Circle
        );
        assert!(dependence_det(&q1, &q2).unwrap().abs() > 0.1);
        assert_eq!(
            zero_plane_status(&TorusAction::Ab { a: 1, b: 1 }, &q1, &q2).unwrap(),
            ZeroPlaneStatus::None
        );
    }

    #[test]
    fn verdicts() {
        assert_eq!(
            curvature_verdict(&TorusAction::Ab { a: 1, b: 1 }),
            Verdict::AlmostPositive
        );
        assert_eq!(
            curvature_verdict(&TorusAction::Ab { a: 0, b: 0 }),
            Verdict::NotAlmostPositiveFree
        );
        assert_eq!(
            curvature_verdict(&TorusAction::C { c: 2 }),
            Verdict::AlmostPositive
        );
    }

    #[test]
    fn certification_runs() {
        let ctx = SymmetricPairContext::default_for(PairKind::S3S3Diag);
        let tol = Tolerances::default();
        let mut rng = ChaCha8Rng::seed_from_u64(23);
        for action in [
            TorusAction::Ab { a: 1, b: 1 },
            TorusAction::C { c: 0 },
            TorusAction::L,
        ] {
            let c = certify_verdict(&action, 50, &ctx, &tol, &mut rng).unwrap();
            assert!(c.consistent, "{action}: {c:?}");
        }
    }

    #[test]
    fn serde_shape() {
        let s = serde_json::to_string(&TorusAction::Ab { a: 1, b: 2 }).unwrap();
        assert_eq!(s, r#"{"kind":"AB","a":1,"b":2}"#);
    }
}
