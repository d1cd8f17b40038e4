//! Eschenburg spaces `E_{p,q} = SU(3) // S^1_{p,q}` with
//! `z * A = diag(z^p1, z^p2, z^p3) A diag(z̄^q1, z̄^q2, z̄^q3)`.
//!
//! The metric is the Cheeger deformation of the bi-invariant metric along
//! `K = U(2)` in the upper-left block. The vertical direction at `A` is
//! `v_A = Ad_{A*} P - Q` with `P = i diag(p)`, `Q = i diag(q)`. Any horizontal
//! flat plane contains `Y3 = i diag(1,1,-2)` or some `Ad_k Y1`,
//! `Y1 = i diag(-2,1,1)`, `k ∈ K`.

use std::fmt;

use num_complex::Complex;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::algebra::haar::{haar_u, special_unitary_with_zero};
use crate::algebra::{pair_gcd, permutations, CMatrix, LieVector};
use crate::cheeger::{
    complete_flat_plane, flat_partners, horizontality_defect, plane_zero_curvature_tol, PairKind,
    SymmetricPairContext, Tolerances,
};
use crate::error::{Error, Result};
use crate::linalg::hermitian_eigen;
use crate::scalar::Real;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "RawParams")]
pub struct EschParams {
    p: [i64; 3],
    q: [i64; 3],
}

#[derive(Deserialize)]
struct RawParams {
    p: [i64; 3],
    q: [i64; 3],
}

impl TryFrom<RawParams> for EschParams {
    type Error = Error;
    fn try_from(r: RawParams) -> Result<Self> {
        EschParams::new(r.p, r.q)
    }
}

impl fmt::Display for EschParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "p={:?} q={:?}", self.p, self.q)
    }
}

impl EschParams {
    /// Errors unless `sum p = sum q`.
    pub fn new(p: [i64; 3], q: [i64; 3]) -> Result<Self> {
        let (sp, sq): (i64, i64) = (p.iter().sum(), q.iter().sum());
        if sp != sq {
            return Err(Error::InvalidParameters(format!(
                "sum p = {sp} but sum q = {sq}"
            )));
        }
        Ok(Self { p, q })
    }

    pub fn p(&self) -> [i64; 3] {
        self.p
    }

    pub fn q(&self) -> [i64; 3] {
        self.q
    }

    /// `P = i diag(p)`.
    pub fn p_matrix<T: Real>(&self) -> LieVector<T> {
        LieVector::i_diag(&self.p.map(|x| T::from_i64(x).unwrap()))
    }

    /// `Q = i diag(q)`.
    pub fn q_matrix<T: Real>(&self) -> LieVector<T> {
        LieVector::i_diag(&self.q.map(|x| T::from_i64(x).unwrap()))
    }

    pub fn swapped(&self) -> Self {
        Self {
            p: self.q,
            q: self.p,
        }
    }

    /// `(p, q) ↦ (-reverse p, -reverse q)`.
    pub fn negated(&self) -> Self {
        let neg = |v: [i64; 3]| [-v[2], -v[1], -v[0]];
        Self {
            p: neg(self.p),
            q: neg(self.q),
        }
    }

    /// Adds `s` to every entry (composition with the central diagonal circle).
    pub fn shifted(&self, s: i64) -> Self {
        Self {
            p: self.p.map(|x| x + s),
            q: self.q.map(|x| x + s),
        }
    }

    pub fn permuted(&self, sp: &[usize], sq: &[usize]) -> Self {
        Self {
            p: [self.p[sp[0]], self.p[sp[1]], self.p[sp[2]]],
            q: [self.q[sq[0]], self.q[sq[1]], self.q[sq[2]]],
        }
    }

    /// Both tuples sorted ascending.
    pub fn sorted(&self) -> Self {
        let mut p = self.p;
        let mut q = self.q;
        p.sort_unstable();
        q.sort_unstable();
        Self { p, q }
    }

    /// Image under every element of the symmetry group generated by
    /// permutations of `p`, permutations of `q`, the swap and the negation
    /// (144 elements, duplicates kept).
    pub fn orbit(&self) -> Vec<Self> {
        let perms = permutations(3);
        let mut out = Vec::with_capacity(144);
        for base in [*self, self.swapped()] {
            for b in [base, base.negated()] {
                for sp in &perms {
                    for sq in &perms {
                        out.push(b.permuted(sp, sq));
                    }
                }
            }
        }
        out
    }

    fn shift_normal(&self) -> Self {
        self.shifted(-self.p[0])
    }

    /// Whether some element of [`EschParams::orbit`] equals `other` up to a common shift.
    pub fn equivalent(&self, other: &Self) -> bool {
        let target = other.shift_normal();
        self.orbit().iter().any(|g| g.shift_normal() == target)
    }

    /// Sorted `q2` equals sorted `p1` or `p3`.
    pub fn on_positive_boundary(&self) -> bool {
        let s = self.sorted();
        s.q[1] == s.p[0] || s.q[1] == s.p[2]
    }
}

/// `p = (1,1,0)`, `q = (0,0,2)`.
pub fn e0() -> EschParams {
    EschParams {
        p: [1, 1, 0],
        q: [0, 0, 2],
    }
}

/// `p = (0,0,0)`, `q = (-1,0,1)`.
pub fn w11() -> EschParams {
    EschParams {
        p: [0, 0, 0],
        q: [-1, 0, 1],
    }
}

/// `gcd(p1 - q_σ(1), p2 - q_σ(2)) = 1` for all six permutations `σ`.
pub fn is_free(params: &EschParams) -> bool {
    let (p, q) = (params.p, params.q);
    permutations(3)
        .iter()
        .all(|s| pair_gcd(p[0] - q[s[0]], p[1] - q[s[1]]) == 1)
}

/// `z * A`.
pub fn orbit_act<T: Real>(params: &EschParams, z: Complex<T>, a: &CMatrix<T>) -> CMatrix<T> {
    let zp = params.p.map(|e| z.powi(e as i32));
    let zq = params.q.map(|e| z.conj().powi(e as i32));
    CMatrix::from_fn(3, |r, c| zp[r] * a[(r, c)] * zq[c])
}

/// `v_A = Ad_{A*} P - Q`.
pub fn vertical_vector<T: Real>(params: &EschParams, a: &CMatrix<T>) -> Result<LieVector<T>> {
    if a.dim() != 3 {
        return Err(Error::DimensionMismatch {
            expected: 3,
            got: a.dim(),
        });
    }
    a.check_special_unitary()?;
    params.p_matrix().ad(&a.adjoint())?.sub(&params.q_matrix())
}

fn real(x: i64) -> f64 {
    x as f64
}

/// `sum_j |a_j3|^2 p_j - q3`; zero exactly when `Y3` is horizontal at `A`.
pub fn y3_residual<T: Real>(params: &EschParams, a: &CMatrix<T>) -> T {
    let s = (0..3).fold(T::zero(), |acc, j| {
        acc + a[(j, 2)].norm_sqr() * T::lit(real(params.p[j]))
    });
    s - T::lit(real(params.q[2]))
}

/// The Hermitian form `u ↦ f(u)` on `C^2` whose sign decides horizontality of
/// `Ad_k Y1` (`u` the first column of `k`):
/// `[A* diag(p) A]_{2x2} - diag(q1, q2)`.
pub fn y1_form<T: Real>(params: &EschParams, a: &CMatrix<T>) -> CMatrix<T> {
    CMatrix::from_fn(2, |r, c| {
        let mut s = (0..3).fold(Complex::new(T::zero(), T::zero()), |acc, j| {
            acc + a[(j, r)].conj() * a[(j, c)] * T::lit(real(params.p[j]))
        });
        if r == c {
            s = s - T::lit(real(params.q[r]));
        }
        s
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct Y1Range<T> {
    pub min: T,
    pub max: T,
    pub argmin: [Complex<T>; 2],
    pub argmax: [Complex<T>; 2],
}

/// Extremes of `f(u) = sum_j |(A û)_j|^2 p_j - |u1|^2 q1 - |u2|^2 q2` over unit
/// `u ∈ C^2`, `û = (u1, u2, 0)`. As `f` is a Hermitian form these are the
/// eigenvalues of [`y1_form`].
pub fn y1_range<T: Real>(params: &EschParams, a: &CMatrix<T>) -> Y1Range<T> {
    let (vals, vecs) = hermitian_eigen(&y1_form(params, a));
    Y1Range {
        min: vals[0],
        max: vals[1],
        argmin: [vecs[0][0], vecs[0][1]],
        argmax: [vecs[1][0], vecs[1][1]],
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum WitnessKind {
    Y3,
    Y1,
}

/// A horizontal flat plane `Span{Φ⁻¹(X), Φ⁻¹(Y)}` at `point`.
#[derive(Debug, Clone, PartialEq)]
pub struct Witness<T> {
    pub point: CMatrix<T>,
    pub kind: WitnessKind,
    /// First column of `k ∈ SU(2)` for the `Ad_k Y1` case.
    pub u: Option<[Complex<T>; 2]>,
    pub x: LieVector<T>,
    pub y: LieVector<T>,
    /// Passed the flatness and horizontality re-check.
    pub validated: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct HorizontalityReport<T> {
    pub y3_residual: T,
    pub y1_min: T,
    pub y1_max: T,
    pub witness: Option<Witness<T>>,
}

fn require_su3<T: Real>(ctx: &SymmetricPairContext<T>) -> Result<()> {
    if ctx.pair != PairKind::Su3U2 {
        return Err(Error::RepresentationMismatch);
    }
    Ok(())
}

/// `Ad_k Y1` with `k = [[u1, -ū2], [u2, ū1]] ⊕ 1`.
pub fn rotated_y1<T: Real>(u: [Complex<T>; 2]) -> LieVector<T> {
    let z = Complex::new(T::zero(), T::zero());
    let one = Complex::new(T::one(), T::zero());
    let k = CMatrix::from_rows(vec![
        vec![u[0], -u[1].conj(), z],
        vec![u[1], u[0].conj(), z],
        vec![z, z, one],
    ])
    .expect("square");
    LieVector::i_diag(&[T::lit(-2.0), T::one(), T::one()])
        .ad(&k)
        .expect("3x3")
}

/// Checks flatness of the plane and horizontality of both spanning vectors.
pub fn validate_plane<T: Real>(
    ctx: &SymmetricPairContext<T>,
    x: &LieVector<T>,
    y: &LieVector<T>,
    vertical: &LieVector<T>,
    tol: &Tolerances<T>,
) -> Result<bool> {
    let flat = plane_zero_curvature_tol(ctx, x, y, tol.bracket)?;
    let vs = std::slice::from_ref(vertical);
    let hx = horizontality_defect(ctx, x, vs)?;
    let hy = horizontality_defect(ctx, y, vs)?;
    Ok(flat && hx <= tol.horiz && hy <= tol.horiz)
}

fn witness_for<T: Real>(
    ctx: &SymmetricPairContext<T>,
    a: &CMatrix<T>,
    v: &LieVector<T>,
    kind: WitnessKind,
    u: Option<[Complex<T>; 2]>,
    y: LieVector<T>,
    tol: &Tolerances<T>,
) -> Result<Option<Witness<T>>> {
    let Some(x) = complete_flat_plane(ctx, &y, std::slice::from_ref(v))? else {
        return Ok(None);
    };
    let validated = validate_plane(ctx, &x, &y, v, tol)?;
    Ok(Some(Witness {
        point: a.clone(),
        kind,
        u,
        x,
        y,
        validated,
    }))
}

/// A unit `u` with `f(u) = 0`, interpolating between the extremal eigenvectors.
fn zero_of_form<T: Real>(r: &Y1Range<T>) -> [Complex<T>; 2] {
    if r.min >= T::zero() {
        return r.argmin;
    }
    if r.max <= T::zero() {
        return r.argmax;
    }
    // cos^2 a * min + sin^2 a * max = 0
    let c2 = r.max / (r.max - r.min);
    let (c, s) = (c2.sqrt(), (T::one() - c2).max(T::zero()).sqrt());
    [
        r.argmin[0] * c + r.argmax[0] * s,
        r.argmin[1] * c + r.argmax[1] * s,
    ]
}

/// Whether a horizontal zero-curvature plane exists at `A`: `Y3` horizontal
/// (residual within the margin) or `min f ≤ 0 ≤ max f`. When it does, a
/// witness plane is constructed and re-validated.
pub fn has_horizontal_zero_plane<T: Real>(
    params: &EschParams,
    a: &CMatrix<T>,
    ctx: &SymmetricPairContext<T>,
    tol: &Tolerances<T>,
) -> Result<(bool, HorizontalityReport<T>)> {
    require_su3(ctx)?;
    let v = vertical_vector(params, a)?;
    let r3 = y3_residual(params, a);
    let range = y1_range(params, a);
    let mut report = HorizontalityReport {
        y3_residual: r3,
        y1_min: range.min,
        y1_max: range.max,
        witness: None,
    };
    let found = if r3.abs() <= tol.margin {
        let y3 = LieVector::i_diag(&[T::one(), T::one(), T::lit(-2.0)]);
        report.witness = witness_for(ctx, a, &v, WitnessKind::Y3, None, y3, tol)?;
        true
    } else if range.min <= tol.margin && range.max >= -tol.margin {
        let u = zero_of_form(&range);
        report.witness = witness_for(ctx, a, &v, WitnessKind::Y1, Some(u), rotated_y1(u), tol)?;
        true
    } else {
        false
    };
    Ok((found, report))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum EschClass {
    Positive,
    QuasiPositive,
    AlmostPositiveE0,
    BoundaryW11,
    OrbifoldDagger,
    UnknownNonnegative,
}

impl EschClass {
    pub fn as_str(self) -> &'static str {
        match self {
            EschClass::Positive => "POSITIVE",
            EschClass::QuasiPositive => "QUASI_POSITIVE",
            EschClass::AlmostPositiveE0 => "ALMOST_POSITIVE_E0",
            EschClass::BoundaryW11 => "BOUNDARY_W11",
            EschClass::OrbifoldDagger => "ORBIFOLD_DAGGER",
            EschClass::UnknownNonnegative => "UNKNOWN_NONNEGATIVE",
        }
    }
}

impl fmt::Display for EschClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EschClassification {
    pub class: EschClass,
    /// Equivalent parameters in the form the class statement refers to. For
    /// `POSITIVE` these are sorted with `q1, q2` on the same side of `[p̲, p̄]`,
    /// which is the ordering whose metric has positive curvature.
    pub representative: EschParams,
    pub note: String,
}

fn outside(p: &[i64; 3], x: i64) -> bool {
    let lo = *p.iter().min().unwrap();
    let hi = *p.iter().max().unwrap();
    x < lo || x > hi
}

fn positive_cond(v: &EschParams) -> bool {
    v.q.iter().all(|&x| outside(&v.p, x))
}

/// `q1 < q2 = p1 < p2 ≤ p3 < q3` as given (no sorting).
pub fn dagger_cond(v: &EschParams) -> bool {
    let (p, q) = (v.p, v.q);
    q[0] < q[1] && q[1] == p[0] && p[0] < p[1] && p[1] <= p[2] && p[2] < q[2]
}

fn variants(params: &EschParams) -> [(EschParams, &'static str); 4] {
    [
        (*params, "as given"),
        (params.swapped(), "p and q swapped"),
        (params.negated(), "negated"),
        (params.swapped().negated(), "swapped and negated"),
    ]
}

fn sort_note(v: &EschParams) -> String {
    let s = v.sorted();
    if s == *v {
        String::new()
    } else {
        format!(", sorted to {s}")
    }
}

/// Curvature class of the Cheeger-deformed metric, up to the parameter
/// symmetries. Rejects actions that are neither free nor of the `(†)` orbifold type.
pub fn classify_curvature(params: &EschParams) -> Result<EschClassification> {
    let dagger = variants(params)
        .into_iter()
        .find(|(v, _)| dagger_cond(&v.sorted()));
    if !is_free(params) && dagger.is_none() {
        return Err(Error::NotFree(params.to_string()));
    }
    for (v, how) in [(*params, "as given"), (params.swapped(), "p and q swapped")] {
        if positive_cond(&v) {
            let s = v.sorted();
            let hi = *s.p.iter().max().unwrap();
            // put the two q's on the same side first
            let q = if s.q[1] > hi {
                [s.q[1], s.q[2], s.q[0]]
            } else {
                s.q
            };
            let rep = EschParams { p: s.p, q };
            return Ok(EschClassification {
                class: EschClass::Positive,
                representative: rep,
                note: format!("every q outside [min p, max p] ({how}), metric ordering {rep}"),
            });
        }
    }
    if params.equivalent(&e0()) {
        return Ok(EschClassification {
            class: EschClass::AlmostPositiveE0,
            representative: e0(),
            note: format!("equivalent to {}", e0()),
        });
    }
    if params.equivalent(&w11()) {
        return Ok(EschClassification {
            class: EschClass::BoundaryW11,
            representative: w11(),
            note: format!("equivalent to {}", w11()),
        });
    }
    if let Some((v, how)) = dagger {
        return Ok(EschClassification {
            class: EschClass::OrbifoldDagger,
            representative: v.sorted(),
            note: format!("q1 < q2 = p1 < p2 <= p3 < q3 ({how}{})", sort_note(&v)),
        });
    }
    let perms = permutations(3);
    for sp in &perms {
        for sq in &perms {
            let r = params.permuted(sp, sq);
            if (r.p[0] - r.q[0]) * (r.p[1] - r.q[1]) > 0 {
                return Ok(EschClassification {
                    class: EschClass::QuasiPositive,
                    representative: r,
                    note: format!("(p1 - q1)(p2 - q2) > 0 for {r}"),
                });
            }
        }
    }
    Ok(EschClassification {
        class: EschClass::UnknownNonnegative,
        representative: *params,
        note: "no reordering with (p1 - q1)(p2 - q2) > 0".into(),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum LocusKind {
    /// `det` of the upper-left `2x2` block vanishes (for `p = (1,1,0), q = (0,0,2)`).
    E0Det,
    /// `a22 = a32 = 0` under `(†)`.
    DaggerLens,
}

/// Random point of the zero locus of the given kind.
///
/// `E0Det` needs `q = (c, c, c+2)` with `p` a permutation of `(c+1, c+1, c)`;
/// with `j` the row where `p_j = c` the locus is `a_{j3} = 0`, which for the
/// standard ordering is the vanishing of the upper-left `2x2` determinant.
/// `DaggerLens` needs `(†)` in the given order.
pub fn zero_locus_point<T: Real, R: Rng + ?Sized>(
    params: &EschParams,
    kind: LocusKind,
    rng: &mut R,
) -> Result<CMatrix<T>> {
    match kind {
        LocusKind::E0Det => {
            let c = params.q[0];
            let mut ps = params.p;
            ps.sort_unstable();
            if params.q != [c, c, c + 2] || ps != [c, c + 1, c + 1] {
                return Err(Error::LocusMismatch(format!(
                    "{params} is not in the E0 form"
                )));
            }
            let j0 = params.p.iter().position(|&x| x == c).unwrap();
            special_unitary_with_zero(3, j0, 2, rng)
        }
        LocusKind::DaggerLens => {
            if !dagger_cond(params) {
                return Err(Error::LocusMismatch(format!(
                    "{params} does not satisfy q1 < q2 = p1 < p2 <= p3 < q3"
                )));
            }
            let w: CMatrix<T> = haar_u(2, rng);
            let z = Complex::new(T::zero(), T::zero());
            // det A = -a12 det W
            let a12 = -w.det().conj();
            Ok(CMatrix::from_rows(vec![
                vec![z, a12, z],
                vec![w[(0, 0)], z, w[(0, 1)]],
                vec![w[(1, 0)], z, w[(1, 1)]],
            ])
            .expect("square"))
        }
    }
}

/// Flat horizontal planes through `Y2 = i diag(1,-2,1)` at a lens-locus point.
#[derive(Debug, Clone, PartialEq)]
pub struct LensFamily<T> {
    /// `<Y2, v_A>_0 / |v_A|`, zero on the locus.
    pub y2_residual: T,
    /// Dimension of the admissible `X` before the horizontality and unit-norm cuts.
    pub solution_dim: usize,
    /// Dimension after the horizontality cut.
    pub horizontal_dim: usize,
    /// Dimension of the unit-norm family of planes.
    pub family_dim: usize,
    /// Basis of the horizontal solutions.
    pub members: Vec<LieVector<T>>,
}

pub fn y2<T: Real>() -> LieVector<T> {
    LieVector::i_diag(&[T::one(), T::lit(-2.0), T::one()])
}

pub fn lens_plane_family<T: Real>(
    params: &EschParams,
    a: &CMatrix<T>,
    ctx: &SymmetricPairContext<T>,
) -> Result<LensFamily<T>> {
    require_su3(ctx)?;
    if !dagger_cond(params) {
        return Err(Error::LocusMismatch(format!(
            "{params} does not satisfy q1 < q2 = p1 < p2 <= p3 < q3"
        )));
    }
    let v = vertical_vector(params, a)?;
    let off = a[(1, 1)].norm() + a[(2, 1)].norm();
    if off > T::lit(1e-10) {
        return Err(Error::NotOnLocus(off.to_f64().unwrap_or(f64::NAN)));
    }
    let y = y2();
    let solutions = flat_partners(ctx, &y, std::slice::from_ref(&y))?;
    let members = flat_partners(ctx, &y, &[y.clone(), v.clone()])?;
    Ok(LensFamily {
        y2_residual: y.inner0(&v)? / v.norm(),
        solution_dim: solutions.len(),
        horizontal_dim: members.len(),
        family_dim: members.len().saturating_sub(1),
        members,
    })
}

pub fn lens_plane_family_dim<T: Real>(
    params: &EschParams,
    a: &CMatrix<T>,
    ctx: &SymmetricPairContext<T>,
) -> Result<usize> {
    Ok(lens_plane_family(params, a, ctx)?.family_dim)
}

/// Signed permutation matrices in `SU(3)` (6 of them, one per permutation).
pub fn permutation_matrices<T: Real>() -> Vec<CMatrix<T>> {
    permutations(3)
        .into_iter()
        .map(|s| {
            let inversions = (0..3)
                .flat_map(|i| (i + 1..3).map(move |j| (i, j)))
                .filter(|&(i, j)| s[i] > s[j])
                .count();
            let sign = if inversions % 2 == 0 {
                T::one()
            } else {
                -T::one()
            };
            CMatrix::from_fn(3, |r, c| {
                if s[c] == r {
                    Complex::new(if c == 0 { sign } else { T::one() }, T::zero())
                } else {
                    Complex::new(T::zero(), T::zero())
                }
            })
        })
        .collect()
}

/// Real rotation by `theta` in the `(i, j)` coordinate plane.
pub fn givens<T: Real>(i: usize, j: usize, theta: T) -> CMatrix<T> {
    let mut g = CMatrix::identity(3);
    let (s, c) = theta.sin_cos();
    g[(i, i)] = Complex::new(c, T::zero());
    g[(j, j)] = Complex::new(c, T::zero());
    g[(i, j)] = Complex::new(-s, T::zero());
    g[(j, i)] = Complex::new(s, T::zero());
    g
}

#[derive(Debug, Clone, PartialEq)]
pub struct SearchOutcome<T> {
    pub evaluated: usize,
    pub found: Option<(CMatrix<T>, HorizontalityReport<T>)>,
}

/// Looks for a point with a horizontal flat plane along the geodesics
/// `s ↦ P G_ij(s π/2)` from each permutation matrix, sampled at `steps + 1`
/// points, bisecting any sign change of the `Y3` residual.
pub fn search_zero_plane<T: Real>(
    params: &EschParams,
    ctx: &SymmetricPairContext<T>,
    tol: &Tolerances<T>,
    steps: usize,
) -> Result<SearchOutcome<T>> {
    let mut evaluated = 0;
    let half_pi = T::FRAC_PI_2();
    let point = |perm: &CMatrix<T>, i: usize, j: usize, s: T| perm * &givens(i, j, s * half_pi);
    for perm in permutation_matrices::<T>() {
        for (i, j) in [(0, 1), (0, 2), (1, 2)] {
            let mut prev: Option<(T, T)> = None;
            for k in 0..=steps {
                let s = T::from_usize(k).unwrap() / T::from_usize(steps.max(1)).unwrap();
                let a = point(&perm, i, j, s);
                evaluated += 1;
                let (ok, rep) = has_horizontal_zero_plane(params, &a, ctx, tol)?;
                if ok {
                    return Ok(SearchOutcome {
                        evaluated,
                        found: Some((a, rep)),
                    });
                }
                let r = rep.y3_residual;
                if let Some((s0, r0)) = prev {
                    if r0 * r < T::zero() {
                        let (mut lo, mut hi, mut rlo) = (s0, s, r0);
                        for _ in 0..80 {
                            let mid = (lo + hi) * T::lit(0.5);
                            let rm = y3_residual(params, &point(&perm, i, j, mid));
                            if rm * rlo <= T::zero() {
                                hi = mid;
                            } else {
                                lo = mid;
                                rlo = rm;
                            }
                        }
                        let a = point(&perm, i, j, (lo + hi) * T::lit(0.5));
                        evaluated += 1;
                        let (ok, rep) = has_horizontal_zero_plane(params, &a, ctx, tol)?;
                        if ok {
                            return Ok(SearchOutcome {
                                evaluated,
                                found: Some((a, rep)),
                            });
                        }
                    }
                }
                prev = Some((s, r));
            }
        }
    }
    Ok(SearchOutcome {
        evaluated,
        found: None,
    })
}

/// Every parameter set with entries in `[-bound, bound]`, sorted, free and
/// with sorted `q2 ∈ {p1, p3}`.
pub fn boundary_actions(bound: i64) -> Vec<EschParams> {
    let mut out = Vec::new();
    for p1 in -bound..=bound {
        for p2 in p1..=bound {
            for p3 in p2..=bound {
                let sum = p1 + p2 + p3;
                for q1 in -bound..=bound {
                    for q2 in q1..=bound {
                        let q3 = sum - q1 - q2;
                        if q3 < q2 || q3.abs() > bound {
                            continue;
                        }
                        let e = EschParams {
                            p: [p1, p2, p3],
                            q: [q1, q2, q3],
                        };
                        if e.on_positive_boundary() && is_free(&e) {
                            out.push(e);
                        }
                    }
                }
            }
        }
    }
    out
}
