//! Bazaikin spaces `B_{q1..q5} = SU(5) // (Sp(2) · S^1)` with
//! `[A, z] * B = diag(z^q1, ..., z^q5) B diag(Â, z̄^q)`, `q = q1 + ... + q5`.
//!
//! The metric is the Cheeger deformation along `U(4) ⊂ SU(5)`. Vertical
//! vectors at `B` are `sp(2) ⊂ su(4)` together with
//! `v_B = Ad_{B*} Q - diag(0,0,0,0,iq)`. Every horizontal flat plane contains
//! `W1 = diag(i,i,i,i,-4i)` or some `W2 = Ad_k diag(2i,-3i,2i,-3i,2i)`, `k ∈ Sp(2)`.

use std::fmt;

use num_complex::Complex;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::algebra::haar::{orthonormalize_against, random_unit_vector, special_unitary_with_zero};
use crate::algebra::{elementary_symmetric, pair_gcd, CMatrix, LieVector};
use crate::cheeger::{
    complete_flat_plane, horizontality_defect, plane_zero_curvature_tol, PairKind,
    SymmetricPairContext, Tolerances,
};
use crate::error::{Error, Result};
use crate::linalg::hermitian_eigen;
use crate::scalar::Real;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawParams")]
pub struct BazParams {
    q: [i64; 5],
    exploratory: bool,
}

#[derive(Deserialize)]
struct RawParams {
    q: [i64; 5],
    #[serde(default)]
    exploratory: bool,
}

impl TryFrom<RawParams> for BazParams {
    type Error = Error;
    fn try_from(r: RawParams) -> Result<Self> {
        if r.exploratory {
            Ok(BazParams::exploratory(r.q))
        } else {
            BazParams::new(r.q)
        }
    }
}

impl fmt::Display for BazParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "q={:?}", self.q)
    }
}

impl BazParams {
    /// Errors unless every entry is odd.
    pub fn new(q: [i64; 5]) -> Result<Self> {
        if let Some(e) = q.iter().find(|x| *x % 2 == 0) {
            return Err(Error::InvalidParameters(format!(
                "entry {e} of {q:?} is even"
            )));
        }
        Ok(Self {
            q,
            exploratory: false,
        })
    }

    /// No parity check; for scans outside the free range.
    pub fn exploratory(q: [i64; 5]) -> Self {
        Self {
            q,
            exploratory: true,
        }
    }

    pub fn q(&self) -> [i64; 5] {
        self.q
    }

    pub fn q_sum(&self) -> i64 {
        self.q.iter().sum()
    }

    pub fn all_odd(&self) -> bool {
        self.q.iter().all(|x| x % 2 != 0)
    }

    pub fn negated(&self) -> Self {
        Self {
            q: self.q.map(|x| -x),
            exploratory: self.exploratory,
        }
    }

    pub fn permuted(&self, s: &[usize]) -> Self {
        Self {
            q: [0, 1, 2, 3, 4].map(|i| self.q[s[i]]),
            exploratory: self.exploratory,
        }
    }

    fn q_matrix<T: Real>(&self) -> LieVector<T> {
        LieVector::i_diag(&self.q.map(|x| T::from_i64(x).unwrap()))
    }
}

/// The 15 ways of choosing two disjoint unordered pairs from `0..5`.
pub fn disjoint_pair_pairs() -> Vec<([usize; 2], [usize; 2])> {
    let mut out = Vec::with_capacity(15);
    for a in 0..5 {
        for b in a + 1..5 {
            for c in 0..5 {
                for d in c + 1..5 {
                    if c > a && ![a, b].contains(&c) && ![a, b].contains(&d) {
                        out.push(([a, b], [c, d]));
                    }
                }
            }
        }
    }
    out
}

/// `gcd(q_i + q_j, q_k + q_l) = 2` for all disjoint pairs `{i,j}`, `{k,l}`.
pub fn is_free(params: &BazParams) -> Result<bool> {
    if !params.all_odd() {
        return Err(Error::InvalidParameters(format!(
            "{params} has an even entry"
        )));
    }
    let q = params.q;
    Ok(disjoint_pair_pairs()
        .iter()
        .all(|([a, b], [c, d])| pair_gcd(q[*a] + q[*b], q[*c] + q[*d]) == 2))
}

/// `A = S + T j ∈ Sp(2)`, stored through the complex `2x2` blocks.
#[derive(Debug, Clone, PartialEq)]
pub struct Sp2Element<T> {
    pub s: CMatrix<T>,
    pub t: CMatrix<T>,
}

/// `J(a; b) = (-b̄; ā)` on `C^4 = H^2`.
pub fn quaternionic_j<T: Real>(v: &[Complex<T>]) -> Vec<Complex<T>> {
    vec![-v[2].conj(), -v[3].conj(), v[0].conj(), v[1].conj()]
}

impl<T: Real> Sp2Element<T> {
    /// Errors unless `(S T; -T̄ S̄)` is unitary.
    pub fn new(s: CMatrix<T>, t: CMatrix<T>) -> Result<Self> {
        if s.dim() != 2 || t.dim() != 2 {
            return Err(Error::DimensionMismatch {
                expected: 2,
                got: if s.dim() != 2 { s.dim() } else { t.dim() },
            });
        }
        let e = Self { s, t };
        let dev = e.matrix4().special_unitary_deviation();
        if dev > T::group_tol() {
            return Err(Error::NotSpecialUnitary(dev.to_f64().unwrap_or(f64::NAN)));
        }
        Ok(e)
    }

    pub fn identity() -> Self {
        Self {
            s: CMatrix::identity(2),
            t: CMatrix::zeros(2),
        }
    }

    /// `Â = (S T; -T̄ S̄)`.
    pub fn matrix4(&self) -> CMatrix<T> {
        CMatrix::from_fn(4, |r, c| match (r < 2, c < 2) {
            (true, true) => self.s[(r, c)],
            (true, false) => self.t[(r, c - 2)],
            (false, true) => -self.t[(r - 2, c)].conj(),
            (false, false) => self.s[(r - 2, c - 2)].conj(),
        })
    }

    /// `diag(Â, 1) ∈ SU(5)`.
    pub fn embed(&self) -> CMatrix<T> {
        self.matrix4().block_diag(&CMatrix::identity(1))
    }

    /// The element whose first two columns are `a` and `c`; needs `c ⊥ a, J a`.
    fn from_columns(a: &[Complex<T>], c: &[Complex<T>]) -> Self {
        let ja = quaternionic_j(a);
        let jc = quaternionic_j(c);
        let cols = [a.to_vec(), c.to_vec(), ja, jc];
        Self {
            s: CMatrix::from_fn(2, |r, k| cols[k][r]),
            t: CMatrix::from_fn(2, |r, k| cols[k + 2][r]),
        }
    }

    /// Some element whose second column is the unit vector `c`.
    pub fn with_second_column(c: &[Complex<T>]) -> Self {
        let frame = vec![c.to_vec(), quaternionic_j(c)];
        let a = (0..4)
            .find_map(|i| {
                let e: Vec<Complex<T>> = (0..4)
                    .map(|k| Complex::new(if k == i { T::one() } else { T::zero() }, T::zero()))
                    .collect();
                orthonormalize_against(e, &frame)
            })
            .expect("C^4 is not spanned by two vectors");
        Self::from_columns(&a, c)
    }

    /// Haar-distributed element (quaternionic Gram-Schmidt on Gaussian columns).
    pub fn random<R: Rng + ?Sized>(rng: &mut R) -> Self {
        let a: Vec<Complex<T>> = random_unit_vector(4, rng);
        let frame = vec![a.clone(), quaternionic_j(&a)];
        loop {
            if let Some(c) = orthonormalize_against(random_unit_vector(4, rng), &frame) {
                return Self::from_columns(&a, &c);
            }
        }
    }
}

/// `diag((S T; -T̄ S̄), 1)`; errors unless `S + T j` is quaternionic-unitary.
pub fn sp2_embed<T: Real>(s: &CMatrix<T>, t: &CMatrix<T>) -> Result<CMatrix<T>> {
    Ok(Sp2Element::new(s.clone(), t.clone())?.embed())
}

/// Orthonormal basis of `sp(2)` inside `su(5)` (upper-left block).
pub fn sp2_basis<T: Real>() -> Vec<LieVector<T>> {
    let z = Complex::new(T::zero(), T::zero());
    let build = |a: [[Complex<T>; 2]; 2], b: [[Complex<T>; 2]; 2]| {
        let mut m = CMatrix::zeros(5);
        for i in 0..2 {
            for j in 0..2 {
                m[(i, j)] = a[i][j];
                m[(i, j + 2)] = b[i][j];
                m[(i + 2, j)] = -b[i][j].conj();
                m[(i + 2, j + 2)] = a[i][j].conj();
            }
        }
        let n = m.frobenius();
        LieVector::Matrix(m.scale(T::one() / n))
    };
    let one = Complex::new(T::one(), T::zero());
    let im = Complex::new(T::zero(), T::one());
    let mut out = Vec::with_capacity(10);
    // A ∈ u(2), B = 0
    out.push(build([[im, z], [z, z]], [[z; 2]; 2]));
    out.push(build([[z, z], [z, im]], [[z; 2]; 2]));
    out.push(build([[z, one], [-one, z]], [[z; 2]; 2]));
    out.push(build([[z, im], [im, z]], [[z; 2]; 2]));
    // A = 0, B complex symmetric
    for unit in [one, im] {
        out.push(build([[z; 2]; 2], [[unit, z], [z, z]]));
        out.push(build([[z; 2]; 2], [[z, z], [z, unit]]));
        out.push(build([[z; 2]; 2], [[z, unit], [unit, z]]));
    }
    out
}

/// `v_B = Ad_{B*} Q - diag(0,0,0,0,iq)`.
pub fn vertical_vector<T: Real>(params: &BazParams, a: &CMatrix<T>) -> Result<LieVector<T>> {
    if a.dim() != 5 {
        return Err(Error::DimensionMismatch {
            expected: 5,
            got: a.dim(),
        });
    }
    a.check_special_unitary()?;
    let mut d = [T::zero(); 5];
    d[4] = T::from_i64(params.q_sum()).unwrap();
    params
        .q_matrix()
        .ad(&a.adjoint())?
        .sub(&LieVector::i_diag(&d))
}

/// `sum_l |a_l5|^2 q_l - q`; zero exactly when `W1` is horizontal at `A`.
pub fn w1_residual<T: Real>(params: &BazParams, a: &CMatrix<T>) -> T {
    let s = (0..5).fold(T::zero(), |acc, l| {
        acc + a[(l, 4)].norm_sqr() * T::from_i64(params.q[l]).unwrap()
    });
    s - T::from_i64(params.q_sum()).unwrap()
}

pub fn w1<T: Real>() -> LieVector<T> {
    LieVector::i_diag(&[T::one(), T::one(), T::one(), T::one(), T::lit(-4.0)])
}

/// `Ad_k diag(2i,-3i,2i,-3i,2i)`.
pub fn w2<T: Real>(k: &Sp2Element<T>) -> LieVector<T> {
    let two = T::lit(2.0);
    let three = T::lit(-3.0);
    LieVector::i_diag(&[two, three, two, three, two])
        .ad(&k.embed())
        .expect("5x5")
}

/// `g(k) = sum_l (|(Ak)_l2|^2 + |(Ak)_l4|^2) q_l` from its definition.
pub fn w2_value<T: Real>(params: &BazParams, a: &CMatrix<T>, k: &Sp2Element<T>) -> T {
    let ak = a * &k.embed();
    (0..5).fold(T::zero(), |acc, l| {
        acc + (ak[(l, 1)].norm_sqr() + ak[(l, 3)].norm_sqr()) * T::from_i64(params.q[l]).unwrap()
    })
}

/// The Hermitian form on `C^4` with `g(k) = c* H c`, `c` the second column of `Â`:
/// `H = M + Ωᵀ M̄ Ω` with `M = [A* diag(q) A]_{4x4}` and `J c = Ω c̄`.
pub fn w2_form<T: Real>(params: &BazParams, a: &CMatrix<T>) -> CMatrix<T> {
    let m = CMatrix::from_fn(4, |r, c| {
        (0..5).fold(Complex::new(T::zero(), T::zero()), |acc, l| {
            acc + a[(l, r)].conj() * a[(l, c)] * T::from_i64(params.q[l]).unwrap()
        })
    });
    // (Ωᵀ M̄ Ω)_{rc} with Ω = [[0,-I],[I,0]]
    let omega = |r: usize, c: usize| -> T {
        match (r, c) {
            (0, 2) | (1, 3) => -T::one(),
            (2, 0) | (3, 1) => T::one(),
            _ => T::zero(),
        }
    };
    CMatrix::from_fn(4, |r, c| {
        let mut s = m[(r, c)];
        for i in 0..4 {
            for j in 0..4 {
                let w = omega(i, r) * omega(j, c);
                if w != T::zero() {
                    s = s + m[(i, j)].conj() * w;
                }
            }
        }
        s
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct W2Range<T> {
    pub min: T,
    pub max: T,
    pub argmin: Sp2Element<T>,
    pub argmax: Sp2Element<T>,
}

/// Extremes of `g` over `Sp(2)`. `Sp(2)` moves the second column of `Â`
/// transitively over the unit sphere of `C^4`, so these are the extreme
/// eigenvalues of [`w2_form`].
pub fn w2_range<T: Real>(params: &BazParams, a: &CMatrix<T>) -> W2Range<T> {
    let (vals, vecs) = hermitian_eigen(&w2_form(params, a));
    W2Range {
        min: vals[0],
        max: vals[3],
        argmin: Sp2Element::with_second_column(&vecs[0]),
        argmax: Sp2Element::with_second_column(&vecs[3]),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum WitnessKind {
    W1,
    W2,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Witness<T> {
    pub point: CMatrix<T>,
    pub kind: WitnessKind,
    /// The `Sp(2)` element rotating `W2`.
    pub k: Option<Sp2Element<T>>,
    pub x: LieVector<T>,
    pub y: LieVector<T>,
    pub validated: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct HorizontalityReport<T> {
    pub w1_residual: T,
    pub w2_min: T,
    pub w2_max: T,
    pub witness: Option<Witness<T>>,
}

/// All vertical directions at `A`: `v_A` followed by the `sp(2)` basis.
pub fn vertical_space<T: Real>(params: &BazParams, a: &CMatrix<T>) -> Result<Vec<LieVector<T>>> {
    let mut out = vec![vertical_vector(params, a)?];
    out.extend(sp2_basis());
    Ok(out)
}

/// Flatness plus horizontality of both vectors against `v_A` and `sp(2)`.
pub fn validate_plane<T: Real>(
    ctx: &SymmetricPairContext<T>,
    x: &LieVector<T>,
    y: &LieVector<T>,
    vertical: &[LieVector<T>],
    tol: &Tolerances<T>,
) -> Result<bool> {
    let flat = plane_zero_curvature_tol(ctx, x, y, tol.bracket)?;
    let hx = horizontality_defect(ctx, x, vertical)?;
    let hy = horizontality_defect(ctx, y, vertical)?;
    Ok(flat && hx <= tol.horiz && hy <= tol.horiz)
}

/// Whether a horizontal flat plane exists at `A`: `W1` horizontal or
/// `min g ≤ 0 ≤ max g`; a witness plane is built and re-validated when it does.
pub fn has_horizontal_zero_plane<T: Real>(
    params: &BazParams,
    a: &CMatrix<T>,
    ctx: &SymmetricPairContext<T>,
    tol: &Tolerances<T>,
) -> Result<(bool, HorizontalityReport<T>)> {
    if ctx.pair != PairKind::Su5U4 {
        return Err(Error::RepresentationMismatch);
    }
    let vertical = vertical_space(params, a)?;
    let r1 = w1_residual(params, a);
    let range = w2_range(params, a);
    let mut report = HorizontalityReport {
        w1_residual: r1,
        w2_min: range.min,
        w2_max: range.max,
        witness: None,
    };
    let (kind, k, y) = if r1.abs() <= tol.margin {
        (WitnessKind::W1, None, w1())
    } else if range.min <= tol.margin && range.max >= -tol.margin {
        let k = zero_of_form(params, a, &range);
        let y = w2(&k);
        (WitnessKind::W2, Some(k), y)
    } else {
        return Ok((false, report));
    };
    if let Some(x) = complete_flat_plane(ctx, &y, &vertical)? {
        let validated = validate_plane(ctx, &x, &y, &vertical, tol)?;
        report.witness = Some(Witness {
            point: a.clone(),
            kind,
            k,
            x,
            y,
            validated,
        });
    }
    Ok((true, report))
}

fn zero_of_form<T: Real>(params: &BazParams, a: &CMatrix<T>, r: &W2Range<T>) -> Sp2Element<T> {
    if r.min >= T::zero() {
        return r.argmin.clone();
    }
    if r.max <= T::zero() {
        return r.argmax.clone();
    }
    let h = w2_form(params, a);
    let (_, vecs) = hermitian_eigen(&h);
    let (lo, hi) = (&vecs[0], &vecs[3]);
    let c2 = r.max / (r.max - r.min);
    let (c, s) = (c2.sqrt(), (T::one() - c2).max(T::zero()).sqrt());
    let u: Vec<Complex<T>> = lo.iter().zip(hi).map(|(x, y)| *x * c + *y * s).collect();
    Sp2Element::with_second_column(&u)
}

/// Random `A ∈ SU(5)` with `a55 = 0`.
pub fn a55_locus_point<T: Real, R: Rng + ?Sized>(rng: &mut R) -> Result<CMatrix<T>> {
    special_unitary_with_zero(5, 4, 4, rng)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum BazClass {
    Positive,
    QuasiPositive,
    #[serde(rename = "ALMOST_POSITIVE_11111m1")]
    AlmostPositive11111m1,
    BoundaryFamily,
    UnknownNonnegative,
}

impl BazClass {
    pub fn as_str(self) -> &'static str {
        match self {
            BazClass::Positive => "POSITIVE",
            BazClass::QuasiPositive => "QUASI_POSITIVE",
            BazClass::AlmostPositive11111m1 => "ALMOST_POSITIVE_11111m1",
            BazClass::BoundaryFamily => "BOUNDARY_FAMILY",
            BazClass::UnknownNonnegative => "UNKNOWN_NONNEGATIVE",
        }
    }
}

impl fmt::Display for BazClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BazClassification {
    pub class: BazClass,
    /// Some signed reordering has four positive entries.
    pub quasi_positive: bool,
    /// `n` when equivalent to `(1,1,1,n,-n)`.
    pub boundary_n: Option<i64>,
    pub note: String,
}

fn all_pair_sums_positive(q: &[i64; 5]) -> bool {
    (0..5).all(|i| (i + 1..5).all(|j| q[i] + q[j] > 0))
}

/// `n > 0` when `q` is, up to sign and order, `(1,1,1,n,-n)` or `(1,1,-3,n,-n)`.
pub fn boundary_family_normalize(params: &BazParams) -> Option<i64> {
    let q = params.q;
    for i in 0..5 {
        for j in i + 1..5 {
            if q[i] + q[j] != 0 {
                continue;
            }
            let mut rest: Vec<i64> = (0..5).filter(|&k| k != i && k != j).map(|k| q[k]).collect();
            for sign in [1, -1] {
                rest.iter_mut().for_each(|x| *x *= sign);
                rest.sort_unstable();
                if rest == [1, 1, 1] || rest == [-3, 1, 1] {
                    return Some(q[i].abs());
                }
            }
        }
    }
    None
}

/// Curvature class up to reordering and the sign flip `q ↦ -q`. Precedence:
/// positive, then the almost positive `(1,1,1,1,-1)`, then quasi-positive,
/// then the boundary family. The flags record the secondary memberships.
pub fn classify_curvature(params: &BazParams) -> Result<BazClassification> {
    if !is_free(params)? {
        return Err(Error::NotFree(params.to_string()));
    }
    let q = params.q;
    let boundary_n = boundary_family_normalize(params);
    let quasi_positive = {
        let pos = q.iter().filter(|&&x| x > 0).count();
        let neg = q.iter().filter(|&&x| x < 0).count();
        pos >= 4 || neg >= 4
    };
    let (class, note) = if all_pair_sums_positive(&q) {
        (BazClass::Positive, "all pair sums positive".to_string())
    } else if all_pair_sums_positive(&params.negated().q) {
        (
            BazClass::Positive,
            "all pair sums positive after q -> -q".to_string(),
        )
    } else if boundary_n == Some(1) {
        (
            BazClass::AlmostPositive11111m1,
            "equivalent to (1,1,1,1,-1)".to_string(),
        )
    } else if quasi_positive {
        let extra = boundary_n
            .map(|n| format!(", boundary family n = {n}"))
            .unwrap_or_default();
        (
            BazClass::QuasiPositive,
            format!("four entries of one sign{extra}"),
        )
    } else if let Some(n) = boundary_n {
        (
            BazClass::BoundaryFamily,
            format!("equivalent to (1,1,1,{n},-{n})"),
        )
    } else {
        (
            BazClass::UnknownNonnegative,
            "no criterion applies".to_string(),
        )
    };
    Ok(BazClassification {
        class,
        quasi_positive,
        boundary_n,
        note,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct InvariantRecord {
    /// Order of the torsion group in degrees 6 and 8.
    pub s: i128,
    /// First Pontryagin class.
    pub p1: i128,
}

/// `(q1, ..., q5, -sum q)`.
pub fn extended_tuple(params: &BazParams) -> [i128; 6] {
    let q = params.q.map(i128::from);
    [q[0], q[1], q[2], q[3], q[4], -q.iter().sum::<i128>()]
}

/// `s = |σ3| / 8` and `p1 = -σ2` of the extended tuple. Errors when `σ3` is
/// not divisible by 8.
pub fn invariants(params: &BazParams) -> Result<InvariantRecord> {
    let e = extended_tuple(params);
    let s2 = elementary_symmetric(&e, 2)?;
    let s3 = elementary_symmetric(&e, 3)?;
    if s3 % 8 != 0 {
        return Err(Error::Sigma3NotDivisible(s3));
    }
    Ok(InvariantRecord {
        s: s3.abs() / 8,
        p1: -s2,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FamilyRow {
    pub n: i64,
    pub free: bool,
    pub class: BazClassification,
    pub s: i128,
    pub p1: i128,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FamilyTable {
    pub rows: Vec<FamilyRow>,
    /// No two rows share `p1`.
    pub p1_distinct: bool,
}

/// Rows for `(1,1,1,n,-n)`, `n = 1, 3, ..., n_max`.
pub fn family_table(n_max: i64) -> Result<FamilyTable> {
    if n_max < 1 || n_max % 2 == 0 {
        return Err(Error::InvalidParameters(format!(
            "n_max = {n_max} must be a positive odd integer"
        )));
    }
    let mut rows = Vec::new();
    for n in (1..=n_max).step_by(2) {
        let params = BazParams::new([1, 1, 1, n, -n])?;
        let inv = invariants(&params)?;
        rows.push(FamilyRow {
            n,
            free: is_free(&params)?,
            class: classify_curvature(&params)?,
            s: inv.s,
            p1: inv.p1,
        });
    }
    let mut p1s: Vec<i128> = rows.iter().map(|r| r.p1).collect();
    p1s.sort_unstable();
    p1s.dedup();
    let p1_distinct = p1s.len() == rows.len();
    Ok(FamilyTable { rows, p1_distinct })
}
