//! Curvature classification and zero-curvature-plane verification for
//! Eschenburg spaces, Bazaikin spaces and torus quotients of `S^3 x S^3`,
//! all with Cheeger-deformed left-invariant metrics.
//!
//! Floating point routines are generic over [`Real`] (`f32` or `f64`); the
//! aliases below fix `f64`, which is what the verification campaigns use.
//! Freeness and topological invariants are exact integer computations.

pub mod algebra;
pub mod bazaikin;
pub mod cheeger;
pub mod error;
pub mod eschenburg;
pub mod linalg;
pub mod scalar;
pub mod torus;

pub use error::{Error, Result};
pub use scalar::Real;

pub type Quat = algebra::Quaternion<f64>;
pub type CMat = algebra::CMatrix<f64>;
pub type Lie = algebra::LieVector<f64>;
pub type Ctx = cheeger::SymmetricPairContext<f64>;
pub type Complex64 = num_complex::Complex<f64>;
