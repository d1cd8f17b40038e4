//! Quaternions, complex matrices, Lie vectors, Haar sampling and exact integer helpers.

pub mod haar;
pub mod integer;
pub mod lie;
pub mod matrix;
pub mod quaternion;

pub use haar::{haar_u, haar_unitary};
pub use integer::{elementary_symmetric, pair_gcd, permutations};
pub use lie::{bracket, inner0, su_basis, LieVector};
pub use matrix::CMatrix;
pub use quaternion::{quat_ad, Quaternion};
