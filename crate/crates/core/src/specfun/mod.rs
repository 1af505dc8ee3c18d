//! Self-contained double-precision special functions: Airy Ai/Ai', complete
//! elliptic integrals via the AGM, Jacobi theta functions of complex
//! argument, and zeta'(-1).
//!
//! Everything here is a pure function of its arguments; the only state is
//! the write-once zeta'(-1) cache.

mod airy;
mod elliptic;
mod theta;
mod zeta;

pub(crate) use airy::airy_dd;
pub use airy::{airy, AiryValue};
pub use elliptic::{agm, elliptic_ke, EllipticKE};
pub use theta::{log_theta3, theta, theta_deriv, ThetaContext};
pub use zeta::zeta_prime_minus1;
