//! Fredholm determinants of the Airy and sine kernels by Nystrom
//! discretization on Gauss-Legendre nodes.

mod kernel;
mod nystrom;
mod quadrature;

pub use kernel::{airy_kernel, sine_kernel, KernelKind, KernelSpec};
pub use nystrom::{
    det_gap_sine, det_gap_sine_opts, det_one_gap_airy, det_one_gap_airy_opts, det_two_gap,
    det_two_gap_opts, nystrom_logdet, truncate_infinite, LogDetResult, NystromOptions,
};
pub use quadrature::{gauss_legendre, QuadratureRule};
