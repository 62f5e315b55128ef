//! The Fueter–Sce map: Laplacian powers of the Cauchy kernel, the F-kernel and
//! monogenic checks.

mod constants;
mod kernels;
mod map;

pub use constants::{c_nh, constants, gamma, sigma, FueterConstants};
pub use kernels::{f_kernel, laplacian_power_kernel, monogenic_kernel};
pub use map::{dirac_residual, fueter_integral, laplacian_fd, tfs1, AxialMonogenicSample};
