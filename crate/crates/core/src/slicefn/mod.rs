//! Slice functions `f0(u, v) + J f1(u, v)`, their Cauchy kernels and contour integrals.

mod contour;
mod function;
mod holomorphic;
mod kernel;
mod residual;

pub use contour::{cauchy_integral, Contour};
pub use function::{Coeff, SliceFunction, SliceFunctionSpec, SliceKind, SliceParams};
pub use holomorphic::Holomorphic;
pub use kernel::{
    cauchy_kernel_left, cauchy_kernel_right_form, kernel_series, niven_residual, niven_solution, sphere_gap,
};
pub use residual::{cartesian_gradient, g_residual, representation_formula};
