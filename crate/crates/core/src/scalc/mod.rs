//! S-spectrum, S-resolvents and the S-, F- and monogenic functional calculi
//! for quaternionic matrices.

mod calculus;
mod fcalc;
mod monogenic;
mod qmatrix;
mod spectrum;

pub use calculus::{
    eigen_relation_residual, intrinsic_eigen_oracle, product_rule_defect, riesz_dunford_oracle,
    s_functional_calculus, s_functional_calculus_right, s_resolvent_left, s_resolvent_right,
    s_resolvent_series_left, EigenDecomposition,
};
pub use fcalc::{f_functional_calculus, f_resolvent, ParavectorOpTuple};
pub use monogenic::{joint_eigen_oracle, monogenic_functional_calculus, monogenic_resolvent, SphereQuadrature};
pub use qmatrix::{MatrixFile, QMatrix};
pub use spectrum::{qs_matrix, qs_matrix_uv, qs_sigma_min, right_eigenpairs, s_spectrum, spectrum_scan, ScanReport};
