//! Fractional powers of gradient-type operators on box grids, the fractional heat
//! stepper, and checkers for the coefficient conditions.

mod coeff;
mod conditions;
mod config;
mod grid;
mod heat;
mod operator;
mod oracle;
mod power;
mod sparse;

pub use coeff::{box_inf, box_sup, box_sup_on, CoefficientField};
pub use config::{CoefficientConfig, RobinConfig, Truncation};
pub use conditions::{
    boundary_rows_proportionality, check_dirichlet_conditions, check_robin_conditions, check_unbounded_conditions,
    dirichlet_trig_threshold, estimate_trace_constant, flux_source_sup, poincare_dirichlet, poincare_neumann,
    BoundaryProportionality, ConditionReport, ConditionRow, TraceConstant,
};
pub use grid::{from_real, real_part, vector_part, BoxGrid, GridOperator, TensorEigen};
pub use heat::{classical_heat_operator, fractional_heat_operator, heat_step, Trajectory, DENSE_BUDGET};
pub use oracle::{
    commuting_oracle, consistency_identity_check, eigenspace_coefficients, imaginary_samples, qs_solve,
    resolvent_bound_probe, ConsistencyReport, ResolventProbe,
};
pub use operator::{power_norm, spectral_scales, vec_norm, QsFactor, QuaternionicOperator};
pub use power::{frac_power_apply, frac_power_apply_many, Control, Form, FracPower, QuadratureSpec};
pub use sparse::{left_mult_block, QsPattern, SparseQMatrix, SparseQsFactor};
