use thiserror::Error;

/// Errors raised across the crate.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("unsupported Clifford dimension {0}; expected 1, 3 or 5")]
    UnsupportedDimension(usize),

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("element is not a paravector (higher-grade part has norm {0:.3e})")]
    NotParavector(f64),

    #[error("element is not invertible")]
    NotInvertible,

    #[error("imaginary unit has norm {0}; expected 1")]
    NotUnit(f64),

    #[error("{0} lies on the branch cut (-inf, 0]")]
    BranchCut(String),

    #[error("x lies on the sphere [s]; the kernel is singular (distance {0:.3e})")]
    SingularSphere(f64),

    #[error("series diverges: |x| = {x_norm} >= |s| = {s_norm}")]
    Divergent { x_norm: f64, s_norm: f64 },

    #[error("point outside the domain of the function: {0}")]
    Domain(String),

    #[error("the sphere of x touches the contour (distance {0:.3e})")]
    SphereOnContour(f64),

    #[error("the contour does not enclose {0}")]
    NotEnclosed(String),

    #[error("the spectrum meets the contour (distance {0:.3e})")]
    SpectrumOnContour(f64),

    #[error("function is not intrinsic")]
    NonIntrinsic,

    #[error("holomorphic input violates g(conj z) = conj g(z) (defect {0:.3e})")]
    ParityViolation(f64),

    #[error("operator components do not commute (defect {0:.3e})")]
    NonCommuting(f64),

    #[error("operator component {0} has nonreal spectrum")]
    NonRealSpectrum(usize),

    #[error("scalar part T0 must vanish (norm {0:.3e})")]
    NonzeroScalarPart(f64),

    #[error("grid too coarse: {0}")]
    GridTooCoarse(String),

    #[error("linear solver failure: {0}")]
    Solver(String),

    #[error("residual {residual:.3e} exceeds tolerance {tolerance:.3e}")]
    Residual { residual: f64, tolerance: f64 },

    #[error("quadrature did not converge after {nodes} nodes (last change {change:.3e})")]
    NotConverged { nodes: usize, change: f64 },

    #[error("size {size} exceeds budget {budget}")]
    Budget { size: usize, budget: usize },

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("coefficient {0} is not bounded away from zero")]
    DegenerateCoefficient(usize),

    #[error("no decay certificate for coefficient kind {0}")]
    NoDecayCertificate(String),
}

pub type Result<T> = std::result::Result<T, Error>;
