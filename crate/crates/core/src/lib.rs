//! Slice hyperholomorphic functional calculi.
//!
//! The crate covers quaternions and the real Clifford algebras `R_1`, `R_3`, `R_5`,
//! slice functions and their Cauchy kernels, the Fueter–Sce map, the S-, F- and
//! monogenic functional calculi for quaternionic matrices, and fractional powers
//! of gradient-type grid operators with a fractional heat stepper.

pub mod error;
pub mod hypercomplex;
pub mod slicefn;
pub mod fueter;
pub mod scalc;
pub mod fracpow;
pub mod cli;

pub use error::{Error, Result};
