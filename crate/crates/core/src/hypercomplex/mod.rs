//! Quaternions, real Clifford algebras `R_n` and their slice structure.

mod algebra;
mod multivector;
mod quaternion;
mod sphere;

pub use algebra::Algebra;
pub use multivector::{blade_sign, Multivector, MAX_DIM};
pub use quaternion::Quaternion;
pub use sphere::{qpow, slice_decompose, ImaginaryUnit, Sphere, SphereSet};
