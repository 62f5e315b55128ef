use std::fmt::{Debug, Display};
use std::ops::{Add, Mul, Neg, Sub};

use super::multivector::{check_dim, Multivector, MAX_DIM};
use super::quaternion::Quaternion;

/// Common interface of `H` and `R_n` used by the slice machinery.
pub trait Algebra:
    Copy
    + Debug
    + Display
    + PartialEq
    + Send
    + Sync
    + 'static
    + Add<Output = Self>
    + Sub<Output = Self>
    + Neg<Output = Self>
    + Mul<Output = Self>
    + Mul<f64, Output = Self>
{
    /// Number of imaginary units.
    fn dim(&self) -> usize;
    fn scalar(n: usize, r: f64) -> Self;
    /// `re + sum_j im[j-1] e_j`; `im.len()` is the number of units.
    fn paravector(re: f64, im: &[f64]) -> Self;
    fn re(&self) -> f64;
    fn conj(&self) -> Self;
    fn norm_sqr(&self) -> f64;
    fn inv(&self) -> Option<Self>;
    /// Real part and vector part, or `None` when higher grades are present.
    fn paravector_parts(&self) -> Option<(f64, [f64; MAX_DIM])>;

    fn norm(&self) -> f64 {
        self.norm_sqr().sqrt()
    }

    fn zero_like(&self) -> Self {
        Self::scalar(self.dim(), 0.0)
    }

    fn scalar_like(&self, r: f64) -> Self {
        Self::scalar(self.dim(), r)
    }
}

impl Algebra for Quaternion {
    fn dim(&self) -> usize {
        3
    }

    fn scalar(n: usize, r: f64) -> Self {
        debug_assert_eq!(n, 3);
        Quaternion::real(r)
    }

    fn paravector(re: f64, im: &[f64]) -> Self {
        assert_eq!(im.len(), 3, "quaternion paravector needs three components");
        Quaternion::new(re, im[0], im[1], im[2])
    }

    fn re(&self) -> f64 {
        self.w
    }

    fn conj(&self) -> Self {
        Quaternion::conj(self)
    }

    fn norm_sqr(&self) -> f64 {
        Quaternion::norm_sqr(self)
    }

    fn inv(&self) -> Option<Self> {
        Quaternion::inv(self)
    }

    fn paravector_parts(&self) -> Option<(f64, [f64; MAX_DIM])> {
        Some((self.w, [self.x, self.y, self.z, 0.0, 0.0]))
    }
}

impl Algebra for Multivector {
    fn dim(&self) -> usize {
        Multivector::dim(self)
    }

    fn scalar(n: usize, r: f64) -> Self {
        check_dim(n).expect("unsupported Clifford dimension");
        Multivector::scalar(n, r).unwrap()
    }

    fn paravector(re: f64, im: &[f64]) -> Self {
        Multivector::paravector(re, im).expect("unsupported Clifford dimension")
    }

    fn re(&self) -> f64 {
        Multivector::re(self)
    }

    fn conj(&self) -> Self {
        Multivector::conj(self)
    }

    fn norm_sqr(&self) -> f64 {
        Multivector::norm_sqr(self)
    }

    fn inv(&self) -> Option<Self> {
        self.try_inv().ok()
    }

    fn paravector_parts(&self) -> Option<(f64, [f64; MAX_DIM])> {
        if !self.is_paravector(1e-12) {
            return None;
        }
        let mut v = [0.0; MAX_DIM];
        for (j, slot) in v.iter_mut().enumerate().take(Multivector::dim(self)) {
            *slot = self.coeff(1 << j);
        }
        Some((self.re(), v))
    }
}
