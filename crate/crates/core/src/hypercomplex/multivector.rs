use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use faer::linalg::solvers::Solve;
use faer::Mat;

use crate::error::{Error, Result};

pub const MAX_DIM: usize = 5;
const MAX_BLADES: usize = 1 << MAX_DIM;

/// Element of the real Clifford algebra `R_n` (`e_i^2 = -1`), `n` in {1, 3, 5}.
///
/// Blades are indexed by bitmask: bit `i - 1` set means `e_i` is a factor.
#[derive(Clone, Copy, PartialEq)]
pub struct Multivector {
    n: usize,
    c: [f64; MAX_BLADES],
}

/// Sign of `e_A e_B` for blades given as bitmasks.
pub fn blade_sign(a: usize, b: usize) -> f64 {
    let mut swaps = 0u32;
    let mut x = a >> 1;
    while x != 0 {
        swaps += (x & b).count_ones();
        x >>= 1;
    }
    swaps += (a & b).count_ones();
    if swaps % 2 == 0 {
        1.0
    } else {
        -1.0
    }
}

pub fn check_dim(n: usize) -> Result<()> {
    match n {
        1 | 3 | 5 => Ok(()),
        _ => Err(Error::UnsupportedDimension(n)),
    }
}

impl Multivector {
    pub fn zero(n: usize) -> Result<Self> {
        check_dim(n)?;
        Ok(Self {
            n,
            c: [0.0; MAX_BLADES],
        })
    }

    pub fn scalar(n: usize, r: f64) -> Result<Self> {
        let mut m = Self::zero(n)?;
        m.c[0] = r;
        Ok(m)
    }

    /// `e_j` for `j` in `1..=n`.
    pub fn basis(n: usize, j: usize) -> Result<Self> {
        let mut m = Self::zero(n)?;
        if j == 0 || j > n {
            return Err(Error::InvalidInput(format!("basis index {j} outside 1..={n}")));
        }
        m.c[1 << (j - 1)] = 1.0;
        Ok(m)
    }

    /// `re + sum_j im[j-1] e_j`.
    pub fn paravector(re: f64, im: &[f64]) -> Result<Self> {
        let mut m = Self::zero(im.len())?;
        m.c[0] = re;
        for (j, &v) in im.iter().enumerate() {
            m.c[1 << j] = v;
        }
        Ok(m)
    }

    pub fn from_blades(n: usize, coeffs: &[f64]) -> Result<Self> {
        let mut m = Self::zero(n)?;
        if coeffs.len() != 1 << n {
            return Err(Error::DimensionMismatch {
                expected: 1 << n,
                found: coeffs.len(),
            });
        }
        m.c[..coeffs.len()].copy_from_slice(coeffs);
        Ok(m)
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn blades(&self) -> &[f64] {
        &self.c[..1 << self.n]
    }

    pub fn coeff(&self, mask: usize) -> f64 {
        self.c[mask]
    }

    pub fn set_coeff(&mut self, mask: usize, v: f64) {
        assert!(mask < 1 << self.n, "blade mask out of range");
        self.c[mask] = v;
    }

    pub fn re(&self) -> f64 {
        self.c[0]
    }

    pub fn vector_part(&self) -> Vec<f64> {
        (0..self.n).map(|j| self.c[1 << j]).collect()
    }

    pub fn grade_part(&self, k: u32) -> Self {
        let mut out = *self;
        for (mask, v) in out.c.iter_mut().enumerate().take(1 << self.n) {
            if mask.count_ones() != k {
                *v = 0.0;
            }
        }
        out
    }

    /// Norm of everything above grade 1.
    pub fn higher_grade_norm(&self) -> f64 {
        self.blades()
            .iter()
            .enumerate()
            .filter(|(m, _)| m.count_ones() > 1)
            .map(|(_, v)| v * v)
            .sum::<f64>()
            .sqrt()
    }

    pub fn is_paravector(&self, tol: f64) -> bool {
        self.higher_grade_norm() <= tol * (1.0 + self.norm())
    }

    /// Clifford conjugation; on paravectors `x0 + x` it gives `x0 - x`.
    pub fn conj(&self) -> Self {
        let mut out = *self;
        for (mask, v) in out.c.iter_mut().enumerate().take(1 << self.n) {
            let k = mask.count_ones();
            if (k * (k + 1) / 2) % 2 == 1 {
                *v = -*v;
            }
        }
        out
    }

    pub fn norm_sqr(&self) -> f64 {
        self.blades().iter().map(|v| v * v).sum()
    }

    pub fn norm(&self) -> f64 {
        self.norm_sqr().sqrt()
    }

    pub fn try_mul(&self, o: &Self) -> Result<Self> {
        if self.n != o.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                found: o.n,
            });
        }
        let mut out = Self {
            n: self.n,
            c: [0.0; MAX_BLADES],
        };
        let nb = 1 << self.n;
        for a in 0..nb {
            let ca = self.c[a];
            if ca == 0.0 {
                continue;
            }
            for b in 0..nb {
                let cb = o.c[b];
                if cb == 0.0 {
                    continue;
                }
                out.c[a ^ b] += blade_sign(a, b) * ca * cb;
            }
        }
        Ok(out)
    }

    fn check_same(&self, o: &Self) -> Result<()> {
        if self.n != o.n {
            Err(Error::DimensionMismatch {
                expected: self.n,
                found: o.n,
            })
        } else {
            Ok(())
        }
    }

    pub fn try_add(&self, o: &Self) -> Result<Self> {
        self.check_same(o)?;
        let mut out = *self;
        for i in 0..1 << self.n {
            out.c[i] += o.c[i];
        }
        Ok(out)
    }

    pub fn try_sub(&self, o: &Self) -> Result<Self> {
        self.try_add(&(-*o))
    }

    /// Inverse; paravectors use `conj / |x|^2`, other elements a linear solve.
    pub fn try_inv(&self) -> Result<Self> {
        let ns = self.norm_sqr();
        if ns == 0.0 || !ns.is_finite() {
            return Err(Error::NotInvertible);
        }
        if self.higher_grade_norm() == 0.0 {
            return Ok(self.conj() * (1.0 / ns));
        }
        let nb = 1 << self.n;
        // Column b of L holds the coefficients of self * e_b.
        let l = Mat::<f64>::from_fn(nb, nb, |r, b| {
            let a = r ^ b;
            blade_sign(a, b) * self.c[a]
        });
        let mut rhs = Mat::<f64>::zeros(nb, 1);
        rhs[(0, 0)] = 1.0;
        let sol = l.partial_piv_lu().solve(&rhs);
        let mut out = Self::zero(self.n)?;
        for i in 0..nb {
            out.c[i] = sol[(i, 0)];
        }
        if !out.norm().is_finite() {
            return Err(Error::NotInvertible);
        }
        let check = self.try_mul(&out)?;
        let mut one = Self::zero(self.n)?;
        one.c[0] = 1.0;
        if check.try_sub(&one)?.norm() > 1e-9 {
            return Err(Error::NotInvertible);
        }
        Ok(out)
    }
}

impl fmt::Debug for Multivector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Multivector(n={}, {:?})", self.n, self.blades())
    }
}

impl fmt::Display for Multivector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (mask, &v) in self.blades().iter().enumerate() {
            if v == 0.0 && mask != 0 {
                continue;
            }
            if !first {
                write!(f, " ")?;
            }
            first = false;
            if mask == 0 {
                write!(f, "{v}")?;
            } else {
                write!(f, "{v:+}e")?;
                for j in 0..self.n {
                    if mask & (1 << j) != 0 {
                        write!(f, "{}", j + 1)?;
                    }
                }
            }
        }
        Ok(())
    }
}

impl Add for Multivector {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        self.try_add(&o).expect("multivector dimension mismatch")
    }
}

impl AddAssign for Multivector {
    fn add_assign(&mut self, o: Self) {
        *self = *self + o;
    }
}

impl Sub for Multivector {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        self.try_sub(&o).expect("multivector dimension mismatch")
    }
}

impl Neg for Multivector {
    type Output = Self;
    fn neg(self) -> Self {
        self * -1.0
    }
}

impl Mul for Multivector {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        self.try_mul(&o).expect("multivector dimension mismatch")
    }
}

impl Mul<f64> for Multivector {
    type Output = Self;
    fn mul(mut self, r: f64) -> Self {
        for v in self.c.iter_mut() {
            *v *= r;
        }
        self
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn units_square_to_minus_one() {
        for n in [1, 3, 5] {
            for j in 1..=n {
                let e = Multivector::basis(n, j).unwrap();
                assert_eq!(e * e, Multivector::scalar(n, -1.0).unwrap());
            }
        }
    }

    #[test]
    fn anticommuting_units() {
        let e1 = Multivector::basis(3, 1).unwrap();
        let e2 = Multivector::basis(3, 2).unwrap();
        assert_eq!(e1 * e2, -(e2 * e1));
        assert_eq!((e1 * e2).coeff(0b011), 1.0);
    }

    #[test]
    fn associativity_on_random_elements() {
        let mut seed = 7u64;
        let mut next = || {
            seed = seed.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            ((seed >> 11) as f64 / (1u64 << 53) as f64) - 0.5
        };
        for n in [1, 3, 5] {
            let nb = 1 << n;
            let mk = |f: &mut dyn FnMut() -> f64| {
                let v: Vec<f64> = (0..nb).map(|_| f()).collect();
                Multivector::from_blades(n, &v).unwrap()
            };
            let (a, b, c) = (mk(&mut next), mk(&mut next), mk(&mut next));
            let lhs = (a * b) * c;
            let rhs = a * (b * c);
            assert!((lhs - rhs).norm() < 1e-13);
        }
    }

    #[test]
    fn general_inverse() {
        let v: Vec<f64> = (0..32).map(|i| ((i * 7 % 11) as f64) / 5.0 - 0.9).collect();
        let a = Multivector::from_blades(5, &v).unwrap();
        let inv = a.try_inv().unwrap();
        let one = Multivector::scalar(5, 1.0).unwrap();
        assert!((a * inv - one).norm() < 1e-10);
        assert!((inv * a - one).norm() < 1e-10);
    }

    #[test]
    fn unsupported_dimension() {
        assert_eq!(Multivector::zero(2), Err(Error::UnsupportedDimension(2)));
        assert_eq!(Multivector::zero(4), Err(Error::UnsupportedDimension(4)));
    }

    #[test]
    fn mismatch_is_an_error() {
        let a = Multivector::basis(3, 1).unwrap();
        let b = Multivector::basis(5, 1).unwrap();
        assert!(matches!(a.try_mul(&b), Err(Error::DimensionMismatch { .. })));
    }
}
