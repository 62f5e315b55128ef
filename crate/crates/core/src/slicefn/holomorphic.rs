use num_complex::Complex64;

use crate::error::{Error, Result};

/// Holomorphic functions of one complex variable used to build slice functions.
#[derive(Clone, Debug, PartialEq)]
pub enum Holomorphic {
    /// `sum_k c_k z^k`, ascending coefficients.
    Polynomial(Vec<Complex64>),
    Exp,
    Sin,
    Cos,
    /// Principal power `z^alpha`, cut along `(-inf, 0]`.
    Power(f64),
    /// Ratio of real polynomials, ascending coefficients.
    Rational {
        numerator: Vec<f64>,
        denominator: Vec<f64>,
    },
    Product(Box<Holomorphic>, Box<Holomorphic>),
}

fn horner(c: &[Complex64], z: Complex64) -> (Complex64, Complex64) {
    let mut p = Complex64::new(0.0, 0.0);
    let mut dp = Complex64::new(0.0, 0.0);
    for &a in c.iter().rev() {
        dp = dp * z + p;
        p = p * z + a;
    }
    (p, dp)
}

fn horner_real(c: &[f64], z: Complex64) -> (Complex64, Complex64) {
    let mut p = Complex64::new(0.0, 0.0);
    let mut dp = Complex64::new(0.0, 0.0);
    for &a in c.iter().rev() {
        dp = dp * z + p;
        p = p * z + a;
    }
    (p, dp)
}

impl Holomorphic {
    pub fn monomial(m: u32) -> Self {
        let mut c = vec![Complex64::new(0.0, 0.0); m as usize + 1];
        c[m as usize] = Complex64::new(1.0, 0.0);
        Holomorphic::Polynomial(c)
    }

    pub fn real_polynomial(c: &[f64]) -> Self {
        Holomorphic::Polynomial(c.iter().map(|&a| Complex64::new(a, 0.0)).collect())
    }

    pub fn eval(&self, z: Complex64) -> Result<Complex64> {
        Ok(self.eval_with_derivative(z)?.0)
    }

    /// Value and complex derivative at `z`.
    pub fn eval_with_derivative(&self, z: Complex64) -> Result<(Complex64, Complex64)> {
        match self {
            Holomorphic::Polynomial(c) => Ok(horner(c, z)),
            Holomorphic::Exp => {
                let e = z.exp();
                Ok((e, e))
            }
            Holomorphic::Sin => Ok((z.sin(), z.cos())),
            Holomorphic::Cos => Ok((z.cos(), -z.sin())),
            Holomorphic::Power(alpha) => {
                if z.im == 0.0 && z.re <= 0.0 {
                    return Err(Error::Domain(format!("z^{alpha} at {z} on the branch cut")));
                }
                let p = z.powf(*alpha);
                Ok((p, p * *alpha / z))
            }
            Holomorphic::Rational {
                numerator,
                denominator,
            } => {
                let (p, dp) = horner_real(numerator, z);
                let (q, dq) = horner_real(denominator, z);
                let scale: f64 = denominator
                    .iter()
                    .enumerate()
                    .map(|(k, a)| a.abs() * z.norm().powi(k as i32))
                    .sum();
                if q.norm() <= 1e-14 * scale.max(f64::MIN_POSITIVE) {
                    return Err(Error::Domain(format!("pole of rational function at {z}")));
                }
                Ok((p / q, (dp * q - p * dq) / (q * q)))
            }
            Holomorphic::Product(a, b) => {
                let (fa, da) = a.eval_with_derivative(z)?;
                let (fb, db) = b.eval_with_derivative(z)?;
                Ok((fa * fb, da * fb + fa * db))
            }
        }
    }

    /// Whether `g(conj z) = conj g(z)` holds structurally.
    pub fn is_real_on_real_axis(&self) -> bool {
        match self {
            Holomorphic::Polynomial(c) => c.iter().all(|a| a.im == 0.0),
            Holomorphic::Product(a, b) => a.is_real_on_real_axis() && b.is_real_on_real_axis(),
            _ => true,
        }
    }

    /// Largest `|g(conj z) - conj g(z)|` over a fixed set of sample points.
    pub fn parity_defect(&self) -> f64 {
        let samples = [
            Complex64::new(0.3, 0.7),
            Complex64::new(-0.8, 0.4),
            Complex64::new(1.2, 1.5),
            Complex64::new(0.5, 0.05),
            Complex64::new(2.0, -0.6),
        ];
        samples
            .iter()
            .filter_map(|&z| {
                let a = self.eval(z.conj()).ok()?;
                let b = self.eval(z).ok()?;
                Some((a - b.conj()).norm() / (1.0 + b.norm()))
            })
            .fold(0.0, f64::max)
    }
}
