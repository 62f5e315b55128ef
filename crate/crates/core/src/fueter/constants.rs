use std::f64::consts::PI;

use serde::Serialize;

use crate::error::{Error, Result};

/// Normalisations attached to the Fueter–Sce map in dimension `n`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct FueterConstants {
    pub n: usize,
    pub h: usize,
    /// Constant of `Delta^h S_L^{-1}`.
    pub c_nh: f64,
    /// Constant of the F-kernel, `C_{n,(n-1)/2}`.
    pub gamma_n: f64,
    /// Surface area of the unit sphere in `R^{n+1}`.
    pub sigma_n: f64,
}

fn factorial(k: usize) -> f64 {
    (1..=k).map(|i| i as f64).product()
}

fn check_odd(n: usize) -> Result<()> {
    if n % 2 == 1 {
        Ok(())
    } else {
        Err(Error::UnsupportedDimension(n))
    }
}

/// `C_{n,h} = (-1)^h prod_{l=1}^h (2l) prod_{l=1}^h (n - (2l - 1))`.
pub fn c_nh(n: usize, h: usize) -> f64 {
    let mut c = if h % 2 == 0 { 1.0 } else { -1.0 };
    for l in 1..=h {
        c *= (2 * l) as f64 * (n as f64 - (2 * l - 1) as f64);
    }
    c
}

/// `gamma_n = (-1)^{(n-1)/2} 2^{n-1} [((n-1)/2)!]^2`, equal to `C_{n,(n-1)/2}`.
pub fn gamma(n: usize) -> Result<f64> {
    check_odd(n)?;
    let k = (n - 1) / 2;
    let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
    Ok(sign * 2f64.powi((n - 1) as i32) * factorial(k).powi(2))
}

/// `sigma_n = 2 pi^{(n+1)/2} / Gamma((n+1)/2)`.
pub fn sigma(n: usize) -> Result<f64> {
    check_odd(n)?;
    let k = (n + 1) / 2;
    Ok(2.0 * PI.powi(k as i32) / factorial(k - 1))
}

pub fn constants(n: usize, h: usize) -> Result<FueterConstants> {
    check_odd(n)?;
    Ok(FueterConstants {
        n,
        h,
        c_nh: c_nh(n, h),
        gamma_n: gamma(n)?,
        sigma_n: sigma(n)?,
    })
}
