use std::f64::consts::PI;

use faer::Side;
use serde::Serialize;

use super::grid::{from_real, vector_part, BoxGrid, GridOperator};
use super::operator::{power_norm, vec_norm, QuaternionicOperator};
use super::power::{frac_power_apply, QuadratureSpec};
use crate::error::{Error, Result};
use crate::hypercomplex::{qpow, ImaginaryUnit, Quaternion};

/// Solve `Q_s(T) u = F` and verify `||Q_s(T) u - F|| <= tol ||F||`.
pub fn qs_solve<O: QuaternionicOperator + ?Sized>(
    op: &O,
    s: &Quaternion,
    f: &[Quaternion],
    tol: f64,
) -> Result<Vec<Quaternion>> {
    if s.norm() == 0.0 {
        return Err(Error::InvalidInput("s = 0 is excluded from the integration path".into()));
    }
    if f.len() != op.dim() {
        return Err(Error::DimensionMismatch {
            expected: op.dim(),
            found: f.len(),
        });
    }
    let fac = op.factor_qs(s.w, s.norm_sqr())?;
    let qs = |u: &[Quaternion]| -> Vec<Quaternion> {
        let tu = op.apply(u);
        let ttu = op.apply(&tu);
        (0..u.len())
            .map(|i| ttu[i] - tu[i] * (2.0 * s.w) + u[i] * s.norm_sqr())
            .collect()
    };
    let fnorm = vec_norm(f);
    if fnorm == 0.0 {
        return Ok(vec![Quaternion::ZERO; f.len()]);
    }
    let mut u = fac.solve(f);
    let mut residual = 0.0;
    for _ in 0..3 {
        let r: Vec<Quaternion> = qs(&u).iter().zip(f).map(|(a, b)| *b - *a).collect();
        residual = vec_norm(&r) / fnorm;
        if residual <= tol {
            return Ok(u);
        }
        let du = fac.solve(&r);
        for (a, b) in u.iter_mut().zip(du) {
            *a += b;
        }
    }
    Err(Error::Residual {
        residual,
        tolerance: tol,
    })
}

/// The scalar integrals `a(mu)`, `b(mu)` with `P_alpha(T) = a T - b mu` on the
/// eigenspace `T^2 = mu`, computed by trapezoid quadrature in `u = ln t` with doubling.
pub fn eigenspace_coefficients(mu: f64, alpha: f64, plane: &ImaginaryUnit) -> Result<(f64, f64)> {
    if !(mu > 0.0) {
        return Err(Error::InvalidInput("eigenvalue must be positive".into()));
    }
    let i = plane.to_algebra::<Quaternion>();
    let integrand = |u: f64| -> Result<(f64, f64)> {
        let t = u.exp();
        let mut r = Quaternion::ZERO;
        let mut p = Quaternion::ZERO;
        for tt in [t, -t] {
            let s = -(i * tt);
            let sp = qpow(&s, alpha - 1.0)?;
            p += sp;
            r += s.conj() * sp;
        }
        let w = t / (mu + t * t) / (2.0 * PI);
        Ok((-r.w * w, -p.w * w))
    };
    let centre = 0.5 * mu.ln();
    // The a-integrand decays like t^(alpha - 1) in u = ln t, the b-integrand like t^(alpha - 2).
    let (lo, hi) = (centre - 37.0 / alpha, centre + 37.0 / (1.0 - alpha));
    let mut n = ((hi - lo).ceil() as usize).max(16);
    let mut h = (hi - lo) / n as f64;
    let mut sum = (0.0, 0.0);
    for k in 0..=n {
        let (x, y) = integrand(lo + k as f64 * h)?;
        sum.0 += x;
        sum.1 += y;
    }
    let mut prev = (sum.0 * h, sum.1 * h);
    let mut last_change = f64::INFINITY;
    loop {
        for k in 0..n {
            let (x, y) = integrand(lo + (k as f64 + 0.5) * h)?;
            sum.0 += x;
            sum.1 += y;
        }
        n *= 2;
        h *= 0.5;
        let cur = (sum.0 * h, sum.1 * h);
        let change = (cur.0 - prev.0).abs().max((cur.1 - prev.1).abs() * mu.sqrt());
        let scale = cur.0.abs().max(cur.1.abs() * mu.sqrt());
        // Stop at convergence or once rounding dominates the change.
        if change <= 1e-15 * scale || (change >= last_change && change <= 1e-11 * scale) {
            return Ok(cur);
        }
        last_change = change;
        if n > 1 << 20 {
            return Err(Error::NotConverged { nodes: n, change });
        }
        prev = cur;
    }
}

/// `P_alpha(T_h) v` for constant coefficients by reduction to the eigenspaces of `T_h^2`.
pub fn commuting_oracle(op: &GridOperator, v: &[Quaternion], alpha: f64) -> Result<Vec<Quaternion>> {
    let c = op
        .constant_coefficients()
        .ok_or_else(|| Error::InvalidInput("the commuting oracle requires constant coefficients".into()))?;
    if !(alpha > 0.0 && alpha < 1.0) {
        return Err(Error::InvalidInput(format!("alpha = {alpha}; alpha in (0,1) required")));
    }
    let grid = op.grid();
    if v.len() != grid.len() {
        return Err(Error::DimensionMismatch {
            expected: grid.len(),
            found: v.len(),
        });
    }
    let te = grid.tensor_eigen(c)?;
    let coeffs = te.project(v);
    let plane = ImaginaryUnit::basis(3, 1)?;
    let scale = (0..te.len()).map(|k| te.value(k)).fold(0.0, f64::max);
    let mut ca = vec![Quaternion::ZERO; coeffs.len()];
    let mut cb = vec![Quaternion::ZERO; coeffs.len()];
    let mut cache: Vec<(f64, (f64, f64))> = Vec::new();
    for k in 0..coeffs.len() {
        let mu = te.value(k);
        if mu <= 1e-12 * scale.max(1.0) {
            continue;
        }
        let ab = match cache.iter().find(|(m, _)| (m - mu).abs() <= 1e-13 * mu) {
            Some((_, ab)) => *ab,
            None => {
                let ab = eigenspace_coefficients(mu, alpha, &plane)?;
                cache.push((mu, ab));
                ab
            }
        };
        ca[k] = coeffs[k] * ab.0;
        cb[k] = coeffs[k] * (ab.1 * mu);
    }
    let ta = op.apply(&te.synthesize(&ca));
    let b = te.synthesize(&cb);
    Ok(ta.iter().zip(&b).map(|(x, y)| *x - *y).collect())
}

/// Samples of `|s| ||S_L^{-1}(s, T)||` along purely imaginary `s`.
#[derive(Clone, Debug, Serialize)]
pub struct ResolventProbe {
    pub s_norms: Vec<f64>,
    pub resolvent_norms: Vec<f64>,
    pub scaled: Vec<f64>,
    /// `max |s| ||S_L^{-1}(s, T)||` over the samples.
    pub theta_hat: f64,
}

impl ResolventProbe {
    /// Largest sample relative to the one at the largest `|s|`.
    pub fn growth(&self) -> f64 {
        let last = self
            .s_norms
            .iter()
            .zip(&self.scaled)
            .max_by(|a, b| a.0.total_cmp(b.0))
            .map(|p| *p.1)
            .unwrap_or(f64::NAN);
        self.theta_hat / last
    }

    /// `max / min` of the scaled samples.
    pub fn spread(&self) -> f64 {
        let lo = self.scaled.iter().copied().fold(f64::INFINITY, f64::min);
        self.theta_hat / lo
    }
}

/// `|s| ||S_L^{-1}(s, T)||` for every sample, operator norms by power iteration on the real form.
pub fn resolvent_bound_probe<O: QuaternionicOperator + ?Sized>(op: &O, samples: &[Quaternion]) -> Result<ResolventProbe> {
    let m = op.dim();
    let mut s_norms = Vec::new();
    let mut resolvent_norms = Vec::new();
    let mut scaled = Vec::new();
    for s in samples {
        if s.w != 0.0 || s.norm() == 0.0 {
            return Err(Error::InvalidInput("samples must be nonzero and purely imaginary".into()));
        }
        let fac = op.factor_qs(s.w, s.norm_sqr()).map_err(|_| Error::SingularSphere(0.0))?;
        let sb = s.conj();
        let apply = |w: &[Quaternion]| {
            let tw = op.apply(w);
            let rhs: Vec<Quaternion> = w.iter().zip(&tw).map(|(a, b)| sb * *a - *b).collect();
            fac.solve(&rhs)
        };
        let apply_adj = |z: &[Quaternion]| {
            let y = fac.solve_adjoint(z);
            let ty = op.apply_adjoint(&y);
            y.iter().zip(&ty).map(|(a, b)| *s * *a - *b).collect::<Vec<_>>()
        };
        let n = power_norm(m, apply, apply_adj);
        if !n.is_finite() {
            return Err(Error::SingularSphere(0.0));
        }
        s_norms.push(s.norm());
        resolvent_norms.push(n);
        scaled.push(s.norm() * n);
    }
    let theta_hat = scaled.iter().copied().fold(0.0, f64::max);
    Ok(ResolventProbe {
        s_norms,
        resolvent_norms,
        scaled,
        theta_hat,
    })
}

/// `count` points `-I t` with `t` log-spaced on `[lo, hi]`.
pub fn imaginary_samples(plane: &ImaginaryUnit, lo: f64, hi: f64, count: usize) -> Vec<Quaternion> {
    let i = plane.to_algebra::<Quaternion>();
    (0..count)
        .map(|k| {
            let f = if count > 1 { k as f64 / (count - 1) as f64 } else { 0.0 };
            let t = (lo.ln() + f * (hi.ln() - lo.ln())).exp();
            -(i * t)
        })
        .collect()
}

/// Both sides of the discrete divergence-form identity and the measured constant.
#[derive(Clone, Debug, Serialize)]
pub struct ConsistencyReport {
    pub alpha: f64,
    pub lhs: Vec<f64>,
    pub rhs: Vec<f64>,
    /// `lhs / rhs` measured on the lowest eigenvector.
    pub measured_constant: f64,
    pub claimed_constant: f64,
    /// Ratios measured on further eigenvectors.
    pub eigen_constants: Vec<f64>,
    /// Largest relative deviation of `eigen_constants` from `measured_constant`.
    pub constancy: f64,
    /// `||lhs - measured * rhs|| / ||measured * rhs||` for the input field.
    pub relative_error: f64,
    /// Same against the claimed constant.
    pub relative_error_claimed: f64,
}

const DENSE_LIMIT: usize = 4096;

fn lhs_field(grid: &BoxGrid, op: &GridOperator, v: &[f64], spec: &QuadratureSpec) -> Result<Vec<f64>> {
    let p = frac_power_apply(op, &from_real(v), spec)?;
    let w = vector_part(p.single());
    Ok(grid.div(&w).into_iter().map(|x| 2.0 * x).collect())
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// `2 div_h Vec P_alpha(grad_h) v` against `O^{(1+alpha)/2} v`, `O = -div_h grad_h`.
pub fn consistency_identity_check(grid: &BoxGrid, spec: &QuadratureSpec, v: &[f64]) -> Result<ConsistencyReport> {
    let n = grid.len();
    if v.len() != n {
        return Err(Error::DimensionMismatch { expected: n, found: v.len() });
    }
    if n > DENSE_LIMIT {
        return Err(Error::Budget {
            size: n,
            budget: DENSE_LIMIT,
        });
    }
    let alpha = spec.alpha;
    let op = GridOperator::gradient(*grid)?;
    let o = grid.composite_laplacian_dense();
    let evd = o
        .self_adjoint_eigen(Side::Lower)
        .map_err(|e| Error::Solver(format!("symmetric eigen solver failed: {e:?}")))?;
    let u = evd.U();
    let lam: Vec<f64> = (0..n).map(|k| evd.S()[k].max(0.0)).collect();
    let power = |x: &[f64]| -> Vec<f64> {
        let mut out = vec![0.0; n];
        for k in 0..n {
            let c: f64 = (0..n).map(|i| u[(i, k)] * x[i]).sum::<f64>() * lam[k].powf(0.5 * (1.0 + alpha));
            for (i, o) in out.iter_mut().enumerate() {
                *o += c * u[(i, k)];
            }
        }
        out
    };
    let mode = |k: usize| -> Vec<f64> { (0..n).map(|i| u[(i, k)]).collect() };
    let first = (0..n).find(|&k| lam[k] > 1e-10 * lam[n - 1]).unwrap_or(0);
    let ratio = |phi: &[f64]| -> Result<f64> {
        let l = lhs_field(grid, &op, phi, spec)?;
        let r = power(phi);
        Ok(dot(&l, &r) / dot(&r, &r))
    };
    let measured = ratio(&mode(first))?;
    let picks = [n / 4, n / 2, (3 * n) / 4, n - 1];
    let mut eigen_constants = Vec::new();
    for &k in &picks {
        if lam[k] > 1e-10 * lam[n - 1] {
            eigen_constants.push(ratio(&mode(k))?);
        }
    }
    let constancy = eigen_constants
        .iter()
        .map(|c| (c - measured).abs() / measured.abs())
        .fold(0.0, f64::max);
    let lhs = lhs_field(grid, &op, v, spec)?;
    let rhs = power(v);
    let err_with = |c: f64| {
        let d: f64 = lhs.iter().zip(&rhs).map(|(a, b)| (a - c * b).powi(2)).sum::<f64>().sqrt();
        d / (c.abs() * dot(&rhs, &rhs).sqrt())
    };
    Ok(ConsistencyReport {
        alpha,
        measured_constant: measured,
        claimed_constant: 1.0,
        eigen_constants,
        constancy,
        relative_error: err_with(measured),
        relative_error_claimed: err_with(1.0),
        lhs,
        rhs,
    })
}
