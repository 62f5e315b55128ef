use std::f64::consts::PI;
use std::num::NonZeroUsize;

use faer::linalg::solvers::Solve;
use faer::{Mat, Side};
use gauss_quad::GaussLegendre;
use rayon::prelude::*;

use super::fcalc::ParavectorOpTuple;
use super::qmatrix::QMatrix;
use crate::error::{Error, Result};
use crate::fueter::sigma;
use crate::hypercomplex::Quaternion;

/// Product quadrature on the 3-sphere `|omega| = radius` in `R^4`:
/// Gauss–Legendre in the two polar angles, trapezoid in the azimuth.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SphereQuadrature {
    pub radius: f64,
    pub polar_nodes: usize,
    pub azimuth_nodes: usize,
}

impl SphereQuadrature {
    pub fn new(radius: f64, polar_nodes: usize, azimuth_nodes: usize) -> Result<Self> {
        if !(radius > 0.0) || polar_nodes == 0 || azimuth_nodes == 0 {
            return Err(Error::InvalidInput("sphere quadrature needs positive radius and node counts".into()));
        }
        Ok(Self {
            radius,
            polar_nodes,
            azimuth_nodes,
        })
    }

    /// Points `omega` with weights including the surface element `R^3 sin^2(psi) sin(theta)`.
    pub fn nodes(&self) -> Vec<(Quaternion, f64)> {
        let gl = GaussLegendre::new(NonZeroUsize::new(self.polar_nodes).unwrap());
        let polar: Vec<(f64, f64)> = gl
            .as_node_weight_pairs()
            .iter()
            .map(|(x, w)| (0.5 * PI * (x + 1.0), 0.5 * PI * w))
            .collect();
        let r = self.radius;
        let dphi = 2.0 * PI / self.azimuth_nodes as f64;
        let mut out = Vec::with_capacity(polar.len() * polar.len() * self.azimuth_nodes);
        for &(psi, wpsi) in &polar {
            for &(th, wth) in &polar {
                for k in 0..self.azimuth_nodes {
                    let phi = k as f64 * dphi;
                    let (sp, cp) = psi.sin_cos();
                    let (st, ct) = th.sin_cos();
                    let omega = Quaternion::new(cp, sp * ct, sp * st * phi.cos(), sp * st * phi.sin()) * r;
                    let w = r.powi(3) * sp * sp * st * wpsi * wth * dphi;
                    out.push((omega, w));
                }
            }
        }
        out
    }
}

fn real_inverse(a: &Mat<f64>) -> Mat<f64> {
    let n = a.nrows();
    a.partial_piv_lu().solve(Mat::<f64>::identity(n, n))
}

fn real_to_q(a: &Mat<f64>) -> QMatrix {
    QMatrix::from_fn(a.nrows(), |i, j| Quaternion::real(a[(i, j)]))
}

fn check_tuple(a: &ParavectorOpTuple, radius: f64) -> Result<()> {
    let scale = a.t.iter().map(|m| m.norm_l2()).fold(0.0, f64::max);
    let t0 = a.t0.norm_l2();
    if t0 > 1e-14 * (1.0 + scale) {
        return Err(Error::NonzeroScalarPart(t0));
    }
    a.check_commuting()?;
    for (j, aj) in a.t.iter().enumerate() {
        let ev = aj
            .eigenvalues()
            .map_err(|e| Error::Solver(format!("eigenvalue solver failed: {e:?}")))?;
        if ev.iter().any(|l| l.im.abs() > 1e-10 * (1.0 + scale)) {
            return Err(Error::NonRealSpectrum(j + 1));
        }
    }
    let tt = a.t_tbar();
    let rho = tt
        .eigenvalues()
        .map_err(|e| Error::Solver(format!("eigenvalue solver failed: {e:?}")))?
        .iter()
        .map(|l| l.norm())
        .fold(0.0, f64::max)
        .sqrt();
    if rho >= radius {
        return Err(Error::NotEnclosed(format!(
            "joint spectrum of radius {rho:.4} by the sphere of radius {radius}"
        )));
    }
    Ok(())
}

/// `G_omega(A) = (1/sigma_3) [omega_0 I - sum_j e_j (omega_j I - A_j)] K^{-2}` with
/// `K = omega_0^2 I + sum_j (omega_j I - A_j)^2`.
pub fn monogenic_resolvent(a: &ParavectorOpTuple, omega: &Quaternion) -> Result<QMatrix> {
    let m = a.dim();
    let w = omega.to_array();
    let shifted: Vec<Mat<f64>> = (0..3)
        .map(|j| Mat::from_fn(m, m, |r, c| if r == c { w[j + 1] } else { 0.0 } - a.t[j][(r, c)]))
        .collect();
    let mut k = Mat::from_fn(m, m, |r, c| if r == c { w[0] * w[0] } else { 0.0 });
    for sj in &shifted {
        k += sj * sj;
    }
    let ki = real_inverse(&k);
    if ki.norm_l2().is_nan() {
        return Err(Error::Solver("singular monogenic resolvent".into()));
    }
    let ki2 = &ki * &ki;
    let lead = QMatrix::from_fn(m, |r, c| {
        let mut q = Quaternion::new(if r == c { w[0] } else { 0.0 }, 0.0, 0.0, 0.0);
        for (j, sj) in shifted.iter().enumerate() {
            q -= Quaternion::unit(j + 1) * sj[(r, c)];
        }
        q
    });
    Ok(&(&lead * &real_to_q(&ki2)) * (1.0 / sigma(3)?))
}

/// `f(A) = \int_{|omega| = R} G_omega(A) eta(omega) f(omega) dS(omega)`, `eta = omega / R`.
pub fn monogenic_functional_calculus<F>(a: &ParavectorOpTuple, f: F, quad: &SphereQuadrature) -> Result<QMatrix>
where
    F: Fn(&Quaternion) -> Result<Quaternion> + Sync,
{
    check_tuple(a, quad.radius)?;
    let m = a.dim();
    let parts = quad
        .nodes()
        .into_par_iter()
        .map(|(omega, w)| {
            let g = monogenic_resolvent(a, &omega)?;
            let eta = omega * (1.0 / quad.radius);
            Ok(g.right_scalar(eta * f(&omega)? * w))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(parts.iter().fold(QMatrix::zeros(m), |x, y| &x + y))
}

/// `sum_k f(sum_j lambda_{jk} e_j) v_k v_k^T` from a joint eigenbasis of symmetric commuting `A_j`.
pub fn joint_eigen_oracle<F>(a: &ParavectorOpTuple, f: F) -> Result<QMatrix>
where
    F: Fn(&Quaternion) -> Result<Quaternion>,
{
    a.check_commuting()?;
    let m = a.dim();
    let weights = [1.0, std::f64::consts::SQRT_2, 3f64.sqrt()];
    let mut c = Mat::<f64>::zeros(m, m);
    for (w, aj) in weights.iter().zip(&a.t) {
        c += aj * faer::Scale(*w);
    }
    let evd = c
        .self_adjoint_eigen(Side::Lower)
        .map_err(|e| Error::Solver(format!("symmetric eigen solver failed: {e:?}")))?;
    let u = evd.U();
    let mut out = QMatrix::zeros(m);
    for k in 0..m {
        let mut lam = [0.0; 3];
        for (j, aj) in a.t.iter().enumerate() {
            let mut acc = 0.0;
            for r in 0..m {
                for s in 0..m {
                    acc += u[(r, k)] * aj[(r, s)] * u[(s, k)];
                }
            }
            lam[j] = acc;
        }
        let fv = f(&Quaternion::from_parts(0.0, lam))?;
        for r in 0..m {
            for s in 0..m {
                out[(r, s)] += fv * (u[(r, k)] * u[(s, k)]);
            }
        }
    }
    Ok(out)
}
