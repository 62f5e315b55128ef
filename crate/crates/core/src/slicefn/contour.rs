use rayon::prelude::*;

use super::function::SliceFunction;
use super::kernel::cauchy_kernel_left;
use crate::error::{Error, Result};
use crate::hypercomplex::{slice_decompose, Algebra, ImaginaryUnit, SphereSet};

/// Circle `c + r e^{I theta}` in the plane `C_I`, discretised by `nodes` trapezoid points.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Contour {
    pub plane: ImaginaryUnit,
    pub center: f64,
    pub radius: f64,
    pub nodes: usize,
}

impl Contour {
    pub const DEFAULT_NODES: usize = 128;

    pub fn new(plane: ImaginaryUnit, center: f64, radius: f64, nodes: usize) -> Result<Self> {
        if !(radius > 0.0) || !radius.is_finite() || !center.is_finite() {
            return Err(Error::InvalidInput(format!("bad contour radius {radius} / center {center}")));
        }
        if nodes < 4 {
            return Err(Error::InvalidInput(format!("contour needs at least 4 nodes, got {nodes}")));
        }
        Ok(Self {
            plane,
            center,
            radius,
            nodes,
        })
    }

    /// Circle centred on the spheres' real midpoint with 1.25 times the covering radius.
    pub fn enclosing(spheres: &SphereSet, plane: ImaginaryUnit, nodes: usize) -> Result<Self> {
        if spheres.is_empty() {
            return Err(Error::InvalidInput("empty sphere set".into()));
        }
        let umin = spheres.iter().map(|s| s.u).fold(f64::INFINITY, f64::min);
        let umax = spheres.iter().map(|s| s.u).fold(f64::NEG_INFINITY, f64::max);
        let center = 0.5 * (umin + umax);
        let cover = spheres
            .iter()
            .map(|s| (s.u - center).hypot(s.v))
            .fold(0.0, f64::max);
        let floor = 0.25 * (1.0 + center.abs());
        Self::new(plane, center, (1.25 * cover).max(cover + floor), nodes)
    }

    /// Signed distance of `(u, v)` from the circle; negative inside.
    pub fn signed_distance(&self, u: f64, v: f64) -> f64 {
        (u - self.center).hypot(v) - self.radius
    }

    fn tol(&self) -> f64 {
        1e-10 * (1.0 + self.radius + self.center.abs())
    }

    pub fn check_encloses_point(&self, u: f64, v: f64) -> Result<()> {
        let d = self.signed_distance(u, v);
        if d.abs() <= self.tol() {
            return Err(Error::SphereOnContour(d.abs()));
        }
        if d > 0.0 {
            return Err(Error::NotEnclosed(format!("sphere ({u}, {v})")));
        }
        Ok(())
    }

    /// Errors if any sphere touches or lies outside the circle.
    pub fn check_encloses(&self, spheres: &SphereSet) -> Result<()> {
        for s in spheres.iter() {
            let d = self.signed_distance(s.u, s.v);
            if d.abs() <= self.tol() {
                return Err(Error::SpectrumOnContour(d.abs()));
            }
            if d > 0.0 {
                return Err(Error::NotEnclosed(format!("spectral sphere ({}, {})", s.u, s.v)));
            }
        }
        Ok(())
    }

    /// Nodes `s_k` with weights `(s_k - c) / N`, so `ds_I / (2 pi) ~ weight`.
    pub fn nodes<A: Algebra>(&self) -> Vec<(A, A)> {
        let n = self.nodes;
        (0..n)
            .map(|k| {
                let th = 2.0 * std::f64::consts::PI * k as f64 / n as f64;
                let (sn, cs) = th.sin_cos();
                let s: A = self
                    .plane
                    .point(self.center + self.radius * cs, self.radius * sn);
                let w: A = self
                    .plane
                    .point(self.radius * cs / n as f64, self.radius * sn / n as f64);
                (s, w)
            })
            .collect()
    }
}

/// Trapezoid evaluation of `(1/2pi) \oint S_L^{-1}(s, x) ds_I f(s)`.
pub fn cauchy_integral<A: Algebra>(f: &SliceFunction<A>, x: &A, contour: &Contour) -> Result<A> {
    if contour.plane.dim() != x.dim() {
        return Err(Error::DimensionMismatch {
            expected: x.dim(),
            found: contour.plane.dim(),
        });
    }
    let (u, v, _) = slice_decompose(x)?;
    contour.check_encloses_point(u, v)?;
    let parts: Vec<A> = contour
        .nodes::<A>()
        .into_par_iter()
        .map(|(s, w)| Ok(cauchy_kernel_left(&s, x)? * w * f.eval(&s)?))
        .collect::<Result<Vec<A>>>()?;
    Ok(parts.into_iter().fold(x.zero_like(), |a, b| a + b))
}
