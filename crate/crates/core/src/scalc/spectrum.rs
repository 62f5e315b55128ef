use faer::{c64, Mat};
use rayon::prelude::*;
use serde::Serialize;

use super::qmatrix::QMatrix;
use crate::error::{Error, Result};
use crate::hypercomplex::{Quaternion, SphereSet};

/// `Q_s(T) = T^2 - 2 Re(s) T + |s|^2 I` for `s = u + I v`.
pub fn qs_matrix_uv(t: &QMatrix, u: f64, v: f64) -> QMatrix {
    let t2 = t * t;
    let m = t.dim();
    let mut out = &t2 - &(t * (2.0 * u));
    let r = u * u + v * v;
    for i in 0..m {
        out[(i, i)] += Quaternion::real(r);
    }
    out
}

pub fn qs_matrix(t: &QMatrix, s: &Quaternion) -> QMatrix {
    qs_matrix_uv(t, s.w, s.im_norm())
}

/// S-spectrum as the spheres through the eigenvalues of the complex adjoint.
pub fn s_spectrum(t: &QMatrix) -> Result<SphereSet> {
    let ev = t
        .complex_adjoint()
        .eigenvalues()
        .map_err(|e| Error::Solver(format!("eigenvalue solver failed: {e:?}")))?;
    Ok(ev.into_iter().map(|l| (l.re, l.im.abs())).collect())
}

/// Right eigenpairs `T v = v lambda` with `lambda` in `C_{e1}`.
pub fn right_eigenpairs(t: &QMatrix) -> Result<Vec<(Vec<Quaternion>, Quaternion)>> {
    let m = t.dim();
    let evd = t
        .complex_adjoint()
        .eigen()
        .map_err(|e| Error::Solver(format!("eigen solver failed: {e:?}")))?;
    let u = evd.U();
    let s = evd.S();
    let mut out = Vec::with_capacity(2 * m);
    for k in 0..2 * m {
        let lam = s.column_vector()[k];
        // chi(T)[p; y] = lambda [p; y]  <=>  T (p - conj(y) e2) = (p - conj(y) e2) lambda
        let v: Vec<Quaternion> = (0..m)
            .map(|i| {
                let p = u[(i, k)];
                let y = u[(i + m, k)];
                let q = -y.conj();
                Quaternion::new(p.re, p.im, q.re, q.im)
            })
            .collect();
        out.push((v, Quaternion::new(lam.re, lam.im, 0.0, 0.0)));
    }
    Ok(out)
}

/// Smallest singular value of the complex adjoint of `Q_s(T)`.
pub fn qs_sigma_min(t: &QMatrix, u: f64, v: f64) -> f64 {
    let chi: Mat<c64> = qs_matrix_uv(t, u, v).complex_adjoint();
    chi.singular_values()
        .ok()
        .and_then(|s| s.last().copied())
        .unwrap_or(f64::NAN)
}

/// Outcome of the singular-value scan over the `(u, v)` half plane.
#[derive(Clone, Debug, Serialize)]
pub struct ScanReport {
    /// Spheres located by refining local minima below `threshold`.
    pub located: SphereSet,
    /// Largest smallest-singular-value at the given spheres.
    pub max_at_spheres: f64,
    /// Smallest value over grid points farther than `gap` from every sphere.
    pub min_away: f64,
    pub threshold: f64,
    pub gap: f64,
}

impl ScanReport {
    pub fn agrees_with(&self, spheres: &SphereSet, tol: f64) -> bool {
        self.located.matches(spheres, tol) && self.max_at_spheres < self.threshold && self.min_away > self.threshold
    }
}

fn refine(t: &QMatrix, mut u: f64, mut v: f64, mut step: f64) -> (f64, f64, f64) {
    let mut best = qs_sigma_min(t, u, v);
    while step > 1e-14 * (1.0 + u.abs() + v) {
        let mut moved = false;
        for (du, dv) in [(step, 0.0), (-step, 0.0), (0.0, step), (0.0, -step)] {
            let (nu, nv) = (u + du, (v + dv).max(0.0));
            let val = qs_sigma_min(t, nu, nv);
            if val < best {
                best = val;
                u = nu;
                v = nv;
                moved = true;
            }
        }
        if !moved {
            step *= 0.5;
        }
    }
    (u, v, best)
}

/// Brute-force scan of `sigma_min(Q_s(T))` on a grid covering `spheres`, then
/// pattern-search refinement of the local minima.
pub fn spectrum_scan(t: &QMatrix, spheres: &SphereSet, resolution: usize) -> Result<ScanReport> {
    let norm = t.norm_op()?;
    let pad = 0.5 + 0.25 * norm;
    let umin = -norm - pad;
    let umax = norm + pad;
    let vmax = norm + pad;
    let res = resolution.max(8);
    let du = (umax - umin) / res as f64;
    let dv = vmax / res as f64;
    let grid: Vec<f64> = (0..(res + 1) * (res + 1))
        .into_par_iter()
        .map(|k| {
            let (i, j) = (k % (res + 1), k / (res + 1));
            qs_sigma_min(t, umin + i as f64 * du, j as f64 * dv)
        })
        .collect();
    let at = |i: usize, j: usize| grid[j * (res + 1) + i];
    let scale = 1.0 + norm * norm;
    let threshold = 1e-8 * scale;
    let gap = 2.0 * du.max(dv);

    let mut starts = Vec::new();
    for j in 0..=res {
        for i in 0..=res {
            let c = at(i, j);
            let mut is_min = true;
            for (di, dj) in [(-1i64, 0i64), (1, 0), (0, -1), (0, 1), (-1, -1), (1, 1), (-1, 1), (1, -1)] {
                let (ni, nj) = (i as i64 + di, j as i64 + dj);
                if ni < 0 || nj < 0 || ni > res as i64 || nj > res as i64 {
                    continue;
                }
                if at(ni as usize, nj as usize) < c {
                    is_min = false;
                    break;
                }
            }
            if is_min {
                starts.push((umin + i as f64 * du, j as f64 * dv));
            }
        }
    }
    let refined: Vec<(f64, f64, f64)> = starts
        .par_iter()
        .map(|&(u, v)| refine(t, u, v, du.max(dv)))
        .collect();
    let located: SphereSet = refined
        .iter()
        .filter(|(_, _, s)| *s < threshold)
        .map(|(u, v, _)| (*u, *v))
        .collect();

    let max_at_spheres = spheres
        .iter()
        .map(|s| qs_sigma_min(t, s.u, s.v))
        .fold(0.0, f64::max);
    let mut min_away = f64::INFINITY;
    for j in 0..=res {
        for i in 0..=res {
            let (u, v) = (umin + i as f64 * du, j as f64 * dv);
            if spheres.distance(u, v) > gap {
                min_away = min_away.min(at(i, j));
            }
        }
    }
    Ok(ScanReport {
        located,
        max_at_spheres,
        min_away,
        threshold,
        gap,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn diagonal_e1() {
        let t = QMatrix::diag(&[Quaternion::E1]);
        let sp = s_spectrum(&t).unwrap();
        assert_eq!(sp.len(), 1);
        assert!((sp.spheres[0].u).abs() < 1e-14 && (sp.spheres[0].v - 1.0).abs() < 1e-14);
        let scan = spectrum_scan(&t, &sp, 40).unwrap();
        assert!(scan.agrees_with(&sp, 1e-6), "{scan:?}");
    }

    #[test]
    fn eigenpairs_satisfy_right_relation() {
        let t = QMatrix::from_fn(3, |i, j| {
            Quaternion::new((i + 2 * j) as f64 * 0.3 - 0.5, (i * j) as f64 * 0.2, 0.1 * i as f64, -0.4 * j as f64)
        });
        for (v, lam) in right_eigenpairs(&t).unwrap() {
            let tv = t.apply(&v);
            let vl: Vec<Quaternion> = v.iter().map(|a| *a * lam).collect();
            let err: f64 = tv.iter().zip(&vl).map(|(a, b)| (*a - *b).norm()).fold(0.0, f64::max);
            assert!(err < 1e-12, "{err}");
        }
    }
}
