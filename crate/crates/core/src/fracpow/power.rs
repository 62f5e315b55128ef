use std::f64::consts::PI;

use rayon::prelude::*;
use serde::Serialize;

use super::operator::{spectral_scales, vec_norm, QsFactor, QuaternionicOperator};
use crate::error::{Error, Result};
use crate::hypercomplex::{qpow, ImaginaryUnit, Quaternion};

/// Which of the two equivalent integral forms to evaluate.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Form {
    /// `(1/2pi) \int S_L^{-1}(s, T) ds_I s^{alpha-1} T v`.
    Left,
    /// `(1/2pi) \int s^{alpha-1} ds_I S_R^{-1}(s, T) T v`.
    Right,
}

/// Subtracted model resolvent `(s - c)^{-1}`, integrated in closed form.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub enum Control {
    /// `c` is the geometric mean of the spectral scales of `T`.
    Auto,
    Scale(f64),
}

/// Trapezoid rule on `s = -I t`, `t = +-e^u`, with nested node doubling.
#[derive(Clone, Debug, PartialEq)]
pub struct QuadratureSpec {
    pub plane: ImaginaryUnit,
    pub alpha: f64,
    /// Initial nodes per branch.
    pub nodes: usize,
    pub max_nodes: usize,
    /// Relative change between successive doublings accepted as converged.
    pub tol: f64,
    /// Explicit `[u_lo, u_hi]`; derived from the spectral scales when `None`.
    pub u_range: Option<(f64, f64)>,
    pub control: Control,
    pub form: Form,
}

impl QuadratureSpec {
    pub fn new(alpha: f64) -> Result<Self> {
        if !(alpha > 0.0 && alpha < 1.0) {
            return Err(Error::InvalidInput(format!("alpha = {alpha}; alpha in (0,1) required")));
        }
        Ok(Self {
            plane: ImaginaryUnit::basis(3, 1)?,
            alpha,
            nodes: 200,
            max_nodes: 12800,
            tol: 1e-10,
            u_range: None,
            control: Control::Auto,
            form: Form::Left,
        })
    }

    pub fn with_plane(mut self, plane: ImaginaryUnit) -> Self {
        self.plane = plane;
        self
    }

    pub fn with_form(mut self, form: Form) -> Self {
        self.form = form;
        self
    }

    pub fn with_tol(mut self, tol: f64) -> Self {
        self.tol = tol;
        self
    }

    pub fn with_control(mut self, control: Control) -> Self {
        self.control = control;
        self
    }

    fn validate(&self) -> Result<()> {
        if !(self.alpha > 0.0 && self.alpha < 1.0) {
            return Err(Error::InvalidInput(format!("alpha = {}; alpha in (0,1) required", self.alpha)));
        }
        if self.plane.dim() != 3 {
            return Err(Error::UnsupportedDimension(self.plane.dim()));
        }
        if self.nodes < 2 || self.max_nodes < self.nodes || !(self.tol > 0.0) {
            return Err(Error::InvalidInput("quadrature needs nodes >= 2, max_nodes >= nodes, tol > 0".into()));
        }
        Ok(())
    }
}

/// Output of [`frac_power_apply`].
#[derive(Clone, Debug, Serialize)]
pub struct FracPower {
    pub values: Vec<Vec<Quaternion>>,
    pub nodes_per_branch: usize,
    /// Relative change at the last doubling.
    pub last_change: f64,
    /// Relative changes of every doubling, coarse to fine.
    pub changes: Vec<f64>,
    pub u_range: (f64, f64),
    pub control_scale: f64,
    pub spectral_scales: (f64, f64),
}

impl FracPower {
    pub fn single(&self) -> &[Quaternion] {
        &self.values[0]
    }
}

struct Setup {
    alpha: f64,
    plane: Quaternion,
    c0: f64,
    form: Form,
}

impl Setup {
    /// `s = -I t` and `s^{alpha-1}` by the principal slice branch.
    fn point(&self, t: f64) -> (Quaternion, Quaternion) {
        let s = -(self.plane * t);
        let p = qpow(&s, self.alpha - 1.0).expect("s is off the negative real axis");
        (s, p)
    }
}

const GROUP: usize = 8;

/// Sum of `e^u * integrand(u)` over the node list, for every column.
fn node_sums<O: QuaternionicOperator + ?Sized>(
    op: &O,
    ys: &[Vec<Quaternion>],
    us: &[f64],
    st: &Setup,
) -> Result<Vec<Vec<Quaternion>>> {
    let m = op.dim();
    let mut acc = vec![vec![Quaternion::ZERO; m]; ys.len()];
    for chunk in us.chunks(GROUP) {
        let factors = chunk
            .par_iter()
            .map(|u| {
                let t = u.exp();
                op.factor_qs(0.0, t * t).map_err(|e| match e {
                    Error::Solver(msg) => Error::Solver(format!("Q_s(T) at |s| = {t:.3e}: {msg}")),
                    other => other,
                })
            })
            .collect::<Result<Vec<Box<dyn QsFactor>>>>()?;
        acc.par_iter_mut().zip(ys.par_iter()).for_each(|(a, y)| {
            for (u, f) in chunk.iter().zip(&factors) {
                let t = u.exp();
                let contrib = node_contribution(op, f.as_ref(), y, t, st);
                for (ai, ci) in a.iter_mut().zip(contrib) {
                    *ai += ci * t;
                }
            }
        });
    }
    Ok(acc)
}

/// Both branches `t` and `-t` of the integrand with the control term removed, times `1/(2 pi)`.
fn node_contribution<O: QuaternionicOperator + ?Sized>(
    op: &O,
    f: &dyn QsFactor,
    y: &[Quaternion],
    t: f64,
    st: &Setup,
) -> Vec<Quaternion> {
    let branches = [st.point(t), st.point(-t)];
    // ds_I = -dt on the path s = -I t.
    let scal: Vec<(Quaternion, Quaternion)> = branches.iter().map(|(s, p)| (*s, -*p)).collect();
    let mut out = match st.form {
        Form::Left => {
            let ws: Vec<Vec<Quaternion>> = scal.iter().map(|(_, q)| y.iter().map(|yi| *q * *yi).collect()).collect();
            let wsum: Vec<Quaternion> = ws[0].iter().zip(&ws[1]).map(|(a, b)| *a + *b).collect();
            let tw = op.apply(&wsum);
            let rhs: Vec<Quaternion> = (0..y.len())
                .map(|i| scal[0].0.conj() * ws[0][i] + scal[1].0.conj() * ws[1][i] - tw[i])
                .collect();
            f.solve(&rhs)
        }
        Form::Right => {
            let z = f.solve(y);
            let tz = op.apply(&z);
            let a = scal[0].1 * scal[0].0.conj() + scal[1].1 * scal[1].0.conj();
            let b = scal[0].1 + scal[1].1;
            z.iter().zip(&tz).map(|(zi, tzi)| a * *zi - b * *tzi).collect()
        }
    };
    let c = Quaternion::real(st.c0);
    let ctrl: Quaternion = scal
        .iter()
        .map(|(s, q)| (*s - c).inv().expect("control pole off the path") * *q)
        .sum();
    for (o, yi) in out.iter_mut().zip(y) {
        *o = (*o - ctrl * *yi) * (0.5 / PI);
    }
    out
}

fn max_rel_change(a: &[Vec<Quaternion>], b: &[Vec<Quaternion>]) -> f64 {
    a.iter()
        .zip(b)
        .map(|(x, y)| {
            let d: Vec<Quaternion> = x.iter().zip(y).map(|(p, q)| *p - *q).collect();
            vec_norm(&d) / vec_norm(y).max(f64::MIN_POSITIVE)
        })
        .fold(0.0, f64::max)
}

/// `P_alpha(T) v` for each input vector, sharing the per-node factorisations.
pub fn frac_power_apply_many<O: QuaternionicOperator + ?Sized>(
    op: &O,
    vs: &[Vec<Quaternion>],
    spec: &QuadratureSpec,
) -> Result<FracPower> {
    spec.validate()?;
    let m = op.dim();
    for v in vs {
        if v.len() != m {
            return Err(Error::DimensionMismatch {
                expected: m,
                found: v.len(),
            });
        }
    }
    let (lo, hi) = spectral_scales(op);
    if spec.u_range.is_none() && lo <= 1e-6 * hi {
        return Err(Error::Solver(format!(
            "operator is numerically singular (sigma_min {lo:.3e}, norm {hi:.3e}); odd central-difference grids have a kernel"
        )));
    }
    let c0 = match spec.control {
        Control::Auto => (lo * hi).sqrt(),
        Control::Scale(c) if c > 0.0 => c,
        Control::Scale(c) => return Err(Error::InvalidInput(format!("control scale {c} must be positive"))),
    };
    let alpha = spec.alpha;
    let (u_lo, u_hi) = spec.u_range.unwrap_or_else(|| {
        let top = c0.ln() + (30.0 + (1.0 + hi / c0).ln()) / (2.0 - alpha);
        let bottom = c0.ln() - (30.0 + (1.0 + c0 / lo).ln()) / alpha;
        (bottom.min(lo.ln() - 30.0 / alpha), top.max(hi.ln() + 30.0 / (2.0 - alpha)))
    });
    let st = Setup {
        alpha,
        plane: spec.plane.to_algebra::<Quaternion>(),
        c0,
        form: spec.form,
    };
    let ys: Vec<Vec<Quaternion>> = vs.iter().map(|v| op.apply(v)).collect();

    let mut n = spec.nodes;
    let mut h = (u_hi - u_lo) / n as f64;
    let us: Vec<f64> = (0..=n).map(|k| u_lo + k as f64 * h).collect();
    let mut raw = node_sums(op, &ys, &us, &st)?;
    let mut current: Vec<Vec<Quaternion>> = raw.iter().map(|a| a.iter().map(|q| *q * h).collect()).collect();
    let mut changes = Vec::new();
    loop {
        let mids: Vec<f64> = (0..n).map(|k| u_lo + (k as f64 + 0.5) * h).collect();
        let extra = node_sums(op, &ys, &mids, &st)?;
        for (r, e) in raw.iter_mut().zip(&extra) {
            for (a, b) in r.iter_mut().zip(e) {
                *a += *b;
            }
        }
        n *= 2;
        h *= 0.5;
        let next: Vec<Vec<Quaternion>> = raw.iter().map(|a| a.iter().map(|q| *q * h).collect()).collect();
        let with_control = |s: &[Vec<Quaternion>]| -> Vec<Vec<Quaternion>> {
            s.iter()
                .zip(&ys)
                .map(|(a, y)| {
                    a.iter()
                        .zip(y)
                        .map(|(ai, yi)| *ai + *yi * c0.powf(alpha - 1.0))
                        .collect()
                })
                .collect()
        };
        let change = max_rel_change(&with_control(&next), &with_control(&current));
        changes.push(change);
        current = next;
        if change <= spec.tol || !change.is_finite() {
            if !change.is_finite() {
                return Err(Error::NotConverged { nodes: n, change });
            }
            return Ok(FracPower {
                values: with_control(&current),
                nodes_per_branch: n + 1,
                last_change: change,
                changes,
                u_range: (u_lo, u_hi),
                control_scale: c0,
                spectral_scales: (lo, hi),
            });
        }
        if 2 * n > spec.max_nodes {
            return Err(Error::NotConverged { nodes: n + 1, change });
        }
    }
}

/// `P_alpha(T) v` by quadrature of the fractional-power integral.
pub fn frac_power_apply<O: QuaternionicOperator + ?Sized>(
    op: &O,
    v: &[Quaternion],
    spec: &QuadratureSpec,
) -> Result<FracPower> {
    frac_power_apply_many(op, &[v.to_vec()], spec)
}
