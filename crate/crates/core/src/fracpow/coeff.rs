use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

/// Scalar coefficient `a(x)` on the box `[0, L1] x [0, L2] x [0, L3]` (or on `R^3`).
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum CoefficientField {
    Constant {
        value: f64,
    },
    /// `value + gradient . x`.
    Affine {
        value: f64,
        gradient: [f64; 3],
    },
    /// `base + amplitude * prod_{i: k_i > 0} sin(k_i pi x_i / L_i)`.
    Trig {
        base: f64,
        amplitude: f64,
        wavenumbers: [u32; 3],
    },
    /// `base + amplitude * prod_i 4 x_i (L_i - x_i) / L_i^2`, exactly `base` on the boundary.
    Bump {
        base: f64,
        amplitude: f64,
    },
    /// `base + amplitude * exp(-|x - center|^2 / width^2)`.
    Gaussian {
        base: f64,
        amplitude: f64,
        center: [f64; 3],
        width: f64,
    },
}

impl CoefficientField {
    pub fn constant(value: f64) -> Self {
        CoefficientField::Constant { value }
    }

    pub fn eval(&self, x: [f64; 3], lengths: [f64; 3]) -> f64 {
        match self {
            CoefficientField::Constant { value } => *value,
            CoefficientField::Affine { value, gradient } => {
                value + gradient[0] * x[0] + gradient[1] * x[1] + gradient[2] * x[2]
            }
            CoefficientField::Trig {
                base,
                amplitude,
                wavenumbers,
            } => {
                let mut p = 1.0;
                for i in 0..3 {
                    if wavenumbers[i] > 0 {
                        p *= (wavenumbers[i] as f64 * PI * x[i] / lengths[i]).sin();
                    }
                }
                base + amplitude * p
            }
            CoefficientField::Bump { base, amplitude } => {
                base + amplitude * (0..3).map(|i| bump_factor(x[i], lengths[i])).product::<f64>()
            }
            CoefficientField::Gaussian {
                base,
                amplitude,
                center,
                width,
            } => {
                let r2: f64 = (0..3).map(|i| (x[i] - center[i]).powi(2)).sum();
                base + amplitude * (-r2 / (width * width)).exp()
            }
        }
    }

    pub fn grad(&self, x: [f64; 3], lengths: [f64; 3]) -> [f64; 3] {
        match self {
            CoefficientField::Constant { .. } => [0.0; 3],
            CoefficientField::Affine { gradient, .. } => *gradient,
            CoefficientField::Trig {
                amplitude,
                wavenumbers,
                ..
            } => {
                let mut g = [0.0; 3];
                for (j, gj) in g.iter_mut().enumerate() {
                    if wavenumbers[j] == 0 {
                        continue;
                    }
                    let mut p = *amplitude;
                    for i in 0..3 {
                        if wavenumbers[i] == 0 {
                            continue;
                        }
                        let k = wavenumbers[i] as f64 * PI / lengths[i];
                        p *= if i == j { k * (k * x[i]).cos() } else { (k * x[i]).sin() };
                    }
                    *gj = p;
                }
                g
            }
            CoefficientField::Bump { amplitude, .. } => {
                let mut g = [0.0; 3];
                for (j, gj) in g.iter_mut().enumerate() {
                    let mut p = *amplitude * 4.0 * (lengths[j] - 2.0 * x[j]) / (lengths[j] * lengths[j]);
                    for i in (0..3).filter(|i| *i != j) {
                        p *= bump_factor(x[i], lengths[i]);
                    }
                    *gj = p;
                }
                g
            }
            CoefficientField::Gaussian {
                amplitude,
                center,
                width,
                ..
            } => {
                let r2: f64 = (0..3).map(|i| (x[i] - center[i]).powi(2)).sum();
                let e = amplitude * (-r2 / (width * width)).exp();
                let mut g = [0.0; 3];
                for i in 0..3 {
                    g[i] = -2.0 * (x[i] - center[i]) / (width * width) * e;
                }
                g
            }
        }
    }

    pub fn is_constant(&self) -> Option<f64> {
        match self {
            CoefficientField::Constant { value } => Some(*value),
            CoefficientField::Affine { value, gradient } if gradient.iter().all(|g| *g == 0.0) => Some(*value),
            CoefficientField::Trig { base, amplitude, .. } if *amplitude == 0.0 => Some(*base),
            CoefficientField::Bump { base, amplitude } if *amplitude == 0.0 => Some(*base),
            CoefficientField::Gaussian { base, amplitude, .. } if *amplitude == 0.0 => Some(*base),
            _ => None,
        }
    }

    /// Kinds whose derivatives decay fast enough at infinity for whole-space estimates.
    pub fn has_decay_certificate(&self) -> bool {
        matches!(
            self,
            CoefficientField::Constant { .. } | CoefficientField::Gaussian { .. }
        ) || self.is_constant().is_some()
    }

    pub fn kind_name(&self) -> &'static str {
        match self {
            CoefficientField::Constant { .. } => "constant",
            CoefficientField::Affine { .. } => "affine",
            CoefficientField::Trig { .. } => "trig",
            CoefficientField::Bump { .. } => "bump",
            CoefficientField::Gaussian { .. } => "gaussian",
        }
    }
}

fn bump_factor(x: f64, l: f64) -> f64 {
    4.0 * x * (l - x) / (l * l)
}

/// Supremum of `g` over the box, from a sampled grid refined by local search.
pub fn box_sup(g: &dyn Fn([f64; 3]) -> f64, lengths: [f64; 3]) -> f64 {
    box_sup_on(g, [0.0; 3], lengths)
}

/// Supremum of `g` over `[lo_1, hi_1] x [lo_2, hi_2] x [lo_3, hi_3]`.
pub fn box_sup_on(g: &dyn Fn([f64; 3]) -> f64, lo: [f64; 3], hi: [f64; 3]) -> f64 {
    let lengths = [hi[0] - lo[0], hi[1] - lo[1], hi[2] - lo[2]];
    let n = 24usize;
    let mut best = f64::NEG_INFINITY;
    let mut arg = [0.0; 3];
    for i in 0..=n {
        for j in 0..=n {
            for k in 0..=n {
                let x = [
                    lo[0] + lengths[0] * i as f64 / n as f64,
                    lo[1] + lengths[1] * j as f64 / n as f64,
                    lo[2] + lengths[2] * k as f64 / n as f64,
                ];
                let v = g(x);
                if v > best {
                    best = v;
                    arg = x;
                }
            }
        }
    }
    let mut step = [lengths[0] / n as f64, lengths[1] / n as f64, lengths[2] / n as f64];
    for _ in 0..60 {
        let mut moved = false;
        for d in 0..3 {
            for sgn in [-1.0, 1.0] {
                let mut x = arg;
                x[d] = (x[d] + sgn * step[d]).clamp(lo[d], hi[d]);
                let v = g(x);
                if v > best {
                    best = v;
                    arg = x;
                    moved = true;
                }
            }
        }
        if !moved {
            for s in step.iter_mut() {
                *s *= 0.5;
            }
        }
    }
    best
}

/// Infimum of `g` over the box.
pub fn box_inf(g: &dyn Fn([f64; 3]) -> f64, lengths: [f64; 3]) -> f64 {
    -box_sup(&|x| -g(x), lengths)
}
