use faer::Mat;
use rayon::prelude::*;

use super::qmatrix::QMatrix;
use super::spectrum::s_spectrum;
use crate::error::{Error, Result};
use crate::fueter::gamma;
use crate::hypercomplex::Quaternion;
use crate::slicefn::{Contour, SliceFunction};

/// `T = T0 + sum_j e_j T_j` with real `m x m` components.
#[derive(Clone, Debug)]
pub struct ParavectorOpTuple {
    pub t0: Mat<f64>,
    pub t: [Mat<f64>; 3],
}

fn real_mat_from(q: &QMatrix, part: usize) -> Mat<f64> {
    let m = q.dim();
    Mat::from_fn(m, m, |i, j| q[(i, j)].to_array()[part])
}

impl ParavectorOpTuple {
    pub fn new(t0: Mat<f64>, t: [Mat<f64>; 3]) -> Result<Self> {
        let m = t0.nrows();
        for a in std::iter::once(&t0).chain(t.iter()) {
            if a.nrows() != m || a.ncols() != m {
                return Err(Error::DimensionMismatch {
                    expected: m,
                    found: a.nrows().max(a.ncols()),
                });
            }
        }
        Ok(Self { t0, t })
    }

    /// Split a quaternion matrix into its four real component matrices.
    pub fn from_qmatrix(q: &QMatrix) -> Self {
        Self {
            t0: real_mat_from(q, 0),
            t: [real_mat_from(q, 1), real_mat_from(q, 2), real_mat_from(q, 3)],
        }
    }

    pub fn dim(&self) -> usize {
        self.t0.nrows()
    }

    pub fn to_qmatrix(&self) -> QMatrix {
        QMatrix::from_fn(self.dim(), |i, j| {
            Quaternion::new(self.t0[(i, j)], self.t[0][(i, j)], self.t[1][(i, j)], self.t[2][(i, j)])
        })
    }

    /// `T0 - sum_j e_j T_j`.
    pub fn conj_qmatrix(&self) -> QMatrix {
        self.to_qmatrix().map(|q| q.conj())
    }

    /// Largest `||T_a T_b - T_b T_a||_F` over all component pairs.
    pub fn commutator_defect(&self) -> f64 {
        let all: Vec<&Mat<f64>> = std::iter::once(&self.t0).chain(self.t.iter()).collect();
        let mut worst = 0.0f64;
        for a in 0..all.len() {
            for b in a + 1..all.len() {
                let c = all[a] * all[b] - all[b] * all[a];
                worst = worst.max(c.norm_l2());
            }
        }
        worst
    }

    pub fn check_commuting(&self) -> Result<()> {
        let d = self.commutator_defect();
        let scale: f64 = std::iter::once(&self.t0)
            .chain(self.t.iter())
            .map(|a| a.norm_l2())
            .fold(0.0, f64::max);
        if d > 1e-12 * (1.0 + scale * scale) {
            return Err(Error::NonCommuting(d));
        }
        Ok(())
    }

    /// `T T-bar = T0^2 + sum_j T_j^2` (commuting components).
    pub fn t_tbar(&self) -> Mat<f64> {
        let mut acc = &self.t0 * &self.t0;
        for a in &self.t {
            acc += a * a;
        }
        acc
    }
}

fn real_to_q(a: &Mat<f64>) -> QMatrix {
    QMatrix::from_fn(a.nrows(), |i, j| Quaternion::real(a[(i, j)]))
}

/// `F_L(s, T) = gamma_3 (s I - T-bar)(s^2 I - 2 T0 s + T T-bar)^{-2}`.
pub fn f_resolvent(tup: &ParavectorOpTuple, s: &Quaternion) -> Result<QMatrix> {
    let m = tup.dim();
    let tt = real_to_q(&tup.t_tbar());
    let t0 = real_to_q(&tup.t0);
    let q = &(&QMatrix::scalar(m, *s * *s) - &t0.right_scalar(*s * 2.0)) + &tt;
    let qi = q.inverse()?;
    let left = &QMatrix::scalar(m, *s) - &tup.conj_qmatrix();
    Ok(&(&left * &(&qi * &qi)) * gamma(3)?)
}

/// `(1/2pi) \oint F_L(s, T) ds_I f(s)`, which equals `Delta f (T)` for commuting components.
pub fn f_functional_calculus(
    tup: &ParavectorOpTuple,
    f: &SliceFunction<Quaternion>,
    contour: &Contour,
) -> Result<QMatrix> {
    tup.check_commuting()?;
    let t = tup.to_qmatrix();
    contour.check_encloses(&s_spectrum(&t)?)?;
    let m = tup.dim();
    let parts = contour
        .nodes::<Quaternion>()
        .into_par_iter()
        .map(|(s, w)| Ok(f_resolvent(tup, &s)?.right_scalar(w * f.eval(&s)?)))
        .collect::<Result<Vec<_>>>()?;
    Ok(parts.iter().fold(QMatrix::zeros(m), |a, b| &a + b))
}
