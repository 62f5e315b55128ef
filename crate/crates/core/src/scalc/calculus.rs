use faer::linalg::solvers::Solve;
use faer::{c64, Mat};
use rayon::prelude::*;

use super::qmatrix::QMatrix;
use super::spectrum::{qs_matrix, s_spectrum};
use crate::error::{Error, Result};
use crate::hypercomplex::Quaternion;
use crate::slicefn::{Contour, Holomorphic, SliceFunction};

fn check_resolvable(t: &QMatrix, s: &Quaternion) -> Result<QMatrix> {
    let spec = s_spectrum(t)?;
    let d = spec.distance(s.w, s.im_norm());
    if d <= 1e-10 * (1.0 + t.max_abs()) {
        return Err(Error::SingularSphere(d));
    }
    qs_matrix(t, s).inverse()
}

/// `S_L^{-1}(s, T) = -Q_s(T)^{-1} (T - conj(s) I)`.
pub fn s_resolvent_left(t: &QMatrix, s: &Quaternion) -> Result<QMatrix> {
    let qi = check_resolvable(t, s)?;
    let shifted = t - &QMatrix::scalar(t.dim(), s.conj());
    Ok(-&(&qi * &shifted))
}

/// `S_R^{-1}(s, T) = -(T - I conj(s)) Q_s(T)^{-1}`.
pub fn s_resolvent_right(t: &QMatrix, s: &Quaternion) -> Result<QMatrix> {
    let qi = check_resolvable(t, s)?;
    let shifted = t - &QMatrix::scalar(t.dim(), s.conj());
    Ok(-&(&shifted * &qi))
}

/// Partial sum `sum_m T^m s^{-1-m}` of the left resolvent series, `|s| > ||T||`.
pub fn s_resolvent_series_left(t: &QMatrix, s: &Quaternion, terms: usize) -> Result<QMatrix> {
    let norm = t.norm_op()?;
    if norm >= s.norm() {
        return Err(Error::Divergent {
            x_norm: norm,
            s_norm: s.norm(),
        });
    }
    let si = s.inv().ok_or(Error::NotInvertible)?;
    let mut tm = QMatrix::identity(t.dim());
    let mut sm = si;
    let mut acc = QMatrix::zeros(t.dim());
    for _ in 0..terms {
        acc = &acc + &tm.right_scalar(sm);
        tm = &tm * t;
        sm = sm * si;
    }
    Ok(acc)
}

fn sum_ordered(parts: Vec<QMatrix>, m: usize) -> QMatrix {
    parts.iter().fold(QMatrix::zeros(m), |a, b| &a + b)
}

/// `f(T) = (1/2pi) \oint S_L^{-1}(s, T) ds_I f(s)` by trapezoid quadrature.
pub fn s_functional_calculus(t: &QMatrix, f: &SliceFunction<Quaternion>, contour: &Contour) -> Result<QMatrix> {
    contour.check_encloses(&s_spectrum(t)?)?;
    let m = t.dim();
    let parts = contour
        .nodes::<Quaternion>()
        .into_par_iter()
        .map(|(s, w)| {
            let k = s_resolvent_left(t, &s)?;
            Ok(k.right_scalar(w * f.eval(&s)?))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(sum_ordered(parts, m))
}

/// `f(T) = (1/2pi) \oint f(s) ds_I S_R^{-1}(s, T)` for intrinsic `f`.
pub fn s_functional_calculus_right(
    t: &QMatrix,
    f: &SliceFunction<Quaternion>,
    contour: &Contour,
) -> Result<QMatrix> {
    if !f.is_intrinsic() {
        return Err(Error::NonIntrinsic);
    }
    contour.check_encloses(&s_spectrum(t)?)?;
    let m = t.dim();
    let parts = contour
        .nodes::<Quaternion>()
        .into_par_iter()
        .map(|(s, w)| {
            let k = s_resolvent_right(t, &s)?;
            Ok(k.left_scalar(f.eval(&s)? * w))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(sum_ordered(parts, m))
}

/// Complex Riesz–Dunford integral `(1/2 pi i) \oint (lambda - M)^{-1} g(lambda) d lambda`
/// on the circle `|lambda - center| = radius`.
pub fn riesz_dunford_oracle(
    mtx: &Mat<c64>,
    g: &Holomorphic,
    center: f64,
    radius: f64,
    nodes: usize,
) -> Result<Mat<c64>> {
    let n = mtx.nrows();
    let mut acc = Mat::<c64>::zeros(n, n);
    for k in 0..nodes {
        let th = 2.0 * std::f64::consts::PI * k as f64 / nodes as f64;
        let off = c64::new(radius * th.cos(), radius * th.sin());
        let lam = c64::new(center, 0.0) + off;
        let shifted = Mat::<c64>::from_fn(n, n, |i, j| if i == j { lam - mtx[(i, j)] } else { -mtx[(i, j)] });
        let inv = shifted.partial_piv_lu().solve(Mat::<c64>::identity(n, n));
        let wgt = off * g.eval(lam)? / nodes as f64;
        acc += inv * faer::Scale(wgt);
    }
    Ok(acc)
}

/// A matrix given by right eigenpairs, `T = V diag(lambda) V^{-1}`.
#[derive(Clone, Debug)]
pub struct EigenDecomposition {
    pub vectors: QMatrix,
    pub values: Vec<Quaternion>,
}

impl EigenDecomposition {
    pub fn new(vectors: QMatrix, values: Vec<Quaternion>) -> Result<Self> {
        if values.len() != vectors.dim() {
            return Err(Error::DimensionMismatch {
                expected: vectors.dim(),
                found: values.len(),
            });
        }
        vectors.inverse()?;
        Ok(Self { vectors, values })
    }

    pub fn matrix(&self) -> Result<QMatrix> {
        let vi = self.vectors.inverse()?;
        Ok(&(&self.vectors * &QMatrix::diag(&self.values)) * &vi)
    }
}

/// `V diag(f(lambda_k)) V^{-1}`; only meaningful for intrinsic `f`.
pub fn intrinsic_eigen_oracle(dec: &EigenDecomposition, f: &SliceFunction<Quaternion>) -> Result<QMatrix> {
    if !f.is_intrinsic() {
        return Err(Error::NonIntrinsic);
    }
    let fv = dec
        .values
        .iter()
        .map(|l| f.eval(l))
        .collect::<Result<Vec<_>>>()?;
    let vi = dec.vectors.inverse()?;
    Ok(&(&dec.vectors * &QMatrix::diag(&fv)) * &vi)
}

/// `max_i |(f(T) v)_i - v_i f(lambda)|` for a right eigenpair `T v = v lambda`.
pub fn eigen_relation_residual(
    f_of_t: &QMatrix,
    v: &[Quaternion],
    lambda: &Quaternion,
    f: &SliceFunction<Quaternion>,
) -> Result<f64> {
    let fl = f.eval(lambda)?;
    let lhs = f_of_t.apply(v);
    Ok(lhs
        .iter()
        .zip(v)
        .map(|(a, b)| (*a - *b * fl).norm())
        .fold(0.0, f64::max))
}

/// `||(f * g)(T) - f(T) g(T)||_F`; vanishes when `f` is intrinsic.
pub fn product_rule_defect(
    t: &QMatrix,
    f: &SliceFunction<Quaternion>,
    g: &SliceFunction<Quaternion>,
    contour: &Contour,
) -> Result<f64> {
    let fg = s_functional_calculus(t, &f.star(g), contour)?;
    let ft = s_functional_calculus(t, f, contour)?;
    let gt = s_functional_calculus(t, g, contour)?;
    Ok((&fg - &(&ft * &gt)).norm_fro())
}
