use std::sync::OnceLock;

use faer::{Mat, Side};
use serde::{Deserialize, Serialize};

use super::coeff::CoefficientField;
use super::sparse::{QsPattern, SparseQMatrix};
use crate::error::{Error, Result};
use crate::hypercomplex::Quaternion;

/// Interior nodes of `[0, L1] x [0, L2] x [0, L3]`, spacing `h_i = L_i / (N_i + 1)`.
///
/// Nodes are numbered with `k` fastest: `index = (i * N2 + j) * N3 + k`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BoxGrid {
    #[serde(rename = "L")]
    pub lengths: [f64; 3],
    #[serde(rename = "N")]
    pub n: [usize; 3],
}

impl BoxGrid {
    pub fn new(lengths: [f64; 3], n: [usize; 3]) -> Result<Self> {
        if lengths.iter().any(|l| !(*l > 0.0) || !l.is_finite()) {
            return Err(Error::InvalidInput("box lengths must be positive".into()));
        }
        if let Some(ax) = n.iter().position(|&k| k < 2) {
            return Err(Error::GridTooCoarse(format!(
                "axis {} has {} interior nodes; at least 2 are required",
                ax + 1,
                n[ax]
            )));
        }
        Ok(Self { lengths, n })
    }

    pub fn cube(length: f64, n: usize) -> Result<Self> {
        Self::new([length; 3], [n; 3])
    }

    pub fn validate(&self) -> Result<()> {
        Self::new(self.lengths, self.n).map(|_| ())
    }

    pub fn len(&self) -> usize {
        self.n[0] * self.n[1] * self.n[2]
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn spacing(&self) -> [f64; 3] {
        [0, 1, 2].map(|a| self.lengths[a] / (self.n[a] + 1) as f64)
    }

    pub fn index(&self, ijk: [usize; 3]) -> usize {
        (ijk[0] * self.n[1] + ijk[1]) * self.n[2] + ijk[2]
    }

    pub fn coords(&self, idx: usize) -> [usize; 3] {
        let k = idx % self.n[2];
        let j = (idx / self.n[2]) % self.n[1];
        let i = idx / (self.n[1] * self.n[2]);
        [i, j, k]
    }

    pub fn position(&self, idx: usize) -> [f64; 3] {
        let c = self.coords(idx);
        let h = self.spacing();
        [0, 1, 2].map(|a| (c[a] + 1) as f64 * h[a])
    }

    /// Neighbour one step along `axis`, `None` on the Dirichlet ghost layer.
    pub fn neighbor(&self, idx: usize, axis: usize, forward: bool) -> Option<usize> {
        let mut c = self.coords(idx);
        if forward {
            if c[axis] + 1 >= self.n[axis] {
                return None;
            }
            c[axis] += 1;
        } else {
            if c[axis] == 0 {
                return None;
            }
            c[axis] -= 1;
        }
        Some(self.index(c))
    }

    /// Central difference `D_axis` with zero ghosts, on real fields.
    pub fn diff(&self, v: &[f64], axis: usize) -> Vec<f64> {
        let h2 = 2.0 * self.spacing()[axis];
        (0..self.len())
            .map(|p| {
                let f = self.neighbor(p, axis, true).map_or(0.0, |q| v[q]);
                let b = self.neighbor(p, axis, false).map_or(0.0, |q| v[q]);
                (f - b) / h2
            })
            .collect()
    }

    /// `div_h w = sum_l D_l w_l`.
    pub fn div(&self, w: &[[f64; 3]]) -> Vec<f64> {
        let mut out = vec![0.0; self.len()];
        for axis in 0..3 {
            let comp: Vec<f64> = w.iter().map(|x| x[axis]).collect();
            for (o, d) in out.iter_mut().zip(self.diff(&comp, axis)) {
                *o += d;
            }
        }
        out
    }

    /// `O v = -div_h grad_h v = sum_l D_l^T D_l v`.
    pub fn composite_laplacian(&self, v: &[f64]) -> Vec<f64> {
        let mut out = vec![0.0; self.len()];
        for axis in 0..3 {
            let dd = self.diff(&self.diff(v, axis), axis);
            for (o, d) in out.iter_mut().zip(dd) {
                *o -= d;
            }
        }
        out
    }

    /// Dense `O` as a real matrix.
    pub fn composite_laplacian_dense(&self) -> Mat<f64> {
        let n = self.len();
        let mut m = Mat::<f64>::zeros(n, n);
        let mut e = vec![0.0; n];
        for j in 0..n {
            e[j] = 1.0;
            for (i, x) in self.composite_laplacian(&e).into_iter().enumerate() {
                m[(i, j)] = x;
            }
            e[j] = 0.0;
        }
        m
    }

    /// Eigenpairs of `sum_l c_l^2 D_l^T D_l` from the one-dimensional factors.
    pub fn tensor_eigen(&self, weights: [f64; 3]) -> Result<TensorEigen> {
        let mut axes = Vec::with_capacity(3);
        for axis in 0..3 {
            let n = self.n[axis];
            let h = self.spacing()[axis];
            let d = Mat::<f64>::from_fn(n, n, |i, j| {
                if j == i + 1 {
                    0.5 / h
                } else if i == j + 1 {
                    -0.5 / h
                } else {
                    0.0
                }
            });
            let k = d.transpose() * &d;
            let evd = k
                .self_adjoint_eigen(Side::Lower)
                .map_err(|e| Error::Solver(format!("symmetric eigen solver failed: {e:?}")))?;
            let vals: Vec<f64> = (0..n).map(|i| evd.S()[i] * weights[axis] * weights[axis]).collect();
            axes.push((vals, evd.U().to_owned()));
        }
        Ok(TensorEigen { grid: *self, axes })
    }
}

/// Separable eigenbasis of a constant-coefficient composite Laplacian.
#[derive(Clone, Debug)]
pub struct TensorEigen {
    grid: BoxGrid,
    axes: Vec<(Vec<f64>, Mat<f64>)>,
}

impl TensorEigen {
    pub fn len(&self) -> usize {
        self.grid.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Eigenvalue of mode `(a, b, c)` numbered like grid nodes.
    pub fn value(&self, mode: usize) -> f64 {
        let [a, b, c] = self.grid.coords(mode);
        self.axes[0].0[a] + self.axes[1].0[b] + self.axes[2].0[c]
    }

    pub fn vector(&self, mode: usize) -> Vec<f64> {
        let [a, b, c] = self.grid.coords(mode);
        (0..self.grid.len())
            .map(|p| {
                let [i, j, k] = self.grid.coords(p);
                self.axes[0].1[(i, a)] * self.axes[1].1[(j, b)] * self.axes[2].1[(k, c)]
            })
            .collect()
    }

    /// Modes sorted by eigenvalue.
    pub fn sorted_modes(&self) -> Vec<usize> {
        let mut m: Vec<usize> = (0..self.len()).collect();
        m.sort_by(|x, y| self.value(*x).total_cmp(&self.value(*y)).then(x.cmp(y)));
        m
    }

    /// Coefficients of `v` in the eigenbasis, by three one-dimensional transforms.
    pub fn project(&self, v: &[Quaternion]) -> Vec<Quaternion> {
        let mut cur = v.to_vec();
        for axis in 0..3 {
            let u = &self.axes[axis].1;
            let mut next = vec![Quaternion::ZERO; cur.len()];
            for (p, out) in next.iter_mut().enumerate() {
                let c = self.grid.coords(p);
                let mut acc = Quaternion::ZERO;
                for i in 0..self.grid.n[axis] {
                    let mut src = c;
                    src[axis] = i;
                    acc += cur[self.grid.index(src)] * u[(i, c[axis])];
                }
                *out = acc;
            }
            cur = next;
        }
        cur
    }

    /// Inverse of [`TensorEigen::project`].
    pub fn synthesize(&self, coeffs: &[Quaternion]) -> Vec<Quaternion> {
        let mut cur = coeffs.to_vec();
        for axis in 0..3 {
            let u = &self.axes[axis].1;
            let mut next = vec![Quaternion::ZERO; cur.len()];
            for (p, out) in next.iter_mut().enumerate() {
                let c = self.grid.coords(p);
                let mut acc = Quaternion::ZERO;
                for m in 0..self.grid.n[axis] {
                    let mut src = c;
                    src[axis] = m;
                    acc += cur[self.grid.index(src)] * u[(c[axis], m)];
                }
                *out = acc;
            }
            cur = next;
        }
        cur
    }
}

/// `T_h v = sum_l e_l a_l(p) D_l v(p)` on quaternion-valued grid functions.
#[derive(Debug)]
pub struct GridOperator {
    grid: BoxGrid,
    coeffs: [CoefficientField; 3],
    t: SparseQMatrix,
    pattern: OnceLock<std::result::Result<QsPattern, Error>>,
}

impl Clone for GridOperator {
    fn clone(&self) -> Self {
        Self {
            grid: self.grid,
            coeffs: self.coeffs.clone(),
            t: self.t.clone(),
            pattern: OnceLock::new(),
        }
    }
}

impl GridOperator {
    pub fn new(grid: BoxGrid, coeffs: [CoefficientField; 3]) -> Result<Self> {
        grid.validate()?;
        let h = grid.spacing();
        let rows = (0..grid.len())
            .map(|p| {
                let x = grid.position(p);
                let mut row = Vec::with_capacity(6);
                for axis in 0..3 {
                    let a = coeffs[axis].eval(x, grid.lengths);
                    if !a.is_finite() {
                        return Err(Error::InvalidInput(format!("coefficient {} is not finite", axis + 1)));
                    }
                    let w = Quaternion::unit(axis + 1) * (a / (2.0 * h[axis]));
                    if let Some(q) = grid.neighbor(p, axis, true) {
                        row.push((q, w));
                    }
                    if let Some(q) = grid.neighbor(p, axis, false) {
                        row.push((q, -w));
                    }
                }
                Ok(row)
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Self {
            grid,
            coeffs,
            t: SparseQMatrix::from_rows(grid.len(), rows),
            pattern: OnceLock::new(),
        })
    }

    /// Unit coefficients: the discrete quaternionic gradient.
    pub fn gradient(grid: BoxGrid) -> Result<Self> {
        Self::new(grid, [0, 1, 2].map(|_| CoefficientField::constant(1.0)))
    }

    pub fn grid(&self) -> &BoxGrid {
        &self.grid
    }

    pub fn coefficients(&self) -> &[CoefficientField; 3] {
        &self.coeffs
    }

    pub fn matrix(&self) -> &SparseQMatrix {
        &self.t
    }

    /// `Some([c1, c2, c3])` when every coefficient is constant.
    pub fn constant_coefficients(&self) -> Option<[f64; 3]> {
        Some([
            self.coeffs[0].is_constant()?,
            self.coeffs[1].is_constant()?,
            self.coeffs[2].is_constant()?,
        ])
    }

    pub(crate) fn pattern(&self) -> Result<&QsPattern> {
        self.pattern
            .get_or_init(|| QsPattern::new(&self.t))
            .as_ref()
            .map_err(|e| e.clone())
    }

    /// Real-valued field `(a_l D_l v)_l`, the vector part of `T_h v` for real `v`.
    pub fn flux(&self, v: &[f64]) -> Vec<[f64; 3]> {
        let mut out = vec![[0.0; 3]; self.grid.len()];
        for axis in 0..3 {
            let d = self.grid.diff(v, axis);
            for (p, o) in out.iter_mut().enumerate() {
                o[axis] = self.coeffs[axis].eval(self.grid.position(p), self.grid.lengths) * d[p];
            }
        }
        out
    }
}

/// Real scalar part of every entry.
pub fn real_part(v: &[Quaternion]) -> Vec<f64> {
    v.iter().map(|q| q.w).collect()
}

/// Vector part `(x, y, z)` of every entry.
pub fn vector_part(v: &[Quaternion]) -> Vec<[f64; 3]> {
    v.iter().map(|q| [q.x, q.y, q.z]).collect()
}

pub fn from_real(v: &[f64]) -> Vec<Quaternion> {
    v.iter().map(|r| Quaternion::real(*r)).collect()
}
