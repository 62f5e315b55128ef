use faer::linalg::solvers::SolveCore;
use faer::sparse::linalg::solvers::{Lu, SymbolicLu};
use faer::sparse::{SparseColMatRef, SymbolicSparseColMat};
use faer::{Conj, Mat};

use crate::error::{Error, Result};
use crate::hypercomplex::Quaternion;
use crate::scalc::QMatrix;

/// Row-compressed quaternion matrix acting on column vectors from the left.
#[derive(Clone, Debug, PartialEq)]
pub struct SparseQMatrix {
    n: usize,
    row_ptr: Vec<usize>,
    cols: Vec<usize>,
    vals: Vec<Quaternion>,
}

impl SparseQMatrix {
    /// Duplicate entries in a row are summed; exact zeros are dropped.
    pub fn from_rows(n: usize, rows: Vec<Vec<(usize, Quaternion)>>) -> Self {
        assert_eq!(rows.len(), n);
        let mut row_ptr = Vec::with_capacity(n + 1);
        let mut cols = Vec::new();
        let mut vals = Vec::new();
        row_ptr.push(0);
        for mut row in rows {
            row.sort_by_key(|e| e.0);
            let mut k = 0;
            while k < row.len() {
                let j = row[k].0;
                let mut q = Quaternion::ZERO;
                while k < row.len() && row[k].0 == j {
                    q += row[k].1;
                    k += 1;
                }
                assert!(j < n, "column index out of range");
                if q != Quaternion::ZERO {
                    cols.push(j);
                    vals.push(q);
                }
            }
            row_ptr.push(cols.len());
        }
        Self { n, row_ptr, cols, vals }
    }

    pub fn identity(n: usize) -> Self {
        Self::from_rows(n, (0..n).map(|i| vec![(i, Quaternion::ONE)]).collect())
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn nnz(&self) -> usize {
        self.vals.len()
    }

    pub fn row(&self, i: usize) -> impl Iterator<Item = (usize, Quaternion)> + '_ {
        let r = self.row_ptr[i]..self.row_ptr[i + 1];
        self.cols[r.clone()].iter().copied().zip(self.vals[r].iter().copied())
    }

    pub fn get(&self, i: usize, j: usize) -> Quaternion {
        let r = self.row_ptr[i]..self.row_ptr[i + 1];
        match self.cols[r.clone()].binary_search(&j) {
            Ok(k) => self.vals[r.start + k],
            Err(_) => Quaternion::ZERO,
        }
    }

    pub fn apply(&self, v: &[Quaternion]) -> Vec<Quaternion> {
        assert_eq!(v.len(), self.n, "vector length mismatch");
        (0..self.n).map(|i| self.row(i).map(|(j, q)| q * v[j]).sum()).collect()
    }

    /// Action of the conjugate transpose.
    pub fn apply_adjoint(&self, v: &[Quaternion]) -> Vec<Quaternion> {
        assert_eq!(v.len(), self.n, "vector length mismatch");
        let mut out = vec![Quaternion::ZERO; self.n];
        for (i, vi) in v.iter().enumerate() {
            for (j, q) in self.row(i) {
                out[j] += q.conj() * *vi;
            }
        }
        out
    }

    pub fn matmul(&self, o: &SparseQMatrix) -> SparseQMatrix {
        assert_eq!(self.n, o.n);
        let rows = (0..self.n)
            .map(|i| {
                let mut row = Vec::new();
                for (k, a) in self.row(i) {
                    for (j, b) in o.row(k) {
                        row.push((j, a * b));
                    }
                }
                row
            })
            .collect();
        SparseQMatrix::from_rows(self.n, rows)
    }

    pub fn to_dense(&self) -> QMatrix {
        let mut t = QMatrix::zeros(self.n);
        for i in 0..self.n {
            for (j, q) in self.row(i) {
                t[(i, j)] = q;
            }
        }
        t
    }

    pub fn from_dense(t: &QMatrix) -> Self {
        let m = t.dim();
        Self::from_rows(m, (0..m).map(|i| (0..m).map(|j| (j, t[(i, j)])).collect()).collect())
    }
}

/// Real 4x4 matrix of `w -> q w` on `[w, x, y, z]`.
pub fn left_mult_block(q: &Quaternion) -> [[f64; 4]; 4] {
    let [a, b, c, d] = q.to_array();
    [[a, -b, -c, -d], [b, a, -d, c], [c, d, a, -b], [d, -c, b, a]]
}

pub(crate) fn pack(v: &[Quaternion], out: &mut Mat<f64>, col: usize) {
    for (i, q) in v.iter().enumerate() {
        let a = q.to_array();
        for r in 0..4 {
            out[(4 * i + r, col)] = a[r];
        }
    }
}

pub(crate) fn unpack(m: &Mat<f64>, col: usize) -> Vec<Quaternion> {
    (0..m.nrows() / 4)
        .map(|i| Quaternion::new(m[(4 * i, col)], m[(4 * i + 1, col)], m[(4 * i + 2, col)], m[(4 * i + 3, col)]))
        .collect()
}

/// Real form of `Q_s(T) = T^2 - 2 s0 T + |s|^2 I` on a fixed sparsity pattern, with the
/// symbolic LU computed once and shared by every numeric factorisation.
#[derive(Debug)]
pub struct QsPattern {
    n: usize,
    symbolic: SymbolicSparseColMat<usize>,
    t2: Vec<f64>,
    t1: Vec<f64>,
    id: Vec<f64>,
    lu: SymbolicLu<usize>,
}

impl QsPattern {
    pub fn new(t: &SparseQMatrix) -> Result<Self> {
        let n = t.dim();
        let t2m = t.matmul(t);
        let mut by_col: Vec<Vec<usize>> = vec![Vec::new(); n];
        for m in [&t2m, t] {
            for i in 0..n {
                for (j, _) in m.row(i) {
                    by_col[j].push(i);
                }
            }
        }
        for (j, c) in by_col.iter_mut().enumerate() {
            c.push(j);
            c.sort_unstable();
            c.dedup();
        }
        let mut col_ptr = vec![0usize];
        let mut row_idx = Vec::new();
        let (mut t2, mut t1, mut id) = (Vec::new(), Vec::new(), Vec::new());
        for (j, rows) in by_col.iter().enumerate() {
            let blocks: Vec<_> = rows
                .iter()
                .map(|&i| {
                    let e = if i == j { Quaternion::ONE } else { Quaternion::ZERO };
                    (
                        i,
                        left_mult_block(&t2m.get(i, j)),
                        left_mult_block(&t.get(i, j)),
                        left_mult_block(&e),
                    )
                })
                .collect();
            for c in 0..4 {
                for (i, b2, b1, b0) in &blocks {
                    for r in 0..4 {
                        row_idx.push(4 * i + r);
                        t2.push(b2[r][c]);
                        t1.push(b1[r][c]);
                        id.push(b0[r][c]);
                    }
                }
                col_ptr.push(row_idx.len());
            }
        }
        let symbolic = SymbolicSparseColMat::new_checked(4 * n, 4 * n, col_ptr, None, row_idx);
        let lu = SymbolicLu::try_new(symbolic.as_ref()).map_err(|e| Error::Solver(format!("{e:?}")))?;
        Ok(Self {
            n,
            symbolic,
            t2,
            t1,
            id,
            lu,
        })
    }

    pub fn factor(&self, s0: f64, s_norm_sqr: f64) -> Result<SparseQsFactor> {
        let vals: Vec<f64> = (0..self.t2.len())
            .map(|k| self.t2[k] - 2.0 * s0 * self.t1[k] + s_norm_sqr * self.id[k])
            .collect();
        let mat = SparseColMatRef::new(self.symbolic.as_ref(), &vals);
        let lu = Lu::try_new_with_symbolic(self.lu.clone(), mat).map_err(|e| Error::Solver(format!("{e:?}")))?;
        Ok(SparseQsFactor { n: self.n, lu })
    }
}

pub struct SparseQsFactor {
    n: usize,
    lu: Lu<usize, f64>,
}

impl SparseQsFactor {
    pub(crate) fn solve_real(&self, rhs: &mut Mat<f64>, adjoint: bool) {
        if adjoint {
            self.lu.solve_transpose_in_place_with_conj(Conj::No, rhs.as_mut());
        } else {
            self.lu.solve_in_place_with_conj(Conj::No, rhs.as_mut());
        }
    }

    pub(crate) fn solve_vec(&self, rhs: &[Quaternion], adjoint: bool) -> Vec<Quaternion> {
        let mut m = Mat::<f64>::zeros(4 * self.n, 1);
        pack(rhs, &mut m, 0);
        self.solve_real(&mut m, adjoint);
        unpack(&m, 0)
    }
}
