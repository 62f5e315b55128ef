use std::ops::{Add, Index, IndexMut, Mul, Neg, Sub};

use faer::linalg::solvers::Solve;
use faer::{c64, Mat};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hypercomplex::Quaternion;

/// Square quaternion matrix acting on column vectors from the left.
///
/// Right scalar multiplication of vectors commutes with this action, so the
/// matrix is a right-linear operator on `H^m`.
#[derive(Clone, Debug, PartialEq)]
pub struct QMatrix {
    m: usize,
    data: Vec<Quaternion>,
}

/// JSON form: `{"m": m, "entries": [[w, x, y, z], ...]}` in row-major order.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MatrixFile {
    pub m: usize,
    pub entries: Vec<Quaternion>,
}

impl TryFrom<MatrixFile> for QMatrix {
    type Error = Error;
    fn try_from(f: MatrixFile) -> Result<Self> {
        QMatrix::new(f.m, f.entries)
    }
}

impl From<&QMatrix> for MatrixFile {
    fn from(t: &QMatrix) -> Self {
        MatrixFile {
            m: t.m,
            entries: t.data.clone(),
        }
    }
}

fn qc(a: c64, b: c64) -> Quaternion {
    Quaternion::new(a.re, a.im, b.re, b.im)
}

impl QMatrix {
    pub fn new(m: usize, data: Vec<Quaternion>) -> Result<Self> {
        if m == 0 {
            return Err(Error::InvalidInput("matrix size must be positive".into()));
        }
        if data.len() != m * m {
            return Err(Error::DimensionMismatch {
                expected: m * m,
                found: data.len(),
            });
        }
        if data.iter().any(|q| !q.is_finite()) {
            return Err(Error::InvalidInput("non-finite matrix entry".into()));
        }
        Ok(Self { m, data })
    }

    pub fn zeros(m: usize) -> Self {
        Self {
            m,
            data: vec![Quaternion::ZERO; m * m],
        }
    }

    pub fn identity(m: usize) -> Self {
        Self::scalar(m, Quaternion::ONE)
    }

    /// `diag(q, ..., q)`.
    pub fn scalar(m: usize, q: Quaternion) -> Self {
        let mut t = Self::zeros(m);
        for i in 0..m {
            t[(i, i)] = q;
        }
        t
    }

    pub fn diag(d: &[Quaternion]) -> Self {
        let mut t = Self::zeros(d.len());
        for (i, q) in d.iter().enumerate() {
            t[(i, i)] = *q;
        }
        t
    }

    pub fn from_fn(m: usize, mut f: impl FnMut(usize, usize) -> Quaternion) -> Self {
        let mut data = Vec::with_capacity(m * m);
        for i in 0..m {
            for j in 0..m {
                data.push(f(i, j));
            }
        }
        Self { m, data }
    }

    /// Entries with components uniform in `[-1, 1)`.
    pub fn random<R: rand::Rng + ?Sized>(m: usize, rng: &mut R) -> Self {
        Self::from_fn(m, |_, _| {
            Quaternion::new(
                rng.gen_range(-1.0..1.0),
                rng.gen_range(-1.0..1.0),
                rng.gen_range(-1.0..1.0),
                rng.gen_range(-1.0..1.0),
            )
        })
    }

    /// Real matrix, row-major.
    pub fn from_real(m: usize, a: &[f64]) -> Result<Self> {
        Self::new(m, a.iter().map(|&r| Quaternion::real(r)).collect())
    }

    /// Complex matrix embedded in the plane `C_{e1}`.
    pub fn from_complex(m: &Mat<c64>) -> Self {
        Self::from_fn(m.nrows(), |i, j| qc(m[(i, j)], c64::new(0.0, 0.0)))
    }

    pub fn dim(&self) -> usize {
        self.m
    }

    pub fn entries(&self) -> &[Quaternion] {
        &self.data
    }

    pub fn map(&self, f: impl Fn(Quaternion) -> Quaternion) -> Self {
        Self {
            m: self.m,
            data: self.data.iter().map(|q| f(*q)).collect(),
        }
    }

    /// `T diag(q)`: every entry multiplied by `q` on the right.
    pub fn right_scalar(&self, q: Quaternion) -> Self {
        self.map(|a| a * q)
    }

    /// `diag(q) T`.
    pub fn left_scalar(&self, q: Quaternion) -> Self {
        self.map(|a| q * a)
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Self {
        Self::from_fn(self.m, |i, j| self[(j, i)].conj())
    }

    pub fn apply(&self, v: &[Quaternion]) -> Vec<Quaternion> {
        assert_eq!(v.len(), self.m, "vector length mismatch");
        (0..self.m)
            .map(|i| (0..self.m).map(|j| self[(i, j)] * v[j]).sum())
            .collect()
    }

    pub fn column(&self, j: usize) -> Vec<Quaternion> {
        (0..self.m).map(|i| self[(i, j)]).collect()
    }

    pub fn norm_fro(&self) -> f64 {
        self.data.iter().map(|q| q.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|q| q.norm()).fold(0.0, f64::max)
    }

    /// Operator 2-norm, the largest singular value of the complex adjoint.
    pub fn norm_op(&self) -> Result<f64> {
        let sv = self
            .complex_adjoint()
            .singular_values()
            .map_err(|e| Error::Solver(format!("{e:?}")))?;
        Ok(sv.first().copied().unwrap_or(0.0))
    }

    pub fn powi(&self, k: u32) -> Self {
        let mut acc = Self::identity(self.m);
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    /// `chi(A + B e2) = [[A, B], [-conj B, conj A]]` with `A, B` in `C_{e1}`.
    pub fn complex_adjoint(&self) -> Mat<c64> {
        let m = self.m;
        Mat::from_fn(2 * m, 2 * m, |r, c| {
            let (i, j) = (r % m, c % m);
            let q = self[(i, j)];
            let a = c64::new(q.w, q.x);
            let b = c64::new(q.y, q.z);
            match (r < m, c < m) {
                (true, true) => a,
                (true, false) => b,
                (false, true) => -b.conj(),
                (false, false) => a.conj(),
            }
        })
    }

    /// Inverse of the complex adjoint map (reads the top block row).
    pub fn from_complex_adjoint(chi: &Mat<c64>) -> Self {
        let m = chi.nrows() / 2;
        Self::from_fn(m, |i, j| qc(chi[(i, j)], chi[(i, j + m)]))
    }

    pub fn inverse(&self) -> Result<Self> {
        let chi = self.complex_adjoint();
        let n = chi.nrows();
        let inv = chi.partial_piv_lu().solve(Mat::<c64>::identity(n, n));
        let out = Self::from_complex_adjoint(&inv);
        if out.data.iter().any(|q| !q.is_finite()) {
            return Err(Error::Solver("singular matrix".into()));
        }
        let cond = self.norm_fro() * out.norm_fro();
        if !(cond < 1e14) {
            return Err(Error::Solver(format!("matrix numerically singular (condition ~ {cond:.2e})")));
        }
        Ok(out)
    }

    /// Solve `T x = b`.
    pub fn solve(&self, b: &[Quaternion]) -> Result<Vec<Quaternion>> {
        let inv = self.inverse()?;
        Ok(inv.apply(b))
    }
}

impl Index<(usize, usize)> for QMatrix {
    type Output = Quaternion;
    fn index(&self, (i, j): (usize, usize)) -> &Quaternion {
        &self.data[i * self.m + j]
    }
}

impl IndexMut<(usize, usize)> for QMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Quaternion {
        &mut self.data[i * self.m + j]
    }
}

impl Add for &QMatrix {
    type Output = QMatrix;
    fn add(self, o: &QMatrix) -> QMatrix {
        assert_eq!(self.m, o.m);
        QMatrix {
            m: self.m,
            data: self.data.iter().zip(&o.data).map(|(a, b)| *a + *b).collect(),
        }
    }
}

impl Sub for &QMatrix {
    type Output = QMatrix;
    fn sub(self, o: &QMatrix) -> QMatrix {
        assert_eq!(self.m, o.m);
        QMatrix {
            m: self.m,
            data: self.data.iter().zip(&o.data).map(|(a, b)| *a - *b).collect(),
        }
    }
}

impl Neg for &QMatrix {
    type Output = QMatrix;
    fn neg(self) -> QMatrix {
        self.map(|q| -q)
    }
}

impl Mul for &QMatrix {
    type Output = QMatrix;
    fn mul(self, o: &QMatrix) -> QMatrix {
        assert_eq!(self.m, o.m);
        let m = self.m;
        let mut out = QMatrix::zeros(m);
        for i in 0..m {
            for k in 0..m {
                let a = self[(i, k)];
                for j in 0..m {
                    out.data[i * m + j] += a * o[(k, j)];
                }
            }
        }
        out
    }
}

impl Mul<f64> for &QMatrix {
    type Output = QMatrix;
    fn mul(self, r: f64) -> QMatrix {
        self.map(|q| q * r)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn random_qmatrix(m: usize, seed: u64) -> QMatrix {
        QMatrix::random(m, &mut ChaCha8Rng::seed_from_u64(seed))
    }

    #[test]
    fn complex_adjoint_is_multiplicative() {
        let a = random_qmatrix(3, 1);
        let b = random_qmatrix(3, 2);
        let lhs = (&a * &b).complex_adjoint();
        let rhs = a.complex_adjoint() * b.complex_adjoint();
        assert!((lhs - rhs).norm_l2() < 1e-13);
        assert_eq!(QMatrix::from_complex_adjoint(&a.complex_adjoint()), a);
    }

    #[test]
    fn inverse_round_trip() {
        let a = random_qmatrix(4, 3);
        let inv = a.inverse().unwrap();
        assert!((&(&a * &inv) - &QMatrix::identity(4)).norm_fro() < 1e-12);
        assert!((&(&inv * &a) - &QMatrix::identity(4)).norm_fro() < 1e-12);
    }

    #[test]
    fn singular_is_reported() {
        let a = QMatrix::from_real(2, &[1.0, 2.0, 2.0, 4.0]).unwrap();
        assert!(a.inverse().is_err());
    }

    #[test]
    fn matrix_file_round_trip() {
        let a = random_qmatrix(2, 9);
        let json = serde_json::to_string(&MatrixFile::from(&a)).unwrap();
        let back: MatrixFile = serde_json::from_str(&json).unwrap();
        assert_eq!(QMatrix::try_from(back).unwrap(), a);
        assert!(QMatrix::new(2, vec![Quaternion::ONE; 3]).is_err());
    }
}
