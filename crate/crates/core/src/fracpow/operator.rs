use faer::Mat;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::grid::GridOperator;
use super::sparse::{pack, unpack, SparseQsFactor};
use crate::error::{Error, Result};
use crate::hypercomplex::Quaternion;
use crate::scalc::QMatrix;

/// A right-linear operator on `H^m` with factorisable `Q_s(T) = T^2 - 2 s0 T + |s|^2`.
pub trait QuaternionicOperator: Sync {
    fn dim(&self) -> usize;
    fn apply(&self, v: &[Quaternion]) -> Vec<Quaternion>;
    fn apply_adjoint(&self, v: &[Quaternion]) -> Vec<Quaternion>;
    fn factor_qs(&self, s0: f64, s_norm_sqr: f64) -> Result<Box<dyn QsFactor>>;
}

/// Factorised `Q_s(T)`.
pub trait QsFactor: Send + Sync {
    fn solve(&self, rhs: &[Quaternion]) -> Vec<Quaternion>;
    /// Solve with the conjugate transpose of `Q_s(T)`.
    fn solve_adjoint(&self, rhs: &[Quaternion]) -> Vec<Quaternion>;
    /// Solve for several right-hand sides at once.
    fn solve_many(&self, rhs: &[Vec<Quaternion>]) -> Vec<Vec<Quaternion>> {
        rhs.iter().map(|r| self.solve(r)).collect()
    }
}

impl QsFactor for SparseQsFactor {
    fn solve(&self, rhs: &[Quaternion]) -> Vec<Quaternion> {
        self.solve_vec(rhs, false)
    }

    fn solve_adjoint(&self, rhs: &[Quaternion]) -> Vec<Quaternion> {
        self.solve_vec(rhs, true)
    }

    fn solve_many(&self, rhs: &[Vec<Quaternion>]) -> Vec<Vec<Quaternion>> {
        if rhs.is_empty() {
            return Vec::new();
        }
        let mut m = Mat::<f64>::zeros(4 * rhs[0].len(), rhs.len());
        for (c, r) in rhs.iter().enumerate() {
            pack(r, &mut m, c);
        }
        self.solve_real(&mut m, false);
        (0..rhs.len()).map(|c| unpack(&m, c)).collect()
    }
}

fn check_finite(v: &[Quaternion]) -> Result<()> {
    if v.iter().all(|q| q.is_finite()) {
        Ok(())
    } else {
        Err(Error::Solver("factorisation produced non-finite values".into()))
    }
}

impl QuaternionicOperator for GridOperator {
    fn dim(&self) -> usize {
        self.grid().len()
    }

    fn apply(&self, v: &[Quaternion]) -> Vec<Quaternion> {
        self.matrix().apply(v)
    }

    fn apply_adjoint(&self, v: &[Quaternion]) -> Vec<Quaternion> {
        self.matrix().apply_adjoint(v)
    }

    fn factor_qs(&self, s0: f64, s_norm_sqr: f64) -> Result<Box<dyn QsFactor>> {
        let f = self.pattern()?.factor(s0, s_norm_sqr)?;
        let probe: Vec<Quaternion> = (0..self.dim()).map(|i| Quaternion::real(1.0 + (i % 7) as f64)).collect();
        check_finite(&f.solve_vec(&probe, false))?;
        Ok(Box::new(f))
    }
}

struct DenseQsFactor {
    inv: QMatrix,
    inv_adj: QMatrix,
}

impl QsFactor for DenseQsFactor {
    fn solve(&self, rhs: &[Quaternion]) -> Vec<Quaternion> {
        self.inv.apply(rhs)
    }

    fn solve_adjoint(&self, rhs: &[Quaternion]) -> Vec<Quaternion> {
        self.inv_adj.apply(rhs)
    }
}

impl QuaternionicOperator for QMatrix {
    fn dim(&self) -> usize {
        QMatrix::dim(self)
    }

    fn apply(&self, v: &[Quaternion]) -> Vec<Quaternion> {
        QMatrix::apply(self, v)
    }

    fn apply_adjoint(&self, v: &[Quaternion]) -> Vec<Quaternion> {
        self.adjoint().apply(v)
    }

    fn factor_qs(&self, s0: f64, s_norm_sqr: f64) -> Result<Box<dyn QsFactor>> {
        let m = self.dim();
        let q = &(&(self * self) - &(self * (2.0 * s0))) + &QMatrix::scalar(m, Quaternion::real(s_norm_sqr));
        let inv = q.inverse()?;
        let inv_adj = inv.adjoint();
        Ok(Box::new(DenseQsFactor { inv, inv_adj }))
    }
}

pub fn vec_norm(v: &[Quaternion]) -> f64 {
    v.iter().map(|q| q.norm_sqr()).sum::<f64>().sqrt()
}

fn random_unit(m: usize, rng: &mut ChaCha8Rng) -> Vec<Quaternion> {
    let v: Vec<Quaternion> = (0..m)
        .map(|_| {
            Quaternion::new(
                rng.gen_range(-1.0..1.0),
                rng.gen_range(-1.0..1.0),
                rng.gen_range(-1.0..1.0),
                rng.gen_range(-1.0..1.0),
            )
        })
        .collect();
    let n = vec_norm(&v);
    v.into_iter().map(|q| q * (1.0 / n)).collect()
}

/// Largest singular value of a real-linear map given with its adjoint:
/// power iteration on `A^* A` from two seeded random starts, until the estimate
/// settles to 1e-13 or after 4000 steps.
pub fn power_norm<F, G>(m: usize, apply: F, apply_adjoint: G) -> f64
where
    F: Fn(&[Quaternion]) -> Vec<Quaternion>,
    G: Fn(&[Quaternion]) -> Vec<Quaternion>,
{
    let mut best = 0.0f64;
    for seed in [0x5eed_u64, 0xfeed] {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut v = random_unit(m, &mut rng);
        let mut est = 0.0f64;
        for _ in 0..4000 {
            let w = apply_adjoint(&apply(&v));
            let n = vec_norm(&w);
            if !(n > 0.0) || !n.is_finite() {
                est = if n.is_finite() { 0.0 } else { f64::INFINITY };
                break;
            }
            let prev = est;
            est = n.sqrt();
            v = w.into_iter().map(|q| q * (1.0 / n)).collect();
            if (est - prev).abs() <= 1e-13 * est {
                break;
            }
        }
        best = best.max(est);
    }
    best
}

/// `||T||` and `sigma_min(T^2)^{1/2}`, the spectral scales that size the quadrature.
pub fn spectral_scales<O: QuaternionicOperator + ?Sized>(op: &O) -> (f64, f64) {
    let m = op.dim();
    let hi = power_norm(m, |v| op.apply(v), |v| op.apply_adjoint(v));
    let lo = match op.factor_qs(0.0, 0.0) {
        Ok(f) => {
            let inv = power_norm(m, |v| f.solve(v), |v| f.solve_adjoint(v));
            if inv.is_finite() && inv > 0.0 {
                (1.0 / inv).sqrt()
            } else {
                0.0
            }
        }
        Err(_) => 0.0,
    };
    let floor = 1e-6 * hi.max(f64::MIN_POSITIVE);
    (lo.max(floor).min(hi.max(floor)), hi.max(floor))
}
