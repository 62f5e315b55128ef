use std::io::Write;

use faer::linalg::solvers::{Solve, SolveCore};
use faer::sparse::linalg::solvers::{Lu, SymbolicLu};
use faer::sparse::{SparseColMat, Triplet};
use faer::{Conj, Mat};
use serde::Serialize;

use super::grid::{vector_part, BoxGrid, GridOperator};
use super::power::{frac_power_apply_many, QuadratureSpec};
use crate::error::{Error, Result};
use crate::hypercomplex::Quaternion;

/// Largest grid for which the dense fractional operator is assembled.
pub const DENSE_BUDGET: usize = 12 * 12 * 12;

/// `M_1 v = -div_h (a_l D_l v)_l`, the `alpha = 1` heat operator, as a sparse matrix.
pub fn classical_heat_operator(op: &GridOperator) -> Result<SparseColMat<usize, f64>> {
    let n = op.grid().len();
    SparseColMat::try_new_from_triplets(n, n, &classical_triplets(op, 1.0))
        .map_err(|e| Error::Solver(format!("{e:?}")))
}

fn classical_triplets(op: &GridOperator, scale: f64) -> Vec<Triplet<usize, usize, f64>> {
    let g = op.grid();
    let h = g.spacing();
    let mut trip = Vec::new();
    for p in 0..g.len() {
        for axis in 0..3 {
            let w = scale / (4.0 * h[axis] * h[axis]);
            for (fwd, sigma) in [(true, 1.0), (false, -1.0)] {
                let Some(r) = g.neighbor(p, axis, fwd) else { continue };
                let a = op.coefficients()[axis].eval(g.position(r), g.lengths);
                if let Some(q) = g.neighbor(r, axis, true) {
                    trip.push(Triplet::new(p, q, -sigma * a * w));
                }
                if let Some(q) = g.neighbor(r, axis, false) {
                    trip.push(Triplet::new(p, q, sigma * a * w));
                }
            }
        }
    }
    trip
}

/// Dense `M_alpha = -2 div_h Vec P_alpha(T_h)`, one column per grid node.
pub fn fractional_heat_operator(op: &GridOperator, spec: &QuadratureSpec) -> Result<Mat<f64>> {
    let g = op.grid();
    let n = g.len();
    if n > DENSE_BUDGET {
        return Err(Error::Budget {
            size: n,
            budget: DENSE_BUDGET,
        });
    }
    let basis: Vec<Vec<Quaternion>> = (0..n)
        .map(|j| {
            let mut e = vec![Quaternion::ZERO; n];
            e[j] = Quaternion::ONE;
            e
        })
        .collect();
    let p = frac_power_apply_many(op, &basis, spec)?;
    let mut m = Mat::<f64>::zeros(n, n);
    for (j, col) in p.values.iter().enumerate() {
        for (i, x) in g.div(&vector_part(col)).into_iter().enumerate() {
            m[(i, j)] = -2.0 * x;
        }
    }
    Ok(m)
}

/// States of an implicit Euler run, `(I + dt M_alpha) v_{k+1} = v_k`.
#[derive(Clone, Debug, Serialize)]
pub struct Trajectory {
    pub grid: BoxGrid,
    pub alpha: f64,
    pub dt: f64,
    pub times: Vec<f64>,
    #[serde(skip)]
    pub states: Vec<Vec<f64>>,
    /// Discrete `L^2` norms, `sqrt(h1 h2 h3 sum v^2)`.
    pub norms: Vec<f64>,
}

impl Trajectory {
    /// CSV with columns `step,t,i,j,k,v`.
    pub fn write_csv<W: Write>(&self, w: W) -> Result<()> {
        let mut wr = csv::Writer::from_writer(w);
        let io = |e: csv::Error| Error::InvalidInput(format!("csv: {e}"));
        wr.write_record(["step", "t", "i", "j", "k", "v"]).map_err(io)?;
        for (step, (t, v)) in self.times.iter().zip(&self.states).enumerate() {
            for (p, x) in v.iter().enumerate() {
                let [i, j, k] = self.grid.coords(p);
                wr.write_record([
                    step.to_string(),
                    format!("{t:e}"),
                    i.to_string(),
                    j.to_string(),
                    k.to_string(),
                    format!("{x:e}"),
                ])
                .map_err(io)?;
            }
        }
        wr.flush().map_err(|e| Error::InvalidInput(format!("csv: {e}")))?;
        Ok(())
    }
}

fn l2(g: &BoxGrid, v: &[f64]) -> f64 {
    let h = g.spacing();
    (h[0] * h[1] * h[2] * v.iter().map(|x| x * x).sum::<f64>()).sqrt()
}

/// Implicit Euler for `dv/dt + M_alpha v = 0` with zero Dirichlet data.
///
/// `alpha = 1` uses the sparse classical operator; `alpha` in `(0,1)` assembles
/// `M_alpha` densely, which is limited to [`DENSE_BUDGET`] nodes.
pub fn heat_step(
    op: &GridOperator,
    alpha: f64,
    f0: &[f64],
    dt: f64,
    steps: usize,
    spec: Option<&QuadratureSpec>,
) -> Result<Trajectory> {
    let g = *op.grid();
    let n = g.len();
    if f0.len() != n {
        return Err(Error::DimensionMismatch { expected: n, found: f0.len() });
    }
    if !(dt > 0.0) || !dt.is_finite() {
        return Err(Error::InvalidInput(format!("time step {dt} must be positive")));
    }
    let mut states = vec![f0.to_vec()];
    let stepper: Box<dyn Fn(&mut Mat<f64>)> = if alpha == 1.0 {
        let mut trip: Vec<Triplet<usize, usize, f64>> = (0..n).map(|i| Triplet::new(i, i, 1.0)).collect();
        trip.extend(classical_triplets(op, dt));
        let a = SparseColMat::<usize, f64>::try_new_from_triplets(n, n, &trip)
            .map_err(|e| Error::Solver(format!("{e:?}")))?;
        let sym = SymbolicLu::try_new(a.symbolic()).map_err(|e| Error::Solver(format!("{e:?}")))?;
        let lu = Lu::try_new_with_symbolic(sym, a.as_ref()).map_err(|e| Error::Solver(format!("{e:?}")))?;
        Box::new(move |rhs: &mut Mat<f64>| lu.solve_in_place_with_conj(Conj::No, rhs.as_mut()))
    } else if alpha > 0.0 && alpha < 1.0 {
        if n > DENSE_BUDGET {
            return Err(Error::Budget {
                size: n,
                budget: DENSE_BUDGET,
            });
        }
        let default;
        let spec = match spec {
            Some(s) => s,
            None => {
                default = QuadratureSpec::new(alpha)?.with_tol(1e-9);
                &default
            }
        };
        if spec.alpha != alpha {
            return Err(Error::InvalidInput("quadrature alpha differs from the heat alpha".into()));
        }
        if steps == 0 {
            return Ok(Trajectory {
                grid: g,
                alpha,
                dt,
                times: vec![0.0],
                norms: vec![l2(&g, f0)],
                states,
            });
        }
        let m = fractional_heat_operator(op, spec)?;
        let a = Mat::<f64>::from_fn(n, n, |i, j| if i == j { 1.0 } else { 0.0 } + dt * m[(i, j)]);
        let lu = a.partial_piv_lu();
        Box::new(move |rhs: &mut Mat<f64>| {
            let x = lu.solve(&*rhs);
            *rhs = x;
        })
    } else {
        return Err(Error::InvalidInput(format!("alpha = {alpha}; alpha in (0,1] required")));
    };
    let mut cur = Mat::<f64>::from_fn(n, 1, |i, _| f0[i]);
    for _ in 0..steps {
        stepper(&mut cur);
        let v: Vec<f64> = (0..n).map(|i| cur[(i, 0)]).collect();
        if v.iter().any(|x| !x.is_finite()) {
            return Err(Error::Solver("implicit Euler produced non-finite values".into()));
        }
        states.push(v);
    }
    Ok(Trajectory {
        grid: g,
        alpha,
        dt,
        times: (0..states.len()).map(|k| k as f64 * dt).collect(),
        norms: states.iter().map(|v| l2(&g, v)).collect(),
        states,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn classical_operator_is_composite_laplacian() {
        let g = BoxGrid::new([1.0, 1.1, 0.9], [3, 4, 3]).unwrap();
        let op = GridOperator::gradient(g).unwrap();
        let m = classical_heat_operator(&op).unwrap().to_dense();
        let dense = g.composite_laplacian_dense();
        assert!((m - dense).norm_max() < 1e-10);
    }

    #[test]
    fn zero_start_stays_zero() {
        let g = BoxGrid::cube(1.0, 3).unwrap();
        let op = GridOperator::gradient(g).unwrap();
        let tr = heat_step(&op, 1.0, &vec![0.0; g.len()], 0.01, 5, None).unwrap();
        assert!(tr.states.iter().flatten().all(|x| *x == 0.0));
        assert_eq!(tr.times.len(), 6);
    }
}
