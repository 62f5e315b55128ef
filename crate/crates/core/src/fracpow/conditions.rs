use std::collections::BTreeMap;
use std::f64::consts::PI;
use std::num::NonZeroUsize;

use faer::linalg::solvers::Solve;
use faer::Mat;
use gauss_quad::GaussLegendre;
use serde::Serialize;

use super::coeff::{box_inf, box_sup, box_sup_on, CoefficientField};
use super::grid::BoxGrid;
use crate::error::{Error, Result};

/// One inequality `lhs > rhs`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ConditionRow {
    pub inequality: String,
    pub lhs: f64,
    pub rhs: f64,
    pub margin: f64,
    pub pass: bool,
}

impl ConditionRow {
    pub fn new(inequality: &str, lhs: f64, rhs: f64) -> Self {
        let margin = lhs - rhs;
        Self {
            inequality: inequality.to_string(),
            lhs,
            rhs,
            margin,
            pass: margin > 0.0,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ConditionReport {
    pub theorem: String,
    pub rows: Vec<ConditionRow>,
    /// Intermediate constants by name.
    pub constants: BTreeMap<String, f64>,
    pub notes: Vec<String>,
}

impl ConditionReport {
    pub fn passed(&self) -> bool {
        self.rows.iter().all(|r| r.pass)
    }

    pub fn row(&self, inequality: &str) -> Option<&ConditionRow> {
        self.rows.iter().find(|r| r.inequality == inequality)
    }
}

/// Dirichlet Poincaré constant of the box, `(pi^2 sum 1/L_i^2)^{-1/2}`.
pub fn poincare_dirichlet(lengths: [f64; 3]) -> f64 {
    (PI * PI * lengths.iter().map(|l| 1.0 / (l * l)).sum::<f64>()).powf(-0.5)
}

/// Mean-zero Poincaré constant of the box, `max_i L_i / pi`.
pub fn poincare_neumann(lengths: [f64; 3]) -> f64 {
    lengths.iter().copied().fold(0.0, f64::max) / PI
}

/// `sup |F|` with `F = sum_i e_i d_i a_i`.
pub fn flux_source_sup(coeffs: &[CoefficientField; 3], lengths: [f64; 3]) -> f64 {
    box_sup(
        &|x| {
            (0..3)
                .map(|i| coeffs[i].grad(x, lengths)[i].powi(2))
                .sum::<f64>()
                .sqrt()
        },
        lengths,
    )
}

fn sq_bounds(coeffs: &[CoefficientField; 3], lengths: [f64; 3]) -> ([f64; 3], [f64; 3]) {
    let mut inf = [0.0; 3];
    let mut sup = [0.0; 3];
    for l in 0..3 {
        let f = |x: [f64; 3]| coeffs[l].eval(x, lengths).powi(2);
        inf[l] = box_inf(&f, lengths);
        sup[l] = box_sup(&f, lengths);
    }
    (inf, sup)
}

/// Coefficient conditions for absolute convergence of the fractional-power integrals
/// with Dirichlet data on a box.
pub fn check_dirichlet_conditions(coeffs: &[CoefficientField; 3], grid: &BoxGrid) -> Result<ConditionReport> {
    let l = grid.lengths;
    let (inf, sup) = sq_bounds(coeffs, l);
    for (i, v) in inf.iter().enumerate() {
        if !(*v > 1e-24) {
            return Err(Error::DegenerateCoefficient(i + 1));
        }
    }
    let c = poincare_dirichlet(l);
    let f = flux_source_sup(coeffs, l);
    let min_inf = inf.iter().copied().fold(f64::INFINITY, f64::min);
    let max_sup = sup.iter().copied().fold(0.0, f64::max);
    let max_inv = inf.iter().map(|v| 1.0 / v).fold(0.0, f64::max);
    let rows = vec![
        ConditionRow::new(
            "min inf a_l^2 > (2 max sup a_l^2)^(1/2) C_Omega ||F||_inf",
            min_inf,
            (2.0 * max_sup).sqrt() * c * f,
        ),
        ConditionRow::new(
            "1 > 2 ||F||_inf (1 + 4 C_Omega^2 max sup 1/a_l^2)",
            1.0,
            2.0 * f * (1.0 + 4.0 * c * c * max_inv),
        ),
    ];
    let mut constants = BTreeMap::new();
    constants.insert("C_Omega".into(), c);
    constants.insert("F_sup".into(), f);
    constants.insert("min_inf_a2".into(), min_inf);
    constants.insert("max_sup_a2".into(), max_sup);
    constants.insert("max_sup_inv_a2".into(), max_inv);
    Ok(ConditionReport {
        theorem: "dirichlet".into(),
        rows,
        constants,
        notes: Vec::new(),
    })
}

/// Amplitude at which the second Dirichlet inequality changes sign for
/// `a_1 = c + eps sin(pi x_1 / L_1)`, `a_2 = a_3 = c`.
pub fn dirichlet_trig_threshold(c: f64, lengths: [f64; 3]) -> f64 {
    let cp = poincare_dirichlet(lengths);
    lengths[0] / (2.0 * PI * (1.0 + 4.0 * cp * cp / (c * c)))
}

/// Source of the boundary trace constant.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum TraceConstant {
    Given(f64),
    /// Estimate on a grid with this many points per axis.
    Estimate(usize),
    None,
}

fn fe_1d(n: usize, l: f64) -> (Mat<f64>, Mat<f64>) {
    let h = l / (n - 1) as f64;
    let mut k = Mat::<f64>::zeros(n, n);
    let mut m = Mat::<f64>::zeros(n, n);
    for e in 0..n - 1 {
        for (a, b, kv, mv) in [(e, e, 1.0, 2.0), (e + 1, e + 1, 1.0, 2.0), (e, e + 1, -1.0, 1.0), (e + 1, e, -1.0, 1.0)] {
            k[(a, b)] += kv / h;
            m[(a, b)] += mv * h / 6.0;
        }
    }
    (k, m)
}

fn kron3(a: &Mat<f64>, b: &Mat<f64>, c: &Mat<f64>) -> Mat<f64> {
    let (na, nb, nc) = (a.nrows(), b.nrows(), c.nrows());
    let n = na * nb * nc;
    Mat::from_fn(n, n, |r, s| {
        let (ra, rb, rc) = (r / (nb * nc), (r / nc) % nb, r % nc);
        let (sa, sb, sc) = (s / (nb * nc), (s / nc) % nb, s % nc);
        a[(ra, sa)] * b[(rb, sb)] * c[(rc, sc)]
    })
}

/// Square root of the largest generalised Rayleigh quotient `||u||^2_{L^2(boundary)} / ||u||^2_{H^1}`
/// over trilinear finite elements with `n` points per axis.
pub fn estimate_trace_constant(lengths: [f64; 3], n: usize) -> Result<f64> {
    if !(3..=12).contains(&n) {
        return Err(Error::InvalidInput("trace estimate needs 3..=12 points per axis".into()));
    }
    let fe: Vec<(Mat<f64>, Mat<f64>)> = lengths.iter().map(|l| fe_1d(n, *l)).collect();
    let ends = Mat::<f64>::from_fn(n, n, |i, j| if i == j && (i == 0 || i == n - 1) { 1.0 } else { 0.0 });
    let (k0, m0) = (&fe[0].0, &fe[0].1);
    let (k1, m1) = (&fe[1].0, &fe[1].1);
    let (k2, m2) = (&fe[2].0, &fe[2].1);
    let h1 = kron3(k0, m1, m2) + kron3(m0, k1, m2) + kron3(m0, m1, k2) + kron3(m0, m1, m2);
    let b = kron3(&ends, m1, m2) + kron3(m0, &ends, m2) + kron3(m0, m1, &ends);
    let lu = h1.partial_piv_lu();
    let size = h1.nrows();
    let mut v = Mat::<f64>::from_fn(size, 1, |i, _| 1.0 + 0.1 * ((i * 7) % 5) as f64);
    let mut lambda = 0.0;
    for _ in 0..300 {
        let w = lu.solve(&b * &v);
        let norm = w.norm_l2();
        if !(norm > 0.0) {
            return Err(Error::Solver("trace estimate degenerated".into()));
        }
        let bv = &b * &w;
        let hv = &h1 * &w;
        let num: f64 = (0..size).map(|i| w[(i, 0)] * bv[(i, 0)]).sum();
        let den: f64 = (0..size).map(|i| w[(i, 0)] * hv[(i, 0)]).sum();
        lambda = num / den;
        v = w * faer::Scale(1.0 / norm);
    }
    Ok(lambda.sqrt())
}

/// Coefficient conditions for the Robin-type problem on a box. `boundary` is the
/// Robin coefficient `a` evaluated on the boundary faces.
pub fn check_robin_conditions(
    coeffs: &[CoefficientField; 3],
    boundary: &CoefficientField,
    grid: &BoxGrid,
    trace: TraceConstant,
) -> Result<ConditionReport> {
    let l = grid.lengths;
    let mut notes = Vec::new();
    let c_bd = match trace {
        TraceConstant::Given(c) if c > 0.0 => c,
        TraceConstant::Given(c) => return Err(Error::InvalidInput(format!("trace constant {c} must be positive"))),
        TraceConstant::Estimate(n) => {
            notes.push(format!("C_boundary is a numerical estimate ({n} points per axis), not a proven bound"));
            estimate_trace_constant(l, n)?
        }
        TraceConstant::None => {
            return Err(Error::InvalidInput("trace constant missing and estimation disabled".into()));
        }
    };
    let (inf, _) = sq_bounds(coeffs, l);
    let ct = inf.iter().copied().fold(f64::INFINITY, f64::min);
    let mut ct_prime = 0.0;
    for i in 0..3 {
        for ell in 0..3 {
            ct_prime += box_sup(
                &|x| (coeffs[ell].eval(x, l) * coeffs[i].grad(x, l)[ell]).abs(),
                l,
            );
        }
    }
    let a_sup = boundary_sup(boundary, l);
    let cp = poincare_neumann(l);
    let k = c_bd * c_bd * a_sup;
    let rows = vec![
        ConditionRow::new("C_T - C'_T C_P - K (1 + C_P^2) > 0", ct, ct_prime * cp + k * (1.0 + cp * cp)),
        ConditionRow::new("C_T > 0", ct, 0.0),
    ];
    let mut constants = BTreeMap::new();
    constants.insert("C_T".into(), ct);
    constants.insert("C_T_prime".into(), ct_prime);
    constants.insert("C_P".into(), cp);
    constants.insert("C_boundary".into(), c_bd);
    constants.insert("a_boundary_sup".into(), a_sup);
    constants.insert("K".into(), k);
    Ok(ConditionReport {
        theorem: "robin".into(),
        rows,
        constants,
        notes,
    })
}

/// `sup |a|` over the six faces of the box.
fn boundary_sup(a: &CoefficientField, l: [f64; 3]) -> f64 {
    let mut best = 0.0f64;
    for axis in 0..3 {
        for side in [0.0, l[axis]] {
            let mut lo = [0.0; 3];
            let mut hi = l;
            lo[axis] = side;
            hi[axis] = side;
            best = best.max(box_sup_on(&|x| a.eval(x, l).abs(), lo, hi));
        }
    }
    best
}

/// Comparison of the two boundary operators
/// `sum a_l^2 n_l d_l + a` and `mu (sum a_l n_l d_l + b)` on the faces of the box.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BoundaryProportionality {
    pub mu: f64,
    pub samples: usize,
    /// Largest `|row_a - mu row_b|` over all samples and entries.
    pub max_defect: f64,
    /// Every entry agrees bit for bit.
    pub exact: bool,
    /// Largest deviation of `a_l` from `mu` on the faces.
    pub boundary_deviation: f64,
}

/// Sample both boundary operators' coefficient rows `(a_l^2 n_l, a)` and `(a_l n_l, b)`
/// on an `m x m` grid of each face.
pub fn boundary_rows_proportionality(
    coeffs: &[CoefficientField; 3],
    a: &CoefficientField,
    b: &CoefficientField,
    mu: f64,
    lengths: [f64; 3],
    m: usize,
) -> BoundaryProportionality {
    let mut max_defect = 0.0f64;
    let mut exact = true;
    let mut dev = 0.0f64;
    let mut samples = 0;
    for axis in 0..3 {
        for (side, normal) in [(0.0, -1.0), (lengths[axis], 1.0)] {
            let (p, q) = ((axis + 1) % 3, (axis + 2) % 3);
            for i in 0..m {
                for j in 0..m {
                    let mut x = [0.0; 3];
                    x[axis] = side;
                    x[p] = lengths[p] * (i as f64 + 0.5) / m as f64;
                    x[q] = lengths[q] * (j as f64 + 0.5) / m as f64;
                    let mut n = [0.0; 3];
                    n[axis] = normal;
                    let mut ra = [0.0; 4];
                    let mut rb = [0.0; 4];
                    for ell in 0..3 {
                        let al = coeffs[ell].eval(x, lengths);
                        dev = dev.max((al - mu).abs());
                        ra[ell] = al * al * n[ell];
                        rb[ell] = al * n[ell];
                    }
                    ra[3] = a.eval(x, lengths);
                    rb[3] = b.eval(x, lengths);
                    for k in 0..4 {
                        let scaled = mu * rb[k];
                        max_defect = max_defect.max((ra[k] - scaled).abs());
                        exact &= ra[k] == scaled;
                    }
                    samples += 1;
                }
            }
        }
    }
    BoundaryProportionality {
        mu,
        samples,
        max_defect,
        exact,
        boundary_deviation: dev,
    }
}

/// `inf a^2` over all of `R^3` for coefficient kinds with a decay certificate.
fn global_inf_sqr(a: &CoefficientField) -> Result<f64> {
    match a {
        CoefficientField::Gaussian { base, amplitude, .. } => {
            let (lo, hi) = if *amplitude >= 0.0 { (*base, base + amplitude) } else { (base + amplitude, *base) };
            Ok(if lo <= 0.0 && hi >= 0.0 { 0.0 } else { lo.abs().min(hi.abs()).powi(2) })
        }
        _ => match a.is_constant() {
            Some(c) => Ok(c * c),
            None => Err(Error::NoDecayCertificate(a.kind_name().into())),
        },
    }
}

/// Coefficient conditions on an unbounded domain, with `L^3` norms computed by composite
/// Gauss–Legendre quadrature over the truncation box `[lo, hi]`.
pub fn check_unbounded_conditions(
    coeffs: &[CoefficientField; 3],
    lo: [f64; 3],
    hi: [f64; 3],
) -> Result<ConditionReport> {
    for a in coeffs {
        if !a.has_decay_certificate() {
            return Err(Error::NoDecayCertificate(a.kind_name().into()));
        }
    }
    if (0..3).any(|i| !(hi[i] > lo[i])) {
        return Err(Error::InvalidInput("truncation box must have positive extent".into()));
    }
    let ct = coeffs
        .iter()
        .map(global_inf_sqr)
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .fold(f64::INFINITY, f64::min);
    let panels = 16usize;
    let gl = GaussLegendre::new(NonZeroUsize::new(8).unwrap());
    let rule: Vec<(f64, f64)> = gl.as_node_weight_pairs().to_vec();
    let axis_nodes = |a: usize| -> Vec<(f64, f64)> {
        let w = (hi[a] - lo[a]) / panels as f64;
        let mut out = Vec::with_capacity(panels * rule.len());
        for p in 0..panels {
            let c = lo[a] + (p as f64 + 0.5) * w;
            for (x, wt) in &rule {
                out.push((c + 0.5 * w * x, 0.5 * w * wt));
            }
        }
        out
    };
    let nodes = [axis_nodes(0), axis_nodes(1), axis_nodes(2)];
    let lengths = [hi[0] - lo[0], hi[1] - lo[1], hi[2] - lo[2]];
    let mut cubes = [[0.0f64; 3]; 3];
    for (x0, w0) in &nodes[0] {
        for (x1, w1) in &nodes[1] {
            for (x2, w2) in &nodes[2] {
                let x = [*x0, *x1, *x2];
                let w = w0 * w1 * w2;
                let av: Vec<f64> = coeffs.iter().map(|a| a.eval(x, lengths)).collect();
                let gv: Vec<[f64; 3]> = coeffs.iter().map(|a| a.grad(x, lengths)).collect();
                for i in 0..3 {
                    for j in 0..3 {
                        cubes[i][j] += w * (av[i] * gv[j][i]).abs().powi(3);
                    }
                }
            }
        }
    }
    let m: f64 = cubes.iter().flatten().map(|c| c.cbrt()).sum();
    let rows = vec![
        ConditionRow::new("C_T > 0", ct, 0.0),
        ConditionRow::new("C_T - 4 M > 0", ct, 4.0 * m),
    ];
    let mut constants = BTreeMap::new();
    constants.insert("C_T".into(), ct);
    constants.insert("M".into(), m);
    let mut notes = Vec::new();
    if !m.is_finite() {
        notes.push("M is not finite".into());
    }
    Ok(ConditionReport {
        theorem: "unbounded".into(),
        rows,
        constants,
        notes,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn constant_coefficients_pass_with_expected_margins() {
        let g = BoxGrid::cube(1.0, 4).unwrap();
        let c = [0, 1, 2].map(|_| CoefficientField::constant(1.5));
        let r = check_dirichlet_conditions(&c, &g).unwrap();
        assert!(r.passed());
        assert!((r.rows[0].lhs - 2.25).abs() < 1e-12 && r.rows[0].rhs == 0.0);
        assert_eq!(r.rows[1].margin, 1.0);
    }

    #[test]
    fn vanishing_coefficient_is_degenerate() {
        let g = BoxGrid::cube(1.0, 4).unwrap();
        let c = [
            CoefficientField::constant(1.0),
            CoefficientField::Affine { value: 0.0, gradient: [1.0, 0.0, 0.0] },
            CoefficientField::constant(1.0),
        ];
        assert_eq!(check_dirichlet_conditions(&c, &g), Err(Error::DegenerateCoefficient(2)));
    }

    #[test]
    fn trace_estimate_is_reasonable() {
        let c = estimate_trace_constant([1.0; 3], 6).unwrap();
        assert!(c > 0.5 && c < 5.0, "{c}");
    }

    #[test]
    fn missing_trace_constant() {
        let g = BoxGrid::cube(1.0, 4).unwrap();
        let c = [0, 1, 2].map(|_| CoefficientField::constant(1.0));
        assert!(check_robin_conditions(&c, &CoefficientField::constant(0.0), &g, TraceConstant::None).is_err());
    }
}
