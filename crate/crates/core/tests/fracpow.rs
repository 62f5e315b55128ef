use faer::linalg::solvers::Solve;
use faer::{Mat, Side};
use sspec::fracpow::*;
use sspec::hypercomplex::Quaternion;
use sspec::scalc::QMatrix;

#[test]
fn power_of_negative_scalar_vanishes() {
    // P_alpha = (|T|^alpha + |T|^(alpha-1) T) / 2 on a real spectrum.
    let t = QMatrix::diag(&[Quaternion::real(-4.0), Quaternion::real(9.0)]);
    let p = frac_power_apply(&t, &[Quaternion::ONE, Quaternion::ONE], &QuadratureSpec::new(0.5).unwrap()).unwrap();
    assert!(p.single()[0].norm() < 1e-10);
    assert!((p.single()[1] - Quaternion::real(3.0)).norm() < 1e-9);
}

#[test]
fn classical_heat_matches_dense_implicit_euler() {
    let g = BoxGrid::cube(1.0, 4).unwrap();
    let n = g.len();
    let o = g.composite_laplacian_dense();
    let f0: Vec<f64> = (0..n).map(|p| (p as f64 * 0.37).sin()).collect();
    let (dt, steps) = (0.01, 5);
    let traj = heat_step(&GridOperator::gradient(g).unwrap(), 1.0, &f0, dt, steps, None).unwrap();
    let a = Mat::<f64>::from_fn(n, n, |i, j| if i == j { 1.0 } else { 0.0 } + dt * o[(i, j)]);
    let lu = a.partial_piv_lu();
    let mut v = Mat::<f64>::from_fn(n, 1, |i, _| f0[i]);
    for _ in 0..steps {
        v = lu.solve(&v);
    }
    let last = traj.states.last().unwrap();
    let err = (0..n).map(|i| (last[i] - v[(i, 0)]).abs()).fold(0.0, f64::max);
    assert!(err < 1e-12, "{err:e}");
}

#[test]
fn fractional_heat_operator_is_symmetric_positive_for_unit_coefficients() {
    let g = BoxGrid::cube(1.0, 4).unwrap();
    let op = GridOperator::gradient(g).unwrap();
    let m = fractional_heat_operator(&op, &QuadratureSpec::new(0.5).unwrap()).unwrap();
    let n = m.nrows();
    let asym = (0..n)
        .flat_map(|i| (0..n).map(move |j| (i, j)))
        .map(|(i, j)| (m[(i, j)] - m[(j, i)]).abs())
        .fold(0.0, f64::max);
    assert!(asym < 1e-9);
    let sym = Mat::<f64>::from_fn(n, n, |i, j| 0.5 * (m[(i, j)] + m[(j, i)]));
    let evd = sym.self_adjoint_eigen(Side::Lower).unwrap();
    let o = g.composite_laplacian_dense().self_adjoint_eigen(Side::Lower).unwrap();
    // M_alpha = O^{(1+alpha)/2}.
    for k in 0..n {
        let want = o.S()[k].powf(0.75);
        assert!((evd.S()[k] - want).abs() < 1e-7 * want, "{k}: {} vs {want}", evd.S()[k]);
    }
}

#[test]
fn odd_grid_is_rejected_quickly() {
    let g = BoxGrid::cube(1.0, 5).unwrap();
    let op = GridOperator::gradient(g).unwrap();
    let r = frac_power_apply(&op, &from_real(&vec![1.0; g.len()]), &QuadratureSpec::new(0.5).unwrap());
    assert!(matches!(r, Err(sspec::Error::Solver(_))));
}

#[test]
fn config_files_round_trip() {
    let text = r#"{"kind":"gaussian","params":{"base":1,"amplitude":0.02,"center":[0,0,0],"width":1},
        "box":{"L":[2,2,2],"N":[4,4,4]},"truncation":{"lo":[-5,-5,-5],"hi":[5,5,5]}}"#;
    let c = CoefficientConfig::from_json(text).unwrap();
    let t = c.truncation.clone().unwrap();
    let r = check_unbounded_conditions(&c.fields().unwrap(), t.lo, t.hi).unwrap();
    assert!(r.passed());
    let back = CoefficientConfig::from_json(&serde_json::to_string(&c).unwrap()).unwrap();
    assert_eq!(back, c);
}

#[test]
fn degenerate_coefficient_is_reported() {
    let g = BoxGrid::cube(1.0, 4).unwrap();
    let coeffs = [
        CoefficientField::Affine { value: 0.0, gradient: [1.0, 0.0, 0.0] },
        CoefficientField::constant(1.0),
        CoefficientField::constant(1.0),
    ];
    assert!(matches!(
        check_dirichlet_conditions(&coeffs, &g),
        Err(sspec::Error::DegenerateCoefficient(1))
    ));
}
