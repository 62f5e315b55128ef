use faer::{c64, Mat};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use sspec::hypercomplex::{ImaginaryUnit, Quaternion};
use sspec::scalc::{
    s_functional_calculus, s_functional_calculus_right, s_resolvent_left, s_resolvent_right, s_spectrum,
    spectrum_scan, QMatrix,
};
use sspec::slicefn::{Coeff, Contour, SliceFunction};

fn max_abs(m: &QMatrix) -> f64 {
    m.max_abs()
}

#[test]
fn resolvent_equations() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let t = QMatrix::random(3, &mut rng);
    let s = Quaternion::new(0.3, 2.0, -1.0, 0.5);
    let id = QMatrix::identity(3);
    // S_L^{-1} s - T S_L^{-1} = I and s S_R^{-1} - S_R^{-1} T = I.
    let l = s_resolvent_left(&t, &s).unwrap();
    assert!(max_abs(&(&(&l.right_scalar(s) - &(&t * &l)) - &id)) < 1e-12);
    let r = s_resolvent_right(&t, &s).unwrap();
    assert!(max_abs(&(&(&r.left_scalar(s) - &(&r * &t)) - &id)) < 1e-12);
}

#[test]
fn spectrum_of_complex_embedding() {
    let m = Mat::<c64>::from_fn(2, 2, |i, j| match (i, j) {
        (0, 0) => c64::new(1.0, 2.0),
        (1, 1) => c64::new(-0.5, -0.7),
        (0, 1) => c64::new(0.3, 0.0),
        _ => c64::new(0.0, 0.0),
    });
    let t = QMatrix::from_complex(&m);
    let spheres = s_spectrum(&t).unwrap();
    let expected = [(1.0, 2.0), (-0.5, 0.7)].into_iter().collect();
    assert!(spheres.matches(&expected, 1e-12));
    assert!(spectrum_scan(&t, &spheres, 120).unwrap().agrees_with(&spheres, 0.05));
}

#[test]
fn left_and_right_calculi_agree_for_intrinsic_functions() {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    let t = QMatrix::random(3, &mut rng);
    let contour = Contour::enclosing(&s_spectrum(&t).unwrap(), ImaginaryUnit::basis(3, 3).unwrap(), 256).unwrap();
    for f in [SliceFunction::exp(), SliceFunction::sin(), SliceFunction::power_of_x(4)] {
        let l = s_functional_calculus(&t, &f, &contour).unwrap();
        let r = s_functional_calculus_right(&t, &f, &contour).unwrap();
        assert!((&l - &r).norm_fro() < 1e-11 * l.norm_fro());
    }
    let skew = SliceFunction::exp_with(Coeff::Hyper(Quaternion::E1));
    assert!(s_functional_calculus_right(&t, &skew, &contour).is_err());
}

#[test]
fn contour_must_enclose_the_spectrum() {
    let t = QMatrix::diag(&[Quaternion::real(3.0), Quaternion::new(0.0, 0.5, 0.0, 0.0)]);
    let small = Contour::new(ImaginaryUnit::basis(3, 1).unwrap(), 0.0, 1.0, 64).unwrap();
    assert!(s_functional_calculus(&t, &SliceFunction::exp(), &small).is_err());
}

#[test]
fn calculus_is_plane_independent() {
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    let t = QMatrix::random(3, &mut rng);
    let sp = s_spectrum(&t).unwrap();
    let f = SliceFunction::monomial(2, Coeff::Hyper(Quaternion::new(0.1, -0.4, 0.2, 0.9)));
    let a = s_functional_calculus(&t, &f, &Contour::enclosing(&sp, ImaginaryUnit::basis(3, 1).unwrap(), 256).unwrap())
        .unwrap();
    let plane = ImaginaryUnit::random(3, &mut rng).unwrap();
    let b = s_functional_calculus(&t, &f, &Contour::enclosing(&sp, plane, 300).unwrap()).unwrap();
    assert!((&a - &b).norm_fro() < 1e-10 * a.norm_fro());
    // x^2 a evaluated on T is T^2 a.
    let q = Quaternion::new(0.1, -0.4, 0.2, 0.9);
    assert!((&a - &(&t * &t).right_scalar(q)).norm_fro() < 1e-10 * a.norm_fro());
}
