use proptest::prelude::*;
use sspec::hypercomplex::{qpow, Quaternion};
use sspec::slicefn::{cauchy_kernel_left, cauchy_kernel_right_form, kernel_series};

fn quat(r: f64) -> impl Strategy<Value = Quaternion> {
    prop::array::uniform4(-r..r).prop_map(|a| Quaternion::new(a[0], a[1], a[2], a[3]))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn norm_is_multiplicative(a in quat(3.0), b in quat(3.0)) {
        prop_assert!(((a * b).norm() - a.norm() * b.norm()).abs() <= 1e-12 * (1.0 + a.norm() * b.norm()));
    }

    #[test]
    fn multiplication_is_associative(a in quat(2.0), b in quat(2.0), c in quat(2.0)) {
        prop_assert!(((a * b) * c - a * (b * c)).norm() <= 1e-12 * (1.0 + a.norm() * b.norm() * c.norm()));
    }

    #[test]
    fn kernel_forms_agree_off_the_sphere(s in quat(2.0), x in quat(2.0)) {
        let gap = (s.w - x.w).hypot(s.im_norm() - x.im_norm());
        prop_assume!(gap > 0.1);
        let l = cauchy_kernel_left(&s, &x).unwrap();
        let r = cauchy_kernel_right_form(&s, &x).unwrap();
        prop_assert!((l - r).norm() <= 1e-11 * l.norm());
    }

    #[test]
    fn series_converges_inside(s in quat(2.0), x in quat(1.0)) {
        prop_assume!(s.norm() > 0.5);
        let x = x * (0.2 * s.norm() / x.norm().max(1e-3));
        let l = cauchy_kernel_left(&s, &x).unwrap();
        prop_assert!((kernel_series(&s, &x, 60).unwrap() - l).norm() <= 1e-10 * l.norm());
    }

    #[test]
    fn square_root_squares_back(s in quat(3.0)) {
        prop_assume!(!(s.im_norm() < 1e-6 && s.w < 0.0));
        let r = qpow(&s, 0.5).unwrap();
        prop_assert!((r * r - s).norm() <= 1e-11 * (1.0 + s.norm()));
        prop_assert!(r.re() >= -1e-14);
    }
}
