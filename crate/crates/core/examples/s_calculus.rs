//! S-functional calculus of a quaternionic matrix.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use sspec::hypercomplex::{ImaginaryUnit, Quaternion};
use sspec::scalc::{
    eigen_relation_residual, product_rule_defect, right_eigenpairs, s_functional_calculus, s_spectrum,
    QMatrix,
};
use sspec::slicefn::{Coeff, Contour, SliceFunction};

fn main() -> sspec::Result<()> {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let t = QMatrix::random(4, &mut rng);
    let spectrum = s_spectrum(&t)?;
    for sphere in spectrum.iter() {
        println!("spectral sphere: re {:+.4}, radius {:.4}", sphere.u, sphere.v);
    }

    let contour = Contour::enclosing(&spectrum, ImaginaryUnit::basis(3, 2)?, 256)?;
    let cube = s_functional_calculus(&t, &SliceFunction::power_of_x(3), &contour)?;
    let err = (&cube - &t.powi(3)).norm_fro() / t.powi(3).norm_fro();
    println!("x^3 through the calculus vs T^3: relative {err:.2e}");

    let exp = SliceFunction::<Quaternion>::exp();
    let et = s_functional_calculus(&t, &exp, &contour)?;
    for (v, lambda) in right_eigenpairs(&t)? {
        let r = eigen_relation_residual(&et, &v, &lambda, &exp)?;
        println!("exp(T) v - v exp(lambda), lambda = {lambda}: {r:.2e}");
    }

    let g = SliceFunction::monomial(2, Coeff::Hyper(Quaternion::new(0.2, 0.0, 1.0, -0.5)));
    println!("product rule, intrinsic f:     {:.2e}", product_rule_defect(&t, &exp, &g, &contour)?);
    let skew = SliceFunction::exp_with(Coeff::Hyper(Quaternion::E2));
    println!("product rule, non-intrinsic f: {:.2e}", product_rule_defect(&t, &skew, &g, &contour)?);
    Ok(())
}
