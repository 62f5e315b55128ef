//! Fractional powers of the quaternionic gradient `T = sum e_l a_l D_l` on a box grid.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use sspec::fracpow::{
    commuting_oracle, frac_power_apply, vec_norm, BoxGrid, CoefficientField, Form, GridOperator, QuadratureSpec,
};
use sspec::hypercomplex::{ImaginaryUnit, Quaternion};
use sspec::scalc::QMatrix;

fn rel(a: &[Quaternion], b: &[Quaternion]) -> f64 {
    let d: Vec<Quaternion> = a.iter().zip(b).map(|(x, y)| *x - *y).collect();
    vec_norm(&d) / vec_norm(b)
}

fn main() -> sspec::Result<()> {
    let four = QMatrix::scalar(1, Quaternion::real(4.0));
    for alpha in [0.25, 0.5, 0.75, 0.99] {
        let p = frac_power_apply(&four, &[Quaternion::ONE], &QuadratureSpec::new(alpha)?)?;
        println!("4^{alpha} = {:.12} (quadrature), {:.12} (exact)", p.single()[0].w, 4f64.powf(alpha));
    }

    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let grid = BoxGrid::cube(1.0, 6)?;
    let v: Vec<Quaternion> = (0..grid.len())
        .map(|_| Quaternion::new(rng.gen(), rng.gen(), rng.gen(), rng.gen()))
        .collect();
    let spec = QuadratureSpec::new(0.5)?;

    let unit = GridOperator::gradient(grid)?;
    let p = frac_power_apply(&unit, &v, &spec)?;
    println!(
        "a = 1: {} nodes per branch, changes {:?}",
        p.nodes_per_branch,
        p.changes.iter().map(|c| format!("{c:.1e}")).collect::<Vec<_>>()
    );
    println!("a = 1: against the eigenspace oracle {:.2e}", rel(p.single(), &commuting_oracle(&unit, &v, 0.5)?));

    let coeffs = [
        CoefficientField::Trig { base: 1.0, amplitude: 0.05, wavenumbers: [1, 0, 0] },
        CoefficientField::constant(1.0),
        CoefficientField::Affine { value: 1.0, gradient: [0.0, 0.02, 0.0] },
    ];
    let op = GridOperator::new(grid, coeffs)?;
    let left = frac_power_apply(&op, &v, &spec)?;
    let right = frac_power_apply(&op, &v, &spec.clone().with_form(Form::Right))?;
    let tilted = frac_power_apply(&op, &v, &spec.clone().with_plane(ImaginaryUnit::random(3, &mut rng)?))?;
    println!("variable a: left vs right form {:.2e}", rel(right.single(), left.single()));
    println!("variable a: plane e1 vs random plane {:.2e}", rel(tilted.single(), left.single()));
    Ok(())
}
