//! F-functional calculus against the monogenic calculus of the Fueter–Sce image,
//! for a commuting triple of symmetric matrices.

use faer::Mat;
use sspec::fueter::laplacian_fd;
use sspec::hypercomplex::{ImaginaryUnit, Quaternion};
use sspec::scalc::{
    f_functional_calculus, joint_eigen_oracle, monogenic_functional_calculus, ParavectorOpTuple, QMatrix,
    SphereQuadrature,
};
use sspec::slicefn::{Contour, SliceFunction};

fn main() -> sspec::Result<()> {
    let (c, s) = (0.4f64.cos(), 0.4f64.sin());
    let sym = |a: f64, b: f64| {
        let r = [[c, -s], [s, c]];
        Mat::<f64>::from_fn(2, 2, |i, j| r[i][0] * a * r[j][0] + r[i][1] * b * r[j][1])
    };
    let tup = ParavectorOpTuple::new(Mat::zeros(2, 2), [sym(0.5, -0.3), sym(0.2, 0.4), sym(-0.1, 0.3)])?;
    println!("commutator defect {:.1e}", tup.commutator_defect());

    let exp = SliceFunction::<Quaternion>::exp();
    let contour = Contour::new(ImaginaryUnit::basis(3, 1)?, 0.0, 2.5, 256)?;
    let f_calc = f_functional_calculus(&tup, &exp, &contour)?;

    let f_check = |w: &Quaternion| laplacian_fd(&|p: &Quaternion| exp.eval(p), w, 1e-3, 1);
    let mono = monogenic_functional_calculus(&tup, f_check, &SphereQuadrature::new(1.5, 24, 24)?)?;
    let oracle = joint_eigen_oracle(&tup, f_check)?;

    let rel = |a: &QMatrix, b: &QMatrix| (a - b).norm_fro() / b.norm_fro();
    println!("F calculus vs monogenic calculus: {:.2e}", rel(&f_calc, &mono));
    println!("F calculus vs joint eigenvalues:  {:.2e}", rel(&f_calc, &oracle));
    println!("Delta exp (T) =");
    for i in 0..2 {
        println!("  [{}, {}]", f_calc[(i, 0)], f_calc[(i, 1)]);
    }
    Ok(())
}
