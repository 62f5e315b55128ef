//! Fueter–Sce map: the integral form of the Laplacian of a slice function and
//! the monogenic functions it produces.

use sspec::fueter::{
    dirac_residual, fueter_integral, gamma, laplacian_fd, laplacian_power_kernel, AxialMonogenicSample,
};
use sspec::hypercomplex::{ImaginaryUnit, Quaternion};
use sspec::slicefn::{cauchy_kernel_left, Contour, SliceFunction};

fn main() -> sspec::Result<()> {
    let contour = Contour::new(ImaginaryUnit::basis(3, 1)?, 0.0, 3.0, 128)?;
    let x = Quaternion::new(0.2, -0.1, 0.3, 0.15);

    for deg in 2..=4 {
        let f = SliceFunction::<Quaternion>::power_of_x(deg);
        let by_integral = fueter_integral(&f, &x, &contour)?;
        let by_fd = laplacian_fd(&|p: &Quaternion| f.eval(p), &x, 1e-3, 1)?;
        println!("Delta x^{deg} at x: integral {by_integral}, finite differences {by_fd}");
    }

    let s = Quaternion::new(1.3, 0.4, -0.5, 0.2);
    let closed = laplacian_power_kernel(&s, &x, 1)?;
    let fd = laplacian_fd(&|p: &Quaternion| cauchy_kernel_left(&s, p), &x, 1e-2, 1)?;
    println!("Delta S_L^-1: closed form vs finite differences {:.2e}", (closed - fd).norm());
    println!("gamma_3 = {}, gamma_5 = {}", gamma(3)?, gamma(5)?);

    let exp = SliceFunction::<Quaternion>::exp();
    for h in [0.08, 0.04, 0.02] {
        let sample = AxialMonogenicSample::sample(&x, h, 5, |p| fueter_integral(&exp, p, &contour))?;
        println!("Dirac residual of Delta exp, spacing {h}: {:.3e}", dirac_residual(&sample));
    }
    Ok(())
}
