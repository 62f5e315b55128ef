//! Cauchy kernels on quaternions and on R_5, and the series they sum.

use sspec::hypercomplex::{Algebra, Multivector, Quaternion};
use sspec::slicefn::{cauchy_kernel_left, cauchy_kernel_right_form, kernel_series, niven_residual};

fn main() -> sspec::Result<()> {
    let s = Quaternion::new(1.5, 0.3, -0.8, 0.2);
    let x = Quaternion::new(0.1, -0.2, 0.05, 0.3);

    let left = cauchy_kernel_left(&s, &x)?;
    let right = cauchy_kernel_right_form(&s, &x)?;
    println!("S_L^-1(s, x)  left form  = {left}");
    println!("              right form = {right}");
    println!("              |difference| = {:.2e}", (left - right).norm());

    for terms in [5, 10, 20, 40] {
        let err = (kernel_series(&s, &x, terms)? - left).norm();
        println!("series with {terms:>2} terms: error {err:.2e}");
    }
    println!("Niven residual |S^2 + S x - s S| = {:.2e}", niven_residual(&s, &x)?);

    // The same kernel in the Clifford algebra R_5, on paravectors.
    let s5 = <Multivector as Algebra>::paravector(1.2, &[0.3, -0.2, 0.4, 0.1, 0.5]);
    let x5 = <Multivector as Algebra>::paravector(-0.2, &[0.1, 0.25, -0.3, 0.05, 0.15]);
    let k5 = cauchy_kernel_left(&s5, &x5)?;
    let r5 = cauchy_kernel_right_form(&s5, &x5)?;
    println!("R_5: |left - right| = {:.2e}", (k5 - r5).norm());
    Ok(())
}
