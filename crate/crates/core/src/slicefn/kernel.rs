use crate::error::{Error, Result};
use crate::hypercomplex::{slice_decompose, Algebra, Quaternion};

/// Distance in the `(u, v)` half plane between the spheres of `s` and `x`.
pub fn sphere_gap<A: Algebra>(s: &A, x: &A) -> Result<f64> {
    let (su, sv, _) = slice_decompose(s)?;
    let (xu, xv, _) = slice_decompose(x)?;
    Ok((su - xu).hypot(sv - xv))
}

fn check_off_sphere<A: Algebra>(s: &A, x: &A) -> Result<()> {
    let gap = sphere_gap(s, x)?;
    if gap <= 1e-10 * (1.0 + s.norm()) {
        return Err(Error::SingularSphere(gap));
    }
    Ok(())
}

/// Left kernel `-(x^2 - 2 Re(s) x + |s|^2)^{-1} (x - conj s)`.
pub fn cauchy_kernel_left<A: Algebra>(s: &A, x: &A) -> Result<A> {
    check_off_sphere(s, x)?;
    let q = *x * *x - *x * (2.0 * s.re()) + x.scalar_like(s.norm_sqr());
    let qi = q.inv().ok_or(Error::SingularSphere(0.0))?;
    Ok(-(qi * (*x - s.conj())))
}

/// Right-hand form `(s - conj x)(s^2 - 2 Re(x) s + |x|^2)^{-1}`.
pub fn cauchy_kernel_right_form<A: Algebra>(s: &A, x: &A) -> Result<A> {
    check_off_sphere(s, x)?;
    let p = *s * *s - *s * (2.0 * x.re()) + s.scalar_like(x.norm_sqr());
    let pi = p.inv().ok_or(Error::SingularSphere(0.0))?;
    Ok((*s - x.conj()) * pi)
}

/// Partial sum `sum_{m=0}^{terms-1} x^m s^{-1-m}`, valid for `|x| < |s|`.
pub fn kernel_series<A: Algebra>(s: &A, x: &A, terms: usize) -> Result<A> {
    let (xn, sn) = (x.norm(), s.norm());
    if xn >= sn {
        return Err(Error::Divergent {
            x_norm: xn,
            s_norm: sn,
        });
    }
    let si = s.inv().ok_or(Error::NotInvertible)?;
    let mut xm = x.scalar_like(1.0);
    let mut sm = si;
    let mut acc = x.zero_like();
    for _ in 0..terms {
        acc = acc + xm * sm;
        xm = xm * *x;
        sm = sm * si;
    }
    Ok(acc)
}

/// `S = (q - conj s)^{-1} s (q - conj s) - q`, the solution of `S^2 + S q - s S = 0`.
pub fn niven_solution(s: &Quaternion, q: &Quaternion) -> Result<Quaternion> {
    check_off_sphere(s, q)?;
    let d = *q - s.conj();
    let di = d.inv().ok_or(Error::SingularSphere(0.0))?;
    Ok(di * *s * d - *q)
}

/// `|S^2 + S q - s S|` for the Niven solution.
pub fn niven_residual(s: &Quaternion, q: &Quaternion) -> Result<f64> {
    let big = niven_solution(s, q)?;
    Ok((big * big + big * *q - *s * big).norm())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hypercomplex::Multivector;

    #[test]
    fn commuting_case_reduces_to_resolvent() {
        let s = Quaternion::new(1.0, 2.0, 0.0, 0.0);
        let x = Quaternion::new(0.3, -0.4, 0.0, 0.0);
        let k = cauchy_kernel_left(&s, &x).unwrap();
        let expect = (s - x).inv().unwrap();
        assert!((k - expect).norm() < 1e-15);
    }

    #[test]
    fn left_and_right_forms_agree() {
        let s = Quaternion::new(0.5, -1.0, 0.3, 1.2);
        let x = Quaternion::new(-0.2, 0.7, 0.9, -0.1);
        let l = cauchy_kernel_left(&s, &x).unwrap();
        let r = cauchy_kernel_right_form(&s, &x).unwrap();
        assert!((l - r).norm() < 1e-14);
    }

    #[test]
    fn series_in_r5() {
        let s = Multivector::paravector(1.0, &[0.5, -0.5, 0.2, 0.4, 0.9]).unwrap();
        let x = Multivector::paravector(0.1, &[0.2, 0.1, -0.1, 0.05, 0.0]).unwrap();
        let l = cauchy_kernel_left(&s, &x).unwrap();
        let ser = kernel_series(&s, &x, 80).unwrap();
        assert!((l - ser).norm() < 1e-13);
    }

    #[test]
    fn singular_sphere() {
        let s = Quaternion::new(0.5, 1.0, 0.0, 0.0);
        let x = Quaternion::new(0.5, 0.0, 0.0, -1.0);
        assert!(matches!(cauchy_kernel_left(&s, &x), Err(Error::SingularSphere(_))));
        assert!(matches!(niven_residual(&s, &x), Err(Error::SingularSphere(_))));
    }

    #[test]
    fn niven_inverse_is_kernel() {
        let s = Quaternion::new(0.5, -1.0, 0.3, 1.2);
        let q = Quaternion::new(-0.2, 0.7, 0.9, -0.1);
        let big = niven_solution(&s, &q).unwrap();
        let k = cauchy_kernel_left(&s, &q).unwrap();
        assert!((big.inv().unwrap() - k).norm() < 1e-13);
        assert!(niven_residual(&s, &q).unwrap() < 1e-13);
    }
}
