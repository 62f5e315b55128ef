use super::constants::{c_nh, gamma, sigma};
use crate::error::{Error, Result};
use crate::hypercomplex::Algebra;
use crate::slicefn::sphere_gap;

/// `Delta^h S_L^{-1}(s, x) = C_{n,h} (s - conj x)(s^2 - 2 Re(x) s + |x|^2)^{-(h+1)}`.
pub fn laplacian_power_kernel<A: Algebra>(s: &A, x: &A, h: usize) -> Result<A> {
    let n = x.dim();
    let gap = sphere_gap(s, x)?;
    if gap <= 1e-10 * (1.0 + s.norm()) {
        return Err(Error::SingularSphere(gap));
    }
    let p = *s * *s - *s * (2.0 * x.re()) + s.scalar_like(x.norm_sqr());
    let pi = p.inv().ok_or(Error::SingularSphere(gap))?;
    let mut acc = (*s - x.conj()) * c_nh(n, h);
    for _ in 0..=h {
        acc = acc * pi;
    }
    Ok(acc)
}

/// F-kernel `gamma_n (s - conj x)(s^2 - 2 Re(x) s + |x|^2)^{-(n+1)/2}`.
pub fn f_kernel<A: Algebra>(s: &A, x: &A) -> Result<A> {
    let n = x.dim();
    let h = (n - 1) / 2;
    let k = laplacian_power_kernel(s, x, h)?;
    Ok(k * (gamma(n)? / c_nh(n, h)))
}

/// Cauchy kernel of monogenic functions, `conj(w - x) / (sigma_n |w - x|^{n+1})`.
pub fn monogenic_kernel<A: Algebra>(omega: &A, x: &A) -> Result<A> {
    let n = x.dim();
    let d = *omega - *x;
    if d.paravector_parts().is_none() {
        return Err(Error::NotParavector(d.norm()));
    }
    let r = d.norm();
    if r == 0.0 {
        return Err(Error::SingularSphere(0.0));
    }
    Ok(d.conj() * (1.0 / (sigma(n)? * r.powi(n as i32 + 1))))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hypercomplex::Quaternion;
    use crate::slicefn::cauchy_kernel_left;

    #[test]
    fn h_zero_is_the_cauchy_kernel() {
        let s = Quaternion::new(0.4, 1.0, -0.5, 0.2);
        let x = Quaternion::new(-0.3, 0.1, 0.6, 0.8);
        let k0 = laplacian_power_kernel(&s, &x, 0).unwrap();
        assert!((k0 - cauchy_kernel_left(&s, &x).unwrap()).norm() < 1e-14);
    }
}
