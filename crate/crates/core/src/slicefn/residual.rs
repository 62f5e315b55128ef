use super::function::SliceFunction;
use crate::error::{Error, Result};
use crate::hypercomplex::{slice_decompose, Algebra, ImaginaryUnit};

/// `f(u + I v)` rebuilt from the values on the plane `C_J`.
pub fn representation_formula<A: Algebra>(
    f: &SliceFunction<A>,
    u: f64,
    v: f64,
    i: &ImaginaryUnit,
    j: &ImaginaryUnit,
) -> Result<A> {
    if i.dim() != j.dim() {
        return Err(Error::DimensionMismatch {
            expected: i.dim(),
            found: j.dim(),
        });
    }
    let plus = f.eval(&j.point::<A>(u, v))?;
    let minus = f.eval(&j.point::<A>(u, -v))?;
    let ia: A = i.to_algebra();
    let ja: A = j.to_algebra();
    Ok((plus + minus) * 0.5 + ia * (ja * (minus - plus)) * 0.5)
}

/// Cartesian derivatives `(d f / d x_0, [d f / d x_j])` via the `(f0, f1)` chain rule.
pub fn cartesian_gradient<A: Algebra>(f: &SliceFunction<A>, x: &A) -> Result<(A, Vec<A>)> {
    let n = x.dim();
    let (u, v, j) = slice_decompose(x)?;
    let j = j.ok_or_else(|| Error::Domain("gradient needs a non-real point".into()))?;
    let [du0, dv0, du1, dv1] = f.partials(n, u, v)?;
    let (_, f1) = f.components(n, u, v)?;
    let ja: A = j.to_algebra();
    let d0 = du0 + ja * du1;
    let comps = j.components();
    let mut grads = Vec::with_capacity(n);
    for (k, &jk) in comps.iter().enumerate() {
        let mut ek = vec![0.0; n];
        ek[k] = 1.0;
        let dj = (A::paravector(0.0, &ek) - ja * jk) * (1.0 / v);
        grads.push(dv0 * jk + dj * f1 + ja * dv1 * jk);
    }
    Ok((d0, grads))
}

/// `G f = |x|^2 d_0 f + x sum_j x_j d_j f` (vector part `x`), zero for slice regular `f`.
pub fn g_residual<A: Algebra>(f: &SliceFunction<A>, x: &A) -> Result<A> {
    let (u, v, j) = slice_decompose(x)?;
    if j.is_none() {
        return Ok(x.zero_like());
    }
    let (d0, grads) = cartesian_gradient(f, x)?;
    let vec_part = *x - x.scalar_like(u);
    let (_, im) = x.paravector_parts().ok_or(Error::NotParavector(x.norm()))?;
    let euler = grads
        .iter()
        .zip(im.iter())
        .fold(x.zero_like(), |acc, (g, xj)| acc + *g * *xj);
    Ok(d0 * (v * v) + vec_part * euler)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hypercomplex::{Multivector, Quaternion};
    use crate::slicefn::Coeff;

    #[test]
    fn gradient_matches_differences() {
        let a = Quaternion::new(0.1, 0.4, -0.3, 0.9);
        let f = SliceFunction::exp_with(Coeff::Hyper(a));
        let x = Quaternion::new(0.2, 0.5, -0.7, 0.3);
        let (d0, g) = cartesian_gradient(&f, &x).unwrap();
        let h = 1e-6;
        let fd = |e: Quaternion| (f.eval(&(x + e * h)).unwrap() - f.eval(&(x - e * h)).unwrap()) / (2.0 * h);
        assert!((d0 - fd(Quaternion::ONE)).norm() < 1e-8);
        for (k, gk) in g.iter().enumerate() {
            assert!((*gk - fd(Quaternion::unit(k + 1))).norm() < 1e-8);
        }
    }

    #[test]
    fn g_annihilates_slice_functions() {
        let x = Multivector::paravector(0.3, &[0.2, -0.1, 0.4]).unwrap();
        let f = SliceFunction::<Multivector>::sin();
        assert!(g_residual(&f, &x).unwrap().norm() < 1e-14);
    }

    #[test]
    fn representation_formula_is_plane_independent() {
        let a = Quaternion::new(0.0, 1.0, 0.0, 0.0);
        let f = SliceFunction::monomial(4, Coeff::Hyper(a));
        let i = ImaginaryUnit::normalized(&[1.0, -2.0, 0.5]).unwrap();
        let j = ImaginaryUnit::normalized(&[0.0, 1.0, 1.0]).unwrap();
        let lhs = f.eval(&i.point::<Quaternion>(0.3, 0.8)).unwrap();
        let rhs = representation_formula(&f, 0.3, 0.8, &i, &j).unwrap();
        assert!((lhs - rhs).norm() < 1e-14);
    }
}
