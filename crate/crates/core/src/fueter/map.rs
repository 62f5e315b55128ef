use rayon::prelude::*;

use super::kernels::f_kernel;
use crate::error::{Error, Result};
use crate::hypercomplex::{slice_decompose, Algebra};
use crate::slicefn::{Contour, Holomorphic, SliceFunction};

/// Intrinsic slice function induced by a holomorphic `g` with `g(conj z) = conj g(z)`.
pub fn tfs1<A: Algebra>(g: &Holomorphic) -> Result<SliceFunction<A>> {
    SliceFunction::induced(g.clone())
}

/// `Delta^{(n-1)/2} f(x)` through `(1/2pi) \oint F_L(s, x) ds_I f(s)`.
pub fn fueter_integral<A: Algebra>(f: &SliceFunction<A>, x: &A, contour: &Contour) -> Result<A> {
    if contour.plane.dim() != x.dim() {
        return Err(Error::DimensionMismatch {
            expected: x.dim(),
            found: contour.plane.dim(),
        });
    }
    let (u, v, _) = slice_decompose(x)?;
    contour.check_encloses_point(u, v)?;
    let parts = contour
        .nodes::<A>()
        .into_par_iter()
        .map(|(s, w)| Ok(f_kernel(&s, x)? * w * f.eval(&s)?))
        .collect::<Result<Vec<A>>>()?;
    Ok(parts.into_iter().fold(x.zero_like(), |a, b| a + b))
}

/// Iterated central-difference Laplacian `Delta^power` in `R^{n+1}` with step `h`.
pub fn laplacian_fd<A, F>(f: &F, x: &A, h: f64, power: usize) -> Result<A>
where
    A: Algebra,
    F: Fn(&A) -> Result<A>,
{
    if power == 0 {
        return f(x);
    }
    let n = x.dim();
    let centre = laplacian_fd(f, x, h, power - 1)?;
    let mut acc = x.zero_like();
    for axis in 0..=n {
        let e = axis_unit::<A>(n, axis) * h;
        let plus = laplacian_fd(f, &(*x + e), h, power - 1)?;
        let minus = laplacian_fd(f, &(*x - e), h, power - 1)?;
        acc = acc + plus + minus - centre * 2.0;
    }
    Ok(acc * (1.0 / (h * h)))
}

fn axis_unit<A: Algebra>(n: usize, axis: usize) -> A {
    let mut im = vec![0.0; n];
    if axis == 0 {
        A::paravector(1.0, &im)
    } else {
        im[axis - 1] = 1.0;
        A::paravector(0.0, &im)
    }
}

/// Samples of a function on a cubic grid of paravectors in `R^{n+1}`.
///
/// The grid is centred at `center` with `points` nodes per axis, symmetric
/// about the centre in every direction.
#[derive(Clone, Debug)]
pub struct AxialMonogenicSample<A> {
    pub center: A,
    pub spacing: f64,
    pub points: usize,
    values: Vec<A>,
}

impl<A: Algebra> AxialMonogenicSample<A> {
    pub fn sample<F>(center: &A, spacing: f64, points: usize, f: F) -> Result<Self>
    where
        F: Fn(&A) -> Result<A> + Sync,
    {
        if points < 3 || points % 2 == 0 {
            return Err(Error::InvalidInput(format!("points per axis must be odd and >= 3, got {points}")));
        }
        if center.paravector_parts().is_none() {
            return Err(Error::NotParavector(center.norm()));
        }
        let d = center.dim() + 1;
        let total = points.pow(d as u32);
        let values = (0..total)
            .into_par_iter()
            .map(|idx| f(&Self::point_of(center, spacing, points, idx)))
            .collect::<Result<Vec<A>>>()?;
        Ok(Self {
            center: *center,
            spacing,
            points,
            values,
        })
    }

    fn point_of(center: &A, spacing: f64, points: usize, mut idx: usize) -> A {
        let n = center.dim();
        let half = (points / 2) as f64;
        let mut p = *center;
        for axis in 0..=n {
            let k = (idx % points) as f64 - half;
            idx /= points;
            p = p + axis_unit::<A>(n, axis) * (k * spacing);
        }
        p
    }

    fn index(&self, coords: &[usize]) -> usize {
        coords.iter().rev().fold(0, |acc, &c| acc * self.points + c)
    }

    pub fn value(&self, coords: &[usize]) -> A {
        self.values[self.index(coords)]
    }
}

/// Largest `|d_0 F + sum_j e_j d_j F|` over interior nodes, by central differences.
pub fn dirac_residual<A: Algebra>(sample: &AxialMonogenicSample<A>) -> f64 {
    let n = sample.center.dim();
    let d = n + 1;
    let p = sample.points;
    let h = sample.spacing;
    let mut worst = 0.0f64;
    let interior = (p - 2).pow(d as u32);
    for mut k in 0..interior {
        let mut coords = vec![0usize; d];
        for c in coords.iter_mut() {
            *c = k % (p - 2) + 1;
            k /= p - 2;
        }
        let mut acc = sample.center.zero_like();
        for axis in 0..d {
            let mut up = coords.clone();
            let mut dn = coords.clone();
            up[axis] += 1;
            dn[axis] -= 1;
            let diff = (sample.value(&up) - sample.value(&dn)) * (0.5 / h);
            acc = acc + axis_unit::<A>(n, axis) * diff;
        }
        worst = worst.max(acc.norm());
    }
    worst
}
