use rand::Rng;
use serde::{Deserialize, Serialize};

use super::algebra::Algebra;
use super::multivector::{check_dim, MAX_DIM};
use crate::error::{Error, Result};

/// A unit imaginary paravector `I = sum_j c_j e_j`, `|c| = 1`, so `I^2 = -1`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ImaginaryUnit {
    n: usize,
    c: [f64; MAX_DIM],
}

impl ImaginaryUnit {
    pub fn new(components: &[f64]) -> Result<Self> {
        let n = components.len();
        check_dim(n)?;
        let norm = components.iter().map(|v| v * v).sum::<f64>().sqrt();
        if (norm - 1.0).abs() > 1e-10 {
            return Err(Error::NotUnit(norm));
        }
        let mut c = [0.0; MAX_DIM];
        c[..n].copy_from_slice(components);
        Ok(Self { n, c })
    }

    pub fn normalized(components: &[f64]) -> Result<Self> {
        let norm = components.iter().map(|v| v * v).sum::<f64>().sqrt();
        if norm == 0.0 || !norm.is_finite() {
            return Err(Error::NotUnit(norm));
        }
        let scaled: Vec<f64> = components.iter().map(|v| v / norm).collect();
        Self::new(&scaled)
    }

    /// The basis unit `e_j` of an algebra with `n` imaginary units.
    pub fn basis(n: usize, j: usize) -> Result<Self> {
        check_dim(n)?;
        if j == 0 || j > n {
            return Err(Error::InvalidInput(format!("basis index {j} outside 1..={n}")));
        }
        let mut c = [0.0; MAX_DIM];
        c[j - 1] = 1.0;
        Ok(Self { n, c })
    }

    pub fn random<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Result<Self> {
        check_dim(n)?;
        loop {
            let v: Vec<f64> = (0..n).map(|_| rng.gen_range(-1.0..1.0)).collect();
            let norm = v.iter().map(|a| a * a).sum::<f64>().sqrt();
            if norm > 0.1 && norm <= 1.0 {
                return Self::normalized(&v);
            }
        }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn components(&self) -> &[f64] {
        &self.c[..self.n]
    }

    pub fn to_algebra<A: Algebra>(&self) -> A {
        A::paravector(0.0, self.components())
    }

    /// `u + I v`.
    pub fn point<A: Algebra>(&self, u: f64, v: f64) -> A {
        let im: Vec<f64> = self.components().iter().map(|c| c * v).collect();
        A::paravector(u, &im)
    }
}

/// Split a paravector `x = u + J v` with `v >= 0`; `J` is `None` on the real axis.
pub fn slice_decompose<A: Algebra>(x: &A) -> Result<(f64, f64, Option<ImaginaryUnit>)> {
    let (u, im) = match x.paravector_parts() {
        Some(p) => p,
        None => return Err(Error::NotParavector(x.norm())),
    };
    let n = x.dim();
    let v = im[..n].iter().map(|a| a * a).sum::<f64>().sqrt();
    if v == 0.0 {
        return Ok((u, 0.0, None));
    }
    let comps: Vec<f64> = im[..n].iter().map(|a| a / v).collect();
    let j = ImaginaryUnit {
        n,
        c: {
            let mut c = [0.0; MAX_DIM];
            c[..n].copy_from_slice(&comps);
            c
        },
    };
    Ok((u, v, Some(j)))
}

/// The sphere `[x] = { u + I v : I^2 = -1 }`, stored as `(u, v)` with `v >= 0`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Sphere {
    pub u: f64,
    pub v: f64,
}

impl Sphere {
    pub fn of<A: Algebra>(x: &A) -> Result<Self> {
        let (u, v, _) = slice_decompose(x)?;
        Ok(Self { u, v })
    }

    pub fn is_real_point(&self) -> bool {
        self.v == 0.0
    }

    pub fn distance(&self, u: f64, v: f64) -> f64 {
        (self.u - u).hypot(self.v - v.abs())
    }
}

/// Set of spheres, deduplicated at relative tolerance `1e-8`.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct SphereSet {
    pub spheres: Vec<Sphere>,
}

impl SphereSet {
    pub const DEDUP_TOL: f64 = 1e-8;

    pub fn new() -> Self {
        Self::default()
    }

    pub fn insert(&mut self, u: f64, v: f64) {
        let v = v.abs();
        let scale = 1.0 + u.abs().max(v);
        if self
            .spheres
            .iter()
            .any(|s| (s.u - u).abs() <= Self::DEDUP_TOL * scale && (s.v - v).abs() <= Self::DEDUP_TOL * scale)
        {
            return;
        }
        self.spheres.push(Sphere { u, v });
        self.spheres
            .sort_by(|a, b| a.u.total_cmp(&b.u).then(a.v.total_cmp(&b.v)));
    }

    pub fn len(&self) -> usize {
        self.spheres.len()
    }

    pub fn is_empty(&self) -> bool {
        self.spheres.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = &Sphere> {
        self.spheres.iter()
    }

    /// Distance in the `(u, v)` half plane from `(u, v)` to the nearest sphere.
    pub fn distance(&self, u: f64, v: f64) -> f64 {
        self.spheres
            .iter()
            .map(|s| s.distance(u, v))
            .fold(f64::INFINITY, f64::min)
    }

    /// Same spheres up to `tol` (relative), irrespective of order.
    pub fn matches(&self, other: &SphereSet, tol: f64) -> bool {
        self.len() == other.len()
            && self.spheres.iter().all(|s| {
                other
                    .spheres
                    .iter()
                    .any(|o| s.distance(o.u, o.v) <= tol * (1.0 + s.u.abs().max(s.v)))
            })
    }
}

impl FromIterator<(f64, f64)> for SphereSet {
    fn from_iter<I: IntoIterator<Item = (f64, f64)>>(iter: I) -> Self {
        let mut set = SphereSet::new();
        for (u, v) in iter {
            set.insert(u, v);
        }
        set
    }
}

/// Principal power `s^alpha = |s|^alpha e^{J alpha theta}` with `theta = arg(u + i v)`.
///
/// Defined off the cut `(-inf, 0]`.
pub fn qpow<A: Algebra>(s: &A, alpha: f64) -> Result<A> {
    let (u, v, j) = slice_decompose(s)?;
    if v == 0.0 && u <= 0.0 {
        return Err(Error::BranchCut(format!("{s}")));
    }
    let r = u.hypot(v).powf(alpha);
    let theta = v.atan2(u);
    let (sn, cs) = (alpha * theta).sin_cos();
    Ok(match j {
        None => s.scalar_like(r),
        Some(j) => j.point(r * cs, r * sn),
    })
}
