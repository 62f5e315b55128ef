use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::holomorphic::Holomorphic;
use crate::error::{Error, Result};
use crate::hypercomplex::{slice_decompose, Algebra, Quaternion};

/// Right coefficient of a term; `Real` keeps the term intrinsic.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Coeff<A> {
    Real(f64),
    Hyper(A),
}

impl<A: Algebra> Coeff<A> {
    fn scale(&self, n: usize, r: f64) -> A {
        match self {
            Coeff::Real(c) => A::scalar(n, r * c),
            Coeff::Hyper(a) => *a * r,
        }
    }

    fn is_real(&self) -> bool {
        match self {
            Coeff::Real(_) => true,
            Coeff::Hyper(a) => match a.paravector_parts() {
                Some((_, im)) => im.iter().all(|v| *v == 0.0),
                None => false,
            },
        }
    }

    fn mul(&self, o: &Self) -> Self {
        match (self, o) {
            (Coeff::Real(a), Coeff::Real(b)) => Coeff::Real(a * b),
            (Coeff::Real(a), Coeff::Hyper(b)) | (Coeff::Hyper(b), Coeff::Real(a)) => Coeff::Hyper(*b * *a),
            (Coeff::Hyper(a), Coeff::Hyper(b)) => Coeff::Hyper(*a * *b),
        }
    }
}

/// Which built-in family a slice function came from.
#[derive(Clone, Debug, PartialEq)]
pub enum SliceKind<A> {
    Monomial { degree: u32, coefficient: Coeff<A> },
    Polynomial { coefficients: Vec<Coeff<A>> },
    Exp { coefficient: Coeff<A> },
    Sin { coefficient: Coeff<A> },
    Cos { coefficient: Coeff<A> },
    Power { alpha: f64, coefficient: Coeff<A> },
    Rational { numerator: Vec<f64>, denominator: Vec<f64> },
    CauchyKernel { s: A },
    Induced(Holomorphic),
    Composite,
}

/// Left slice function `f(u + J v) = f0(u, v) + J f1(u, v)`.
///
/// Stored as `sum_k g_k(x) a_k` with `g_k` holomorphic and real on the real
/// axis, so `f0 = sum Re g_k a_k` and `f1 = sum Im g_k a_k`.
#[derive(Clone, Debug, PartialEq)]
pub struct SliceFunction<A = Quaternion> {
    kind: SliceKind<A>,
    terms: Vec<(Holomorphic, Coeff<A>)>,
}

fn single<A>(kind: SliceKind<A>, g: Holomorphic, c: Coeff<A>) -> SliceFunction<A> {
    SliceFunction {
        kind,
        terms: vec![(g, c)],
    }
}

impl<A: Algebra> SliceFunction<A> {
    pub fn monomial(degree: u32, coefficient: Coeff<A>) -> Self {
        single(
            SliceKind::Monomial { degree, coefficient },
            Holomorphic::monomial(degree),
            coefficient,
        )
    }

    /// `x^m` with real coefficient 1.
    pub fn power_of_x(degree: u32) -> Self {
        Self::monomial(degree, Coeff::Real(1.0))
    }

    /// `sum_k x^k a_k`.
    pub fn polynomial(coefficients: Vec<Coeff<A>>) -> Self {
        let terms = coefficients
            .iter()
            .enumerate()
            .map(|(k, c)| (Holomorphic::monomial(k as u32), *c))
            .collect();
        SliceFunction {
            kind: SliceKind::Polynomial { coefficients },
            terms,
        }
    }

    pub fn exp() -> Self {
        Self::exp_with(Coeff::Real(1.0))
    }

    pub fn exp_with(coefficient: Coeff<A>) -> Self {
        single(SliceKind::Exp { coefficient }, Holomorphic::Exp, coefficient)
    }

    pub fn sin() -> Self {
        Self::sin_with(Coeff::Real(1.0))
    }

    pub fn sin_with(coefficient: Coeff<A>) -> Self {
        single(SliceKind::Sin { coefficient }, Holomorphic::Sin, coefficient)
    }

    pub fn cos() -> Self {
        Self::cos_with(Coeff::Real(1.0))
    }

    pub fn cos_with(coefficient: Coeff<A>) -> Self {
        single(SliceKind::Cos { coefficient }, Holomorphic::Cos, coefficient)
    }

    /// Principal `x^alpha`.
    pub fn power(alpha: f64) -> Self {
        Self::power_with(alpha, Coeff::Real(1.0))
    }

    pub fn power_with(alpha: f64, coefficient: Coeff<A>) -> Self {
        single(
            SliceKind::Power { alpha, coefficient },
            Holomorphic::Power(alpha),
            coefficient,
        )
    }

    pub fn rational(numerator: Vec<f64>, denominator: Vec<f64>) -> Result<Self> {
        if denominator.iter().all(|c| *c == 0.0) {
            return Err(Error::InvalidInput("zero denominator".into()));
        }
        let g = Holomorphic::Rational {
            numerator: numerator.clone(),
            denominator: denominator.clone(),
        };
        Ok(single(
            SliceKind::Rational {
                numerator,
                denominator,
            },
            g,
            Coeff::Real(1.0),
        ))
    }

    /// `x -> S_L^{-1}(s, x) = -Q(x)^{-1} x + Q(x)^{-1} conj(s)` with `Q(x) = x^2 - 2 Re(s) x + |s|^2`.
    pub fn cauchy_kernel(s: A) -> Self {
        let den = vec![s.norm_sqr(), -2.0 * s.re(), 1.0];
        let minus_x = Holomorphic::Rational {
            numerator: vec![0.0, -1.0],
            denominator: den.clone(),
        };
        let one = Holomorphic::Rational {
            numerator: vec![1.0],
            denominator: den,
        };
        SliceFunction {
            kind: SliceKind::CauchyKernel { s },
            terms: vec![(minus_x, Coeff::Real(1.0)), (one, Coeff::Hyper(s.conj()))],
        }
    }

    /// Intrinsic function induced by a holomorphic `g` with `g(conj z) = conj g(z)`.
    pub fn induced(g: Holomorphic) -> Result<Self> {
        let defect = g.parity_defect();
        if !g.is_real_on_real_axis() || defect > 1e-12 {
            return Err(Error::ParityViolation(defect.max(f64::EPSILON)));
        }
        Ok(single(SliceKind::Induced(g.clone()), g, Coeff::Real(1.0)))
    }

    pub fn from_terms(terms: Vec<(Holomorphic, Coeff<A>)>) -> Result<Self> {
        for (g, _) in &terms {
            if !g.is_real_on_real_axis() {
                return Err(Error::ParityViolation(g.parity_defect()));
            }
        }
        Ok(SliceFunction {
            kind: SliceKind::Composite,
            terms,
        })
    }

    pub fn kind(&self) -> &SliceKind<A> {
        &self.kind
    }

    pub fn terms(&self) -> &[(Holomorphic, Coeff<A>)] {
        &self.terms
    }

    /// All coefficients real: `f0` and `f1` are real valued.
    pub fn is_intrinsic(&self) -> bool {
        self.terms.iter().all(|(_, c)| c.is_real())
    }

    /// Slice product; equals the pointwise product when `self` is intrinsic.
    pub fn star(&self, other: &Self) -> Self {
        let mut terms = Vec::with_capacity(self.terms.len() * other.terms.len());
        for (g, a) in &self.terms {
            for (h, b) in &other.terms {
                terms.push((
                    Holomorphic::Product(Box::new(g.clone()), Box::new(h.clone())),
                    a.mul(b),
                ));
            }
        }
        SliceFunction {
            kind: SliceKind::Composite,
            terms,
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut terms = self.terms.clone();
        terms.extend(other.terms.iter().cloned());
        SliceFunction {
            kind: SliceKind::Composite,
            terms,
        }
    }

    /// `(f0(u, v), f1(u, v))` in an algebra with `n` imaginary units.
    pub fn components(&self, n: usize, u: f64, v: f64) -> Result<(A, A)> {
        let z = Complex64::new(u, v);
        let mut f0 = A::scalar(n, 0.0);
        let mut f1 = A::scalar(n, 0.0);
        for (g, c) in &self.terms {
            let w = g.eval(z)?;
            f0 = f0 + c.scale(n, w.re);
            f1 = f1 + c.scale(n, w.im);
        }
        Ok((f0, f1))
    }

    /// `[du f0, dv f0, du f1, dv f1]` from the exact complex derivatives.
    pub fn partials(&self, n: usize, u: f64, v: f64) -> Result<[A; 4]> {
        let z = Complex64::new(u, v);
        let zero = A::scalar(n, 0.0);
        let mut out = [zero; 4];
        for (g, c) in &self.terms {
            let (_, d) = g.eval_with_derivative(z)?;
            out[0] = out[0] + c.scale(n, d.re);
            out[1] = out[1] + c.scale(n, -d.im);
            out[2] = out[2] + c.scale(n, d.im);
            out[3] = out[3] + c.scale(n, d.re);
        }
        Ok(out)
    }

    pub fn eval(&self, x: &A) -> Result<A> {
        let (u, v, j) = slice_decompose(x)?;
        let (f0, f1) = self.components(x.dim(), u, v)?;
        Ok(match j {
            None => f0,
            Some(j) => f0 + j.to_algebra::<A>() * f1,
        })
    }
}

/// JSON form of a slice function: `{kind, params, coefficients}`.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SliceFunctionSpec {
    pub kind: String,
    #[serde(default)]
    pub params: SliceParams,
    #[serde(default)]
    pub coefficients: Vec<Quaternion>,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SliceParams {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub degree: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub alpha: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub numerator: Option<Vec<f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub denominator: Option<Vec<f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub s: Option<Quaternion>,
}

fn quat_coeff(q: Quaternion) -> Coeff<Quaternion> {
    if q.x == 0.0 && q.y == 0.0 && q.z == 0.0 {
        Coeff::Real(q.w)
    } else {
        Coeff::Hyper(q)
    }
}

fn coeff_quat(c: &Coeff<Quaternion>) -> Quaternion {
    match c {
        Coeff::Real(r) => Quaternion::real(*r),
        Coeff::Hyper(q) => *q,
    }
}

impl TryFrom<SliceFunctionSpec> for SliceFunction<Quaternion> {
    type Error = Error;

    fn try_from(spec: SliceFunctionSpec) -> Result<Self> {
        let single_coeff = |spec: &SliceFunctionSpec| -> Result<Coeff<Quaternion>> {
            match spec.coefficients.as_slice() {
                [] => Ok(Coeff::Real(1.0)),
                [q] => Ok(quat_coeff(*q)),
                more => Err(Error::InvalidInput(format!(
                    "kind {} takes at most one coefficient, got {}",
                    spec.kind,
                    more.len()
                ))),
            }
        };
        let p = &spec.params;
        match spec.kind.as_str() {
            "monomial" => {
                let degree = p
                    .degree
                    .ok_or_else(|| Error::InvalidInput("monomial needs params.degree".into()))?;
                Ok(Self::monomial(degree, single_coeff(&spec)?))
            }
            "polynomial" => {
                if spec.coefficients.is_empty() {
                    return Err(Error::InvalidInput("polynomial needs coefficients".into()));
                }
                Ok(Self::polynomial(spec.coefficients.iter().map(|q| quat_coeff(*q)).collect()))
            }
            "exp" => Ok(Self::exp_with(single_coeff(&spec)?)),
            "sin" => Ok(Self::sin_with(single_coeff(&spec)?)),
            "cos" => Ok(Self::cos_with(single_coeff(&spec)?)),
            "power" => {
                let alpha = p
                    .alpha
                    .ok_or_else(|| Error::InvalidInput("power needs params.alpha".into()))?;
                Ok(Self::power_with(alpha, single_coeff(&spec)?))
            }
            "rational" => {
                let num = p
                    .numerator
                    .clone()
                    .ok_or_else(|| Error::InvalidInput("rational needs params.numerator".into()))?;
                let den = p
                    .denominator
                    .clone()
                    .ok_or_else(|| Error::InvalidInput("rational needs params.denominator".into()))?;
                Self::rational(num, den)
            }
            "cauchy_kernel" => {
                let s = p
                    .s
                    .ok_or_else(|| Error::InvalidInput("cauchy_kernel needs params.s".into()))?;
                Ok(Self::cauchy_kernel(s))
            }
            other => Err(Error::InvalidInput(format!("unknown slice function kind {other:?}"))),
        }
    }
}

impl SliceFunction<Quaternion> {
    pub fn to_spec(&self) -> Option<SliceFunctionSpec> {
        let mut spec = SliceFunctionSpec::default();
        let one = |c: &Coeff<Quaternion>| vec![coeff_quat(c)];
        match &self.kind {
            SliceKind::Monomial { degree, coefficient } => {
                spec.kind = "monomial".into();
                spec.params.degree = Some(*degree);
                spec.coefficients = one(coefficient);
            }
            SliceKind::Polynomial { coefficients } => {
                spec.kind = "polynomial".into();
                spec.coefficients = coefficients.iter().map(coeff_quat).collect();
            }
            SliceKind::Exp { coefficient } => {
                spec.kind = "exp".into();
                spec.coefficients = one(coefficient);
            }
            SliceKind::Sin { coefficient } => {
                spec.kind = "sin".into();
                spec.coefficients = one(coefficient);
            }
            SliceKind::Cos { coefficient } => {
                spec.kind = "cos".into();
                spec.coefficients = one(coefficient);
            }
            SliceKind::Power { alpha, coefficient } => {
                spec.kind = "power".into();
                spec.params.alpha = Some(*alpha);
                spec.coefficients = one(coefficient);
            }
            SliceKind::Rational {
                numerator,
                denominator,
            } => {
                spec.kind = "rational".into();
                spec.params.numerator = Some(numerator.clone());
                spec.params.denominator = Some(denominator.clone());
            }
            SliceKind::CauchyKernel { s } => {
                spec.kind = "cauchy_kernel".into();
                spec.params.s = Some(*s);
            }
            SliceKind::Induced(_) | SliceKind::Composite => return None,
        }
        Some(spec)
    }
}
