//! Acceptance run: one line per criterion, nonzero exit on any unexpected result.

use std::time::Instant;

use faer::linalg::solvers::Solve;
use faer::{c64, Mat, Side};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use sspec::fracpow::*;
use sspec::fueter::{dirac_residual, fueter_integral, laplacian_power_kernel, AxialMonogenicSample};
use sspec::hypercomplex::{Algebra, ImaginaryUnit, Multivector, Quaternion};
use sspec::scalc::*;
use sspec::slicefn::{
    cauchy_kernel_left, cauchy_kernel_right_form, kernel_series, Coeff, Contour, Holomorphic, SliceFunction,
};
use sspec::Result;

/// Measurements of one criterion.
struct Checks {
    pass: bool,
    failed: Vec<String>,
    parts: Vec<String>,
}

impl Checks {
    fn new() -> Self {
        Self { pass: true, failed: Vec::new(), parts: Vec::new() }
    }

    fn record(&mut self, name: &str, ok: bool) {
        self.pass &= ok;
        if !ok {
            self.failed.push(name.to_string());
        }
    }

    fn le(&mut self, name: &str, measured: f64, tol: f64) {
        let ok = measured <= tol;
        self.record(name, ok);
        self.parts.push(format!("{name}={measured:.3e}{}{tol:.0e}", if ok { "<=" } else { ">" }));
    }

    fn ge(&mut self, name: &str, measured: f64, bound: f64) {
        let ok = measured >= bound;
        self.record(name, ok);
        self.parts.push(format!("{name}={measured:.4}{}{bound}", if ok { ">=" } else { "<" }));
    }

    fn holds(&mut self, name: &str, ok: bool) {
        self.record(name, ok);
        self.parts.push(format!("{name}={ok}"));
    }

    fn note(&mut self, text: String) {
        self.parts.push(text);
    }
}

fn rand_q(rng: &mut ChaCha8Rng, r: f64) -> Quaternion {
    Quaternion::new(
        rng.gen_range(-r..r),
        rng.gen_range(-r..r),
        rng.gen_range(-r..r),
        rng.gen_range(-r..r),
    )
}

fn rel(a: &[Quaternion], b: &[Quaternion]) -> f64 {
    let d: Vec<Quaternion> = a.iter().zip(b).map(|(x, y)| *x - *y).collect();
    vec_norm(&d) / vec_norm(b)
}

fn qrel(a: &QMatrix, b: &QMatrix) -> f64 {
    (a - b).norm_fro() / b.norm_fro()
}

fn axis<A: Algebra>(n: usize, k: usize) -> A {
    let mut im = vec![0.0; n];
    if k == 0 {
        A::paravector(1.0, &im)
    } else {
        im[k - 1] = 1.0;
        A::paravector(0.0, &im)
    }
}

/// Iterated five-point or three-point Laplacian in `R^{n+1}`.
fn fd_laplacian<A: Algebra>(f: &dyn Fn(&A) -> A, x: &A, h: f64, power: usize, fourth_order: bool) -> A {
    if power == 0 {
        return f(x);
    }
    let n = x.dim();
    let mid = fd_laplacian(f, x, h, power - 1, fourth_order);
    let mut acc = x.zero_like();
    for k in 0..=n {
        let e = axis::<A>(n, k) * h;
        let p1 = fd_laplacian(f, &(*x + e), h, power - 1, fourth_order);
        let m1 = fd_laplacian(f, &(*x - e), h, power - 1, fourth_order);
        if fourth_order {
            let p2 = fd_laplacian(f, &(*x + e * 2.0), h, power - 1, fourth_order);
            let m2 = fd_laplacian(f, &(*x - e * 2.0), h, power - 1, fourth_order);
            acc = acc + (p1 + m1) * (16.0 / 12.0) - (p2 + m2) * (1.0 / 12.0) - mid * (30.0 / 12.0);
        } else {
            acc = acc + p1 + m1 - mid * 2.0;
        }
    }
    acc * (1.0 / (h * h))
}

fn uv(q: &Quaternion) -> (f64, f64) {
    (q.w, q.im_norm())
}

fn c1() -> Result<Checks> {
    let mut c = Checks::new();
    let mut rng = ChaCha8Rng::seed_from_u64(101);
    let start = Instant::now();
    let (mut lr, mut resolvent_eq) = (0.0f64, 0.0f64);
    let mut count = 0;
    while count < 10_000 {
        let s = rand_q(&mut rng, 2.0);
        let x = rand_q(&mut rng, 2.0);
        let ((su, sv), (xu, xv)) = (uv(&s), uv(&x));
        if (su - xu).hypot(sv - xv) < 0.05 {
            continue;
        }
        let l = cauchy_kernel_left(&s, &x)?;
        let r = cauchy_kernel_right_form(&s, &x)?;
        lr = lr.max((l - r).norm() / l.norm());
        // S s - x S = 1 characterises the left kernel.
        let res = l * s - x * l - Quaternion::ONE;
        resolvent_eq = resolvent_eq.max(res.norm() / (1.0 + l.norm() * (s.norm() + x.norm())));
        count += 1;
    }
    let secs = start.elapsed().as_secs_f64();
    c.le("left_vs_right", lr, 1e-12);
    c.le("resolvent_equation", resolvent_eq, 1e-12);
    c.le("runtime_s", secs, 5.0);
    Ok(c)
}

fn c2() -> Result<Checks> {
    let mut c = Checks::new();
    let mut rng = ChaCha8Rng::seed_from_u64(102);
    let (mut lib, mut own) = (0.0f64, 0.0f64);
    let mut noncoplanar = 0;
    for _ in 0..1000 {
        let s = rand_q(&mut rng, 2.0);
        let mut x = rand_q(&mut rng, 1.0);
        let ratio = rng.gen_range(0.01..0.25);
        x = x * (ratio * s.norm() / x.norm());
        let closed = cauchy_kernel_left(&s, &x)?;
        lib = lib.max((kernel_series(&s, &x, 60)? - closed).norm() / closed.norm());
        let si = s.inv().unwrap();
        let mut sum = Quaternion::ZERO;
        let mut term_x = Quaternion::ONE;
        let mut term_s = si;
        for _ in 0..60 {
            sum = sum + term_x * term_s;
            term_x = term_x * x;
            term_s = term_s * si;
        }
        own = own.max((sum - closed).norm() / closed.norm());
        let (a, b) = (s.im(), x.im());
        let cross = [a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]];
        if cross.iter().map(|v| v * v).sum::<f64>().sqrt() > 1e-3 {
            noncoplanar += 1;
        }
    }
    c.le("series_vs_closed", lib, 1e-10);
    c.le("test_series_vs_closed", own, 1e-10);
    c.ge("noncoplanar_pairs", noncoplanar as f64, 500.0);
    let mut op = 0.0f64;
    for _ in 0..20 {
        let t = QMatrix::random(3, &mut rng);
        let s = rand_q(&mut rng, 1.0);
        let s = s * (4.0 * t.norm_op()? / s.norm());
        let closed = s_resolvent_left(&t, &s)?;
        op = op.max(qrel(&s_resolvent_series_left(&t, &s, 60)?, &closed));
    }
    c.le("operator_series", op, 1e-10);
    Ok(c)
}

fn kernel_ratio<A: Algebra>(s: A, x: A, power: usize, h: f64) -> Result<(f64, f64)> {
    let exact = laplacian_power_kernel(&s, &x, power)?;
    let k = |p: &A| cauchy_kernel_left(&s, p).unwrap();
    let e1 = (fd_laplacian(&k, &x, h, power, false) - exact).norm();
    let e2 = (fd_laplacian(&k, &x, h / 2.0, power, false) - exact).norm();
    Ok((e1 / exact.norm(), e1 / e2))
}

fn c3() -> Result<Checks> {
    let mut c = Checks::new();
    let (e, r) = kernel_ratio(
        Quaternion::new(1.3, 0.4, -0.5, 0.2),
        Quaternion::new(-0.2, 0.1, 0.25, -0.3),
        1,
        0.02,
    )?;
    c.ge("ratio(3,1)", r, 3.5);
    c.note(format!("err(3,1)={e:.1e}"));
    let s5 = <Multivector as Algebra>::paravector(1.2, &[0.3, -0.2, 0.4, 0.1, 0.5]);
    let x5 = <Multivector as Algebra>::paravector(-0.2, &[0.1, 0.25, -0.3, 0.05, 0.15]);
    let (e, r) = kernel_ratio(s5, x5, 1, 0.02)?;
    c.ge("ratio(5,1)", r, 3.5);
    c.note(format!("err(5,1)={e:.1e}"));
    let (e, r) = kernel_ratio(s5, x5, 2, 0.04)?;
    c.ge("ratio(5,2)", r, 3.5);
    c.note(format!("err(5,2)={e:.1e}"));
    Ok(c)
}

fn c4() -> Result<Checks> {
    let mut c = Checks::new();
    let mut rng = ChaCha8Rng::seed_from_u64(104);
    let contour = Contour::new(ImaginaryUnit::basis(3, 1)?, 0.0, 3.0, 128)?;
    let other = Contour::new(ImaginaryUnit::random(3, &mut rng)?, 0.4, 4.5, 160)?;
    let (mut fd_err, mut inv) = (0.0f64, 0.0f64);
    for deg in [2u32, 3] {
        let f = SliceFunction::<Quaternion>::power_of_x(deg);
        let eval = |p: &Quaternion| f.eval(p).unwrap();
        for _ in 0..20 {
            let x = rand_q(&mut rng, 0.6);
            let a = fueter_integral(&f, &x, &contour)?;
            let b = fueter_integral(&f, &x, &other)?;
            let fd = fd_laplacian(&eval, &x, 1e-2, 1, false);
            fd_err = fd_err.max((a - fd).norm());
            inv = inv.max((a - b).norm() / (1.0 + a.norm()));
        }
    }
    c.le("fueter_vs_fd_laplacian", fd_err, 1e-6);
    c.le("plane_radius_invariance", inv, 1e-10);
    let center = Quaternion::new(0.2, 0.1, -0.1, 0.15);
    let mut poly = 0.0f64;
    for deg in [2u32, 3] {
        let f = SliceFunction::<Quaternion>::power_of_x(deg);
        let smp = AxialMonogenicSample::sample(&center, 0.05, 5, |p| fueter_integral(&f, p, &contour))?;
        poly = poly.max(dirac_residual(&smp));
    }
    c.le("dirac_residual_x2_x3", poly, 1e-8);
    let exp = SliceFunction::<Quaternion>::exp();
    let r1 = dirac_residual(&AxialMonogenicSample::sample(&center, 0.08, 5, |p| {
        fueter_integral(&exp, p, &contour)
    })?);
    let r2 = dirac_residual(&AxialMonogenicSample::sample(&center, 0.04, 5, |p| {
        fueter_integral(&exp, p, &contour)
    })?);
    c.ge("dirac_order_ratio_exp", r1 / r2, 3.5);
    c.note(format!("dirac_exp={r1:.1e},{r2:.1e}"));
    Ok(c)
}

fn expm_taylor(m: &Mat<c64>) -> Mat<c64> {
    let n = m.nrows();
    let mut acc = Mat::<c64>::identity(n, n);
    let mut term = Mat::<c64>::identity(n, n);
    for k in 1..60 {
        term = &term * m * faer::Scale(c64::new(1.0 / k as f64, 0.0));
        acc += &term;
    }
    acc
}

fn c5() -> Result<Checks> {
    let mut c = Checks::new();
    let mut rng = ChaCha8Rng::seed_from_u64(105);
    let mut poly = 0.0f64;
    for _ in 0..5 {
        let t = QMatrix::random(4, &mut rng);
        let contour = Contour::enclosing(&s_spectrum(&t)?, ImaginaryUnit::random(3, &mut rng)?, 256)?;
        let mut power = QMatrix::identity(4);
        for m in 1..=5u32 {
            power = &power * &t;
            let f = s_functional_calculus(&t, &SliceFunction::power_of_x(m), &contour)?;
            poly = poly.max(qrel(&f, &power));
        }
    }
    c.le("x^m_vs_T^m", poly, 1e-10);
    let (mut rd, mut taylor) = (0.0f64, 0.0f64);
    for _ in 0..5 {
        let mc = Mat::<c64>::from_fn(3, 3, |_, _| c64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)));
        let tc = QMatrix::from_complex(&mc);
        let contour = Contour::enclosing(&s_spectrum(&tc)?, ImaginaryUnit::basis(3, 1)?, 256)?;
        let fe = s_functional_calculus(&tc, &SliceFunction::exp(), &contour)?;
        let oracle = QMatrix::from_complex(&riesz_dunford_oracle(
            &mc,
            &Holomorphic::Exp,
            contour.center,
            contour.radius,
            256,
        )?);
        rd = rd.max(qrel(&fe, &oracle));
        taylor = taylor.max(qrel(&fe, &QMatrix::from_complex(&expm_taylor(&mc))));
    }
    c.le("riesz_dunford", rd, 1e-10);
    c.le("taylor_exp", taylor, 1e-10);
    Ok(c)
}

/// Diagonalisable `T = V diag(lambda) V^{-1}` with one non-real eigenvalue per slice.
fn constructed(rng: &mut ChaCha8Rng) -> Result<EigenDecomposition> {
    let v = QMatrix::from_fn(3, |i, j| {
        Quaternion::real(if i == j { 2.0 } else { 0.0 }) + rand_q(rng, 0.4)
    });
    let vals = vec![
        Quaternion::new(0.5, 0.8, 0.0, 0.0),
        Quaternion::new(-0.3, 0.0, 0.6, 0.2),
        Quaternion::real(1.1),
    ];
    EigenDecomposition::new(v, vals)
}

// Regression pins for the non-intrinsic counterexamples, seed 106.
const EIGEN_COUNTEREXAMPLE: f64 = 2.620_870_255_513_311_9;
const PRODUCT_COUNTEREXAMPLE: f64 = 5.142_103_588_590_249;

fn pinned(c: &mut Checks, name: &str, value: f64, pin: f64) {
    c.ge(name, value, 1e-2);
    c.note(format!("{name}_value={value:.17e}"));
    c.le(&format!("{name}_drift"), (value - pin).abs() / pin, 1e-8);
}

fn c6() -> Result<Checks> {
    let mut c = Checks::new();
    let mut rng = ChaCha8Rng::seed_from_u64(106);
    let dec = constructed(&mut rng)?;
    let t = dec.matrix()?;
    let contour = Contour::enclosing(&s_spectrum(&t)?, ImaginaryUnit::basis(3, 2)?, 256)?;
    let mut worst = 0.0f64;
    for f in [SliceFunction::exp(), SliceFunction::sin(), SliceFunction::power_of_x(4)] {
        let ft = s_functional_calculus(&t, &f, &contour)?;
        for k in 0..3 {
            worst = worst.max(eigen_relation_residual(&ft, &dec.vectors.column(k), &dec.values[k], &f)?);
        }
    }
    c.le("intrinsic_residual", worst, 1e-9);
    let bad = SliceFunction::exp_with(Coeff::Hyper(Quaternion::E2));
    let fb = s_functional_calculus(&t, &bad, &contour)?;
    let mut viol = 0.0f64;
    for k in 0..3 {
        viol = viol.max(eigen_relation_residual(&fb, &dec.vectors.column(k), &dec.values[k], &bad)?);
    }
    pinned(&mut c, "counterexample", viol, EIGEN_COUNTEREXAMPLE);
    Ok(c)
}

fn c7() -> Result<Checks> {
    let mut c = Checks::new();
    let mut rng = ChaCha8Rng::seed_from_u64(106);
    let dec = constructed(&mut rng)?;
    let t = dec.matrix()?;
    let contour = Contour::enclosing(&s_spectrum(&t)?, ImaginaryUnit::basis(3, 2)?, 256)?;
    let g = SliceFunction::monomial(2, Coeff::Hyper(Quaternion::new(0.2, 0.0, 1.0, -0.5)));
    let mut worst = 0.0f64;
    for f in [SliceFunction::exp(), SliceFunction::cos(), SliceFunction::power_of_x(3)] {
        worst = worst.max(product_rule_defect(&t, &f, &g, &contour)?);
    }
    c.le("intrinsic_defect", worst, 1e-9);
    let bad = SliceFunction::exp_with(Coeff::Hyper(Quaternion::E2));
    let d = product_rule_defect(&t, &bad, &g, &contour)?;
    pinned(&mut c, "counterexample", d, PRODUCT_COUNTEREXAMPLE);
    Ok(c)
}

fn c8() -> Result<Checks> {
    let mut c = Checks::new();
    let (cs, sn) = (0.4f64.cos(), 0.4f64.sin());
    let sym = |a: f64, b: f64| {
        let r = [[cs, -sn], [sn, cs]];
        Mat::<f64>::from_fn(2, 2, |i, j| r[i][0] * a * r[j][0] + r[i][1] * b * r[j][1])
    };
    let tup = ParavectorOpTuple::new(
        Mat::<f64>::zeros(2, 2),
        [sym(0.5, -0.3), sym(0.2, 0.4), sym(-0.1, 0.3)],
    )?;
    let exp = SliceFunction::<Quaternion>::exp();
    let eval = |p: &Quaternion| exp.eval(p).unwrap();
    let fcheck = |w: &Quaternion| -> Result<Quaternion> { Ok(fd_laplacian(&eval, w, 1e-2, 1, true)) };
    let contour = Contour::new(ImaginaryUnit::basis(3, 1)?, 0.0, 2.5, 256)?;
    let f_calc = f_functional_calculus(&tup, &exp, &contour)?;
    let quad = SphereQuadrature::new(1.5, 24, 24)?;
    let mono = monogenic_functional_calculus(&tup, fcheck, &quad)?;
    let oracle = joint_eigen_oracle(&tup, fcheck)?;
    c.le("f_vs_monogenic", qrel(&f_calc, &mono), 1e-6);
    c.le("f_vs_oracle", qrel(&f_calc, &oracle), 1e-6);
    c.le("monogenic_vs_oracle", qrel(&mono, &oracle), 1e-6);
    Ok(c)
}

/// Central difference with zero ghosts along one axis of an `n^3` grid.
fn diff(v: &[Quaternion], n: usize, h: f64, ax: usize) -> Vec<Quaternion> {
    let stride = [n * n, n, 1][ax];
    (0..v.len())
        .map(|p| {
            let i = (p / stride) % n;
            let up = if i + 1 < n { v[p + stride] } else { Quaternion::ZERO };
            let dn = if i > 0 { v[p - stride] } else { Quaternion::ZERO };
            (up - dn) * (0.5 / h)
        })
        .collect()
}

/// Dense `O = -sum_l D_l^2` and its eigenpairs.
fn laplacian_eigen(n: usize, h: f64) -> (Vec<f64>, Mat<f64>) {
    let m = n * n * n;
    let mut o = Mat::<f64>::zeros(m, m);
    for j in 0..m {
        let mut e = vec![Quaternion::ZERO; m];
        e[j] = Quaternion::ONE;
        for ax in 0..3 {
            let d2 = diff(&diff(&e, n, h, ax), n, h, ax);
            for i in 0..m {
                o[(i, j)] -= d2[i].w;
            }
        }
    }
    let evd = o.self_adjoint_eigen(Side::Lower).unwrap();
    ((0..m).map(|k| evd.S()[k]).collect(), evd.U().to_owned())
}

/// `O^p` applied componentwise to a quaternion field.
fn o_power(vals: &[f64], u: &Mat<f64>, v: &[Quaternion], p: f64) -> Vec<Quaternion> {
    let m = v.len();
    let mut out = vec![Quaternion::ZERO; m];
    for k in 0..m {
        let mut coef = Quaternion::ZERO;
        for i in 0..m {
            coef = coef + v[i] * u[(i, k)];
        }
        coef = coef * vals[k].powf(p);
        for i in 0..m {
            out[i] = out[i] + coef * u[(i, k)];
        }
    }
    out
}

/// `(O^{alpha/2} + T O^{(alpha-1)/2}) v / 2` for `T = sum e_l D_l`, `T^2 = O`.
fn gradient_power_oracle(n: usize, h: f64, v: &[Quaternion], alpha: f64) -> Vec<Quaternion> {
    let (vals, u) = laplacian_eigen(n, h);
    let a = o_power(&vals, &u, v, 0.5 * alpha);
    let b = o_power(&vals, &u, v, 0.5 * (alpha - 1.0));
    let mut tb = vec![Quaternion::ZERO; v.len()];
    for ax in 0..3 {
        let e = Quaternion::unit(ax + 1);
        for (t, d) in tb.iter_mut().zip(diff(&b, n, h, ax)) {
            *t = *t + e * d;
        }
    }
    a.iter().zip(&tb).map(|(x, y)| (*x + *y) * 0.5).collect()
}

fn c9() -> Result<Checks> {
    let mut c = Checks::new();
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(109);
    let four = QMatrix::scalar(1, Quaternion::real(4.0));
    let half = frac_power_apply(&four, &[Quaternion::ONE], &QuadratureSpec::new(0.5)?)?;
    c.le("P_1/2([4])-2", (half.single()[0] - Quaternion::real(2.0)).norm(), 1e-9);

    // Symmetric positive T: P_alpha(T) = T^alpha, which tends to T.
    let t = QMatrix::from_real(3, &[3.0, 1.0, 0.0, 1.0, 2.0, 0.5, 0.0, 0.5, 1.5])?;
    let tr = Mat::<f64>::from_fn(3, 3, |i, j| t[(i, j)].w);
    let evd = tr.self_adjoint_eigen(Side::Lower).unwrap();
    let v3: Vec<Quaternion> = (0..3).map(|_| rand_q(&mut rng, 1.0)).collect();
    let tv = t.apply(&v3);
    let (mut dists, mut sweep_err) = (Vec::new(), 0.0f64);
    for alpha in [0.9, 0.99, 0.999] {
        let p = frac_power_apply(&t, &v3, &QuadratureSpec::new(alpha)?)?;
        let vals: Vec<f64> = (0..3).map(|k| evd.S()[k]).collect();
        sweep_err = sweep_err.max(rel(p.single(), &o_power(&vals, &evd.U().to_owned(), &v3, alpha)));
        dists.push(rel(p.single(), &tv));
        let scalar = frac_power_apply(&four, &[Quaternion::ONE], &QuadratureSpec::new(alpha)?)?;
        sweep_err = sweep_err.max((scalar.single()[0].w - 4f64.powf(alpha)).abs() / 4f64.powf(alpha));
    }
    c.le("sweep_vs_T^alpha", sweep_err, 1e-9);
    c.holds("sweep_monotone_to_T", dists.windows(2).all(|w| w[1] < w[0]) && dists[2] < 1e-2);
    c.note(format!("|P_a v - Tv|/|Tv|={:.1e},{:.1e},{:.1e}", dists[0], dists[1], dists[2]));

    let n = 6;
    let g = BoxGrid::cube(1.0, n)?;
    let v: Vec<Quaternion> = (0..g.len()).map(|_| rand_q(&mut rng, 1.0)).collect();
    let spec = QuadratureSpec::new(0.5)?;
    let unit = GridOperator::gradient(g)?;
    let p = frac_power_apply(&unit, &v, &spec)?;
    c.le("commuting_oracle", rel(p.single(), &commuting_oracle(&unit, &v, 0.5)?), 1e-8);
    c.le(
        "test_eigen_oracle",
        rel(p.single(), &gradient_power_oracle(n, g.spacing()[0], &v, 0.5)),
        1e-8,
    );

    let coeffs = [
        CoefficientField::Trig { base: 1.0, amplitude: 0.05, wavenumbers: [1, 0, 0] },
        CoefficientField::constant(1.0),
        CoefficientField::constant(1.0),
    ];
    c.holds("instance_passes_checker", check_dirichlet_conditions(&coeffs, &g)?.passed());
    let op = GridOperator::new(g, coeffs)?;
    let l = frac_power_apply(&op, &v, &spec)?;
    let r = frac_power_apply(&op, &v, &spec.clone().with_form(Form::Right))?;
    c.le("left_vs_right", rel(r.single(), l.single()), 1e-8);
    let plane = ImaginaryUnit::random(3, &mut rng)?;
    let q = frac_power_apply(&op, &v, &spec.clone().with_plane(plane))?;
    c.le("plane_independence", rel(q.single(), l.single()), 1e-8);
    c.le("runtime_s", start.elapsed().as_secs_f64(), 120.0);
    Ok(c)
}

fn c10() -> Result<Checks> {
    let mut c = Checks::new();
    let mut rng = ChaCha8Rng::seed_from_u64(110);
    let n = 6;
    let g = BoxGrid::cube(1.0, n)?;
    let h = g.spacing()[0];
    let v: Vec<f64> = (0..g.len()).map(|_| rng.gen_range(-1.0..1.0)).collect();
    let rep = consistency_identity_check(&g, &QuadratureSpec::new(0.5)?, &v)?;
    c.le("ratio_constancy", rep.constancy, 1e-6);
    c.le("relative_error", rep.relative_error, 1e-6);
    let (vals, u) = laplacian_eigen(n, h);
    let vq = from_real(&v);
    let rhs = real_part(&o_power(&vals, &u, &vq, 0.75));
    let rhs_err = rhs.iter().zip(&rep.rhs).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max)
        / rhs.iter().map(|a| a.abs()).fold(0.0, f64::max);
    c.le("rhs_vs_test_eigen", rhs_err, 1e-10);
    // 2 div Vec of the closed form is -O^{(1+alpha)/2} v.
    let lhs_err = rhs.iter().zip(&rep.lhs).map(|(a, b)| (a + b).abs()).fold(0.0, f64::max)
        / rhs.iter().map(|a| a.abs()).fold(0.0, f64::max);
    c.le("lhs_vs_test_closed_form", lhs_err, 1e-8);
    c.note(format!(
        "measured_constant={:.12} claimed={}",
        rep.measured_constant, rep.claimed_constant
    ));
    Ok(c)
}

/// Smallest `x` in `[lo, hi]` where `pass` turns false, by bisection.
fn crossing(lo: f64, hi: f64, pass: impl Fn(f64) -> bool) -> f64 {
    let (mut a, mut b) = (lo, hi);
    assert!(pass(a) && !pass(b));
    while b - a > 1e-8 * b {
        let m = 0.5 * (a + b);
        if pass(m) {
            a = m;
        } else {
            b = m;
        }
    }
    0.5 * (a + b)
}

/// `9 (pi int r^5 |g|^3 dr)^{1/3}` for identical radial gaussians, Simpson on `[0, 10 w]`.
fn gaussian_m(base: f64, amp: f64, width: f64) -> f64 {
    let k = 20_000;
    let hr = 10.0 * width / k as f64;
    let f = |r: f64| {
        let e = (-(r * r) / (width * width)).exp();
        let g = (base + amp * e) * 2.0 * amp * e / (width * width);
        r.powi(5) * (g * g * g).abs()
    };
    let mut s = f(0.0) + f(10.0 * width);
    for i in 1..k {
        s += f(i as f64 * hr) * if i % 2 == 1 { 4.0 } else { 2.0 };
    }
    9.0 * (std::f64::consts::PI * s * hr / 3.0).cbrt()
}

fn c11() -> Result<Checks> {
    use std::f64::consts::PI;
    let mut c = Checks::new();
    let g = BoxGrid::cube(1.0, 6)?;
    let cst = |v: f64| [0, 1, 2].map(|_| CoefficientField::constant(v));
    let cp_robin = 1.0 / PI;

    let mut margin = 0.0f64;
    for v in [0.5, 2.0] {
        let d = check_dirichlet_conditions(&cst(v), &g)?;
        margin = margin.max((d.rows[0].margin - v * v).abs()).max((d.rows[1].margin - 1.0).abs());
        let (beta, cb) = (0.1, 1.2);
        let r = check_robin_conditions(&cst(v), &CoefficientField::constant(beta), &g, TraceConstant::Given(cb))?;
        margin = margin.max((r.rows[0].margin - (v * v - cb * cb * beta * (1.0 + cp_robin * cp_robin))).abs());
        let u = check_unbounded_conditions(&cst(v), [-3.0; 3], [3.0; 3])?;
        margin = margin.max((u.rows[0].margin - v * v).abs()).max((u.rows[1].margin - v * v).abs());
    }
    c.le("constant_margins", margin, 1e-12);

    let lengths = g.lengths;
    let c_omega = (PI * PI * lengths.iter().map(|l| 1.0 / (l * l)).sum::<f64>()).powf(-0.5);
    let mut sweep = 0.0f64;
    for base in [1.0, 0.5] {
        let trig = |eps: f64| {
            [
                CoefficientField::Trig { base, amplitude: eps, wavenumbers: [1, 0, 0] },
                CoefficientField::constant(base),
                CoefficientField::constant(base),
            ]
        };
        // F = (eps pi / L1) cos(pi x1 / L1); the bound with the smaller root binds.
        let k = PI / lengths[0];
        let second = 1.0 / (2.0 * k * (1.0 + 4.0 * c_omega * c_omega / (base * base)));
        let q = 2f64.sqrt() * c_omega * k;
        let first = (-base + (base * base + 4.0 * base * base / q).sqrt()) / 2.0;
        let predicted = first.min(second);
        let found = crossing(1e-9, 3.0 * predicted, |e| check_dirichlet_conditions(&trig(e), &g).unwrap().passed());
        sweep = sweep.max((found - predicted).abs() / predicted);
    }
    c.le("dirichlet_crossing", sweep, 5e-4);

    let (cb, base) = (1.2, 1.5);
    let predicted = base * base / (cb * cb * (1.0 + cp_robin * cp_robin));
    let robin = predicted;
    let found = crossing(0.0, 2.0 * predicted, |b| {
        check_robin_conditions(&cst(base), &CoefficientField::constant(b), &g, TraceConstant::Given(cb))
            .unwrap()
            .passed()
    });
    c.le("robin_crossing", (found - predicted).abs() / predicted, 5e-4);

    let (base, width) = (1.0, 1.0);
    let gauss = |a: f64| {
        [0, 1, 2].map(|_| CoefficientField::Gaussian { base, amplitude: a, center: [0.0; 3], width })
    };
    let predicted = crossing(0.0, 1.0, |a| base * base > 4.0 * gaussian_m(base, a, width));
    let found = crossing(0.0, 4.0 * predicted, |a| {
        check_unbounded_conditions(&gauss(a), [-6.0; 3], [6.0; 3]).unwrap().passed()
    });
    c.le("unbounded_crossing", (found - predicted).abs() / predicted, 5e-4);
    c.note(format!("crossings: robin_beta={robin:.4e} gaussian_amplitude={predicted:.4e}"));

    let mu = 1.7;
    let bump = [0, 1, 2].map(|_| CoefficientField::Bump { base: mu, amplitude: 0.7 });
    let b = CoefficientField::constant(0.4);
    let p = boundary_rows_proportionality(&bump, &CoefficientField::constant(mu * 0.4), &b, mu, lengths, 7);
    c.holds("proportionality_exact", p.exact && p.max_defect == 0.0 && p.boundary_deviation == 0.0);
    let off = boundary_rows_proportionality(&bump, &CoefficientField::constant(mu * 0.4 + 0.01), &b, mu, lengths, 7);
    c.holds("perturbed_not_proportional", !off.exact && off.max_defect > 9e-3);
    Ok(c)
}

/// Real `4m x 4m` form of `T = sum e_l D_l` for `a = 1`.
fn gradient_real_form(n: usize, h: f64) -> Mat<f64> {
    let m = n * n * n;
    let mut out = Mat::<f64>::zeros(4 * m, 4 * m);
    for j in 0..4 * m {
        let mut e = vec![Quaternion::ZERO; m];
        let mut unit = [0.0; 4];
        unit[j % 4] = 1.0;
        e[j / 4] = Quaternion::new(unit[0], unit[1], unit[2], unit[3]);
        let mut tv = vec![Quaternion::ZERO; m];
        for ax in 0..3 {
            let q = Quaternion::unit(ax + 1);
            for (t, d) in tv.iter_mut().zip(diff(&e, n, h, ax)) {
                *t = *t + q * d;
            }
        }
        for (i, q) in tv.iter().enumerate() {
            for (r, x) in q.to_array().into_iter().enumerate() {
                out[(4 * i + r, j)] = x;
            }
        }
    }
    out
}

/// `t ||S_L^{-1}(-e1 t, T)||` from a dense SVD of `(T^2 + t^2)^{-1} (T - conj s)`.
fn dense_scaled_resolvent(n: usize, h: f64, ts: &[f64]) -> Vec<f64> {
    let t_real = gradient_real_form(n, h);
    let dim = t_real.nrows();
    let t2 = &t_real * &t_real;
    ts.iter()
        .map(|&t| {
            // conj(-e1 t) = e1 t; left multiplication by e1 on each node.
            let sbar = Quaternion::E1 * t;
            let mut a = t_real.clone();
            for node in 0..dim / 4 {
                for col in 0..4 {
                    let mut unit = [0.0; 4];
                    unit[col] = 1.0;
                    let prod = sbar * Quaternion::new(unit[0], unit[1], unit[2], unit[3]);
                    for (row, x) in prod.to_array().into_iter().enumerate() {
                        a[(4 * node + row, 4 * node + col)] -= x;
                    }
                }
            }
            let q = Mat::<f64>::from_fn(dim, dim, |i, j| t2[(i, j)] + if i == j { t * t } else { 0.0 });
            let r = q.partial_piv_lu().solve(&a);
            let sv = r.singular_values().unwrap();
            t * sv.iter().copied().fold(0.0, f64::max)
        })
        .collect()
}

/// Literal spread test; the growth relative to the largest `|s|` is reported alongside.
fn c12() -> Result<Checks> {
    let mut c = Checks::new();
    let g = BoxGrid::cube(1.0, 6)?;
    let samples = imaginary_samples(&ImaginaryUnit::basis(3, 1)?, 1e-2, 1e2, 13);
    let instances = [
        ("unit", [0, 1, 2].map(|_| CoefficientField::constant(1.0))),
        ("two", [0, 1, 2].map(|_| CoefficientField::constant(2.0))),
        (
            "trig",
            [
                CoefficientField::Trig { base: 1.0, amplitude: 0.05, wavenumbers: [1, 0, 0] },
                CoefficientField::constant(1.0),
                CoefficientField::constant(1.0),
            ],
        ),
    ];
    let mut spreads = Vec::new();
    let mut growth = 0.0f64;
    for (name, coeffs) in instances {
        if !check_dirichlet_conditions(&coeffs, &g)?.passed() {
            c.holds(&format!("{name}_passes_checker"), false);
            continue;
        }
        let op = GridOperator::new(g, coeffs)?;
        let probe = resolvent_bound_probe(&op, &samples)?;
        spreads.push((name, probe.spread()));
        growth = growth.max(probe.growth());
        if name == "unit" {
            let dense = dense_scaled_resolvent(6, g.spacing()[0], &probe.s_norms);
            let dev = dense
                .iter()
                .zip(&probe.scaled)
                .map(|(a, b)| (a - b).abs() / a)
                .fold(0.0, f64::max);
            c.le("unit_vs_dense_svd", dev, 1e-6);
        }
    }
    for (name, s) in &spreads {
        c.le(&format!("{name}_max/min"), *s, 10.0);
    }
    c.note(format!("bound_growth={growth:.3}"));
    Ok(c)
}

fn c13() -> Result<Checks> {
    let mut c = Checks::new();
    let start = Instant::now();
    let n = 10;
    let g = BoxGrid::cube(1.0, n)?;
    let h = g.spacing()[0];
    let d = Mat::<f64>::from_fn(n, n, |i, j| {
        if j == i + 1 {
            0.5 / h
        } else if i == j + 1 {
            -0.5 / h
        } else {
            0.0
        }
    });
    let k = d.transpose() * &d;
    let evd = k.self_adjoint_eigen(Side::Lower).unwrap();
    let lam = evd.S()[0];
    let phi: Vec<f64> = (0..n).map(|i| evd.U()[(i, 0)]).collect();
    let mu1 = 3.0 * lam;
    let f0: Vec<f64> = (0..g.len())
        .map(|p| {
            let [i, j, k] = g.coords(p);
            phi[i] * phi[j] * phi[k]
        })
        .collect();
    let (dt, steps) = (0.002, 50);
    let traj = heat_step(&GridOperator::gradient(g)?, 1.0, &f0, dt, steps, None)?;
    let rate = -(traj.norms[steps] / traj.norms[0]).ln() / (steps as f64 * dt);
    c.le("rate_rel_error", (rate - mu1).abs() / mu1, 0.02);
    c.note(format!("rate={rate:.4} mu1={mu1:.4}"));
    c.le("runtime_s", start.elapsed().as_secs_f64(), 300.0);
    Ok(c)
}

fn main() {
    let criteria: [(&str, fn() -> Result<Checks>); 13] = [
        ("kernel left/right identity", c1),
        ("series vs closed form", c2),
        ("Laplacian kernel closed form", c3),
        ("Fueter-Sce integral", c4),
        ("S-functional calculus", c5),
        ("eigen relation", c6),
        ("product rule", c7),
        ("F vs monogenic calculus", c8),
        ("fractional powers", c9),
        ("consistency identity", c10),
        ("condition checkers", c11),
        ("resolvent bound probe", c12),
        ("heat stepper", c13),
    ];
    // The literal spread test cannot hold for invertible T_h: |s| ||S_L^{-1}|| -> 0 as s -> 0.
    let expected_fail = [(12, "max/min")];
    let mut unexpected = Vec::new();
    for (k, (title, run)) in criteria.iter().enumerate() {
        let id = k + 1;
        let start = Instant::now();
        let (pass, failed, detail) = match run() {
            Ok(c) => (c.pass, c.failed, c.parts.join(" ")),
            Err(e) => (false, Vec::new(), format!("error: {e}")),
        };
        let secs = start.elapsed().as_secs_f64();
        let expected = match expected_fail.iter().find(|(k, _)| *k == id) {
            Some((_, suffix)) => !failed.is_empty() && failed.iter().all(|n| n.ends_with(suffix)),
            None => pass,
        };
        let tag = match (pass, expected) {
            (true, _) => "PASS",
            (false, true) => "FAIL (expected)",
            (false, false) => "FAIL",
        };
        println!("criterion {id:>2} {tag:<15} {title} [{secs:.1}s] {detail}");
        if !expected {
            unexpected.push(id);
        }
    }
    if !unexpected.is_empty() {
        eprintln!("unexpected results for criteria {unexpected:?}");
        std::process::exit(1);
    }
}
