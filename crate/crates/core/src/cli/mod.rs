//! The `sspec` command line: argument parsing, dispatch and file formats.

mod verify;

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::{json, Value};

use crate::error::Error;
use crate::fracpow::{
    check_dirichlet_conditions, check_robin_conditions, check_unbounded_conditions, commuting_oracle,
    frac_power_apply, heat_step, vec_norm, BoxGrid, CoefficientConfig, ConditionReport, Form, GridOperator,
    QuadratureSpec, TraceConstant,
};
use crate::fueter::fueter_integral;
use crate::hypercomplex::{ImaginaryUnit, Quaternion, Sphere};
use crate::scalc::{
    eigen_relation_residual, f_functional_calculus, monogenic_functional_calculus, right_eigenpairs,
    s_functional_calculus, s_spectrum, spectrum_scan, MatrixFile, ParavectorOpTuple, QMatrix, SphereQuadrature,
};
use crate::slicefn::{Contour, SliceFunction, SliceFunctionSpec};

pub use verify::{invariant_names, run_suite, VerifyRow, SUITES};

#[derive(Debug, Parser)]
#[command(name = "sspec", version, about = "Slice hyperholomorphic spectral calculus toolkit")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Calculus {
    S,
    F,
    Monogenic,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum FormArg {
    Left,
    Right,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Theorem {
    Dirichlet,
    Robin,
    Unbounded,
    All,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// S-spectrum of a quaternionic matrix, cross-checked by a singular-value scan.
    Spectrum {
        /// Matrix file `{"m": m, "entries": [[w, x, y, z], ...]}`, row-major.
        matrix: PathBuf,
        /// Scan resolution per axis.
        #[arg(long, default_value_t = 160)]
        scan_resolution: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Apply a functional calculus to a matrix.
    Calc {
        matrix: PathBuf,
        /// Slice function file `{kind, params, coefficients}`.
        function: PathBuf,
        #[arg(long, value_enum, default_value = "s")]
        calculus: Calculus,
        /// Contour centre on the real axis; sized to enclose the spectrum by default.
        #[arg(long)]
        center: Option<f64>,
        #[arg(long)]
        radius: Option<f64>,
        /// Contour nodes (S and F calculus).
        #[arg(long, default_value_t = 256)]
        nodes: usize,
        /// Gauss nodes per angle on the sphere (monogenic calculus).
        #[arg(long, default_value_t = 24)]
        sphere_nodes: usize,
        /// Check `f(T) v = v f(lambda)` on the right eigenpairs; `f` must be intrinsic.
        #[arg(long)]
        check_eigen: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Fractional power `P_alpha(T_h) v` of the grid operator `sum e_l a_l D_l`.
    Fracpow {
        /// Coefficient config `{kind, params, box: {L, N}}`.
        config: PathBuf,
        #[arg(long)]
        alpha: f64,
        /// `ones`, `random`, `mode:K` (K-th lowest mode of the composite Laplacian) or a CSV `i,j,k,v`.
        #[arg(long, default_value = "ones")]
        vector: String,
        #[arg(long, value_enum, default_value = "left")]
        form: FormArg,
        /// Relative node-doubling tolerance.
        #[arg(long, default_value_t = 1e-10)]
        tol: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Only print the coefficient-condition report.
        #[arg(long)]
        check_only: bool,
        /// Directory for `field.csv` and `report.json`.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Implicit Euler for the fractional heat equation with zero Dirichlet data.
    Heat {
        config: PathBuf,
        /// One or more comma-separated orders in `(0, 1]`.
        #[arg(long, value_delimiter = ',', required = true)]
        alpha: Vec<f64>,
        #[arg(long)]
        dt: f64,
        #[arg(long)]
        steps: usize,
        /// `mode:lowest`, `mode:top`, `mode:K`, `ones`, `random` or a CSV `i,j,k,v`.
        #[arg(long, default_value = "mode:lowest")]
        init: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Directory for `trajectory*.csv` and `summary.json`.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Evaluate the coefficient conditions.
    Check {
        config: PathBuf,
        #[arg(long, value_enum, default_value = "all")]
        theorem: Theorem,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run an invariant suite: kernels, calculus, fracpow or all.
    Verify {
        #[arg(default_value = "all")]
        suite: String,
        #[arg(long, default_value_t = 7)]
        seed: u64,
        /// Perturb the named invariant so the suite must report it.
        #[arg(long)]
        inject_fault: Option<String>,
        #[arg(long)]
        json: bool,
    },
}

/// A failure with its process exit code.
#[derive(Debug)]
pub struct CliError {
    pub code: i32,
    pub message: String,
}

impl CliError {
    fn new(code: i32, message: impl Into<String>) -> Self {
        Self {
            code,
            message: message.into(),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        let code = match &e {
            Error::InvalidInput(_)
            | Error::DimensionMismatch { .. }
            | Error::GridTooCoarse(_)
            | Error::UnsupportedDimension(_)
            | Error::NotUnit(_)
            | Error::NotParavector(_)
            | Error::Domain(_)
            | Error::BranchCut(_)
            | Error::ParityViolation(_) => 2,
            Error::NotEnclosed(_) | Error::SpectrumOnContour(_) | Error::SphereOnContour(_) => 4,
            Error::NonCommuting(_) => {
                return CliError::new(4, format!("commuting components required: {e}"));
            }
            Error::NonIntrinsic => 5,
            Error::Budget { .. } => 6,
            _ => 3,
        };
        CliError::new(code, e.to_string())
    }
}

type CliResult<T> = std::result::Result<T, CliError>;

/// Cap rayon at `SSPEC_THREADS` workers and keep faer sequential, so that every
/// reduction order is fixed.
pub fn configure_threads() -> CliResult<()> {
    faer::set_global_parallelism(faer::Par::Seq);
    if let Ok(v) = std::env::var("SSPEC_THREADS") {
        let n: usize = v
            .trim()
            .parse()
            .ok()
            .filter(|n| *n > 0)
            .ok_or_else(|| CliError::new(2, format!("SSPEC_THREADS={v:?} is not a positive integer")))?;
        // A pool may already exist when embedded; the cap then stays as it was.
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    }
    Ok(())
}

fn read(path: &Path) -> CliResult<String> {
    fs::read_to_string(path).map_err(|e| CliError::new(2, format!("{}: {e}", path.display())))
}

fn parse_json<T: serde::de::DeserializeOwned>(path: &Path) -> CliResult<T> {
    serde_json::from_str(&read(path)?).map_err(|e| CliError::new(2, format!("{}: {e}", path.display())))
}

fn emit_json<T: Serialize>(value: &T, out: Option<&Path>) -> CliResult<()> {
    let text = serde_json::to_string_pretty(value).map_err(|e| CliError::new(3, e.to_string()))?;
    match out {
        Some(p) => fs::write(p, text + "\n").map_err(|e| CliError::new(2, format!("{}: {e}", p.display()))),
        None => {
            let mut w = std::io::stdout().lock();
            match writeln!(w, "{text}").and_then(|_| w.flush()) {
                Err(e) if e.kind() != std::io::ErrorKind::BrokenPipe => Err(CliError::new(3, e.to_string())),
                _ => Ok(()),
            }
        }
    }
}

fn ensure_dir(dir: &Path) -> CliResult<()> {
    fs::create_dir_all(dir).map_err(|e| CliError::new(2, format!("{}: {e}", dir.display())))
}

fn load_matrix(path: &Path) -> CliResult<QMatrix> {
    let f: MatrixFile = parse_json(path)?;
    Ok(QMatrix::try_from(f)?)
}

fn load_config(path: &Path) -> CliResult<CoefficientConfig> {
    Ok(CoefficientConfig::from_json(&read(path)?)?)
}

/// Parse arguments already split from the command line and run; returns the exit code.
pub fn run(cli: Cli) -> i32 {
    if let Err(e) = configure_threads() {
        eprintln!("sspec: {}", e.message);
        return e.code;
    }
    match dispatch(cli.command) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("sspec: {}", e.message);
            e.code
        }
    }
}

fn dispatch(cmd: Command) -> CliResult<i32> {
    match cmd {
        Command::Spectrum {
            matrix,
            scan_resolution,
            out,
        } => cmd_spectrum(&matrix, scan_resolution, out.as_deref()),
        Command::Calc {
            matrix,
            function,
            calculus,
            center,
            radius,
            nodes,
            sphere_nodes,
            check_eigen,
            out,
        } => cmd_calc(
            &matrix,
            &function,
            calculus,
            (center, radius, nodes),
            sphere_nodes,
            check_eigen,
            out.as_deref(),
        ),
        Command::Fracpow {
            config,
            alpha,
            vector,
            form,
            tol,
            seed,
            check_only,
            out,
        } => cmd_fracpow(&config, alpha, &vector, form, tol, seed, check_only, out.as_deref()),
        Command::Heat {
            config,
            alpha,
            dt,
            steps,
            init,
            seed,
            out,
        } => cmd_heat(&config, &alpha, dt, steps, &init, seed, out.as_deref()),
        Command::Check { config, theorem, out } => cmd_check(&config, theorem, out.as_deref()),
        Command::Verify {
            suite,
            seed,
            inject_fault,
            json,
        } => cmd_verify(&suite, seed, inject_fault.as_deref(), json),
    }
}

#[derive(Serialize)]
struct SpectrumReport {
    spheres: Vec<Sphere>,
    scan: ScanSummary,
}

/// Brute-force cross-check of the computed spheres.
#[derive(Serialize)]
struct ScanSummary {
    agrees: bool,
    located: Vec<Sphere>,
    max_at_spheres: f64,
    min_away: f64,
    threshold: f64,
}

fn cmd_spectrum(path: &Path, resolution: usize, out: Option<&Path>) -> CliResult<i32> {
    let t = load_matrix(path)?;
    let spheres = s_spectrum(&t)?;
    let scan = spectrum_scan(&t, &spheres, resolution)?;
    let tol = 1e-6 * (1.0 + t.max_abs());
    let agrees = scan.agrees_with(&spheres, tol);
    let report = SpectrumReport {
        spheres: spheres.spheres.clone(),
        scan: ScanSummary {
            agrees,
            located: scan.located.spheres,
            max_at_spheres: scan.max_at_spheres,
            min_away: scan.min_away,
            threshold: scan.threshold,
        },
    };
    emit_json(&report, out)?;
    if !agrees {
        return Err(CliError::new(3, "singular-value scan disagrees with the computed S-spectrum"));
    }
    Ok(0)
}

fn cmd_calc(
    mpath: &Path,
    fpath: &Path,
    calculus: Calculus,
    contour: (Option<f64>, Option<f64>, usize),
    sphere_nodes: usize,
    check_eigen: bool,
    out: Option<&Path>,
) -> CliResult<i32> {
    let t = load_matrix(mpath)?;
    let spec: SliceFunctionSpec = parse_json(fpath)?;
    let f = SliceFunction::<Quaternion>::try_from(spec)?;
    if check_eigen && !f.is_intrinsic() {
        return Err(CliError::new(5, "--check-eigen needs an intrinsic function"));
    }
    let plane = ImaginaryUnit::basis(3, 1)?;
    let (center, radius, nodes) = contour;
    let spheres = s_spectrum(&t)?;
    let make_contour = || -> CliResult<Contour> {
        let auto = Contour::enclosing(&spheres, plane, nodes)?;
        Ok(Contour::new(plane, center.unwrap_or(auto.center), radius.unwrap_or(auto.radius), nodes)?)
    };
    let result = match calculus {
        Calculus::S => s_functional_calculus(&t, &f, &make_contour()?)?,
        Calculus::F => {
            let tup = ParavectorOpTuple::from_qmatrix(&t);
            tup.check_commuting()?;
            f_functional_calculus(&tup, &f, &make_contour()?)?
        }
        Calculus::Monogenic => {
            let tup = ParavectorOpTuple::from_qmatrix(&t);
            tup.check_commuting()?;
            let rho = spheres.iter().map(|s| s.u.hypot(s.v)).fold(0.0, f64::max);
            let r = radius.unwrap_or(1.5 * rho + 0.5);
            let quad = SphereQuadrature::new(r, sphere_nodes, sphere_nodes)?;
            let big = Contour::new(plane, 0.0, 2.0 * r + 1.0, nodes)?;
            monogenic_functional_calculus(&tup, |w| fueter_integral(&f, w, &big), &quad)?
        }
    };
    emit_json(&MatrixFile::from(&result), out)?;
    if check_eigen {
        let mut worst = 0.0f64;
        for (v, lambda) in right_eigenpairs(&t)? {
            worst = worst.max(eigen_relation_residual(&result, &v, &lambda, &f)?);
        }
        let pass = worst <= 1e-9 * (1.0 + result.max_abs());
        eprintln!("eigen check: max |f(T)v - v f(lambda)| = {worst:.3e}: {}", if pass { "pass" } else { "FAIL" });
        if !pass {
            return Ok(1);
        }
    }
    Ok(0)
}

fn read_grid_csv(path: &Path, g: &BoxGrid) -> CliResult<Vec<f64>> {
    let mut rd = csv::Reader::from_path(path).map_err(|e| CliError::new(2, format!("{}: {e}", path.display())))?;
    let mut v = vec![0.0; g.len()];
    let mut seen = vec![false; g.len()];
    for rec in rd.records() {
        let rec = rec.map_err(|e| CliError::new(2, format!("{}: {e}", path.display())))?;
        let num = |k: usize| -> CliResult<f64> {
            rec.get(k)
                .and_then(|s| s.trim().parse().ok())
                .ok_or_else(|| CliError::new(2, format!("{}: bad row {rec:?}", path.display())))
        };
        let ijk = [num(0)? as usize, num(1)? as usize, num(2)? as usize];
        if (0..3).any(|a| ijk[a] >= g.n[a]) {
            return Err(CliError::new(2, format!("{}: index {ijk:?} outside the grid", path.display())));
        }
        let p = g.index(ijk);
        v[p] = num(3)?;
        seen[p] = true;
    }
    if seen.iter().any(|s| !s) {
        return Err(CliError::new(2, format!("{}: not every grid node is given", path.display())));
    }
    Ok(v)
}

fn grid_vector(kind: &str, g: &BoxGrid, seed: u64) -> CliResult<Vec<f64>> {
    match kind {
        "ones" => Ok(vec![1.0; g.len()]),
        "random" => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            Ok((0..g.len()).map(|_| rng.gen_range(-1.0..1.0)).collect())
        }
        _ if kind.starts_with("mode:") => {
            let te = g.tensor_eigen([1.0; 3])?;
            let modes = te.sorted_modes();
            let k = match &kind[5..] {
                "lowest" => 0,
                "top" => modes.len() - 1,
                s => s
                    .parse::<usize>()
                    .ok()
                    .filter(|k| *k < modes.len())
                    .ok_or_else(|| CliError::new(2, format!("bad mode {s:?}")))?,
            };
            Ok(te.vector(modes[k]))
        }
        path => read_grid_csv(Path::new(path), g),
    }
}

fn mode_value(kind: &str, g: &BoxGrid) -> Option<f64> {
    let te = g.tensor_eigen([1.0; 3]).ok()?;
    let modes = te.sorted_modes();
    let k = match kind.strip_prefix("mode:")? {
        "lowest" => 0,
        "top" => modes.len() - 1,
        s => s.parse().ok()?,
    };
    Some(te.value(*modes.get(k)?))
}

fn write_field_csv(path: &Path, g: &BoxGrid, v: &[Quaternion]) -> CliResult<()> {
    let io = |e: csv::Error| CliError::new(2, format!("{}: {e}", path.display()));
    let mut w = csv::Writer::from_path(path).map_err(io)?;
    w.write_record(["i", "j", "k", "w", "x", "y", "z"]).map_err(io)?;
    for (p, q) in v.iter().enumerate() {
        let [i, j, k] = g.coords(p);
        let mut rec = vec![i.to_string(), j.to_string(), k.to_string()];
        rec.extend(q.to_array().iter().map(|x| format!("{x:e}")));
        w.write_record(rec).map_err(io)?;
    }
    w.flush().map_err(|e| CliError::new(2, e.to_string()))
}

fn dirichlet_value(coeffs: &[crate::fracpow::CoefficientField; 3], g: &BoxGrid) -> (Value, bool) {
    match check_dirichlet_conditions(coeffs, g) {
        Ok(r) => {
            let pass = r.passed();
            (serde_json::to_value(r).unwrap_or(Value::Null), pass)
        }
        Err(e) => (json!({ "theorem": "dirichlet", "error": e.to_string() }), false),
    }
}

#[allow(clippy::too_many_arguments)]
fn cmd_fracpow(
    path: &Path,
    alpha: f64,
    vector: &str,
    form: FormArg,
    tol: f64,
    seed: u64,
    check_only: bool,
    out: Option<&Path>,
) -> CliResult<i32> {
    if !(alpha > 0.0 && alpha < 1.0) {
        return Err(CliError::new(2, format!("alpha in (0,1) required, got {alpha}")));
    }
    let cfg = load_config(path)?;
    let coeffs = cfg.fields()?;
    let (conditions, passed) = dirichlet_value(&coeffs, &cfg.grid);
    if check_only {
        if let Some(dir) = out {
            ensure_dir(dir)?;
        }
        emit_json(&conditions, out.map(|d| d.join("report.json")).as_deref())?;
        return Ok(0);
    }
    if !passed {
        eprintln!("warning: coefficient conditions do not hold; computing anyway");
    }
    let g = cfg.grid;
    let op = GridOperator::new(g, coeffs)?;
    let v = crate::fracpow::from_real(&grid_vector(vector, &g, seed)?);
    let form = match form {
        FormArg::Left => Form::Left,
        FormArg::Right => Form::Right,
    };
    let spec = QuadratureSpec::new(alpha)?.with_form(form).with_tol(tol);
    let p = frac_power_apply(&op, &v, &spec)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x9e37_79b9);
    let other = ImaginaryUnit::random(3, &mut rng)?;
    let q = frac_power_apply(&op, &v, &spec.clone().with_plane(other.clone()))?;
    let rel = |a: &[Quaternion], b: &[Quaternion]| {
        let d: Vec<Quaternion> = a.iter().zip(b).map(|(x, y)| *x - *y).collect();
        vec_norm(&d) / vec_norm(a).max(f64::MIN_POSITIVE)
    };
    let plane_res = rel(p.single(), q.single());
    let oracle = if op.constant_coefficients().is_some() {
        let o = commuting_oracle(&op, &v, alpha)?;
        Some(rel(&o, p.single()))
    } else {
        None
    };
    let report = json!({
        "alpha": alpha,
        "form": format!("{form:?}").to_lowercase(),
        "box": g,
        "conditions": conditions,
        "conditions_passed": passed,
        "nodes_per_branch": p.nodes_per_branch,
        "last_change": p.last_change,
        "changes": p.changes,
        "u_range": [p.u_range.0, p.u_range.1],
        "spectral_scales": [p.spectral_scales.0, p.spectral_scales.1],
        "plane_independence": { "plane": other.components(), "relative_difference": plane_res },
        "oracle_agreement": oracle,
    });
    match out {
        Some(dir) => {
            ensure_dir(dir)?;
            write_field_csv(&dir.join("field.csv"), &g, p.single())?;
            emit_json(&report, Some(&dir.join("report.json")))?;
        }
        None => emit_json(&report, None)?,
    }
    Ok(0)
}

fn cmd_heat(
    path: &Path,
    alphas: &[f64],
    dt: f64,
    steps: usize,
    init: &str,
    seed: u64,
    out: Option<&Path>,
) -> CliResult<i32> {
    let cfg = load_config(path)?;
    let g = cfg.grid;
    let coeffs = cfg.fields()?;
    let unit = coeffs.iter().all(|c| c.is_constant() == Some(1.0));
    let op = GridOperator::new(g, coeffs)?;
    let f0 = grid_vector(init, &g, seed)?;
    let mu = mode_value(init, &g).filter(|_| unit);
    if let Some(dir) = out {
        ensure_dir(dir)?;
    }
    let mut runs = Vec::new();
    for &alpha in alphas {
        let tr = heat_step(&op, alpha, &f0, dt, steps, None)?;
        let total = tr.times.last().copied().unwrap_or(0.0);
        let rate = if total > 0.0 {
            Some(-(tr.norms.last().unwrap() / tr.norms[0]).ln() / total)
        } else {
            None
        };
        let file = if let Some(dir) = out {
            let name = if alphas.len() == 1 {
                "trajectory.csv".to_string()
            } else {
                format!("trajectory_alpha{alpha}.csv")
            };
            let f = fs::File::create(dir.join(&name)).map_err(|e| CliError::new(2, e.to_string()))?;
            tr.write_csv(std::io::BufWriter::new(f))?;
            Some(name)
        } else {
            None
        };
        runs.push(json!({
            "alpha": alpha,
            "dt": dt,
            "steps": steps,
            "times": tr.times,
            "norms": tr.norms,
            "decay_rate": rate,
            "eigen_oracle_rate": mu.map(|m| m.powf((1.0 + alpha) / 2.0)),
            "trajectory": file,
        }));
    }
    let summary = json!({ "box": g, "init": init, "runs": runs });
    emit_json(&summary, out.map(|d| d.join("summary.json")).as_deref())?;
    Ok(0)
}

fn cmd_check(path: &Path, theorem: Theorem, out: Option<&Path>) -> CliResult<i32> {
    let cfg = load_config(path)?;
    let coeffs = cfg.fields()?;
    let mut reports: Vec<Value> = Vec::new();
    let mut ok = true;
    let mut record = |r: crate::Result<ConditionReport>, name: &str| match r {
        Ok(rep) => {
            ok &= rep.passed();
            reports.push(serde_json::to_value(rep).unwrap_or(Value::Null));
        }
        Err(e @ (Error::DegenerateCoefficient(_) | Error::NoDecayCertificate(_))) => {
            ok = false;
            reports.push(json!({ "theorem": name, "error": e.to_string() }));
        }
        Err(e) => reports.push(json!({ "theorem": name, "fatal": e.to_string() })),
    };
    let want = |t: Theorem| theorem == t || theorem == Theorem::All;
    if want(Theorem::Dirichlet) {
        record(check_dirichlet_conditions(&coeffs, &cfg.grid), "dirichlet");
    }
    if want(Theorem::Robin) {
        match &cfg.robin {
            Some(rb) => {
                let trace = match (rb.trace_constant, rb.estimate) {
                    (Some(c), _) => TraceConstant::Given(c),
                    (None, true) => TraceConstant::Estimate(rb.estimate_points),
                    (None, false) => TraceConstant::None,
                };
                let r = check_robin_conditions(&coeffs, &rb.a, &cfg.grid, trace);
                if let Err(e @ Error::InvalidInput(_)) = &r {
                    return Err(CliError::new(2, e.to_string()));
                }
                record(r, "robin");
            }
            None if theorem == Theorem::Robin => return Err(CliError::new(2, "config has no robin block")),
            None => {}
        }
    }
    if want(Theorem::Unbounded) {
        match &cfg.truncation {
            Some(tr) => record(check_unbounded_conditions(&coeffs, tr.lo, tr.hi), "unbounded"),
            None if theorem == Theorem::Unbounded => {
                return Err(CliError::new(2, "config has no truncation block"));
            }
            None => {}
        }
    }
    if reports.iter().any(|r| r.get("fatal").is_some()) {
        emit_json(&json!({ "reports": reports, "passed": false }), out)?;
        return Err(CliError::new(3, "condition evaluation failed"));
    }
    emit_json(&json!({ "reports": reports, "passed": ok }), out)?;
    Ok(if ok { 0 } else { 1 })
}

fn cmd_verify(suite: &str, seed: u64, fault: Option<&str>, as_json: bool) -> CliResult<i32> {
    if let Some(f) = fault {
        if !invariant_names().contains(&f) {
            return Err(CliError::new(2, format!("unknown invariant {f:?} for --inject-fault")));
        }
    }
    let rows = run_suite(suite, seed, fault)?;
    if as_json {
        emit_json(&rows, None)?;
    } else {
        let stdout = std::io::stdout();
        let mut w = stdout.lock();
        let _ = writeln!(w, "{:<10} {:<28} {:>12} {:>12}  result", "suite", "invariant", "measured", "tolerance");
        for r in &rows {
            let cmp = if r.at_least { ">=" } else { "<=" };
            let _ = writeln!(
                w,
                "{:<10} {:<28} {:>12.3e} {cmp}{:>10.1e}  {}",
                r.suite,
                r.invariant,
                r.measured,
                r.tolerance,
                if r.pass { "pass" } else { "FAIL" }
            );
        }
    }
    let failed: Vec<&str> = rows.iter().filter(|r| !r.pass).map(|r| r.invariant).collect();
    if failed.is_empty() {
        Ok(0)
    } else {
        eprintln!("sspec verify: failing invariants: {}", failed.join(", "));
        Ok(1)
    }
}
