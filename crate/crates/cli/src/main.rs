//! `fracschro` command-line front-end. Every subcommand is a thin wrapper
//! over the library; numerical work lives in `fracschro-core`.

mod config;

use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand};
use fracschro::backward::{reconstruct_sub, reconstruct_super, BackwardResult, DEFAULT_DENOM_FLOOR};
use fracschro::calibrate::calibrate;
use fracschro::constants::FrozenConstants;
use fracschro::figures::{figure, FigureId};
use fracschro::forward::{
    oracle_trajectory, regularity_report, solve_forward, solve_forward_derivative, solve_trajectory, EvolutionCase,
    EvolutionProblem,
};
use fracschro::mlf::{ml_eval, MlIndex};
use fracschro::spectral::{spectrum_from_file, ModalState, Spectrum};
use fracschro::verify::{run_suite, Suite, VerifyOptions};
use fracschro::zeros::{
    conjecture_harness, exceptional_times, scan_e_imag_axis, scan_psi, Conjecture, ExceptionalKind, ScanGrid,
    Spacing, DEFAULT_POINTS, ZERO_TOL,
};
use fracschro::Error;
use num_complex::Complex64;
use serde_json::json;

use config::RunConfig;

#[derive(Parser)]
#[command(name = "fracschro", version, about = "Time-fractional Schrödinger toolkit")]
struct Cli {
    /// TOML manifest; flags override its values.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Output directory (flag, then FRACSCHRO_OUTPUT_DIR, then manifest, then ".").
    #[arg(long, global = true, env = "FRACSCHRO_OUTPUT_DIR")]
    output_dir: Option<PathBuf>,
    /// Seed for the random corpora used by `verify` (default 0).
    #[arg(long, global = true)]
    seed: Option<u64>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate E_{α,β}(z) and print value and diagnostics as JSON.
    Ml(MlArgs),
    /// Solve the forward problem on a spectral basis.
    Forward(ForwardArgs),
    /// Reconstruct initial data from terminal data.
    Backward(BackwardArgs),
    /// Scan E_{α,1}(it) (α < 1) or ψ (α > 1) for zeros.
    Zeros(ZerosArgs),
    /// Run the numerical harness for one of the three conjectures.
    Conjecture(ConjectureArgs),
    /// Emit figure data as CSV.
    Figures(FiguresArgs),
    /// Run a verification suite and print a pass/fail table.
    Verify(VerifyArgs),
    /// Recompute the frozen constants table.
    Calibrate(CalibrateArgs),
}

#[derive(Args)]
struct MlArgs {
    #[arg(long)]
    alpha: Option<f64>,
    #[arg(long)]
    beta: Option<f64>,
    /// `re,im` or polar `r@theta`.
    #[arg(long, allow_hyphen_values = true)]
    z: Option<String>,
    #[arg(long)]
    tol: Option<f64>,
}

#[derive(Args)]
struct ForwardArgs {
    /// nu1-sub, nu-alpha-sub or nu-alpha-super.
    #[arg(long)]
    case: Option<String>,
    #[arg(long)]
    alpha: Option<f64>,
    #[arg(long)]
    spectrum: Option<PathBuf>,
    #[arg(long)]
    u0: Option<PathBuf>,
    #[arg(long)]
    u1: Option<PathBuf>,
    #[arg(long)]
    horizon: Option<f64>,
    /// Explicit output times; defaults to an even grid on [0, T].
    #[arg(long, value_delimiter = ',')]
    times: Option<Vec<f64>>,
    #[arg(long)]
    n_times: Option<usize>,
    /// Sobolev index of the regularity table.
    #[arg(long)]
    s: Option<f64>,
    /// Also write the L1 time-stepping trajectory with this many steps.
    #[arg(long)]
    oracle_steps: Option<usize>,
}

#[derive(Args)]
struct BackwardArgs {
    #[arg(long)]
    case: Option<String>,
    #[arg(long)]
    alpha: Option<f64>,
    #[arg(long)]
    spectrum: Option<PathBuf>,
    #[arg(long)]
    u_t: Option<PathBuf>,
    /// Terminal velocity, superdiffusive case only.
    #[arg(long)]
    v_t: Option<PathBuf>,
    #[arg(long)]
    horizon: Option<f64>,
    #[arg(long)]
    denom_floor: Option<f64>,
}

#[derive(Args)]
struct ZerosArgs {
    #[arg(long)]
    alpha: Option<f64>,
    #[arg(long)]
    t_max: Option<f64>,
    #[arg(long)]
    n_points: Option<usize>,
    #[arg(long)]
    tol: Option<f64>,
    /// Map confirmed zeros to exceptional times on this spectrum.
    #[arg(long)]
    spectrum: Option<PathBuf>,
}

#[derive(Args)]
struct ConjectureArgs {
    /// 1, 2 or 3.
    #[arg(long)]
    which: Option<u8>,
    #[arg(long)]
    alpha: Option<f64>,
    #[arg(long)]
    t_min: Option<f64>,
    #[arg(long)]
    t_max: Option<f64>,
    #[arg(long)]
    n_points: Option<usize>,
    #[arg(long)]
    tol: Option<f64>,
}

#[derive(Args)]
struct FiguresArgs {
    /// fig1 … fig5 or all.
    which: Option<String>,
    /// Override the number of grid points.
    #[arg(long)]
    n_points: Option<usize>,
}

#[derive(Args)]
struct VerifyArgs {
    /// bounds, identities, stability, zeros, conjectures or oracle.
    suite: String,
    /// Restrict the zero suite to one order.
    #[arg(long)]
    alpha: Option<f64>,
    /// Constants table to use instead of the built-in one.
    #[arg(long)]
    constants: Option<PathBuf>,
}

#[derive(Args)]
struct CalibrateArgs {
    /// Destination file, relative to the output directory.
    #[arg(long, default_value = "constants.toml")]
    out: PathBuf,
}

/// A failure with its exit status.
#[derive(Debug)]
struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Self {
        Self { code: 2, message: message.into() }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match &e {
            Error::InvalidParameter(_)
            | Error::Parse { .. }
            | Error::InvariantViolation { .. }
            | Error::UnsupportedCase(_)
            | Error::Pole(_)
            | Error::AdmissibilityViolation { .. } => 2,
            Error::PrecisionNotReached { .. } => 3,
            Error::Overflow { .. } => 4,
            Error::IllPosedHorizon { .. } => 5,
            Error::Io(_) | Error::Csv(_) | Error::Constants(_) => 1,
        };
        Self { code, message: e.to_string() }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Self { code: 1, message: e.to_string() }
    }
}

impl From<serde_json::Error> for Failure {
    fn from(e: serde_json::Error) -> Self {
        Self { code: 1, message: e.to_string() }
    }
}

type CmdResult = Result<(), Failure>;

fn require<T>(v: Option<T>, name: &str) -> Result<T, Failure> {
    v.ok_or_else(|| Failure::usage(format!("missing --{name} (flag or manifest)")))
}

fn existing(path: PathBuf) -> Result<PathBuf, Failure> {
    if path.is_file() {
        Ok(path)
    } else {
        Err(Failure::usage(format!("input file {} does not exist", path.display())))
    }
}

/// Writes through a temporary file in the same directory, then renames.
struct Output {
    dir: PathBuf,
}

impl Output {
    fn write_with(&self, name: &Path, f: impl FnOnce(&mut Vec<u8>) -> Result<(), Failure>) -> Result<PathBuf, Failure> {
        let target = self.dir.join(name);
        if let Some(parent) = target.parent() {
            std::fs::create_dir_all(parent)?;
        }
        let mut buf = Vec::new();
        f(&mut buf)?;
        let file_name = target.file_name().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
        let tmp = target.with_file_name(format!(".{file_name}.tmp{}", std::process::id()));
        {
            let mut file = std::fs::File::create(&tmp)?;
            file.write_all(&buf)?;
            file.sync_all()?;
        }
        std::fs::rename(&tmp, &target)?;
        Ok(target)
    }

    fn json(&self, name: &str, value: &serde_json::Value) -> Result<PathBuf, Failure> {
        self.write_with(Path::new(name), |buf| {
            serde_json::to_writer_pretty(&mut *buf, value)?;
            buf.push(b'\n');
            Ok(())
        })
    }

    fn state(&self, name: &str, state: &ModalState) -> Result<PathBuf, Failure> {
        self.write_with(Path::new(name), |buf| Ok(state.write_csv(buf)?))
    }
}

fn parse_complex(s: &str) -> Result<Complex64, Failure> {
    let bad = || Failure::usage(format!("cannot parse z = '{s}' (expected re,im or r@theta)"));
    let num = |t: &str| t.trim().parse::<f64>().map_err(|_| bad());
    if let Some((r, theta)) = s.split_once('@') {
        Ok(Complex64::from_polar(num(r)?, num(theta)?))
    } else if let Some((re, im)) = s.split_once(',') {
        Ok(Complex64::new(num(re)?, num(im)?))
    } else {
        Ok(Complex64::new(num(s)?, 0.0))
    }
}

fn parse_case(s: &str) -> Result<EvolutionCase, Failure> {
    s.parse::<EvolutionCase>().map_err(Failure::from)
}

fn load_spectrum(path: PathBuf) -> Result<Arc<Spectrum>, Failure> {
    Ok(Arc::new(spectrum_from_file(existing(path)?)?))
}

fn load_state(path: PathBuf, spectrum: &Arc<Spectrum>) -> Result<ModalState, Failure> {
    Ok(ModalState::from_file(existing(path)?, Arc::clone(spectrum))?)
}

fn complex_pairs(v: &[Complex64]) -> Vec<[f64; 2]> {
    v.iter().map(|c| [c.re, c.im]).collect()
}

fn cmd_ml(args: MlArgs, cfg: &RunConfig) -> CmdResult {
    let alpha = require(args.alpha.or(cfg.ml.alpha), "alpha")?;
    let beta = require(args.beta.or(cfg.ml.beta), "beta")?;
    let z = parse_complex(&require(args.z.or_else(|| cfg.ml.z.clone()), "z")?)?;
    let mut idx = MlIndex::new(alpha, beta)?;
    if let Some(tol) = args.tol.or(cfg.ml.tol) {
        idx = idx.with_tolerance(tol)?;
    }
    let (value, diag) = ml_eval(&idx, z)?;
    let report = json!({
        "alpha": alpha,
        "beta": beta,
        "z": { "re": z.re, "im": z.im },
        "re": value.re,
        "im": value.im,
        "diagnostics": diag,
    });
    println!("{}", serde_json::to_string_pretty(&report)?);
    Ok(())
}

fn cmd_forward(args: ForwardArgs, cfg: &RunConfig, out: &Output) -> CmdResult {
    let c = &cfg.forward;
    let case = parse_case(&require(args.case.or_else(|| c.case.clone()), "case")?)?;
    let alpha = require(args.alpha.or(c.alpha), "alpha")?;
    let horizon = require(args.horizon.or(c.horizon), "horizon")?;
    let spectrum = load_spectrum(require(args.spectrum.or_else(|| c.spectrum.clone()), "spectrum")?)?;
    let u0 = load_state(require(args.u0.or_else(|| c.u0.clone()), "u0")?, &spectrum)?;
    let u1 = match args.u1.or_else(|| c.u1.clone()) {
        Some(p) => Some(load_state(p, &spectrum)?),
        None if case.is_super() => Some(ModalState::zeros(Arc::clone(&spectrum))),
        None => None,
    };
    let problem = EvolutionProblem::new(case, alpha, u0, u1, horizon)?;

    let times = match args.times.or_else(|| c.times.clone()) {
        Some(t) => t,
        None => {
            let n = args.n_times.or(c.n_times).unwrap_or(11).max(2);
            (0..n).map(|k| horizon * k as f64 / (n - 1) as f64).collect()
        }
    };
    let trajectory = solve_trajectory(&problem, &times)?;
    let mut written = vec![out.write_with(Path::new("trajectory.csv"), |buf| Ok(trajectory.write_csv(buf, None)?))?];

    let u_t = solve_forward(&problem, horizon)?;
    written.push(out.state("u_T.csv", &u_t)?);
    if case.is_super() {
        let v_t = solve_forward_derivative(&problem, horizon, 1)?;
        written.push(out.state("v_T.csv", &v_t)?);
    }
    if let Some(steps) = args.oracle_steps.or(c.oracle_steps) {
        let oracle = oracle_trajectory(&problem, steps)?;
        written.push(out.write_with(Path::new("trajectory_l1.csv"), |buf| Ok(oracle.write_csv(buf, Some("l1"))?))?);
    }

    let s = args.s.or(c.s).unwrap_or(0.0);
    let constants = FrozenConstants::builtin()?;
    let grid: Vec<f64> = times.iter().copied().filter(|&t| t > 0.0 && t <= horizon).collect();
    let regularity = if grid.is_empty() {
        None
    } else {
        Some(regularity_report(&problem, s, &grid, constants.es_row(alpha))?)
    };
    let report = json!({
        "case": case,
        "alpha": alpha,
        "horizon": horizon,
        "n_modes": spectrum.len(),
        "norm_u0": problem.u0().norm(),
        "norm_u_T": u_t.norm(),
        "regularity": regularity,
        "files": written,
    });
    let path = out.json("forward_report.json", &report)?;
    println!("{}", path.display());
    Ok(())
}

fn backward_report(case: EvolutionCase, alpha: f64, horizon: f64, r: &BackwardResult) -> serde_json::Value {
    json!({
        "case": case,
        "alpha": alpha,
        "horizon": horizon,
        "n_modes": r.u0.len(),
        "per_mode_denominator": complex_pairs(&r.per_mode_denominator),
        "condition_report": r.condition_report,
        "max_condition": r.condition_report.iter().copied().fold(0.0, f64::max),
        "conditioning_slope": r.conditioning_slope(),
    })
}

fn cmd_backward(args: BackwardArgs, cfg: &RunConfig, out: &Output) -> CmdResult {
    let c = &cfg.backward;
    let case = parse_case(&require(args.case.or_else(|| c.case.clone()), "case")?)?;
    let alpha = require(args.alpha.or(c.alpha), "alpha")?;
    let horizon = require(args.horizon.or(c.horizon), "horizon")?;
    let floor = args.denom_floor.or(c.denom_floor).unwrap_or(DEFAULT_DENOM_FLOOR);
    let spectrum = load_spectrum(require(args.spectrum.or_else(|| c.spectrum.clone()), "spectrum")?)?;
    let u_t = load_state(require(args.u_t.or_else(|| c.u_t.clone()), "u-t")?, &spectrum)?;
    let result = if case.is_super() {
        let v_t = load_state(require(args.v_t.or_else(|| c.v_t.clone()), "v-t")?, &spectrum)?;
        reconstruct_super(alpha, &u_t, &v_t, horizon, floor)?
    } else {
        if !case.accepts(alpha) {
            return Err(Failure::usage(format!("case {} does not accept alpha = {alpha}", case.name())));
        }
        reconstruct_sub(case, alpha, &u_t, horizon, floor)?
    };
    out.state("u0.csv", &result.u0)?;
    if let Some(u1) = &result.u1 {
        out.state("u1.csv", u1)?;
    }
    let path = out.json("backward_report.json", &backward_report(case, alpha, horizon, &result))?;
    println!("{}", path.display());
    Ok(())
}

fn cmd_zeros(args: ZerosArgs, cfg: &RunConfig, out: &Output) -> CmdResult {
    let c = &cfg.zeros;
    let alpha = require(args.alpha.or(c.alpha), "alpha")?;
    let t_max = args.t_max.or(c.t_max).unwrap_or(100.0);
    let n = args.n_points.or(c.n_points).unwrap_or(DEFAULT_POINTS);
    let tol = args.tol.or(c.tol).unwrap_or(ZERO_TOL);
    let (report, kind) = if alpha < 1.0 {
        (scan_e_imag_axis(alpha, t_max, n, tol)?, ExceptionalKind::Upsilon)
    } else {
        (scan_psi(alpha, t_max, n, tol)?, ExceptionalKind::Lambda)
    };
    let exceptional = match args.spectrum.or_else(|| c.spectrum.clone()) {
        Some(p) => {
            let sp = load_spectrum(p)?;
            Some(exceptional_times(kind, &report.confirmed_zeros, &sp, alpha)?)
        }
        None => None,
    };
    let value = json!({ "scan": report, "exceptional_times": exceptional });
    let path = out.json("zeros_report.json", &value)?;
    println!(
        "{}",
        json!({
            "alpha": alpha,
            "confirmed_zeros": report.confirmed_zeros,
            "suspicious": report.suspicious,
            "radius_r": report.radius_r,
            "complete": report.complete,
            "report": path,
        })
    );
    Ok(())
}

fn cmd_conjecture(args: ConjectureArgs, cfg: &RunConfig, out: &Output) -> CmdResult {
    let c = &cfg.conjecture;
    let which = Conjecture::from_number(require(args.which.or(c.which), "which")?)?;
    let alpha = require(args.alpha.or(c.alpha), "alpha")?;
    let t_min = args.t_min.or(c.t_min);
    let t_max = args.t_max.or(c.t_max).unwrap_or(100.0);
    let n = args.n_points.or(c.n_points).unwrap_or(DEFAULT_POINTS);
    let tol = args.tol.or(c.tol).unwrap_or(ZERO_TOL);
    let grid = match which {
        Conjecture::PsiNonvanishing => ScanGrid::new(t_min.unwrap_or(1e-3), t_max, n, Spacing::Log)?,
        _ => ScanGrid::new(t_min.unwrap_or(0.0), t_max, n, Spacing::Linear)?,
    };
    let report = conjecture_harness(which, alpha, grid, tol)?;
    let holds = report.holds();
    let path = out.json("conjecture_report.json", &serde_json::to_value(&report)?)?;
    println!("{}", json!({ "conjecture": which, "alpha": alpha, "holds": holds, "report": path }));
    Ok(())
}

fn cmd_figures(args: FiguresArgs, cfg: &RunConfig, out: &Output) -> CmdResult {
    let which = args.which.or_else(|| cfg.figures.which.clone()).unwrap_or_else(|| "all".into());
    let ids: Vec<FigureId> = if which == "all" { FigureId::ALL.to_vec() } else { vec![which.parse()?] };
    let n_points = args.n_points.or(cfg.figures.n_points);
    for id in ids {
        let mut grid = id.default_grid();
        if let Some(n) = n_points {
            grid = ScanGrid::new(grid.t_min, grid.t_max, n, grid.spacing)?;
        }
        let data = figure(id, &grid)?;
        let path = out.write_with(Path::new(&format!("{}.csv", id.name())), |buf| Ok(data.write_csv(buf)?))?;
        println!("{}", path.display());
    }
    Ok(())
}

fn cmd_verify(args: VerifyArgs, cfg: &RunConfig, seed: u64) -> CmdResult {
    let suite: Suite = args.suite.parse()?;
    let constants = match args.constants.or_else(|| cfg.verify.constants.clone()) {
        Some(p) => FrozenConstants::from_path(existing(p)?)?,
        None => FrozenConstants::builtin()?,
    };
    let report = run_suite(suite, &VerifyOptions { alpha: args.alpha, seed, constants })?;
    let width = report.checks.iter().map(|c| c.name.len()).max().unwrap_or(0);
    for c in &report.checks {
        let tag = match c.pass {
            Some(true) => "PASS",
            Some(false) => "FAIL",
            None => "INFO",
        };
        println!("{tag}  {:width$}  {}", c.name, c.detail);
    }
    if report.passed() {
        println!("suite {}: all checks passed", suite.name());
        Ok(())
    } else {
        Err(Failure { code: 1, message: format!("suite {}: failures present", suite.name()) })
    }
}

fn cmd_calibrate(args: CalibrateArgs, out: &Output) -> CmdResult {
    let table = calibrate()?;
    let text = table.to_toml()?;
    let path = out.write_with(&args.out, |buf| {
        buf.extend_from_slice(text.as_bytes());
        Ok(())
    })?;
    println!("{}", path.display());
    Ok(())
}

fn run(cli: Cli) -> CmdResult {
    let cfg = match &cli.config {
        Some(p) => RunConfig::load(p).map_err(Failure::usage)?,
        None => RunConfig::default(),
    };
    let dir = cli.output_dir.clone().or_else(|| cfg.output_dir.clone()).unwrap_or_else(|| PathBuf::from("."));
    let out = Output { dir };
    let seed = cli.seed.or(cfg.seed).unwrap_or(0);
    match cli.command {
        Command::Ml(a) => cmd_ml(a, &cfg),
        Command::Forward(a) => cmd_forward(a, &cfg, &out),
        Command::Backward(a) => cmd_backward(a, &cfg, &out),
        Command::Zeros(a) => cmd_zeros(a, &cfg, &out),
        Command::Conjecture(a) => cmd_conjecture(a, &cfg, &out),
        Command::Figures(a) => cmd_figures(a, &cfg, &out),
        Command::Verify(a) => cmd_verify(a, &cfg, seed),
        Command::Calibrate(a) => cmd_calibrate(a, &out),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn complex_forms() {
        let z = parse_complex("-1,0.5").unwrap();
        assert_eq!((z.re, z.im), (-1.0, 0.5));
        let p = parse_complex("2@1.5707963267948966").unwrap();
        assert!((p.re).abs() < 1e-15 && (p.im - 2.0).abs() < 1e-15);
        assert_eq!(parse_complex("3").unwrap(), Complex64::new(3.0, 0.0));
        assert!(parse_complex("a,b").is_err());
    }
}
