//! The `fock-filter` command line: `sweep` drives the dataset engine,
//! `filter` evaluates a single configuration into a JSON report, and
//! `oracle-check` pits the closed-form filter against the brute-force
//! three-mode simulation on seeded random cases.
//!
//! Exit codes: 0 on success, 1 for usage problems (bad flags, bad config
//! files, unwritable paths), 2 for numeric failures (insufficient cutoff,
//! undefined holes, a herald that can never fire, a failed cross-check).

use std::f64::consts::{FRAC_PI_2, FRAC_PI_4};
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::filter::{
    alpha_for_hole, alpha_for_parity, filtered_state, lambda_param, FilterConfig, Parity,
};
use crate::fock::{cat_state, coherent_state, fock_state, squeezed_coherent_state, FockVector};
use crate::metrics::{mandel_q, mean_photon_number, quadratures};
use crate::plot::render_svg;
use crate::sweep::{
    error_code, run_sweep, to_csv_string, to_json_string, Family, HoleSpec, SweepSpec,
    SweepVariable,
};
use crate::Error;

pub const AMPLITUDE_TOLERANCE: f64 = 1e-9;
pub const PROBABILITY_TOLERANCE: f64 = 1e-10;

#[derive(Parser)]
#[command(
    name = "fock-filter",
    version,
    about = "Heralded Fock-state filtering of light through two beam splitters"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand)]
pub enum Command {
    /// Sweep a parameter and emit a CSV/JSON dataset (optionally an SVG chart)
    Sweep(SweepArgs),
    /// Evaluate one filter configuration and print a JSON report
    Filter(FilterArgs),
    /// Cross-check the closed-form filter against the three-mode unitary
    OracleCheck(OracleCheckArgs),
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum FamilyArg {
    #[value(alias = "squeezed_coherent")]
    SqueezedCoherent,
    Cat,
}

impl From<FamilyArg> for Family {
    fn from(f: FamilyArg) -> Family {
        match f {
            FamilyArg::SqueezedCoherent => Family::SqueezedCoherent,
            FamilyArg::Cat => Family::Cat,
        }
    }
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum VariableArg {
    #[value(alias = "gamma_abs")]
    GammaAbs,
    S,
}

impl From<VariableArg> for SweepVariable {
    fn from(v: VariableArg) -> SweepVariable {
        match v {
            VariableArg::GammaAbs => SweepVariable::GammaAbs,
            VariableArg::S => SweepVariable::S,
        }
    }
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum DataFormat {
    Csv,
    Json,
}

#[derive(Args)]
pub struct SweepArgs {
    /// TOML sweep spec; the flags below override values from the file
    #[arg(long)]
    pub config: Option<PathBuf>,
    #[arg(long, value_enum)]
    pub family: Option<FamilyArg>,
    #[arg(long, value_enum)]
    pub variable: Option<VariableArg>,
    #[arg(long)]
    pub start: Option<f64>,
    #[arg(long)]
    pub stop: Option<f64>,
    #[arg(long)]
    pub steps: Option<usize>,
    /// Fixed |gamma| when sweeping s
    #[arg(long)]
    pub gamma_abs: Option<f64>,
    /// Fixed squeezing magnitude when sweeping |gamma|
    #[arg(long)]
    pub s: Option<f64>,
    #[arg(long)]
    pub beta: Option<f64>,
    #[arg(long)]
    pub squeeze_phase: Option<f64>,
    #[arg(long)]
    pub delta: Option<f64>,
    #[arg(long)]
    pub theta1: Option<f64>,
    #[arg(long)]
    pub theta2: Option<f64>,
    #[arg(long)]
    pub cutoff: Option<usize>,
    /// Comma-separated hole selectors: n0, n1, ..., even, odd
    #[arg(long, value_delimiter = ',')]
    pub holes: Option<Vec<String>>,
    /// Output path (stdout when omitted)
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = DataFormat::Csv)]
    pub format: DataFormat,
    /// Render the spec's [plot] block to this SVG path
    #[arg(long)]
    pub svg: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum InputFamilyArg {
    Coherent,
    Fock,
    #[value(alias = "squeezed_coherent", alias = "squeezed")]
    SqueezedCoherent,
    Cat,
}

#[derive(Args)]
pub struct FilterArgs {
    /// Input state in port a
    #[arg(long, value_enum)]
    pub family: InputFamilyArg,
    #[arg(long, default_value_t = 0.5)]
    pub gamma_abs: f64,
    #[arg(long, default_value_t = 0.0)]
    pub beta: f64,
    #[arg(long, default_value_t = 1.0)]
    pub s: f64,
    #[arg(long, default_value_t = 0.0)]
    pub squeeze_phase: f64,
    #[arg(long, default_value_t = FRAC_PI_2)]
    pub delta: f64,
    /// Photon number for the fock family
    #[arg(long, default_value_t = 1)]
    pub n: usize,
    /// Hole selector (n0, n1, ..., even, odd); picks alpha automatically
    #[arg(long, conflicts_with_all = ["alpha_re", "alpha_im"])]
    pub hole: Option<String>,
    /// Explicit ancilla amplitude, real part
    #[arg(long)]
    pub alpha_re: Option<f64>,
    /// Explicit ancilla amplitude, imaginary part
    #[arg(long)]
    pub alpha_im: Option<f64>,
    #[arg(long, default_value_t = FRAC_PI_4)]
    pub theta1: f64,
    #[arg(long, default_value_t = FRAC_PI_4)]
    pub theta2: f64,
    #[arg(long, default_value_t = crate::fock::DEFAULT_CUTOFF)]
    pub cutoff: usize,
    /// Leading collapsed amplitudes included in the report
    #[arg(long, default_value_t = 10)]
    pub top: usize,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args)]
pub struct OracleCheckArgs {
    #[arg(long, default_value_t = 42)]
    pub seed: u64,
    #[arg(long, default_value_t = 20)]
    pub trials: usize,
    /// Basis size used for the coherent ancilla vector
    #[arg(long, default_value_t = 24)]
    pub cutoff: usize,
    #[arg(long, value_enum, default_value_t = DataFormat::Json)]
    pub format: DataFormat,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

/// CLI failure, carrying the exit code split required by the interface.
#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Numeric(Error),
    CheckFailed(String),
    Io(std::io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) | CliError::Io(_) => 1,
            CliError::Numeric(_) | CliError::CheckFailed(_) => 2,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Usage(m) => write!(f, "usage error: {m}"),
            CliError::Numeric(e) => write!(f, "{e}"),
            CliError::CheckFailed(m) => write!(f, "check failed: {m}"),
            CliError::Io(e) => write!(f, "io error: {e}"),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Io(e)
    }
}

#[derive(Clone, Copy, Debug, Serialize, Deserialize, PartialEq)]
pub struct ComplexField {
    pub re: f64,
    pub im: f64,
}

impl From<Complex64> for ComplexField {
    fn from(z: Complex64) -> Self {
        Self { re: z.re, im: z.im }
    }
}

#[derive(Debug, Serialize, Deserialize)]
pub struct ErrorBody {
    pub code: String,
    pub message: String,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct ErrorReport {
    pub error: ErrorBody,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct AmplitudeEntry {
    pub n: usize,
    pub re: f64,
    pub im: f64,
    pub abs: f64,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct MetricsReport {
    pub q: Option<f64>,
    pub var_x: Option<f64>,
    pub var_y: Option<f64>,
    pub mean_n: Option<f64>,
    pub squeezed_x: Option<bool>,
    pub squeezed_y: Option<bool>,
    pub flags: Vec<String>,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct HoleCheckReport {
    pub selector: String,
    pub residual: f64,
    pub verified: bool,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct FilterReport {
    pub input: serde_json::Value,
    pub theta1: f64,
    pub theta2: f64,
    pub lambda: ComplexField,
    pub alpha: ComplexField,
    pub alpha_source: String,
    pub psi0: ComplexField,
    pub psi1: ComplexField,
    pub probability: f64,
    pub collapsed_cutoff: usize,
    pub leading_amplitudes: Vec<AmplitudeEntry>,
    pub metrics: MetricsReport,
    pub hole_check: Option<HoleCheckReport>,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct OracleCheckReport {
    pub seed: u64,
    pub trials: usize,
    pub ancilla_cutoff: usize,
    pub max_amplitude_deviation: f64,
    pub max_probability_deviation: f64,
    pub amplitude_tolerance: f64,
    pub probability_tolerance: f64,
    pub pass: bool,
}

fn write_output(out: &Option<PathBuf>, text: &str) -> Result<(), CliError> {
    match out {
        Some(path) => std::fs::write(path, text)?,
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(text.as_bytes())?;
        }
    }
    Ok(())
}

fn numeric_json(e: &Error, extra: Option<&str>) -> String {
    let mut message = e.to_string();
    if let Some(x) = extra {
        message.push_str("; ");
        message.push_str(x);
    }
    serde_json::to_string_pretty(&ErrorReport {
        error: ErrorBody { code: error_code(e).to_string(), message },
    })
    .expect("error report serializes")
}

fn merge_spec(args: &SweepArgs) -> Result<SweepSpec, CliError> {
    let mut spec = match &args.config {
        Some(path) => {
            let text = std::fs::read_to_string(path).map_err(|e| {
                CliError::Usage(format!("cannot read config {}: {e}", path.display()))
            })?;
            toml::from_str::<SweepSpec>(&text)
                .map_err(|e| CliError::Usage(format!("bad config {}: {e}", path.display())))?
        }
        None => {
            let family = args
                .family
                .ok_or_else(|| CliError::Usage("--family is required without --config".into()))?;
            let variable = args
                .variable
                .ok_or_else(|| CliError::Usage("--variable is required without --config".into()))?;
            let start = args
                .start
                .ok_or_else(|| CliError::Usage("--start is required without --config".into()))?;
            let stop = args
                .stop
                .ok_or_else(|| CliError::Usage("--stop is required without --config".into()))?;
            let holes = args
                .holes
                .as_ref()
                .ok_or_else(|| CliError::Usage("--holes is required without --config".into()))?;
            let text = format!(
                "family = \"{}\"\nvariable = \"{}\"\nstart = {start}\nstop = {stop}\nholes = [{}]\n",
                Family::from(family),
                SweepVariable::from(variable),
                holes.iter().map(|h| format!("\"{h}\"")).collect::<Vec<_>>().join(", ")
            );
            toml::from_str::<SweepSpec>(&text)
                .map_err(|e| CliError::Usage(format!("bad sweep parameters: {e}")))?
        }
    };
    if let Some(f) = args.family {
        spec.family = f.into();
    }
    if let Some(v) = args.variable {
        spec.variable = v.into();
    }
    if let Some(v) = args.start {
        spec.start = v;
    }
    if let Some(v) = args.stop {
        spec.stop = v;
    }
    if let Some(v) = args.steps {
        spec.steps = v;
    }
    if let Some(v) = args.gamma_abs {
        spec.gamma_abs = v;
    }
    if let Some(v) = args.s {
        spec.s = v;
    }
    if let Some(v) = args.beta {
        spec.beta = v;
    }
    if let Some(v) = args.squeeze_phase {
        spec.squeeze_phase = v;
    }
    if let Some(v) = args.delta {
        spec.delta = v;
    }
    if let Some(v) = args.theta1 {
        spec.theta1 = v;
    }
    if let Some(v) = args.theta2 {
        spec.theta2 = v;
    }
    if let Some(v) = args.cutoff {
        spec.cutoff = v;
    }
    if let Some(holes) = &args.holes {
        let parsed: Result<Vec<HoleSpec>, Error> = holes.iter().map(|h| h.parse()).collect();
        spec.holes = parsed.map_err(|e| CliError::Usage(e.to_string()))?;
    }
    Ok(spec)
}

pub fn cmd_sweep(args: &SweepArgs) -> Result<(), CliError> {
    let spec = merge_spec(args)?;
    spec.validate().map_err(|e| CliError::Usage(e.to_string()))?;
    let dataset = run_sweep(&spec).map_err(|e| CliError::Usage(e.to_string()))?;
    let text = match args.format {
        DataFormat::Csv => to_csv_string(&dataset),
        DataFormat::Json => {
            let mut t = to_json_string(&dataset);
            t.push('\n');
            t
        }
    };
    write_output(&args.out, &text)?;
    if let Some(svg_path) = &args.svg {
        let svg = render_svg(&dataset).map_err(|e| CliError::Usage(e.to_string()))?;
        std::fs::write(svg_path, svg)?;
    }
    Ok(())
}

fn build_input(args: &FilterArgs) -> Result<(FockVector, Complex64, serde_json::Value), Error> {
    let gamma = Complex64::from_polar(args.gamma_abs, args.beta);
    match args.family {
        InputFamilyArg::Coherent => {
            let state = coherent_state(gamma, args.cutoff)?;
            let echo = serde_json::json!({
                "family": "coherent",
                "gamma": {"re": gamma.re, "im": gamma.im},
                "cutoff": args.cutoff,
            });
            Ok((state, gamma, echo))
        }
        InputFamilyArg::Fock => {
            let state = fock_state(args.n, args.cutoff)?;
            let echo = serde_json::json!({
                "family": "fock",
                "n": args.n,
                "cutoff": args.cutoff,
            });
            Ok((state, gamma, echo))
        }
        InputFamilyArg::SqueezedCoherent => {
            let xi = Complex64::from_polar(args.s, args.squeeze_phase);
            let state = squeezed_coherent_state(gamma, xi, args.cutoff)?;
            let echo = serde_json::json!({
                "family": "squeezed_coherent",
                "gamma": {"re": gamma.re, "im": gamma.im},
                "xi": {"re": xi.re, "im": xi.im},
                "cutoff": args.cutoff,
            });
            Ok((state, gamma, echo))
        }
        InputFamilyArg::Cat => {
            let state = cat_state(gamma, args.delta, args.cutoff)?;
            let echo = serde_json::json!({
                "family": "cat",
                "gamma": {"re": gamma.re, "im": gamma.im},
                "delta": args.delta,
                "cutoff": args.cutoff,
            });
            Ok((state, gamma, echo))
        }
    }
}

fn metrics_report(state: &FockVector) -> MetricsReport {
    let mut report = MetricsReport {
        q: None,
        var_x: None,
        var_y: None,
        mean_n: None,
        squeezed_x: None,
        squeezed_y: None,
        flags: Vec::new(),
    };
    match mandel_q(state) {
        Ok(q) => report.q = Some(q),
        Err(e) => report.flags.push(error_code(&e).to_string()),
    }
    match quadratures(state) {
        Ok(r) => {
            report.var_x = Some(r.var_x);
            report.var_y = Some(r.var_y);
            report.squeezed_x = Some(r.squeezed_x);
            report.squeezed_y = Some(r.squeezed_y);
        }
        Err(e) => report.flags.push(error_code(&e).to_string()),
    }
    match mean_photon_number(state) {
        Ok(n) => report.mean_n = Some(n),
        Err(e) => report.flags.push(error_code(&e).to_string()),
    }
    report.flags.dedup();
    report
}

pub fn cmd_filter(args: &FilterArgs) -> Result<(), CliError> {
    let coherent_hint = matches!(args.family, InputFamilyArg::Coherent);
    let surface = |e: Error, out: &Option<PathBuf>| -> CliError {
        let hint = if coherent_hint && matches!(e, Error::ZeroProbability { .. }) {
            Some(
                "coherent inputs are the degenerate case: alpha = -Lambda*gamma removes every \
                 component at once, so the herald never fires",
            )
        } else {
            None
        };
        let text = numeric_json(&e, hint) + "\n";
        if write_output(out, &text).is_err() {
            // fall through to the numeric error either way
        }
        CliError::Numeric(e)
    };

    let (state, gamma, input_echo) = build_input(args).map_err(|e| surface(e, &args.out))?;

    let hole: Option<HoleSpec> = match &args.hole {
        Some(text) => {
            Some(text.parse().map_err(|e: Error| CliError::Usage(e.to_string()))?)
        }
        None => None,
    };
    let (alpha, alpha_source) = match (&hole, args.alpha_re, args.alpha_im) {
        (Some(h), None, None) => {
            let alpha = match h {
                HoleSpec::Fock(n) => alpha_for_hole(&state, *n, args.theta1, args.theta2),
                HoleSpec::Even => {
                    if !matches!(args.family, InputFamilyArg::Cat) {
                        return Err(CliError::Usage(
                            "parity selectors need --family cat".into(),
                        ));
                    }
                    alpha_for_parity(gamma, args.delta, args.theta1, args.theta2, Parity::Even)
                }
                HoleSpec::Odd => {
                    if !matches!(args.family, InputFamilyArg::Cat) {
                        return Err(CliError::Usage(
                            "parity selectors need --family cat".into(),
                        ));
                    }
                    alpha_for_parity(gamma, args.delta, args.theta1, args.theta2, Parity::Odd)
                }
            }
            .map_err(|e| surface(e, &args.out))?;
            (alpha, format!("hole:{}", h.label()))
        }
        (None, re, im) if re.is_some() || im.is_some() => (
            Complex64::new(re.unwrap_or(0.0), im.unwrap_or(0.0)),
            "explicit".to_string(),
        ),
        (None, None, None) => {
            return Err(CliError::Usage(
                "choose an ancilla: --hole SELECTOR or --alpha-re/--alpha-im".into(),
            ))
        }
        _ => unreachable!("clap conflicts prevent mixing --hole with --alpha-*"),
    };

    let cfg = FilterConfig::with_coherent_ancilla(args.theta1, args.theta2, alpha)
        .map_err(|e| surface(e, &args.out))?;
    let result = filtered_state(&state, &cfg).map_err(|e| surface(e, &args.out))?;
    let collapsed = result.collapsed();
    let normalized = result.normalized().map_err(|e| surface(e, &args.out))?;

    let hole_check = hole.map(|h| {
        let max_abs = collapsed
            .amplitudes()
            .iter()
            .map(|a| a.norm())
            .fold(0.0f64, f64::max)
            .max(f64::MIN_POSITIVE);
        let residual = match h {
            HoleSpec::Fock(n) => collapsed.amplitude(n).norm() / max_abs,
            HoleSpec::Even | HoleSpec::Odd => {
                // removed class: odd survives for Odd, so scan even indices
                let removed_start = if h == HoleSpec::Odd { 0 } else { 1 };
                (removed_start..normalized.cutoff())
                    .step_by(2)
                    .map(|n| normalized.amplitude(n).norm())
                    .fold(0.0f64, f64::max)
            }
        };
        HoleCheckReport { selector: h.label(), residual, verified: residual <= 1e-12 }
    });

    let top = args.top.min(collapsed.cutoff());
    let report = FilterReport {
        input: input_echo,
        theta1: args.theta1,
        theta2: args.theta2,
        lambda: lambda_param(args.theta1, args.theta2)
            .map_err(|e| surface(e, &args.out))?
            .into(),
        alpha: alpha.into(),
        alpha_source,
        psi0: cfg.psi0().into(),
        psi1: cfg.psi1().into(),
        probability: result.probability(),
        collapsed_cutoff: collapsed.cutoff(),
        leading_amplitudes: (0..top)
            .map(|n| {
                let a = collapsed.amplitude(n);
                AmplitudeEntry { n, re: a.re, im: a.im, abs: a.norm() }
            })
            .collect(),
        metrics: metrics_report(&normalized),
        hole_check,
    };
    let mut text = serde_json::to_string_pretty(&report).expect("report serializes");
    text.push('\n');
    write_output(&args.out, &text)
}

/// Seeded random cross-check of the two computation routes.
pub fn oracle_check_report(seed: u64, trials: usize, ancilla_cutoff: usize) -> Result<OracleCheckReport, Error> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut max_amp = 0.0f64;
    let mut max_p = 0.0f64;
    for _ in 0..trials {
        let amps: Vec<Complex64> = (0..13)
            .map(|_| Complex64::new(rng.gen::<f64>() - 0.5, rng.gen::<f64>() - 0.5))
            .collect();
        let phi = FockVector::from_amplitudes(amps)?.normalize()?;
        let alpha = Complex64::from_polar(1.5 * rng.gen::<f64>(), std::f64::consts::TAU * rng.gen::<f64>());
        let theta1 = 0.1 + 1.3 * rng.gen::<f64>();
        let theta2 = 0.1 + 1.3 * rng.gen::<f64>();

        let psi = coherent_state(alpha, ancilla_cutoff)?;
        let oracle = crate::circuit::run_oracle(&phi, &psi, theta1, theta2)?;
        let cfg = FilterConfig::with_coherent_ancilla(theta1, theta2, alpha)?;
        let analytic = filtered_state(&phi, &cfg)?;

        for n in 0..oracle.collapsed().cutoff() {
            let reference = if n < phi.cutoff() {
                analytic.collapsed().amplitude(n)
            } else {
                Complex64::new(0.0, 0.0)
            };
            let dev = (oracle.collapsed().amplitude(n) - reference).norm();
            max_amp = max_amp.max(dev);
        }
        max_p = max_p.max((oracle.probability() - analytic.probability()).abs());
    }
    Ok(OracleCheckReport {
        seed,
        trials,
        ancilla_cutoff,
        max_amplitude_deviation: max_amp,
        max_probability_deviation: max_p,
        amplitude_tolerance: AMPLITUDE_TOLERANCE,
        probability_tolerance: PROBABILITY_TOLERANCE,
        pass: max_amp <= AMPLITUDE_TOLERANCE && max_p <= PROBABILITY_TOLERANCE,
    })
}

pub fn cmd_oracle_check(args: &OracleCheckArgs) -> Result<(), CliError> {
    if args.trials == 0 {
        return Err(CliError::Usage("--trials must be at least 1".into()));
    }
    let report = oracle_check_report(args.seed, args.trials, args.cutoff)
        .map_err(CliError::Numeric)?;
    let text = match args.format {
        DataFormat::Json => {
            let mut t = serde_json::to_string_pretty(&report).expect("report serializes");
            t.push('\n');
            t
        }
        DataFormat::Csv => format!(
            "seed,trials,ancilla_cutoff,max_amplitude_deviation,max_probability_deviation,pass\n\
             {},{},{},{:.11e},{:.11e},{}\n",
            report.seed,
            report.trials,
            report.ancilla_cutoff,
            report.max_amplitude_deviation,
            report.max_probability_deviation,
            report.pass
        ),
    };
    write_output(&args.out, &text)?;
    if report.pass {
        eprintln!(
            "oracle-check PASS: max amplitude dev {:.3e}, max probability dev {:.3e}",
            report.max_amplitude_deviation, report.max_probability_deviation
        );
        Ok(())
    } else {
        Err(CliError::CheckFailed(format!(
            "max amplitude dev {:.3e} (tol {:.1e}), max probability dev {:.3e} (tol {:.1e})",
            report.max_amplitude_deviation,
            AMPLITUDE_TOLERANCE,
            report.max_probability_deviation,
            PROBABILITY_TOLERANCE
        )))
    }
}

/// Full binary entry point; parses arguments and maps every failure onto
/// the documented exit codes.
pub fn main_entry() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let result = match &cli.command {
        Command::Sweep(args) => cmd_sweep(args),
        Command::Filter(args) => cmd_filter(args),
        Command::OracleCheck(args) => cmd_oracle_check(args),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("{e}");
            ExitCode::from(e.exit_code())
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn oracle_check_is_deterministic_and_tight() {
        let a = oracle_check_report(42, 3, 24).unwrap();
        let b = oracle_check_report(42, 3, 24).unwrap();
        assert_eq!(a.max_amplitude_deviation, b.max_amplitude_deviation);
        assert_eq!(a.max_probability_deviation, b.max_probability_deviation);
        assert!(a.pass, "deviations: {:.3e} / {:.3e}", a.max_amplitude_deviation, a.max_probability_deviation);
        let c = oracle_check_report(43, 3, 24).unwrap();
        assert_ne!(a.max_amplitude_deviation, c.max_amplitude_deviation);
    }

    #[test]
    fn sweep_args_without_config_need_required_flags() {
        let args = SweepArgs {
            config: None,
            family: None,
            variable: None,
            start: None,
            stop: None,
            steps: None,
            gamma_abs: None,
            s: None,
            beta: None,
            squeeze_phase: None,
            delta: None,
            theta1: None,
            theta2: None,
            cutoff: None,
            holes: None,
            out: None,
            format: DataFormat::Csv,
            svg: None,
        };
        match cmd_sweep(&args) {
            Err(CliError::Usage(msg)) => assert!(msg.contains("--family")),
            other => panic!("expected usage error, got {other:?}"),
        }
    }

    #[test]
    fn zero_trials_is_usage() {
        let args = OracleCheckArgs {
            seed: 1,
            trials: 0,
            cutoff: 20,
            format: DataFormat::Json,
            out: None,
        };
        match cmd_oracle_check(&args) {
            Err(e @ CliError::Usage(_)) => assert_eq!(e.exit_code(), 1),
            other => panic!("expected usage error, got {other:?}"),
        }
    }
}
