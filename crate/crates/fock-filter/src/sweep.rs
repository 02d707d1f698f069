//! Parameter sweeps over the filter configurations, producing the datasets
//! behind the shipped figure configs: one row per sweep point, with the
//! input-state reference metrics next to one column group per hole
//! selector.
//!
//! Output contract: identical spec + crate version produces byte-identical
//! CSV (12 significant digits, RFC 4180 quoting, `#`-prefixed metadata
//! header). Rows are computed independently (and possibly in parallel) but
//! always written in sweep order. Metric cells that are undefined at a
//! point (a hole on an absent component, a herald that never fires, a
//! cutoff that cannot carry the state) stay empty and the group's flag
//! column names the reason instead; curves must show gaps there, not
//! interpolated values.

use std::fmt;
use std::io::Write;
use std::str::FromStr;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::filter::{
    alpha_for_hole, alpha_for_parity, filtered_state, FilterConfig, Parity,
};
use crate::fock::{
    cat_state, displacement_operator, squeeze_operator, squeezed_coherent_from_ops,
    FockVector, ModeOperatorMatrix, DEFAULT_CUTOFF,
};
use crate::metrics::{mandel_q, mean_photon_number, quadratures};
use crate::{Error, Result};

/// Which input-state family the sweep drives through the filter.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Family {
    SqueezedCoherent,
    Cat,
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Family::SqueezedCoherent => write!(f, "squeezed_coherent"),
            Family::Cat => write!(f, "cat"),
        }
    }
}

/// The swept parameter; everything else in the spec stays fixed.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SweepVariable {
    GammaAbs,
    S,
}

impl fmt::Display for SweepVariable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SweepVariable::GammaAbs => write!(f, "gamma_abs"),
            SweepVariable::S => write!(f, "s"),
        }
    }
}

/// A hole selector: remove the n-th Fock component, or a whole parity
/// class (cat inputs only). Parity labels name the *surviving* class.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub enum HoleSpec {
    Fock(usize),
    Even,
    Odd,
}

impl HoleSpec {
    pub fn label(&self) -> String {
        match self {
            HoleSpec::Fock(n) => format!("n{n}"),
            HoleSpec::Even => "even".into(),
            HoleSpec::Odd => "odd".into(),
        }
    }
}

impl fmt::Display for HoleSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.label())
    }
}

impl FromStr for HoleSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "even" => Ok(HoleSpec::Even),
            "odd" => Ok(HoleSpec::Odd),
            _ => {
                let digits = s
                    .strip_prefix('n')
                    .ok_or_else(|| Error::InvalidSpec(format!("unknown hole selector `{s}`")))?;
                let n: usize = digits
                    .parse()
                    .map_err(|_| Error::InvalidSpec(format!("unknown hole selector `{s}`")))?;
                Ok(HoleSpec::Fock(n))
            }
        }
    }
}

impl TryFrom<String> for HoleSpec {
    type Error = Error;

    fn try_from(s: String) -> Result<Self> {
        s.parse()
    }
}

impl From<HoleSpec> for String {
    fn from(h: HoleSpec) -> String {
        h.label()
    }
}

/// Metric selectable for the rendered chart.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Metric {
    P,
    Q,
    VarX,
    VarY,
    MeanN,
}

impl Metric {
    pub fn display_name(&self) -> &'static str {
        match self {
            Metric::P => "p",
            Metric::Q => "Q",
            Metric::VarX => "Var X",
            Metric::VarY => "Var Y",
            Metric::MeanN => "mean photon number",
        }
    }
}

/// Axis ranges and metric choice for the optional SVG chart.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PlotSpec {
    pub metric: Metric,
    pub y_min: f64,
    pub y_max: f64,
    #[serde(default)]
    pub title: Option<String>,
}

fn default_steps() -> usize {
    81
}

fn default_gamma_abs() -> f64 {
    0.5
}

fn default_s() -> f64 {
    1.0
}

fn default_delta() -> f64 {
    std::f64::consts::FRAC_PI_2
}

fn default_theta() -> f64 {
    std::f64::consts::FRAC_PI_4
}

fn default_cutoff() -> usize {
    DEFAULT_CUTOFF
}

/// Everything a sweep needs; reads naturally from a small TOML file.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepSpec {
    pub family: Family,
    pub variable: SweepVariable,
    pub start: f64,
    pub stop: f64,
    #[serde(default = "default_steps")]
    pub steps: usize,
    /// Fixed |gamma| when sweeping `s`.
    #[serde(default = "default_gamma_abs")]
    pub gamma_abs: f64,
    /// Fixed squeezing magnitude when sweeping |gamma|.
    #[serde(default = "default_s")]
    pub s: f64,
    /// Phase of the coherent amplitude, `gamma = |gamma| e^{i beta}`.
    #[serde(default)]
    pub beta: f64,
    /// Phase of the squeezing parameter, `xi = s e^{i phi}`.
    #[serde(default)]
    pub squeeze_phase: f64,
    /// Relative phase of the cat superposition.
    #[serde(default = "default_delta")]
    pub delta: f64,
    #[serde(default = "default_theta")]
    pub theta1: f64,
    #[serde(default = "default_theta")]
    pub theta2: f64,
    #[serde(default = "default_cutoff")]
    pub cutoff: usize,
    pub holes: Vec<HoleSpec>,
    #[serde(default)]
    pub plot: Option<PlotSpec>,
}

impl SweepSpec {
    pub fn validate(&self) -> Result<()> {
        if self.steps < 2 {
            return Err(Error::InvalidSpec("steps must be at least 2".into()));
        }
        if !(self.start < self.stop) {
            return Err(Error::InvalidSpec("range start must be below stop".into()));
        }
        if self.start < 0.0 {
            return Err(Error::InvalidSpec("sweep values are magnitudes; start must be >= 0".into()));
        }
        for (name, angle) in [("theta1", self.theta1), ("theta2", self.theta2)] {
            if !(angle > 0.0 && angle < std::f64::consts::FRAC_PI_2) {
                return Err(Error::InvalidSpec(format!("{name} must lie in (0, pi/2)")));
            }
        }
        if self.cutoff < 2 {
            return Err(Error::InvalidSpec("cutoff must be at least 2".into()));
        }
        if self.holes.is_empty() {
            return Err(Error::InvalidSpec("at least one hole selector is required".into()));
        }
        let mut seen = Vec::new();
        for h in &self.holes {
            if seen.contains(h) {
                return Err(Error::InvalidSpec(format!("duplicate hole selector `{h}`")));
            }
            seen.push(*h);
            if matches!(h, HoleSpec::Even | HoleSpec::Odd) && self.family != Family::Cat {
                return Err(Error::InvalidSpec(
                    "parity selectors only apply to the cat family".into(),
                ));
            }
        }
        if self.family == Family::Cat && self.variable == SweepVariable::S {
            return Err(Error::InvalidSpec("cat states have no squeezing parameter to sweep".into()));
        }
        Ok(())
    }

    /// The k-th sweep value on the uniform grid.
    pub fn value_at(&self, k: usize) -> f64 {
        self.start + (self.stop - self.start) * (k as f64) / ((self.steps - 1) as f64)
    }
}

/// Metric group for one state (the input or one filtered output); `None`
/// cells were undefined at this point and `flag` says why.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize, Default)]
pub struct MetricsCell {
    pub q: Option<f64>,
    pub var_x: Option<f64>,
    pub var_y: Option<f64>,
    pub mean_n: Option<f64>,
    pub flag: Option<String>,
}

/// One hole selector's results at one sweep point.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct HoleCell {
    pub hole: String,
    pub p: Option<f64>,
    #[serde(flatten)]
    pub metrics: MetricsCell,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SweepRow {
    pub value: f64,
    pub input: MetricsCell,
    pub holes: Vec<HoleCell>,
}

/// A fully evaluated sweep: the spec echo, the crate version that produced
/// it and the rows in sweep order.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SweepDataset {
    pub version: String,
    pub spec: SweepSpec,
    pub rows: Vec<SweepRow>,
}

pub(crate) fn error_code(e: &Error) -> &'static str {
    match e {
        Error::CutoffExceeded { .. } => "cutoff_exceeded",
        Error::CutoffTooSmall { .. } => "cutoff_too_small",
        Error::DimensionMismatch { .. } => "dimension_mismatch",
        Error::ZeroVector => "zero_vector",
        Error::NotNormalized { .. } => "not_normalized",
        Error::DegenerateSplitter { .. } => "degenerate_splitter",
        Error::InvalidAncilla { .. } => "invalid_ancilla",
        Error::ZeroProbability { .. } => "zero_probability",
        Error::OperatorFormUndefined(_) => "operator_form_undefined",
        Error::HoleUndefined { .. } => "hole_undefined",
        Error::ParityUndefined { .. } => "parity_undefined",
        Error::UndefinedForVacuum { .. } => "undefined_for_vacuum",
        Error::InvalidSpec(_) => "invalid_spec",
    }
}

/// Cached fixed operator so a sweep does not rebuild the expensive matrix
/// exponential at every point.
enum InputBuilder {
    Squeezed {
        fixed: std::result::Result<ModeOperatorMatrix, Error>,
        padded: usize,
    },
    Cat,
}

impl InputBuilder {
    fn new(spec: &SweepSpec) -> Self {
        match spec.family {
            Family::Cat => InputBuilder::Cat,
            Family::SqueezedCoherent => {
                let padded = 2 * spec.cutoff;
                let fixed = match spec.variable {
                    // gamma varies: cache the squeeze operator
                    SweepVariable::GammaAbs => {
                        squeeze_operator(Complex64::from_polar(spec.s, spec.squeeze_phase), padded)
                    }
                    // s varies: cache the displacement operator
                    SweepVariable::S => {
                        displacement_operator(Complex64::from_polar(spec.gamma_abs, spec.beta), padded)
                    }
                };
                InputBuilder::Squeezed { fixed, padded }
            }
        }
    }

    fn build(&self, spec: &SweepSpec, value: f64) -> Result<(Complex64, FockVector)> {
        let gamma_abs = match spec.variable {
            SweepVariable::GammaAbs => value,
            SweepVariable::S => spec.gamma_abs,
        };
        let gamma = Complex64::from_polar(gamma_abs, spec.beta);
        match self {
            InputBuilder::Cat => Ok((gamma, cat_state(gamma, spec.delta, spec.cutoff)?)),
            InputBuilder::Squeezed { fixed, padded } => {
                let fixed = fixed.as_ref().map_err(|e| e.clone())?;
                let state = match spec.variable {
                    SweepVariable::GammaAbs => {
                        let disp = displacement_operator(gamma, *padded)?;
                        squeezed_coherent_from_ops(&disp, fixed, spec.cutoff)?
                    }
                    SweepVariable::S => {
                        let xi = Complex64::from_polar(value, spec.squeeze_phase);
                        let squeeze = squeeze_operator(xi, *padded)?;
                        squeezed_coherent_from_ops(fixed, &squeeze, spec.cutoff)?
                    }
                };
                Ok((gamma, state))
            }
        }
    }
}

fn note_flag(cell: &mut MetricsCell, e: &Error) {
    if cell.flag.is_none() {
        cell.flag = Some(error_code(e).to_string());
    }
}

fn metrics_cell(state: &FockVector) -> MetricsCell {
    let mut cell = MetricsCell::default();
    match mandel_q(state) {
        Ok(q) => cell.q = Some(q),
        Err(e) => note_flag(&mut cell, &e),
    }
    match quadratures(state) {
        Ok(r) => {
            cell.var_x = Some(r.var_x);
            cell.var_y = Some(r.var_y);
        }
        Err(e) => note_flag(&mut cell, &e),
    }
    match mean_photon_number(state) {
        Ok(n) => cell.mean_n = Some(n),
        Err(e) => note_flag(&mut cell, &e),
    }
    cell
}

fn flagged_cell(e: &Error) -> MetricsCell {
    MetricsCell { flag: Some(error_code(e).to_string()), ..MetricsCell::default() }
}

fn hole_cell(spec: &SweepSpec, hole: &HoleSpec, gamma: Complex64, input: &FockVector) -> HoleCell {
    let alpha = match hole {
        HoleSpec::Fock(n) => alpha_for_hole(input, *n, spec.theta1, spec.theta2),
        HoleSpec::Even => alpha_for_parity(gamma, spec.delta, spec.theta1, spec.theta2, Parity::Even),
        HoleSpec::Odd => alpha_for_parity(gamma, spec.delta, spec.theta1, spec.theta2, Parity::Odd),
    };
    let result = alpha
        .and_then(|alpha| FilterConfig::with_coherent_ancilla(spec.theta1, spec.theta2, alpha))
        .and_then(|cfg| filtered_state(input, &cfg));
    match result {
        Ok(res) => {
            let metrics = match res.normalized() {
                Ok(out) => metrics_cell(&out),
                Err(e) => flagged_cell(&e),
            };
            HoleCell { hole: hole.label(), p: Some(res.probability()), metrics }
        }
        Err(e) => HoleCell { hole: hole.label(), p: None, metrics: flagged_cell(&e) },
    }
}

fn compute_row(spec: &SweepSpec, builder: &InputBuilder, k: usize) -> SweepRow {
    let value = spec.value_at(k);
    match builder.build(spec, value) {
        Ok((gamma, input)) => SweepRow {
            value,
            input: metrics_cell(&input),
            holes: spec
                .holes
                .iter()
                .map(|h| hole_cell(spec, h, gamma, &input))
                .collect(),
        },
        Err(e) => SweepRow {
            value,
            input: flagged_cell(&e),
            holes: spec
                .holes
                .iter()
                .map(|h| HoleCell { hole: h.label(), p: None, metrics: flagged_cell(&e) })
                .collect(),
        },
    }
}

/// Evaluates the sweep. Rows are independent and run in parallel; the
/// returned order is the grid order regardless of scheduling.
pub fn run_sweep(spec: &SweepSpec) -> Result<SweepDataset> {
    spec.validate()?;
    let builder = InputBuilder::new(spec);
    let rows: Vec<SweepRow> = (0..spec.steps)
        .into_par_iter()
        .map(|k| compute_row(spec, &builder, k))
        .collect();
    Ok(SweepDataset {
        version: env!("CARGO_PKG_VERSION").to_string(),
        spec: spec.clone(),
        rows,
    })
}

fn fmt_cell(v: Option<f64>) -> String {
    match v {
        Some(x) => format!("{x:.11e}"),
        None => String::new(),
    }
}

fn csv_quote(field: &str) -> String {
    if field.contains(',') || field.contains('"') || field.contains('\n') {
        format!("\"{}\"", field.replace('"', "\"\""))
    } else {
        field.to_string()
    }
}

/// Writes the dataset as CSV with a `#`-prefixed metadata header. Floats
/// carry 12 significant digits; undefined cells stay empty next to their
/// flag column.
pub fn write_csv<W: Write>(dataset: &SweepDataset, out: &mut W) -> std::io::Result<()> {
    let spec = &dataset.spec;
    writeln!(out, "# fock-filter sweep dataset")?;
    writeln!(out, "# version = {}", dataset.version)?;
    writeln!(out, "# family = {}", spec.family)?;
    writeln!(out, "# variable = {}", spec.variable)?;
    writeln!(out, "# start = {}", spec.start)?;
    writeln!(out, "# stop = {}", spec.stop)?;
    writeln!(out, "# steps = {}", spec.steps)?;
    writeln!(out, "# gamma_abs = {}", spec.gamma_abs)?;
    writeln!(out, "# s = {}", spec.s)?;
    writeln!(out, "# beta = {}", spec.beta)?;
    writeln!(out, "# squeeze_phase = {}", spec.squeeze_phase)?;
    writeln!(out, "# delta = {}", spec.delta)?;
    writeln!(out, "# theta1 = {}", spec.theta1)?;
    writeln!(out, "# theta2 = {}", spec.theta2)?;
    writeln!(out, "# cutoff = {}", spec.cutoff)?;
    let hole_labels: Vec<String> = spec.holes.iter().map(|h| h.label()).collect();
    writeln!(out, "# holes = {}", hole_labels.join(","))?;

    let mut header: Vec<String> = vec![
        "value".into(),
        "input_q".into(),
        "input_var_x".into(),
        "input_var_y".into(),
        "input_mean_n".into(),
        "input_flag".into(),
    ];
    for label in &hole_labels {
        for col in ["p", "q", "var_x", "var_y", "mean_n", "flag"] {
            header.push(format!("{label}_{col}"));
        }
    }
    writeln!(out, "{}", header.join(","))?;

    for row in &dataset.rows {
        let mut fields: Vec<String> = vec![
            format!("{:.11e}", row.value),
            fmt_cell(row.input.q),
            fmt_cell(row.input.var_x),
            fmt_cell(row.input.var_y),
            fmt_cell(row.input.mean_n),
            csv_quote(row.input.flag.as_deref().unwrap_or("")),
        ];
        for cell in &row.holes {
            fields.push(fmt_cell(cell.p));
            fields.push(fmt_cell(cell.metrics.q));
            fields.push(fmt_cell(cell.metrics.var_x));
            fields.push(fmt_cell(cell.metrics.var_y));
            fields.push(fmt_cell(cell.metrics.mean_n));
            fields.push(csv_quote(cell.metrics.flag.as_deref().unwrap_or("")));
        }
        writeln!(out, "{}", fields.join(","))?;
    }
    Ok(())
}

pub fn to_csv_string(dataset: &SweepDataset) -> String {
    let mut buf = Vec::new();
    write_csv(dataset, &mut buf).expect("writing to a Vec cannot fail");
    String::from_utf8(buf).expect("CSV output is valid UTF-8")
}

pub fn to_json_string(dataset: &SweepDataset) -> String {
    serde_json::to_string_pretty(dataset).expect("dataset serializes")
}
