//! Heralded Fock-state filtering ("hole burning") with linear optics.
//!
//! This crate simulates a single pass of light through two beam splitters
//! followed by photodetection: an arbitrary pure state enters port `a`, the
//! vacuum enters port `b`, an ancilla state enters port `c`, and the run is
//! kept when the detectors at ports `b` and `c` click with exactly 1 and 0
//! photons. Tuning the amplitude of a coherent ancilla removes a chosen
//! photon-number component from the surviving mode, which can sharpen
//! sub-Poissonian statistics or quadrature squeezing of the output.
//!
//! Two independent computations of the heralded state are provided and
//! cross-checked against each other:
//!
//! * [`filter`] — the closed-form collapsed state and generation
//!   probability, plus the hole-placement amplitudes,
//! * [`circuit`] — a brute-force three-mode simulation applying both
//!   beam-splitter unitaries blockwise and post-selecting on the detector
//!   outcome.
//!
//! Supporting modules: [`fock`] (truncated single-mode states and
//! operators), [`metrics`] (Mandel Q, quadrature variances, fidelity),
//! [`sweep`] (parameter sweeps producing CSV/JSON datasets and SVG charts)
//! and [`cli`] (the `fock-filter` command-line front end).
//!
//! # Where to start
//!
//! Each major capability has a runnable example:
//!
//! ```text
//! cargo run --release --example states            # state constructors + metrics
//! cargo run --release --example hole_burning      # remove the n-th Fock component
//! cargo run --release --example parity_filtering  # even/odd cat filtering
//! cargo run --release --example photon_subtraction # psi1 = 0 limit and the filter operator
//! cargo run --release --example three_mode_oracle # analytic vs brute-force unitary
//! cargo run --release --example figure_sweeps     # regenerate the shipped datasets
//! ```
//!
//! The same functionality is scriptable through the thin `fock-filter`
//! binary (`sweep`, `filter`, `oracle-check` subcommands).

pub mod circuit;
pub mod cli;
pub mod filter;
pub mod fock;
mod linalg;
pub mod metrics;
pub mod plot;
pub mod sweep;

pub use circuit::{apply_beam_splitter, postselect, run_oracle, tensor_input, BeamSplitter, Mode, ThreeModeState};
pub use filter::{
    alpha_for_hole, alpha_for_parity, filtered_state, hole_operator, lambda_param, FilterConfig,
    HeraldedResult, Parity,
};
pub use fock::{
    cat_state, coherent_state, displacement_operator, fock_state, squeeze_operator,
    squeezed_coherent_state, FockVector, ModeOperatorMatrix, DEFAULT_CUTOFF,
};
pub use metrics::{
    fidelity, mandel_q, mean_photon_number, photon_distribution, quadratures, QuadratureReport,
};

/// Errors shared by every module in the crate.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("photon number {n} is outside the truncated basis of size {cutoff}")]
    CutoffExceeded { n: usize, cutoff: usize },

    #[error("cutoff {cutoff} too small: tail mass {tail_mass:.3e} exceeds {limit:.1e}")]
    CutoffTooSmall { cutoff: usize, tail_mass: f64, limit: f64 },

    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },

    #[error("cannot normalize a (numerically) zero vector")]
    ZeroVector,

    #[error("state is not normalized: norm^2 = {norm_sqr}")]
    NotNormalized { norm_sqr: f64 },

    #[error("second splitter is degenerate (sin theta2 = {sin_theta2:.3e}); lambda undefined")]
    DegenerateSplitter { sin_theta2: f64 },

    #[error("ancilla amplitudes violate |psi0|^2 + |psi1|^2 <= 1 (got {weight})")]
    InvalidAncilla { weight: f64 },

    #[error("generation probability {probability:.3e} below threshold; heralding never succeeds")]
    ZeroProbability { probability: f64 },

    #[error("filter operator undefined: {0}")]
    OperatorFormUndefined(String),

    #[error("hole at n = {n} undefined: |phi_n| = {amplitude_abs:.3e} is (numerically) zero")]
    HoleUndefined { n: usize, amplitude_abs: f64 },

    #[error("parity amplitude undefined at delta = {delta}: denominator |1 -/+ e^(i delta)| vanishes")]
    ParityUndefined { delta: f64 },

    #[error("Mandel Q undefined: mean photon number {mean_photons:.3e} is (numerically) zero")]
    UndefinedForVacuum { mean_photons: f64 },

    #[error("invalid sweep specification: {0}")]
    InvalidSpec(String),
}

pub type Result<T> = std::result::Result<T, Error>;
