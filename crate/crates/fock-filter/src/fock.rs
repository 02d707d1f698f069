//! Truncated single-mode Fock space: state vectors, mode-operator matrices
//! and the standard constructors (Fock, coherent, squeezed coherent,
//! Schroedinger cat).
//!
//! Everything lives in the number basis `|0> .. |N-1>` of one optical mode.
//! The infinite-dimensional states are represented at a finite cutoff; each
//! constructor checks that the mass it had to drop is negligible and
//! reports [`Error::CutoffTooSmall`] otherwise. Squeezed coherent states
//! are built by matrix exponentials at a padded cutoff `2N` and then
//! truncated back to `N`, which keeps every retained amplitude accurate to
//! about `1e-10`.

use ndarray::Array2;
use num_complex::Complex64;

use crate::linalg::{self, CMat};
use crate::{Error, Result};

/// Default truncation dimension used by the sweep engine and the CLI.
pub const DEFAULT_CUTOFF: usize = 64;

/// A state is accepted as normalized when `|norm^2 - 1|` is below this.
pub const NORM_TOL: f64 = 1e-12;

/// Vectors with squared norm below this cannot be normalized.
pub const ZERO_NORM_TOL: f64 = 1e-14;

/// Maximum mass a constructor may silently drop outside its basis.
pub const TAIL_LIMIT: f64 = 1e-10;

/// Number of top basis states inspected by the tail-mass checks.
pub const TAIL_WINDOW: usize = 4;

fn c64(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// Complex amplitudes of a single mode over `|0> .. |N-1>`.
#[derive(Clone, Debug, PartialEq)]
pub struct FockVector {
    amplitudes: Vec<Complex64>,
}

impl FockVector {
    pub fn from_amplitudes(amplitudes: Vec<Complex64>) -> Result<Self> {
        if amplitudes.is_empty() {
            return Err(Error::InvalidSpec("a Fock vector needs a positive cutoff".into()));
        }
        Ok(Self { amplitudes })
    }

    pub fn zeros(cutoff: usize) -> Self {
        Self { amplitudes: vec![c64(0.0, 0.0); cutoff.max(1)] }
    }

    /// Basis size `N`.
    pub fn cutoff(&self) -> usize {
        self.amplitudes.len()
    }

    /// Amplitude on `|n>`; panics when `n` is outside the basis.
    pub fn amplitude(&self, n: usize) -> Complex64 {
        self.amplitudes[n]
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amplitudes.iter().map(|a| a.norm_sqr()).sum()
    }

    pub fn norm(&self) -> f64 {
        self.norm_sqr().sqrt()
    }

    pub fn is_normalized(&self) -> bool {
        (self.norm_sqr() - 1.0).abs() <= NORM_TOL
    }

    /// Hermitian inner product, conjugate-linear in `self`.
    pub fn inner(&self, other: &FockVector) -> Result<Complex64> {
        if self.cutoff() != other.cutoff() {
            return Err(Error::DimensionMismatch { left: self.cutoff(), right: other.cutoff() });
        }
        Ok(self
            .amplitudes
            .iter()
            .zip(&other.amplitudes)
            .map(|(a, b)| a.conj() * b)
            .sum())
    }

    pub fn normalize(&self) -> Result<FockVector> {
        let n = self.norm();
        if n < ZERO_NORM_TOL {
            return Err(Error::ZeroVector);
        }
        let inv = 1.0 / n;
        Ok(FockVector {
            amplitudes: self.amplitudes.iter().map(|a| a * inv).collect(),
        })
    }

    /// Mass on the top `k` basis states, `sum_{n >= N-k} |c_n|^2`.
    pub fn tail_mass(&self, k: usize) -> f64 {
        let start = self.cutoff().saturating_sub(k);
        self.amplitudes[start..].iter().map(|a| a.norm_sqr()).sum()
    }

    /// First `n` amplitudes as a new vector (no renormalization).
    pub fn truncated(&self, n: usize) -> FockVector {
        let n = n.clamp(1, self.cutoff());
        FockVector { amplitudes: self.amplitudes[..n].to_vec() }
    }

    /// Zero-extended copy with basis size at least `n`.
    pub fn padded(&self, n: usize) -> FockVector {
        let mut amplitudes = self.amplitudes.clone();
        amplitudes.resize(n.max(amplitudes.len()), c64(0.0, 0.0));
        FockVector { amplitudes }
    }

    pub fn scaled(&self, factor: Complex64) -> FockVector {
        FockVector { amplitudes: self.amplitudes.iter().map(|a| a * factor).collect() }
    }
}

/// Dense `N x N` operator on the truncated mode.
#[derive(Clone, Debug, PartialEq)]
pub struct ModeOperatorMatrix {
    entries: CMat,
}

impl ModeOperatorMatrix {
    pub(crate) fn from_matrix(entries: CMat) -> Self {
        Self { entries }
    }

    /// `<m| a |n> = sqrt(n) delta_{m,n-1}`.
    pub fn annihilation(cutoff: usize) -> Self {
        let mut m = CMat::zeros((cutoff, cutoff));
        for n in 1..cutoff {
            m[[n - 1, n]] = c64((n as f64).sqrt(), 0.0);
        }
        Self { entries: m }
    }

    pub fn creation(cutoff: usize) -> Self {
        Self::annihilation(cutoff).dagger()
    }

    pub fn number(cutoff: usize) -> Self {
        let mut m = CMat::zeros((cutoff, cutoff));
        for n in 0..cutoff {
            m[[n, n]] = c64(n as f64, 0.0);
        }
        Self { entries: m }
    }

    pub fn identity(cutoff: usize) -> Self {
        Self { entries: linalg::identity(cutoff) }
    }

    pub fn cutoff(&self) -> usize {
        self.entries.dim().0
    }

    pub fn entry(&self, row: usize, col: usize) -> Complex64 {
        self.entries[[row, col]]
    }

    pub fn matrix(&self) -> &Array2<Complex64> {
        &self.entries
    }

    pub fn dagger(&self) -> Self {
        let (n, m) = self.entries.dim();
        let mut out = CMat::zeros((m, n));
        for i in 0..n {
            for j in 0..m {
                out[[j, i]] = self.entries[[i, j]].conj();
            }
        }
        Self { entries: out }
    }

    pub fn mul(&self, other: &ModeOperatorMatrix) -> Result<Self> {
        if self.cutoff() != other.cutoff() {
            return Err(Error::DimensionMismatch { left: self.cutoff(), right: other.cutoff() });
        }
        Ok(Self { entries: linalg::matmul(&self.entries, &other.entries) })
    }

    pub fn apply(&self, v: &FockVector) -> Result<FockVector> {
        if self.cutoff() != v.cutoff() {
            return Err(Error::DimensionMismatch { left: self.cutoff(), right: v.cutoff() });
        }
        FockVector::from_amplitudes(linalg::matvec(&self.entries, v.amplitudes()))
    }

    /// Column `col` as a state vector.
    pub fn column(&self, col: usize) -> FockVector {
        FockVector {
            amplitudes: (0..self.cutoff()).map(|r| self.entries[[r, col]]).collect(),
        }
    }
}

/// Basis ket `|n>`.
pub fn fock_state(n: usize, cutoff: usize) -> Result<FockVector> {
    if n >= cutoff {
        return Err(Error::CutoffExceeded { n, cutoff });
    }
    let mut v = vec![c64(0.0, 0.0); cutoff];
    v[n] = c64(1.0, 0.0);
    FockVector::from_amplitudes(v)
}

/// Coherent state `|alpha>` with `c_n = e^{-|alpha|^2/2} alpha^n / sqrt(n!)`.
///
/// The dropped mass (everything from `N - 4` upward, including the part
/// beyond the basis) must stay below [`TAIL_LIMIT`]; a good rule of thumb
/// is `N >= |alpha|^2 + 8|alpha| + 10`.
pub fn coherent_state(alpha: Complex64, cutoff: usize) -> Result<FockVector> {
    if cutoff == 0 {
        return Err(Error::InvalidSpec("a Fock vector needs a positive cutoff".into()));
    }
    let mut amps = vec![c64(0.0, 0.0); cutoff];
    amps[0] = c64((-alpha.norm_sqr() / 2.0).exp(), 0.0);
    for n in 1..cutoff {
        amps[n] = amps[n - 1] * alpha / c64((n as f64).sqrt(), 0.0);
    }
    // The exact state is normalized, so the mass at and beyond the tail
    // window is one minus the head mass.
    let head: f64 = amps[..cutoff.saturating_sub(TAIL_WINDOW)]
        .iter()
        .map(|a| a.norm_sqr())
        .sum();
    let tail = (1.0 - head).max(0.0);
    if tail > TAIL_LIMIT {
        return Err(Error::CutoffTooSmall { cutoff, tail_mass: tail, limit: TAIL_LIMIT });
    }
    FockVector::from_amplitudes(amps)?.normalize()
}

/// Displacement operator `D(gamma) = exp(gamma a^dag - gamma^* a)` on the
/// truncated space. Unitary up to truncation error in the low-photon block.
pub fn displacement_operator(gamma: Complex64, cutoff: usize) -> Result<ModeOperatorMatrix> {
    if cutoff < 2 {
        return Err(Error::CutoffTooSmall { cutoff, tail_mass: f64::NAN, limit: TAIL_LIMIT });
    }
    if gamma == c64(0.0, 0.0) {
        return Ok(ModeOperatorMatrix::identity(cutoff));
    }
    let a = ModeOperatorMatrix::annihilation(cutoff);
    let gen = a.dagger().matrix() * gamma - a.matrix() * gamma.conj();
    Ok(ModeOperatorMatrix::from_matrix(linalg::expm(&gen)))
}

/// Squeezing operator `S(xi) = exp[(xi^* a^2 - xi a^dag^2)/2]` with
/// `xi = s e^{i phi}`.
///
/// Fails with [`Error::CutoffTooSmall`] when `S|0>` still has weight in the
/// top of the basis; squeezed-vacuum tails decay slowly (like
/// `tanh(s)^n / sqrt(n)`), so large `s` needs a generous cutoff.
pub fn squeeze_operator(xi: Complex64, cutoff: usize) -> Result<ModeOperatorMatrix> {
    if cutoff < 2 {
        return Err(Error::CutoffTooSmall { cutoff, tail_mass: f64::NAN, limit: TAIL_LIMIT });
    }
    if xi == c64(0.0, 0.0) {
        return Ok(ModeOperatorMatrix::identity(cutoff));
    }
    let a = ModeOperatorMatrix::annihilation(cutoff);
    let a2 = a.mul(&a)?;
    let ad2 = a2.dagger();
    let half = c64(0.5, 0.0);
    let gen = a2.matrix() * (xi.conj() * half) - ad2.matrix() * (xi * half);
    let op = ModeOperatorMatrix::from_matrix(linalg::expm(&gen));
    let tail = op.column(0).tail_mass(TAIL_WINDOW);
    if tail > TAIL_LIMIT {
        return Err(Error::CutoffTooSmall { cutoff, tail_mass: tail, limit: TAIL_LIMIT });
    }
    Ok(op)
}

/// Squeezed coherent state `D(gamma) S(xi) |0>`, built at padded cutoff
/// `2 N` and truncated back to `N`.
pub fn squeezed_coherent_state(gamma: Complex64, xi: Complex64, cutoff: usize) -> Result<FockVector> {
    let padded = 2 * cutoff.max(1);
    let squeeze = squeeze_operator(xi, padded)?;
    let disp = displacement_operator(gamma, padded)?;
    squeezed_coherent_from_ops(&disp, &squeeze, cutoff)
}

/// Same as [`squeezed_coherent_state`] but reusing prebuilt padded
/// operators, so a parameter sweep can cache the fixed one.
pub fn squeezed_coherent_from_ops(
    disp: &ModeOperatorMatrix,
    squeeze: &ModeOperatorMatrix,
    cutoff: usize,
) -> Result<FockVector> {
    if disp.cutoff() != squeeze.cutoff() {
        return Err(Error::DimensionMismatch { left: disp.cutoff(), right: squeeze.cutoff() });
    }
    let padded = disp.cutoff();
    if cutoff == 0 || cutoff > padded {
        return Err(Error::DimensionMismatch { left: cutoff, right: padded });
    }
    let v = disp.apply(&squeeze.column(0))?;
    let tail = v.tail_mass(TAIL_WINDOW);
    if tail > TAIL_LIMIT {
        return Err(Error::CutoffTooSmall { cutoff: padded, tail_mass: tail, limit: TAIL_LIMIT });
    }
    v.truncated(cutoff).normalize()
}

/// Cat state `C (|gamma> + e^{i delta} |-gamma>)`;
/// `|C|^2 = 1 / (2 + 2 cos(delta) e^{-2|gamma|^2})`.
pub fn cat_state(gamma: Complex64, delta: f64, cutoff: usize) -> Result<FockVector> {
    if cutoff == 0 {
        return Err(Error::InvalidSpec("a Fock vector needs a positive cutoff".into()));
    }
    let norm_c = 1.0 / (2.0 + 2.0 * delta.cos() * (-2.0 * gamma.norm_sqr()).exp()).sqrt();
    let phase = c64(delta.cos(), delta.sin());
    let mut amps = vec![c64(0.0, 0.0); cutoff];
    // c_n = C (1 + e^{i delta} (-1)^n) e^{-|gamma|^2/2} gamma^n / sqrt(n!)
    let mut base = c64((-gamma.norm_sqr() / 2.0).exp(), 0.0);
    for n in 0..cutoff {
        if n > 0 {
            base = base * gamma / c64((n as f64).sqrt(), 0.0);
        }
        let parity = if n % 2 == 0 { c64(1.0, 0.0) + phase } else { c64(1.0, 0.0) - phase };
        amps[n] = base * parity * norm_c;
    }
    let head: f64 = amps[..cutoff.saturating_sub(TAIL_WINDOW)]
        .iter()
        .map(|a| a.norm_sqr())
        .sum();
    let tail = (1.0 - head).max(0.0);
    if tail > TAIL_LIMIT {
        return Err(Error::CutoffTooSmall { cutoff, tail_mass: tail, limit: TAIL_LIMIT });
    }
    FockVector::from_amplitudes(amps)?.normalize()
}
