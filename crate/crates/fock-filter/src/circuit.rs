//! Brute-force three-mode reference simulation.
//!
//! The input `|phi>|0>|psi>` is stored as a dense rank-3 tensor over modes
//! (`a`, `b`, `c`); each beam splitter `exp[i theta (x^dag y + x y^dag)]`
//! is applied as an exact unitary, block by block in the total photon
//! number of the coupled pair (the generator restricted to the
//! `M`-photon sector is an `(M+1) x (M+1)` tridiagonal matrix). Detecting
//! `b_count` and `c_count` photons then collapses the tensor onto a
//! single-mode vector for port `a`.
//!
//! This path shares no code with the closed-form expressions in
//! [`crate::filter`]; agreement between the two is the central
//! cross-check of the crate.

use ndarray::Array3;
use num_complex::Complex64;

use crate::filter::HeraldedResult;
use crate::fock::FockVector;
use crate::linalg::{self, CMat};
use crate::{Error, Result};

fn c64(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// The three optical ports.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    A,
    B,
    C,
}

impl Mode {
    fn axis(self) -> usize {
        match self {
            Mode::A => 0,
            Mode::B => 1,
            Mode::C => 2,
        }
    }
}

/// Passive two-mode coupler with transmittance `cos(theta)` and
/// reflectance `i sin(theta)`; `theta = pi/4` is the 50:50 case.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BeamSplitter {
    theta: f64,
    modes: (Mode, Mode),
}

impl BeamSplitter {
    pub fn new(theta: f64, modes: (Mode, Mode)) -> Result<Self> {
        if modes.0 == modes.1 {
            return Err(Error::InvalidSpec("beam splitter must couple two distinct modes".into()));
        }
        Ok(Self { theta, modes })
    }

    pub fn theta(&self) -> f64 {
        self.theta
    }

    pub fn modes(&self) -> (Mode, Mode) {
        self.modes
    }

    pub fn transmittance(&self) -> f64 {
        self.theta.cos()
    }

    pub fn reflectance(&self) -> Complex64 {
        c64(0.0, self.theta.sin())
    }
}

/// Dense `N x N x N` amplitude tensor indexed by photon numbers
/// `(n_a, n_b, n_c)`.
#[derive(Clone, Debug, PartialEq)]
pub struct ThreeModeState {
    amplitudes: Array3<Complex64>,
}

impl ThreeModeState {
    pub fn cutoff(&self) -> usize {
        self.amplitudes.dim().0
    }

    pub fn amplitude(&self, n_a: usize, n_b: usize, n_c: usize) -> Complex64 {
        self.amplitudes[[n_a, n_b, n_c]]
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amplitudes.iter().map(|a| a.norm_sqr()).sum()
    }

    /// `sum (n_a + n_b + n_c) |amplitude|^2`, conserved by beam splitters.
    pub fn total_photon_expectation(&self) -> f64 {
        let mut total = 0.0;
        for ((i, j, k), a) in self.amplitudes.indexed_iter() {
            total += (i + j + k) as f64 * a.norm_sqr();
        }
        total
    }
}

/// `|phi>|0>|psi>` as a three-mode tensor with per-mode basis size `cutoff`.
pub fn tensor_input(phi: &FockVector, psi: &FockVector, cutoff: usize) -> Result<ThreeModeState> {
    if phi.cutoff() > cutoff {
        return Err(Error::DimensionMismatch { left: phi.cutoff(), right: cutoff });
    }
    if psi.cutoff() > cutoff {
        return Err(Error::DimensionMismatch { left: psi.cutoff(), right: cutoff });
    }
    if !phi.is_normalized() {
        return Err(Error::NotNormalized { norm_sqr: phi.norm_sqr() });
    }
    if !psi.is_normalized() {
        return Err(Error::NotNormalized { norm_sqr: psi.norm_sqr() });
    }
    let mut amplitudes = Array3::zeros((cutoff, cutoff, cutoff));
    for (i, pa) in phi.amplitudes().iter().enumerate() {
        if pa.norm_sqr() == 0.0 {
            continue;
        }
        for (n, pc) in psi.amplitudes().iter().enumerate() {
            amplitudes[[i, 0, n]] = pa * pc;
        }
    }
    Ok(ThreeModeState { amplitudes })
}

/// Unitary for one total-photon-number sector: `exp(i theta G_M)` with
/// `G_M[m, m+1] = G_M[m+1, m] = sqrt((m+1)(M-m))`, `m` counting photons in
/// the first mode of the pair.
fn sector_unitary(theta: f64, m_total: usize) -> CMat {
    let dim = m_total + 1;
    let mut gen = CMat::zeros((dim, dim));
    for m in 0..m_total {
        let g = (((m + 1) * (m_total - m)) as f64).sqrt();
        gen[[m, m + 1]] = c64(0.0, theta * g);
        gen[[m + 1, m]] = c64(0.0, theta * g);
    }
    linalg::expm(&gen)
}

/// Applies the beam splitter exactly on every populated sector. Sectors
/// whose photon number cannot be held by the truncated pair lose the
/// out-of-range part (the caller keeps inputs away from the boundary).
pub fn apply_beam_splitter(state: &ThreeModeState, bs: &BeamSplitter) -> ThreeModeState {
    let n = state.cutoff();
    let (x_axis, y_axis) = (bs.modes().0.axis(), bs.modes().1.axis());
    let spect_axis = 3 - x_axis - y_axis;
    let mut out = Array3::zeros((n, n, n));

    let index = |m_x: usize, m_y: usize, sp: usize| -> [usize; 3] {
        let mut idx = [0usize; 3];
        idx[x_axis] = m_x;
        idx[y_axis] = m_y;
        idx[spect_axis] = sp;
        idx
    };

    for m_total in 0..=(2 * (n - 1)) {
        let mut unitary: Option<CMat> = None;
        let lo = m_total.saturating_sub(n - 1);
        let hi = m_total.min(n - 1);
        for sp in 0..n {
            // gather the sector slice; skip untouched sectors cheaply
            let mut vin = vec![c64(0.0, 0.0); m_total + 1];
            let mut populated = false;
            for m in lo..=hi {
                let a = state.amplitudes[index(m, m_total - m, sp)];
                if a.norm_sqr() != 0.0 {
                    populated = true;
                }
                vin[m] = a;
            }
            if !populated {
                continue;
            }
            let u = unitary.get_or_insert_with(|| sector_unitary(bs.theta(), m_total));
            let vout = linalg::matvec(u, &vin);
            for m in lo..=hi {
                out[index(m, m_total - m, sp)] = vout[m];
            }
        }
    }
    ThreeModeState { amplitudes: out }
}

/// Projects onto `b_count`, `c_count` detector clicks; returns the
/// unnormalized mode-`a` vector and the outcome probability (which may be
/// zero — the caller decides what that means).
pub fn postselect(state: &ThreeModeState, b_count: usize, c_count: usize) -> Result<HeraldedResult> {
    let n = state.cutoff();
    if b_count >= n {
        return Err(Error::CutoffExceeded { n: b_count, cutoff: n });
    }
    if c_count >= n {
        return Err(Error::CutoffExceeded { n: c_count, cutoff: n });
    }
    let v: Vec<Complex64> = (0..n).map(|i| state.amplitudes[[i, b_count, c_count]]).collect();
    Ok(HeraldedResult::new(FockVector::from_amplitudes(v)?))
}

/// Full reference run: tensor the inputs, apply both splitters, detect
/// (1, 0). The tensor is sized so every populated sector fits, making both
/// unitaries exact.
pub fn run_oracle(
    phi: &FockVector,
    psi: &FockVector,
    theta1: f64,
    theta2: f64,
) -> Result<HeraldedResult> {
    let cutoff = (phi.cutoff() + psi.cutoff() - 1).max(2);
    let mut state = tensor_input(phi, psi, cutoff)?;
    state = apply_beam_splitter(&state, &BeamSplitter::new(theta1, (Mode::A, Mode::B))?);
    state = apply_beam_splitter(&state, &BeamSplitter::new(theta2, (Mode::C, Mode::B))?);
    postselect(&state, 1, 0)
}
