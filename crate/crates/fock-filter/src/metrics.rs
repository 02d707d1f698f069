//! Nonclassicality diagnostics: Mandel Q, quadrature means and variances,
//! photon statistics and state fidelity.
//!
//! Vacuum-level quadrature noise is 1/4 in the convention used here,
//! `X = (a + a^dag)/2`, `Y = (a - a^dag)/2i`, so squeezing means a variance
//! strictly below 1/4. Every function insists on a normalized input;
//! heralded results carry an unnormalized vector on purpose and must be
//! normalized by the caller first.

use crate::fock::{FockVector, ModeOperatorMatrix, NORM_TOL, TAIL_WINDOW};
use crate::{Error, Result};

/// States whose tail mass (top four basis states) exceeds this are rejected
/// by [`quadratures`]: their moments would silently carry truncation error
/// far above the advertised precision.
pub const QUADRATURE_TAIL_LIMIT: f64 = 1e-6;

/// Variances must undercut 1/4 by this much before a state is flagged
/// squeezed, so exact vacuum does not flip the flag.
pub const SQUEEZING_SLACK: f64 = 1e-12;

/// First and second quadrature moments of a single-mode state.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct QuadratureReport {
    pub mean_x: f64,
    pub mean_y: f64,
    pub var_x: f64,
    pub var_y: f64,
    pub squeezed_x: bool,
    pub squeezed_y: bool,
}

fn require_normalized(state: &FockVector) -> Result<()> {
    let n2 = state.norm_sqr();
    if (n2 - 1.0).abs() > NORM_TOL {
        return Err(Error::NotNormalized { norm_sqr: n2 });
    }
    Ok(())
}

/// Mandel Q parameter, `Var(n)/<n> - 1`; zero for Poissonian statistics,
/// -1 for Fock states, negative means sub-Poissonian light.
pub fn mandel_q(state: &FockVector) -> Result<f64> {
    require_normalized(state)?;
    let mut n1 = 0.0;
    let mut n2 = 0.0;
    for (n, a) in state.amplitudes().iter().enumerate() {
        let p = a.norm_sqr();
        n1 += n as f64 * p;
        n2 += (n as f64) * (n as f64) * p;
    }
    if n1 <= 1e-12 {
        return Err(Error::UndefinedForVacuum { mean_photons: n1 });
    }
    Ok((n2 - n1 * n1) / n1 - 1.0)
}

/// Quadrature moments evaluated through the truncated annihilation matrix.
pub fn quadratures(state: &FockVector) -> Result<QuadratureReport> {
    require_normalized(state)?;
    let tail = state.tail_mass(TAIL_WINDOW);
    if tail > QUADRATURE_TAIL_LIMIT {
        return Err(Error::CutoffTooSmall {
            cutoff: state.cutoff(),
            tail_mass: tail,
            limit: QUADRATURE_TAIL_LIMIT,
        });
    }
    let a = ModeOperatorMatrix::annihilation(state.cutoff());
    let av = a.apply(state)?;
    let aav = a.apply(&av)?;
    let ea = state.inner(&av)?;
    let ea2 = state.inner(&aav)?;
    let en = av.norm_sqr(); // <a^dag a>
    let mean_x = ea.re;
    let mean_y = ea.im;
    let var_x = (2.0 * ea2.re + 2.0 * en + 1.0) / 4.0 - mean_x * mean_x;
    let var_y = (-2.0 * ea2.re + 2.0 * en + 1.0) / 4.0 - mean_y * mean_y;
    Ok(QuadratureReport {
        mean_x,
        mean_y,
        var_x,
        var_y,
        squeezed_x: var_x < 0.25 - SQUEEZING_SLACK,
        squeezed_y: var_y < 0.25 - SQUEEZING_SLACK,
    })
}

/// `P(n) = |c_n|^2`.
pub fn photon_distribution(state: &FockVector) -> Result<Vec<f64>> {
    require_normalized(state)?;
    Ok(state.amplitudes().iter().map(|a| a.norm_sqr()).collect())
}

pub fn mean_photon_number(state: &FockVector) -> Result<f64> {
    require_normalized(state)?;
    Ok(state
        .amplitudes()
        .iter()
        .enumerate()
        .map(|(n, a)| n as f64 * a.norm_sqr())
        .sum())
}

/// `|<u|v>|^2`.
pub fn fidelity(u: &FockVector, v: &FockVector) -> Result<f64> {
    require_normalized(u)?;
    require_normalized(v)?;
    Ok(u.inner(v)?.norm_sqr())
}
