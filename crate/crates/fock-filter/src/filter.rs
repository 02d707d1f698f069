//! Closed-form description of the heralded filter: the collapsed state in
//! port `a` after detecting (1, 0) photons in ports (`b`, `c`), its
//! generation probability, the equivalent single-mode operator, and the
//! coherent-ancilla amplitudes that burn a chosen hole.
//!
//! Conventions: transmittance `T_j = cos(theta_j)`, reflectance
//! `R_j = i sin(theta_j)`, and the configuration constant
//! `Lambda = R1^* T2^* / R2^* = sin(theta1) cos(theta2) / sin(theta2)`.
//!
//! The collapsed coefficients are
//!
//! ```text
//! h_i = T1^i ( phi_i psi_1 R2  +  sqrt(i+1) phi_{i+1} psi_0 R1 T2 )
//! ```
//!
//! which is exactly what the sequential beam-splitter unitaries of
//! [`crate::circuit`] produce, including the overall phase; the probability
//! of the herald is `p = sum |h_i|^2`. Only the first two ancilla
//! amplitudes `psi_0`, `psi_1` enter, a fact the three-mode simulation
//! confirms empirically.

use num_complex::Complex64;

use crate::fock::{FockVector, ModeOperatorMatrix};
use crate::linalg::CMat;
use crate::{Error, Result};

/// Heralds with probability below this are treated as never firing; a
/// coherent input driven to its hole amplitude lands here by design.
pub const ZERO_PROBABILITY_TOL: f64 = 1e-14;

const DEGENERATE_SIN: f64 = 1e-12;

fn c64(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// `Lambda = R1^* T2^* / R2^*`; real and equal to
/// `sin(theta1) cos(theta2) / sin(theta2)` for real angles.
pub fn lambda_param(theta1: f64, theta2: f64) -> Result<Complex64> {
    let s2 = theta2.sin();
    if s2.abs() <= DEGENERATE_SIN {
        return Err(Error::DegenerateSplitter { sin_theta2: s2 });
    }
    let r1c = c64(0.0, -theta1.sin());
    let t2c = c64(theta2.cos(), 0.0);
    let r2c = c64(0.0, -s2);
    Ok(r1c * t2c / r2c)
}

/// Angles plus the first two ancilla amplitudes: everything the collapsed
/// state depends on.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct FilterConfig {
    theta1: f64,
    theta2: f64,
    psi0: Complex64,
    psi1: Complex64,
    lambda: Complex64,
}

impl FilterConfig {
    pub fn new(theta1: f64, theta2: f64, psi0: Complex64, psi1: Complex64) -> Result<Self> {
        let lambda = lambda_param(theta1, theta2)?;
        let weight = psi0.norm_sqr() + psi1.norm_sqr();
        if weight > 1.0 + 1e-12 {
            return Err(Error::InvalidAncilla { weight });
        }
        Ok(Self { theta1, theta2, psi0, psi1, lambda })
    }

    /// Ancilla prepared in the coherent state `|alpha>`, so
    /// `psi_0 = e^{-|alpha|^2/2}` and `psi_1 = alpha psi_0`.
    pub fn with_coherent_ancilla(theta1: f64, theta2: f64, alpha: Complex64) -> Result<Self> {
        let psi0 = c64((-alpha.norm_sqr() / 2.0).exp(), 0.0);
        Self::new(theta1, theta2, psi0, alpha * psi0)
    }

    /// Reads `psi_0`, `psi_1` off a full ancilla vector; the rest of the
    /// vector provably never reaches the heralded output.
    pub fn from_ancilla_vector(theta1: f64, theta2: f64, psi: &FockVector) -> Result<Self> {
        if psi.cutoff() < 2 {
            return Err(Error::DimensionMismatch { left: psi.cutoff(), right: 2 });
        }
        Self::new(theta1, theta2, psi.amplitude(0), psi.amplitude(1))
    }

    pub fn theta1(&self) -> f64 {
        self.theta1
    }

    pub fn theta2(&self) -> f64 {
        self.theta2
    }

    pub fn psi0(&self) -> Complex64 {
        self.psi0
    }

    pub fn psi1(&self) -> Complex64 {
        self.psi1
    }

    pub fn lambda(&self) -> Complex64 {
        self.lambda
    }

    pub fn transmittance1(&self) -> f64 {
        self.theta1.cos()
    }

    pub fn transmittance2(&self) -> f64 {
        self.theta2.cos()
    }

    pub fn reflectance1(&self) -> Complex64 {
        c64(0.0, self.theta1.sin())
    }

    pub fn reflectance2(&self) -> Complex64 {
        c64(0.0, self.theta2.sin())
    }

    /// `psi_0 R1 T2`, the factor linking the collapsed state to the action
    /// of [`hole_operator`] on the input.
    pub fn herald_constant(&self) -> Complex64 {
        self.psi0 * self.reflectance1() * c64(self.transmittance2(), 0.0)
    }
}

/// Unnormalized collapsed vector plus the probability of the herald.
#[derive(Clone, Debug, PartialEq)]
pub struct HeraldedResult {
    collapsed: FockVector,
    probability: f64,
}

impl HeraldedResult {
    pub(crate) fn new(collapsed: FockVector) -> Self {
        let probability = collapsed.norm_sqr();
        Self { collapsed, probability }
    }

    /// The raw collapsed vector; its squared norm is the probability.
    pub fn collapsed(&self) -> &FockVector {
        &self.collapsed
    }

    pub fn probability(&self) -> f64 {
        self.probability
    }

    /// Unit-norm output state.
    pub fn normalized(&self) -> Result<FockVector> {
        self.collapsed.normalize()
    }
}

/// Collapsed state and probability for input `phi`; the output keeps
/// `phi`'s cutoff with `phi_N := 0` feeding the top coefficient.
pub fn filtered_state(phi: &FockVector, config: &FilterConfig) -> Result<HeraldedResult> {
    if !phi.is_normalized() {
        return Err(Error::NotNormalized { norm_sqr: phi.norm_sqr() });
    }
    let n = phi.cutoff();
    let t1 = c64(config.transmittance1(), 0.0);
    let r2 = config.reflectance2();
    let r1t2 = config.reflectance1() * c64(config.transmittance2(), 0.0);
    let mut h = vec![c64(0.0, 0.0); n];
    let mut t1_pow = c64(1.0, 0.0);
    for i in 0..n {
        let next = if i + 1 < n { phi.amplitude(i + 1) } else { c64(0.0, 0.0) };
        h[i] = t1_pow
            * (phi.amplitude(i) * config.psi1() * r2
                + c64(((i + 1) as f64).sqrt(), 0.0) * next * config.psi0() * r1t2);
        t1_pow *= t1;
    }
    let result = HeraldedResult::new(FockVector::from_amplitudes(h)?);
    if result.probability() < ZERO_PROBABILITY_TOL {
        return Err(Error::ZeroProbability { probability: result.probability() });
    }
    Ok(result)
}

/// The filter as a single-mode operator, `T1^n (a + (psi1/(psi0 Lambda)) I)`:
/// a coherent superposition of one-photon subtraction with noiseless
/// attenuation. The collapsed vector equals `herald_constant()` times this
/// operator applied to the input.
pub fn hole_operator(config: &FilterConfig, cutoff: usize) -> Result<ModeOperatorMatrix> {
    if config.psi0().norm() <= ZERO_PROBABILITY_TOL.sqrt() {
        return Err(Error::OperatorFormUndefined(
            "psi0 = 0 (pure heralded photon subtraction has no a + cI form; use filtered_state)"
                .into(),
        ));
    }
    let c = if config.psi1() == c64(0.0, 0.0) {
        c64(0.0, 0.0)
    } else {
        if config.lambda().norm() <= DEGENERATE_SIN {
            return Err(Error::OperatorFormUndefined(
                "lambda = 0 with psi1 != 0 makes the additive constant infinite".into(),
            ));
        }
        config.psi1() / (config.psi0() * config.lambda())
    };
    let t1 = config.transmittance1();
    let mut m = CMat::zeros((cutoff, cutoff));
    let mut t1_pow = 1.0;
    for row in 0..cutoff {
        m[[row, row]] = c * t1_pow;
        if row + 1 < cutoff {
            m[[row, row + 1]] = c64(t1_pow * ((row + 1) as f64).sqrt(), 0.0);
        }
        t1_pow *= t1;
    }
    Ok(ModeOperatorMatrix::from_matrix(m))
}

/// Coherent-ancilla amplitude that removes the `n`-th Fock component of
/// `phi`: `alpha^(n) = -Lambda sqrt(n+1) phi_{n+1} / phi_n`.
pub fn alpha_for_hole(phi: &FockVector, n: usize, theta1: f64, theta2: f64) -> Result<Complex64> {
    if n + 1 >= phi.cutoff() {
        return Err(Error::CutoffExceeded { n: n + 1, cutoff: phi.cutoff() });
    }
    let lambda = lambda_param(theta1, theta2)?;
    let phi_n = phi.amplitude(n);
    if phi_n.norm() <= 1e-12 {
        return Err(Error::HoleUndefined { n, amplitude_abs: phi_n.norm() });
    }
    Ok(-lambda * c64(((n + 1) as f64).sqrt(), 0.0) * phi.amplitude(n + 1) / phi_n)
}

/// Which photon-number parity class survives the filter.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Parity {
    /// Keep even components, remove all odd ones.
    Even,
    /// Keep odd components, remove all even ones.
    Odd,
}

/// Coherent-ancilla amplitude that removes one whole parity class of the
/// cat state `C (|gamma> + e^{i delta} |-gamma>)`:
///
/// ```text
/// alpha^(even) = -gamma Lambda (1 + e^{i delta}) / (1 - e^{i delta})
/// alpha^(odd)  = -gamma Lambda (1 - e^{i delta}) / (1 + e^{i delta})
/// ```
///
/// "even" labels the surviving class. `delta = 0` leaves no odd components
/// to remove (even formula degenerate); `delta = pi` the reverse.
pub fn alpha_for_parity(
    gamma: Complex64,
    delta: f64,
    theta1: f64,
    theta2: f64,
    parity: Parity,
) -> Result<Complex64> {
    let lambda = lambda_param(theta1, theta2)?;
    let e = c64(delta.cos(), delta.sin());
    let one = c64(1.0, 0.0);
    let (num, den) = match parity {
        Parity::Even => (one + e, one - e),
        Parity::Odd => (one - e, one + e),
    };
    if den.norm() <= 1e-12 {
        return Err(Error::ParityUndefined { delta });
    }
    Ok(-gamma * lambda * num / den)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fock::{cat_state, coherent_state, fock_state, squeezed_coherent_state};
    use crate::metrics::fidelity;
    use approx::assert_abs_diff_eq;
    use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, PI};

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn lambda_fifty_fifty() {
        let l = lambda_param(FRAC_PI_4, FRAC_PI_4).unwrap();
        assert_abs_diff_eq!(l.re, 1.0 / 2f64.sqrt(), epsilon = 1e-12);
        assert_abs_diff_eq!(l.im, 0.0, epsilon = 1e-15);
    }

    #[test]
    fn lambda_vanishes_with_transmittance2() {
        let l = lambda_param(FRAC_PI_4, FRAC_PI_2).unwrap();
        assert!(l.norm() <= 1e-12);
    }

    #[test]
    fn lambda_degenerate_second_splitter() {
        assert!(matches!(lambda_param(FRAC_PI_4, 0.0), Err(Error::DegenerateSplitter { .. })));
    }

    #[test]
    fn ancilla_weight_is_validated() {
        let err = FilterConfig::new(FRAC_PI_4, FRAC_PI_4, c(0.9, 0.0), c(0.9, 0.0));
        assert!(matches!(err, Err(Error::InvalidAncilla { .. })));
    }

    #[test]
    fn single_photon_input_quarter_probability() {
        // phi = |1>, psi = |0>, 50:50: collapsed on |0> with p = 1/4.
        let phi = fock_state(1, 8).unwrap();
        let cfg = FilterConfig::new(FRAC_PI_4, FRAC_PI_4, c(1.0, 0.0), c(0.0, 0.0)).unwrap();
        let res = filtered_state(&phi, &cfg).unwrap();
        assert_abs_diff_eq!(res.probability(), 0.25, epsilon = 1e-15);
        // h_0 = R1 T2 = i/2 in the evolution phase convention
        assert_abs_diff_eq!(res.collapsed().amplitude(0).im, 0.5, epsilon = 1e-15);
        for n in 1..8 {
            assert_eq!(res.collapsed().amplitude(n), c(0.0, 0.0));
        }
    }

    #[test]
    fn probability_equals_collapsed_norm() {
        let phi = squeezed_coherent_state(c(0.4, 0.1), c(0.7, 0.3), 64).unwrap();
        let cfg = FilterConfig::with_coherent_ancilla(0.6, 0.9, c(0.4, -0.2)).unwrap();
        let res = filtered_state(&phi, &cfg).unwrap();
        assert_abs_diff_eq!(res.probability(), res.collapsed().norm_sqr(), epsilon = 1e-14);
    }

    #[test]
    fn hole_amplitude_zeroes_component() {
        let phi = squeezed_coherent_state(c(0.5, 0.0), c(1.0, 0.0), 64).unwrap();
        let alpha = alpha_for_hole(&phi, 0, FRAC_PI_4, FRAC_PI_4).unwrap();
        let cfg = FilterConfig::with_coherent_ancilla(FRAC_PI_4, FRAC_PI_4, alpha).unwrap();
        let res = filtered_state(&phi, &cfg).unwrap();
        assert!(res.collapsed().amplitude(0).norm() <= 1e-12);
    }

    #[test]
    fn coherent_input_passes_through_as_attenuated_coherent() {
        // For coherent input the filter acts trivially: the normalized
        // output is |T1 gamma> whenever the herald fires at all.
        let g = c(1.0, 0.0);
        let phi = coherent_state(g, 64).unwrap();
        let cfg = FilterConfig::with_coherent_ancilla(FRAC_PI_4, FRAC_PI_4, c(0.3, 0.2)).unwrap();
        let out = filtered_state(&phi, &cfg).unwrap().normalized().unwrap();
        let want = coherent_state(g * FRAC_PI_4.cos(), 64).unwrap();
        let f = fidelity(&out, &want).unwrap();
        assert!((f - 1.0).abs() <= 1e-9, "fidelity {f}");
    }

    #[test]
    fn coherent_input_at_hole_amplitude_kills_the_herald() {
        let g = c(1.0, 0.0);
        let phi = coherent_state(g, 64).unwrap();
        let alpha = alpha_for_hole(&phi, 0, FRAC_PI_4, FRAC_PI_4).unwrap();
        let cfg = FilterConfig::with_coherent_ancilla(FRAC_PI_4, FRAC_PI_4, alpha).unwrap();
        assert!(matches!(filtered_state(&phi, &cfg), Err(Error::ZeroProbability { .. })));
    }

    #[test]
    fn hole_amplitude_for_coherent_is_minus_lambda_gamma_for_every_n() {
        let g = c(0.8, -0.5);
        let phi = coherent_state(g, 64).unwrap();
        let lambda = lambda_param(0.7, 1.1).unwrap();
        for n in 0..5 {
            let a = alpha_for_hole(&phi, n, 0.7, 1.1).unwrap();
            assert!((a - (-lambda * g)).norm() <= 1e-10, "n = {n}");
        }
    }

    #[test]
    fn hole_on_absent_component_is_undefined() {
        let odd_cat = cat_state(c(1.0, 0.0), PI, 48).unwrap();
        assert!(matches!(
            alpha_for_hole(&odd_cat, 2, FRAC_PI_4, FRAC_PI_4),
            Err(Error::HoleUndefined { n: 2, .. })
        ));
    }

    #[test]
    fn hole_needs_a_successor_inside_the_basis() {
        let phi = coherent_state(c(0.5, 0.0), 16).unwrap();
        assert!(matches!(
            alpha_for_hole(&phi, 15, FRAC_PI_4, FRAC_PI_4),
            Err(Error::CutoffExceeded { n: 16, cutoff: 16 })
        ));
    }

    #[test]
    fn squeezed_vacuum_hole_zero_needs_no_ancilla() {
        let sv = squeezed_coherent_state(c(0.0, 0.0), c(1.0, 0.0), 128).unwrap();
        let a = alpha_for_hole(&sv, 0, FRAC_PI_4, FRAC_PI_4).unwrap();
        assert!(a.norm() <= 1e-13);
    }

    #[test]
    fn operator_matches_filter_up_to_herald_constant() {
        let phi = squeezed_coherent_state(c(0.3, 0.2), c(0.8, -0.1), 64).unwrap();
        let cfg = FilterConfig::with_coherent_ancilla(0.5, 0.8, c(0.25, 0.4)).unwrap();
        let res = filtered_state(&phi, &cfg).unwrap();
        let op = hole_operator(&cfg, 64).unwrap();
        let via_op = op.apply(&phi).unwrap().scaled(cfg.herald_constant());
        for n in 0..64 {
            assert!(
                (res.collapsed().amplitude(n) - via_op.amplitude(n)).norm() <= 1e-10,
                "component {n}"
            );
        }
    }

    #[test]
    fn pure_subtraction_operator_form() {
        // psi1 = 0 reduces the operator to T1^n a.
        let cfg = FilterConfig::new(0.4, FRAC_PI_4, c(1.0, 0.0), c(0.0, 0.0)).unwrap();
        let op = hole_operator(&cfg, 6).unwrap();
        let t1 = 0.4f64.cos();
        for row in 0..6 {
            for col in 0..6 {
                let want = if col == row + 1 {
                    c(t1.powi(row as i32) * ((row + 1) as f64).sqrt(), 0.0)
                } else {
                    c(0.0, 0.0)
                };
                assert!((op.entry(row, col) - want).norm() <= 1e-14);
            }
        }
    }

    #[test]
    fn subtraction_with_open_first_splitter_is_plain_annihilation() {
        // theta1 = 0 (T1 = 1) and psi1 = 0: the operator is exactly `a`.
        let cfg = FilterConfig::new(0.0, FRAC_PI_4, c(1.0, 0.0), c(0.0, 0.0)).unwrap();
        let op = hole_operator(&cfg, 8).unwrap();
        assert_eq!(op, ModeOperatorMatrix::annihilation(8));
    }

    #[test]
    fn operator_undefined_without_vacuum_ancilla_weight() {
        let cfg = FilterConfig::new(FRAC_PI_4, FRAC_PI_4, c(0.0, 0.0), c(1.0, 0.0)).unwrap();
        assert!(matches!(hole_operator(&cfg, 8), Err(Error::OperatorFormUndefined(_))));
    }

    #[test]
    fn parity_amplitudes_for_yurke_stoler() {
        // delta = pi/2, 50:50: alpha^(even) = -i gamma / sqrt(2),
        // alpha^(odd) = +i gamma / sqrt(2).
        let g = c(1.0, 0.0);
        let even = alpha_for_parity(g, FRAC_PI_2, FRAC_PI_4, FRAC_PI_4, Parity::Even).unwrap();
        let odd = alpha_for_parity(g, FRAC_PI_2, FRAC_PI_4, FRAC_PI_4, Parity::Odd).unwrap();
        let want = c(0.0, 1.0 / 2f64.sqrt());
        assert!((even + want).norm() <= 1e-12, "even: {even}");
        assert!((odd - want).norm() <= 1e-12, "odd: {odd}");
    }

    #[test]
    fn parity_degenerate_phases() {
        let g = c(1.0, 0.0);
        assert!(matches!(
            alpha_for_parity(g, 0.0, FRAC_PI_4, FRAC_PI_4, Parity::Even),
            Err(Error::ParityUndefined { .. })
        ));
        assert!(matches!(
            alpha_for_parity(g, PI, FRAC_PI_4, FRAC_PI_4, Parity::Odd),
            Err(Error::ParityUndefined { .. })
        ));
    }

    #[test]
    fn parity_filter_scrubs_the_other_class() {
        let g = c(1.0, 0.0);
        let phi = cat_state(g, FRAC_PI_2, 64).unwrap();
        let alpha = alpha_for_parity(g, FRAC_PI_2, FRAC_PI_4, FRAC_PI_4, Parity::Odd).unwrap();
        let cfg = FilterConfig::with_coherent_ancilla(FRAC_PI_4, FRAC_PI_4, alpha).unwrap();
        let out = filtered_state(&phi, &cfg).unwrap().normalized().unwrap();
        for n in (0..64).step_by(2) {
            assert!(out.amplitude(n).norm() <= 1e-12, "even component {n} survived");
        }
    }

    #[test]
    fn ancilla_vector_and_bare_pair_agree() {
        let phi = squeezed_coherent_state(c(0.4, 0.0), c(0.9, 0.0), 64).unwrap();
        let alpha = c(0.37, -0.21);
        let psi = coherent_state(alpha, 32).unwrap();
        let via_vec = FilterConfig::from_ancilla_vector(0.8, 0.6, &psi).unwrap();
        let via_pair = FilterConfig::with_coherent_ancilla(0.8, 0.6, alpha).unwrap();
        let a = filtered_state(&phi, &via_vec).unwrap();
        let b = filtered_state(&phi, &via_pair).unwrap();
        for n in 0..64 {
            assert!((a.collapsed().amplitude(n) - b.collapsed().amplitude(n)).norm() <= 1e-12);
        }
    }
}
