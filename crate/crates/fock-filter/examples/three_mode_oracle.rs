//! Cross-check the closed-form filter against the brute-force three-mode
//! simulation.
//!
//! The oracle tensors |phi>|0>|psi>, applies both beam-splitter unitaries
//! exactly (blockwise per total photon number) and projects the detectors
//! onto (1, 0). It shares no code with the closed-form route, so
//! agreement at the 1e-15 level pins down every sign and phase convention.
//!
//! ```bash
//! cargo run --release --example three_mode_oracle
//! ```

use num_complex::Complex64;

use fock_filter::cli::oracle_check_report;
use fock_filter::{coherent_state, filtered_state, run_oracle, FilterConfig, fock_state};

fn main() {
    // a hand-checkable case: phi = |1>, vacuum ancilla, 50:50 splitters.
    // One photon enters port a; heralding (1, 0) leaves the vacuum in
    // port a with probability |R1 T2|^2 = 1/4.
    let theta = std::f64::consts::FRAC_PI_4;
    let phi = fock_state(1, 4).unwrap();
    let psi = fock_state(0, 2).unwrap();
    let oracle = run_oracle(&phi, &psi, theta, theta).unwrap();
    println!("single-photon input, vacuum ancilla, 50:50:");
    println!("   oracle p = {:.12} (analytic 1/4)", oracle.probability());
    println!(
        "   collapsed amplitude on |0>: {:+.4}{:+.4}i",
        oracle.collapsed().amplitude(0).re,
        oracle.collapsed().amplitude(0).im
    );

    // the same case through the closed form
    let cfg = FilterConfig::new(theta, theta, Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0))
        .unwrap();
    let analytic = filtered_state(&phi, &cfg).unwrap();
    println!(
        "   closed form h_0 = {:+.4}{:+.4}i, p = {:.12}",
        analytic.collapsed().amplitude(0).re,
        analytic.collapsed().amplitude(0).im,
        analytic.probability()
    );

    // a generic configuration
    let phi = coherent_state(Complex64::new(0.6, 0.2), 20).unwrap();
    let alpha = Complex64::new(-0.3, 0.5);
    let psi = coherent_state(alpha, 24).unwrap();
    let oracle = run_oracle(&phi, &psi, 0.7, 1.1).unwrap();
    let analytic =
        filtered_state(&phi, &FilterConfig::with_coherent_ancilla(0.7, 1.1, alpha).unwrap())
            .unwrap();
    let worst = (0..phi.cutoff())
        .map(|n| (oracle.collapsed().amplitude(n) - analytic.collapsed().amplitude(n)).norm())
        .fold(0.0f64, f64::max);
    println!("\ncoherent phi and ancilla, theta1 = 0.7, theta2 = 1.1:");
    println!("   componentwise deviation oracle vs closed form: {worst:.3e}");
    println!(
        "   p: {:.12} vs {:.12}",
        oracle.probability(),
        analytic.probability()
    );

    // the seeded batch used by `fock-filter oracle-check`
    let report = oracle_check_report(42, 20, 24).unwrap();
    println!("\nseeded batch (seed 42, 20 trials):");
    println!(
        "   max amplitude deviation  = {:.3e}  (tolerance {:.0e})",
        report.max_amplitude_deviation, report.amplitude_tolerance
    );
    println!(
        "   max probability deviation = {:.3e}  (tolerance {:.0e})",
        report.max_probability_deviation, report.probability_tolerance
    );
    println!("   pass = {}", report.pass);
}
