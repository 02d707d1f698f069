//! The filter as a single-mode operator: noiseless attenuation combined
//! with photon subtraction.
//!
//! The heralded map equals T1^n (a + c I) with c = psi1/(psi0 Lambda), up
//! to the constant psi0 R1 T2. A vacuum ancilla (psi1 = 0) leaves pure
//! attenuated photon subtraction T1^n a; opening the first splitter
//! (theta1 -> 0) reduces it to the bare annihilation operator.
//!
//! ```bash
//! cargo run --release --example photon_subtraction
//! ```

use num_complex::Complex64;

use fock_filter::{
    filtered_state, hole_operator, mandel_q, mean_photon_number, squeezed_coherent_state,
    FilterConfig,
};

fn main() {
    let theta = std::f64::consts::FRAC_PI_4;
    let cutoff = 64;
    let input = squeezed_coherent_state(Complex64::new(0.5, 0.0), Complex64::new(1.0, 0.0), cutoff)
        .unwrap();

    // vacuum ancilla: heralding (1, 0) subtracts exactly one photon
    let cfg = FilterConfig::new(theta, theta, Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0))
        .unwrap();
    let result = filtered_state(&input, &cfg).unwrap();
    let out = result.normalized().unwrap();
    println!("vacuum ancilla (pure subtraction + noiseless attenuation):");
    println!("   p = {:.6}", result.probability());
    println!(
        "   mean photons: input {:.4} -> output {:.4}",
        mean_photon_number(&input).unwrap(),
        mean_photon_number(&out).unwrap()
    );
    println!(
        "   Q: input {:+.4} -> output {:+.4}",
        mandel_q(&input).unwrap(),
        mandel_q(&out).unwrap()
    );

    // same state through the operator route
    let op = hole_operator(&cfg, cutoff).unwrap();
    let via_op = op.apply(&input).unwrap().scaled(cfg.herald_constant());
    let worst = (0..cutoff)
        .map(|n| (via_op.amplitude(n) - result.collapsed().amplitude(n)).norm())
        .fold(0.0f64, f64::max);
    println!("   operator route reproduces the collapsed state to {worst:.3e}");

    // theta1 -> 0 keeps T1 = 1: the operator is exactly the annihilation matrix
    let open = FilterConfig::new(0.0, theta, Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0))
        .unwrap();
    let bare = hole_operator(&open, 6).unwrap();
    println!("\ntheta1 = 0, psi1 = 0: operator matrix (should be the annihilation ladder)");
    for row in 0..6 {
        let cells: Vec<String> = (0..6).map(|col| format!("{:.3}", bare.entry(row, col).re)).collect();
        println!("   [{}]", cells.join(" "));
    }

    // a nonzero psi1 mixes in the zero-photon path
    let mixed = FilterConfig::with_coherent_ancilla(theta, theta, Complex64::new(0.4, 0.0)).unwrap();
    let shift = mixed.psi1() / (mixed.psi0() * mixed.lambda());
    println!(
        "\ncoherent ancilla alpha = 0.4 superposes one- and zero-photon subtraction:\n   \
         operator = T1^n (a + c I) with c = {:+.4}{:+.4}i",
        shift.re, shift.im
    );
}
