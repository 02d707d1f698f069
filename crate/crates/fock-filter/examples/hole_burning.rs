//! Remove a chosen Fock component from a squeezed coherent state.
//!
//! The coherent ancilla amplitude alpha^(n) = -Lambda sqrt(n+1)
//! phi_{n+1}/phi_n makes the heralded output's n-th coefficient vanish
//! exactly. Removing the vacuum component turns this super-Poissonian
//! input strongly sub-Poissonian.
//!
//! ```bash
//! cargo run --release --example hole_burning
//! ```

use num_complex::Complex64;

use fock_filter::{
    alpha_for_hole, filtered_state, mandel_q, quadratures, squeezed_coherent_state, FilterConfig,
};

fn main() {
    let theta = std::f64::consts::FRAC_PI_4; // 50:50 splitters
    let cutoff = 64;
    let gamma = Complex64::new(0.5, 0.0);
    let xi = Complex64::new(1.0, 0.0);

    let input = squeezed_coherent_state(gamma, xi, cutoff).unwrap();
    println!(
        "input |gamma, xi>: Q = {:+.6}, Var X = {:.6}",
        mandel_q(&input).unwrap(),
        quadratures(&input).unwrap().var_x
    );

    for n in [0usize, 1] {
        let alpha = alpha_for_hole(&input, n, theta, theta).unwrap();
        let cfg = FilterConfig::with_coherent_ancilla(theta, theta, alpha).unwrap();
        let result = filtered_state(&input, &cfg).unwrap();
        let out = result.normalized().unwrap();

        println!("\nburning the n = {n} component with alpha = {:+.4}{:+.4}i", alpha.re, alpha.im);
        println!("   success probability p = {:.6}", result.probability());
        println!(
            "   |h_{n}| = {:.3e}  (largest coefficient {:.3e})",
            result.collapsed().amplitude(n).norm(),
            result
                .collapsed()
                .amplitudes()
                .iter()
                .map(|a| a.norm())
                .fold(0.0f64, f64::max)
        );
        println!(
            "   output: Q = {:+.6}, Var X = {:.6}",
            mandel_q(&out).unwrap(),
            quadratures(&out).unwrap().var_x
        );
        let head: Vec<String> = (0..5).map(|k| format!("P({k}) = {:.4}", out.amplitude(k).norm_sqr())).collect();
        println!("   photon distribution head: {}", head.join(", "));
    }

    println!("\nremoving n = 0 is the stronger move: the surviving one-photon");
    println!("component drives the statistics well below Poissonian.");
}
