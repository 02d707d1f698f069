//! Strip an entire parity class off a Yurke-Stoler cat state with one
//! ancilla setting.
//!
//! For cat states the hole amplitudes for every odd n coincide (and
//! likewise for every even n), so a single coherent amplitude removes the
//! whole class: alpha^(even) = -gamma Lambda (1+e^{i delta})/(1-e^{i delta})
//! keeps only even components, alpha^(odd) the mirror image. The input has
//! Poissonian statistics; the surviving-odd state is sub-Poissonian and
//! the surviving-even one super-Poissonian, with var_y dropping below the
//! input only for the even case.
//!
//! ```bash
//! cargo run --release --example parity_filtering
//! ```

use num_complex::Complex64;

use fock_filter::{
    alpha_for_parity, cat_state, filtered_state, mandel_q, quadratures, FilterConfig, Parity,
};

fn main() {
    let theta = std::f64::consts::FRAC_PI_4;
    let delta = std::f64::consts::FRAC_PI_2;
    let cutoff = 64;
    let gamma = Complex64::new(1.0, 0.0);

    let input = cat_state(gamma, delta, cutoff).unwrap();
    println!(
        "Yurke-Stoler cat, |gamma| = 1: Q = {:+.2e} (Poissonian), Var Y = {:.6}\n",
        mandel_q(&input).unwrap(),
        quadratures(&input).unwrap().var_y
    );

    for (parity, kept) in [(Parity::Odd, "odd"), (Parity::Even, "even")] {
        let alpha = alpha_for_parity(gamma, delta, theta, theta, parity).unwrap();
        let cfg = FilterConfig::with_coherent_ancilla(theta, theta, alpha).unwrap();
        let result = filtered_state(&input, &cfg).unwrap();
        let out = result.normalized().unwrap();

        let removed_start = if parity == Parity::Odd { 0 } else { 1 };
        let removed_max = (removed_start..out.cutoff())
            .step_by(2)
            .map(|n| out.amplitude(n).norm())
            .fold(0.0f64, f64::max);

        println!("keep {kept} components: alpha = {:+.4}{:+.4}i", alpha.re, alpha.im);
        println!("   p = {:.6}", result.probability());
        println!("   largest removed-class amplitude: {removed_max:.3e}");
        println!(
            "   Q = {:+.6}, Var Y = {:.6}",
            mandel_q(&out).unwrap(),
            quadratures(&out).unwrap().var_y
        );
        let head: Vec<String> = (0..6).map(|n| format!("P({n}) = {:.4}", out.amplitude(n).norm_sqr())).collect();
        println!("   {}\n", head.join(", "));
    }
}
