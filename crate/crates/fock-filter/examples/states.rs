//! Build the standard single-mode states and inspect their photon
//! statistics and quadrature noise.
//!
//! ```bash
//! cargo run --release --example states
//! ```

use num_complex::Complex64;

use fock_filter::{
    cat_state, coherent_state, fock_state, mandel_q, mean_photon_number, quadratures,
    squeezed_coherent_state, FockVector,
};

fn describe(name: &str, state: &FockVector) {
    println!("== {name} (cutoff {})", state.cutoff());
    let leading: Vec<String> = state
        .amplitudes()
        .iter()
        .take(6)
        .enumerate()
        .map(|(n, a)| format!("c{n} = {:+.4}{:+.4}i", a.re, a.im))
        .collect();
    println!("   {}", leading.join(", "));
    match mandel_q(state) {
        Ok(q) => println!("   Mandel Q      = {q:+.6}"),
        Err(e) => println!("   Mandel Q      : {e}"),
    }
    let r = quadratures(state).expect("cutoff large enough for these parameters");
    println!(
        "   Var X / Var Y = {:.6} / {:.6}  (vacuum level 0.25; squeezed: {}/{})",
        r.var_x, r.var_y, r.squeezed_x, r.squeezed_y
    );
    println!(
        "   mean photons  = {:.6}",
        mean_photon_number(state).expect("normalized")
    );
}

fn main() {
    let cutoff = 64;

    describe("vacuum |0>", &fock_state(0, cutoff).unwrap());
    describe("single photon |1>", &fock_state(1, cutoff).unwrap());

    let alpha = Complex64::new(1.0, 0.0);
    describe("coherent |alpha>, alpha = 1", &coherent_state(alpha, cutoff).unwrap());

    // squeezed vacuum: noise e^{-2s}/4 in X, e^{+2s}/4 in Y
    let sv = squeezed_coherent_state(Complex64::new(0.0, 0.0), Complex64::new(1.0, 0.0), 128).unwrap();
    describe("squeezed vacuum, s = 1", &sv);
    println!("   analytic Var X = e^(-2)/4 = {:.6}", (-2.0f64).exp() / 4.0);

    let sc = squeezed_coherent_state(Complex64::new(0.5, 0.0), Complex64::new(1.0, 0.0), cutoff).unwrap();
    describe("squeezed coherent, gamma = 0.5, s = 1", &sc);

    // cats: delta = 0 keeps even components, pi keeps odd, pi/2 is Poissonian
    for (name, delta) in [
        ("even cat (delta = 0)", 0.0),
        ("odd cat (delta = pi)", std::f64::consts::PI),
        ("Yurke-Stoler cat (delta = pi/2)", std::f64::consts::FRAC_PI_2),
    ] {
        let cat = cat_state(Complex64::new(1.0, 0.0), delta, cutoff).unwrap();
        describe(name, &cat);
    }
}
