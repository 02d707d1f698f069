//! Regenerate every shipped figure dataset (CSV) and chart (SVG) into
//! `./out/`.
//!
//! Equivalent to running `fock-filter sweep --config configs/<name>.toml
//! --out out/<name>.csv --svg out/<name>.svg` for each shipped config.
//!
//! ```bash
//! cargo run --release --example figure_sweeps
//! ```

use std::time::Instant;

use fock_filter::plot::render_svg;
use fock_filter::sweep::{run_sweep, to_csv_string, SweepSpec};

const CONFIGS: [(&str, &str); 6] = [
    (
        "probability_vs_gamma_squeezed",
        include_str!("../configs/probability_vs_gamma_squeezed.toml"),
    ),
    (
        "mandel_q_vs_gamma_squeezed",
        include_str!("../configs/mandel_q_vs_gamma_squeezed.toml"),
    ),
    ("varx_vs_s_squeezed", include_str!("../configs/varx_vs_s_squeezed.toml")),
    (
        "probability_vs_gamma_cat",
        include_str!("../configs/probability_vs_gamma_cat.toml"),
    ),
    ("mandel_q_vs_gamma_cat", include_str!("../configs/mandel_q_vs_gamma_cat.toml")),
    ("vary_vs_gamma_cat", include_str!("../configs/vary_vs_gamma_cat.toml")),
];

fn main() -> std::io::Result<()> {
    std::fs::create_dir_all("out")?;
    let started = Instant::now();
    for (name, text) in CONFIGS {
        let spec: SweepSpec = toml::from_str(text).expect("shipped config parses");
        let t0 = Instant::now();
        let dataset = run_sweep(&spec).expect("shipped config is valid");
        let csv_path = format!("out/{name}.csv");
        let svg_path = format!("out/{name}.svg");
        std::fs::write(&csv_path, to_csv_string(&dataset))?;
        std::fs::write(&svg_path, render_svg(&dataset).expect("config carries a [plot] block"))?;
        let flagged: usize = dataset
            .rows
            .iter()
            .map(|r| {
                usize::from(r.input.flag.is_some())
                    + r.holes.iter().filter(|h| h.metrics.flag.is_some()).count()
            })
            .sum();
        println!(
            "{name}: {} rows in {:.2}s -> {csv_path}, {svg_path}{}",
            dataset.rows.len(),
            t0.elapsed().as_secs_f64(),
            if flagged > 0 {
                format!("  ({flagged} flagged cells, see the flag columns)")
            } else {
                String::new()
            }
        );
    }
    println!("total {:.2}s", started.elapsed().as_secs_f64());
    Ok(())
}
