//! Minimal self-contained SVG line charts for sweep datasets.
//!
//! Axis ranges come from the spec's `[plot]` block, never from the data,
//! so regenerated charts are directly comparable. Undefined cells and
//! values outside the y-range break the polyline into separate segments
//! instead of being interpolated across.

use std::fmt::Write;

use crate::sweep::{HoleCell, Metric, SweepDataset, SweepVariable};
use crate::{Error, Result};

const WIDTH: f64 = 720.0;
const HEIGHT: f64 = 480.0;
const MARGIN_L: f64 = 72.0;
const MARGIN_R: f64 = 24.0;
const MARGIN_T: f64 = 42.0;
const MARGIN_B: f64 = 56.0;
const TICKS: usize = 6;

/// Stroke styles cycled over the hole series; the input reference curve is
/// always the dash-dotted green one.
const SERIES_STYLES: [(&str, &str); 6] = [
    ("#1f77b4", ""),
    ("#ff7f0e", "8 4"),
    ("#d62728", "3 3"),
    ("#9467bd", "10 3 3 3"),
    ("#8c564b", "2 2"),
    ("#e377c2", "6 2"),
];
const INPUT_STYLE: (&str, &str) = ("#2ca02c", "9 3 2 3");

fn metric_of(cell: &HoleCell, metric: Metric) -> Option<f64> {
    match metric {
        Metric::P => cell.p,
        Metric::Q => cell.metrics.q,
        Metric::VarX => cell.metrics.var_x,
        Metric::VarY => cell.metrics.var_y,
        Metric::MeanN => cell.metrics.mean_n,
    }
}

struct Frame {
    x_min: f64,
    x_max: f64,
    y_min: f64,
    y_max: f64,
}

impl Frame {
    fn x(&self, v: f64) -> f64 {
        MARGIN_L + (v - self.x_min) / (self.x_max - self.x_min) * (WIDTH - MARGIN_L - MARGIN_R)
    }

    fn y(&self, v: f64) -> f64 {
        HEIGHT - MARGIN_B - (v - self.y_min) / (self.y_max - self.y_min) * (HEIGHT - MARGIN_T - MARGIN_B)
    }
}

fn polylines(points: &[(f64, Option<f64>)], frame: &Frame) -> Vec<String> {
    let mut segments = Vec::new();
    let mut current = String::new();
    let mut count = 0usize;
    for &(x, y) in points {
        let inside = y.map(|v| v >= frame.y_min && v <= frame.y_max).unwrap_or(false);
        if inside {
            let v = y.expect("inside implies a value");
            let _ = write!(current, "{:.2},{:.2} ", frame.x(x), frame.y(v));
            count += 1;
        } else if count > 0 {
            segments.push(current.trim_end().to_string());
            current = String::new();
            count = 0;
        }
    }
    if count > 0 {
        segments.push(current.trim_end().to_string());
    }
    segments
}

fn axis_label(v: f64) -> String {
    // fixed short labels; ranges in the shipped specs are tame
    if v.abs() >= 100.0 || (v != 0.0 && v.abs() < 0.01) {
        format!("{v:.1e}")
    } else {
        format!("{v:.3}")
    }
}

/// Renders the dataset's `[plot]` block to an SVG string.
pub fn render_svg(dataset: &SweepDataset) -> Result<String> {
    let plot = dataset
        .spec
        .plot
        .as_ref()
        .ok_or_else(|| Error::InvalidSpec("spec has no [plot] block to render".into()))?;
    if !(plot.y_min < plot.y_max) {
        return Err(Error::InvalidSpec("plot y_min must be below y_max".into()));
    }
    let frame = Frame {
        x_min: dataset.spec.start,
        x_max: dataset.spec.stop,
        y_min: plot.y_min,
        y_max: plot.y_max,
    };
    let metric = plot.metric;
    let x_label = match dataset.spec.variable {
        SweepVariable::GammaAbs => "|γ|",
        SweepVariable::S => "s",
    };
    let title = plot
        .title
        .clone()
        .unwrap_or_else(|| format!("{} vs {}", metric.display_name(), x_label));

    let mut svg = String::new();
    let _ = write!(
        svg,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{WIDTH}\" height=\"{HEIGHT}\" \
         viewBox=\"0 0 {WIDTH} {HEIGHT}\">\n"
    );
    let _ = write!(svg, "<rect width=\"{WIDTH}\" height=\"{HEIGHT}\" fill=\"white\"/>\n");
    let _ = write!(
        svg,
        "<text x=\"{:.1}\" y=\"24\" font-family=\"sans-serif\" font-size=\"16\" \
         text-anchor=\"middle\">{}</text>\n",
        WIDTH / 2.0,
        title
    );

    // grid + ticks
    for k in 0..TICKS {
        let fx = frame.x_min + (frame.x_max - frame.x_min) * k as f64 / (TICKS - 1) as f64;
        let fy = frame.y_min + (frame.y_max - frame.y_min) * k as f64 / (TICKS - 1) as f64;
        let px = frame.x(fx);
        let py = frame.y(fy);
        let _ = write!(
            svg,
            "<line x1=\"{px:.2}\" y1=\"{:.2}\" x2=\"{px:.2}\" y2=\"{:.2}\" stroke=\"#dddddd\"/>\n",
            MARGIN_T,
            HEIGHT - MARGIN_B
        );
        let _ = write!(
            svg,
            "<line x1=\"{:.2}\" y1=\"{py:.2}\" x2=\"{:.2}\" y2=\"{py:.2}\" stroke=\"#dddddd\"/>\n",
            MARGIN_L,
            WIDTH - MARGIN_R
        );
        let _ = write!(
            svg,
            "<text x=\"{px:.2}\" y=\"{:.2}\" font-family=\"sans-serif\" font-size=\"11\" \
             text-anchor=\"middle\">{}</text>\n",
            HEIGHT - MARGIN_B + 16.0,
            axis_label(fx)
        );
        let _ = write!(
            svg,
            "<text x=\"{:.2}\" y=\"{:.2}\" font-family=\"sans-serif\" font-size=\"11\" \
             text-anchor=\"end\">{}</text>\n",
            MARGIN_L - 6.0,
            py + 4.0,
            axis_label(fy)
        );
    }
    // frame
    let _ = write!(
        svg,
        "<rect x=\"{MARGIN_L}\" y=\"{MARGIN_T}\" width=\"{:.2}\" height=\"{:.2}\" \
         fill=\"none\" stroke=\"black\"/>\n",
        WIDTH - MARGIN_L - MARGIN_R,
        HEIGHT - MARGIN_T - MARGIN_B
    );
    // axis labels
    let _ = write!(
        svg,
        "<text x=\"{:.1}\" y=\"{:.1}\" font-family=\"sans-serif\" font-size=\"13\" \
         text-anchor=\"middle\">{}</text>\n",
        MARGIN_L + (WIDTH - MARGIN_L - MARGIN_R) / 2.0,
        HEIGHT - 14.0,
        x_label
    );
    let _ = write!(
        svg,
        "<text x=\"18\" y=\"{:.1}\" font-family=\"sans-serif\" font-size=\"13\" \
         text-anchor=\"middle\" transform=\"rotate(-90 18 {:.1})\">{}</text>\n",
        MARGIN_T + (HEIGHT - MARGIN_T - MARGIN_B) / 2.0,
        MARGIN_T + (HEIGHT - MARGIN_T - MARGIN_B) / 2.0,
        metric.display_name()
    );

    // series
    let mut legend: Vec<(String, &str, &str)> = Vec::new();
    if metric != Metric::P {
        let points: Vec<(f64, Option<f64>)> = dataset
            .rows
            .iter()
            .map(|r| {
                let cell = HoleCell { hole: String::new(), p: None, metrics: r.input.clone() };
                (r.value, metric_of(&cell, metric))
            })
            .collect();
        for seg in polylines(&points, &frame) {
            let _ = write!(
                svg,
                "<polyline points=\"{seg}\" fill=\"none\" stroke=\"{}\" stroke-width=\"1.8\" \
                 stroke-dasharray=\"{}\"/>\n",
                INPUT_STYLE.0, INPUT_STYLE.1
            );
        }
        legend.push(("input".to_string(), INPUT_STYLE.0, INPUT_STYLE.1));
    }
    for (i, hole) in dataset.spec.holes.iter().enumerate() {
        let style = SERIES_STYLES[i % SERIES_STYLES.len()];
        let points: Vec<(f64, Option<f64>)> = dataset
            .rows
            .iter()
            .map(|r| (r.value, r.holes.get(i).and_then(|c| metric_of(c, metric))))
            .collect();
        for seg in polylines(&points, &frame) {
            let _ = write!(
                svg,
                "<polyline points=\"{seg}\" fill=\"none\" stroke=\"{}\" stroke-width=\"1.8\" \
                 stroke-dasharray=\"{}\"/>\n",
                style.0, style.1
            );
        }
        legend.push((format!("hole {}", hole.label()), style.0, style.1));
    }

    // legend box
    let lx = WIDTH - MARGIN_R - 150.0;
    let ly = MARGIN_T + 10.0;
    let _ = write!(
        svg,
        "<rect x=\"{lx:.1}\" y=\"{ly:.1}\" width=\"140\" height=\"{:.1}\" fill=\"white\" \
         stroke=\"#999999\"/>\n",
        legend.len() as f64 * 18.0 + 10.0
    );
    for (i, (name, color, dash)) in legend.iter().enumerate() {
        let yy = ly + 14.0 + i as f64 * 18.0;
        let _ = write!(
            svg,
            "<line x1=\"{:.1}\" y1=\"{yy:.1}\" x2=\"{:.1}\" y2=\"{yy:.1}\" stroke=\"{color}\" \
             stroke-width=\"1.8\" stroke-dasharray=\"{dash}\"/>\n",
            lx + 8.0,
            lx + 38.0
        );
        let _ = write!(
            svg,
            "<text x=\"{:.1}\" y=\"{:.1}\" font-family=\"sans-serif\" font-size=\"12\">{}</text>\n",
            lx + 44.0,
            yy + 4.0,
            name
        );
    }
    svg.push_str("</svg>\n");
    Ok(svg)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sweep::{run_sweep, Family, HoleSpec, PlotSpec, SweepSpec};

    fn spec_with_plot() -> SweepSpec {
        SweepSpec {
            family: Family::Cat,
            variable: SweepVariable::GammaAbs,
            start: 0.2,
            stop: 1.0,
            steps: 5,
            gamma_abs: 0.5,
            s: 1.0,
            beta: 0.0,
            squeeze_phase: 0.0,
            delta: std::f64::consts::FRAC_PI_2,
            theta1: std::f64::consts::FRAC_PI_4,
            theta2: std::f64::consts::FRAC_PI_4,
            cutoff: 40,
            holes: vec![HoleSpec::Odd, HoleSpec::Even],
            plot: Some(PlotSpec { metric: Metric::Q, y_min: -1.0, y_max: 1.0, title: None }),
        }
    }

    #[test]
    fn renders_series_and_legend() {
        let data = run_sweep(&spec_with_plot()).unwrap();
        let svg = render_svg(&data).unwrap();
        assert!(svg.starts_with("<svg"));
        assert!(svg.contains("polyline"));
        assert!(svg.contains("hole odd"));
        assert!(svg.contains("hole even"));
        assert!(svg.contains("input"));
        assert!(svg.ends_with("</svg>\n"));
    }

    #[test]
    fn missing_plot_block_is_an_error() {
        let mut spec = spec_with_plot();
        spec.plot = None;
        let data = run_sweep(&spec).unwrap();
        assert!(render_svg(&data).is_err());
    }

    #[test]
    fn probability_chart_has_no_input_series() {
        let mut spec = spec_with_plot();
        spec.plot = Some(PlotSpec { metric: Metric::P, y_min: 0.0, y_max: 0.4, title: None });
        let data = run_sweep(&spec).unwrap();
        let svg = render_svg(&data).unwrap();
        assert!(!svg.contains(">input<"));
    }
}
