//! Minimal static SVG line chart of step responses.

use std::fmt::Write;

use crate::simulate::StepResult;

const WIDTH: f64 = 640.0;
const HEIGHT: f64 = 400.0;
const MARGIN: f64 = 48.0;
const COLORS: [&str; 6] = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#17becf"];

/// One polyline per labelled series, `y(t)` against a shared time axis.
pub fn step_chart(series: &[(&str, &StepResult)]) -> String {
    let t_max = series
        .iter()
        .filter_map(|(_, r)| r.t.last().copied())
        .fold(0.0_f64, f64::max)
        .max(f64::MIN_POSITIVE);
    let (mut y_min, mut y_max) = (0.0_f64, 1.0_f64);
    for (_, r) in series {
        for y in &r.y {
            y_min = y_min.min(*y);
            y_max = y_max.max(*y);
        }
    }
    let pad = 0.05 * (y_max - y_min);
    let (y_min, y_max) = (y_min - pad, y_max + pad);
    let x_of = |t: f64| MARGIN + t / t_max * (WIDTH - 2.0 * MARGIN);
    let y_of = |y: f64| HEIGHT - MARGIN - (y - y_min) / (y_max - y_min) * (HEIGHT - 2.0 * MARGIN);

    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}">"#
    );
    let _ = writeln!(out, r#"<rect width="100%" height="100%" fill="white"/>"#);
    let _ = writeln!(
        out,
        r#"<polyline points="{x0:.2},{y0:.2} {x0:.2},{y1:.2} {x1:.2},{y1:.2}" fill="none" stroke="black"/>"#,
        x0 = MARGIN,
        y0 = MARGIN,
        x1 = WIDTH - MARGIN,
        y1 = HEIGHT - MARGIN
    );
    let _ = writeln!(
        out,
        r##"<line x1="{:.2}" y1="{y:.2}" x2="{:.2}" y2="{y:.2}" stroke="#999" stroke-dasharray="4 4"/>"##,
        MARGIN,
        WIDTH - MARGIN,
        y = y_of(1.0)
    );
    let _ = writeln!(out, r#"<text x="{:.2}" y="{:.2}" font-size="12" text-anchor="middle">t [s] (0 to {t_max})</text>"#, WIDTH / 2.0, HEIGHT - 12.0);
    for (i, (label, r)) in series.iter().enumerate() {
        let color = COLORS[i % COLORS.len()];
        // thin to at most ~2000 vertices
        let stride = (r.t.len() / 2000).max(1);
        let points: Vec<String> = r
            .t
            .iter()
            .zip(&r.y)
            .step_by(stride)
            .map(|(t, y)| format!("{:.2},{:.2}", x_of(*t), y_of(*y)))
            .collect();
        let _ = writeln!(out, r#"<polyline points="{}" fill="none" stroke="{color}" stroke-width="1.5"/>"#, points.join(" "));
        let _ = writeln!(
            out,
            r#"<text x="{:.2}" y="{:.2}" font-size="12" fill="{color}">{}</text>"#,
            WIDTH - MARGIN - 120.0,
            MARGIN + 16.0 * (i as f64 + 1.0),
            escape(label)
        );
    }
    out.push_str("</svg>\n");
    out
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}
