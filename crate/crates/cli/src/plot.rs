//! Minimal SVG line plots. Output depends only on the input values.

use std::fmt::Write as _;
use std::path::Path;

const W: f64 = 480.0;
const H: f64 = 320.0;
const PAD: f64 = 48.0;

/// Renders `(x, y)` points as a polyline. With `log_y` the vertical axis
/// shows `log10 |y|`; zero values are dropped.
pub fn render_svg(title: &str, points: &[(f64, f64)], log_y: bool) -> String {
    let pts: Vec<(f64, f64)> = points
        .iter()
        .filter_map(|&(x, y)| {
            let y = if log_y {
                if y == 0.0 {
                    return None;
                }
                y.abs().log10()
            } else {
                y
            };
            (x.is_finite() && y.is_finite()).then_some((x, y))
        })
        .collect();
    let mut s = String::new();
    let _ = writeln!(
        s,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{W}\" height=\"{H}\" viewBox=\"0 0 {W} {H}\">"
    );
    let _ = writeln!(s, "<rect width=\"{W}\" height=\"{H}\" fill=\"white\"/>");
    let (x0, x1, y0, y1) = (PAD, W - PAD / 2.0, H - PAD, PAD / 2.0);
    let _ = writeln!(s, "<line x1=\"{x0}\" y1=\"{y0}\" x2=\"{x1}\" y2=\"{y0}\" stroke=\"black\"/>");
    let _ = writeln!(s, "<line x1=\"{x0}\" y1=\"{y0}\" x2=\"{x0}\" y2=\"{y1}\" stroke=\"black\"/>");
    let _ = writeln!(
        s,
        "<text x=\"{}\" y=\"16\" font-family=\"monospace\" font-size=\"12\" text-anchor=\"middle\">{}</text>",
        W / 2.0,
        escape(title)
    );
    if !pts.is_empty() {
        let (mut xmin, mut xmax, mut ymin, mut ymax) = (f64::MAX, f64::MIN, f64::MAX, f64::MIN);
        for &(x, y) in &pts {
            xmin = xmin.min(x);
            xmax = xmax.max(x);
            ymin = ymin.min(y);
            ymax = ymax.max(y);
        }
        if xmax == xmin {
            xmax = xmin + 1.0;
        }
        if ymax == ymin {
            ymax = ymin + 1.0;
        }
        let px = |x: f64| x0 + (x - xmin) / (xmax - xmin) * (x1 - x0);
        let py = |y: f64| y0 - (y - ymin) / (ymax - ymin) * (y0 - y1);
        let coords: Vec<String> = pts.iter().map(|&(x, y)| format!("{:.2},{:.2}", px(x), py(y))).collect();
        let _ = writeln!(
            s,
            "<polyline fill=\"none\" stroke=\"steelblue\" stroke-width=\"1.5\" points=\"{}\"/>",
            coords.join(" ")
        );
        for c in &coords {
            let (cx, cy) = c.split_once(',').expect("formatted pair");
            let _ = writeln!(s, "<circle cx=\"{cx}\" cy=\"{cy}\" r=\"2.5\" fill=\"steelblue\"/>");
        }
        let label = if log_y { "log10 |y|" } else { "y" };
        let _ = writeln!(
            s,
            "<text x=\"4\" y=\"{:.2}\" font-family=\"monospace\" font-size=\"10\">{label} {ymax:.3}</text>",
            y1 + 4.0
        );
        let _ = writeln!(
            s,
            "<text x=\"4\" y=\"{:.2}\" font-family=\"monospace\" font-size=\"10\">{ymin:.3}</text>",
            y0
        );
        let _ = writeln!(
            s,
            "<text x=\"{x0}\" y=\"{:.2}\" font-family=\"monospace\" font-size=\"10\">{xmin}</text>",
            y0 + 14.0
        );
        let _ = writeln!(
            s,
            "<text x=\"{x1}\" y=\"{:.2}\" font-family=\"monospace\" font-size=\"10\" text-anchor=\"end\">{xmax}</text>",
            y0 + 14.0
        );
    }
    s.push_str("</svg>\n");
    s
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

pub fn emit_plot(path: &Path, title: &str, points: &[(f64, f64)], log_y: bool) -> std::io::Result<()> {
    std::fs::write(path, render_svg(title, points, log_y))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_plot_has_axes_only() {
        let s = render_svg("empty", &[], true);
        assert_eq!(s.matches("<line").count(), 2);
        assert!(!s.contains("polyline"));
    }

    #[test]
    fn decay_curve_is_monotone() {
        let pts: Vec<(f64, f64)> = (0..6).map(|k| (k as f64, 10f64.powi(-3 * k))).collect();
        let s = render_svg("decay", &pts, true);
        let line = s.lines().find(|l| l.starts_with("<polyline")).unwrap();
        let ys: Vec<f64> = line
            .split("points=\"")
            .nth(1)
            .unwrap()
            .trim_end_matches("\"/>")
            .split(' ')
            .map(|p| p.split(',').nth(1).unwrap().parse().unwrap())
            .collect();
        // SVG y grows downward, so a decaying residual has growing y.
        assert!(ys.windows(2).all(|w| w[1] > w[0]));
    }

    #[test]
    fn byte_stable() {
        let pts = [(0.0, 1.5), (1.0, -0.25), (2.0, 3.0)];
        assert_eq!(render_svg("x", &pts, false), render_svg("x", &pts, false));
    }
}
