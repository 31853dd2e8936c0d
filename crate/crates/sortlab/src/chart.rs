//! Minimal static SVG chart: normalized cost against log2 n, one polyline
//! per series, with optional horizontal asymptote lines.

use std::io::Write;

#[derive(Clone, Debug)]
pub struct Series {
    pub label: String,
    /// (n, value) points; n is plotted on a log2 axis.
    pub points: Vec<(f64, f64)>,
    pub asymptote: Option<f64>,
}

const WIDTH: f64 = 800.0;
const HEIGHT: f64 = 500.0;
const MARGIN_L: f64 = 70.0;
const MARGIN_R: f64 = 30.0;
const MARGIN_T: f64 = 40.0;
const MARGIN_B: f64 = 50.0;
const PALETTE: [&str; 6] = [
    "#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b",
];

pub fn render_chart(series: &[Series], y_label: &str) -> String {
    let mut xs: Vec<f64> = vec![];
    let mut ys: Vec<f64> = vec![];
    for s in series {
        for &(n, v) in &s.points {
            xs.push(n.log2());
            ys.push(v);
        }
        if let Some(a) = s.asymptote {
            ys.push(a);
        }
    }
    let (x0, x1) = span(&xs, 0.0, 10.0);
    let (mut y0, mut y1) = span(&ys, 0.0, 1.0);
    let pad = 0.08 * (y1 - y0).max(1e-9);
    y0 -= pad;
    y1 += pad;

    let x_of = |lx: f64| MARGIN_L + (lx - x0) / (x1 - x0).max(1e-9) * (WIDTH - MARGIN_L - MARGIN_R);
    let y_of = |v: f64| {
        HEIGHT - MARGIN_B - (v - y0) / (y1 - y0).max(1e-9) * (HEIGHT - MARGIN_T - MARGIN_B)
    };

    let mut svg = String::new();
    svg.push_str(&format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 {WIDTH} {HEIGHT}\" \
         font-family=\"sans-serif\" font-size=\"12\">\n"
    ));
    svg.push_str(&format!(
        "<rect x=\"0\" y=\"0\" width=\"{WIDTH}\" height=\"{HEIGHT}\" fill=\"white\"/>\n"
    ));
    // axes
    svg.push_str(&format!(
        "<line x1=\"{MARGIN_L}\" y1=\"{}\" x2=\"{}\" y2=\"{}\" stroke=\"black\"/>\n",
        HEIGHT - MARGIN_B,
        WIDTH - MARGIN_R,
        HEIGHT - MARGIN_B
    ));
    svg.push_str(&format!(
        "<line x1=\"{MARGIN_L}\" y1=\"{MARGIN_T}\" x2=\"{MARGIN_L}\" y2=\"{}\" stroke=\"black\"/>\n",
        HEIGHT - MARGIN_B
    ));
    // x ticks at integer log2
    let mut lx = x0.ceil();
    while lx <= x1 {
        let x = x_of(lx);
        svg.push_str(&format!(
            "<line x1=\"{x:.1}\" y1=\"{}\" x2=\"{x:.1}\" y2=\"{}\" stroke=\"black\"/>\n",
            HEIGHT - MARGIN_B,
            HEIGHT - MARGIN_B + 5.0
        ));
        svg.push_str(&format!(
            "<text x=\"{x:.1}\" y=\"{}\" text-anchor=\"middle\">2^{}</text>\n",
            HEIGHT - MARGIN_B + 20.0,
            lx as i64
        ));
        lx += ((x1 - x0) / 10.0).max(1.0).round();
    }
    svg.push_str(&format!(
        "<text x=\"{:.1}\" y=\"{:.1}\" text-anchor=\"middle\">n</text>\n",
        (MARGIN_L + WIDTH - MARGIN_R) / 2.0,
        HEIGHT - 10.0
    ));
    // y ticks
    for i in 0..=5 {
        let v = y0 + (y1 - y0) * i as f64 / 5.0;
        let y = y_of(v);
        svg.push_str(&format!(
            "<line x1=\"{}\" y1=\"{y:.1}\" x2=\"{MARGIN_L}\" y2=\"{y:.1}\" stroke=\"black\"/>\n",
            MARGIN_L - 5.0
        ));
        svg.push_str(&format!(
            "<text x=\"{}\" y=\"{:.1}\" text-anchor=\"end\">{v:.3}</text>\n",
            MARGIN_L - 9.0,
            y + 4.0
        ));
    }
    svg.push_str(&format!(
        "<text x=\"18\" y=\"{:.1}\" text-anchor=\"middle\" transform=\"rotate(-90 18 {:.1})\">{}</text>\n",
        HEIGHT / 2.0,
        HEIGHT / 2.0,
        escape(y_label)
    ));

    for (i, s) in series.iter().enumerate() {
        let color = PALETTE[i % PALETTE.len()];
        if let Some(a) = s.asymptote {
            let y = y_of(a);
            svg.push_str(&format!(
                "<line x1=\"{MARGIN_L}\" y1=\"{y:.1}\" x2=\"{}\" y2=\"{y:.1}\" \
                 stroke=\"{color}\" stroke-dasharray=\"6 4\" opacity=\"0.7\"/>\n",
                WIDTH - MARGIN_R
            ));
            svg.push_str(&format!(
                "<text x=\"{}\" y=\"{:.1}\" text-anchor=\"end\" fill=\"{color}\">{a:.4}</text>\n",
                WIDTH - MARGIN_R - 4.0,
                y - 4.0
            ));
        }
        if !s.points.is_empty() {
            let pts: Vec<String> = s
                .points
                .iter()
                .map(|&(n, v)| format!("{:.1},{:.1}", x_of(n.log2()), y_of(v)))
                .collect();
            svg.push_str(&format!(
                "<polyline points=\"{}\" fill=\"none\" stroke=\"{color}\" stroke-width=\"1.5\"/>\n",
                pts.join(" ")
            ));
        }
        svg.push_str(&format!(
            "<text x=\"{}\" y=\"{:.1}\" fill=\"{color}\">{}</text>\n",
            MARGIN_L + 8.0,
            MARGIN_T + 16.0 * (i as f64 + 1.0),
            escape(&s.label)
        ));
    }
    svg.push_str("</svg>\n");
    svg
}

fn span(values: &[f64], default_lo: f64, default_hi: f64) -> (f64, f64) {
    if values.is_empty() {
        return (default_lo, default_hi);
    }
    let lo = values.iter().cloned().fold(f64::INFINITY, f64::min);
    let hi = values.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    if (hi - lo).abs() < 1e-12 {
        (lo - 0.5, hi + 0.5)
    } else {
        (lo, hi)
    }
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;")
        .replace('<', "&lt;")
        .replace('>', "&gt;")
}

/// Render and write the chart, surfacing I/O failures with path context.
pub fn emit_svg_chart(series: &[Series], y_label: &str, path: &str) -> std::io::Result<()> {
    let svg = render_chart(series, y_label);
    let mut file = std::fs::File::create(path)
        .map_err(|e| std::io::Error::new(e.kind(), format!("{path}: {e}")))?;
    file.write_all(svg.as_bytes())
        .map_err(|e| std::io::Error::new(e.kind(), format!("{path}: {e}")))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::analysis::{exact_recurrence, CostKind, TollMode};
    use crate::sorters::Algorithm;

    #[test]
    fn empty_chart_has_axes_but_no_polyline() {
        let svg = render_chart(&[], "cost / (n ln n)");
        assert!(svg.starts_with("<svg"));
        assert!(svg.ends_with("</svg>\n"));
        assert!(!svg.contains("<polyline"));
    }

    #[test]
    fn one_series_one_polyline_with_asymptote() {
        let series = [Series {
            label: "dual scans".into(),
            points: vec![(1024.0, 1.2), (4096.0, 1.3)],
            asymptote: Some(1.4035),
        }];
        let svg = render_chart(&series, "scans / (n ln n)");
        assert_eq!(svg.matches("<polyline").count(), 1);
        assert!(svg.contains("stroke-dasharray"));
        assert!(svg.contains("1.4035"));
    }

    /// The normalized recurrence curve approaches its asymptote from below:
    /// the gap to the constant shrinks monotonically along the series.
    #[test]
    fn recurrence_series_approaches_asymptote() {
        let constant = crate::analysis::asymptotic_constant(
            Algorithm::DualPivot,
            CostKind::ScannedElements,
            crate::sorters::SamplingScheme::DualTertiles { t: 1 },
        );
        let table = exact_recurrence(
            Algorithm::DualPivot,
            CostKind::ScannedElements,
            1,
            &TollMode::AnalyticLeading,
            1 << 14,
        );
        let points: Vec<(f64, f64)> = (6..=14)
            .map(|e| {
                let n = 1usize << e;
                (n as f64, table.value(n) / (n as f64 * (n as f64).ln()))
            })
            .collect();
        let mut last_gap = f64::INFINITY;
        for &(_, v) in &points {
            let gap = (constant - v).abs();
            assert!(gap < last_gap, "normalized curve not approaching asymptote");
            last_gap = gap;
        }
        let svg = render_chart(
            &[Series {
                label: "dual scans tertiles:1".into(),
                points,
                asymptote: Some(constant),
            }],
            "scans / (n ln n)",
        );
        assert!(svg.contains("<polyline"));
    }

    #[test]
    fn emit_writes_file_and_reports_path_on_error() {
        let dir = std::env::temp_dir().join("sortlab_chart_test");
        std::fs::create_dir_all(&dir).unwrap();
        let path = dir.join("chart.svg");
        emit_svg_chart(&[], "y", path.to_str().unwrap()).unwrap();
        assert!(std::fs::read_to_string(&path).unwrap().starts_with("<svg"));
        let bad = dir.join("missing_dir").join("chart.svg");
        let err = emit_svg_chart(&[], "y", bad.to_str().unwrap()).unwrap_err();
        assert!(err.to_string().contains("missing_dir"));
    }
}
