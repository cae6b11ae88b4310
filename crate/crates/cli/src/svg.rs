//! Hand-emitted SVG bar chart of significant probability boosts.
//!
//! One horizontal bar per significant pair, drawn for the orientation
//! chosen for reporting: the bar runs from the posterior mean of P(A=1)
//! to the posterior mean of P(A=1|B=1), with an error whisker of one
//! standard deviation of P(A=1|B=1) at the far end. Blue bars mark
//! positive added value, red bars negative. Geometry is pure arithmetic
//! so tests can check coordinates exactly, and the output is byte-stable
//! for golden-file comparisons.

use crate::format::fmt_sig;
use crate::report::ResultRow;

pub const BLUE: &str = "#1f77b4";
pub const RED: &str = "#d62728";

/// Fixed pixel layout of the chart.
#[derive(Debug, Clone, Copy)]
pub struct ChartLayout {
    pub width: f64,
    pub margin_left: f64,
    pub margin_right: f64,
    pub margin_top: f64,
    pub margin_bottom: f64,
    pub row_height: f64,
    pub bar_height: f64,
}

impl Default for ChartLayout {
    fn default() -> Self {
        Self {
            width: 800.0,
            margin_left: 240.0,
            margin_right: 40.0,
            margin_top: 48.0,
            margin_bottom: 40.0,
            row_height: 22.0,
            bar_height: 12.0,
        }
    }
}

impl ChartLayout {
    pub fn plot_width(&self) -> f64 {
        self.width - self.margin_left - self.margin_right
    }

    /// Map a probability to an x pixel under the given axis maximum.
    pub fn x_position(&self, value: f64, x_max: f64) -> f64 {
        self.margin_left + value / x_max * self.plot_width()
    }

    pub fn row_y(&self, row: usize) -> f64 {
        self.margin_top + row as f64 * self.row_height
    }
}

/// One bar of the chart.
#[derive(Debug, Clone, PartialEq)]
pub struct Bar {
    /// "A | B": the reported variable given the conditioning one.
    pub label: String,
    /// Posterior mean of P(A=1).
    pub start: f64,
    /// Posterior mean of P(A=1|B=1).
    pub end: f64,
    /// Posterior sd of P(A=1|B=1).
    pub sd: f64,
    /// Sign of the added value.
    pub positive: bool,
}

impl Bar {
    /// Build the bar for a significant pair's chosen orientation.
    pub fn from_row(row: &ResultRow) -> Self {
        let (a, b, start, end, sd) = match row.orientation {
            deltap_core::Orientation::Ab => (
                &row.var_a,
                &row.var_b,
                row.prob_a,
                row.prob_a_given_b,
                row.sd_prob_a_given_b,
            ),
            deltap_core::Orientation::Ba => (
                &row.var_b,
                &row.var_a,
                row.prob_b,
                row.prob_b_given_a,
                row.sd_prob_b_given_a,
            ),
        };
        Bar {
            label: format!("{a} | {b}"),
            start,
            end,
            sd,
            positive: row.chosen_mean() > 0.0,
        }
    }
}

/// Axis maximum: the smallest multiple of 0.05 covering every bar
/// (including whiskers), clamped to (0, 1].
pub fn axis_max(bars: &[Bar]) -> f64 {
    let needed = bars
        .iter()
        .map(|b| b.start.max(b.end + b.sd))
        .fold(0.05f64, f64::max);
    ((needed / 0.05).ceil() * 0.05).min(1.0)
}

fn px(v: f64) -> String {
    format!("{v:.2}")
}

/// Render the chart. An empty bar list produces an annotated empty
/// frame rather than an error.
pub fn bar_chart(bars: &[Bar], run_id: &str, layout: &ChartLayout) -> String {
    let x_max = axis_max(bars);
    let height =
        layout.margin_top + (bars.len().max(1) as f64) * layout.row_height + layout.margin_bottom;
    let mut out = String::new();
    out.push_str(&format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{}\" height=\"{}\" font-family=\"sans-serif\" font-size=\"12\">\n",
        px(layout.width),
        px(height)
    ));
    out.push_str(&format!("<!-- run_id: {run_id} -->\n"));
    out.push_str(&format!(
        "<rect x=\"0\" y=\"0\" width=\"{}\" height=\"{}\" fill=\"white\"/>\n",
        px(layout.width),
        px(height)
    ));
    out.push_str(&format!(
        "<text x=\"{}\" y=\"20\" font-size=\"14\">Probability of A given B, against the P(A=1) baseline</text>\n",
        px(layout.margin_left)
    ));

    // Axis with ticks every x_max / 5.
    let axis_y = height - layout.margin_bottom;
    out.push_str(&format!(
        "<line x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\" stroke=\"black\"/>\n",
        px(layout.margin_left),
        px(axis_y),
        px(layout.x_position(x_max, x_max)),
        px(axis_y)
    ));
    for t in 0..=5 {
        let v = x_max * t as f64 / 5.0;
        let x = layout.x_position(v, x_max);
        out.push_str(&format!(
            "<line x1=\"{0}\" y1=\"{1}\" x2=\"{0}\" y2=\"{2}\" stroke=\"black\"/>\n",
            px(x),
            px(axis_y),
            px(axis_y + 4.0)
        ));
        out.push_str(&format!(
            "<text x=\"{}\" y=\"{}\" text-anchor=\"middle\">{}</text>\n",
            px(x),
            px(axis_y + 16.0),
            fmt_sig(v)
        ));
    }

    if bars.is_empty() {
        out.push_str(&format!(
            "<text x=\"{}\" y=\"{}\">no statistically significant pairs</text>\n",
            px(layout.margin_left),
            px(layout.row_y(0) + layout.row_height / 2.0)
        ));
        out.push_str("</svg>\n");
        return out;
    }

    for (i, bar) in bars.iter().enumerate() {
        let y = layout.row_y(i);
        let y_mid = y + layout.bar_height / 2.0;
        let x_start = layout.x_position(bar.start.min(bar.end), x_max);
        let x_end = layout.x_position(bar.start.max(bar.end), x_max);
        let color = if bar.positive { BLUE } else { RED };
        out.push_str(&format!(
            "<text x=\"{}\" y=\"{}\" text-anchor=\"end\">{}</text>\n",
            px(layout.margin_left - 8.0),
            px(y_mid + 4.0),
            xml_escape(&bar.label)
        ));
        out.push_str(&format!(
            "<rect x=\"{}\" y=\"{}\" width=\"{}\" height=\"{}\" fill=\"{}\"/>\n",
            px(x_start),
            px(y),
            px((x_end - x_start).max(0.5)),
            px(layout.bar_height),
            color
        ));
        // Error whisker on P(A=1|B=1), clamped to the axis range.
        let w_lo = layout.x_position((bar.end - bar.sd).max(0.0), x_max);
        let w_hi = layout.x_position((bar.end + bar.sd).min(x_max), x_max);
        out.push_str(&format!(
            "<line x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\" stroke=\"black\"/>\n",
            px(w_lo),
            px(y_mid),
            px(w_hi),
            px(y_mid)
        ));
        for x in [w_lo, w_hi] {
            out.push_str(&format!(
                "<line x1=\"{0}\" y1=\"{1}\" x2=\"{0}\" y2=\"{2}\" stroke=\"black\"/>\n",
                px(x),
                px(y_mid - 3.0),
                px(y_mid + 3.0)
            ));
        }
    }
    out.push_str("</svg>\n");
    out
}

fn xml_escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bar(start: f64, end: f64, sd: f64) -> Bar {
        Bar {
            label: "a | b".into(),
            start,
            end,
            sd,
            positive: end > start,
        }
    }

    #[test]
    fn axis_covers_all_bars() {
        let bars = vec![bar(0.04, 0.69, 0.12), bar(0.02, 0.16, 0.03)];
        assert!((axis_max(&bars) - 0.85).abs() < 1e-12);
        assert_eq!(axis_max(&[]), 0.05);
        assert_eq!(axis_max(&[bar(0.1, 0.99, 0.5)]), 1.0);
    }

    #[test]
    fn bar_geometry_matches_the_means() {
        let layout = ChartLayout::default();
        let bars = vec![bar(0.0442, 0.6923, 0.12)];
        let x_max = axis_max(&bars);
        let svg = bar_chart(&bars, "rid", &layout);
        let expect_x = layout.x_position(0.0442, x_max);
        let expect_w = layout.x_position(0.6923, x_max) - expect_x;
        let rect = svg
            .lines()
            .find(|l| l.contains(BLUE))
            .expect("bar rect present");
        assert!(rect.contains(&format!("x=\"{expect_x:.2}\"")), "{rect}");
        assert!(rect.contains(&format!("width=\"{expect_w:.2}\"")), "{rect}");
    }

    #[test]
    fn negative_bars_are_red() {
        let mut b = bar(0.4, 0.1, 0.05);
        b.positive = false;
        let svg = bar_chart(&[b], "rid", &ChartLayout::default());
        assert!(svg.contains(RED));
        assert!(!svg.contains(BLUE));
    }

    #[test]
    fn empty_chart_is_annotated() {
        let svg = bar_chart(&[], "rid", &ChartLayout::default());
        assert!(svg.contains("no statistically significant pairs"));
        assert!(svg.contains("run_id: rid"));
    }

    #[test]
    fn output_is_byte_stable() {
        let bars = vec![bar(0.1, 0.5, 0.07)];
        let a = bar_chart(&bars, "rid", &ChartLayout::default());
        let b = bar_chart(&bars, "rid", &ChartLayout::default());
        assert_eq!(a, b);
    }
}
