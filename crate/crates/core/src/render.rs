//! Text and SVG bar charts of outcome distributions.

use std::fmt::Write as _;

use crate::bits::BitString;
use crate::grover::Distribution;

fn label(index: usize, width: usize) -> String {
    BitString::from_index(index as u64, width).to_string()
}

fn width_of(dist: &Distribution) -> usize {
    dist.len().trailing_zeros() as usize
}

/// One aligned line per outcome; marked outcomes carry a `*`.
pub fn text_histogram(dist: &Distribution, marked: &[usize], bar_width: usize) -> String {
    let width = width_of(dist);
    let peak = dist.probabilities().iter().copied().fold(0.0, f64::max);
    let mut out = String::new();
    for (i, &p) in dist.probabilities().iter().enumerate() {
        let len = if peak > 0.0 { (p / peak * bar_width as f64).round() as usize } else { 0 };
        let flag = if marked.contains(&i) { '*' } else { ' ' };
        writeln!(out, "|{}> {flag} {p:>8.5} {}", label(i, width), "#".repeat(len)).unwrap();
    }
    out
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

/// Standalone SVG bar chart, outcomes on the x axis.
pub fn svg_histogram(title: &str, dist: &Distribution, marked: &[usize]) -> String {
    let width = width_of(dist);
    let bars = dist.len();
    let (left, right, top, bottom) = (60.0, 20.0, 40.0, 60.0);
    let plot_w = (bars as f64 * 28.0).clamp(240.0, 1600.0);
    let plot_h = 260.0;
    let total_w = left + plot_w + right;
    let total_h = top + plot_h + bottom;
    let step = plot_w / bars as f64;
    let bar_w = step * 0.8;
    let show_labels = bars <= 64;

    let mut svg = String::new();
    writeln!(
        svg,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{total_w}" height="{total_h}" viewBox="0 0 {total_w} {total_h}" font-family="sans-serif" font-size="11">"#
    )
    .unwrap();
    writeln!(svg, r#"<rect width="100%" height="100%" fill="white"/>"#).unwrap();
    writeln!(svg, r#"<text x="{}" y="22" text-anchor="middle" font-size="14">{}</text>"#, total_w / 2.0, escape(title))
        .unwrap();

    for tick in 0..=4 {
        let v = tick as f64 / 4.0;
        let y = top + plot_h * (1.0 - v);
        writeln!(
            svg,
            r##"<line x1="{left}" y1="{y}" x2="{}" y2="{y}" stroke="#ddd"/><text x="{}" y="{}" text-anchor="end">{v:.2}</text>"##,
            left + plot_w,
            left - 6.0,
            y + 4.0
        )
        .unwrap();
    }

    for (i, &p) in dist.probabilities().iter().enumerate() {
        let h = plot_h * p.clamp(0.0, 1.0);
        let x = left + i as f64 * step + (step - bar_w) / 2.0;
        let y = top + plot_h - h;
        let fill = if marked.contains(&i) { "#c0392b" } else { "#2c7fb8" };
        writeln!(
            svg,
            r#"<rect x="{x:.2}" y="{y:.2}" width="{bar_w:.2}" height="{h:.2}" fill="{fill}"><title>|{}&gt; {p:.5}</title></rect>"#,
            label(i, width)
        )
        .unwrap();
        if show_labels {
            let cx = x + bar_w / 2.0;
            let cy = top + plot_h + 14.0;
            writeln!(
                svg,
                r#"<text x="{cx:.2}" y="{cy:.2}" text-anchor="end" transform="rotate(-45 {cx:.2} {cy:.2})">{}</text>"#,
                label(i, width)
            )
            .unwrap();
        }
    }
    writeln!(svg, r#"<line x1="{left}" y1="{0}" x2="{1}" y2="{0}" stroke="black"/>"#, top + plot_h, left + plot_w)
        .unwrap();
    writeln!(
        svg,
        r#"<text x="16" y="{}" transform="rotate(-90 16 {})" text-anchor="middle">probability</text>"#,
        top + plot_h / 2.0,
        top + plot_h / 2.0
    )
    .unwrap();
    svg.push_str("</svg>\n");
    svg
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn text_marks_and_scales() {
        let d = Distribution::new(vec![0.25, 0.5, 0.125, 0.125]).unwrap();
        let text = text_histogram(&d, &[1], 8);
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines.len(), 4);
        assert!(lines[1].starts_with("|01> *"));
        assert!(lines[1].ends_with("########"));
        assert!(lines[0].ends_with(" ####"));
    }

    #[test]
    fn svg_has_one_bar_per_outcome() {
        let d = Distribution::uniform(8);
        let svg = svg_histogram("a < b", &d, &[2]);
        assert!(svg.starts_with("<svg"));
        assert!(svg.trim_end().ends_with("</svg>"));
        assert_eq!(svg.matches("<title>").count(), 8);
        assert_eq!(svg.matches("#c0392b").count(), 1);
        assert!(svg.contains("a &lt; b"));
    }
}
