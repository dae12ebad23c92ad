//! Minimal SVG chart: one group per axis point, one marker with a
//! confidence-interval error bar per algorithm.

use std::fmt::Write as _;
use std::path::Path;

use super::BenchReport;
use crate::error::{Error, Result};

const WIDTH: f64 = 720.0;
const HEIGHT: f64 = 420.0;
const LEFT: f64 = 70.0;
const RIGHT: f64 = 170.0;
const TOP: f64 = 30.0;
const BOTTOM: f64 = 50.0;
const PALETTE: [&str; 6] = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#17becf"];

fn distinct<'a>(it: impl Iterator<Item = &'a str>) -> Vec<&'a str> {
    let mut out: Vec<&str> = Vec::new();
    for s in it {
        if !out.contains(&s) {
            out.push(s);
        }
    }
    out
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

pub fn to_svg(report: &BenchReport) -> Result<String> {
    if report.is_empty() {
        return Err(Error::EmptyReport);
    }
    let axes = distinct(report.rows.iter().map(|r| r.axis.as_str()));
    let algos = distinct(report.rows.iter().map(|r| r.algorithm.as_str()));
    let metric = report.rows[0].metric.as_str();

    let lo = report.rows.iter().map(|r| r.ci_low()).fold(f64::INFINITY, f64::min);
    let hi = report.rows.iter().map(|r| r.ci_high()).fold(f64::NEG_INFINITY, f64::max);
    let pad = ((hi - lo) * 0.1).max(hi.abs() * 0.01).max(1e-6);
    let (lo, hi) = (lo - pad, hi + pad);

    let plot_w = WIDTH - LEFT - RIGHT;
    let plot_h = HEIGHT - TOP - BOTTOM;
    let y = |v: f64| TOP + plot_h * (hi - v) / (hi - lo);
    let group_w = plot_w / axes.len() as f64;
    let x = |ai: usize, gi: usize| {
        LEFT + group_w * ai as f64 + group_w * (gi as f64 + 1.0) / (algos.len() as f64 + 1.0)
    };

    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}" font-family="sans-serif" font-size="12">"#
    );
    let _ = writeln!(s, r#"<rect width="100%" height="100%" fill="white"/>"#);
    let _ = writeln!(
        s,
        r#"<line x1="{LEFT}" y1="{TOP}" x2="{LEFT}" y2="{:.2}" stroke="black"/>"#,
        TOP + plot_h
    );
    let _ = writeln!(
        s,
        r#"<line x1="{LEFT}" y1="{0:.2}" x2="{1:.2}" y2="{0:.2}" stroke="black"/>"#,
        TOP + plot_h,
        LEFT + plot_w
    );
    for k in 0..=5 {
        let v = lo + (hi - lo) * k as f64 / 5.0;
        let yy = y(v);
        let _ = writeln!(
            s,
            r##"<line x1="{0}" y1="{yy:.2}" x2="{1:.2}" y2="{yy:.2}" stroke="#dddddd"/><text x="{2}" y="{3:.2}" text-anchor="end">{v:.3}</text>"##,
            LEFT,
            LEFT + plot_w,
            LEFT - 6.0,
            yy + 4.0
        );
    }
    let _ = writeln!(
        s,
        r#"<text x="16" y="{:.2}" transform="rotate(-90 16 {:.2})" text-anchor="middle">{metric}</text>"#,
        TOP + plot_h / 2.0,
        TOP + plot_h / 2.0
    );
    for (ai, a) in axes.iter().enumerate() {
        let _ = writeln!(
            s,
            r#"<text x="{:.2}" y="{:.2}" text-anchor="middle">{}</text>"#,
            LEFT + group_w * (ai as f64 + 0.5),
            TOP + plot_h + 20.0,
            escape(a)
        );
    }
    for row in &report.rows {
        let ai = axes.iter().position(|a| *a == row.axis).expect("axis listed");
        let gi = algos.iter().position(|a| *a == row.algorithm).expect("algorithm listed");
        let color = PALETTE[gi % PALETTE.len()];
        let xx = x(ai, gi);
        let (y0, y1, ym) = (y(row.ci_low()), y(row.ci_high()), y(row.mean));
        let _ = writeln!(
            s,
            r#"<g stroke="{color}"><line x1="{xx:.2}" y1="{y0:.2}" x2="{xx:.2}" y2="{y1:.2}"/><line x1="{0:.2}" y1="{y0:.2}" x2="{1:.2}" y2="{y0:.2}"/><line x1="{0:.2}" y1="{y1:.2}" x2="{1:.2}" y2="{y1:.2}"/></g><circle cx="{xx:.2}" cy="{ym:.2}" r="3.5" fill="{color}"><title>{2} {3}: {4:.6} ± {5:.6}</title></circle>"#,
            xx - 4.0,
            xx + 4.0,
            escape(&row.axis),
            escape(&row.algorithm),
            row.mean,
            row.ci_half_width
        );
    }
    for (gi, a) in algos.iter().enumerate() {
        let yy = TOP + 10.0 + 18.0 * gi as f64;
        let xx = WIDTH - RIGHT + 20.0;
        let _ = writeln!(
            s,
            r#"<circle cx="{xx:.2}" cy="{yy:.2}" r="4" fill="{}"/><text x="{:.2}" y="{:.2}">{}</text>"#,
            PALETTE[gi % PALETTE.len()],
            xx + 10.0,
            yy + 4.0,
            escape(a)
        );
    }
    s.push_str("</svg>\n");
    Ok(s)
}

pub fn emit_chart(report: &BenchReport, path: &Path) -> Result<()> {
    std::fs::write(path, to_svg(report)?)?;
    Ok(())
}
