//! Standalone SVG line charts of sweep results.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::str::FromStr;

use super::sweep::{normalized_params, SweepRow};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PlotKind {
    /// Minimum objective over the best-known value.
    Objective,
    /// Diversity over its upper bound.
    Diversity,
}

impl FromStr for PlotKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "objective" => Ok(PlotKind::Objective),
            "diversity" => Ok(PlotKind::Diversity),
            other => Err(Error::invalid(format!("unknown plot kind {other:?}"))),
        }
    }
}

const W: f64 = 640.0;
const H: f64 = 400.0;
const LEFT: f64 = 60.0;
const RIGHT: f64 = 200.0;
const TOP: f64 = 30.0;
const BOTTOM: f64 = 50.0;
const COLORS: [&str; 8] = [
    "#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#17becf", "#8c564b", "#e377c2",
];

struct Series {
    label: String,
    points: Vec<(f64, f64)>,
}

fn series(rows: &[SweepRow], kind: PlotKind) -> Vec<Series> {
    let t = normalized_params(rows);
    let mut groups: BTreeMap<(String, String, usize, &'static str), Vec<usize>> = BTreeMap::new();
    for (i, row) in rows.iter().enumerate() {
        groups
            .entry((row.graph.clone(), row.constraint.clone(), row.r, row.algo.as_str()))
            .or_default()
            .push(i);
    }
    let graphs: std::collections::BTreeSet<&str> = rows.iter().map(|r| r.graph.as_str()).collect();
    groups
        .into_iter()
        .map(|((graph, constraint, r, algo), idx)| {
            let mut label = format!("{algo} {constraint} r={r}");
            if graphs.len() > 1 {
                label = format!("{graph} {label}");
            }
            let denom = match kind {
                PlotKind::Objective => {
                    let known = rows[idx[0]].best_known;
                    if known > 0 {
                        known as f64
                    } else {
                        label.push_str(" (vs max observed)");
                        idx.iter().map(|&i| rows[i].min_f).max().unwrap_or(0) as f64
                    }
                }
                PlotKind::Diversity => rows[idx[0]].ss_bound as f64,
            };
            let mut points: Vec<(f64, f64)> = idx
                .iter()
                .map(|&i| {
                    let y = match kind {
                        PlotKind::Objective => rows[i].min_f as f64,
                        PlotKind::Diversity => rows[i].ss as f64,
                    };
                    (t[i], if denom > 0.0 { y / denom } else { 0.0 })
                })
                .collect();
            points.sort_by(|a, b| a.0.total_cmp(&b.0));
            Series { label, points }
        })
        .collect()
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

/// Renders one line per (graph, constraint, algorithm, r) series. The x-axis
/// is the parameter scaled to `[0, 1]` within its series, so `b ∈ [0, rank]`
/// and `l ∈ [1, r]` overlay.
pub fn emit_plot(rows: &[SweepRow], kind: PlotKind) -> Result<String> {
    if rows.is_empty() {
        return Err(Error::invalid("nothing to plot"));
    }
    let all = series(rows, kind);
    let ymax = all
        .iter()
        .flat_map(|s| s.points.iter().map(|p| p.1))
        .fold(1.0f64, f64::max);
    let pw = W - LEFT - RIGHT;
    let ph = H - TOP - BOTTOM;
    let sx = |x: f64| LEFT + x * pw;
    let sy = |y: f64| TOP + ph - y / ymax * ph;
    let title = match kind {
        PlotKind::Objective => "minimum objective / best known",
        PlotKind::Diversity => "ss / upper bound",
    };
    let mut svg = String::new();
    let _ = writeln!(
        svg,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{W}" height="{H}" viewBox="0 0 {W} {H}" font-family="sans-serif" font-size="12">"#
    );
    let _ = writeln!(svg, r#"<rect width="{W}" height="{H}" fill="white"/>"#);
    let _ = writeln!(svg, r#"<text x="{LEFT}" y="18">{title}</text>"#);
    let _ = writeln!(
        svg,
        r#"<rect x="{LEFT}" y="{TOP}" width="{pw}" height="{ph}" fill="none" stroke="black"/>"#
    );
    for i in 0..=4 {
        let frac = i as f64 / 4.0;
        let (x, y) = (sx(frac), sy(frac * ymax));
        let _ = writeln!(
            svg,
            r#"<text x="{x:.1}" y="{:.1}" text-anchor="middle">{frac:.2}</text>"#,
            TOP + ph + 16.0
        );
        let _ = writeln!(
            svg,
            r#"<text x="{:.1}" y="{:.1}" text-anchor="end">{:.2}</text>"#,
            LEFT - 6.0,
            y + 4.0,
            frac * ymax
        );
    }
    let _ = writeln!(
        svg,
        r#"<text x="{:.1}" y="{:.1}" text-anchor="middle">normalized parameter</text>"#,
        LEFT + pw / 2.0,
        H - 10.0
    );
    for (k, s) in all.iter().enumerate() {
        let color = COLORS[k % COLORS.len()];
        let pts: Vec<String> = s
            .points
            .iter()
            .map(|&(x, y)| format!("{:.1},{:.1}", sx(x), sy(y)))
            .collect();
        if pts.len() > 1 {
            let _ = writeln!(
                svg,
                r#"<polyline points="{}" fill="none" stroke="{color}" stroke-width="1.5"/>"#,
                pts.join(" ")
            );
        }
        for &(x, y) in &s.points {
            let _ = writeln!(
                svg,
                r#"<circle cx="{:.1}" cy="{:.1}" r="2.5" fill="{color}"/>"#,
                sx(x),
                sy(y)
            );
        }
        let ly = TOP + 14.0 + 16.0 * k as f64;
        let lx = W - RIGHT + 10.0;
        let _ = writeln!(
            svg,
            r#"<line x1="{lx}" y1="{:.1}" x2="{:.1}" y2="{:.1}" stroke="{color}" stroke-width="2"/>"#,
            ly - 4.0,
            lx + 16.0,
            ly - 4.0
        );
        let _ = writeln!(
            svg,
            r#"<text x="{:.1}" y="{ly:.1}">{}</text>"#,
            lx + 22.0,
            escape(&s.label)
        );
    }
    svg.push_str("</svg>\n");
    Ok(svg)
}
