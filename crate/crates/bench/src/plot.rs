//! Minimal SVG line charts: one line per series through the mean, with a shaded min/max band.

use std::collections::BTreeMap;
use std::fmt::Write;

use crate::bench::{BenchRow, SweepParam};

const WIDTH: f64 = 640.0;
const HEIGHT: f64 = 400.0;
const LEFT: f64 = 70.0;
const RIGHT: f64 = 180.0;
const TOP: f64 = 40.0;
const BOTTOM: f64 = 50.0;
const COLORS: [&str; 8] = ["#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd", "#8c564b", "#e377c2", "#7f7f7f"];

/// Summary of one series at one x value.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Point {
    pub x: f64,
    pub mean: f64,
    pub min: f64,
    pub max: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Series {
    pub label: String,
    pub points: Vec<Point>,
}

/// Groups `(label, x, y)` samples into series sorted by x, keeping label order of first appearance.
pub fn summarize(samples: impl IntoIterator<Item = (String, f64, f64)>) -> Vec<Series> {
    let mut order: Vec<String> = Vec::new();
    let mut groups: BTreeMap<(usize, u64), Vec<f64>> = BTreeMap::new();
    let mut xs: BTreeMap<u64, f64> = BTreeMap::new();
    for (label, x, y) in samples {
        let li = order.iter().position(|l| *l == label).unwrap_or_else(|| {
            order.push(label);
            order.len() - 1
        });
        // order-preserving key for non-negative and negative floats alike
        let bits = x.to_bits();
        let key = if x.is_sign_negative() { !bits } else { bits | (1 << 63) };
        xs.insert(key, x);
        groups.entry((li, key)).or_default().push(y);
    }
    order
        .into_iter()
        .enumerate()
        .map(|(li, label)| {
            let points = groups
                .range((li, 0)..=(li, u64::MAX))
                .map(|(&(_, key), ys)| Point {
                    x: xs[&key],
                    mean: ys.iter().sum::<f64>() / ys.len() as f64,
                    min: ys.iter().copied().fold(f64::INFINITY, f64::min),
                    max: ys.iter().copied().fold(f64::NEG_INFINITY, f64::max),
                })
                .collect();
            Series { label, points }
        })
        .collect()
}

fn fmt_tick(v: f64) -> String {
    if v.abs() >= 100.0 || v.fract() == 0.0 {
        format!("{v:.0}")
    } else {
        let s = format!("{v:.3}");
        s.trim_end_matches('0').trim_end_matches('.').to_string()
    }
}

/// Renders a chart. With `log_y`, values are drawn on a base-10 scale and must be positive.
pub fn line_chart(title: &str, x_label: &str, y_label: &str, series: &[Series], log_y: bool) -> String {
    let pts = || series.iter().flat_map(|s| s.points.iter());
    let tf = |v: f64| if log_y { v.max(1e-6).log10() } else { v };
    let (mut x0, mut x1) = pts().fold((f64::INFINITY, f64::NEG_INFINITY), |(a, b), p| (a.min(p.x), b.max(p.x)));
    let (mut y0, mut y1) =
        pts().fold((f64::INFINITY, f64::NEG_INFINITY), |(a, b), p| (a.min(tf(p.min)), b.max(tf(p.max))));
    if !x0.is_finite() {
        (x0, x1, y0, y1) = (0.0, 1.0, 0.0, 1.0);
    }
    if x1 - x0 < 1e-12 {
        (x0, x1) = (x0 - 0.5, x1 + 0.5);
    }
    if log_y {
        (y0, y1) = (y0.floor(), y1.ceil().max(y0.floor() + 1.0));
    } else {
        y0 = y0.min(0.0);
        if y1 - y0 < 1e-12 {
            y1 = y0 + 1.0;
        }
    }
    let pw = WIDTH - LEFT - RIGHT;
    let ph = HEIGHT - TOP - BOTTOM;
    let sx = |x: f64| LEFT + (x - x0) / (x1 - x0) * pw;
    let sy = |y: f64| TOP + ph - (tf(y) - y0) / (y1 - y0) * ph;

    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}" font-family="sans-serif" font-size="12">"#
    );
    let _ = writeln!(s, r#"<rect width="{WIDTH}" height="{HEIGHT}" fill="white"/>"#);
    let _ = writeln!(s, r#"<text x="{}" y="24" text-anchor="middle" font-size="14">{}</text>"#, LEFT + pw / 2.0, esc(title));
    let _ = writeln!(
        s,
        r#"<path d="M{LEFT},{TOP} V{} H{}" fill="none" stroke="black"/>"#,
        TOP + ph,
        LEFT + pw
    );

    // x ticks at the data points
    let mut xt: Vec<f64> = pts().map(|p| p.x).collect();
    xt.sort_by(f64::total_cmp);
    xt.dedup();
    for x in xt {
        let _ = writeln!(
            s,
            r#"<text x="{:.1}" y="{:.1}" text-anchor="middle">{}</text>"#,
            sx(x),
            TOP + ph + 16.0,
            fmt_tick(x)
        );
    }
    let ticks: Vec<f64> = if log_y {
        (y0 as i32..=y1 as i32).map(|e| 10f64.powi(e)).collect()
    } else {
        (0..=5).map(|i| y0 + (y1 - y0) * i as f64 / 5.0).collect()
    };
    for y in ticks {
        let _ = writeln!(
            s,
            r#"<line x1="{LEFT}" x2="{0:.1}" y1="{1:.1}" y2="{1:.1}" stroke="lightgray"/><text x="{2:.1}" y="{3:.1}" text-anchor="end">{4}</text>"#,
            LEFT + pw,
            sy(y),
            LEFT - 6.0,
            sy(y) + 4.0,
            fmt_tick(y)
        );
    }
    let _ = writeln!(
        s,
        r#"<text x="{:.1}" y="{:.1}" text-anchor="middle">{}</text>"#,
        LEFT + pw / 2.0,
        HEIGHT - 12.0,
        esc(x_label)
    );
    let _ = writeln!(
        s,
        r#"<text transform="translate(16,{:.1}) rotate(-90)" text-anchor="middle">{}{}</text>"#,
        TOP + ph / 2.0,
        esc(y_label),
        if log_y { " (log)" } else { "" }
    );

    for (i, ser) in series.iter().enumerate() {
        let color = COLORS[i % COLORS.len()];
        let upper = ser.points.iter().map(|p| format!("{:.1},{:.1}", sx(p.x), sy(p.max)));
        let lower = ser.points.iter().rev().map(|p| format!("{:.1},{:.1}", sx(p.x), sy(p.min)));
        let band: Vec<String> = upper.chain(lower).collect();
        let _ = writeln!(s, r#"<polygon class="band" points="{}" fill="{color}" fill-opacity="0.15" stroke="none"/>"#, band.join(" "));
        let line: Vec<String> = ser.points.iter().map(|p| format!("{:.1},{:.1}", sx(p.x), sy(p.mean))).collect();
        let _ = writeln!(s, r#"<polyline class="mean" points="{}" fill="none" stroke="{color}" stroke-width="2"/>"#, line.join(" "));
        for p in &ser.points {
            let _ = writeln!(s, r#"<circle cx="{:.1}" cy="{:.1}" r="3" fill="{color}"/>"#, sx(p.x), sy(p.mean));
        }
        let ly = TOP + 10.0 + 18.0 * i as f64;
        let _ = writeln!(
            s,
            r#"<line x1="{0:.1}" x2="{1:.1}" y1="{ly:.1}" y2="{ly:.1}" stroke="{color}" stroke-width="2"/><text x="{2:.1}" y="{3:.1}">{4}</text>"#,
            WIDTH - RIGHT + 12.0,
            WIDTH - RIGHT + 32.0,
            WIDTH - RIGHT + 38.0,
            ly + 4.0,
            esc(&ser.label)
        );
    }
    s.push_str("</svg>\n");
    s
}

fn esc(text: &str) -> String {
    text.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

fn label(row: &BenchRow, param: SweepParam) -> String {
    match row.record.k {
        Some(k) if param != SweepParam::K => format!("{} (k={k})", row.record.algo),
        _ => row.record.algo.clone(),
    }
}

/// Crossing, ratio and time charts for a bench run, as `(file name, svg)` pairs.
/// Rows without a value for a chart are skipped.
pub fn bench_plots(rows: &[BenchRow], param: SweepParam) -> Vec<(String, String)> {
    let x_label = param.to_string();
    let mut out = Vec::new();
    let mut chart = |file: &str, title: &str, y_label: &str, log: bool, pick: &dyn Fn(&BenchRow) -> Option<f64>| {
        let samples: Vec<_> = rows.iter().filter_map(|r| pick(r).map(|y| (label(r, param), r.x, y))).collect();
        if !samples.is_empty() {
            out.push((file.to_string(), line_chart(title, &x_label, y_label, &summarize(samples), log)));
        }
    };
    chart("crossings.svg", "Crossing count", "crossings", false, &|r| r.record.crossings.map(|c| c as f64));
    chart("ratio_crossings.svg", "Crossing ratio", "crossings / optimum", false, &|r| r.record.ratio_crossings);
    let exact = rows.iter().any(|r| r.record.algo.starts_with("exact") || r.record.algo.starts_with("oracle"));
    chart("time_ms.svg", "Time", "wall time (ms)", exact, &|r| r.record.wall_time_ms);
    chart("ratio_time.svg", "Time ratio", "time / exact time", false, &|r| r.record.ratio_time);
    out
}
