//! Minimal self-contained SVG line charts for the analysis figures.

use std::fmt::Write;

/// One plotted series: (x, y, sd) triples, sd drawn as an error bar.
#[derive(Debug, Clone, PartialEq)]
pub struct Series {
    pub name: String,
    pub points: Vec<(f64, f64, f64)>,
}

const WIDTH: f64 = 640.0;
const HEIGHT: f64 = 440.0;
const MARGIN_LEFT: f64 = 72.0;
const MARGIN_RIGHT: f64 = 24.0;
const MARGIN_TOP: f64 = 48.0;
const MARGIN_BOTTOM: f64 = 56.0;
const COLORS: [&str; 2] = ["#1f6fb4", "#d1495b"];

fn nice_step(range: f64) -> f64 {
    let raw = range / 5.0;
    let mag = 10f64.powf(raw.log10().floor());
    let norm = raw / mag;
    let step = if norm < 1.5 {
        1.0
    } else if norm < 3.5 {
        2.0
    } else if norm < 7.5 {
        5.0
    } else {
        10.0
    };
    step * mag
}

fn fmt_tick(v: f64) -> String {
    if v == 0.0 {
        return "0".into();
    }
    let s = format!("{:.3}", v);
    let s = s.trim_end_matches('0').trim_end_matches('.');
    if s.is_empty() {
        "0".into()
    } else {
        s.to_string()
    }
}

/// Render a line chart with markers, error bars and a legend.
pub fn line_chart(title: &str, x_label: &str, y_label: &str, series: &[Series]) -> String {
    let plot_w = WIDTH - MARGIN_LEFT - MARGIN_RIGHT;
    let plot_h = HEIGHT - MARGIN_TOP - MARGIN_BOTTOM;

    let xs: Vec<f64> = series.iter().flat_map(|s| s.points.iter().map(|p| p.0)).collect();
    let lows: Vec<f64> = series
        .iter()
        .flat_map(|s| s.points.iter().map(|p| p.1 - p.2))
        .collect();
    let highs: Vec<f64> = series
        .iter()
        .flat_map(|s| s.points.iter().map(|p| p.1 + p.2))
        .collect();

    let (x_min, x_max) = bounds(&xs, 0.0, 1.0);
    let (mut y_min, mut y_max) = bounds(
        &lows.iter().chain(&highs).copied().collect::<Vec<_>>(),
        0.0,
        1.0,
    );
    if (y_max - y_min).abs() < 1e-12 {
        y_min -= 0.5;
        y_max += 0.5;
    }
    let y_pad = (y_max - y_min) * 0.08;
    y_min -= y_pad;
    y_max += y_pad;

    let to_x = |x: f64| MARGIN_LEFT + (x - x_min) / (x_max - x_min) * plot_w;
    let to_y = |y: f64| MARGIN_TOP + (1.0 - (y - y_min) / (y_max - y_min)) * plot_h;

    let mut out = String::new();
    let _ = writeln!(
        out,
        r##"<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}" font-family="sans-serif">"##
    );
    let _ = writeln!(out, r##"<rect width="{WIDTH}" height="{HEIGHT}" fill="white"/>"##);
    let _ = writeln!(
        out,
        r##"<text x="{:.1}" y="24" text-anchor="middle" font-size="16">{}</text>"##,
        MARGIN_LEFT + plot_w / 2.0,
        title
    );

    // Axes box.
    let _ = writeln!(
        out,
        r##"<rect x="{MARGIN_LEFT}" y="{MARGIN_TOP}" width="{plot_w}" height="{plot_h}" fill="none" stroke="#444" stroke-width="1"/>"##,
    );

    // Y ticks and gridlines.
    let y_step = nice_step(y_max - y_min);
    let mut tick = (y_min / y_step).ceil() * y_step;
    while tick <= y_max + 1e-12 {
        let y = to_y(tick);
        let _ = writeln!(
            out,
            r##"<line x1="{MARGIN_LEFT}" y1="{y:.1}" x2="{:.1}" y2="{y:.1}" stroke="#ddd" stroke-width="0.6"/>"##,
            MARGIN_LEFT + plot_w
        );
        let _ = writeln!(
            out,
            r##"<text x="{:.1}" y="{:.1}" text-anchor="end" font-size="11">{}</text>"##,
            MARGIN_LEFT - 6.0,
            y + 3.5,
            fmt_tick(tick)
        );
        tick += y_step;
    }

    // X ticks at the data levels.
    let mut x_ticks: Vec<f64> = xs.clone();
    x_ticks.sort_by(|a, b| a.partial_cmp(b).unwrap());
    x_ticks.dedup();
    for &x in &x_ticks {
        let px = to_x(x);
        let _ = writeln!(
            out,
            r##"<line x1="{px:.1}" y1="{:.1}" x2="{px:.1}" y2="{:.1}" stroke="#444" stroke-width="1"/>"##,
            MARGIN_TOP + plot_h,
            MARGIN_TOP + plot_h + 5.0
        );
        let _ = writeln!(
            out,
            r##"<text x="{px:.1}" y="{:.1}" text-anchor="middle" font-size="11">{}</text>"##,
            MARGIN_TOP + plot_h + 18.0,
            fmt_tick(x)
        );
    }

    // Axis labels.
    let _ = writeln!(
        out,
        r##"<text x="{:.1}" y="{:.1}" text-anchor="middle" font-size="13">{}</text>"##,
        MARGIN_LEFT + plot_w / 2.0,
        HEIGHT - 14.0,
        x_label
    );
    let _ = writeln!(
        out,
        r##"<text x="18" y="{:.1}" text-anchor="middle" font-size="13" transform="rotate(-90 18 {:.1})">{}</text>"##,
        MARGIN_TOP + plot_h / 2.0,
        MARGIN_TOP + plot_h / 2.0,
        y_label
    );

    for (si, s) in series.iter().enumerate() {
        let color = COLORS[si % COLORS.len()];
        // Error bars.
        for &(x, y, sd) in &s.points {
            if sd > 0.0 {
                let px = to_x(x);
                let _ = writeln!(
                    out,
                    r##"<line x1="{px:.1}" y1="{:.1}" x2="{px:.1}" y2="{:.1}" stroke="{color}" stroke-width="1" opacity="0.7"/>"##,
                    to_y(y - sd),
                    to_y(y + sd)
                );
            }
        }
        // Polyline through the means.
        let path: Vec<String> = s
            .points
            .iter()
            .map(|&(x, y, _)| format!("{:.1},{:.1}", to_x(x), to_y(y)))
            .collect();
        let _ = writeln!(
            out,
            r##"<polyline points="{}" fill="none" stroke="{color}" stroke-width="1.8"/>"##,
            path.join(" ")
        );
        for &(x, y, _) in &s.points {
            let _ = writeln!(
                out,
                r##"<circle cx="{:.1}" cy="{:.1}" r="3.2" fill="{color}"/>"##,
                to_x(x),
                to_y(y)
            );
        }
        // Legend entry.
        let lx = MARGIN_LEFT + plot_w - 110.0;
        let ly = MARGIN_TOP + 16.0 + si as f64 * 18.0;
        let _ = writeln!(
            out,
            r##"<line x1="{lx:.1}" y1="{ly:.1}" x2="{:.1}" y2="{ly:.1}" stroke="{color}" stroke-width="2"/>"##,
            lx + 22.0
        );
        let _ = writeln!(
            out,
            r##"<text x="{:.1}" y="{:.1}" font-size="12">{}</text>"##,
            lx + 28.0,
            ly + 4.0,
            s.name
        );
    }

    out.push_str("</svg>\n");
    out
}

fn bounds(values: &[f64], fallback_min: f64, fallback_max: f64) -> (f64, f64) {
    if values.is_empty() {
        return (fallback_min, fallback_max);
    }
    let min = values.iter().copied().fold(f64::INFINITY, f64::min);
    let max = values.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    (min, max)
}
