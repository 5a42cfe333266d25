//! Standalone SVG 1.1 emitters: per-cell heatmaps with a colorbar for 2-D
//! grids and polyline plots for 1-D sweeps. Display-only convenience; the
//! CSV tables are the canonical artifact.

use std::fmt::Write as _;

use ptmcom_core::{SweepQuantity, SweepResult};

use crate::config::ChannelChoice;
use crate::error::{CliError, CliResult};

/// Linear color ramp through five anchor colors (dark violet to yellow),
/// interpolated component-wise in RGB; t in [0, 1].
fn ramp(t: f64) -> (u8, u8, u8) {
    const STOPS: [(f64, [f64; 3]); 5] = [
        (0.00, [68.0, 1.0, 84.0]),
        (0.25, [59.0, 82.0, 139.0]),
        (0.50, [33.0, 145.0, 140.0]),
        (0.75, [94.0, 201.0, 98.0]),
        (1.00, [253.0, 231.0, 37.0]),
    ];
    let t = t.clamp(0.0, 1.0);
    let mut lo = STOPS[0];
    let mut hi = STOPS[STOPS.len() - 1];
    for w in STOPS.windows(2) {
        if t >= w[0].0 && t <= w[1].0 {
            lo = w[0];
            hi = w[1];
            break;
        }
    }
    let f = if hi.0 > lo.0 { (t - lo.0) / (hi.0 - lo.0) } else { 0.0 };
    let c = |k: usize| (lo.1[k] + f * (hi.1[k] - lo.1[k])).round() as u8;
    (c(0), c(1), c(2))
}

fn color_hex(t: f64) -> String {
    let (r, g, b) = ramp(t);
    format!("#{r:02x}{g:02x}{b:02x}")
}

const MARGIN_LEFT: f64 = 70.0;
const MARGIN_BOTTOM: f64 = 50.0;
const MARGIN_TOP: f64 = 30.0;
const PLOT_W: f64 = 480.0;
const PLOT_H: f64 = 360.0;
const BAR_W: f64 = 18.0;
const BAR_GAP: f64 = 25.0;
const BAR_LABELS: f64 = 70.0;

fn svg_header(width: f64, height: f64) -> String {
    format!(
        "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n<svg xmlns=\"http://www.w3.org/2000/svg\" \
         version=\"1.1\" width=\"{width}\" height=\"{height}\" \
         viewBox=\"0 0 {width} {height}\">\n\
         <defs><pattern id=\"hatch\" width=\"6\" height=\"6\" patternUnits=\"userSpaceOnUse\" \
         patternTransform=\"rotate(45)\"><rect width=\"6\" height=\"6\" fill=\"#d8d8d8\"/>\
         <line x1=\"0\" y1=\"0\" x2=\"0\" y2=\"6\" stroke=\"#707070\" stroke-width=\"2\"/>\
         </pattern></defs>\n"
    )
}

fn text(x: f64, y: f64, anchor: &str, size: f64, s: &str) -> String {
    format!(
        "<text x=\"{x:.1}\" y=\"{y:.1}\" text-anchor=\"{anchor}\" \
         font-family=\"sans-serif\" font-size=\"{size}\">{s}</text>\n"
    )
}

fn fmt_tick(v: f64) -> String {
    if v == 0.0 {
        return "0".to_string();
    }
    let a = v.abs();
    if a >= 1e4 || a < 1e-3 {
        format!("{v:.2e}")
    } else {
        let s = format!("{v:.4}");
        s.trim_end_matches('0').trim_end_matches('.').to_string()
    }
}

/// Heatmap of a 2-D sweep: one rectangle per cell, unstable cells hatched,
/// colorbar annotated with the data minimum and maximum.
pub fn heatmap_svg(result: &SweepResult, channel: ChannelChoice) -> CliResult<String> {
    if result.axis2.is_none() || result.values2.is_empty() {
        return Err(CliError::Config(
            "heatmap needs a 2-D sweep; use the line-plot emitter for 1-D data".into(),
        ));
    }
    let n1 = result.values1.len();
    let n2 = result.values2.len();

    let mut vmin = f64::INFINITY;
    let mut vmax = f64::NEG_INFINITY;
    for rec in &result.records {
        if let Some(v) = channel.extract(rec) {
            vmin = vmin.min(v);
            vmax = vmax.max(v);
        }
    }
    if !vmin.is_finite() {
        vmin = 0.0;
        vmax = 0.0;
    }
    let span = vmax - vmin;

    let width = MARGIN_LEFT + PLOT_W + BAR_GAP + BAR_W + BAR_LABELS;
    let height = MARGIN_TOP + PLOT_H + MARGIN_BOTTOM;
    let mut out = svg_header(width, height);
    let _ = write!(
        out,
        "<rect x=\"0\" y=\"0\" width=\"{width}\" height=\"{height}\" fill=\"white\"/>\n"
    );
    out.push_str(&text(
        MARGIN_LEFT + PLOT_W / 2.0,
        MARGIN_TOP - 10.0,
        "middle",
        14.0,
        channel.name(),
    ));

    // Cells: axis1 along x, axis2 along y (origin bottom-left).
    let cw = PLOT_W / n1 as f64;
    let ch = PLOT_H / n2 as f64;
    for i1 in 0..n1 {
        for i2 in 0..n2 {
            let rec = result.record(i1, i2);
            let x = MARGIN_LEFT + i1 as f64 * cw;
            let y = MARGIN_TOP + PLOT_H - (i2 + 1) as f64 * ch;
            let fill = if rec.stable {
                match channel.extract(rec) {
                    Some(v) => {
                        let t = if span > 0.0 { (v - vmin) / span } else { 0.5 };
                        color_hex(t)
                    }
                    None => "url(#hatch)".to_string(),
                }
            } else {
                "url(#hatch)".to_string()
            };
            let _ = write!(
                out,
                "<rect x=\"{x:.2}\" y=\"{y:.2}\" width=\"{:.2}\" height=\"{:.2}\" fill=\"{fill}\"/>\n",
                cw + 0.3,
                ch + 0.3
            );
        }
    }

    // Frame and axis annotations.
    let _ = write!(
        out,
        "<rect x=\"{MARGIN_LEFT}\" y=\"{MARGIN_TOP}\" width=\"{PLOT_W}\" height=\"{PLOT_H}\" \
         fill=\"none\" stroke=\"black\" stroke-width=\"1\"/>\n"
    );
    out.push_str(&text(
        MARGIN_LEFT + PLOT_W / 2.0,
        MARGIN_TOP + PLOT_H + 35.0,
        "middle",
        13.0,
        result.axis1.parameter.name(),
    ));
    let _ = write!(
        out,
        "<text x=\"18\" y=\"{:.1}\" text-anchor=\"middle\" font-family=\"sans-serif\" \
         font-size=\"13\" transform=\"rotate(-90 18 {:.1})\">{}</text>\n",
        MARGIN_TOP + PLOT_H / 2.0,
        MARGIN_TOP + PLOT_H / 2.0,
        result.axis2.as_ref().unwrap().parameter.name()
    );
    out.push_str(&text(
        MARGIN_LEFT,
        MARGIN_TOP + PLOT_H + 16.0,
        "middle",
        11.0,
        &fmt_tick(result.values1[0]),
    ));
    out.push_str(&text(
        MARGIN_LEFT + PLOT_W,
        MARGIN_TOP + PLOT_H + 16.0,
        "middle",
        11.0,
        &fmt_tick(result.values1[n1 - 1]),
    ));
    out.push_str(&text(
        MARGIN_LEFT - 6.0,
        MARGIN_TOP + PLOT_H,
        "end",
        11.0,
        &fmt_tick(result.values2[0]),
    ));
    out.push_str(&text(
        MARGIN_LEFT - 6.0,
        MARGIN_TOP + 10.0,
        "end",
        11.0,
        &fmt_tick(result.values2[n2 - 1]),
    ));

    // Colorbar: 64 vertical segments, value increasing upward.
    let bx = MARGIN_LEFT + PLOT_W + BAR_GAP;
    let segments = 64;
    let seg_h = PLOT_H / segments as f64;
    for k in 0..segments {
        let t = (k as f64 + 0.5) / segments as f64;
        let y = MARGIN_TOP + PLOT_H - (k + 1) as f64 * seg_h;
        let _ = write!(
            out,
            "<rect x=\"{bx:.2}\" y=\"{y:.2}\" width=\"{BAR_W}\" height=\"{:.2}\" fill=\"{}\"/>\n",
            seg_h + 0.3,
            color_hex(t)
        );
    }
    let _ = write!(
        out,
        "<rect x=\"{bx}\" y=\"{MARGIN_TOP}\" width=\"{BAR_W}\" height=\"{PLOT_H}\" \
         fill=\"none\" stroke=\"black\" stroke-width=\"1\"/>\n"
    );
    out.push_str(&text(bx + BAR_W + 6.0, MARGIN_TOP + PLOT_H, "start", 11.0, &fmt_tick(vmin)));
    out.push_str(&text(bx + BAR_W + 6.0, MARGIN_TOP + 10.0, "start", 11.0, &fmt_tick(vmax)));

    out.push_str("</svg>\n");
    Ok(out)
}

/// Line plot of a 1-D sweep. Eigenvalue sweeps draw the four spectral
/// branches; other quantities draw the selected channel.
pub fn line_plot_svg(result: &SweepResult, channel: ChannelChoice) -> CliResult<String> {
    if result.axis2.is_some() {
        return Err(CliError::Config("line plot needs a 1-D sweep; use the heatmap".into()));
    }
    if result.records.is_empty() {
        return Err(CliError::Config("nothing to plot: no records".into()));
    }

    let series: Vec<(String, String, Vec<Option<f64>>)> = if result.quantity
        == SweepQuantity::Eigenvalues
    {
        let grab = |f: fn(&ptmcom_core::PtPhase) -> f64| -> Vec<Option<f64>> {
            result.records.iter().map(|r| r.pt_phase.as_ref().map(f)).collect()
        };
        vec![
            ("Re lambda+".into(), "#1b7837".into(), grab(|p| p.lambda_plus.re)),
            ("Re lambda-".into(), "#5aae61".into(), grab(|p| p.lambda_minus.re)),
            ("Im lambda+".into(), "#762a83".into(), grab(|p| p.lambda_plus.im)),
            ("Im lambda-".into(), "#9970ab".into(), grab(|p| p.lambda_minus.im)),
        ]
    } else {
        vec![(
            channel.name().to_string(),
            "#2166ac".into(),
            result.records.iter().map(|r| channel.extract(r)).collect(),
        )]
    };

    let xs = &result.values1;
    let (xmin, xmax) = (xs[0], xs[xs.len() - 1]);
    let mut ymin = f64::INFINITY;
    let mut ymax = f64::NEG_INFINITY;
    for (_, _, ys) in &series {
        for v in ys.iter().flatten() {
            ymin = ymin.min(*v);
            ymax = ymax.max(*v);
        }
    }
    if !ymin.is_finite() {
        ymin = 0.0;
        ymax = 1.0;
    }
    if ymax == ymin {
        ymax = ymin + 1.0;
    }

    let width = MARGIN_LEFT + PLOT_W + 130.0;
    let height = MARGIN_TOP + PLOT_H + MARGIN_BOTTOM;
    let to_x = |v: f64| MARGIN_LEFT + (v - xmin) / (xmax - xmin).max(1e-300) * PLOT_W;
    let to_y = |v: f64| MARGIN_TOP + PLOT_H - (v - ymin) / (ymax - ymin) * PLOT_H;

    let mut out = svg_header(width, height);
    let _ = write!(
        out,
        "<rect x=\"0\" y=\"0\" width=\"{width}\" height=\"{height}\" fill=\"white\"/>\n\
         <rect x=\"{MARGIN_LEFT}\" y=\"{MARGIN_TOP}\" width=\"{PLOT_W}\" height=\"{PLOT_H}\" \
         fill=\"none\" stroke=\"black\" stroke-width=\"1\"/>\n"
    );
    for (idx, (label, color, ys)) in series.iter().enumerate() {
        let mut path = String::new();
        let mut pen_down = false;
        for (x, y) in xs.iter().zip(ys) {
            match y {
                Some(v) => {
                    let cmd = if pen_down { 'L' } else { 'M' };
                    let _ = write!(path, "{cmd}{:.2} {:.2} ", to_x(*x), to_y(*v));
                    pen_down = true;
                }
                None => pen_down = false,
            }
        }
        if !path.is_empty() {
            let _ = write!(
                out,
                "<path d=\"{}\" fill=\"none\" stroke=\"{color}\" stroke-width=\"1.6\"/>\n",
                path.trim_end()
            );
        }
        let ly = MARGIN_TOP + 16.0 + 18.0 * idx as f64;
        let lx = MARGIN_LEFT + PLOT_W + 12.0;
        let _ = write!(
            out,
            "<line x1=\"{lx}\" y1=\"{:.1}\" x2=\"{:.1}\" y2=\"{:.1}\" stroke=\"{color}\" \
             stroke-width=\"2\"/>\n",
            ly - 4.0,
            lx + 18.0,
            ly - 4.0
        );
        out.push_str(&text(lx + 24.0, ly, "start", 11.0, label));
    }
    out.push_str(&text(
        MARGIN_LEFT + PLOT_W / 2.0,
        MARGIN_TOP + PLOT_H + 35.0,
        "middle",
        13.0,
        result.axis1.parameter.name(),
    ));
    out.push_str(&text(MARGIN_LEFT, MARGIN_TOP + PLOT_H + 16.0, "middle", 11.0, &fmt_tick(xmin)));
    out.push_str(&text(
        MARGIN_LEFT + PLOT_W,
        MARGIN_TOP + PLOT_H + 16.0,
        "middle",
        11.0,
        &fmt_tick(xmax),
    ));
    out.push_str(&text(MARGIN_LEFT - 6.0, MARGIN_TOP + PLOT_H, "end", 11.0, &fmt_tick(ymin)));
    out.push_str(&text(MARGIN_LEFT - 6.0, MARGIN_TOP + 10.0, "end", 11.0, &fmt_tick(ymax)));
    out.push_str("</svg>\n");
    Ok(out)
}
