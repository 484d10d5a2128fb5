//! CSV tables and SVG line charts for sweep results.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::fs::File;
use std::path::{Path, PathBuf};

use super::{Axis, CellStatus, SweepMode, SweepResult, SweepRow};
use crate::error::{Error, Result};
use crate::io::{write_atomic, write_string_atomic};

/// Writes one row per cell and repeat: `r,n_t,alpha,beta,repeat,<mode>`.
///
/// Floats use Rust's shortest round-trip formatting, so reading the file
/// back yields bit-identical values (`inf` included).
pub fn write_rows_csv(result: &SweepResult, path: &Path) -> Result<()> {
    write_atomic(path, |w| {
        let mut out = csv::Writer::from_writer(w);
        out.write_record(["r", "n_t", "alpha", "beta", "repeat", result.mode.name()])?;
        for row in &result.rows {
            out.write_record([
                row.r.to_string(),
                row.n_t.to_string(),
                row.alpha.to_string(),
                row.beta.to_string(),
                row.repeat.to_string(),
                row.value.to_string(),
            ])?;
        }
        out.flush()?;
        Ok(())
    })
}

/// Reads a rows file written by [`write_rows_csv`].
///
/// Grids are rebuilt from the distinct values in order of first appearance
/// and every unit present in the file is marked complete.
pub fn read_rows_csv(path: &Path) -> Result<SweepResult> {
    let mut rdr = csv::Reader::from_reader(File::open(path)?);
    let header = rdr.headers()?.clone();
    let parse_err = |line: u64, message: String| Error::Parse { path: path.to_path_buf(), line, message };
    let mode = match header.get(5) {
        Some("error") => SweepMode::Error,
        Some("accuracy") => SweepMode::Accuracy,
        other => return Err(parse_err(1, format!("unknown metric column {other:?}"))),
    };
    let mut res = SweepResult {
        mode,
        ratios: Vec::new(),
        trials: Vec::new(),
        alphas: Vec::new(),
        betas: Vec::new(),
        rows: Vec::new(),
        cells: Vec::new(),
    };
    for record in rdr.records() {
        let record = record?;
        let line = record.position().map_or(0, |p| p.line());
        if record.len() != 6 {
            return Err(parse_err(line, format!("expected 6 fields, found {}", record.len())));
        }
        let f = |k: usize| -> Result<f64> {
            record[k].parse().map_err(|e| parse_err(line, format!("field {k}: {e}")))
        };
        let u = |k: usize| -> Result<u64> {
            record[k].parse().map_err(|e| parse_err(line, format!("field {k}: {e}")))
        };
        let row = SweepRow { r: f(0)?, n_t: u(1)?, alpha: f(2)?, beta: f(3)?, repeat: u(4)? as usize, value: f(5)? };
        push_unique(&mut res.ratios, row.r);
        push_unique(&mut res.trials, row.n_t);
        push_unique(&mut res.alphas, row.alpha);
        push_unique(&mut res.betas, row.beta);
        let unit = CellStatus { r: row.r, n_t: row.n_t, repeat: row.repeat, error: None };
        if !res.cells.contains(&unit) {
            res.cells.push(unit);
        }
        res.rows.push(row);
    }
    Ok(res)
}

fn push_unique<T: PartialEq>(v: &mut Vec<T>, x: T) {
    if !v.contains(&x) {
        v.push(x);
    }
}

pub fn write_summary_csv(result: &SweepResult, path: &Path) -> Result<()> {
    write_atomic(path, |w| {
        let mut out = csv::Writer::from_writer(w);
        out.write_record(["r", "n_t", "alpha", "beta", "count", "mean", "std", "std_error"])?;
        for s in result.summaries() {
            out.write_record([
                s.r.to_string(),
                s.n_t.to_string(),
                s.alpha.to_string(),
                s.beta.to_string(),
                s.count.to_string(),
                s.mean.to_string(),
                s.std.to_string(),
                s.std_error().to_string(),
            ])?;
        }
        out.flush()?;
        Ok(())
    })
}

/// Best point per curve: `axis,r,n_t,fixed,best_x,best_mean`.
pub fn write_optima_csv(result: &SweepResult, path: &Path) -> Result<()> {
    write_atomic(path, |w| {
        let mut out = csv::Writer::from_writer(w);
        out.write_record(["axis", "r", "n_t", "fixed", "best_x", "best_mean"])?;
        for o in result.optima() {
            out.write_record([
                o.axis.name().to_string(),
                o.r.to_string(),
                o.n_t.to_string(),
                o.fixed.to_string(),
                o.best_x.to_string(),
                o.best_mean.to_string(),
            ])?;
        }
        out.flush()?;
        Ok(())
    })
}

/// Completion status of every data unit: `r,n_t,repeat,status,message`.
pub fn write_cells_csv(result: &SweepResult, path: &Path) -> Result<()> {
    write_atomic(path, |w| {
        let mut out = csv::Writer::from_writer(w);
        out.write_record(["r", "n_t", "repeat", "status", "message"])?;
        for c in &result.cells {
            let (status, msg) = match &c.error {
                None => ("done", ""),
                Some(e) => ("failed", e.as_str()),
            };
            out.write_record([c.r.to_string(), c.n_t.to_string(), c.repeat.to_string(), status.into(), msg.into()])?;
        }
        out.flush()?;
        Ok(())
    })
}

const PALETTE: [&str; 8] = ["#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd", "#8c564b", "#e377c2", "#17becf"];
const WIDTH: f64 = 680.0;
const HEIGHT: f64 = 420.0;
const LEFT: f64 = 80.0;
const RIGHT: f64 = 150.0;
const TOP: f64 = 40.0;
const BOTTOM: f64 = 55.0;

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;").replace('"', "&quot;")
}

struct Curve {
    label: String,
    points: Vec<(f64, f64)>,
    best: Option<(f64, f64)>,
}

fn tick_label(v: f64) -> String {
    if v != 0.0 && (v.abs() >= 1e4 || v.abs() < 1e-3) {
        format!("{v:.2e}")
    } else {
        let s = format!("{v:.4}");
        s.trim_end_matches('0').trim_end_matches('.').to_string()
    }
}

fn render_chart(title: &str, x_label: &str, y_label: &str, curves: &[Curve]) -> String {
    let xs = curves.iter().flat_map(|c| c.points.iter().map(|p| p.0));
    let (x_lo, x_hi) = xs.fold((f64::INFINITY, f64::NEG_INFINITY), |(a, b), x| (a.min(x), b.max(x)));
    let ys = curves.iter().flat_map(|c| c.points.iter().map(|p| p.1)).filter(|y| y.is_finite());
    let (mut y_lo, mut y_hi) = ys.fold((f64::INFINITY, f64::NEG_INFINITY), |(a, b), y| (a.min(y), b.max(y)));
    if !y_lo.is_finite() {
        (y_lo, y_hi) = (0.0, 1.0);
    }
    let pad = if y_hi > y_lo { 0.05 * (y_hi - y_lo) } else { 0.5 * y_lo.abs().max(1e-3) };
    y_lo -= pad;
    y_hi += pad;
    let (x_lo, x_hi) = if x_hi > x_lo { (x_lo, x_hi) } else { (x_lo - 0.5, x_lo + 0.5) };

    let plot_w = WIDTH - LEFT - RIGHT;
    let plot_h = HEIGHT - TOP - BOTTOM;
    let sx = |x: f64| LEFT + (x - x_lo) / (x_hi - x_lo) * plot_w;
    let sy = |y: f64| TOP + (y_hi - y) / (y_hi - y_lo) * plot_h;

    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}" font-family="sans-serif" font-size="12">"#
    );
    let _ = writeln!(s, r#"<rect x="0" y="0" width="{WIDTH}" height="{HEIGHT}" fill="white"/>"#);
    let _ = writeln!(
        s,
        r#"<text x="{}" y="22" text-anchor="middle" font-size="14">{}</text>"#,
        LEFT + plot_w / 2.0,
        escape(title)
    );
    // axes
    let _ = writeln!(
        s,
        r#"<rect x="{LEFT}" y="{TOP}" width="{plot_w}" height="{plot_h}" fill="none" stroke="black"/>"#
    );
    for k in 0..=5 {
        let t = k as f64 / 5.0;
        let xv = x_lo + t * (x_hi - x_lo);
        let yv = y_lo + t * (y_hi - y_lo);
        let (px, py) = (sx(xv), sy(yv));
        let _ = writeln!(
            s,
            r#"<line x1="{px:.2}" y1="{:.2}" x2="{px:.2}" y2="{:.2}" stroke="black"/><text x="{px:.2}" y="{:.2}" text-anchor="middle">{}</text>"#,
            TOP + plot_h,
            TOP + plot_h + 5.0,
            TOP + plot_h + 19.0,
            tick_label(xv)
        );
        let _ = writeln!(
            s,
            r#"<line x1="{:.2}" y1="{py:.2}" x2="{LEFT}" y2="{py:.2}" stroke="black"/><text x="{:.2}" y="{:.2}" text-anchor="end">{}</text>"#,
            LEFT - 5.0,
            LEFT - 8.0,
            py + 4.0,
            tick_label(yv)
        );
    }
    let _ = writeln!(
        s,
        r#"<text x="{:.2}" y="{:.2}" text-anchor="middle">{}</text>"#,
        LEFT + plot_w / 2.0,
        HEIGHT - 12.0,
        escape(x_label)
    );
    let _ = writeln!(
        s,
        r#"<text x="18" y="{:.2}" text-anchor="middle" transform="rotate(-90 18 {:.2})">{}</text>"#,
        TOP + plot_h / 2.0,
        TOP + plot_h / 2.0,
        escape(y_label)
    );

    for (k, c) in curves.iter().enumerate() {
        let color = PALETTE[k % PALETTE.len()];
        // break the line at non-finite values
        let mut segment: Vec<String> = Vec::new();
        let flush = |seg: &mut Vec<String>, s: &mut String| {
            if seg.len() > 1 {
                let _ = writeln!(
                    s,
                    r#"<polyline fill="none" stroke="{color}" stroke-width="1.5" points="{}"/>"#,
                    seg.join(" ")
                );
            }
            seg.clear();
        };
        for &(x, y) in &c.points {
            if y.is_finite() {
                segment.push(format!("{:.2},{:.2}", sx(x), sy(y)));
                let _ = writeln!(s, r#"<circle cx="{:.2}" cy="{:.2}" r="2" fill="{color}"/>"#, sx(x), sy(y));
            } else {
                flush(&mut segment, &mut s);
            }
        }
        flush(&mut segment, &mut s);
        if let Some((bx, by)) = c.best {
            let (px, py) = (sx(bx), sy(by));
            let _ = writeln!(
                s,
                r#"<path class="optimum" data-curve="{}" data-x="{bx}" data-y="{by}" d="M{:.2},{:.2} L{:.2},{:.2} M{:.2},{:.2} L{:.2},{:.2}" stroke="{color}" stroke-width="2.5"/>"#,
                escape(&c.label),
                px - 6.0,
                py - 6.0,
                px + 6.0,
                py + 6.0,
                px - 6.0,
                py + 6.0,
                px + 6.0,
                py - 6.0
            );
        }
        let ly = TOP + 14.0 + 18.0 * k as f64;
        let lx = WIDTH - RIGHT + 12.0;
        let _ = writeln!(
            s,
            r#"<line x1="{lx}" y1="{ly}" x2="{:.2}" y2="{ly}" stroke="{color}" stroke-width="2"/><text x="{:.2}" y="{:.2}">{}</text>"#,
            lx + 20.0,
            lx + 26.0,
            ly + 4.0,
            escape(&c.label)
        );
    }
    s.push_str("</svg>\n");
    s
}

/// One chart per swept axis and value of the other parameter, one curve
/// per `(r, n_t)`, with the curve optimum marked. Returns the written paths.
pub fn write_svg_charts(result: &SweepResult, dir: &Path) -> Result<Vec<PathBuf>> {
    let summaries = result.summaries();
    let optima = result.optima();
    let mut written = Vec::new();
    for axis in result.swept_axes() {
        let fixed_grid = match axis {
            Axis::Alpha => &result.betas,
            Axis::Beta => &result.alphas,
        };
        for &fixed in fixed_grid {
            let mut by_curve: BTreeMap<(usize, usize), Vec<(f64, f64)>> = BTreeMap::new();
            for s in &summaries {
                let (x, other) = match axis {
                    Axis::Alpha => (s.alpha, s.beta),
                    Axis::Beta => (s.beta, s.alpha),
                };
                if other != fixed {
                    continue;
                }
                let ri = result.ratios.iter().position(|&r| r == s.r).unwrap_or(0);
                let ti = result.trials.iter().position(|&t| t == s.n_t).unwrap_or(0);
                by_curve.entry((ri, ti)).or_default().push((x, s.mean));
            }
            let curves: Vec<Curve> = by_curve
                .into_iter()
                .map(|((ri, ti), mut points)| {
                    points.sort_by(|a, b| a.0.total_cmp(&b.0));
                    let (r, n_t) = (result.ratios[ri], result.trials[ti]);
                    let label = match (result.ratios.len() > 1, result.trials.len() > 1) {
                        (true, false) => format!("r={r}"),
                        (false, true) => format!("n_t={n_t}"),
                        _ => format!("r={r} n_t={n_t}"),
                    };
                    let best = optima
                        .iter()
                        .find(|o| o.axis == axis && o.r == r && o.n_t == n_t && o.fixed == fixed)
                        .map(|o| (o.best_x, o.best_mean));
                    Curve { label, points, best }
                })
                .collect();
            if curves.is_empty() {
                continue;
            }
            let title = format!("{} vs {} ({}={})", result.mode.name(), axis.name(), axis.other().name(), fixed);
            let svg = render_chart(&title, axis.name(), result.mode.name(), &curves);
            let path = dir.join(format!("{}_{}_{}{}.svg", result.mode.name(), axis.name(), axis.other().name(), fixed));
            write_string_atomic(&path, &svg)?;
            written.push(path);
        }
    }
    Ok(written)
}

/// Writes `rows.csv`, `summary.csv`, `optima.csv` and `cells.csv` into `dir`.
pub fn write_tables(result: &SweepResult, dir: &Path) -> Result<Vec<PathBuf>> {
    let paths = [dir.join("rows.csv"), dir.join("summary.csv"), dir.join("optima.csv"), dir.join("cells.csv")];
    write_rows_csv(result, &paths[0])?;
    write_summary_csv(result, &paths[1])?;
    write_optima_csv(result, &paths[2])?;
    write_cells_csv(result, &paths[3])?;
    Ok(paths.to_vec())
}
