//! `.dgm` text files (`dim birth death` per line, `inf` for essential
//! classes) and SVG scatter plots.

use std::fmt::Write as _;
use std::path::Path;

use super::IoError;
use crate::persistence::{DiagramPoint, PersistenceDiagram};

pub fn format_diagram(d: &PersistenceDiagram) -> String {
    let mut s = String::new();
    for x in &d.points {
        let _ = writeln!(s, "{} {} {}", x.dim, x.birth, format_value(x.death));
    }
    s
}

fn format_value(v: f64) -> String {
    if v == f64::INFINITY {
        "inf".to_string()
    } else {
        v.to_string()
    }
}

pub fn parse_diagram(text: &str) -> Result<PersistenceDiagram, IoError> {
    let mut points = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let err = |message: &str| IoError::Parse {
            line: i + 1,
            message: message.to_string(),
        };
        let tok: Vec<&str> = line.split_whitespace().collect();
        if tok.len() != 3 {
            return Err(err("expected `dim birth death`"));
        }
        let dim = tok[0].parse().map_err(|_| err("bad dimension"))?;
        let birth: f64 = tok[1].parse().map_err(|_| err("bad birth value"))?;
        let death: f64 = tok[2].parse().map_err(|_| err("bad death value"))?;
        if !birth.is_finite() || death.is_nan() || death < birth {
            return Err(err("point must have finite birth and death >= birth"));
        }
        points.push(DiagramPoint { dim, birth, death });
    }
    Ok(PersistenceDiagram::new(points))
}

pub fn save_diagram(path: &Path, d: &PersistenceDiagram) -> Result<(), IoError> {
    std::fs::write(path, format_diagram(d))?;
    Ok(())
}

pub fn load_diagram(path: &Path) -> Result<PersistenceDiagram, IoError> {
    parse_diagram(&std::fs::read_to_string(path)?)
}

const SIZE: f64 = 400.0;
const MARGIN: f64 = 40.0;
const COLORS: [&str; 4] = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd"];

/// Birth/death scatter plot with the diagonal; essential points sit on a
/// dashed line above the plot area.
pub fn diagram_svg(d: &PersistenceDiagram, title: &str) -> String {
    let finite = d
        .points
        .iter()
        .flat_map(|x| [x.birth, x.death])
        .filter(|v| v.is_finite());
    let (mut lo, mut hi) = finite.fold((f64::INFINITY, f64::NEG_INFINITY), |(a, b), v| (a.min(v), b.max(v)));
    if lo > hi {
        (lo, hi) = (0.0, 1.0);
    }
    if hi - lo < 1e-12 {
        hi = lo + 1.0;
    }
    let plot = SIZE - 2.0 * MARGIN;
    let sx = |v: f64| MARGIN + (v - lo) / (hi - lo) * plot;
    let sy = |v: f64| SIZE - MARGIN - (v - lo) / (hi - lo) * plot;
    let inf_y = MARGIN * 0.5;

    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{SIZE}" height="{SIZE}" viewBox="0 0 {SIZE} {SIZE}">"#
    );
    let _ = writeln!(s, r#"<rect width="100%" height="100%" fill="white"/>"#);
    let _ = writeln!(s, r#"<title>{}</title>"#, escape(title));
    let _ = writeln!(
        s,
        r##"<rect x="{MARGIN}" y="{MARGIN}" width="{plot}" height="{plot}" fill="none" stroke="#999"/>"##
    );
    let _ = writeln!(
        s,
        r#"<line x1="{}" y1="{}" x2="{}" y2="{}" stroke="black" stroke-width="1"/>"#,
        sx(lo),
        sy(lo),
        sx(hi),
        sy(hi)
    );
    let _ = writeln!(
        s,
        r##"<line x1="{MARGIN}" y1="{inf_y}" x2="{}" y2="{inf_y}" stroke="#999" stroke-dasharray="4 3"/>"##,
        SIZE - MARGIN
    );
    let _ = writeln!(s, r#"<text x="4" y="{}" font-size="12">inf</text>"#, inf_y + 4.0);
    let _ = writeln!(
        s,
        r#"<text x="{MARGIN}" y="{}" font-size="11">{lo:.3}</text><text x="{}" y="{}" font-size="11" text-anchor="end">{hi:.3}</text>"#,
        SIZE - MARGIN + 16.0,
        SIZE - MARGIN,
        SIZE - MARGIN + 16.0
    );
    let _ = writeln!(
        s,
        r#"<text x="{}" y="{}" font-size="13" text-anchor="middle">{}</text>"#,
        SIZE / 2.0,
        SIZE - 6.0,
        escape(title)
    );
    for x in &d.points {
        let y = if x.is_essential() { inf_y } else { sy(x.death) };
        let _ = writeln!(
            s,
            r#"<circle cx="{:.2}" cy="{:.2}" r="3" fill="{}" fill-opacity="0.7"><title>H{} ({}, {})</title></circle>"#,
            sx(x.birth),
            y,
            COLORS[x.dim % COLORS.len()],
            x.dim,
            x.birth,
            format_value(x.death)
        );
    }
    s.push_str("</svg>\n");
    s
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

pub fn emit_diagram_svg(d: &PersistenceDiagram, path: &Path) -> Result<(), IoError> {
    let title = path.file_stem().and_then(|s| s.to_str()).unwrap_or("diagram");
    std::fs::write(path, diagram_svg(d, title))?;
    Ok(())
}
