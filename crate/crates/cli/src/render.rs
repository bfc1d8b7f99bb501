use std::fmt::Write as _;

use vgroute::{BoundaryKind, Domain64, Fan64, VertexLabel};

/// Standalone SVG 1.1 drawing. Model y points up, so the group is flipped.
pub fn svg(d: &Domain64, trace: Option<&[VertexLabel]>, fan: Option<&Fan64>) -> String {
    let pts = d.points();
    let (mut x0, mut y0, mut x1, mut y1) = (f64::INFINITY, f64::INFINITY, f64::NEG_INFINITY, f64::NEG_INFINITY);
    for p in &pts {
        x0 = x0.min(p.x);
        y0 = y0.min(p.y);
        x1 = x1.max(p.x);
        y1 = y1.max(p.y);
    }
    if pts.is_empty() {
        (x0, y0, x1, y1) = (0.0, 0.0, 1.0, 1.0);
    }
    let span = (x1 - x0).max(y1 - y0).max(f64::MIN_POSITIVE);
    let pad = 0.05 * span;
    let stroke = span / 400.0;

    let mut out = String::new();
    let _ = writeln!(out, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" viewBox="{} {} {} {}" width="800" height="{}">"#,
        x0 - pad,
        -(y1 + pad),
        x1 - x0 + 2.0 * pad,
        y1 - y0 + 2.0 * pad,
        (800.0 * (y1 - y0 + 2.0 * pad) / (x1 - x0 + 2.0 * pad)).round()
    );
    let _ = writeln!(out, r#"<g transform="scale(1,-1)" stroke-width="{stroke}">"#);
    for b in d.boundaries() {
        let (class, fill) = match b.kind {
            BoundaryKind::Outer => ("outer", "#eef2f7"),
            BoundaryKind::Hole => ("hole", "#8a8f99"),
        };
        let mut path = String::new();
        for (k, p) in b.vertices.iter().enumerate() {
            let _ = write!(path, "{}{} {} ", if k == 0 { "M" } else { "L" }, p.x, p.y);
        }
        path.push('Z');
        let _ = writeln!(out, r##"<path class="{class}" d="{path}" fill="{fill}" stroke="#223"/>"##);
    }
    if let Some(fan) = fan {
        let a = d.point(fan.apex);
        let len = 0.25 * span;
        for r in &fan.rays {
            let _ = writeln!(
                out,
                r##"<line class="ray" x1="{}" y1="{}" x2="{}" y2="{}" stroke="#c60"/>"##,
                a.x,
                a.y,
                a.x + len * r.x,
                a.y + len * r.y
            );
        }
    }
    if let Some(path) = trace {
        let coords: Vec<String> = path.iter().map(|&l| d.point(l)).map(|p| format!("{},{}", p.x, p.y)).collect();
        let _ = writeln!(
            out,
            r##"<polyline class="trace" points="{}" fill="none" stroke="#d22" stroke-width="{}"/>"##,
            coords.join(" "),
            2.0 * stroke
        );
    }
    out.push_str("</g>\n</svg>\n");
    out
}
