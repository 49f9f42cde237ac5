use std::fmt::Write;
use std::path::Path;

use crate::error::IoError;
use crate::geometry::{Point2, Polygon};
use crate::solution::StationSolution;

fn fmt(v: f64) -> String {
    let s = format!("{v:.6}");
    let s = s.trim_end_matches('0').trim_end_matches('.');
    if s == "-0" {
        "0".into()
    } else {
        s.into()
    }
}

/// SVG with the coastline in gray, the hop curve as one dashed black path
/// and one filled circle per station. The y axis points up as in the input.
pub fn render_svg(poly: &Polygon, sol: &StationSolution) -> String {
    let mut pts: Vec<Point2> = poly.vertices().to_vec();
    let curve = sol.cycle();
    pts.extend(curve.iter().copied());
    let (mut x0, mut y0, mut x1, mut y1) = (f64::INFINITY, f64::INFINITY, f64::NEG_INFINITY, f64::NEG_INFINITY);
    for p in &pts {
        x0 = x0.min(p.x);
        y0 = y0.min(p.y);
        x1 = x1.max(p.x);
        y1 = y1.max(p.y);
    }
    let span = (x1 - x0).max(y1 - y0).max(f64::MIN_POSITIVE);
    let m = 0.05 * span;
    let (vx, vy, vw, vh) = (x0 - m, -(y1 + m), x1 - x0 + 2.0 * m, y1 - y0 + 2.0 * m);
    let stroke = span / 400.0;
    let r = span / 120.0;

    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" viewBox="{} {} {} {}" width="800" height="{}">"#,
        fmt(vx),
        fmt(vy),
        fmt(vw),
        fmt(vh),
        fmt((800.0 * vh / vw).round())
    );
    let ring: Vec<String> = poly.vertices().iter().map(|p| format!("{},{}", fmt(p.x), fmt(-p.y))).collect();
    let _ = writeln!(
        s,
        r##"<polygon points="{}" fill="#d9d9d9" stroke="#808080" stroke-width="{}"/>"##,
        ring.join(" "),
        fmt(stroke)
    );
    let mut d = String::new();
    for (i, p) in curve.iter().enumerate() {
        let _ = write!(d, "{}{},{}", if i == 0 { "M" } else { " L" }, fmt(p.x), fmt(-p.y));
    }
    let _ = writeln!(
        s,
        r#"<path d="{d}" fill="none" stroke="black" stroke-width="{}" stroke-dasharray="{} {}"/>"#,
        fmt(stroke),
        fmt(4.0 * stroke),
        fmt(3.0 * stroke)
    );
    for st in &sol.stations {
        let _ = writeln!(
            s,
            r#"<circle cx="{}" cy="{}" r="{}" fill="black"/>"#,
            fmt(st.point.x),
            fmt(-st.point.y),
            fmt(r)
        );
    }
    s.push_str("</svg>\n");
    s
}

pub fn write_svg(poly: &Polygon, sol: &StationSolution, path: &Path) -> Result<(), IoError> {
    super::write_text(path, &render_svg(poly, sol))
}
