//! Deterministic SVG rendering: families on the unit disk, piercing lines,
//! and chord-system debug figures. Identical inputs produce identical bytes.

use std::fmt::Write as _;

use crate::error::Error;
use crate::family::Family;
use crate::geom::{ConvexBody, FloatPoint, Line, RationalPoint};
use crate::kkm::{ChordSystem, SimplexPoint};
use crate::rat::rat_to_f64;

const CANVAS: f64 = 800.0;
/// World window [-1.1, 1.1]^2 mapped onto the canvas; the unit circle fits
/// with a margin.
const WORLD: f64 = 1.1;

fn px(v: f64) -> f64 {
    (v + WORLD) / (2.0 * WORLD) * CANVAS
}

fn py(v: f64) -> f64 {
    // SVG y grows downward.
    (WORLD - v) / (2.0 * WORLD) * CANVAS
}

fn fmt(v: f64) -> String {
    // Fixed 6 decimals; normalize negative zero for byte determinism.
    let s = format!("{v:.6}");
    if s == "-0.000000" { "0.000000".into() } else { s }
}

fn member_color(f: &Family, idx: usize) -> &'static str {
    match f.labels.get(idx).and_then(|l| l.as_deref()) {
        Some(l) if l.starts_with("F1") => "#d62728",
        Some(l) if l.starts_with("F2") => "#1f77b4",
        Some(l) if l.starts_with("F3") => "#2ca02c",
        _ => "#444444",
    }
}

fn point_f(p: &RationalPoint) -> (f64, f64) {
    (rat_to_f64(&p.x), rat_to_f64(&p.y))
}

fn push_body(out: &mut String, body: &ConvexBody, color: &str) {
    let verts = body.vertices();
    match verts.len() {
        1 => {
            let (x, y) = point_f(&verts[0]);
            let _ = writeln!(
                out,
                r#"  <circle cx="{}" cy="{}" r="4.000000" fill="{color}"/>"#,
                fmt(px(x)),
                fmt(py(y)),
            );
        }
        2 => {
            let (x1, y1) = point_f(&verts[0]);
            let (x2, y2) = point_f(&verts[1]);
            let _ = writeln!(
                out,
                r#"  <line x1="{}" y1="{}" x2="{}" y2="{}" stroke="{color}" stroke-width="3.000000" stroke-linecap="round"/>"#,
                fmt(px(x1)),
                fmt(py(y1)),
                fmt(px(x2)),
                fmt(py(y2)),
            );
        }
        _ => {
            let pts: Vec<String> = verts
                .iter()
                .map(|v| {
                    let (x, y) = point_f(v);
                    format!("{},{}", fmt(px(x)), fmt(py(y)))
                })
                .collect();
            let _ = writeln!(
                out,
                r#"  <polygon points="{}" fill="{color}" fill-opacity="0.500000" stroke="{color}" stroke-width="1.500000"/>"#,
                pts.join(" "),
            );
        }
    }
}

/// Clip the infinite line ax + by = c to the world window and draw it.
fn push_line(out: &mut String, line: &Line, color: &str) {
    let a = line.a.to_string().parse::<f64>().unwrap_or(0.0);
    let b = line.b.to_string().parse::<f64>().unwrap_or(0.0);
    let c = line.c.to_string().parse::<f64>().unwrap_or(0.0);
    // Intersections with the four window edges.
    let mut hits: Vec<(f64, f64)> = Vec::new();
    let w = WORLD;
    if b.abs() > 1e-300 {
        for x in [-w, w] {
            let y = (c - a * x) / b;
            if (-w..=w).contains(&y) {
                hits.push((x, y));
            }
        }
    }
    if a.abs() > 1e-300 {
        for y in [-w, w] {
            let x = (c - b * y) / a;
            if (-w..=w).contains(&x) {
                hits.push((x, y));
            }
        }
    }
    hits.sort_by(|p, q| p.partial_cmp(q).unwrap());
    hits.dedup_by(|p, q| (p.0 - q.0).abs() < 1e-12 && (p.1 - q.1).abs() < 1e-12);
    if hits.len() >= 2 {
        let (p, q) = (hits[0], hits[hits.len() - 1]);
        let _ = writeln!(
            out,
            r#"  <line x1="{}" y1="{}" x2="{}" y2="{}" stroke="{color}" stroke-width="2.000000" stroke-dasharray="9.000000,5.000000"/>"#,
            fmt(px(p.0)),
            fmt(py(p.1)),
            fmt(px(q.0)),
            fmt(py(q.1)),
        );
    }
}

fn header() -> String {
    format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{c}\" height=\"{c}\" viewBox=\"0 0 {c} {c}\">\n  <rect width=\"{c}\" height=\"{c}\" fill=\"#ffffff\"/>\n  <circle cx=\"{m}\" cy=\"{m}\" r=\"{r}\" fill=\"none\" stroke=\"#bbbbbb\" stroke-width=\"1.000000\"/>\n",
        c = CANVAS as u32,
        m = fmt(CANVAS / 2.0),
        r = fmt(CANVAS / (2.0 * WORLD)),
    )
}

/// Family figure with optional piercing lines overlaid. Members are colored
/// by family of origin when construction labels are present.
pub fn render_family(f: &Family, lines: &[Line]) -> Result<String, Error> {
    if f.is_empty() {
        return Err(Error::InvalidArgument("empty family".into()));
    }
    let mut out = header();
    for (i, body) in f.members.iter().enumerate() {
        push_body(&mut out, body, member_color(f, i));
    }
    for line in lines {
        push_line(&mut out, line, "#222222");
    }
    out.push_str("</svg>\n");
    Ok(out)
}

/// Debug figure of the chord system at a simplex point: boundary points and
/// the k-2 distinct chords.
pub fn render_chord_system(x: &SimplexPoint, k: usize) -> Result<String, Error> {
    let sys = ChordSystem::new(x, k)?;
    let mut out = header();
    for i in 0..k - 2 {
        if sys.chord_degenerate(i) {
            continue;
        }
        let (a, b) = sys.chord(i);
        let _ = writeln!(
            out,
            r##"  <line x1="{}" y1="{}" x2="{}" y2="{}" stroke="#d62728" stroke-width="2.000000"/>"##,
            fmt(px(a.x)),
            fmt(py(a.y)),
            fmt(px(b.x)),
            fmt(py(b.y)),
        );
    }
    for (i, p) in sys.boundary.iter().enumerate() {
        push_boundary_point(&mut out, *p, i);
    }
    out.push_str("</svg>\n");
    Ok(out)
}

fn push_boundary_point(out: &mut String, p: FloatPoint, i: usize) {
    let _ = writeln!(
        out,
        r##"  <circle cx="{}" cy="{}" r="3.000000" fill="#1f77b4"/>
  <text x="{}" y="{}" font-size="14.000000" fill="#1f77b4">f{}</text>"##,
        fmt(px(p.x)),
        fmt(py(p.y)),
        fmt(px(p.x * 1.06)),
        fmt(py(p.y * 1.06)),
        i,
    );
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::family::scale_to_unit_disk;
    use crate::lowerbound::build_construction;
    use crate::piercing::min_piercing_lines;

    #[test]
    fn construction_render_is_deterministic() {
        let f = build_construction(5).unwrap();
        let a = render_family(&f, &[]).unwrap();
        let b = render_family(&f, &[]).unwrap();
        assert_eq!(a, b);
        assert!(a.starts_with("<svg"));
        assert!(a.ends_with("</svg>\n"));
        // 12 segments drawn as <line> elements plus the unit circle.
        assert_eq!(a.matches("<line ").count(), 12);
        assert!(a.contains("#d62728") && a.contains("#1f77b4") && a.contains("#2ca02c"));
    }

    #[test]
    fn solution_lines_overlay() {
        let f = build_construction(5).unwrap();
        let (scaled, _) = scale_to_unit_disk(&f).unwrap();
        let sol = min_piercing_lines(&scaled, 3).unwrap().unwrap();
        let svg = render_family(&scaled, &sol.lines).unwrap();
        assert_eq!(svg.matches("stroke-dasharray").count(), 3);
    }

    #[test]
    fn chord_debug_render_barycenter() {
        let svg = render_chord_system(&SimplexPoint::barycenter(6), 5).unwrap();
        // Three diameters and six labeled boundary points.
        assert_eq!(svg.matches(r##"stroke="#d62728""##).count(), 3);
        assert_eq!(svg.matches("<text").count(), 6);
    }
}
