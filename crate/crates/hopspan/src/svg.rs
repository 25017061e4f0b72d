//! Static SVG figures: object outlines plus spanner edges between anchors,
//! colored by provenance.

use std::collections::BTreeMap;
use std::fmt::Write;

use crate::geom::{GeomObject, Point2};
use crate::graph::Spanner;

/// Largest object count [`render_svg`] accepts.
pub const MAX_OBJECTS: usize = 10_000;

const WIDTH: f64 = 800.0;
const MARGIN: f64 = 20.0;
const PALETTE: [&str; 10] =
    ["#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd", "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22", "#17becf"];

/// First-fit rows so that overlapping intervals are drawn apart.
fn interval_rows(objects: &[GeomObject]) -> Vec<usize> {
    let mut order: Vec<usize> = (0..objects.len()).collect();
    let span = |i: usize| match objects[i] {
        GeomObject::Interval { lo, hi } => (lo, hi),
        _ => (0.0, 0.0),
    };
    order.sort_by(|&a, &b| span(a).0.total_cmp(&span(b).0).then(a.cmp(&b)));
    let mut ends: Vec<f64> = Vec::new();
    let mut rows = vec![0; objects.len()];
    for i in order {
        if !matches!(objects[i], GeomObject::Interval { .. }) {
            continue;
        }
        let (lo, hi) = span(i);
        let row = ends.iter().position(|&e| e < lo).unwrap_or(ends.len());
        if row == ends.len() {
            ends.push(hi);
        } else {
            ends[row] = hi;
        }
        rows[i] = row;
    }
    rows
}

const ROW: f64 = 0.25;

/// Shape outline in world coordinates, or a circle `(center, radius)`.
enum Shape {
    Poly(Vec<Point2>),
    Circle(Point2, f64),
    Segment(Point2, Point2),
}

fn shape(o: &GeomObject, row: usize) -> Shape {
    match o {
        GeomObject::Interval { lo, hi } => {
            let y = row as f64 * ROW;
            Shape::Segment(Point2::new(*lo, y), Point2::new(*hi, y))
        }
        GeomObject::UnitDiskCenter(p) => Shape::Circle(*p, 0.5),
        GeomObject::Rect(r) => Shape::Poly(r.corners().to_vec()),
        GeomObject::Polygon(p) => Shape::Poly(p.vertices().to_vec()),
        GeomObject::Translate { body, offset, .. } => Shape::Poly(body.vertices().iter().map(|&v| v + *offset).collect()),
    }
}

fn anchor(o: &GeomObject, row: usize) -> Point2 {
    match o {
        GeomObject::Interval { lo, hi } => Point2::new(0.5 * (lo + hi), row as f64 * ROW),
        _ => o.anchor(),
    }
}

/// Deterministic SVG document for `objects` and an optional spanner over them.
pub fn render_svg(objects: &[GeomObject], spanner: Option<&Spanner>) -> crate::error::Result<String> {
    if objects.len() > MAX_OBJECTS {
        return Err(crate::error::Error::SizeOverflow(format!("{} objects exceed the drawing limit {MAX_OBJECTS}", objects.len())));
    }
    let rows = interval_rows(objects);
    let shapes: Vec<Shape> = objects.iter().zip(&rows).map(|(o, &r)| shape(o, r)).collect();
    let (mut lo, mut hi) = (Point2::new(f64::INFINITY, f64::INFINITY), Point2::new(f64::NEG_INFINITY, f64::NEG_INFINITY));
    let mut grow = |p: Point2| {
        lo = Point2::new(lo.x.min(p.x), lo.y.min(p.y));
        hi = Point2::new(hi.x.max(p.x), hi.y.max(p.y));
    };
    for s in &shapes {
        match s {
            Shape::Poly(v) => v.iter().for_each(|&p| grow(p)),
            Shape::Circle(c, r) => {
                grow(*c - Point2::new(*r, *r));
                grow(*c + Point2::new(*r, *r));
            }
            Shape::Segment(a, b) => {
                grow(*a);
                grow(*b);
            }
        }
    }
    if shapes.is_empty() {
        lo = Point2::new(0.0, 0.0);
        hi = Point2::new(1.0, 1.0);
    }
    let span = (hi.x - lo.x).max(hi.y - lo.y).max(1e-12);
    let scale = (WIDTH - 2.0 * MARGIN) / span;
    let height = ((hi.y - lo.y) * scale + 2.0 * MARGIN).ceil();
    // World y grows upward; SVG y grows downward.
    let map = |p: Point2| (MARGIN + (p.x - lo.x) * scale, height - MARGIN - (p.y - lo.y) * scale);

    let mut out = String::new();
    let _ = writeln!(out, r#"<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{height}" viewBox="0 0 {WIDTH} {height}">"#);
    let _ = writeln!(out, r#"<rect width="100%" height="100%" fill="white"/>"#);
    let _ = writeln!(out, r##"<g id="objects" fill="none" stroke="#444" stroke-width="1">"##);
    for s in &shapes {
        match s {
            Shape::Poly(v) => {
                let pts: Vec<String> = v.iter().map(|&p| map(p)).map(|(x, y)| format!("{x:.2},{y:.2}")).collect();
                let _ = writeln!(out, r#"<polygon points="{}"/>"#, pts.join(" "));
            }
            Shape::Circle(c, r) => {
                let (x, y) = map(*c);
                let _ = writeln!(out, r#"<circle cx="{x:.2}" cy="{y:.2}" r="{:.2}"/>"#, r * scale);
            }
            Shape::Segment(a, b) => {
                let ((x1, y1), (x2, y2)) = (map(*a), map(*b));
                let _ = writeln!(out, r#"<line x1="{x1:.2}" y1="{y1:.2}" x2="{x2:.2}" y2="{y2:.2}" stroke-width="3"/>"#);
            }
        }
    }
    let _ = writeln!(out, "</g>");
    if let Some(s) = spanner {
        let labels: BTreeMap<&str, &str> = {
            let mut names: Vec<&str> = s.provenance.iter().map(String::as_str).collect();
            names.sort_unstable();
            names.dedup();
            names.into_iter().enumerate().map(|(i, l)| (l, PALETTE[i % PALETTE.len()])).collect()
        };
        let _ = writeln!(out, r#"<g id="spanner" stroke-width="1.5">"#);
        for (&[u, v], label) in s.edges.iter().zip(&s.provenance) {
            if u >= objects.len() || v >= objects.len() {
                continue;
            }
            let ((x1, y1), (x2, y2)) = (map(anchor(&objects[u], rows[u])), map(anchor(&objects[v], rows[v])));
            let _ = writeln!(
                out,
                r#"<line x1="{x1:.2}" y1="{y1:.2}" x2="{x2:.2}" y2="{y2:.2}" stroke="{}" class="{label}"/>"#,
                labels[label.as_str()]
            );
        }
        let _ = writeln!(out, "</g>");
        let _ = writeln!(out, r#"<g id="legend" font-family="sans-serif" font-size="12">"#);
        for (i, (label, color)) in labels.iter().enumerate() {
            let y = 16.0 + 16.0 * i as f64;
            let _ = writeln!(out, r#"<text x="8" y="{y}" fill="{color}">{label}</text>"#);
        }
        let _ = writeln!(out, "</g>");
    }
    out.push_str("</svg>\n");
    Ok(out)
}
