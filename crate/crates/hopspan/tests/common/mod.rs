//! Independent oracles and instance helpers shared by the integration tests.
#![allow(dead_code)]

use std::collections::BTreeSet;
use std::f64::consts::TAU;
use std::sync::Arc;

use hopspan::geom::{AxisRect, ConvexPolygon, GeomObject, Point2};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

fn orient(a: Point2, b: Point2, c: Point2) -> f64 {
    (b.x - a.x) * (c.y - a.y) - (b.y - a.y) * (c.x - a.x)
}

fn on_segment(a: Point2, b: Point2, p: Point2) -> bool {
    p.x >= a.x.min(b.x) && p.x <= a.x.max(b.x) && p.y >= a.y.min(b.y) && p.y <= a.y.max(b.y)
}

/// Closed segment intersection by orientation signs.
pub fn segments_meet(p1: Point2, p2: Point2, q1: Point2, q2: Point2) -> bool {
    let (d1, d2) = (orient(q1, q2, p1), orient(q1, q2, p2));
    let (d3, d4) = (orient(p1, p2, q1), orient(p1, p2, q2));
    if ((d1 > 0.0 && d2 < 0.0) || (d1 < 0.0 && d2 > 0.0)) && ((d3 > 0.0 && d4 < 0.0) || (d3 < 0.0 && d4 > 0.0)) {
        return true;
    }
    (d1 == 0.0 && on_segment(q1, q2, p1))
        || (d2 == 0.0 && on_segment(q1, q2, p2))
        || (d3 == 0.0 && on_segment(p1, p2, q1))
        || (d4 == 0.0 && on_segment(p1, p2, q2))
}

/// Point in a counterclockwise convex polygon, boundary included.
pub fn inside(poly: &[Point2], p: Point2) -> bool {
    (0..poly.len()).all(|i| orient(poly[i], poly[(i + 1) % poly.len()], p) >= 0.0)
}

/// Two closed convex polygons meet iff a vertex of one lies in the other or two edges cross.
pub fn polygons_meet(a: &[Point2], b: &[Point2]) -> bool {
    if a.iter().any(|&p| inside(b, p)) || b.iter().any(|&p| inside(a, p)) {
        return true;
    }
    (0..a.len()).any(|i| (0..b.len()).any(|j| segments_meet(a[i], a[(i + 1) % a.len()], b[j], b[(j + 1) % b.len()])))
}

fn outline(o: &GeomObject) -> Option<Vec<Point2>> {
    match o {
        GeomObject::Rect(r) => Some(vec![
            Point2::new(r.x_lo, r.y_lo),
            Point2::new(r.x_hi, r.y_lo),
            Point2::new(r.x_hi, r.y_hi),
            Point2::new(r.x_lo, r.y_hi),
        ]),
        GeomObject::Polygon(p) => Some(p.vertices().to_vec()),
        GeomObject::Translate { body, offset, .. } => Some(body.vertices().iter().map(|&v| v + *offset).collect()),
        _ => None,
    }
}

/// Pairwise predicate written from the definitions, without any library geometry.
pub fn oracle_meet(a: &GeomObject, b: &GeomObject) -> bool {
    match (a, b) {
        (GeomObject::Interval { lo: a0, hi: a1 }, GeomObject::Interval { lo: b0, hi: b1 }) => a0.max(*b0) <= a1.min(*b1),
        (GeomObject::UnitDiskCenter(p), GeomObject::UnitDiskCenter(q)) => (p.x - q.x).powi(2) + (p.y - q.y).powi(2) <= 1.0,
        (GeomObject::Rect(r), GeomObject::Rect(s)) => r.x_lo.max(s.x_lo) <= r.x_hi.min(s.x_hi) && r.y_lo.max(s.y_lo) <= r.y_hi.min(s.y_hi),
        _ => polygons_meet(&outline(a).expect("polygonal"), &outline(b).expect("polygonal")),
    }
}

/// The O(n²) predicate matrix as an edge set.
pub fn oracle_edges(objects: &[GeomObject]) -> BTreeSet<(usize, usize)> {
    let mut out = BTreeSet::new();
    for u in 0..objects.len() {
        for v in u + 1..objects.len() {
            if oracle_meet(&objects[u], &objects[v]) {
                out.insert((u, v));
            }
        }
    }
    out
}

/// Random instance of one kind; polygonal kinds mix rectangles, polygons and translates.
pub fn random_mixed_instance(rng: &mut ChaCha8Rng) -> Vec<GeomObject> {
    let n = rng.gen_range(0..60);
    let side = rng.gen_range(2.0..6.0);
    match rng.gen_range(0..3) {
        0 => (0..n)
            .map(|_| {
                let lo: f64 = rng.gen_range(0.0..side * 3.0);
                GeomObject::Interval { lo, hi: lo + rng.gen_range(0.0..1.5) }
            })
            .collect(),
        1 => (0..n).map(|_| GeomObject::UnitDiskCenter(Point2::new(rng.gen_range(0.0..side), rng.gen_range(0.0..side)))).collect(),
        _ => {
            let body = Arc::new(ConvexPolygon::regular(5, 0.6, Point2::new(0.0, 0.0), 0.3));
            (0..n)
                .map(|_| {
                    let c = Point2::new(rng.gen_range(0.0..side), rng.gen_range(0.0..side));
                    match rng.gen_range(0..3) {
                        0 => GeomObject::Rect(AxisRect::new(c.x, c.x + rng.gen_range(0.0..1.5), c.y, c.y + rng.gen_range(0.0..1.5)).unwrap()),
                        1 => GeomObject::Polygon(ConvexPolygon::regular(rng.gen_range(3..9), rng.gen_range(0.2..1.0), c, rng.gen_range(0.0..TAU))),
                        _ => GeomObject::Translate { body_id: 0, body: body.clone(), offset: c },
                    }
                })
                .collect()
        }
    }
}

/// Unit-disk hull membership of `pts[i]` (all points strictly above the axis)
/// by sampling candidate empty-disk centers on the unit circle about it.
///
/// Returns `(certain, possible)`: `certain` when a sampled center is exactly
/// admissible, `possible` when one is admissible after relaxing every
/// constraint by the sampling slack. A correct answer lies between the two.
pub fn hull_oracle(pts: &[Point2], i: usize) -> (bool, bool) {
    const STEP: f64 = 1e-3;
    const SLACK: f64 = 2e-3;
    let p = pts[i];
    let (mut certain, mut possible) = (false, false);
    let steps = (TAU / STEP).ceil() as usize;
    for k in 0..steps {
        let t = k as f64 * STEP;
        let c = Point2::new(p.x + t.cos(), p.y + t.sin());
        if c.y > SLACK {
            continue;
        }
        let nearest = pts.iter().enumerate().filter(|&(j, _)| j != i).map(|(_, q)| c.dist(*q)).fold(f64::INFINITY, f64::min);
        if nearest >= 1.0 - SLACK {
            possible = true;
            if c.y <= 0.0 && nearest >= 1.0 {
                certain = true;
                break;
            }
        }
    }
    (certain, possible)
}

/// Two clusters of diameter below one, straddling the x-axis.
pub fn two_clusters(rng: &mut ChaCha8Rng, na: usize, nb: usize) -> (Vec<Point2>, Vec<Point2>) {
    let draw = |rng: &mut ChaCha8Rng, n: usize, cy: f64| -> Vec<Point2> {
        (0..n)
            .map(|_| loop {
                let p = Point2::new(rng.gen_range(-0.5..0.5), cy + rng.gen_range(-0.5..0.5));
                if p.dist(Point2::new(0.0, cy)) < 0.5 && p.y.abs() > 1e-6 && p.y.signum() == cy.signum() {
                    break p;
                }
            })
            .collect()
    };
    let gap = rng.gen_range(0.3..0.6);
    (draw(rng, na, gap), draw(rng, nb, -gap))
}
