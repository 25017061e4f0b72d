//! Unit balls of a planar norm: the Euclidean disk and centrally symmetric
//! polygons. Boundaries are parameterized by polar angle about the center;
//! arcs are sets of angles stored as disjoint `[start, end]` pieces of
//! `[0, 2π)`.

use std::f64::consts::{PI, TAU};

use crate::geom::{horizontal_section, point_segment_distance, ConvexPolygon, Point2};

/// Disjoint angle intervals within `[0, 2π]`.
pub type ArcSet = Vec<(f64, f64)>;

/// Pieces shorter than this are treated as isolated tangencies and dropped.
const MIN_ARC: f64 = 1e-12;

/// The unit ball `U` of a norm with `U = -U`.
pub trait UnitBall: Clone + Send + Sync + std::fmt::Debug {
    /// Gauge `‖v‖_U`.
    fn norm(&self, v: Point2) -> f64;

    /// Closed-ball adjacency of two centers.
    fn adjacent(&self, p: Point2, q: Point2) -> bool {
        self.norm(p - q) <= 1.0
    }

    /// Boundary point of `U` in direction `theta`.
    fn boundary(&self, theta: f64) -> Point2;

    /// Polar angles at which `∂U` meets `∂(U + d)`.
    fn crossings(&self, d: Point2) -> Vec<f64>;

    /// Polar angles at which `∂U` meets the line `y = h`.
    fn level_crossings(&self, h: f64) -> Vec<f64>;

    /// `[x_lo, x_hi]` of `U ∩ {y = h}`.
    fn section(&self, h: f64) -> Option<(f64, f64)>;

    /// Radius of a disk about the origin containing `U`.
    fn outer_radius(&self) -> f64;

    /// Upward unit direction along which hull boundaries are graphs.
    fn monotone_dir(&self) -> Point2;

    fn rotated(&self, angle: f64) -> Self;
}

/// Euclidean unit disk (radius 1).
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct Disk;

impl UnitBall for Disk {
    fn norm(&self, v: Point2) -> f64 {
        v.norm()
    }

    fn adjacent(&self, p: Point2, q: Point2) -> bool {
        (p - q).norm2() <= 1.0
    }

    fn boundary(&self, theta: f64) -> Point2 {
        Point2::new(theta.cos(), theta.sin())
    }

    fn crossings(&self, d: Point2) -> Vec<f64> {
        let delta = d.norm();
        if delta >= 2.0 || delta == 0.0 {
            return Vec::new();
        }
        let phi = d.y.atan2(d.x);
        let a = (delta / 2.0).acos();
        vec![phi - a, phi + a]
    }

    fn level_crossings(&self, h: f64) -> Vec<f64> {
        if h.abs() >= 1.0 {
            return Vec::new();
        }
        let s = h.asin();
        vec![s, PI - s]
    }

    fn section(&self, h: f64) -> Option<(f64, f64)> {
        (h.abs() <= 1.0).then(|| {
            let w = (1.0 - h * h).sqrt();
            (-w, w)
        })
    }

    fn outer_radius(&self) -> f64 {
        1.0
    }

    fn monotone_dir(&self) -> Point2 {
        Point2::new(0.0, 1.0)
    }

    fn rotated(&self, _angle: f64) -> Self {
        *self
    }
}

/// Unit ball given by a centrally symmetric convex polygon about the origin.
#[derive(Clone, Debug, PartialEq)]
pub struct PolygonBall {
    poly: ConvexPolygon,
    normals: Vec<Point2>,
    offsets: Vec<f64>,
    outer: f64,
    inner: f64,
    /// Vertex polar angles ascending in `[0, 2π)`, with the index of the edge
    /// starting at that vertex.
    fan: Vec<(f64, usize)>,
}

impl PolygonBall {
    /// `poly` must contain the origin in its interior and satisfy `poly = -poly`.
    pub fn new(poly: ConvexPolygon) -> Self {
        let normals = poly.normals();
        let offsets: Vec<f64> = normals.iter().zip(poly.vertices()).map(|(n, v)| n.dot(*v)).collect();
        assert!(offsets.iter().all(|&h| h > 0.0), "origin must be interior");
        let outer = poly.vertices().iter().map(|v| v.norm()).fold(0.0, f64::max);
        let inner = offsets.iter().copied().fold(f64::INFINITY, f64::min);
        let mut fan: Vec<(f64, usize)> = poly.vertices().iter().map(|&v| wrap(angle_of(v))).zip(0..).collect();
        fan.sort_by(|a, b| a.0.total_cmp(&b.0));
        Self { poly, normals, offsets, outer, inner, fan }
    }

    pub fn polygon(&self) -> &ConvexPolygon {
        &self.poly
    }
}

fn angle_of(p: Point2) -> f64 {
    p.y.atan2(p.x)
}

fn segment_intersection(p: Point2, q: Point2, r: Point2, s: Point2) -> Option<Point2> {
    let d1 = q - p;
    let d2 = s - r;
    let den = d1.cross(d2);
    if den == 0.0 {
        return None;
    }
    let t = (r - p).cross(d2) / den;
    let u = (r - p).cross(d1) / den;
    ((0.0..=1.0).contains(&t) && (0.0..=1.0).contains(&u)).then(|| p + d1 * t)
}

impl UnitBall for PolygonBall {
    fn norm(&self, v: Point2) -> f64 {
        if self.fan.len() <= 8 {
            return self.normals.iter().zip(&self.offsets).map(|(n, h)| n.dot(v) / h).fold(0.0, f64::max);
        }
        if v.x == 0.0 && v.y == 0.0 {
            return 0.0;
        }
        // The ray through `v` leaves through the edge whose angular range holds it.
        let theta = wrap(angle_of(v));
        let k = self.fan.partition_point(|&(a, _)| a <= theta);
        let e = self.fan[(k + self.fan.len() - 1) % self.fan.len()].1;
        self.normals[e].dot(v) / self.offsets[e]
    }

    fn boundary(&self, theta: f64) -> Point2 {
        let u = Point2::new(theta.cos(), theta.sin());
        u * (1.0 / self.norm(u))
    }

    fn crossings(&self, d: Point2) -> Vec<f64> {
        if d.norm() >= 2.0 * self.outer || (d.x == 0.0 && d.y == 0.0) {
            return Vec::new();
        }
        // Only edges meeting the annulus `inner ≤ |x - c| ≤ outer` about the
        // other center can reach the other boundary.
        let slack = 1e-9 * self.outer;
        let near = |c: Point2| {
            let (lo, hi) = (self.inner - slack, self.outer + slack);
            self.poly
                .edges()
                .filter(move |&(p, q)| point_segment_distance(c, p, q) <= hi && (p - c).norm().max((q - c).norm()) >= lo)
        };
        let mine: Vec<(Point2, Point2)> = near(d).collect();
        let theirs: Vec<(Point2, Point2)> = near(-d).map(|(r, s)| (r + d, s + d)).collect();
        let mut out = Vec::new();
        for &(p, q) in &mine {
            for &(r, s) in &theirs {
                if let Some(x) = segment_intersection(p, q, r, s) {
                    out.push(angle_of(x));
                }
            }
        }
        out
    }

    fn level_crossings(&self, h: f64) -> Vec<f64> {
        match self.section(h) {
            Some((lo, hi)) if lo < hi => vec![angle_of(Point2::new(lo, h)), angle_of(Point2::new(hi, h))],
            _ => Vec::new(),
        }
    }

    fn section(&self, h: f64) -> Option<(f64, f64)> {
        horizontal_section(self.poly.vertices(), h)
    }

    fn outer_radius(&self) -> f64 {
        self.outer
    }

    /// Tangent at the right crossing of `∂U` with the x-axis; at a vertex the
    /// supporting line bisecting the normal cone is used.
    fn monotone_dir(&self) -> Point2 {
        let r = 1.0 / self.norm(Point2::new(1.0, 0.0));
        let hit = Point2::new(r, 0.0);
        let scale = self.outer.max(1.0);
        let active: Vec<Point2> = self
            .normals
            .iter()
            .zip(&self.offsets)
            .filter(|(n, h)| (n.dot(hit) - **h).abs() <= 1e-12 * scale)
            .map(|(n, _)| *n)
            .collect();
        let normal = active.iter().fold(Point2::default(), |acc, &n| acc + n).normalized();
        let t = normal.perp();
        if t.y > 0.0 { t } else { -t }
    }

    fn rotated(&self, angle: f64) -> Self {
        Self::new(self.poly.rotated(angle))
    }
}

fn wrap(theta: f64) -> f64 {
    let t = theta.rem_euclid(TAU);
    if t >= TAU { 0.0 } else { t }
}

/// Splits `∂U` at `cuts` and keeps the pieces whose midpoint satisfies `keep`.
pub fn classify_arcs<U: UnitBall>(ball: &U, cuts: Vec<f64>, keep: impl Fn(Point2) -> bool) -> ArcSet {
    let mut c: Vec<f64> = cuts.into_iter().map(wrap).collect();
    c.sort_by(f64::total_cmp);
    c.dedup_by(|a, b| (*a - *b).abs() < 1e-14);
    if c.is_empty() {
        return if keep(ball.boundary(0.0)) { vec![(0.0, TAU)] } else { Vec::new() };
    }
    let mut out = Vec::new();
    let k = c.len();
    for i in 0..k {
        let a = c[i];
        let b = if i + 1 < k { c[i + 1] } else { c[0] + TAU };
        if b - a < MIN_ARC {
            continue;
        }
        if keep(ball.boundary(0.5 * (a + b))) {
            if b <= TAU {
                out.push((a, b));
            } else {
                out.push((a, TAU));
                out.push((0.0, b - TAU));
            }
        }
    }
    normalize(out)
}

/// Sorts and merges touching pieces.
pub fn normalize(mut arcs: ArcSet) -> ArcSet {
    arcs.retain(|(a, b)| b - a >= MIN_ARC);
    arcs.sort_by(|x, y| x.0.total_cmp(&y.0));
    let mut out: ArcSet = Vec::with_capacity(arcs.len());
    for (a, b) in arcs {
        match out.last_mut() {
            Some(last) if a <= last.1 => last.1 = last.1.max(b),
            _ => out.push((a, b)),
        }
    }
    out
}

/// Angles of `∂U` lying strictly inside `int(U + d)`.
pub fn inside_arcs<U: UnitBall>(ball: &U, d: Point2) -> ArcSet {
    classify_arcs(ball, ball.crossings(d), |p| ball.norm(p - d) < 1.0)
}

/// Angles of `∂U` with `y ≤ h`.
pub fn below_arcs<U: UnitBall>(ball: &U, h: f64) -> ArcSet {
    classify_arcs(ball, ball.level_crossings(h), |p| p.y <= h)
}

/// `allowed` minus the union of `excluded` (both normalized).
pub fn subtract(allowed: &[(f64, f64)], excluded: &[(f64, f64)]) -> ArcSet {
    let mut out = Vec::new();
    for &(a, b) in allowed {
        let mut cur = a;
        for &(ea, eb) in excluded {
            if eb <= cur {
                continue;
            }
            if ea >= b {
                break;
            }
            if ea > cur {
                out.push((cur, ea));
            }
            cur = cur.max(eb);
            if cur >= b {
                break;
            }
        }
        if cur < b {
            out.push((cur, b));
        }
    }
    out.retain(|(a, b)| b - a >= MIN_ARC);
    out
}

/// Whether a closed arc set meets an open one.
pub fn meets(closed: &[(f64, f64)], open: &[(f64, f64)]) -> bool {
    closed.iter().any(|&(a, b)| open.iter().any(|&(c, d)| a < d && c < b))
}
