//! Geometric primitives, predicates and measures shared by every construction.
//!
//! All coordinates are `f64`. Predicates use closed-set semantics: touching
//! objects intersect. Comparisons inside predicates are exact so that every
//! module that asks "do these two objects meet?" gets the same answer; the
//! tolerance [`EPS`] is reserved for constructions (clipping, separation).

use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Construction tolerance.
pub const EPS: f64 = 1e-9;

/// A point (or vector) in the plane.
#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct Point2 {
    pub x: f64,
    pub y: f64,
}

impl Point2 {
    pub const fn new(x: f64, y: f64) -> Self {
        Self { x, y }
    }

    pub fn dot(self, o: Self) -> f64 {
        self.x * o.x + self.y * o.y
    }

    pub fn cross(self, o: Self) -> f64 {
        self.x * o.y - self.y * o.x
    }

    pub fn norm2(self) -> f64 {
        self.dot(self)
    }

    pub fn norm(self) -> f64 {
        self.x.hypot(self.y)
    }

    pub fn dist(self, o: Self) -> f64 {
        (self - o).norm()
    }

    /// Counterclockwise perpendicular.
    pub fn perp(self) -> Self {
        Self::new(-self.y, self.x)
    }

    pub fn rotate(self, angle: f64) -> Self {
        let (s, c) = angle.sin_cos();
        Self::new(c * self.x - s * self.y, s * self.x + c * self.y)
    }

    pub fn normalized(self) -> Self {
        let n = self.norm();
        Self::new(self.x / n, self.y / n)
    }

    pub fn is_finite(self) -> bool {
        self.x.is_finite() && self.y.is_finite()
    }
}

impl Add for Point2 {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        Self::new(self.x + o.x, self.y + o.y)
    }
}

impl Sub for Point2 {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        Self::new(self.x - o.x, self.y - o.y)
    }
}

impl Mul<f64> for Point2 {
    type Output = Self;
    fn mul(self, s: f64) -> Self {
        Self::new(self.x * s, self.y * s)
    }
}

impl Neg for Point2 {
    type Output = Self;
    fn neg(self) -> Self {
        Self::new(-self.x, -self.y)
    }
}

/// Closed axis-aligned rectangle `[x_lo, x_hi] × [y_lo, y_hi]`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct AxisRect {
    pub x_lo: f64,
    pub x_hi: f64,
    pub y_lo: f64,
    pub y_hi: f64,
}

impl AxisRect {
    pub fn new(x_lo: f64, x_hi: f64, y_lo: f64, y_hi: f64) -> Result<Self> {
        let r = Self { x_lo, x_hi, y_lo, y_hi };
        if !(x_lo.is_finite() && x_hi.is_finite() && y_lo.is_finite() && y_hi.is_finite()) {
            return Err(Error::Invalid("non-finite rectangle coordinate".into()));
        }
        if x_lo > x_hi || y_lo > y_hi {
            return Err(Error::Invalid(format!("inverted rectangle {r:?}")));
        }
        Ok(r)
    }

    pub fn width(&self) -> f64 {
        self.x_hi - self.x_lo
    }

    pub fn height(&self) -> f64 {
        self.y_hi - self.y_lo
    }

    pub fn intersects(&self, o: &Self) -> bool {
        self.x_lo <= o.x_hi && o.x_lo <= self.x_hi && self.y_lo <= o.y_hi && o.y_lo <= self.y_hi
    }

    pub fn intersection(&self, o: &Self) -> Option<Self> {
        self.intersects(o).then(|| Self {
            x_lo: self.x_lo.max(o.x_lo),
            x_hi: self.x_hi.min(o.x_hi),
            y_lo: self.y_lo.max(o.y_lo),
            y_hi: self.y_hi.min(o.y_hi),
        })
    }

    pub fn contains_point(&self, p: Point2) -> bool {
        self.x_lo <= p.x && p.x <= self.x_hi && self.y_lo <= p.y && p.y <= self.y_hi
    }

    /// Corners in counterclockwise order starting at the lower left.
    pub fn corners(&self) -> [Point2; 4] {
        [
            Point2::new(self.x_lo, self.y_lo),
            Point2::new(self.x_hi, self.y_lo),
            Point2::new(self.x_hi, self.y_hi),
            Point2::new(self.x_lo, self.y_hi),
        ]
    }

    pub fn center(&self) -> Point2 {
        Point2::new(0.5 * (self.x_lo + self.x_hi), 0.5 * (self.y_lo + self.y_hi))
    }

    /// Smallest rectangle containing all points.
    pub fn bounding(points: &[Point2]) -> Option<Self> {
        let first = points.first()?;
        let mut r = Self { x_lo: first.x, x_hi: first.x, y_lo: first.y, y_hi: first.y };
        for p in &points[1..] {
            r.x_lo = r.x_lo.min(p.x);
            r.x_hi = r.x_hi.max(p.x);
            r.y_lo = r.y_lo.min(p.y);
            r.y_hi = r.y_hi.max(p.y);
        }
        Some(r)
    }

    pub fn to_polygon(&self) -> Result<ConvexPolygon> {
        ConvexPolygon::new(self.corners().to_vec())
    }
}

/// Convex polygon with counterclockwise, strictly convex vertices.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ConvexPolygon {
    vertices: Vec<Point2>,
}

impl ConvexPolygon {
    /// Validates orientation and strict convexity.
    pub fn new(vertices: Vec<Point2>) -> Result<Self> {
        let n = vertices.len();
        if n < 3 {
            return Err(Error::DegeneratePolygon(format!("{n} vertices")));
        }
        if vertices.iter().any(|p| !p.is_finite()) {
            return Err(Error::DegeneratePolygon("non-finite vertex".into()));
        }
        for i in 0..n {
            let a = vertices[i];
            let b = vertices[(i + 1) % n];
            let c = vertices[(i + 2) % n];
            if (b - a).cross(c - b) <= 0.0 {
                return Err(Error::DegeneratePolygon(format!("non-convex or clockwise turn at vertex {}", (i + 1) % n)));
            }
        }
        Ok(Self { vertices })
    }

    /// Convex hull of arbitrary points; fails if the hull has empty interior.
    pub fn from_points(points: &[Point2]) -> Result<Self> {
        Self::new(convex_hull(points))
    }

    /// Regular `k`-gon with the given circumradius, one vertex at angle `rotation`.
    pub fn regular(k: usize, radius: f64, center: Point2, rotation: f64) -> Self {
        let vertices = (0..k)
            .map(|i| {
                let t = rotation + std::f64::consts::TAU * i as f64 / k as f64;
                center + Point2::new(t.cos(), t.sin()) * radius
            })
            .collect();
        Self { vertices }
    }

    pub fn vertices(&self) -> &[Point2] {
        &self.vertices
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    /// Directed edges `(v_i, v_{i+1})`.
    pub fn edges(&self) -> impl Iterator<Item = (Point2, Point2)> + '_ {
        let n = self.vertices.len();
        (0..n).map(move |i| (self.vertices[i], self.vertices[(i + 1) % n]))
    }

    pub fn area(&self) -> f64 {
        polygon_area(&self.vertices)
    }

    pub fn centroid(&self) -> Point2 {
        polygon_centroid(&self.vertices)
    }

    pub fn bbox(&self) -> AxisRect {
        AxisRect::bounding(&self.vertices).expect("polygon has vertices")
    }

    pub fn contains(&self, p: Point2) -> bool {
        self.edges().all(|(a, b)| (b - a).cross(p - a) >= 0.0)
    }

    pub fn translated(&self, d: Point2) -> Self {
        Self { vertices: self.vertices.iter().map(|&p| p + d).collect() }
    }

    pub fn scaled(&self, s: f64) -> Self {
        assert!(s > 0.0, "scale must be positive");
        Self { vertices: self.vertices.iter().map(|&p| p * s).collect() }
    }

    pub fn rotated(&self, angle: f64) -> Self {
        Self { vertices: self.vertices.iter().map(|&p| p.rotate(angle)).collect() }
    }

    /// Image under an orientation-preserving map, re-validated.
    pub fn map(&self, f: impl Fn(Point2) -> Point2) -> Result<Self> {
        Self::from_points(&self.vertices.iter().map(|&p| f(p)).collect::<Vec<_>>())
    }

    /// `(min, max)` of the projection onto `axis`.
    pub fn project(&self, axis: Point2) -> (f64, f64) {
        project(&self.vertices, axis)
    }

    /// Unit outward edge normals.
    pub fn normals(&self) -> Vec<Point2> {
        self.edges().map(|(a, b)| Point2::new(b.y - a.y, a.x - b.x).normalized()).collect()
    }

    /// `[x_min, x_max]` of the intersection with the line `y = h`.
    pub fn horizontal_section(&self, h: f64) -> Option<(f64, f64)> {
        horizontal_section(&self.vertices, h)
    }
}

/// Signed area (positive for counterclockwise order).
pub fn polygon_area(v: &[Point2]) -> f64 {
    let n = v.len();
    (0..n).map(|i| v[i].cross(v[(i + 1) % n])).sum::<f64>() * 0.5
}

/// Area centroid; falls back to the vertex mean for degenerate input.
pub fn polygon_centroid(v: &[Point2]) -> Point2 {
    let n = v.len();
    let a = polygon_area(v);
    if a.abs() < 1e-300 || n < 3 {
        let s = v.iter().fold(Point2::default(), |acc, &p| acc + p);
        return s * (1.0 / n.max(1) as f64);
    }
    let mut c = Point2::default();
    for i in 0..n {
        let (p, q) = (v[i], v[(i + 1) % n]);
        c = c + (p + q) * p.cross(q);
    }
    c * (1.0 / (6.0 * a))
}

pub fn project(points: &[Point2], axis: Point2) -> (f64, f64) {
    points.iter().fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), p| {
        let d = p.dot(axis);
        (lo.min(d), hi.max(d))
    })
}

/// `[x_min, x_max]` of a convex vertex cycle cut by the line `y = h`.
pub fn horizontal_section(v: &[Point2], h: f64) -> Option<(f64, f64)> {
    let n = v.len();
    let mut lo = f64::INFINITY;
    let mut hi = f64::NEG_INFINITY;
    for i in 0..n {
        let (p, q) = (v[i], v[(i + 1) % n]);
        if p.y == h {
            lo = lo.min(p.x);
            hi = hi.max(p.x);
        }
        if (p.y < h && h < q.y) || (q.y < h && h < p.y) {
            let x = p.x + (h - p.y) * (q.x - p.x) / (q.y - p.y);
            lo = lo.min(x);
            hi = hi.max(x);
        }
    }
    (lo <= hi).then_some((lo, hi))
}

/// Andrew's monotone chain; counterclockwise, collinear points dropped,
/// starting at the lowest-leftmost point in `(x, y)` order.
pub fn convex_hull(points: &[Point2]) -> Vec<Point2> {
    let mut pts: Vec<Point2> = points.to_vec();
    pts.sort_by(|a, b| a.x.total_cmp(&b.x).then(a.y.total_cmp(&b.y)));
    pts.dedup();
    if pts.len() < 3 {
        return pts;
    }
    let mut hull: Vec<Point2> = Vec::with_capacity(2 * pts.len());
    for pass in 0..2 {
        let start = hull.len();
        let iter: Box<dyn Iterator<Item = &Point2>> =
            if pass == 0 { Box::new(pts.iter()) } else { Box::new(pts.iter().rev()) };
        for &p in iter {
            while hull.len() >= start + 2 {
                let a = hull[hull.len() - 2];
                let b = hull[hull.len() - 1];
                if (b - a).cross(p - b) <= 0.0 {
                    hull.pop();
                } else {
                    break;
                }
            }
            hull.push(p);
        }
        hull.pop();
    }
    hull
}

/// Keeps the part of a convex vertex cycle with `n · x ≤ c` (Sutherland–Hodgman step).
pub fn clip_halfplane(poly: &[Point2], n: Point2, c: f64) -> Vec<Point2> {
    let m = poly.len();
    let mut out = Vec::with_capacity(m + 1);
    for i in 0..m {
        let p = poly[i];
        let q = poly[(i + 1) % m];
        let dp = n.dot(p) - c;
        let dq = n.dot(q) - c;
        if dp <= 0.0 {
            out.push(p);
        }
        if (dp < 0.0 && dq > 0.0) || (dp > 0.0 && dq < 0.0) {
            let t = dp / (dp - dq);
            out.push(p + (q - p) * t);
        }
    }
    out.dedup();
    if out.len() > 1 && out.first() == out.last() {
        out.pop();
    }
    out
}

/// Convex vertex cycle clipped to the strip `y_lo ≤ y ≤ y_hi`; may be degenerate.
pub fn clip_points_to_slab(poly: &[Point2], y_lo: f64, y_hi: f64) -> Vec<Point2> {
    let below = clip_halfplane(poly, Point2::new(0.0, 1.0), y_hi);
    clip_halfplane(&below, Point2::new(0.0, -1.0), -y_lo)
}

/// Intersection of `p` with the horizontal strip, or `None` when it is empty
/// or has no interior.
pub fn clip_to_slab(p: &ConvexPolygon, y_lo: f64, y_hi: f64) -> Option<ConvexPolygon> {
    debug_assert!(y_lo < y_hi);
    ConvexPolygon::from_points(&clip_points_to_slab(p.vertices(), y_lo, y_hi)).ok()
}

/// Intersection of a convex vertex cycle with a convex polygon.
pub fn convex_intersection(a: &[Point2], b: &ConvexPolygon) -> Vec<Point2> {
    let mut cur = a.to_vec();
    for (p, q) in b.edges() {
        if cur.is_empty() {
            break;
        }
        let n = Point2::new(q.y - p.y, p.x - q.x);
        cur = clip_halfplane(&cur, n, n.dot(p));
    }
    cur
}

/// Separating-axis test on convex vertex cycles, including degenerate ones
/// (single points and segments). Touching sets intersect.
pub fn convex_sets_intersect(a: &[Point2], b: &[Point2]) -> bool {
    if a.is_empty() || b.is_empty() {
        return false;
    }
    let separated = |axis: Point2| {
        if axis.x == 0.0 && axis.y == 0.0 {
            return false;
        }
        let (alo, ahi) = project(a, axis);
        let (blo, bhi) = project(b, axis);
        ahi < blo || bhi < alo
    };
    for poly in [a, b] {
        let n = poly.len();
        if n == 1 {
            continue;
        }
        for i in 0..n {
            let e = poly[(i + 1) % n] - poly[i];
            if separated(e.perp()) {
                return false;
            }
            if n == 2 && separated(e) {
                return false;
            }
        }
    }
    !(a.len() <= 2 && b.len() <= 2 && separated(b[0] - a[0]))
}

pub fn polygons_intersect(a: &ConvexPolygon, b: &ConvexPolygon) -> bool {
    convex_sets_intersect(a.vertices(), b.vertices())
}

/// Distance from `p` to the segment `ab`.
pub fn point_segment_distance(p: Point2, a: Point2, b: Point2) -> f64 {
    let d = b - a;
    let t = if d.norm2() == 0.0 { 0.0 } else { ((p - a).dot(d) / d.norm2()).clamp(0.0, 1.0) };
    p.dist(a + d * t)
}

/// Euclidean distance between two convex polygons, zero when they meet.
pub fn polygon_distance(a: &ConvexPolygon, b: &ConvexPolygon) -> f64 {
    if polygons_intersect(a, b) {
        return 0.0;
    }
    let mut best = f64::INFINITY;
    for (x, y) in [(a, b), (b, a)] {
        for &v in x.vertices() {
            for (p, q) in y.edges() {
                best = best.min(point_segment_distance(v, p, q));
            }
        }
    }
    best
}

/// The vertex payload of every intersection graph.
#[derive(Clone, Debug, PartialEq)]
pub enum GeomObject {
    Interval { lo: f64, hi: f64 },
    /// Center of a disk; two centers are adjacent iff their distance is at most 1.
    UnitDiskCenter(Point2),
    Rect(AxisRect),
    Polygon(ConvexPolygon),
    /// Translate `body + offset`; `body_id` names the shared body.
    Translate { body_id: usize, body: Arc<ConvexPolygon>, offset: Point2 },
}

impl GeomObject {
    pub fn kind(&self) -> &'static str {
        match self {
            GeomObject::Interval { .. } => "interval",
            GeomObject::UnitDiskCenter(_) => "unit disk",
            GeomObject::Rect(_) => "rectangle",
            GeomObject::Polygon(_) => "polygon",
            GeomObject::Translate { .. } => "translate",
        }
    }

    /// Vertex cycle for the polygonal variants.
    fn outline(&self) -> Option<Vec<Point2>> {
        match self {
            GeomObject::Rect(r) => Some(convex_hull(&r.corners())),
            GeomObject::Polygon(p) => Some(p.vertices().to_vec()),
            GeomObject::Translate { body, offset, .. } => {
                Some(body.vertices().iter().map(|&v| v + *offset).collect())
            }
            _ => None,
        }
    }

    /// Representative point used for drawing.
    pub fn anchor(&self) -> Point2 {
        match self {
            GeomObject::Interval { lo, hi } => Point2::new(0.5 * (lo + hi), 0.0),
            GeomObject::UnitDiskCenter(p) => *p,
            GeomObject::Rect(r) => r.center(),
            GeomObject::Polygon(p) => p.centroid(),
            GeomObject::Translate { body, offset, .. } => body.centroid() + *offset,
        }
    }
}

/// Closed-set intersection predicate.
pub fn intersects(a: &GeomObject, b: &GeomObject) -> Result<bool> {
    use GeomObject::*;
    match (a, b) {
        (Interval { lo: a0, hi: a1 }, Interval { lo: b0, hi: b1 }) => Ok(a0 <= b1 && b0 <= a1),
        (UnitDiskCenter(p), UnitDiskCenter(q)) => Ok((*p - *q).norm2() <= 1.0),
        (Rect(r), Rect(s)) => Ok(r.intersects(s)),
        _ => match (a.outline(), b.outline()) {
            (Some(pa), Some(pb)) => Ok(convex_sets_intersect(&pa, &pb)),
            _ => Err(Error::UnsupportedPredicate(a.kind(), b.kind())),
        },
    }
}

/// Enclosing and inscribed radii of a convex body.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Fatness {
    pub rho_out: f64,
    pub rho_in: f64,
    pub alpha: f64,
}

pub fn fatness(p: &ConvexPolygon) -> Result<Fatness> {
    if p.area() <= 0.0 {
        return Err(Error::DegeneratePolygon("zero area".into()));
    }
    let (_, rho_out) = min_enclosing_circle(p.vertices());
    let (_, rho_in) = max_inscribed_circle(p);
    if rho_in.is_nan() || rho_in <= 0.0 {
        return Err(Error::DegeneratePolygon("no inscribed disk".into()));
    }
    Ok(Fatness { rho_out, rho_in, alpha: rho_out / rho_in })
}

fn circle_two(a: Point2, b: Point2) -> (Point2, f64) {
    let c = (a + b) * 0.5;
    (c, c.dist(a))
}

fn circle_three(a: Point2, b: Point2, c: Point2) -> (Point2, f64) {
    let bx = b - a;
    let cx = c - a;
    let d = 2.0 * bx.cross(cx);
    if d.abs() < 1e-300 {
        // Collinear: the widest pair decides.
        let mut best = circle_two(a, b);
        for cand in [circle_two(a, c), circle_two(b, c)] {
            if cand.1 > best.1 {
                best = cand;
            }
        }
        return best;
    }
    let ux = (cx.y * bx.norm2() - bx.y * cx.norm2()) / d;
    let uy = (bx.x * cx.norm2() - cx.x * bx.norm2()) / d;
    let center = a + Point2::new(ux, uy);
    (center, center.dist(a))
}

/// Minimum enclosing circle by randomized incremental move-to-front.
/// Deterministic: the permutation is drawn from a fixed seed.
pub fn min_enclosing_circle(points: &[Point2]) -> (Point2, f64) {
    let mut pts = points.to_vec();
    if pts.is_empty() {
        return (Point2::default(), 0.0);
    }
    pts.shuffle(&mut ChaCha8Rng::seed_from_u64(0x5eed));
    let slack = |c: Point2, r: f64, p: Point2| p.dist(c) <= r * (1.0 + 1e-12) + 1e-15;
    let (mut c, mut r) = (pts[0], 0.0);
    for i in 1..pts.len() {
        if slack(c, r, pts[i]) {
            continue;
        }
        (c, r) = (pts[i], 0.0);
        for j in 0..i {
            if slack(c, r, pts[j]) {
                continue;
            }
            (c, r) = circle_two(pts[i], pts[j]);
            for k in 0..j {
                if !slack(c, r, pts[k]) {
                    (c, r) = circle_three(pts[i], pts[j], pts[k]);
                }
            }
        }
    }
    (c, r)
}

/// Chebyshev center: the largest `r` with `n_i · x + r ≤ h_i` for every edge,
/// found by bisection on `r` with a halfplane feasibility check.
pub fn max_inscribed_circle(p: &ConvexPolygon) -> (Point2, f64) {
    let normals = p.normals();
    let offsets: Vec<f64> = normals.iter().zip(p.vertices()).map(|(n, v)| n.dot(*v)).collect();
    let feasible = |r: f64| {
        let mut cur = p.vertices().to_vec();
        for (n, h) in normals.iter().zip(&offsets) {
            cur = clip_halfplane(&cur, *n, h - r);
            if cur.is_empty() {
                return None;
            }
        }
        Some(cur)
    };
    let (_, r_out) = min_enclosing_circle(p.vertices());
    let (mut lo, mut hi) = (0.0, r_out);
    let mut center = p.centroid();
    for _ in 0..100 {
        let mid = 0.5 * (lo + hi);
        match feasible(mid) {
            Some(region) => {
                lo = mid;
                center = polygon_centroid(&region);
            }
            None => hi = mid,
        }
        if hi - lo <= 1e-15 * r_out {
            break;
        }
    }
    (center, lo)
}

/// Proper rigid motion `x ↦ R(θ) x + t`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct RigidTransform {
    pub cos: f64,
    pub sin: f64,
    pub tx: f64,
    pub ty: f64,
}

impl RigidTransform {
    pub fn identity() -> Self {
        Self { cos: 1.0, sin: 0.0, tx: 0.0, ty: 0.0 }
    }

    pub fn angle(&self) -> f64 {
        self.sin.atan2(self.cos)
    }

    pub fn apply(&self, p: Point2) -> Point2 {
        Point2::new(self.cos * p.x - self.sin * p.y + self.tx, self.sin * p.x + self.cos * p.y + self.ty)
    }
}

/// Which branch produced a separating transform.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum SeparationBranch {
    /// The middle of the widest gap between the two tiles.
    Tiles,
    /// A point sat on the tile separator; the point sets were separated directly.
    Perturbed,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SeparatingTransform {
    pub transform: RigidTransform,
    pub branch: SeparationBranch,
}

/// Best `(gap, normal, midpoint)` over the candidate axes, with `a` on the
/// positive side of the normal.
fn widest_gap(a: &[Point2], b: &[Point2], axes: &[Point2]) -> Option<(f64, Point2, f64)> {
    let mut best: Option<(f64, Point2, f64)> = None;
    for &axis in axes {
        if axis.norm2() == 0.0 {
            continue;
        }
        let n0 = axis.normalized();
        for n in [n0, -n0] {
            let (alo, _) = project(a, n);
            let (_, bhi) = project(b, n);
            let gap = alo - bhi;
            if best.is_none_or(|(g, _, _)| gap > g) {
                best = Some((gap, n, 0.5 * (alo + bhi)));
            }
        }
    }
    best
}

fn transform_for(n: Point2, m: f64) -> RigidTransform {
    // Rotation taking `n` to +y, then shift the separator to y = 0.
    RigidTransform { cos: n.y, sin: n.x, tx: 0.0, ty: -m }
}

/// Rigid motion mapping a separating line of `sigma` and `tau` to the x-axis
/// with `a` strictly above and `b` strictly below.
pub fn separating_axis_transform(
    a: &[Point2],
    b: &[Point2],
    sigma: &ConvexPolygon,
    tau: &ConvexPolygon,
) -> Result<SeparatingTransform> {
    let mut axes = sigma.normals();
    axes.extend(tau.normals());
    let (gap, n, m) = widest_gap(sigma.vertices(), tau.vertices(), &axes).ok_or(Error::NotSeparable)?;
    if gap < -EPS {
        return Err(Error::NotSeparable);
    }
    let t = transform_for(n, m);
    let strict = a.iter().all(|&p| t.apply(p).y > EPS) && b.iter().all(|&p| t.apply(p).y < -EPS);
    if strict {
        return Ok(SeparatingTransform { transform: t, branch: SeparationBranch::Tiles });
    }
    let (ha, hb) = (convex_hull(a), convex_hull(b));
    let mut axes = Vec::new();
    for h in [&ha, &hb] {
        for i in 0..h.len() {
            let e = h[(i + 1) % h.len()] - h[i];
            axes.push(e.perp());
            axes.push(e);
        }
    }
    let mut closest = (f64::INFINITY, Point2::default());
    for &p in &ha {
        for &q in &hb {
            if p.dist(q) < closest.0 {
                closest = (p.dist(q), p - q);
            }
        }
    }
    axes.push(closest.1);
    axes.extend(&[Point2::new(1.0, 0.0), Point2::new(0.0, 1.0)]);
    match widest_gap(a, b, &axes) {
        Some((gap, n, m)) if gap > 0.0 => {
            Ok(SeparatingTransform { transform: transform_for(n, m), branch: SeparationBranch::Perturbed })
        }
        _ => Err(Error::NotSeparable),
    }
}
