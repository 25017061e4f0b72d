//! Two-hop spanners for translates of a convex polygon.
//!
//! Translates `C + u` and `C + v` meet iff `u - v ∈ C - C`, so adjacency is a
//! norm whose unit ball is the symmetrization `½(C - C)` scaled by 2. A linear
//! map taking the minimum-area enclosing ellipse of the symmetrization to the
//! unit disk makes that ball round enough for the unit disk pipeline.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::geom::{convex_hull, polygons_intersect, ConvexPolygon, GeomObject, Point2};
use crate::graph::Spanner;
use crate::udg::{ball_2hop, BallRun, PolygonBall, DEFAULT_SEED};

/// Relative tolerance of the enclosing-ellipse iteration.
pub const JOHN_TOLERANCE: f64 = 1e-6;
pub const JOHN_MAX_ITERATIONS: usize = 10_000;

/// `½(C ⊕ (-C))`, centered at the origin.
pub fn symmetrize(c: &ConvexPolygon) -> ConvexPolygon {
    let v = c.vertices();
    let diffs: Vec<Point2> = v.iter().flat_map(|&a| v.iter().map(move |&b| (a - b) * 0.5)).collect();
    let hull = convex_hull(&diffs);
    // Parallel edges of C and -C leave nearly collinear hull vertices.
    let scale = hull.iter().map(|p| p.norm()).fold(0.0, f64::max);
    let m = hull.len();
    let kept: Vec<Point2> = (0..m)
        .filter(|&i| {
            let (a, b, c) = (hull[(i + m - 1) % m], hull[i], hull[(i + 1) % m]);
            (b - a).cross(c - b) > 1e-12 * scale * scale
        })
        .map(|i| hull[i])
        .collect();
    ConvexPolygon::new(kept).expect("difference body of a polygon has interior")
}

/// Row-major 2×2 matrix.
pub type Mat2 = [[f64; 2]; 2];

fn mat_vec(m: &Mat2, p: Point2) -> Point2 {
    Point2::new(m[0][0] * p.x + m[0][1] * p.y, m[1][0] * p.x + m[1][1] * p.y)
}

fn inverse(m: &Mat2) -> Mat2 {
    let det = m[0][0] * m[1][1] - m[0][1] * m[1][0];
    [[m[1][1] / det, -m[0][1] / det], [-m[1][0] / det, m[0][0] / det]]
}

/// Square root of a symmetric positive definite matrix.
fn spd_sqrt(m: &Mat2) -> Mat2 {
    let s = (m[0][0] * m[1][1] - m[0][1] * m[1][0]).sqrt();
    let t = (m[0][0] + m[1][1] + 2.0 * s).sqrt();
    [[(m[0][0] + s) / t, m[0][1] / t], [m[1][0] / t, (m[1][1] + s) / t]]
}

/// A centrally symmetric body in normalized position.
#[derive(Clone, Debug, PartialEq)]
pub struct GaugeBody {
    /// The normalized body: inside the unit disk, containing the radius-½ disk.
    pub polygon: ConvexPolygon,
    /// Linear part of the normalizing map; the offset is zero since the input
    /// is symmetric about the origin.
    pub linear: Mat2,
    pub offset: Point2,
}

impl GaugeBody {
    pub fn apply(&self, p: Point2) -> Point2 {
        mat_vec(&self.linear, p) + self.offset
    }

    /// Singular values of the normalizing map, largest first.
    pub fn singular_values(&self) -> (f64, f64) {
        let m = &self.linear;
        let (a, b, c, d) = (m[0][0], m[0][1], m[1][0], m[1][1]);
        let s = a * a + b * b + c * c + d * d;
        let det = (a * d - b * c).abs();
        let disc = (s * s - 4.0 * det * det).max(0.0).sqrt();
        (((s + disc) / 2.0).sqrt(), ((s - disc) / 2.0).max(0.0).sqrt())
    }

    /// Radius of the largest origin-centered disk inside the body.
    pub fn inner_radius(&self) -> f64 {
        self.polygon.edges().map(|(p, q)| (q - p).cross(-p).abs() / (q - p).norm()).fold(f64::INFINITY, f64::min)
    }

    /// Largest vertex norm.
    pub fn outer_radius(&self) -> f64 {
        self.polygon.vertices().iter().map(|v| v.norm()).fold(0.0, f64::max)
    }
}

/// Minimum-area origin-centered ellipse `{x : xᵀ A x ≤ 1}` enclosing `points`,
/// by Khachiyan's barycentric coordinate ascent with away steps. Returns `A`.
pub fn enclosing_ellipse(points: &[Point2]) -> Result<Mat2> {
    let d = 2.0;
    let m = points.len();
    let mut u = vec![1.0 / m as f64; m];
    for _ in 0..JOHN_MAX_ITERATIONS {
        let mut x = [[0.0; 2]; 2];
        for (p, &w) in points.iter().zip(&u) {
            x[0][0] += w * p.x * p.x;
            x[0][1] += w * p.x * p.y;
            x[1][1] += w * p.y * p.y;
        }
        x[1][0] = x[0][1];
        let xi = inverse(&x);
        let g: Vec<f64> = points.iter().map(|&p| p.dot(mat_vec(&xi, p))).collect();
        let (j, mj) = g.iter().copied().enumerate().max_by(|a, b| a.1.total_cmp(&b.1)).expect("nonempty");
        if mj <= d * (1.0 + JOHN_TOLERANCE) {
            // Inflate so that every point is enclosed exactly.
            let s = mj.max(d);
            return Ok([[xi[0][0] / s, xi[0][1] / s], [xi[1][0] / s, xi[1][1] / s]]);
        }
        // Away steps (Wolfe-Atwood) shrink weight on the least useful point
        // of the support and give linear convergence.
        let (k, mk) = g
            .iter()
            .copied()
            .enumerate()
            .filter(|&(i, _)| u[i] > 0.0)
            .min_by(|a, b| a.1.total_cmp(&b.1))
            .expect("support is nonempty");
        let (i, step) = if mj - d >= d - mk {
            (j, (mj - d) / (d * (mj - 1.0)))
        } else {
            let full = (mk - d) / (d * (mk - 1.0));
            (k, full.max(-u[k] / (1.0 - u[k])))
        };
        for w in u.iter_mut() {
            *w *= 1.0 - step;
        }
        u[i] += step;
        u[i] = u[i].max(0.0);
    }
    Err(Error::NotConverged(JOHN_MAX_ITERATIONS))
}

/// Normalize a symmetric body so that its enclosing ellipse becomes the unit
/// disk; the body then contains the disk of radius `1/√2` up to tolerance.
pub fn normalize_john(c: &ConvexPolygon) -> Result<GaugeBody> {
    let a = enclosing_ellipse(c.vertices())?;
    let linear = spd_sqrt(&a);
    let polygon = c.map(|p| mat_vec(&linear, p))?;
    Ok(GaugeBody { polygon, linear, offset: Point2::default() })
}

/// Normalized body, its adjacency ball and the per-object polygons.
pub struct TranslateSetup {
    pub gauge: GaugeBody,
    pub ball: PolygonBall,
    pub centers: Vec<Point2>,
    pub objects: Vec<GeomObject>,
}

pub fn setup(c: &ConvexPolygon, offsets: &[Point2]) -> Result<TranslateSetup> {
    let gauge = normalize_john(&symmetrize(c))?;
    let ball = PolygonBall::new(gauge.polygon.scaled(2.0));
    let centers = offsets.iter().map(|&o| gauge.apply(o)).collect();
    let body = Arc::new(c.clone());
    let objects = offsets.iter().map(|&offset| GeomObject::Translate { body_id: 0, body: body.clone(), offset }).collect();
    Ok(TranslateSetup { gauge, ball, centers, objects })
}

/// Full run with an explicit tiling seed.
pub fn translates_run(c: &ConvexPolygon, offsets: &[Point2], seed: u64) -> Result<BallRun> {
    let s = setup(c, offsets)?;
    let placed: Vec<ConvexPolygon> = offsets.iter().map(|&o| c.translated(o)).collect();
    let reach = 2.0 * s.gauge.outer_radius() + 1e-9;
    ball_2hop(&s.ball, &s.centers, |i, j| polygons_intersect(&placed[i], &placed[j]), reach, seed)
}

/// Two-hop spanner of the intersection graph of the translates `C + offsets[i]`.
pub fn translates_2hop(c: &ConvexPolygon, offsets: &[Point2]) -> Result<Spanner> {
    Ok(translates_run(c, offsets, DEFAULT_SEED)?.spanner)
}
