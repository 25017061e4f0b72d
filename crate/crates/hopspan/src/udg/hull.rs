//! Unit-ball hulls of point sets lying on one side of the x-axis.
//!
//! Work happens in a canonical frame with the points above the axis; the
//! `Below` side is handled by the point reflection `p ↦ -p`, which maps every
//! centrally symmetric ball to itself. Let `Z` be the set of admissible empty
//! centers (on or below the axis, at gauge distance ≥ 1 from every point). A
//! point `q` above the axis lies in `int(M)` iff `int(q + U)` meets `Z`, and
//! since `q ∉ Z` this happens iff `int(q + U)` meets `∂Z`. The boundary of
//! `Z` consists of uncovered arcs of `∂(a + U)` and uncovered stretches of the
//! axis, both precomputed here, so each membership query is linear.

use serde::{Deserialize, Serialize};

use super::ball::{below_arcs, inside_arcs, meets, normalize, subtract, ArcSet, UnitBall};
use crate::error::{Error, Result};
use crate::geom::Point2;

/// Which side of the x-axis a point set lies on.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Side {
    Above,
    Below,
}

impl Side {
    fn canon(self, p: Point2) -> Point2 {
        match self {
            Side::Above => p,
            Side::Below => -p,
        }
    }
}

/// Points on the hull boundary plus the empty-region machinery.
#[derive(Clone, Debug)]
pub struct HullChain<U: UnitBall> {
    pub side: Side,
    /// Input indices of boundary points, ordered along the boundary.
    pub members: Vec<usize>,
    /// One admissible empty-ball center per member, in the input frame.
    pub witnesses: Vec<Point2>,
    ball: U,
    dir: Point2,
    /// All input points in the canonical frame.
    points: Vec<Point2>,
    /// Uncovered arcs of `∂(points[i] + U)`.
    arcs: Vec<(usize, ArcSet)>,
    /// Closed uncovered stretches of the axis.
    gaps: Vec<(f64, f64)>,
}

impl<U: UnitBall> HullChain<U> {
    /// Abscissa where the line through `p` parallel to the monotone direction meets the axis.
    pub fn foot(&self, p: Point2) -> f64 {
        p.x - p.y * self.dir.x / self.dir.y
    }

    /// Whether `q` (canonical frame, above the axis) is interior to the union
    /// of admissible empty balls.
    fn in_open_union(&self, q: Point2) -> bool {
        if let Some((l, r)) = self.ball.section(-q.y) {
            let (l, r) = (q.x + l, q.x + r);
            if self.gaps.iter().any(|&(g0, g1)| g0 < r && l < g1) {
                return true;
            }
        }
        let reach = 2.0 * self.ball.outer_radius();
        self.arcs.iter().any(|(i, arcs)| {
            let d = q - self.points[*i];
            d.norm() < reach && meets(arcs, &inside_arcs(&self.ball, d))
        })
    }

    /// Height parameter of the boundary on the line with foot `x`.
    fn height(&self, x: f64) -> f64 {
        let base = Point2::new(x, 0.0);
        let (mut lo, mut hi) = (0.0, (self.ball.outer_radius() + 1e-9) / self.dir.y);
        for _ in 0..64 {
            let mid = 0.5 * (lo + hi);
            if self.in_open_union(base + self.dir * mid) {
                lo = mid;
            } else {
                hi = mid;
            }
            if hi - lo < 1e-13 {
                break;
            }
        }
        0.5 * (lo + hi)
    }

    /// Boundary point with foot `x`, canonical frame.
    fn boundary_point(&self, x: f64) -> Point2 {
        Point2::new(x, 0.0) + self.dir * self.height(x)
    }

    /// Boundary point over foot `x` in the input frame.
    pub fn boundary_at(&self, x: f64) -> Point2 {
        self.side.canon(self.boundary_point(x))
    }

    /// Whether a point of the input frame lies in the hull region.
    pub fn contains(&self, p: Point2) -> bool {
        let q = self.side.canon(p);
        q.y > 0.0 && !self.in_open_union(q)
    }
}

/// Hull of `s`, which must lie strictly on `side` of the x-axis.
pub fn hull_points<U: UnitBall>(ball: &U, s: &[Point2], side: Side) -> HullChain<U> {
    let points: Vec<Point2> = s.iter().map(|&p| side.canon(p)).collect();
    debug_assert!(points.iter().all(|p| p.y > 0.0), "points must lie strictly on their side");
    let reach = 2.0 * ball.outer_radius();
    let mut arcs = Vec::new();
    let mut witnesses = Vec::new();
    for (i, &a) in points.iter().enumerate() {
        let allowed = below_arcs(ball, -a.y);
        if allowed.is_empty() {
            continue;
        }
        let mut excluded = Vec::new();
        for (j, &b) in points.iter().enumerate() {
            let d = b - a;
            if j != i && d.norm() < reach {
                excluded.extend(inside_arcs(ball, d));
            }
        }
        let free = subtract(&allowed, &normalize(excluded));
        if let Some(&(t0, t1)) = free.first() {
            witnesses.push((i, a + ball.boundary(0.5 * (t0 + t1))));
            arcs.push((i, free));
        }
    }
    let mut blocked: Vec<(f64, f64)> = points
        .iter()
        .filter_map(|a| ball.section(-a.y).map(|(l, r)| (a.x + l, a.x + r)))
        .filter(|(l, r)| l < r)
        .collect();
    blocked.sort_by(|x, y| x.0.total_cmp(&y.0));
    let mut gaps = Vec::new();
    let mut cur = f64::NEG_INFINITY;
    for (l, r) in blocked {
        if l > cur {
            gaps.push((cur, l));
        }
        cur = cur.max(r);
    }
    gaps.push((cur, f64::INFINITY));

    let dir = ball.monotone_dir();
    let mut chain = HullChain {
        side,
        members: Vec::new(),
        witnesses: Vec::new(),
        ball: ball.clone(),
        dir,
        points,
        arcs,
        gaps,
    };
    witnesses.sort_by(|x, y| chain.foot(chain.points[x.0]).total_cmp(&chain.foot(chain.points[y.0])));
    if side == Side::Below {
        witnesses.reverse();
    }
    chain.members = witnesses.iter().map(|w| w.0).collect();
    chain.witnesses = witnesses.iter().map(|w| side.canon(w.1)).collect();
    chain
}

/// The extreme points of `(p + U) ∩ ∂hull`, where `p` lies on the side
/// opposite the chain. Found by bisection on the foot coordinate to 1e-10.
pub fn boundary_circle_intersections<U: UnitBall>(p: Point2, chain: &HullChain<U>) -> Result<(Point2, Point2)> {
    let pc = chain.side.canon(p);
    if pc.y >= 0.0 {
        return Err(Error::Invalid("query point is on the chain's side".into()));
    }
    let inside = |x: f64| chain.ball.norm(chain.boundary_point(x) - pc) <= 1.0;
    let seed = chain
        .points
        .iter()
        .filter(|&&u| chain.ball.adjacent(u, pc))
        .map(|&u| chain.foot(u))
        .find(|&x| inside(x))
        .ok_or(Error::NoCrossNeighbors)?;
    let reach = 8.0 * chain.ball.outer_radius() / chain.dir.y + 8.0;
    let extreme = |sign: f64| -> Result<f64> {
        let mut step = 0.25;
        while inside(seed + sign * step) {
            step *= 2.0;
            if step > reach {
                return Err(Error::NoCrossNeighbors);
            }
        }
        let (mut xin, mut xout) = (seed, seed + sign * step);
        while (xout - xin).abs() > 1e-10 {
            let mid = 0.5 * (xin + xout);
            if inside(mid) {
                xin = mid;
            } else {
                xout = mid;
            }
        }
        Ok(xin)
    };
    let (l, r) = (extreme(-1.0)?, extreme(1.0)?);
    let (p1, p2) = (chain.boundary_at(l), chain.boundary_at(r));
    // Report in boundary order of the input frame.
    Ok(if chain.side == Side::Below { (p2, p1) } else { (p1, p2) })
}
