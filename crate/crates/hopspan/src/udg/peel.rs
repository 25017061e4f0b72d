//! Bipartite peeling: repeatedly pick the point `p` with the most cross
//! neighbors, remove `W = N(p) ∪ I(p) ∪ {p}` and emit a star at `p`.

use serde::{Deserialize, Serialize};

use super::ball::UnitBall;
use super::hull::{boundary_circle_intersections, hull_points, Side};
use crate::geom::Point2;
use crate::graph::{Spanner, SpannerBuilder};

/// Slack on the unit gauge distance when excluding `N(p1) ∪ N(p2)` from `I(p)`.
pub const EXCLUSION_SLACK: f64 = 1e-7;

/// One removal. Indices are local to the caller's numbering: `A` first, then `B`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PeelStep {
    pub p: usize,
    pub p1: Point2,
    pub p2: Point2,
    /// Removed set, sorted.
    pub w: Vec<usize>,
    /// Edges `(p, v)` of the star `H(W)`.
    pub star_edges: Vec<(usize, usize)>,
    /// Candidates for `I(p)` dropped because `N(v) ⊄ N(p)`.
    pub containment_violations: usize,
    /// `p1`, `p2` could not be located; `I(p)` was taken empty.
    pub fallback: bool,
}

impl PeelStep {
    /// The per-step edge budget `|H(W)| ≤ 5|W|`.
    pub fn within_budget(&self) -> bool {
        self.star_edges.len() <= 5 * self.w.len()
    }
}

/// Peels `a ∪ b` (given in a frame where `a` is above the x-axis and `b`
/// below) until no cross edges remain. `adj(i, j)` decides adjacency of local
/// indices `i < |a| ≤ j`.
pub fn peel<U, F>(ball: &U, a: &[Point2], b: &[Point2], adj: F) -> Vec<PeelStep>
where
    U: UnitBall,
    F: Fn(usize, usize) -> bool,
{
    let na = a.len();
    let n = na + b.len();
    let pos = |i: usize| if i < na { a[i] } else { b[i - na] };
    let mut cross: Vec<Vec<usize>> = vec![Vec::new(); n];
    for i in 0..na {
        for j in na..n {
            if adj(i, j) {
                cross[i].push(j);
                cross[j].push(i);
            }
        }
    }
    let mut alive = vec![true; n];
    let mut steps = Vec::new();
    loop {
        let live = |v: &usize| alive[*v];
        let nbrs = |u: usize| cross[u].iter().copied().filter(live).collect::<Vec<_>>();
        let Some(p) = (0..n)
            .filter(|&u| alive[u])
            .map(|u| (cross[u].iter().filter(|v| alive[**v]).count(), u))
            .filter(|&(d, _)| d > 0)
            .max_by(|x, y| x.0.cmp(&y.0).then(y.1.cmp(&x.1)))
            .map(|(_, u)| u)
        else {
            break;
        };
        let np = nbrs(p);
        let mut nn: Vec<usize> = np.iter().flat_map(|&u| nbrs(u)).collect();
        nn.sort_unstable();
        nn.dedup();

        // The opposite side's remaining points and its hull.
        let (opp, side): (Vec<usize>, Side) =
            if p < na { ((na..n).filter(|&v| alive[v]).collect(), Side::Below) } else { ((0..na).filter(|&v| alive[v]).collect(), Side::Above) };
        let opp_pts: Vec<Point2> = opp.iter().map(|&v| pos(v)).collect();
        let chain = hull_points(ball, &opp_pts, side);
        let (mut p1, mut p2, mut fallback) = (pos(p), pos(p), false);
        let mut candidates = Vec::new();
        match boundary_circle_intersections(pos(p), &chain) {
            Ok((q1, q2)) => {
                (p1, p2) = (q1, q2);
                let far = |v: usize, q: Point2| ball.norm(pos(v) - q) > 1.0 + EXCLUSION_SLACK;
                candidates.extend(nn.iter().copied().filter(|&v| v != p && far(v, q1) && far(v, q2)));
            }
            Err(_) => fallback = true,
        }
        let mut violations = 0;
        let mut ip = Vec::new();
        for v in candidates {
            // `np` is sorted.
            if nbrs(v).iter().all(|u| np.binary_search(u).is_ok()) {
                ip.push(v);
            } else {
                violations += 1;
            }
        }

        let mut w: Vec<usize> = np.iter().chain(&ip).copied().chain([p]).collect();
        w.sort_unstable();
        w.dedup();
        let mut leaves: Vec<usize> = nn.iter().chain(&np).copied().filter(|&v| v != p).collect();
        leaves.sort_unstable();
        leaves.dedup();
        let star_edges = leaves.into_iter().map(|v| (p, v)).collect();
        for &v in &w {
            alive[v] = false;
        }
        steps.push(PeelStep { p, p1, p2, w, star_edges, containment_violations: violations, fallback });
    }
    steps
}

/// Two-hop spanner of the cross edges between `a` (above the axis) and `b`
/// (below), with adjacency from `ball`. Vertices are numbered `a` then `b`.
pub fn bipartite_2hop<U: UnitBall>(ball: &U, a: &[Point2], b: &[Point2]) -> (Spanner, Vec<PeelStep>) {
    let na = a.len();
    let steps = peel(ball, a, b, |i, j| ball.adjacent(a[i], b[j - na]));
    let mut builder = SpannerBuilder::new(na + b.len());
    for s in &steps {
        builder.extend(s.star_edges.iter().copied(), "pair-peel");
    }
    (builder.build(2), steps)
}
