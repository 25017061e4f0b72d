//! Linear-size two-hop spanners for unit ball graphs.
//!
//! Points are grouped by a hexagonal tiling of diameter 1. Every nonempty
//! tile gets a spanning star; every pair of nearby tiles is rotated so that a
//! separating line becomes the x-axis and the cross edges are peeled.

pub mod ball;
pub mod hull;
pub mod peel;
pub mod tiling;

pub use ball::{Disk, PolygonBall, UnitBall};
pub use hull::{boundary_circle_intersections, hull_points, HullChain, Side};
pub use peel::{bipartite_2hop, peel, PeelStep};
pub use tiling::{Tile, TileIndex};

use crate::error::Result;
use crate::geom::{separating_axis_transform, Point2, SeparationBranch};
use crate::graph::{Spanner, SpannerBuilder};
use crate::par;

/// Seed of the tiling offset used by [`udg_2hop`].
pub const DEFAULT_SEED: u64 = 0x7115;

/// The peel run of one tile pair, with global point indices.
#[derive(Clone, Debug)]
pub struct PairRun {
    pub sigma: Tile,
    pub tau: Tile,
    pub branch: SeparationBranch,
    pub steps: Vec<PeelStep>,
}

/// Output of [`ball_2hop`]: the spanner and everything needed to audit it.
#[derive(Clone, Debug)]
pub struct BallRun {
    pub spanner: Spanner,
    pub tiles: TileIndex,
    pub pairs: Vec<PairRun>,
}

/// Two-hop spanner for centers under a unit ball, generic in the ball.
///
/// `adj(i, j)` is the ground-truth adjacency of global indices; the spanner is
/// a subgraph of it. Tiles pair up within distance `reach`, which must bound
/// the Euclidean length of any adjacent pair.
pub fn ball_2hop<U, F>(ball: &U, centers: &[Point2], adj: F, reach: f64, seed: u64) -> Result<BallRun>
where
    U: UnitBall,
    F: Fn(usize, usize) -> bool + Sync + Send,
{
    let tiles = TileIndex::build(centers, reach, seed)?;
    let mut builder = SpannerBuilder::new(centers.len());
    for members in tiles.tiles.values() {
        let c = members[0];
        builder.extend(members[1..].iter().map(|&v| (c, v)), "tile-star");
    }
    let runs: Vec<Result<PairRun>> = par::map(&tiles.pairs, |&(sigma, tau)| {
        let (ia, ib) = (&tiles.tiles[&sigma], &tiles.tiles[&tau]);
        let a: Vec<Point2> = ia.iter().map(|&i| centers[i]).collect();
        let b: Vec<Point2> = ib.iter().map(|&i| centers[i]).collect();
        let sep = separating_axis_transform(&a, &b, &tiles.hexagon(sigma), &tiles.hexagon(tau))?;
        let t = sep.transform;
        let ta: Vec<Point2> = a.iter().map(|&p| t.apply(p)).collect();
        let tb: Vec<Point2> = b.iter().map(|&p| t.apply(p)).collect();
        let local_ball = ball.rotated(t.angle());
        let na = ia.len();
        let global = |v: usize| if v < na { ia[v] } else { ib[v - na] };
        let mut steps = peel(&local_ball, &ta, &tb, |i, j| adj(global(i), global(j)));
        for s in &mut steps {
            s.p = global(s.p);
            s.w.iter_mut().for_each(|v| *v = global(*v));
            s.w.sort_unstable();
            s.star_edges.iter_mut().for_each(|e| *e = (global(e.0), global(e.1)));
            // Back to the input frame.
            s.p1 = inverse(&t, s.p1);
            s.p2 = inverse(&t, s.p2);
        }
        Ok(PairRun { sigma, tau, branch: sep.branch, steps })
    });
    let mut pairs = Vec::with_capacity(runs.len());
    for run in runs {
        let run = run?;
        for s in &run.steps {
            builder.extend(s.star_edges.iter().copied(), "pair-peel");
        }
        pairs.push(run);
    }
    Ok(BallRun { spanner: builder.build(2), tiles, pairs })
}

fn inverse(t: &crate::geom::RigidTransform, p: Point2) -> Point2 {
    let (x, y) = (p.x - t.tx, p.y - t.ty);
    Point2::new(t.cos * x + t.sin * y, -t.sin * x + t.cos * y)
}

/// Unit disk graph run with an explicit tiling seed.
pub fn udg_2hop_seeded(points: &[Point2], seed: u64) -> Result<BallRun> {
    ball_2hop(&Disk, points, |i, j| (points[i] - points[j]).norm2() <= 1.0, 1.0, seed)
}

/// Two-hop spanner of the unit disk graph on `points` (adjacent iff within distance 1).
pub fn udg_2hop(points: &[Point2]) -> Result<Spanner> {
    Ok(udg_2hop_seeded(points, DEFAULT_SEED)?.spanner)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geom::GeomObject;
    use crate::graph::{build_intersection_graph, verify_hop_spanner};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn check(points: &[Point2]) -> BallRun {
        let run = udg_2hop_seeded(points, DEFAULT_SEED).unwrap();
        let objs: Vec<GeomObject> = points.iter().map(|&p| GeomObject::UnitDiskCenter(p)).collect();
        let g = build_intersection_graph(&objs).unwrap();
        let report = verify_hop_spanner(&g, &run.spanner, 2).unwrap();
        assert!(report.valid, "violations: {:?}", &report.violating_edges[..report.violating_edges.len().min(5)]);
        assert!(run.spanner.edge_count() < 91 * points.len().max(1));
        run
    }

    #[test]
    fn one_point() {
        assert_eq!(udg_2hop(&[Point2::new(0.3, 0.4)]).unwrap().edge_count(), 0);
    }

    #[test]
    fn three_close_points_form_a_star() {
        let pts = [Point2::new(0.0, 0.0), Point2::new(0.05, 0.02), Point2::new(-0.03, 0.04)];
        // Pick a seed whose tiling keeps the cluster in one tile.
        let run = (0..64).map(|s| udg_2hop_seeded(&pts, s).unwrap()).find(|r| r.tiles.tiles.len() == 1).unwrap();
        assert_eq!(run.spanner.edge_count(), 2);
        assert!(run.spanner.provenance.iter().all(|l| l == "tile-star"));
    }

    #[test]
    fn thousand_uniform_points() {
        let mut rng = ChaCha8Rng::seed_from_u64(1000);
        let pts: Vec<Point2> = (0..1000).map(|_| Point2::new(rng.gen_range(0.0..10.0), rng.gen_range(0.0..10.0))).collect();
        let run = check(&pts);
        for pr in &run.pairs {
            assert!(pr.steps.iter().all(PeelStep::within_budget));
        }
    }

    #[test]
    fn pair_steps_use_global_indices() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let pts: Vec<Point2> = (0..200).map(|_| Point2::new(rng.gen_range(0.0..4.0), rng.gen_range(0.0..4.0))).collect();
        let run = check(&pts);
        for pr in &run.pairs {
            let (a, b) = (&run.tiles.tiles[&pr.sigma], &run.tiles.tiles[&pr.tau]);
            for s in &pr.steps {
                assert!(s.w.iter().all(|v| a.contains(v) || b.contains(v)));
                assert!(s.w.contains(&s.p));
            }
        }
    }

    #[test]
    fn dense_clusters_verify() {
        let mut rng = ChaCha8Rng::seed_from_u64(12);
        let pts: Vec<Point2> = (0..600).map(|_| Point2::new(rng.gen_range(0.0..2.5), rng.gen_range(0.0..2.5))).collect();
        check(&pts);
    }
}
