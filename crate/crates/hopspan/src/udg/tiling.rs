//! Tiling of the plane by flat-top regular hexagons of diameter 1, shifted by
//! a seeded random offset so that every input point is strictly interior.

use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geom::{polygon_distance, ConvexPolygon, Point2};

/// Axial hexagon coordinate `(q, r)`.
pub type Tile = (i32, i32);

/// Circumradius of a tile.
pub const TILE_RADIUS: f64 = 0.5;
const SQRT3: f64 = 1.732_050_807_568_877_2;
/// Minimum clearance between a point and its tile boundary.
const MARGIN: f64 = 1e-9;
const MAX_REDRAWS: usize = 1000;

/// Center of `tile` before the global offset.
pub fn tile_center(tile: Tile) -> Point2 {
    let (q, r) = (tile.0 as f64, tile.1 as f64);
    Point2::new(1.5 * TILE_RADIUS * q, SQRT3 * TILE_RADIUS * (r + 0.5 * q))
}

/// The tile containing `p` (offset already removed), by cube rounding.
pub fn locate(p: Point2) -> Tile {
    let q = (2.0 / 3.0) * p.x / TILE_RADIUS;
    let r = (-p.x / 3.0 + SQRT3 / 3.0 * p.y) / TILE_RADIUS;
    let s = -q - r;
    let (mut rq, mut rr, rs) = (q.round(), r.round(), s.round());
    let (dq, dr, ds) = ((rq - q).abs(), (rr - r).abs(), (rs - s).abs());
    if dq > dr && dq > ds {
        rq = -rr - rs;
    } else if dr > ds {
        rr = -rq - rs;
    }
    (rq as i32, rr as i32)
}

/// Whether `d` (relative to a tile center) is interior with margin.
fn strictly_inside(d: Point2) -> bool {
    let inradius = SQRT3 * TILE_RADIUS / 2.0;
    [(0.0, 1.0), (SQRT3 / 2.0, 0.5), (-SQRT3 / 2.0, 0.5)]
        .iter()
        .all(|&(nx, ny)| (d.x * nx + d.y * ny).abs() < inradius - MARGIN)
}

fn hexagon_at(tile: Tile, offset: Point2) -> ConvexPolygon {
    ConvexPolygon::regular(6, TILE_RADIUS, tile_center(tile) + offset, 0.0)
}

/// Axial offsets of the tiles within distance `reach` of the tile at the origin.
pub fn neighbor_offsets(reach: f64) -> Vec<Tile> {
    let origin = hexagon_at((0, 0), Point2::default());
    let k = ((reach + 1.0) / 0.866).ceil() as i32 + 1;
    let mut out = Vec::new();
    for dq in -k..=k {
        for dr in -k..=k {
            if (dq, dr) != (0, 0) && polygon_distance(&origin, &hexagon_at((dq, dr), Point2::default())) <= reach + 1e-12 {
                out.push((dq, dr));
            }
        }
    }
    out
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TileIndex {
    pub offset: Point2,
    /// Tile of each input point.
    pub tile_of: Vec<Tile>,
    /// Point indices per nonempty tile, ascending.
    pub tiles: BTreeMap<Tile, Vec<usize>>,
    /// Nonempty tile pairs `σ < τ` at distance at most `reach`.
    pub pairs: Vec<(Tile, Tile)>,
    pub reach: f64,
}

impl TileIndex {
    /// Tiles `points` with a random offset drawn from `seed`, pairing tiles
    /// within distance `reach`.
    pub fn build(points: &[Point2], reach: f64, seed: u64) -> Result<Self> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut found = None;
        for _ in 0..MAX_REDRAWS {
            let offset = Point2::new(rng.gen_range(0.0..1.5 * TILE_RADIUS), rng.gen_range(0.0..SQRT3 * TILE_RADIUS));
            let tile_of: Vec<Tile> = points.iter().map(|&p| locate(p - offset)).collect();
            if points.iter().zip(&tile_of).all(|(&p, &t)| strictly_inside(p - offset - tile_center(t))) {
                found = Some((offset, tile_of));
                break;
            }
        }
        let (offset, tile_of) = found.ok_or_else(|| Error::Invalid("no offset keeps every point inside its tile".into()))?;
        let mut tiles: BTreeMap<Tile, Vec<usize>> = BTreeMap::new();
        for (i, &t) in tile_of.iter().enumerate() {
            tiles.entry(t).or_default().push(i);
        }
        let deltas = neighbor_offsets(reach);
        let mut pairs = Vec::new();
        for &s in tiles.keys() {
            for &(dq, dr) in &deltas {
                let t = (s.0 + dq, s.1 + dr);
                if s < t && tiles.contains_key(&t) {
                    pairs.push((s, t));
                }
            }
        }
        pairs.sort_unstable();
        Ok(Self { offset, tile_of, tiles, pairs, reach })
    }

    /// The tile as a polygon in the input frame.
    pub fn hexagon(&self, tile: Tile) -> ConvexPolygon {
        hexagon_at(tile, self.offset)
    }
}
