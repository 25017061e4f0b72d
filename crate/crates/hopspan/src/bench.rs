//! Build-and-verify measurement of every construction.

use std::fmt;
use std::io::Write;
use std::str::FromStr;
use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fat_convex::fat_convex_3hop;
use crate::geom::{AxisRect, ConvexPolygon, GeomObject, Point2};
use crate::graph::{build_intersection_graph, greedy_spanner, identity_spanner, verify_hop_spanner, IntersectionGraph, Spanner};
use crate::instances::{generate, Family, InstanceSpec};
use crate::interval::interval_2hop;
use crate::rect::{fat_rect_2hop, rect_3hop};
use crate::translate::translates_2hop;
use crate::udg::udg_2hop;

/// Header of the benchmark CSV.
pub const CSV_HEADER: &str = "family,n,seed,construction,t,edges,bound,ratio,build_ms,verify_ms,verified";

/// Default instance sizes of a scaling sweep.
pub const DEFAULT_SIZES: [usize; 6] = [125, 250, 500, 1000, 2000, 4000];

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Construction {
    Udg2Hop,
    Translates2Hop,
    Interval2Hop,
    FatRect2Hop,
    Rect3Hop,
    FatConvex3Hop,
    /// Greedy `t`-hop spanner over the explicit graph.
    Greedy(usize),
    /// The host graph itself.
    Identity,
}

impl Construction {
    pub fn t(self) -> usize {
        match self {
            Construction::Udg2Hop | Construction::Translates2Hop | Construction::Interval2Hop | Construction::FatRect2Hop => 2,
            Construction::Rect3Hop | Construction::FatConvex3Hop => 3,
            Construction::Greedy(t) => t,
            Construction::Identity => 1,
        }
    }

    /// The claimed edge bound as text.
    pub fn bound_expr(self) -> &'static str {
        match self {
            Construction::Udg2Hop => "91n",
            Construction::Translates2Hop => "n",
            Construction::Interval2Hop => "2n",
            Construction::FatRect2Hop => "a^2 n log2 n",
            Construction::Rect3Hop => "n log2^2 n",
            Construction::FatConvex3Hop => "a^3 n log2 n",
            Construction::Greedy(_) | Construction::Identity => "n(n-1)/2",
        }
    }

    /// The bound evaluated at `n` with fatness `alpha`; `log₂` is clamped below by 1.
    pub fn bound(self, n: usize, alpha: f64) -> f64 {
        let n = n.max(1) as f64;
        let lg = n.log2().max(1.0);
        match self {
            Construction::Udg2Hop => 91.0 * n,
            Construction::Translates2Hop => n,
            Construction::Interval2Hop => 2.0 * n,
            Construction::FatRect2Hop => alpha * alpha * n * lg,
            Construction::Rect3Hop => n * lg * lg,
            Construction::FatConvex3Hop => alpha.powi(3) * n * lg,
            Construction::Greedy(_) | Construction::Identity => (n * (n - 1.0) / 2.0).max(1.0),
        }
    }

    /// The construction matched to a family.
    pub fn default_for(family: Family) -> Self {
        match family {
            Family::UdgUniform => Construction::Udg2Hop,
            Family::Translates => Construction::Translates2Hop,
            Family::Intervals => Construction::Interval2Hop,
            Family::Squares | Family::FatRects => Construction::FatRect2Hop,
            Family::RectsMixed => Construction::Rect3Hop,
            Family::FatPolygons => Construction::FatConvex3Hop,
            Family::LevelGraph => Construction::Greedy(2),
        }
    }
}

impl fmt::Display for Construction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Construction::Udg2Hop => f.write_str("udg-2hop"),
            Construction::Translates2Hop => f.write_str("translates-2hop"),
            Construction::Interval2Hop => f.write_str("interval-2hop"),
            Construction::FatRect2Hop => f.write_str("fat-rect-2hop"),
            Construction::Rect3Hop => f.write_str("rect-3hop"),
            Construction::FatConvex3Hop => f.write_str("fat-convex-3hop"),
            Construction::Greedy(t) => write!(f, "greedy-{t}"),
            Construction::Identity => f.write_str("identity"),
        }
    }
}

impl FromStr for Construction {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "udg-2hop" => Construction::Udg2Hop,
            "translates-2hop" => Construction::Translates2Hop,
            "interval-2hop" => Construction::Interval2Hop,
            "fat-rect-2hop" => Construction::FatRect2Hop,
            "rect-3hop" => Construction::Rect3Hop,
            "fat-convex-3hop" => Construction::FatConvex3Hop,
            "identity" => Construction::Identity,
            "greedy" => Construction::Greedy(2),
            other => match other.strip_prefix("greedy-").and_then(|t| t.parse().ok()) {
                Some(t) if t >= 1 => Construction::Greedy(t),
                _ => return Err(Error::Invalid(format!("unknown construction {other:?}"))),
            },
        })
    }
}

fn wrong_kind(c: Construction, o: &GeomObject) -> Error {
    Error::Invalid(format!("{c} does not apply to {} objects", o.kind()))
}

/// Runs `c` on `objects`; `graph` is only needed by the graph-based constructions.
pub fn build(c: Construction, objects: &[GeomObject], graph: Option<&IntersectionGraph>) -> Result<Spanner> {
    let owned;
    let graph = match graph {
        Some(g) => g,
        None if matches!(c, Construction::Greedy(_) | Construction::Identity) => {
            owned = build_intersection_graph(objects)?;
            &owned
        }
        None => return build_geometric(c, objects),
    };
    match c {
        Construction::Greedy(t) => Ok(greedy_spanner(graph, t)),
        Construction::Identity => Ok(identity_spanner(graph)),
        _ => build_geometric(c, objects),
    }
}

fn build_geometric(c: Construction, objects: &[GeomObject]) -> Result<Spanner> {
    match c {
        Construction::Udg2Hop => {
            let pts = collect(objects, |o| if let GeomObject::UnitDiskCenter(p) = o { Some(*p) } else { None }, c)?;
            udg_2hop(&pts)
        }
        Construction::Interval2Hop => {
            let segs = collect(objects, |o| if let GeomObject::Interval { lo, hi } = o { Some((*lo, *hi)) } else { None }, c)?;
            Ok(interval_2hop(&segs))
        }
        Construction::FatRect2Hop | Construction::Rect3Hop => {
            let rects: Vec<AxisRect> = collect(objects, |o| if let GeomObject::Rect(r) = o { Some(*r) } else { None }, c)?;
            if c == Construction::FatRect2Hop {
                Ok(fat_rect_2hop(&rects)?.spanner)
            } else {
                Ok(rect_3hop(&rects)?.spanner)
            }
        }
        Construction::FatConvex3Hop => {
            let bodies: Vec<ConvexPolygon> = collect(
                objects,
                |o| match o {
                    GeomObject::Polygon(p) => Some(p.clone()),
                    GeomObject::Rect(r) => r.to_polygon().ok(),
                    GeomObject::Translate { body, offset, .. } => Some(body.translated(*offset)),
                    _ => None,
                },
                c,
            )?;
            Ok(fat_convex_3hop(&bodies)?.spanner)
        }
        Construction::Translates2Hop => {
            let Some(GeomObject::Translate { body, .. }) = objects.first() else {
                return match objects.first() {
                    None => Ok(Spanner { n: 0, edges: Vec::new(), t: 2, provenance: Vec::new() }),
                    Some(o) => Err(wrong_kind(c, o)),
                };
            };
            let offsets: Vec<Point2> = collect(
                objects,
                |o| match o {
                    GeomObject::Translate { body: b, offset, .. } if **b == **body => Some(*offset),
                    _ => None,
                },
                c,
            )?;
            translates_2hop(body, &offsets)
        }
        Construction::Greedy(_) | Construction::Identity => build(c, objects, None),
    }
}

fn collect<T>(objects: &[GeomObject], f: impl Fn(&GeomObject) -> Option<T>, c: Construction) -> Result<Vec<T>> {
    objects.iter().map(|o| f(o).ok_or_else(|| wrong_kind(c, o))).collect()
}

/// One row of the benchmark CSV.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BenchRecord {
    pub family: String,
    pub n: usize,
    pub seed: u64,
    pub construction: String,
    pub t: usize,
    pub edges: usize,
    pub bound: String,
    /// `edges / bound(n)`.
    pub ratio: f64,
    pub build_ms: f64,
    pub verify_ms: f64,
    pub verified: bool,
}

/// Generates, builds and verifies one cell. Verification always runs.
pub fn bench(spec: &InstanceSpec, c: Construction) -> Result<(BenchRecord, Spanner)> {
    let objects = generate(spec)?;
    let graph = build_intersection_graph(&objects)?;
    let start = Instant::now();
    let spanner = build(c, &objects, Some(&graph))?;
    let build_ms = start.elapsed().as_secs_f64() * 1e3;
    let start = Instant::now();
    let report = verify_hop_spanner(&graph, &spanner, c.t())?;
    let verify_ms = start.elapsed().as_secs_f64() * 1e3;
    let n = objects.len();
    let record = BenchRecord {
        family: spec.family.to_string(),
        n,
        seed: spec.seed,
        construction: c.to_string(),
        t: c.t(),
        edges: spanner.edge_count(),
        bound: c.bound_expr().to_string(),
        ratio: spanner.edge_count() as f64 / c.bound(n, spec.fatness()),
        build_ms,
        verify_ms,
        verified: report.valid,
    };
    Ok((record, spanner))
}

/// Writes `records` as CSV with [`CSV_HEADER`].
pub fn write_csv<W: Write>(out: W, records: &[BenchRecord]) -> Result<()> {
    let mut w = csv::WriterBuilder::new().has_headers(false).from_writer(out);
    w.write_record(CSV_HEADER.split(','))?;
    for r in records {
        w.write_record([
            r.family.clone(),
            r.n.to_string(),
            r.seed.to_string(),
            r.construction.clone(),
            r.t.to_string(),
            r.edges.to_string(),
            r.bound.clone(),
            format!("{:.6}", r.ratio),
            format!("{:.3}", r.build_ms),
            format!("{:.3}", r.verify_ms),
            r.verified.to_string(),
        ])?;
    }
    w.flush()?;
    Ok(())
}

/// Least-squares slope of `y` against `x`.
pub fn ls_slope(points: &[(f64, f64)]) -> Option<f64> {
    let m = points.len() as f64;
    if points.len() < 2 {
        return None;
    }
    let (sx, sy) = points.iter().fold((0.0, 0.0), |(a, b), &(x, y)| (a + x, b + y));
    let (mx, my) = (sx / m, sy / m);
    let sxx: f64 = points.iter().map(|&(x, _)| (x - mx) * (x - mx)).sum();
    let sxy: f64 = points.iter().map(|&(x, y)| (x - mx) * (y - my)).sum();
    (sxx > 0.0).then(|| sxy / sxx)
}

/// Slope of `edges / n` against `log₂ n`.
pub fn log_slope(samples: &[(usize, usize)]) -> Option<f64> {
    let pts: Vec<(f64, f64)> = samples.iter().map(|&(n, e)| ((n as f64).log2(), e as f64 / n as f64)).collect();
    ls_slope(&pts)
}
