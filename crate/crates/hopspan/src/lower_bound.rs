//! The level graphs `F(h)` and their homothet realizations.
//!
//! `F(h)` has vertices `(x, ℓ)` with `x < 2^h` and `ℓ ≤ h`. For each level
//! `i` the columns split into `2^i` dyadic blocks `X_{k,i}`, and every
//! `V_{k,i} = X_{k,i} × {0..i}` is a clique.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geom::{polygon_distance, polygons_intersect, ConvexPolygon, GeomObject, Point2};
use crate::graph::{build_intersection_graph, verify_hop_spanner, IntersectionGraph, Spanner};
use crate::par;

/// Largest vertex count accepted by [`gen_f`].
pub const MAX_VERTICES: usize = 100_000;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LevelGraph {
    pub h: usize,
    /// Sorted `(u, v)` with `u < v`.
    pub edges: Vec<(usize, usize)>,
}

impl LevelGraph {
    pub fn columns(&self) -> usize {
        1 << self.h
    }

    pub fn n(&self) -> usize {
        self.columns() * (self.h + 1)
    }

    /// Vertex id of `(x, level)`: x-major, level-minor.
    pub fn id(&self, x: usize, level: usize) -> usize {
        x * (self.h + 1) + level
    }

    /// `(x, level)` of vertex `v`.
    pub fn coords(&self, v: usize) -> (usize, usize) {
        (v / (self.h + 1), v % (self.h + 1))
    }

    /// Block index of column `x` at level `i`.
    pub fn block(&self, x: usize, i: usize) -> usize {
        x >> (self.h - i)
    }

    /// Whether `v ∈ V_{k,i}`.
    pub fn in_clique(&self, v: usize, k: usize, i: usize) -> bool {
        let (x, l) = self.coords(v);
        l <= i && self.block(x, i) == k
    }

    /// Vertices of `V_{k,i}`, ascending.
    pub fn clique(&self, k: usize, i: usize) -> Vec<usize> {
        let w = 1 << (self.h - i);
        (k * w..(k + 1) * w).flat_map(|x| (0..=i).map(move |l| (x, l))).map(|(x, l)| self.id(x, l)).collect()
    }

    /// Edges between the two halves `X_{2k,i+1}` and `X_{2k+1,i+1}` of `V_{k,i}`.
    pub fn bichromatic_class(&self, k: usize, i: usize) -> Vec<(usize, usize)> {
        assert!(i < self.h, "level {i} has no halves");
        let mut out = Vec::new();
        for u in self.clique(k, i) {
            for v in self.clique(k, i) {
                let (xu, xv) = (self.coords(u).0, self.coords(v).0);
                if self.block(xu, i + 1) == 2 * k && self.block(xv, i + 1) == 2 * k + 1 {
                    out.push((u.min(v), u.max(v)));
                }
            }
        }
        out.sort_unstable();
        out
    }

    /// The unique `(k, i)` for which `uv` is `V_{k,i}`-bichromatic, if any.
    pub fn bichromatic_of(&self, u: usize, v: usize) -> Option<(usize, usize)> {
        let ((xu, lu), (xv, lv)) = (self.coords(u), self.coords(v));
        if xu == xv {
            return None;
        }
        // Highest level at which both columns share a block.
        let i = self.h - 1 - (usize::BITS - 1 - (xu ^ xv).leading_zeros()) as usize;
        (lu.max(lv) <= i).then(|| (self.block(xu, i), i))
    }

    pub fn to_graph(&self) -> IntersectionGraph {
        IntersectionGraph::from_edges(self.n(), self.edges.iter().copied())
    }
}

/// The level graph `F(h)`.
pub fn gen_f(h: usize) -> Result<LevelGraph> {
    let n = 1usize.checked_shl(h as u32).and_then(|c| c.checked_mul(h + 1));
    match n {
        Some(n) if h < 40 && n <= MAX_VERTICES => {}
        _ => return Err(Error::SizeOverflow(format!("F({h}) exceeds {MAX_VERTICES} vertices"))),
    }
    let mut g = LevelGraph { h, edges: Vec::new() };
    // Two vertices share a clique iff their columns share a block at the higher of their levels.
    for u in 0..g.n() {
        let (xu, lu) = g.coords(u);
        for v in u + 1..g.n() {
            let (xv, lv) = g.coords(v);
            let m = lu.max(lv);
            if g.block(xu, m) == g.block(xv, m) {
                g.edges.push((u, v));
            }
        }
    }
    Ok(g)
}

/// One homothet `scale · C + (dx, dy)` standing for vertex `(x, level)`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Placement {
    pub scale: f64,
    pub dx: f64,
    pub dy: f64,
    pub x: usize,
    pub level: usize,
}

/// Homothets of `base`, indexed by vertex id of `F(h)`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct HomothetRealization {
    pub h: usize,
    /// Normalized so its unique lowest vertex is the origin.
    pub base: ConvexPolygon,
    pub placements: Vec<Placement>,
    /// Tangency abscissa of each column.
    pub columns: Vec<f64>,
}

impl HomothetRealization {
    pub fn body(&self, v: usize) -> ConvexPolygon {
        let p = &self.placements[v];
        self.base.scaled(p.scale).translated(Point2::new(p.dx, p.dy))
    }

    pub fn bodies(&self) -> Vec<ConvexPolygon> {
        (0..self.placements.len()).map(|v| self.body(v)).collect()
    }

    pub fn objects(&self) -> Vec<GeomObject> {
        self.bodies().into_iter().map(GeomObject::Polygon).collect()
    }
}

/// Turns `c` so its most pointed vertex is the unique lowest point, with the
/// interior angle bisected by the upward vertical, then moves that vertex to
/// the origin.
pub fn normalize_base(c: &ConvexPolygon) -> Result<ConvexPolygon> {
    let v = c.vertices();
    let n = v.len();
    let turn = |i: usize| {
        let (a, b) = ((v[(i + n - 1) % n] - v[i]).normalized(), (v[(i + 1) % n] - v[i]).normalized());
        (a.dot(b), a + b)
    };
    // Largest cosine of the interior angle is the sharpest corner.
    let apex = (0..n).max_by(|&i, &j| turn(i).0.total_cmp(&turn(j).0).then(j.cmp(&i))).expect("polygon has vertices");
    let inward = turn(apex).1;
    let angle = std::f64::consts::FRAC_PI_2 - inward.y.atan2(inward.x);
    let o = v[apex];
    let body: Vec<Point2> = v.iter().map(|&p| (p - o).rotate(angle)).collect();
    let mut body = body;
    body[apex] = Point2::new(0.0, 0.0);
    if body.iter().enumerate().any(|(i, p)| i != apex && p.y <= 0.0) {
        return Err(Error::DegeneratePolygon("no unique lowest vertex".into()));
    }
    ConvexPolygon::new(body)
}

/// Minimum translation separating two intersecting convex polygons.
fn penetration_depth(a: &ConvexPolygon, b: &ConvexPolygon) -> f64 {
    a.normals()
        .into_iter()
        .chain(b.normals())
        .map(|n| {
            let ((a0, a1), (b0, b1)) = (a.project(n), b.project(n));
            (a1 - b0).min(b1 - a0)
        })
        .fold(f64::INFINITY, f64::min)
}

/// Largest power of two not above `x > 0`.
fn floor_pow2(x: f64) -> f64 {
    2f64.powi(x.log2().floor() as i32)
}

struct Body {
    scale: f64,
    column: usize,
    level: usize,
}

fn shape(base: &ConvexPolygon, columns: &[f64], b: &Body) -> ConvexPolygon {
    base.scaled(b.scale).translated(Point2::new(columns[b.column], 0.0))
}

/// Smallest clearance or overlap depth among all pairs, and among column gaps.
fn min_margin(base: &ConvexPolygon, columns: &[f64], bodies: &[Body]) -> f64 {
    let shapes: Vec<ConvexPolygon> = bodies.iter().map(|b| shape(base, columns, b)).collect();
    let boxes: Vec<_> = shapes.iter().map(|s| s.bbox()).collect();
    let rows = par::map_range(shapes.len(), |i| {
        let mut best = f64::INFINITY;
        for j in i + 1..shapes.len() {
            let (p, q) = (&boxes[i], &boxes[j]);
            let gap = (p.x_lo - q.x_hi).max(q.x_lo - p.x_hi).max(p.y_lo - q.y_hi).max(q.y_lo - p.y_hi);
            if gap >= best {
                continue;
            }
            let m = if polygons_intersect(&shapes[i], &shapes[j]) {
                penetration_depth(&shapes[i], &shapes[j])
            } else {
                polygon_distance(&shapes[i], &shapes[j])
            };
            best = best.min(m);
        }
        best
    });
    let gaps = columns.windows(2).map(|w| w[1] - w[0]);
    rows.into_iter().chain(gaps).fold(f64::INFINITY, f64::min)
}

/// Adds the tiny top-level body at every column, clear of all other columns' bodies.
fn add_top_level(base: &ConvexPolygon, columns: &[f64], bodies: &mut Vec<Body>, level: usize) {
    let bb = base.bbox();
    let diam = bb.width().hypot(bb.height());
    let shapes: Vec<ConvexPolygon> = bodies.iter().map(|b| shape(base, columns, b)).collect();
    let column_of: Vec<usize> = bodies.iter().map(|b| b.column).collect();
    let scales = par::map_range(columns.len(), |a| {
        let p = Point2::new(columns[a], 0.0);
        let clear = shapes
            .iter()
            .zip(&column_of)
            .filter(|(_, &c)| c != a)
            .map(|(s, _)| point_polygon_distance(p, s))
            .fold(f64::INFINITY, f64::min);
        let gap = columns.windows(2).map(|w| w[1] - w[0]).fold(f64::INFINITY, f64::min);
        floor_pow2(clear.min(gap).min(1.0) / (4.0 * diam))
    });
    for (a, scale) in scales.into_iter().enumerate() {
        bodies.push(Body { scale, column: a, level });
    }
}

fn point_polygon_distance(p: Point2, s: &ConvexPolygon) -> f64 {
    if s.contains(p) {
        return 0.0;
    }
    s.edges().map(|(a, b)| crate::geom::point_segment_distance(p, a, b)).fold(f64::INFINITY, f64::min)
}

/// Realizes `F(h)` by homothets of `c`, all tangent to the x-axis from above.
///
/// Each doubling keeps the previous family and adds a copy shifted right by a
/// power of two `ε` at most a quarter of the smallest margin; columns
/// interleave as `2a` (original) and `2a + 1` (shifted). The result is
/// checked edge-for-edge against [`gen_f`].
pub fn realize_f(h: usize, c: &ConvexPolygon) -> Result<HomothetRealization> {
    let graph = gen_f(h)?;
    let base = normalize_base(c)?;
    let mut columns = vec![0.0];
    let mut bodies = vec![Body { scale: 1.0, column: 0, level: 0 }];
    for level in 1..=h {
        let eps = floor_pow2(min_margin(&base, &columns, &bodies).min(1.0) / 4.0);
        // Each column must move by a representable amount.
        #[allow(clippy::manual_contains)]
        let stalled = columns.iter().any(|&p| p + eps == p);
        if !(eps > 0.0 && eps.is_finite()) || stalled {
            return Err(Error::Realization(0, 0));
        }
        let mut next_columns = Vec::with_capacity(columns.len() * 2);
        for &p in &columns {
            next_columns.push(p);
            next_columns.push(p + eps);
        }
        let mut next = Vec::with_capacity(bodies.len() * 2 + next_columns.len());
        for b in &bodies {
            next.push(Body { scale: b.scale, column: 2 * b.column, level: b.level });
            next.push(Body { scale: b.scale, column: 2 * b.column + 1, level: b.level });
        }
        columns = next_columns;
        bodies = next;
        add_top_level(&base, &columns, &mut bodies, level);
    }
    let mut placements = vec![Placement { scale: 0.0, dx: 0.0, dy: 0.0, x: 0, level: 0 }; graph.n()];
    for b in &bodies {
        placements[graph.id(b.column, b.level)] =
            Placement { scale: b.scale, dx: columns[b.column], dy: 0.0, x: b.column, level: b.level };
    }
    let real = HomothetRealization { h, base, placements, columns };
    check_realization(&real, &graph)?;
    Ok(real)
}

/// Compares the intersection graph of `real` with `graph`.
pub fn check_realization(real: &HomothetRealization, graph: &LevelGraph) -> Result<()> {
    let built = build_intersection_graph(&real.objects())?;
    let got: Vec<(usize, usize)> = built.edges().collect();
    let (mut i, mut j) = (0, 0);
    while i < got.len() || j < graph.edges.len() {
        match (got.get(i), graph.edges.get(j)) {
            (Some(a), Some(b)) if a == b => {
                i += 1;
                j += 1;
            }
            (Some(a), Some(b)) => return Err(if a < b { Error::Realization(a.0, a.1) } else { Error::Realization(b.0, b.1) }),
            (Some(a), None) | (None, Some(a)) => return Err(Error::Realization(a.0, a.1)),
            (None, None) => unreachable!(),
        }
    }
    Ok(())
}

/// Outcome of an exact minimum 2-hop spanner search.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum MinSpanner {
    Exact(usize),
    /// The search ran out of budget; the optimum lies in `[lower, upper]`.
    Incomplete { lower: usize, upper: usize },
}

impl MinSpanner {
    pub fn exact(self) -> Option<usize> {
        match self {
            MinSpanner::Exact(k) => Some(k),
            MinSpanner::Incomplete { .. } => None,
        }
    }
}

/// Which uncovered edge the branch-and-bound expands next.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Branching {
    /// The uncovered edge with the fewest remaining ways to cover it.
    FewestOptions,
    /// The highest-indexed uncovered edge, options tried in reverse.
    LastEdge,
}

/// Edge subsets at most this large are enumerated exhaustively.
pub const EXHAUSTIVE_EDGES: usize = 20;
/// Default node budget for branch-and-bound.
pub const DEFAULT_BUDGET: u64 = 20_000_000;

struct CoverProblem {
    ends: Vec<(usize, usize)>,
    /// Per edge: masks of edge sets that 2-hop-cover it (itself, or a path through a common neighbor).
    options: Vec<Vec<u128>>,
    active: Vec<bool>,
}

impl CoverProblem {
    fn new(g: &IntersectionGraph) -> Result<Self> {
        let ends: Vec<(usize, usize)> = g.edges().collect();
        if ends.len() > 128 {
            return Err(Error::SizeOverflow(format!("{} edges exceed the exact search limit of 128", ends.len())));
        }
        let index = |u: usize, v: usize| ends.binary_search(&(u.min(v), u.max(v))).ok();
        let options = ends
            .iter()
            .enumerate()
            .map(|(e, &(u, v))| {
                let mut opts = vec![1u128 << e];
                for &w in g.neighbors(u) {
                    if let (Some(a), Some(b)) = (index(u, w), index(w, v)) {
                        opts.push((1u128 << a) | (1u128 << b));
                    }
                }
                opts
            })
            .collect();
        let mut active = vec![false; g.n];
        for &(u, v) in &ends {
            active[u] = true;
            active[v] = true;
        }
        Ok(Self { ends, options, active })
    }

    fn covered(&self, e: usize, mask: u128) -> bool {
        #[allow(clippy::manual_contains)]
        let hit = self.options[e].iter().any(|&o| o & mask == o);
        hit
    }

    fn is_cover(&self, mask: u128) -> bool {
        (0..self.ends.len()).all(|e| self.covered(e, mask))
    }

    /// Every non-isolated vertex needs an incident edge; one edge serves two.
    fn lower_bound(&self, mask: u128) -> usize {
        let mut touched = vec![false; self.active.len()];
        for (e, &(u, v)) in self.ends.iter().enumerate() {
            if mask >> e & 1 == 1 {
                touched[u] = true;
                touched[v] = true;
            }
        }
        let bare = self.active.iter().zip(&touched).filter(|(&a, &t)| a && !t).count();
        bare.div_ceil(2)
    }
}

struct Search<'a> {
    p: &'a CoverProblem,
    order: Branching,
    best: usize,
    nodes: u64,
    budget: u64,
    lowest_pruned: usize,
}

impl Search<'_> {
    fn run(&mut self, mask: u128, banned: u128) {
        self.nodes += 1;
        let size = mask.count_ones() as usize;
        let bound = size + self.p.lower_bound(mask);
        if bound >= self.best {
            return;
        }
        if self.nodes > self.budget {
            self.lowest_pruned = self.lowest_pruned.min(bound);
            return;
        }
        let mut open = (0..self.p.ends.len()).filter(|&e| !self.p.covered(e, mask));
        let allowed = |e: usize| self.p.options[e].iter().copied().filter(|&o| o & banned == 0).collect::<Vec<u128>>();
        let pick = match self.order {
            Branching::FewestOptions => open.map(|e| (allowed(e).len(), e)).min().map(|(_, e)| e),
            Branching::LastEdge => open.next_back(),
        };
        let Some(e) = pick else {
            self.best = size;
            return;
        };
        let mut opts = allowed(e);
        if self.order == Branching::LastEdge {
            opts.reverse();
        }
        let mut banned = banned;
        for o in opts {
            self.run(mask | o, banned);
            // Later siblings never use a single edge whose branch is exhausted.
            if o.count_ones() == 1 {
                banned |= o;
            }
        }
    }
}

/// Size of a minimum 2-hop spanner of `g`: exhaustive for small edge sets,
/// branch-and-bound otherwise.
pub fn min_2hop_bruteforce(g: &IntersectionGraph) -> Result<MinSpanner> {
    let p = CoverProblem::new(g)?;
    if p.ends.len() <= EXHAUSTIVE_EDGES {
        let best = (0u128..1 << p.ends.len())
            .filter(|&m| p.is_cover(m))
            .map(|m| m.count_ones() as usize)
            .min()
            .unwrap_or(0);
        return Ok(MinSpanner::Exact(best));
    }
    min_2hop_branch_and_bound(g, Branching::FewestOptions, DEFAULT_BUDGET)
}

/// Branch-and-bound search with an explicit branching rule and node budget.
pub fn min_2hop_branch_and_bound(g: &IntersectionGraph, order: Branching, budget: u64) -> Result<MinSpanner> {
    let p = CoverProblem::new(g)?;
    let upper = crate::graph::greedy_spanner(g, 2).edge_count();
    let mut s = Search { p: &p, order, best: upper + 1, nodes: 0, budget, lowest_pruned: usize::MAX };
    s.run(0, 0);
    Ok(if s.lowest_pruned == usize::MAX {
        MinSpanner::Exact(s.best)
    } else {
        MinSpanner::Incomplete { lower: s.lowest_pruned.min(s.best), upper: s.best.min(upper) }
    })
}

/// Count of forced edges for one clique.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ForcedRow {
    pub k: usize,
    pub i: usize,
    pub count: usize,
    /// `|V_{k,i}| / 8`.
    pub floor: f64,
}

impl ForcedRow {
    pub fn ok(&self) -> bool {
        self.count as f64 >= self.floor
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ForcedEdgeAudit {
    pub h: usize,
    /// `⌈log₂ h⌉`.
    pub window: usize,
    pub rows: Vec<ForcedRow>,
}

impl ForcedEdgeAudit {
    pub fn ok(&self) -> bool {
        self.rows.iter().all(ForcedRow::ok)
    }
}

/// For each level `i ≤ h − ⌈log h⌉` and block `k`, counts spanner edges inside
/// `V_{k,i}` that are `V_{k',i'}`-bichromatic with `i ≤ i' < i + ⌈log h⌉`.
pub fn forced_edge_audit(h: usize, s: &Spanner) -> Result<ForcedEdgeAudit> {
    if h < 2 {
        return Err(Error::Invalid(format!("the forced-edge window is empty for h = {h}")));
    }
    let f = gen_f(h)?;
    let report = verify_hop_spanner(&f.to_graph(), s, 2)?;
    if !report.valid {
        return Err(Error::InvalidSpanner(report.violating_edges.len()));
    }
    let window = (h as f64).log2().ceil() as usize;
    let mut rows = Vec::new();
    for i in 0..=h - window {
        let mut counts = vec![0usize; 1 << i];
        for &[u, v] in &s.edges {
            let Some((_, j)) = f.bichromatic_of(u, v) else { continue };
            if j < i || j >= i + window {
                continue;
            }
            let ((xu, lu), (xv, lv)) = (f.coords(u), f.coords(v));
            let k = f.block(xu, i);
            if lu.max(lv) <= i && f.block(xv, i) == k {
                counts[k] += 1;
            }
        }
        let size = (1usize << (h - i)) * (i + 1);
        rows.extend(counts.into_iter().enumerate().map(|(k, count)| ForcedRow { k, i, count, floor: size as f64 / 8.0 }));
    }
    Ok(ForcedEdgeAudit { h, window, rows })
}

/// Regular polygon bases used for realizations.
pub fn base_body(name: &str) -> Result<ConvexPolygon> {
    use std::f64::consts::FRAC_PI_2;
    let o = Point2::new(0.0, 0.0);
    match name {
        "square" => Ok(ConvexPolygon::regular(4, 1.0, o, std::f64::consts::FRAC_PI_4)),
        "triangle" => ConvexPolygon::new(vec![o, Point2::new(1.0, 0.0), Point2::new(0.5, 0.9)]),
        "disk" => Ok(ConvexPolygon::regular(64, 1.0, o, -FRAC_PI_2)),
        other => match other.strip_suffix("-gon").and_then(|k| k.parse::<usize>().ok()) {
            Some(k) if k >= 3 => Ok(ConvexPolygon::regular(k, 1.0, o, -FRAC_PI_2)),
            _ => Err(Error::Invalid(format!("unknown base body {other:?}"))),
        },
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::greedy_spanner;
    use proptest::prelude::*;
    use std::collections::BTreeSet;

    /// Clique-union oracle: enumerates every `V_{k,i}` and collects its pairs.
    fn clique_union(h: usize) -> BTreeSet<(usize, usize)> {
        let g = LevelGraph { h, edges: Vec::new() };
        let mut out = BTreeSet::new();
        for i in 0..=h {
            for k in 0..1 << i {
                let c = g.clique(k, i);
                for (a, &u) in c.iter().enumerate() {
                    for &v in &c[a + 1..] {
                        out.insert((u, v));
                    }
                }
            }
        }
        out
    }

    #[test]
    fn small_sizes() {
        let f0 = gen_f(0).unwrap();
        assert_eq!((f0.n(), f0.edges.len()), (1, 0));
        let f1 = gen_f(1).unwrap();
        assert_eq!((f1.n(), f1.edges.len()), (4, 3));
        // (0,1) - (0,0) - (1,0) - (1,1)
        assert_eq!(f1.edges, vec![(0, 1), (0, 2), (2, 3)]);
        let f2 = gen_f(2).unwrap();
        assert_eq!((f2.n(), f2.edges.len()), (12, 24));
    }

    #[test]
    fn matches_clique_union_and_sizes() {
        for h in 0..=6 {
            let f = gen_f(h).unwrap();
            assert_eq!(f.n(), (1 << h) * (h + 1));
            let want: Vec<_> = clique_union(h).into_iter().collect();
            assert_eq!(f.edges, want, "h = {h}");
        }
    }

    #[test]
    fn overflow_is_rejected() {
        assert!(matches!(gen_f(14), Err(Error::SizeOverflow(_))));
        assert!(matches!(gen_f(200), Err(Error::SizeOverflow(_))));
        assert!(gen_f(12).is_ok());
    }

    #[test]
    fn bichromatic_classes_are_disjoint() {
        for h in 1..=4 {
            let f = gen_f(h).unwrap();
            let mut seen = BTreeSet::new();
            for i in 0..h {
                for k in 0..1 << i {
                    let class = f.bichromatic_class(k, i);
                    assert_eq!(class.len(), (1 << (h - i - 1)) * (i + 1) * (1 << (h - i - 1)) * (i + 1));
                    for e in class {
                        assert!(seen.insert(e), "edge {e:?} in two classes");
                        assert_eq!(f.bichromatic_of(e.0, e.1), Some((k, i)));
                    }
                }
            }
        }
    }

    #[test]
    fn tiny_exact_minimums() {
        let path = IntersectionGraph::from_edges(3, [(0, 1), (1, 2)]);
        assert_eq!(min_2hop_bruteforce(&path).unwrap(), MinSpanner::Exact(2));
        let tri = IntersectionGraph::from_edges(3, [(0, 1), (1, 2), (0, 2)]);
        assert_eq!(min_2hop_bruteforce(&tri).unwrap(), MinSpanner::Exact(2));
        let f1 = gen_f(1).unwrap().to_graph();
        assert_eq!(min_2hop_bruteforce(&f1).unwrap(), MinSpanner::Exact(3));
    }

    #[test]
    fn branch_orders_agree_on_f2() {
        let g = gen_f(2).unwrap().to_graph();
        let a = min_2hop_bruteforce(&g).unwrap();
        let b = min_2hop_branch_and_bound(&g, Branching::LastEdge, DEFAULT_BUDGET).unwrap();
        assert!(a.exact().is_some(), "{a:?}");
        assert_eq!(a, b);
        assert!(a.exact().unwrap() <= greedy_spanner(&g, 2).edge_count());
    }

    #[test]
    fn tiny_budget_reports_bounds() {
        let g = gen_f(2).unwrap().to_graph();
        let exact = min_2hop_bruteforce(&g).unwrap().exact().unwrap();
        match min_2hop_branch_and_bound(&g, Branching::LastEdge, 3).unwrap() {
            MinSpanner::Incomplete { lower, upper } => assert!(lower <= exact && exact <= upper),
            MinSpanner::Exact(k) => assert_eq!(k, exact),
        }
    }

    fn edge_list(g: &IntersectionGraph) -> Vec<(usize, usize)> {
        g.edges().collect()
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(40))]

        /// Branch-and-bound agrees with exhaustive enumeration on small random graphs.
        #[test]
        fn bnb_matches_exhaustive(n in 3usize..8, bits in proptest::collection::vec(any::<bool>(), 28)) {
            let pairs: Vec<(usize, usize)> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
            let edges: Vec<(usize, usize)> = pairs.into_iter().zip(&bits).filter(|(_, &b)| b).map(|(e, _)| e).take(EXHAUSTIVE_EDGES).collect();
            let g = IntersectionGraph::from_edges(n, edges);
            prop_assume!(edge_list(&g).len() <= EXHAUSTIVE_EDGES);
            let ex = min_2hop_bruteforce(&g).unwrap();
            for order in [Branching::FewestOptions, Branching::LastEdge] {
                prop_assert_eq!(min_2hop_branch_and_bound(&g, order, DEFAULT_BUDGET).unwrap(), ex);
            }
        }
    }

    #[test]
    fn forced_edges_on_full_and_greedy_spanners() {
        for h in 2..=5 {
            let f = gen_f(h).unwrap();
            let g = f.to_graph();
            let full = crate::graph::identity_spanner(&g);
            let greedy = greedy_spanner(&g, 2);
            for s in [&full, &greedy] {
                let audit = forced_edge_audit(h, s).unwrap();
                assert!(audit.ok(), "h = {h}: {:?}", audit.rows.iter().find(|r| !r.ok()));
            }
        }
        let a = forced_edge_audit(2, &greedy_spanner(&gen_f(2).unwrap().to_graph(), 2)).unwrap();
        assert_eq!(a.window, 1);
        assert_eq!(a.rows.len(), 1 + 2);
    }

    #[test]
    fn audit_rejects_invalid_spanners() {
        let g = gen_f(2).unwrap().to_graph();
        let mut s = greedy_spanner(&g, 2);
        s.edges.pop();
        s.provenance.pop();
        assert!(matches!(forced_edge_audit(2, &s), Err(Error::InvalidSpanner(_))));
        assert!(forced_edge_audit(1, &greedy_spanner(&gen_f(1).unwrap().to_graph(), 2)).is_err());
    }

    #[test]
    fn normalized_base_has_lowest_vertex_at_origin() {
        for name in ["square", "triangle", "disk", "16-gon"] {
            let b = normalize_base(&base_body(name).unwrap()).unwrap();
            let at_origin = b.vertices().iter().filter(|p| p.y == 0.0 && p.x == 0.0).count();
            assert_eq!(at_origin, 1);
            assert!(b.vertices().iter().all(|p| p.y > 0.0 || (p.x == 0.0 && p.y == 0.0)));
        }
    }

    #[test]
    fn trivial_realization() {
        let r = realize_f(0, &base_body("square").unwrap()).unwrap();
        assert_eq!(r.placements.len(), 1);
        assert_eq!(r.placements[0].scale, 1.0);
    }

    #[test]
    fn square_realization_of_f2() {
        let r = realize_f(2, &base_body("square").unwrap()).unwrap();
        assert_eq!(r.placements.len(), 12);
        let g = build_intersection_graph(&r.objects()).unwrap();
        assert_eq!(edge_list(&g), gen_f(2).unwrap().edges);
        // Every body touches the x-axis only at its column point.
        for (v, p) in r.placements.iter().enumerate() {
            let body = r.body(v);
            assert_eq!(p.dx, r.columns[p.x]);
            assert!(body.vertices().iter().all(|q| q.y > 0.0 || (q.y == 0.0 && q.x == p.dx)));
        }
        // Column points are dyadic and increasing.
        assert!(r.columns.windows(2).all(|w| w[0] < w[1]));
        assert!(r.columns.iter().all(|c| (c * 2f64.powi(60)).fract() == 0.0));
    }

    #[test]
    fn realizations_for_each_base() {
        for (name, h) in [("square", 6), ("triangle", 6), ("disk", 6), ("16-gon", 4)] {
            let r = realize_f(h, &base_body(name).unwrap());
            assert!(r.is_ok(), "{name} h = {h}: {:?}", r.err());
        }
    }

    #[test]
    fn placements_round_trip_json() {
        let r = realize_f(3, &base_body("triangle").unwrap()).unwrap();
        let s = serde_json::to_string(&r).unwrap();
        let back: HomothetRealization = serde_json::from_str(&s).unwrap();
        assert_eq!(back, r);
    }
}
