//! Axis-aligned rectangles: two-hop spanners for fat rectangles over the slab
//! tree, and three-hop spanners for arbitrary rectangles from a corner
//! spanner plus bistars over a biclique cover of the crossing pairs.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::geom::AxisRect;
use crate::graph::{Spanner, SpannerBuilder};
use crate::interval::{greedy_partition, line_restricted_edges, IntervalPartition, Line};
use crate::par;
use crate::slab::{build_rect_slab_tree, SlabNode};

/// `ρ_out / ρ_in` of a rectangle: diagonal over shorter side.
pub fn rect_alpha(r: &AxisRect) -> f64 {
    r.width().hypot(r.height()) / r.width().min(r.height())
}

/// How an inside rectangle is attached to the extended intervals `Î_k`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Attach {
    /// Every interval its x-range meets.
    Range,
    /// Only the intervals holding the x-coordinate of one of its corners.
    Corners,
}

/// Edges of one node spanner and the data needed to audit them.
#[derive(Clone, Debug)]
pub struct NodeSpanner {
    pub edges: Vec<(usize, usize, &'static str)>,
    /// Partition of the across sections on `b_P`, in global indices.
    pub partitions: Vec<IntervalPartition>,
    /// `(inside rectangle, number of Î_k it was attached to)`.
    pub incidences: Vec<(usize, usize)>,
}

fn node_spanner(node: &SlabNode, rects: &[AxisRect], attach: Attach, labels: [&'static str; 4]) -> Result<NodeSpanner> {
    let mut edges = Vec::new();
    for (set, y, label) in [(&node.bottom, node.b, labels[0]), (&node.top, node.t, labels[1])] {
        let sub: Vec<AxisRect> = set.iter().map(|&i| rects[i]).collect();
        for (u, v) in line_restricted_edges(&sub, Line::Horizontal(y))? {
            edges.push((set[u], set[v], label));
        }
    }
    let across = &node.across;
    let sub: Vec<AxisRect> = across.iter().map(|&i| rects[i]).collect();
    for (u, v) in line_restricted_edges(&sub, Line::Horizontal(node.b))? {
        edges.push((across[u], across[v], labels[2]));
    }
    let segs: Vec<(f64, f64)> = sub.iter().map(|r| (r.x_lo, r.x_hi)).collect();
    let partitions: Vec<IntervalPartition> = greedy_partition(&segs)
        .into_iter()
        .map(|mut p| {
            p.covers.iter_mut().for_each(|c| *c = across[*c]);
            p.members.iter_mut().for_each(|c| *c = across[*c]);
            p
        })
        .collect();
    let mut incidences = Vec::with_capacity(node.inside.len());
    for &s in &node.inside {
        let r = &rects[s];
        let mut covers = Vec::new();
        for part in &partitions {
            match attach {
                Attach::Range => covers.extend(part.hits(r.x_lo, r.x_hi).map(|k| part.covers[k])),
                Attach::Corners => {
                    for x in [r.x_lo, r.x_hi] {
                        covers.extend(part.hits(x, x).map(|k| part.covers[k]));
                    }
                }
            }
        }
        covers.sort_unstable();
        covers.dedup();
        incidences.push((s, covers.len()));
        edges.extend(covers.into_iter().map(|c| (s, c, labels[3])));
    }
    Ok(NodeSpanner { edges, partitions, incidences })
}

/// Every `2k` consecutive intervals of `part` span at least `k · w_min`.
pub fn width_lemma_holds(part: &IntervalPartition, w_min: f64) -> bool {
    let p = &part.breakpoints;
    let m = part.len();
    let tol = 1e-9 * (1.0 + p[m].abs().max(p[0].abs()));
    (1..=m / 2).all(|k| (0..=m - 2 * k).all(|i| p[i + 2 * k] - p[i] >= k as f64 * w_min - tol))
}

/// Audit record for one slab node.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct NodeReport {
    pub depth: usize,
    /// `|S(P)|`.
    pub members: usize,
    /// Distinct edges emitted at this node.
    pub edges: usize,
    /// Most extended intervals met by one inside rectangle.
    pub max_incidence: usize,
    pub width_lemma: bool,
}

/// A slab-tree spanner with its tree and per-node audits.
#[derive(Clone, Debug)]
pub struct SlabRun {
    pub spanner: Spanner,
    pub tree: SlabNode,
    pub nodes: Vec<NodeReport>,
    /// Largest rectangle fatness in the input.
    pub alpha: f64,
}

fn slab_spanner(rects: &[AxisRect], attach: Attach, labels: [&'static str; 4], t: usize) -> Result<SlabRun> {
    let tree = build_rect_slab_tree(rects);
    let nodes = tree.nodes();
    let built = par::map(&nodes, |n| node_spanner(n, rects, attach, labels));
    let mut builder = SpannerBuilder::new(rects.len());
    let mut reports = Vec::with_capacity(nodes.len());
    for (node, ns) in nodes.iter().zip(built) {
        let ns = ns?;
        let mut distinct: Vec<(usize, usize)> = ns.edges.iter().map(|&(u, v, _)| (u.min(v), u.max(v))).collect();
        distinct.sort_unstable();
        distinct.dedup();
        let w_min = node.across.iter().map(|&i| rects[i].width()).fold(f64::INFINITY, f64::min);
        reports.push(NodeReport {
            depth: node.depth,
            members: node.members.len(),
            edges: distinct.len(),
            max_incidence: ns.incidences.iter().map(|x| x.1).max().unwrap_or(0),
            width_lemma: ns.partitions.iter().all(|p| width_lemma_holds(p, w_min)),
        });
        for (u, v, label) in ns.edges {
            builder.add(u, v, label);
        }
    }
    let alpha = rects.iter().map(rect_alpha).fold(1.0, f64::max);
    Ok(SlabRun { spanner: builder.build(t), tree: (*nodes[0]).clone(), nodes: reports, alpha })
}

/// The node spanner `H(P)` for fat rectangles.
pub fn fat_rect_node_spanner(node: &SlabNode, rects: &[AxisRect]) -> Result<NodeSpanner> {
    node_spanner(node, rects, Attach::Range, ["slab-bottom", "slab-top", "slab-across", "slab-inside"])
}

/// Two-hop spanner for fat rectangles: the union of `H(P)` over the slab tree.
pub fn fat_rect_2hop(rects: &[AxisRect]) -> Result<SlabRun> {
    slab_spanner(rects, Attach::Range, ["slab-bottom", "slab-top", "slab-across", "slab-inside"], 2)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum IntersectionKind {
    /// One rectangle contains a corner of the other.
    Corner,
    /// They meet but neither contains a corner of the other.
    Crossing,
    None,
}

pub fn classify_intersection(a: &AxisRect, b: &AxisRect) -> IntersectionKind {
    if !a.intersects(b) {
        IntersectionKind::None
    } else if a.corners().iter().any(|&c| b.contains_point(c)) || b.corners().iter().any(|&c| a.contains_point(c)) {
        IntersectionKind::Corner
    } else {
        IntersectionKind::Crossing
    }
}

/// Intersecting pairs `(i, j)`, `i < j`, by an x-sorted sweep.
pub fn intersecting_pairs(rects: &[AxisRect]) -> Vec<(usize, usize)> {
    let mut order: Vec<usize> = (0..rects.len()).collect();
    order.sort_by(|&a, &b| rects[a].x_lo.total_cmp(&rects[b].x_lo));
    let mut out = Vec::new();
    for (k, &i) in order.iter().enumerate() {
        for &j in &order[k + 1..] {
            if rects[j].x_lo > rects[i].x_hi {
                break;
            }
            if rects[i].intersects(&rects[j]) {
                out.push((i.min(j), i.max(j)));
            }
        }
    }
    out.sort_unstable();
    out
}

pub fn crossing_pairs(rects: &[AxisRect]) -> Vec<(usize, usize)> {
    intersecting_pairs(rects)
        .into_iter()
        .filter(|&(i, j)| classify_intersection(&rects[i], &rects[j]) == IntersectionKind::Crossing)
        .collect()
}

/// Slab spanner with per-corner attachment: covers every corner edge in two hops.
pub fn corner_2hop(rects: &[AxisRect]) -> Result<SlabRun> {
    slab_spanner(rects, Attach::Corners, ["corner-bottom", "corner-top", "corner-across", "corner-inside"], 2)
}

/// A dyadic range `start .. start + 2^level`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Streak {
    pub level: u32,
    pub start: usize,
}

impl Streak {
    pub fn len(&self) -> usize {
        1 << self.level
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Last element, inclusive.
    pub fn end(&self) -> usize {
        self.start + self.len() - 1
    }

    pub fn within(&self, lo: usize, hi: usize) -> bool {
        lo <= self.start && self.end() <= hi
    }
}

/// Complete binary recursion tree over `0..size`, `size` a power of two.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StreakTree {
    pub size: usize,
}

impl StreakTree {
    /// Tree over at least `n` leaves.
    pub fn new(n: usize) -> Self {
        Self { size: n.max(1).next_power_of_two() }
    }

    pub fn height(&self) -> u32 {
        self.size.trailing_zeros()
    }

    pub fn leaf(&self, s: usize) -> Streak {
        debug_assert!(s < self.size);
        Streak { level: 0, start: s }
    }

    pub fn parent(&self, x: Streak) -> Option<Streak> {
        (x.level < self.height()).then(|| {
            let level = x.level + 1;
            Streak { level, start: x.start & !((1 << level) - 1) }
        })
    }

    /// The largest streak containing `s` and contained in `[lo, hi]`.
    pub fn maximal(&self, s: usize, lo: usize, hi: usize) -> Streak {
        debug_assert!(lo <= s && s <= hi);
        let mut cur = self.leaf(s);
        while let Some(p) = self.parent(cur) {
            if !p.within(lo, hi) {
                break;
            }
            cur = p;
        }
        cur
    }

    /// Canonical decomposition of `[lo, hi]` into maximal streaks.
    pub fn decompose(&self, lo: usize, hi: usize) -> Vec<Streak> {
        let mut out = Vec::new();
        let mut s = lo;
        while s <= hi {
            let m = self.maximal(s, lo, hi);
            out.push(m);
            s = m.end() + 1;
        }
        out
    }
}

/// Compressed `[x_lo, x_hi, y_lo, y_hi]` per rectangle, each axis mapped
/// order-preservingly onto `0..2n`. Equal values order low endpoints first,
/// then by rectangle index, so closed intersections are preserved.
pub fn compress(rects: &[AxisRect]) -> Vec<[usize; 4]> {
    let mut out = vec![[0usize; 4]; rects.len()];
    for axis in 0..2 {
        let mut ends: Vec<(f64, u8, usize)> = Vec::with_capacity(2 * rects.len());
        for (i, r) in rects.iter().enumerate() {
            let (lo, hi) = if axis == 0 { (r.x_lo, r.x_hi) } else { (r.y_lo, r.y_hi) };
            ends.push((lo, 0, i));
            ends.push((hi, 1, i));
        }
        ends.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1)).then(a.2.cmp(&b.2)));
        for (rank, &(_, end, i)) in ends.iter().enumerate() {
            out[i][2 * axis + end as usize] = rank;
        }
    }
    out
}

/// One grid `ℓ = I_x × I_y` with its biclique sides.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Grid {
    pub x: Streak,
    pub y: Streak,
    /// Rectangles traversing the grid horizontally.
    pub a: Vec<usize>,
    /// Rectangles traversing the grid vertically.
    pub b: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BicliqueCover {
    pub tree: StreakTree,
    pub grids: Vec<Grid>,
    /// `Σ |A(ℓ)| + |B(ℓ)|`.
    pub weight: usize,
}

impl BicliqueCover {
    /// Number of grids each rectangle belongs to, counting A and B sides separately.
    pub fn memberships(&self, n: usize) -> Vec<usize> {
        let mut m = vec![0; n];
        for g in &self.grids {
            g.a.iter().chain(&g.b).for_each(|&r| m[r] += 1);
        }
        m
    }

    /// The bound `4 ⌈log₂ 2n⌉²` on per-rectangle memberships.
    pub fn membership_bound(n: usize) -> usize {
        let l = (2 * n.max(1)).next_power_of_two().trailing_zeros() as usize;
        4 * l * l
    }
}

/// Biclique cover of the crossing pairs. Each pair is charged to the grid
/// spanned by the maximal streaks through its lowest-leftmost common
/// compressed point.
pub fn crossing_biclique_cover(rects: &[AxisRect]) -> BicliqueCover {
    let c = compress(rects);
    let tree = StreakTree::new(2 * rects.len());
    let mut grids: BTreeMap<(Streak, Streak), (Vec<usize>, Vec<usize>)> = BTreeMap::new();
    for (i, j) in crossing_pairs(rects) {
        // `a` spans `b` horizontally.
        let (a, b) = if c[i][0] <= c[j][0] && c[j][1] <= c[i][1] { (i, j) } else { (j, i) };
        let (ca, cb) = (c[a], c[b]);
        let (sx, sy) = (ca[0].max(cb[0]), ca[2].max(cb[2]));
        let ix = tree.maximal(sx, ca[0], ca[1]);
        let iy = tree.maximal(sy, cb[2], cb[3]);
        let entry = grids.entry((ix, iy)).or_default();
        entry.0.push(a);
        entry.1.push(b);
    }
    let grids: Vec<Grid> = grids
        .into_iter()
        .map(|((x, y), (mut a, mut b))| {
            a.sort_unstable();
            a.dedup();
            b.sort_unstable();
            b.dedup();
            Grid { x, y, a, b }
        })
        .collect();
    let weight = grids.iter().map(|g| g.a.len() + g.b.len()).sum();
    BicliqueCover { tree, grids, weight }
}

/// Two stars: the first of `a` to all of `b`, the first of `b` to all of `a`.
/// For disjoint nonempty sides this is `|a| + |b| − 1` edges.
pub fn bistar(a: &[usize], b: &[usize]) -> Vec<(usize, usize)> {
    let (Some(&a0), Some(&b0)) = (a.first(), b.first()) else {
        return Vec::new();
    };
    let mut out: Vec<(usize, usize)> = b
        .iter()
        .map(|&v| (a0, v))
        .chain(a.iter().map(|&u| (u, b0)))
        .filter(|&(u, v)| u != v)
        .map(|(u, v)| (u.min(v), u.max(v)))
        .collect();
    out.sort_unstable();
    out.dedup();
    out
}

#[derive(Clone, Debug)]
pub struct Rect3Run {
    pub spanner: Spanner,
    pub corner: SlabRun,
    pub cover: BicliqueCover,
}

/// Three-hop spanner for arbitrary axis-aligned rectangles.
pub fn rect_3hop(rects: &[AxisRect]) -> Result<Rect3Run> {
    let corner = corner_2hop(rects)?;
    let cover = crossing_biclique_cover(rects);
    let mut builder = SpannerBuilder::new(rects.len());
    for (e, label) in corner.spanner.edges.iter().zip(&corner.spanner.provenance) {
        builder.add(e[0], e[1], label);
    }
    for stars in par::map(&cover.grids, |g| bistar(&g.a, &g.b)) {
        builder.extend(stars, "bistar");
    }
    Ok(Rect3Run { spanner: builder.build(3), corner, cover })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geom::GeomObject;
    use crate::graph::{build_intersection_graph, verify_hop_spanner, IntersectionGraph};
    use proptest::prelude::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn r(x0: f64, x1: f64, y0: f64, y1: f64) -> AxisRect {
        AxisRect::new(x0, x1, y0, y1).unwrap()
    }

    fn graph(rects: &[AxisRect]) -> IntersectionGraph {
        let objs: Vec<GeomObject> = rects.iter().map(|&r| GeomObject::Rect(r)).collect();
        build_intersection_graph(&objs).unwrap()
    }

    fn squares(rng: &mut ChaCha8Rng, n: usize, side: f64) -> Vec<AxisRect> {
        (0..n)
            .map(|_| {
                let (x, y) = (rng.gen_range(0.0..side), rng.gen_range(0.0..side));
                r(x, x + 1.0, y, y + 1.0)
            })
            .collect()
    }

    fn mixed(rng: &mut ChaCha8Rng, n: usize, side: f64) -> Vec<AxisRect> {
        (0..n)
            .map(|_| {
                let (x, y) = (rng.gen_range(0.0..side), rng.gen_range(0.0..side));
                let (w, h) = match rng.gen_range(0..3) {
                    0 => (rng.gen_range(0.1..1.0), rng.gen_range(3.0..8.0)),
                    1 => (rng.gen_range(3.0..8.0), rng.gen_range(0.1..1.0)),
                    _ => (rng.gen_range(0.3..2.0), rng.gen_range(0.3..2.0)),
                };
                r(x, x + w, y, y + h)
            })
            .collect()
    }

    #[test]
    fn alpha_matches_polygon_fatness() {
        for rect in [r(0.0, 1.0, 0.0, 1.0), r(0.0, 2.0, 0.0, 1.0), r(-1.0, 0.5, 2.0, 6.0)] {
            let f = crate::geom::fatness(&rect.to_polygon().unwrap()).unwrap();
            assert!((f.alpha - rect_alpha(&rect)).abs() < 1e-9);
        }
    }

    #[test]
    fn disjoint_squares_give_no_edges() {
        let rects: Vec<AxisRect> = (0..10).map(|i| r(2.0 * i as f64, 2.0 * i as f64 + 1.0, 0.0, 1.0)).collect();
        assert_eq!(fat_rect_2hop(&rects).unwrap().spanner.edge_count(), 0);
    }

    #[test]
    fn two_overlapping_squares() {
        let rects = [r(0.0, 1.0, 0.0, 1.0), r(0.5, 1.5, 0.5, 1.5)];
        let run = fat_rect_2hop(&rects).unwrap();
        assert_eq!(run.spanner.edge_count(), 1);
        assert!(verify_hop_spanner(&graph(&rects), &run.spanner, 2).unwrap().valid);
    }

    #[test]
    fn one_across_rectangle_stars_the_inside_ones() {
        // Slab [0, 10] with one wide across rectangle and k inside ones.
        let mut rects = vec![r(0.0, 10.0, -1.0, 11.0)];
        rects.extend((0..5).map(|i| r(i as f64 * 2.0, i as f64 * 2.0 + 1.0, 3.0, 4.0)));
        let node = SlabNode {
            b: 0.0,
            t: 10.0,
            depth: 0,
            members: (0..6).collect(),
            split: None,
            children: None,
            inside: (1..6).collect(),
            bottom: vec![0],
            top: vec![0],
            across: vec![0],
        };
        let ns = fat_rect_node_spanner(&node, &rects).unwrap();
        let mut star: Vec<(usize, usize)> = ns.edges.iter().filter(|e| e.2 == "slab-inside").map(|e| (e.0, e.1)).collect();
        star.sort_unstable();
        assert_eq!(star, (1..6).map(|s| (s, 0)).collect::<Vec<_>>());
        assert!(ns.incidences.iter().all(|&(_, k)| k == 1));
    }

    #[test]
    fn empty_across_leaves_only_line_stars() {
        let rects = [r(0.0, 1.0, -1.0, 1.0), r(0.5, 2.0, -0.5, 0.5), r(0.0, 1.0, 9.0, 11.0)];
        let node = SlabNode {
            b: 0.0,
            t: 10.0,
            depth: 0,
            members: vec![0, 1, 2],
            split: None,
            children: None,
            inside: vec![],
            bottom: vec![0, 1],
            top: vec![2],
            across: vec![],
        };
        let ns = fat_rect_node_spanner(&node, &rects).unwrap();
        assert_eq!(ns.edges, vec![(0, 1, "slab-bottom")]);
    }

    #[test]
    fn random_squares_verify_with_audits() {
        let mut rng = ChaCha8Rng::seed_from_u64(40);
        let rects = squares(&mut rng, 400, 20.0);
        let run = fat_rect_2hop(&rects).unwrap();
        assert!(verify_hop_spanner(&graph(&rects), &run.spanner, 2).unwrap().valid);
        let bound = 2.0 * run.alpha * run.alpha + 1.0;
        for node in &run.nodes {
            assert!(node.width_lemma);
            assert!(node.max_incidence as f64 <= bound);
        }
        assert!(crate::slab::audit_levels(&run.tree, rects.len()).ok());
    }

    #[test]
    fn width_lemma_on_hand_partition() {
        let part = greedy_partition(&[(0.0, 1.0), (0.9, 2.0), (1.95, 3.0), (2.5, 3.5)]).remove(0);
        assert_eq!(part.breakpoints, vec![0.0, 1.0, 2.0, 3.0, 3.5]);
        assert!(width_lemma_holds(&part, 1.0));
        assert!(!width_lemma_holds(&part, 1.6));
    }

    #[test]
    fn intersection_kinds() {
        assert_eq!(classify_intersection(&r(0.0, 3.0, 1.0, 2.0), &r(1.0, 2.0, 0.0, 3.0)), IntersectionKind::Crossing);
        assert_eq!(classify_intersection(&r(0.0, 2.0, 0.0, 2.0), &r(1.0, 3.0, 1.0, 3.0)), IntersectionKind::Corner);
        let a = r(0.0, 1.0, 0.0, 1.0);
        assert_eq!(classify_intersection(&a, &a), IntersectionKind::Corner);
        assert_eq!(classify_intersection(&a, &r(2.0, 3.0, 0.0, 1.0)), IntersectionKind::None);
        // Shared edge only: corners lie on the other's boundary.
        assert_eq!(classify_intersection(&a, &r(1.0, 2.0, 0.0, 1.0)), IntersectionKind::Corner);
    }

    #[test]
    fn corner_pair_is_one_hop() {
        let rects = [r(0.0, 2.0, 0.0, 2.0), r(1.0, 3.0, 1.0, 3.0)];
        let run = corner_2hop(&rects).unwrap();
        assert!(verify_hop_spanner(&graph(&rects), &run.spanner, 2).unwrap().valid);
    }

    #[test]
    fn inside_rectangle_with_two_corner_columns() {
        // Across chain over [0, 4] with breakpoints 0, 1, 2, 3, 4.
        let mut rects: Vec<AxisRect> = (0..4).map(|i| r(i as f64, i as f64 + 1.0, -1.0, 11.0)).collect();
        rects.push(r(0.5, 2.5, 4.0, 5.0));
        let node = SlabNode {
            b: 0.0,
            t: 10.0,
            depth: 0,
            members: (0..5).collect(),
            split: None,
            children: None,
            inside: vec![4],
            bottom: (0..4).collect(),
            top: (0..4).collect(),
            across: (0..4).collect(),
        };
        let corner = node_spanner(&node, &rects, Attach::Corners, ["b", "t", "a", "i"]).unwrap();
        assert_eq!(corner.incidences, vec![(4, 2)]);
        let range = fat_rect_node_spanner(&node, &rects).unwrap();
        assert_eq!(range.incidences, vec![(4, 3)]);
    }

    #[test]
    fn corner_spanner_covers_corner_edges_only() {
        let mut rng = ChaCha8Rng::seed_from_u64(41);
        let rects = mixed(&mut rng, 250, 15.0);
        let run = corner_2hop(&rects).unwrap();
        let g = graph(&rects);
        let report = verify_hop_spanner(&g, &run.spanner, 2).unwrap();
        for &(u, v) in &report.violating_edges {
            assert_eq!(classify_intersection(&rects[u], &rects[v]), IntersectionKind::Crossing);
        }
    }

    #[test]
    fn plus_signs_have_no_corner_edges() {
        let rects = [r(0.0, 3.0, 1.0, 2.0), r(1.0, 2.0, 0.0, 3.0)];
        assert_eq!(crossing_pairs(&rects), vec![(0, 1)]);
        let cover = crossing_biclique_cover(&rects);
        assert_eq!(cover.grids.len(), 1);
        assert_eq!(cover.weight, 2);
        assert_eq!((cover.grids[0].a.clone(), cover.grids[0].b.clone()), (vec![0], vec![1]));
    }

    #[test]
    fn no_crossings_empty_cover() {
        let rects = [r(0.0, 2.0, 0.0, 2.0), r(1.0, 3.0, 1.0, 3.0)];
        let cover = crossing_biclique_cover(&rects);
        assert!(cover.grids.is_empty());
        assert_eq!(cover.weight, 0);
    }

    #[test]
    fn streak_tree_basics() {
        let t = StreakTree::new(6);
        assert_eq!(t.size, 8);
        assert_eq!(t.maximal(5, 1, 7), Streak { level: 2, start: 4 });
        assert_eq!(t.maximal(1, 1, 7), Streak { level: 0, start: 1 });
        let d = t.decompose(1, 6);
        assert_eq!(d.iter().map(|s| (s.start, s.end())).collect::<Vec<_>>(), vec![(1, 1), (2, 3), (4, 5), (6, 6)]);
        assert_eq!(t.parent(Streak { level: 3, start: 0 }), None);
    }

    #[test]
    fn compression_preserves_intersections() {
        let mut rng = ChaCha8Rng::seed_from_u64(42);
        // Coarse coordinates force many ties.
        let rects: Vec<AxisRect> = (0..80)
            .map(|_| {
                let (x, y) = (rng.gen_range(0..10) as f64, rng.gen_range(0..10) as f64);
                r(x, x + rng.gen_range(0..4) as f64, y, y + rng.gen_range(0..4) as f64)
            })
            .collect();
        let c = compress(&rects);
        for i in 0..rects.len() {
            for j in 0..rects.len() {
                let ci = c[i];
                let cj = c[j];
                let meet = ci[0] <= cj[1] && cj[0] <= ci[1] && ci[2] <= cj[3] && cj[2] <= ci[3];
                assert_eq!(meet, rects[i].intersects(&rects[j]), "{i} {j}");
            }
        }
    }

    #[test]
    fn grid_gadget_is_covered() {
        let k = 8;
        let mut rects = Vec::new();
        for i in 0..k {
            let y = 1.0 + 2.0 * i as f64;
            rects.push(r(0.0, 2.0 * k as f64 + 1.0, y, y + 0.5));
        }
        for j in 0..k {
            let x = 1.0 + 2.0 * j as f64;
            rects.push(r(x, x + 0.5, 0.0, 2.0 * k as f64 + 1.0));
        }
        let cover = crossing_biclique_cover(&rects);
        let mut covered = std::collections::BTreeSet::new();
        for g in &cover.grids {
            for &a in &g.a {
                for &b in &g.b {
                    assert!(rects[a].intersects(&rects[b]));
                    covered.insert((a.min(b), a.max(b)));
                }
            }
        }
        assert_eq!(covered.len(), k * k);
        let run = rect_3hop(&rects).unwrap();
        assert!(verify_hop_spanner(&graph(&rects), &run.spanner, 3).unwrap().valid);
    }

    #[test]
    fn bistar_sizes() {
        assert_eq!(bistar(&[0], &[1]), vec![(0, 1)]);
        assert_eq!(bistar(&[0, 1], &[2, 3, 4]).len(), 4);
        assert_eq!(bistar(&[0, 1, 2], &[3, 4, 5]).len(), 5);
    }

    #[test]
    fn random_mixed_rectangles_three_hop() {
        let mut rng = ChaCha8Rng::seed_from_u64(43);
        let rects = mixed(&mut rng, 300, 15.0);
        let run = rect_3hop(&rects).unwrap();
        assert!(verify_hop_spanner(&graph(&rects), &run.spanner, 3).unwrap().valid);
        let bound = BicliqueCover::membership_bound(rects.len());
        assert!(run.cover.memberships(rects.len()).iter().all(|&m| m <= bound));
        let crossing = crossing_pairs(&rects);
        let mut covered = std::collections::BTreeSet::new();
        for g in &run.cover.grids {
            for &a in &g.a {
                for &b in &g.b {
                    assert!(rects[a].intersects(&rects[b]));
                    covered.insert((a.min(b), a.max(b)));
                }
            }
        }
        assert!(crossing.iter().all(|p| covered.contains(p)));
    }

    #[test]
    fn all_disjoint_three_hop_is_empty() {
        let rects: Vec<AxisRect> = (0..20).map(|i| r(i as f64 * 3.0, i as f64 * 3.0 + 1.0, 0.0, 1.0)).collect();
        assert_eq!(rect_3hop(&rects).unwrap().spanner.edge_count(), 0);
    }

    proptest! {
        #[test]
        fn decomposition_tiles_the_range(lo in 0usize..64, len in 0usize..64) {
            let t = StreakTree::new(128);
            let hi = lo + len;
            let parts = t.decompose(lo, hi);
            prop_assert_eq!(parts[0].start, lo);
            prop_assert_eq!(parts.last().unwrap().end(), hi);
            for w in parts.windows(2) {
                prop_assert_eq!(w[0].end() + 1, w[1].start);
            }
            prop_assert!(parts.len() <= 2 * t.height() as usize);
        }

        #[test]
        fn kinds_partition_the_edges(v in proptest::collection::vec((0.0f64..10.0, 0.0f64..10.0, 0.1f64..5.0, 0.1f64..5.0), 2..30)) {
            let rects: Vec<AxisRect> = v.iter().map(|&(x, y, w, h)| r(x, x + w, y, y + h)).collect();
            let pairs = intersecting_pairs(&rects);
            for i in 0..rects.len() {
                for j in i + 1..rects.len() {
                    let kind = classify_intersection(&rects[i], &rects[j]);
                    prop_assert_eq!(kind != IntersectionKind::None, pairs.binary_search(&(i, j)).is_ok());
                    prop_assert_eq!(kind, classify_intersection(&rects[j], &rects[i]));
                }
            }
        }
    }
}
