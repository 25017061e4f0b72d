//! Three-hop spanners for fat convex polygons.
//!
//! The slab tree is built over bounding boxes, with one representative point
//! inside every intersecting pair of bodies. At each node the across bodies
//! are ranked by where they enter the bottom line, greedy star centers `C` and
//! `C'` are chosen along the ranking, and every other member of the node is
//! attached to a center or to one of its star leaves.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::geom::{
    clip_points_to_slab, clip_to_slab, convex_intersection, convex_sets_intersect, fatness, max_inscribed_circle,
    polygon_centroid, AxisRect, ConvexPolygon, Point2,
};
use crate::graph::{Spanner, SpannerBuilder};
use crate::interval::interval_star_edges;
use crate::par;
use crate::slab::{build_slab_tree, Rep, SlabNode};

/// One point inside each intersecting pair: the centroid of the
/// intersection polygon, or a bounding-box corner when it has collapsed.
pub fn body_reps(bodies: &[ConvexPolygon]) -> Vec<Rep> {
    let boxes: Vec<AxisRect> = bodies.iter().map(ConvexPolygon::bbox).collect();
    let mut order: Vec<usize> = (0..bodies.len()).collect();
    order.sort_by(|&a, &b| boxes[a].x_lo.total_cmp(&boxes[b].x_lo));
    let mut reps = Vec::new();
    for (k, &i) in order.iter().enumerate() {
        for &j in &order[k + 1..] {
            if boxes[j].x_lo > boxes[i].x_hi {
                break;
            }
            if !boxes[i].intersects(&boxes[j]) || !convex_sets_intersect(bodies[i].vertices(), bodies[j].vertices()) {
                continue;
            }
            let common = convex_intersection(bodies[i].vertices(), &bodies[j]);
            let point = if common.is_empty() {
                let b = boxes[i].intersection(&boxes[j]).expect("boxes meet");
                Point2::new(b.x_lo, b.y_lo)
            } else {
                polygon_centroid(&common)
            };
            reps.push(Rep { pair: (i.min(j), i.max(j)), point });
        }
    }
    reps.sort_by_key(|r| r.pair);
    reps
}

/// Greedy centers of one connected component, as ranks.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct CenterSets {
    /// `c_0, …, c_m`.
    pub c: Vec<usize>,
    /// `c'_0, …, c'_{m-1}`.
    pub c_prime: Vec<usize>,
}

impl CenterSets {
    /// `C ∪ C'`, ascending.
    pub fn all(&self) -> Vec<usize> {
        let set: BTreeSet<usize> = self.c.iter().chain(&self.c_prime).copied().collect();
        set.into_iter().collect()
    }
}

/// Center selection on ranks `0..m` of a connected component; `nbrs[r]` are
/// the ranks meeting `r` in the slab.
pub fn greedy_centers(nbrs: &[Vec<usize>]) -> CenterSets {
    let m = nbrs.len();
    if m == 0 {
        return CenterSets::default();
    }
    // reach[r]: the highest rank meeting some rank ≤ r.
    let mut reach = Vec::with_capacity(m);
    let mut best = 0;
    for (r, nb) in nbrs.iter().enumerate() {
        best = nb.iter().copied().chain([r, best]).max().unwrap();
        reach.push(best);
    }
    let mut c = vec![0];
    while *c.last().unwrap() < m - 1 {
        let last = *c.last().unwrap();
        let next = reach[last];
        assert!(next > last, "component is not connected");
        c.push(next);
    }
    let c_prime = c
        .windows(2)
        .map(|w| nbrs[w[1]].iter().copied().filter(|&j| j <= w[0]).max().expect("c_{k+1} meets L_k"))
        .collect();
    CenterSets { c, c_prime }
}

/// Across bodies of one node sorted by the left end of their bottom section,
/// ties by index.
pub fn rank_order(across: &[usize], bodies: &[ConvexPolygon], b: f64) -> Vec<usize> {
    let key = |i: usize| bodies[i].horizontal_section(b).map_or(f64::INFINITY, |s| s.0);
    let mut order = across.to_vec();
    order.sort_by(|&x, &y| key(x).total_cmp(&key(y)).then(x.cmp(&y)));
    order
}

/// One connected component of the across bodies.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Component {
    /// Body indices by rank.
    pub order: Vec<usize>,
    /// Slab adjacency between ranks.
    pub nbrs: Vec<Vec<usize>>,
    pub centers: CenterSets,
}

/// Everything built at one slab node.
#[derive(Clone, Debug)]
pub struct FatNode {
    pub components: Vec<Component>,
    /// `(u, v, label)`; every edge is an edge of the host graph.
    pub edges: Vec<(usize, usize, &'static str)>,
    /// Emitted candidates rejected by the global intersection predicate.
    pub dropped: usize,
}

struct Ctx<'a> {
    bodies: &'a [ConvexPolygon],
    boxes: &'a [AxisRect],
}

impl Ctx<'_> {
    fn meets(&self, i: usize, j: usize) -> bool {
        self.boxes[i].intersects(&self.boxes[j]) && convex_sets_intersect(self.bodies[i].vertices(), self.bodies[j].vertices())
    }
}

fn sections_overlap(a: Option<(f64, f64)>, b: Option<(f64, f64)>) -> bool {
    matches!((a, b), (Some(x), Some(y)) if x.0 <= y.1 && y.0 <= x.1)
}

fn fat_node(node: &SlabNode, ctx: &Ctx) -> FatNode {
    let (b, t) = (node.b, node.t);
    let clip: BTreeMap<usize, Vec<Point2>> =
        node.members.iter().map(|&s| (s, clip_points_to_slab(ctx.bodies[s].vertices(), b, t))).collect();
    let in_slab = |i: usize, j: usize| ctx.boxes[i].intersects(&ctx.boxes[j]) && convex_sets_intersect(&clip[&i], &clip[&j]);
    let mut edges = Vec::new();

    for (set, y, label) in [(&node.bottom, b, "fat-bottom"), (&node.top, t, "fat-top")] {
        let cut: Vec<(usize, (f64, f64))> =
            set.iter().filter_map(|&s| ctx.bodies[s].horizontal_section(y).map(|x| (s, x))).collect();
        let segs: Vec<(f64, f64)> = cut.iter().map(|c| c.1).collect();
        edges.extend(interval_star_edges(&segs).into_iter().map(|(u, v)| (cut[u].0, cut[v].0, label)));
    }

    // Components of the across bodies under slab intersection, then ranks.
    let order = rank_order(&node.across, ctx.bodies, b);
    let mut comp_of: BTreeMap<usize, usize> = BTreeMap::new();
    let mut comps: Vec<Vec<usize>> = Vec::new();
    for &start in &order {
        if comp_of.contains_key(&start) {
            continue;
        }
        let id = comps.len();
        let mut members = vec![start];
        comp_of.insert(start, id);
        let mut queue = VecDeque::from([start]);
        while let Some(u) = queue.pop_front() {
            for &v in &order {
                if !comp_of.contains_key(&v) && in_slab(u, v) {
                    comp_of.insert(v, id);
                    members.push(v);
                    queue.push_back(v);
                }
            }
        }
        comps.push(members);
    }
    let rank_in: BTreeMap<usize, usize> = order.iter().enumerate().map(|(r, &s)| (s, r)).collect();
    let mut components = Vec::with_capacity(comps.len());
    // Star leaves `N(c)` and, per across body, the centers whose star holds it.
    let mut leaves: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    let mut holders: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for mut members in comps {
        members.sort_by_key(|s| rank_in[s]);
        let nbrs: Vec<Vec<usize>> = (0..members.len())
            .map(|i| (0..members.len()).filter(|&j| j != i && in_slab(members[i], members[j])).collect())
            .collect();
        let centers = greedy_centers(&nbrs);
        for c in centers.all() {
            let cg = members[c];
            let n: Vec<usize> = nbrs[c].iter().map(|&j| members[j]).collect();
            for &a in &n {
                edges.push((cg, a, "fat-center"));
                holders.entry(a).or_default().push(cg);
            }
            holders.entry(cg).or_default().push(cg);
            leaves.insert(cg, n);
        }
        components.push(Component { order: members, nbrs, centers });
    }

    // Attach inside bodies, and bottom/top bodies through intersections that avoid their line.
    let bottom_only: Vec<usize> = node.bottom_only().collect();
    let top_only: Vec<usize> = node.top_only().collect();
    let groups: [(&[usize], Option<f64>, &'static str); 3] = [
        (&node.inside, None, "fat-inside"),
        (&bottom_only, Some(b), "fat-boundary"),
        (&top_only, Some(t), "fat-boundary"),
    ];
    for (set, line, label) in groups {
        for &s in set {
            let qualifying: BTreeSet<usize> = node
                .across
                .iter()
                .copied()
                .filter(|&a| {
                    in_slab(s, a)
                        && line.is_none_or(|y| {
                            !sections_overlap(ctx.bodies[s].horizontal_section(y), ctx.bodies[a].horizontal_section(y))
                        })
                })
                .collect();
            let mut cands: BTreeSet<usize> = BTreeSet::new();
            for q in &qualifying {
                cands.extend(holders.get(q).into_iter().flatten().copied());
            }
            for c in cands {
                if qualifying.contains(&c) {
                    edges.push((s, c, label));
                } else if let Some(&n) = leaves[&c].iter().filter(|n| qualifying.contains(n)).min_by_key(|n| rank_in[*n]) {
                    edges.push((s, n, label));
                }
            }
        }
    }

    let before = edges.len();
    edges.retain(|&(u, v, _)| u != v && ctx.meets(u, v));
    let dropped = before - edges.len();
    FatNode { components, edges, dropped }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FatNodeReport {
    pub depth: usize,
    pub members: usize,
    pub across: usize,
    pub centers: usize,
    pub edges: usize,
}

#[derive(Clone, Debug)]
pub struct FatConvexRun {
    pub spanner: Spanner,
    pub tree: SlabNode,
    pub nodes: Vec<FatNodeReport>,
    /// Largest fatness in the input.
    pub alpha: f64,
    pub dropped: usize,
}

/// Largest fatness among `bodies` (1 for an empty input).
pub fn max_alpha(bodies: &[ConvexPolygon]) -> Result<f64> {
    let alphas: Vec<Result<f64>> = par::map(bodies, |b| fatness(b).map(|f| f.alpha));
    alphas.into_iter().try_fold(1.0, |m, a| Ok(f64::max(m, a?)))
}

pub fn fat_tree(bodies: &[ConvexPolygon]) -> SlabNode {
    let boxes: Vec<AxisRect> = bodies.iter().map(ConvexPolygon::bbox).collect();
    build_slab_tree(&boxes, &body_reps(bodies))
}

/// The node spanner `H(P)` with its components and center sets.
pub fn fat_node_spanner(node: &SlabNode, bodies: &[ConvexPolygon]) -> FatNode {
    let boxes: Vec<AxisRect> = bodies.iter().map(ConvexPolygon::bbox).collect();
    fat_node(node, &Ctx { bodies, boxes: &boxes })
}

/// Three-hop spanner for fat convex polygons.
pub fn fat_convex_3hop(bodies: &[ConvexPolygon]) -> Result<FatConvexRun> {
    let alpha = max_alpha(bodies)?;
    let boxes: Vec<AxisRect> = bodies.iter().map(ConvexPolygon::bbox).collect();
    let tree = build_slab_tree(&boxes, &body_reps(bodies));
    let nodes = tree.nodes();
    let ctx = Ctx { bodies, boxes: &boxes };
    let built = par::map(&nodes, |n| fat_node(n, &ctx));
    let mut builder = SpannerBuilder::new(bodies.len());
    let mut reports = Vec::with_capacity(nodes.len());
    let mut dropped = 0;
    for (node, fat) in nodes.iter().zip(built) {
        let distinct: BTreeSet<(usize, usize)> = fat.edges.iter().map(|&(u, v, _)| (u.min(v), u.max(v))).collect();
        reports.push(FatNodeReport {
            depth: node.depth,
            members: node.members.len(),
            across: node.across.len(),
            centers: fat.components.iter().map(|c| c.centers.all().len()).sum(),
            edges: distinct.len(),
        });
        dropped += fat.dropped;
        for (u, v, label) in fat.edges {
            builder.add(u, v, label);
        }
    }
    Ok(FatConvexRun { spanner: builder.build(3), tree: (*nodes[0]).clone(), nodes: reports, alpha, dropped })
}

/// Structural checks of one node's center construction.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct NodeAudit {
    /// Across bodies meeting no center in the slab.
    pub uncovered: usize,
    /// `k` with `c'_k` missing `c_k`.
    pub nonadjacent_primes: usize,
    /// Across bodies meeting more than three members of `C` or of `C'`.
    pub crowded: usize,
    /// Same-parity pairs of `C` or `C'` meeting in the slab.
    pub parity_clashes: usize,
    /// Across bodies whose slab part has inscribed diameter below `h / (8α)`.
    pub thin: usize,
    /// Across pairs meeting in the slab but more than three hops apart in the center stars.
    pub far_pairs: usize,
}

impl NodeAudit {
    pub fn ok(&self) -> bool {
        *self == Self::default()
    }

    fn add(&mut self, o: &Self) {
        self.uncovered += o.uncovered;
        self.nonadjacent_primes += o.nonadjacent_primes;
        self.crowded += o.crowded;
        self.parity_clashes += o.parity_clashes;
        self.thin += o.thin;
        self.far_pairs += o.far_pairs;
    }
}

fn audit_component(comp: &Component) -> NodeAudit {
    let mut a = NodeAudit::default();
    let meets = |i: usize, j: usize| i == j || comp.nbrs[i].binary_search(&j).is_ok();
    let (c, cp) = (&comp.centers.c, &comp.centers.c_prime);
    let all = comp.centers.all();
    let m = comp.order.len();
    for r in 0..m {
        if !all.iter().any(|&x| meets(r, x)) {
            a.uncovered += 1;
        }
        if c.iter().filter(|&&x| meets(r, x)).count() > 3 || cp.iter().filter(|&&x| meets(r, x)).count() > 3 {
            a.crowded += 1;
        }
    }
    a.nonadjacent_primes = cp.iter().zip(c).filter(|&(&x, &y)| !meets(x, y)).count();
    for set in [c, cp] {
        for i in 0..set.len() {
            for j in (i + 2..set.len()).step_by(2) {
                if meets(set[i], set[j]) {
                    a.parity_clashes += 1;
                }
            }
        }
    }
    // Hop distances inside the center stars.
    let mut adj = vec![Vec::new(); m];
    for &x in &all {
        for &y in &comp.nbrs[x] {
            adj[x].push(y);
            adj[y].push(x);
        }
    }
    for src in 0..m {
        let mut dist = vec![usize::MAX; m];
        dist[src] = 0;
        let mut queue = VecDeque::from([src]);
        while let Some(u) = queue.pop_front() {
            if dist[u] == 3 {
                continue;
            }
            for &w in &adj[u] {
                if dist[w] == usize::MAX {
                    dist[w] = dist[u] + 1;
                    queue.push_back(w);
                }
            }
        }
        a.far_pairs += comp.nbrs[src].iter().filter(|&&j| j > src && dist[j] == usize::MAX).count();
    }
    a
}

/// Audits every node of a run, recomputing the node constructions.
pub fn audit_fat_run(run: &FatConvexRun, bodies: &[ConvexPolygon]) -> NodeAudit {
    let boxes: Vec<AxisRect> = bodies.iter().map(ConvexPolygon::bbox).collect();
    let ctx = Ctx { bodies, boxes: &boxes };
    let nodes = run.tree.nodes();
    let audits = par::map(&nodes, |node| {
        let fat = fat_node(node, &ctx);
        let mut a = NodeAudit::default();
        for comp in &fat.components {
            a.add(&audit_component(comp));
        }
        // Slabs can be arbitrarily thin; below the tolerance the check is vacuous.
        let floor = (node.t - node.b) / (8.0 * run.alpha) - 1e-9 * (1.0 + node.b.abs().max(node.t.abs()));
        for &s in &node.across {
            let ok = floor <= 0.0 || clip_to_slab(&bodies[s], node.b, node.t).is_some_and(|p| 2.0 * max_inscribed_circle(&p).1 >= floor);
            if !ok {
                a.thin += 1;
            }
        }
        a
    });
    let mut total = NodeAudit::default();
    audits.iter().for_each(|a| total.add(a));
    total
}

/// Rank triples `l ≤ m ≤ r` with `l`, `r` meeting but `m` meeting neither.
pub fn betweenness_violations(comp: &Component) -> usize {
    let meets = |i: usize, j: usize| i == j || comp.nbrs[i].binary_search(&j).is_ok();
    let n = comp.order.len();
    let mut bad = 0;
    for l in 0..n {
        for &r in comp.nbrs[l].iter().filter(|&&r| r > l) {
            bad += (l + 1..r).filter(|&m| !meets(m, l) && !meets(m, r)).count();
        }
    }
    bad
}
