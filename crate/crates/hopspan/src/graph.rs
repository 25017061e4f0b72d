//! Intersection graphs, hop spanners, the truncated-BFS verifier and the
//! greedy baseline.

use std::collections::BTreeMap;
use std::collections::VecDeque;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geom::{intersects, GeomObject};
use crate::par;

/// Simple undirected graph over object indices.
#[derive(Clone, Debug)]
pub struct IntersectionGraph {
    pub n: usize,
    /// Geometric payload; empty for abstract graphs.
    pub objects: Vec<GeomObject>,
    adjacency: Vec<Vec<usize>>,
}

impl IntersectionGraph {
    /// Graph from an explicit edge list (duplicates and loops dropped).
    pub fn from_edges(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Self {
        let mut adjacency = vec![Vec::new(); n];
        for (u, v) in edges {
            assert!(u < n && v < n, "edge ({u}, {v}) out of range for n = {n}");
            if u != v {
                adjacency[u].push(v);
                adjacency[v].push(u);
            }
        }
        for a in &mut adjacency {
            a.sort_unstable();
            a.dedup();
        }
        Self { n, objects: Vec::new(), adjacency }
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adjacency[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adjacency[v].len()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n && self.adjacency[u].binary_search(&v).is_ok()
    }

    pub fn edge_count(&self) -> usize {
        self.adjacency.iter().map(Vec::len).sum::<usize>() / 2
    }

    /// Edges `(u, v)` with `u < v` in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adjacency
            .iter()
            .enumerate()
            .flat_map(|(u, a)| a.iter().filter(move |&&v| v > u).map(move |&v| (u, v)))
    }

    pub fn to_json(&self) -> GraphJson {
        GraphJson { n: self.n, edges: self.edges().map(|(u, v)| [u, v]).collect() }
    }
}

/// Serialized graph: `{n, edges}`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GraphJson {
    pub n: usize,
    pub edges: Vec<[usize; 2]>,
}

/// Exact intersection graph by all-pairs predicate evaluation.
pub fn build_intersection_graph(objects: &[GeomObject]) -> Result<IntersectionGraph> {
    let n = objects.len();
    // Surface unsupported kind combinations even when no candidate pair would reach them.
    let mut firsts: Vec<&GeomObject> = Vec::new();
    for o in objects {
        if firsts.iter().all(|f| f.kind() != o.kind()) {
            firsts.push(o);
        }
    }
    for (i, a) in firsts.iter().enumerate() {
        for b in &firsts[i + 1..] {
            intersects(a, b)?;
        }
    }
    let spans: Vec<(f64, f64)> = objects.iter().map(x_span).collect();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| spans[a].0.total_cmp(&spans[b].0).then(a.cmp(&b)));
    // Candidates come from a sweep over padded x-extents; the predicate decides.
    let rows: Vec<Result<Vec<(usize, usize)>>> = par::map_range(n, |k| {
        let u = order[k];
        let reach = spans[u].1 + 1e-9 * (1.0 + spans[u].1.abs());
        let mut row = Vec::new();
        for &v in order[k + 1..].iter().take_while(|&&v| spans[v].0 <= reach) {
            if intersects(&objects[u], &objects[v])? {
                row.push((u.min(v), u.max(v)));
            }
        }
        Ok(row)
    });
    let mut edges = Vec::new();
    for row in rows {
        edges.extend(row?);
    }
    let mut g = IntersectionGraph::from_edges(n, edges);
    g.objects = objects.to_vec();
    Ok(g)
}

/// All-pairs predicate evaluation without any filtering.
pub fn brute_force_graph(objects: &[GeomObject]) -> Result<IntersectionGraph> {
    let n = objects.len();
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if intersects(&objects[u], &objects[v])? {
                edges.push((u, v));
            }
        }
    }
    let mut g = IntersectionGraph::from_edges(n, edges);
    g.objects = objects.to_vec();
    Ok(g)
}

/// Closed x-extent; a unit-disk center stands for the disk of radius `1/2`.
fn x_span(o: &GeomObject) -> (f64, f64) {
    match o {
        GeomObject::Interval { lo, hi } => (*lo, *hi),
        GeomObject::UnitDiskCenter(p) => (p.x - 0.5, p.x + 0.5),
        GeomObject::Rect(r) => (r.x_lo, r.x_hi),
        GeomObject::Polygon(p) => {
            let b = p.bbox();
            (b.x_lo, b.x_hi)
        }
        GeomObject::Translate { body, offset, .. } => {
            let b = body.bbox();
            (b.x_lo + offset.x, b.x_hi + offset.x)
        }
    }
}

/// A subgraph with a claimed hop bound and a provenance label per edge.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Spanner {
    pub n: usize,
    /// Edges `(u, v)` with `u < v`, sorted, distinct.
    pub edges: Vec<[usize; 2]>,
    pub t: usize,
    /// Which construction step emitted each edge.
    pub provenance: Vec<String>,
}

impl Spanner {
    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Number of edges per provenance label.
    pub fn provenance_counts(&self) -> BTreeMap<String, usize> {
        let mut m = BTreeMap::new();
        for p in &self.provenance {
            *m.entry(p.clone()).or_insert(0) += 1;
        }
        m
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string(self)?)
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let sp: Spanner = serde_json::from_str(s)?;
        if sp.provenance.len() != sp.edges.len() {
            return Err(Error::Invalid("provenance length differs from edge count".into()));
        }
        Ok(sp)
    }

    /// Adjacency lists of the spanner.
    pub fn adjacency(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.n];
        for &[u, v] in &self.edges {
            adj[u].push(v);
            adj[v].push(u);
        }
        adj
    }
}

/// Accumulates labelled edges; the first label of a repeated edge wins.
#[derive(Clone, Debug, Default)]
pub struct SpannerBuilder {
    n: usize,
    edges: BTreeMap<(usize, usize), String>,
}

impl SpannerBuilder {
    pub fn new(n: usize) -> Self {
        Self { n, edges: BTreeMap::new() }
    }

    /// Adds `uv`; loops are ignored. Returns whether the edge was new.
    pub fn add(&mut self, u: usize, v: usize, label: &str) -> bool {
        assert!(u < self.n && v < self.n, "edge ({u}, {v}) out of range");
        if u == v {
            return false;
        }
        let key = (u.min(v), u.max(v));
        if self.edges.contains_key(&key) {
            return false;
        }
        self.edges.insert(key, label.to_string());
        true
    }

    pub fn extend(&mut self, edges: impl IntoIterator<Item = (usize, usize)>, label: &str) {
        for (u, v) in edges {
            self.add(u, v, label);
        }
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn build(self, t: usize) -> Spanner {
        let (edges, provenance) = self.edges.into_iter().map(|((u, v), l)| ([u, v], l)).unzip();
        Spanner { n: self.n, edges, t, provenance }
    }
}

/// Outcome of a hop-stretch check.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub valid: bool,
    pub violating_edges: Vec<(usize, usize)>,
    /// Largest `d_H(u, v)` over edges `uv` of the host graph; `usize::MAX`
    /// when some edge has no path at all.
    pub max_observed_stretch: usize,
}

/// Hop distances from `src` up to `depth`; `dist` must be all `usize::MAX`
/// on entry and is restored before returning the visited list.
fn truncated_bfs(adj: &[Vec<usize>], src: usize, depth: usize, dist: &mut [usize], seen: &mut Vec<usize>) {
    let mut queue = VecDeque::new();
    dist[src] = 0;
    seen.push(src);
    queue.push_back(src);
    while let Some(u) = queue.pop_front() {
        if dist[u] == depth {
            continue;
        }
        for &w in &adj[u] {
            if dist[w] == usize::MAX {
                dist[w] = dist[u] + 1;
                seen.push(w);
                queue.push_back(w);
            }
        }
    }
}

fn hop_distance(adj: &[Vec<usize>], u: usize, v: usize, limit: usize) -> Option<usize> {
    let mut dist = vec![usize::MAX; adj.len()];
    let mut seen = Vec::new();
    truncated_bfs(adj, u, limit, &mut dist, &mut seen);
    (dist[v] != usize::MAX).then_some(dist[v])
}

/// Checks `d_H(u, v) ≤ t` for every edge `uv` of `g` by breadth-first search
/// in `h` truncated at depth `t`.
pub fn verify_hop_spanner(g: &IntersectionGraph, h: &Spanner, t: usize) -> Result<VerificationReport> {
    if h.n != g.n {
        return Err(Error::VertexCountMismatch { spanner: h.n, graph: g.n });
    }
    for &[u, v] in &h.edges {
        if !g.has_edge(u, v) {
            return Err(Error::NotSubgraph(u, v));
        }
    }
    let adj = h.adjacency();
    let per_vertex: Vec<(Vec<(usize, usize)>, usize)> = par::map_range_with(
        g.n,
        || (vec![usize::MAX; g.n], Vec::new()),
        |(dist, seen), u| {
            let mut bad = Vec::new();
            let mut worst = 0;
            truncated_bfs(&adj, u, t, dist, seen);
            for &v in g.neighbors(u).iter().filter(|&&v| v > u) {
                if dist[v] == usize::MAX {
                    bad.push((u, v));
                } else {
                    worst = worst.max(dist[v]);
                }
            }
            for &w in seen.iter() {
                dist[w] = usize::MAX;
            }
            seen.clear();
            (bad, worst)
        },
    );
    let mut violating = Vec::new();
    let mut max_stretch = 0;
    for (bad, worst) in per_vertex {
        max_stretch = max_stretch.max(worst);
        violating.extend(bad);
    }
    for &(u, v) in &violating {
        let d = hop_distance(&adj, u, v, g.n).unwrap_or(usize::MAX);
        max_stretch = max_stretch.max(d);
    }
    Ok(VerificationReport { valid: violating.is_empty(), violating_edges: violating, max_observed_stretch: max_stretch })
}

/// Scans edges lexicographically and keeps `uv` iff the current spanner has
/// no `uv`-path of at most `t` hops.
pub fn greedy_spanner(g: &IntersectionGraph, t: usize) -> Spanner {
    assert!(t >= 1, "hop bound must be at least 1");
    let mut adj: Vec<Vec<usize>> = vec![Vec::new(); g.n];
    let mut b = SpannerBuilder::new(g.n);
    let mut dist = vec![usize::MAX; g.n];
    let mut seen = Vec::new();
    for (u, v) in g.edges() {
        truncated_bfs(&adj, u, t, &mut dist, &mut seen);
        let reachable = dist[v] != usize::MAX;
        for &w in &seen {
            dist[w] = usize::MAX;
        }
        seen.clear();
        if !reachable {
            adj[u].push(v);
            adj[v].push(u);
            b.add(u, v, "greedy");
        }
    }
    b.build(t)
}

/// The host graph itself viewed as a 1-hop spanner.
pub fn identity_spanner(g: &IntersectionGraph) -> Spanner {
    let mut b = SpannerBuilder::new(g.n);
    b.extend(g.edges(), "identity");
    b.build(1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geom::{AxisRect, Point2};
    use proptest::prelude::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn spanner(n: usize, t: usize, edges: &[(usize, usize)]) -> Spanner {
        let mut b = SpannerBuilder::new(n);
        b.extend(edges.iter().copied(), "test");
        b.build(t)
    }

    #[test]
    fn disk_graph_example() {
        let objs: Vec<_> = [(0.0, 0.0), (0.5, 0.0), (1.2, 0.0)]
            .iter()
            .map(|&(x, y)| GeomObject::UnitDiskCenter(Point2::new(x, y)))
            .collect();
        let g = build_intersection_graph(&objs).unwrap();
        assert_eq!(g.edges().collect::<Vec<_>>(), vec![(0, 1), (1, 2)]);
        let one = build_intersection_graph(&objs[..1]).unwrap();
        assert_eq!(one.edge_count(), 0);
    }

    /// Independent sweep over x-sorted rectangles.
    fn sweep_edges(rects: &[AxisRect]) -> Vec<(usize, usize)> {
        let mut order: Vec<usize> = (0..rects.len()).collect();
        order.sort_by(|&a, &b| rects[a].x_lo.total_cmp(&rects[b].x_lo));
        let mut active: Vec<usize> = Vec::new();
        let mut out = Vec::new();
        for &i in &order {
            active.retain(|&j| rects[j].x_hi >= rects[i].x_lo);
            for &j in &active {
                if rects[i].y_lo <= rects[j].y_hi && rects[j].y_lo <= rects[i].y_hi {
                    out.push((i.min(j), i.max(j)));
                }
            }
            active.push(i);
        }
        out.sort_unstable();
        out
    }

    #[test]
    fn random_rectangles_match_sweep() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let rects: Vec<AxisRect> = (0..100)
            .map(|_| {
                let (x, y) = (rng.gen_range(0.0..10.0), rng.gen_range(0.0..10.0));
                AxisRect::new(x, x + rng.gen_range(0.0..2.0), y, y + rng.gen_range(0.0..2.0)).unwrap()
            })
            .collect();
        let objs: Vec<_> = rects.iter().map(|&r| GeomObject::Rect(r)).collect();
        let g = build_intersection_graph(&objs).unwrap();
        assert_eq!(g.edges().collect::<Vec<_>>(), sweep_edges(&rects));
    }

    #[test]
    fn triangle_path_is_two_hop() {
        let g = IntersectionGraph::from_edges(3, [(0, 1), (1, 2), (0, 2)]);
        let r = verify_hop_spanner(&g, &spanner(3, 2, &[(0, 1), (1, 2)]), 2).unwrap();
        assert!(r.valid);
        assert_eq!(r.max_observed_stretch, 2);
    }

    #[test]
    fn k22_single_star_fails() {
        // A = {0, 1}, B = {2, 3}.
        let g = IntersectionGraph::from_edges(4, [(0, 2), (0, 3), (1, 2), (1, 3)]);
        let r = verify_hop_spanner(&g, &spanner(4, 2, &[(0, 2), (0, 3)]), 2).unwrap();
        assert!(!r.valid);
        assert_eq!(r.violating_edges.len(), 2);
        let bistar = spanner(4, 3, &[(0, 2), (0, 3), (1, 2)]);
        assert!(verify_hop_spanner(&g, &bistar, 3).unwrap().valid);
    }

    #[test]
    fn k22_star_has_one_uncovered_vertex() {
        // The non-center A-vertex has no spanner neighbours, so both of its
        // host edges are violations; counted per vertex that is one.
        let g = IntersectionGraph::from_edges(4, [(0, 2), (0, 3), (1, 2), (1, 3)]);
        let r = verify_hop_spanner(&g, &spanner(4, 2, &[(0, 2), (0, 3)]), 2).unwrap();
        let stranded: std::collections::BTreeSet<usize> =
            r.violating_edges.iter().map(|&(u, _)| u).collect();
        assert_eq!(stranded.into_iter().collect::<Vec<_>>(), vec![1]);
        assert_eq!(r.max_observed_stretch, usize::MAX);
    }

    #[test]
    fn non_edge_is_rejected() {
        let g = IntersectionGraph::from_edges(3, [(0, 1)]);
        assert!(matches!(
            verify_hop_spanner(&g, &spanner(3, 2, &[(1, 2)]), 2),
            Err(Error::NotSubgraph(1, 2))
        ));
    }

    #[test]
    fn greedy_examples() {
        let c5 = IntersectionGraph::from_edges(5, (0..5).map(|i| (i, (i + 1) % 5)));
        assert_eq!(greedy_spanner(&c5, 3).edge_count(), 5);
        let k4 = IntersectionGraph::from_edges(4, [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]);
        let s = greedy_spanner(&k4, 2);
        assert_eq!(s.edges, vec![[0, 1], [0, 2], [0, 3]]);
        assert_eq!(greedy_spanner(&k4, 1).edge_count(), 6);
    }

    #[test]
    fn json_round_trip_is_exact() {
        let s = spanner(5, 2, &[(0, 4), (1, 2)]);
        let text = s.to_json().unwrap();
        assert_eq!(Spanner::from_json(&text).unwrap(), s);
        assert_eq!(Spanner::from_json(&text).unwrap().to_json().unwrap(), text);
    }

    fn random_graph(n: usize, p: f64, seed: u64) -> IntersectionGraph {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut edges = Vec::new();
        for u in 0..n {
            for v in u + 1..n {
                if rng.gen_bool(p) {
                    edges.push((u, v));
                }
            }
        }
        IntersectionGraph::from_edges(n, edges)
    }

    #[test]
    fn greedy_always_verifies() {
        for trial in 0..200u64 {
            let n = 5 + (trial as usize % 40);
            let g = random_graph(n, 0.05 + (trial % 7) as f64 * 0.1, trial);
            for t in 1..=3 {
                let h = greedy_spanner(&g, t);
                assert!(verify_hop_spanner(&g, &h, t).unwrap().valid, "trial {trial} t {t}");
            }
        }
    }

    #[test]
    fn greedy_three_hop_is_subquadratic() {
        for (i, n) in [50usize, 100, 200].into_iter().enumerate() {
            let g = random_graph(n, 0.5, 100 + i as u64);
            let e = greedy_spanner(&g, 3).edge_count() as f64;
            assert!(e <= 2.0 * (n as f64).powf(1.5), "n = {n}: {e} edges");
        }
    }

    proptest! {
        #[test]
        fn host_graph_is_its_own_one_hop_spanner(n in 1usize..30, p in 0.0f64..1.0, seed in 0u64..1000) {
            let g = random_graph(n, p, seed);
            prop_assert!(verify_hop_spanner(&g, &identity_spanner(&g), 1).unwrap().valid);
        }
    }
}
