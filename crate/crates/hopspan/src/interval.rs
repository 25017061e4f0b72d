//! Two-hop spanners for interval graphs and for rectangles stabbed by a
//! common axis-parallel line.
//!
//! The union of the segments is cut greedily into half-open intervals
//! `(p_{k-1}, p_k]`, each contained in a covering segment `c_k`; a star from
//! `c_k` to every segment meeting the interval gives at most `2n` edges.

use std::ops::Range;

use crate::error::{Error, Result};
use crate::geom::AxisRect;
use crate::graph::{Spanner, SpannerBuilder};

/// Greedy partition of one connected component of the union of segments.
#[derive(Clone, Debug, PartialEq)]
pub struct IntervalPartition {
    /// `p_0 ≤ p_1 < … < p_m`; `p_0 = p_1` only for a single-point component.
    pub breakpoints: Vec<f64>,
    /// `covers[k - 1]` is the segment index covering `I_k`.
    pub covers: Vec<usize>,
    /// Segment indices of the component, sorted.
    pub members: Vec<usize>,
}

impl IntervalPartition {
    pub fn len(&self) -> usize {
        self.covers.len()
    }

    pub fn is_empty(&self) -> bool {
        self.covers.is_empty()
    }

    /// `(lo, hi)` of `I_k` for `k` in `1..=m`; `I_1` also holds `p_0`.
    pub fn interval(&self, k: usize) -> (f64, f64) {
        (self.breakpoints[k - 1], self.breakpoints[k])
    }

    /// Zero-based positions of the intervals met by the closed segment `[lo, hi]`.
    pub fn hits(&self, lo: f64, hi: f64) -> Range<usize> {
        let p = &self.breakpoints;
        let m = self.covers.len();
        let meets = |k: usize| if k == 0 { lo <= p[1] && p[0] <= hi } else { lo <= p[k + 1] && p[k] < hi };
        // Intervals before `start` end left of `lo`; the hit set is contiguous.
        let start = p[1..].partition_point(|&b| b < lo).min(m);
        let mut end = start;
        while end < m && meets(end) {
            end += 1;
        }
        start..end
    }
}

/// Connected components of the union, each with its greedy partition.
/// Ties for the rightmost endpoint go to the lowest segment index.
pub fn greedy_partition(segments: &[(f64, f64)]) -> Vec<IntervalPartition> {
    let mut order: Vec<usize> = (0..segments.len()).collect();
    order.sort_by(|&a, &b| segments[a].0.total_cmp(&segments[b].0).then(a.cmp(&b)));
    let mut parts = Vec::new();
    let mut i = 0;
    while i < order.len() {
        let p0 = segments[order[i]].0;
        let mut breakpoints = vec![p0];
        let mut covers = Vec::new();
        let mut members = Vec::new();
        // Best (hi, index) among segments with lo ≤ current breakpoint.
        let mut best: Option<(f64, usize)> = None;
        let mut cur = p0;
        loop {
            while i < order.len() && segments[order[i]].0 <= cur {
                let s = order[i];
                members.push(s);
                let hi = segments[s].1;
                if best.is_none_or(|(bh, bi)| hi > bh || (hi == bh && s < bi)) {
                    best = Some((hi, s));
                }
                i += 1;
            }
            let (hi, s) = best.expect("component has a segment");
            if hi > cur || covers.is_empty() {
                breakpoints.push(hi);
                covers.push(s);
            }
            if hi > cur {
                cur = hi;
            } else {
                break;
            }
        }
        members.sort_unstable();
        parts.push(IntervalPartition { breakpoints, covers, members });
    }
    parts
}

/// Star edges `(c_k, s)` for every segment `s ≠ c_k` meeting `I_k`.
pub fn interval_star_edges(segments: &[(f64, f64)]) -> Vec<(usize, usize)> {
    let mut edges = Vec::new();
    for part in greedy_partition(segments) {
        for &s in &part.members {
            let (lo, hi) = segments[s];
            for k in part.hits(lo, hi) {
                let c = part.covers[k];
                if c != s {
                    edges.push((c, s));
                }
            }
        }
    }
    edges.sort_unstable();
    edges.dedup();
    edges
}

pub fn interval_2hop(segments: &[(f64, f64)]) -> Spanner {
    let mut b = SpannerBuilder::new(segments.len());
    b.extend(interval_star_edges(segments), "interval-star");
    b.build(2)
}

/// An axis-parallel stabbing line.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Line {
    Horizontal(f64),
    Vertical(f64),
}

impl Line {
    /// Intersection of `r` with the line as an interval along it.
    pub fn section(&self, r: &AxisRect) -> Option<(f64, f64)> {
        match *self {
            Line::Horizontal(y) => (r.y_lo <= y && y <= r.y_hi).then_some((r.x_lo, r.x_hi)),
            Line::Vertical(x) => (r.x_lo <= x && x <= r.x_hi).then_some((r.y_lo, r.y_hi)),
        }
    }
}

/// Star edges for rectangles that all meet `line`, via their sections.
pub fn line_restricted_edges(rects: &[AxisRect], line: Line) -> Result<Vec<(usize, usize)>> {
    let segs = rects
        .iter()
        .enumerate()
        .map(|(i, r)| line.section(r).ok_or(Error::MissesLine(i)))
        .collect::<Result<Vec<_>>>()?;
    Ok(interval_star_edges(&segs))
}

/// Two line-stabbed rectangles meet iff their sections on the line overlap,
/// so the interval spanner of the sections lifts directly.
pub fn line_restricted_2hop(rects: &[AxisRect], line: Line) -> Result<Spanner> {
    let mut b = SpannerBuilder::new(rects.len());
    b.extend(line_restricted_edges(rects, line)?, "line-star");
    Ok(b.build(2))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geom::GeomObject;
    use crate::graph::{build_intersection_graph, verify_hop_spanner};
    use proptest::prelude::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn single_segment() {
        let p = greedy_partition(&[(0.0, 1.0)]);
        assert_eq!(p.len(), 1);
        assert_eq!(p[0].breakpoints, vec![0.0, 1.0]);
        assert_eq!(p[0].covers, vec![0]);
    }

    #[test]
    fn three_segment_chain() {
        let segs = [(0.0, 2.0), (1.0, 4.0), (3.0, 5.0)];
        let p = greedy_partition(&segs);
        assert_eq!(p.len(), 1);
        assert_eq!(p[0].breakpoints, vec![0.0, 2.0, 4.0, 5.0]);
        assert_eq!(p[0].covers, vec![0, 1, 2]);
        let s = interval_2hop(&segs);
        assert_eq!(s.edges, vec![[0, 1], [1, 2]]);
    }

    #[test]
    fn disconnected_segments() {
        let p = greedy_partition(&[(0.0, 1.0), (2.0, 3.0)]);
        assert_eq!(p.len(), 2);
        assert!(p.iter().all(|c| c.len() == 1));
        let disjoint: Vec<_> = (0..10).map(|i| (i as f64, i as f64 + 0.5)).collect();
        assert_eq!(interval_2hop(&disjoint).edge_count(), 0);
    }

    #[test]
    fn common_point_gives_one_star() {
        let segs: Vec<_> = (0..7).map(|i| (0.5 - i as f64 * 0.1, 0.5 + i as f64 * 0.07)).collect();
        assert_eq!(interval_2hop(&segs).edge_count(), 6);
    }

    #[test]
    fn coincident_points_are_joined() {
        let s = interval_2hop(&[(3.0, 3.0), (3.0, 3.0), (3.0, 3.0)]);
        assert_eq!(s.edge_count(), 2);
    }

    #[test]
    fn line_restricted_examples() {
        let r = |x0, x1| AxisRect::new(x0, x1, -1.0, 1.0).unwrap();
        let two = line_restricted_2hop(&[r(0.0, 2.0), r(1.0, 3.0)], Line::Horizontal(0.0)).unwrap();
        assert_eq!(two.edge_count(), 1);
        let chain = [r(0.0, 2.0), r(1.0, 4.0), r(3.0, 5.0)];
        assert_eq!(line_restricted_2hop(&chain, Line::Horizontal(0.5)).unwrap().edges, vec![[0, 1], [1, 2]]);
        let apart: Vec<_> = (0..5).map(|i| r(2.0 * i as f64, 2.0 * i as f64 + 1.0)).collect();
        assert_eq!(line_restricted_2hop(&apart, Line::Horizontal(0.0)).unwrap().edge_count(), 0);
        assert!(matches!(line_restricted_2hop(&chain, Line::Horizontal(2.0)), Err(Error::MissesLine(0))));
        let vert = [AxisRect::new(-1.0, 1.0, 0.0, 2.0).unwrap(), AxisRect::new(0.0, 3.0, 1.0, 3.0).unwrap()];
        assert_eq!(line_restricted_2hop(&vert, Line::Vertical(0.5)).unwrap().edge_count(), 1);
    }

    pub(crate) fn random_segments(rng: &mut ChaCha8Rng, n: usize) -> Vec<(f64, f64)> {
        let span = (n as f64).max(1.0);
        (0..n)
            .map(|_| {
                let lo = rng.gen_range(0.0..span);
                // Occasional repeated endpoints exercise the tie rules.
                let lo = if rng.gen_bool(0.1) { lo.floor() } else { lo };
                let len = if rng.gen_bool(0.05) { 0.0 } else { rng.gen_range(0.0..4.0) };
                (lo, (lo + len).min(span + 4.0))
            })
            .collect()
    }

    fn check_partition(segs: &[(f64, f64)]) {
        let parts = greedy_partition(segs);
        for part in &parts {
            for (k, &c) in part.covers.iter().enumerate() {
                let (lo, hi) = part.interval(k + 1);
                assert!(segs[c].0 <= lo && hi <= segs[c].1, "I_k inside c_k");
            }
            for &s in &part.members {
                let h = part.hits(segs[s].0, segs[s].1);
                assert!(h.len() <= 2, "segment meets {} intervals", h.len());
                assert!(!h.is_empty(), "segment meets some interval");
                // Brute-force agreement with the half-open definition.
                for k in 0..part.len() {
                    let (a, b) = part.interval(k + 1);
                    let meets = segs[s].0 <= b && if k == 0 { a <= segs[s].1 } else { a < segs[s].1 };
                    assert_eq!(h.contains(&k), meets);
                }
            }
        }
        // Property 3: intersecting segments share an interval.
        for i in 0..segs.len() {
            for j in i + 1..segs.len() {
                let (a, b) = (segs[i], segs[j]);
                if a.0 <= b.1 && b.0 <= a.1 {
                    let (lo, hi) = (a.0.max(b.0), a.1.min(b.1));
                    let part = parts.iter().find(|p| p.members.contains(&i)).unwrap();
                    assert!(!part.hits(lo, hi).is_empty());
                }
            }
        }
    }

    #[test]
    fn partition_lemma_properties() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for n in [1usize, 2, 5, 20, 80, 200] {
            for _ in 0..5 {
                check_partition(&random_segments(&mut rng, n));
            }
        }
    }

    #[test]
    fn random_instances_verify() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for trial in 0..50 {
            let n = 1 + trial * 8;
            let segs = random_segments(&mut rng, n);
            let s = interval_2hop(&segs);
            assert!(s.edge_count() <= 2 * n);
            let objs: Vec<_> = segs.iter().map(|&(lo, hi)| GeomObject::Interval { lo, hi }).collect();
            let g = build_intersection_graph(&objs).unwrap();
            assert!(verify_hop_spanner(&g, &s, 2).unwrap().valid, "trial {trial}");
        }
    }

    proptest! {
        #[test]
        fn at_most_two_n_edges(segs in prop::collection::vec((-50.0f64..50.0, 0.0f64..10.0), 0..300)) {
            let segs: Vec<_> = segs.into_iter().map(|(lo, l)| (lo, lo + l)).collect();
            prop_assert!(interval_2hop(&segs).edge_count() <= 2 * segs.len());
        }
    }
}
