//! Recursive horizontal slab partition.
//!
//! Each node owns a slab `b ≤ y ≤ t` and the objects `S(P)` meeting it that
//! were not already across an ancestor. A node splits at the lower median of
//! the representative points lying strictly inside the slab; a node with no
//! such point is a leaf.

use std::collections::HashSet;

use serde::{Deserialize, Serialize};

use crate::geom::{AxisRect, Point2};

/// A representative point of an intersecting pair.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Rep {
    pub pair: (usize, usize),
    pub point: Point2,
}

#[derive(Clone, Debug, PartialEq)]
pub struct SlabNode {
    pub b: f64,
    pub t: f64,
    pub depth: usize,
    /// `S(P)`, ascending.
    pub members: Vec<usize>,
    pub split: Option<f64>,
    pub children: Option<Box<(SlabNode, SlabNode)>>,
    pub inside: Vec<usize>,
    pub bottom: Vec<usize>,
    pub top: Vec<usize>,
    pub across: Vec<usize>,
}

/// The four classes of `members` relative to the slab `[b, t]`.
pub fn classify(boxes: &[AxisRect], members: &[usize], b: f64, t: f64) -> [Vec<usize>; 4] {
    let (mut inside, mut bottom, mut top, mut across) = (Vec::new(), Vec::new(), Vec::new(), Vec::new());
    for &s in members {
        let r = &boxes[s];
        let on_b = r.y_lo <= b && b <= r.y_hi;
        let on_t = r.y_lo <= t && t <= r.y_hi;
        if on_b {
            bottom.push(s);
        }
        if on_t {
            top.push(s);
        }
        if on_b && on_t {
            across.push(s);
        }
        if b < r.y_lo && r.y_hi < t {
            inside.push(s);
        }
    }
    [inside, bottom, top, across]
}

impl SlabNode {
    pub fn is_leaf(&self) -> bool {
        self.children.is_none()
    }

    /// All nodes in preorder.
    pub fn nodes(&self) -> Vec<&SlabNode> {
        let mut out = Vec::new();
        let mut stack = vec![self];
        while let Some(n) = stack.pop() {
            out.push(n);
            if let Some(c) = &n.children {
                stack.push(&c.1);
                stack.push(&c.0);
            }
        }
        out
    }

    pub fn height(&self) -> usize {
        self.nodes().iter().map(|n| n.depth).max().unwrap_or(0)
    }

    /// `Σ_P |S(P)|`.
    pub fn total_membership(&self) -> usize {
        self.nodes().iter().map(|n| n.members.len()).sum()
    }

    pub fn bottom_only(&self) -> impl Iterator<Item = usize> + '_ {
        self.bottom.iter().copied().filter(|s| self.across.binary_search(s).is_err())
    }

    pub fn top_only(&self) -> impl Iterator<Item = usize> + '_ {
        self.top.iter().copied().filter(|s| self.across.binary_search(s).is_err())
    }
}

fn build(boxes: &[AxisRect], members: Vec<usize>, reps: Vec<Rep>, b: f64, t: f64, depth: usize) -> SlabNode {
    let [inside, bottom, top, across] = classify(boxes, &members, b, t);
    let mut live: Vec<Rep> = reps.into_iter().filter(|r| b < r.point.y && r.point.y < t).collect();
    let mut node = SlabNode { b, t, depth, members, split: None, children: None, inside, bottom, top, across };
    if live.is_empty() {
        return node;
    }
    live.sort_by(|x, y| x.point.y.total_cmp(&y.point.y));
    let c = live[(live.len() - 1) / 2].point.y;
    let across: HashSet<usize> = node.across.iter().copied().collect();
    let child = |lo: f64, hi: f64| -> Vec<usize> {
        node.members
            .iter()
            .copied()
            .filter(|s| !across.contains(s) && boxes[*s].y_lo <= hi && lo <= boxes[*s].y_hi)
            .collect()
    };
    let (lower, upper) = (child(b, c), child(c, t));
    let (lo_reps, hi_reps): (Vec<Rep>, Vec<Rep>) =
        live.into_iter().filter(|r| r.point.y != c).partition(|r| r.point.y < c);
    let left = build(boxes, lower, lo_reps, b, c, depth + 1);
    let right = build(boxes, upper, hi_reps, c, t, depth + 1);
    node.split = Some(c);
    node.children = Some(Box::new((left, right)));
    node
}

/// Slab tree over objects with bounding boxes `boxes` and pair representatives `reps`.
pub fn build_slab_tree(boxes: &[AxisRect], reps: &[Rep]) -> SlabNode {
    let lo = boxes.iter().map(|r| r.y_lo).fold(0.0, f64::min);
    let hi = boxes.iter().map(|r| r.y_hi).fold(0.0, f64::max);
    // The root lines stay clear of every object.
    let pad = 1.0 + (hi - lo);
    build(boxes, (0..boxes.len()).collect(), reps.to_vec(), lo - pad, hi + pad, 0)
}

/// Lowest-then-leftmost corner of each intersecting rectangle pair.
pub fn rect_reps(rects: &[AxisRect]) -> Vec<Rep> {
    let mut order: Vec<usize> = (0..rects.len()).collect();
    order.sort_by(|&a, &b| rects[a].x_lo.total_cmp(&rects[b].x_lo));
    let mut reps = Vec::new();
    for (k, &i) in order.iter().enumerate() {
        for &j in &order[k + 1..] {
            if rects[j].x_lo > rects[i].x_hi {
                break;
            }
            if let Some(x) = rects[i].intersection(&rects[j]) {
                reps.push(Rep { pair: (i.min(j), i.max(j)), point: Point2::new(x.x_lo, x.y_lo) });
            }
        }
    }
    reps.sort_by_key(|r| r.pair);
    reps
}

pub fn build_rect_slab_tree(rects: &[AxisRect]) -> SlabNode {
    build_slab_tree(rects, &rect_reps(rects))
}

/// Per-level membership counts over the whole tree.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct LevelAudit {
    pub levels: usize,
    /// `(object, level, class)` triples exceeding their per-level allowance.
    pub violations: Vec<(usize, usize, String)>,
    pub total_membership: usize,
}

impl LevelAudit {
    pub fn ok(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Per object and level: at most one node with it inside, one bottom-only,
/// one top-only and two across.
pub fn audit_levels(root: &SlabNode, n: usize) -> LevelAudit {
    let levels = root.height() + 1;
    let mut counts = vec![[0usize; 4]; n * levels];
    for node in root.nodes() {
        let row = node.depth * n;
        for &s in &node.inside {
            counts[row + s][0] += 1;
        }
        for s in node.bottom_only() {
            counts[row + s][1] += 1;
        }
        for s in node.top_only() {
            counts[row + s][2] += 1;
        }
        for &s in &node.across {
            counts[row + s][3] += 1;
        }
    }
    let limits = [(1, "inside"), (1, "bottom"), (1, "top"), (2, "across")];
    let mut violations = Vec::new();
    for (idx, c) in counts.iter().enumerate() {
        for (k, &(limit, name)) in limits.iter().enumerate() {
            if c[k] > limit {
                violations.push((idx % n, idx / n, name.to_string()));
            }
        }
    }
    LevelAudit { levels, violations, total_membership: root.total_membership() }
}
