//! Visibility graph of a polygonal domain.
//!
//! Two independent routes decide whether vertices `a` and `b` see each other:
//!
//! * [`visible`] checks that `ab` crosses no boundary edge, passes through no
//!   other vertex, and that its midpoint lies in the region.
//! * [`build_visibility_graph`] replaces the midpoint test with local sector
//!   tests at both endpoints, using exact orientation predicates.
//!
//! The harness compares the two on small instances.

use rayon::prelude::*;

use crate::domain::{PolygonalDomain, VertexLabel};
use crate::geometry::{on_open_segment, orient, segments_properly_cross, Orientation, Point};
use crate::scalar::Scalar;

#[derive(Debug, Clone, PartialEq)]
pub struct VisibilityGraph<T> {
    labels: Vec<VertexLabel>,
    adjacency: Vec<Vec<(usize, T)>>,
    /// Pairs rejected only because the segment passes through a third vertex.
    pub grazing: Vec<(VertexLabel, VertexLabel)>,
}

impl<T: Scalar> VisibilityGraph<T> {
    pub fn n(&self) -> usize {
        self.adjacency.len()
    }

    /// Labels in dense-index order (boundary-major, so sorted).
    pub fn labels(&self) -> &[VertexLabel] {
        &self.labels
    }

    pub fn label_of(&self, v: usize) -> VertexLabel {
        self.labels[v]
    }

    pub fn index_of(&self, l: VertexLabel) -> Option<usize> {
        self.labels.binary_search(&l).ok()
    }

    /// Neighbors of dense vertex `v` with edge lengths, sorted by index.
    pub fn neighbors(&self, v: usize) -> &[(usize, T)] {
        &self.adjacency[v]
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        self.adjacency[a].binary_search_by_key(&b, |&(u, _)| u).is_ok()
    }

    pub fn edge_count(&self) -> usize {
        self.adjacency.iter().map(Vec::len).sum::<usize>() / 2
    }

    /// Builds a graph from an explicit neighbor relation.
    pub fn from_adjacency(labels: Vec<VertexLabel>, mut adjacency: Vec<Vec<(usize, T)>>) -> Self {
        for row in &mut adjacency {
            row.sort_by_key(|&(u, _)| u);
        }
        VisibilityGraph { labels, adjacency, grazing: Vec::new() }
    }
}

enum Segment {
    Clear,
    Blocked,
    Grazing,
}

/// Crossing and vertex-contact scan shared by both visibility routes.
fn scan_segment<T: Scalar>(d: &PolygonalDomain<T>, a: VertexLabel, b: VertexLabel) -> Segment {
    let (pa, pb) = (d.point(a), d.point(b));
    for (u, w) in d.edges() {
        if segments_properly_cross((pa, pb), (d.point(u), d.point(w))) {
            return Segment::Blocked;
        }
    }
    for l in d.labels() {
        if l != a && l != b && on_open_segment(d.point(l), pa, pb) {
            return Segment::Grazing;
        }
    }
    Segment::Clear
}

/// True iff `a` and `b` see each other: the segment `ab` lies in the closed
/// region `P`.
pub fn visible<T: Scalar>(d: &PolygonalDomain<T>, a: VertexLabel, b: VertexLabel) -> bool {
    if a == b {
        return false;
    }
    if d.is_boundary_edge(a, b) {
        return true;
    }
    match scan_segment(d, a, b) {
        Segment::Clear => d.contains_point(d.point(a).midpoint(d.point(b))),
        Segment::Blocked | Segment::Grazing => false,
    }
}

/// True iff the segment from `v` toward `target` starts into the open interior
/// sector at `v`.
fn leaves_into_interior<T: Scalar>(d: &PolygonalDomain<T>, v: VertexLabel, target: Point<T>) -> bool {
    let p = d.point(v);
    let before = d.point(d.prev(v));
    let after = d.point(d.next(v));
    let left_of_out = orient(p, after, target) == Orientation::CounterClockwise;
    let left_of_in = orient(before, p, target) == Orientation::CounterClockwise;
    if d.is_convex(v) {
        left_of_out && left_of_in
    } else {
        left_of_out || left_of_in
    }
}

pub fn build_visibility_graph<T: Scalar>(d: &PolygonalDomain<T>) -> VisibilityGraph<T> {
    let labels: Vec<VertexLabel> = d.labels().collect();
    let n = labels.len();

    let rows: Vec<(Vec<(usize, T)>, Vec<(VertexLabel, VertexLabel)>)> = (0..n)
        .into_par_iter()
        .map(|ia| {
            let a = labels[ia];
            let mut row = Vec::new();
            let mut grazing = Vec::new();
            for (ib, &b) in labels.iter().enumerate() {
                if ia == ib {
                    continue;
                }
                let seen = if d.is_boundary_edge(a, b) {
                    true
                } else if !leaves_into_interior(d, a, d.point(b)) || !leaves_into_interior(d, b, d.point(a)) {
                    false
                } else {
                    match scan_segment(d, a, b) {
                        Segment::Clear => true,
                        Segment::Blocked => false,
                        Segment::Grazing => {
                            if ia < ib {
                                grazing.push((a, b));
                            }
                            false
                        }
                    }
                };
                if seen {
                    row.push((ib, d.point(a).dist(d.point(b))));
                }
            }
            (row, grazing)
        })
        .collect();

    let mut adjacency = Vec::with_capacity(n);
    let mut grazing = Vec::new();
    for (row, g) in rows {
        adjacency.push(row);
        grazing.extend(g);
    }
    VisibilityGraph { labels, adjacency, grazing }
}

/// Per-pair oracle: the graph obtained by calling [`visible`] on every pair.
pub fn visibility_oracle<T: Scalar>(d: &PolygonalDomain<T>) -> VisibilityGraph<T> {
    let labels: Vec<VertexLabel> = d.labels().collect();
    let adjacency = labels
        .iter()
        .map(|&a| {
            labels
                .iter()
                .enumerate()
                .filter(|&(_, &b)| visible(d, a, b))
                .map(|(ib, &b)| (ib, d.point(a).dist(d.point(b))))
                .collect()
        })
        .collect();
    VisibilityGraph { labels, adjacency, grazing: Vec::new() }
}
