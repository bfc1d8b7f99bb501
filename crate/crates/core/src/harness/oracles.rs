//! Slow, independent reference computations used to cross-check the fast
//! paths.

use std::collections::BTreeMap;

use crate::cones::ConeFan;
use crate::domain::{PolygonalDomain, VertexLabel};
use crate::geometry::{segments_properly_cross, Point};
use crate::scalar::Scalar;
use crate::shortest_paths::ShortestPathTree;
use crate::tables::CyclicInterval;
use crate::visibility::VisibilityGraph;

/// Bellman-Ford distances from dense vertex `s`.
pub fn bellman_ford<T: Scalar>(g: &VisibilityGraph<T>, s: usize) -> Vec<T> {
    let n = g.n();
    let mut dist = vec![T::infinity(); n];
    dist[s] = T::zero();
    for _ in 0..n {
        let mut changed = false;
        for u in 0..n {
            if !dist[u].is_finite() {
                continue;
            }
            for &(v, w) in g.neighbors(u) {
                if dist[u] + w < dist[v] {
                    dist[v] = dist[u] + w;
                    changed = true;
                }
            }
        }
        if !changed {
            break;
        }
    }
    dist
}

/// All-pairs Bellman-Ford distances, indexed `[from][to]`.
pub fn distance_matrix<T: Scalar>(g: &VisibilityGraph<T>) -> Vec<Vec<T>> {
    use rayon::prelude::*;
    (0..g.n()).into_par_iter().map(|s| bellman_ford(g, s)).collect()
}

/// Interval spanned by `member` found by trying every start index.
/// `None` if the set is not a cyclic interval.
pub fn naive_interval_scan(member: &[bool]) -> Option<Option<CyclicInterval>> {
    let n = member.len();
    let count = member.iter().filter(|&&m| m).count();
    if count == 0 {
        return Some(None);
    }
    if count == n {
        return Some(Some(CyclicInterval::new(0, n - 1)));
    }
    for k1 in 0..n {
        if member[k1] && !member[(k1 + n - 1) % n] {
            let run_ok = (0..count).all(|off| member[(k1 + off) % n]);
            return if run_ok { Some(Some(CyclicInterval::new(k1, (k1 + count - 1) % n))) } else { None };
        }
    }
    None
}

/// Member sets `C_j ⊓ Π_i` for the tree source: target `q` joins cone `j`,
/// boundary `q.boundary`, when the first edge toward `q` lies in cone `j`.
/// Keys are `(cone, boundary)`; values are per-index membership masks.
pub fn naive_cone_boundary_sets<T: Scalar>(
    d: &PolygonalDomain<T>,
    spt: &ShortestPathTree<T>,
    fan: &ConeFan<T>,
) -> crate::error::Result<BTreeMap<(usize, usize), Vec<bool>>> {
    let p = spt.source();
    let origin = d.point(p);
    let mut sets: BTreeMap<(usize, usize), Vec<bool>> = BTreeMap::new();
    for q in d.labels().filter(|&q| q != p) {
        let fe = spt.first_edge(q)?;
        let j = fan.cone_index(d.point(fe) - origin)?;
        let mask = sets.entry((j, q.boundary)).or_insert_with(|| vec![false; d.boundary_len(q.boundary)]);
        mask[q.vertex] = true;
    }
    Ok(sets)
}

/// Nearest vertex visible from `p` (a graph neighbor) in each cone.
pub fn naive_nearest_per_cone<T: Scalar>(
    d: &PolygonalDomain<T>,
    g: &VisibilityGraph<T>,
    fan: &ConeFan<T>,
) -> crate::error::Result<BTreeMap<usize, VertexLabel>> {
    let p = fan.apex;
    let origin = d.point(p);
    let mut best: BTreeMap<usize, (T, VertexLabel)> = BTreeMap::new();
    for &(v, len) in g.neighbors(d.index_of(p)) {
        let q = g.label_of(v);
        let j = fan.cone_index(d.point(q) - origin)?;
        match best.get(&j) {
            Some(&(bl, bq)) if bl < len || (bl == len && bq < q) => {}
            _ => {
                best.insert(j, (len, q));
            }
        }
    }
    Ok(best.into_iter().map(|(j, (_, q))| (j, q)).collect())
}

/// Tree paths from the source to `q1` and `q2` may share their common prefix
/// but must neither cross nor touch after the lowest common ancestor.
pub fn tree_paths_disjoint<T: Scalar>(points: &[Point<T>], spt: &ShortestPathTree<T>, q1: usize, q2: usize) -> bool {
    let a = spt.path_indices(q1);
    let b = spt.path_indices(q2);
    let common = a.iter().zip(&b).take_while(|(x, y)| x == y).count();
    // Suffixes start at the lowest common ancestor.
    let sa = &a[common - 1..];
    let sb = &b[common - 1..];
    if sa.len() < 2 || sb.len() < 2 {
        return true;
    }
    if sa[1..].iter().any(|v| sb[1..].contains(v)) {
        return false;
    }
    for ea in sa.windows(2) {
        for eb in sb.windows(2) {
            let s1 = (points[ea[0]], points[ea[1]]);
            let s2 = (points[eb[0]], points[eb[1]]);
            if segments_properly_cross(s1, s2) {
                return false;
            }
            // Touching: an endpoint of one edge lying on the other, other than
            // the shared ancestor itself.
            for (&x, s) in [(&ea[1], s2), (&eb[1], s1)] {
                if crate::geometry::on_open_segment(points[x], s.0, s.1) {
                    return false;
                }
            }
        }
    }
    true
}
