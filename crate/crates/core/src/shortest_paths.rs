//! Single-source shortest path trees over the visibility graph.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use crate::domain::VertexLabel;
use crate::error::{Error, Result};
use crate::scalar::Scalar;
use crate::visibility::VisibilityGraph;
use crate::warning::Warning;

#[derive(Debug, Clone)]
pub struct ShortestPathTree<T> {
    labels: Vec<VertexLabel>,
    source: usize,
    parent: Vec<Option<usize>>,
    dist: Vec<T>,
    children: Vec<Vec<usize>>,
    /// Depth-one ancestor of every non-source vertex.
    branch: Vec<Option<usize>>,
    pub warnings: Vec<Warning>,
}

#[derive(Clone, Copy)]
struct HeapItem<T> {
    dist: T,
    v: usize,
}

impl<T: Scalar> PartialEq for HeapItem<T> {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl<T: Scalar> Eq for HeapItem<T> {}

impl<T: Scalar> PartialOrd for HeapItem<T> {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl<T: Scalar> Ord for HeapItem<T> {
    // Min-heap on (dist, index).
    fn cmp(&self, other: &Self) -> Ordering {
        other
            .dist
            .partial_cmp(&self.dist)
            .unwrap_or(Ordering::Equal)
            .then_with(|| other.v.cmp(&self.v))
    }
}

/// Dijkstra from `s`. Ties between equal-length in-paths are reported as
/// warnings; the lower-index parent wins.
pub fn shortest_path_tree<T: Scalar>(g: &VisibilityGraph<T>, s: VertexLabel) -> Result<ShortestPathTree<T>> {
    let src = g.index_of(s).ok_or_else(|| Error::InvalidLabel(s.to_string()))?;
    let n = g.n();
    let inf = T::infinity();
    let mut dist = vec![inf; n];
    let mut parent: Vec<Option<usize>> = vec![None; n];
    let mut settled = vec![false; n];
    let mut ties: Vec<(usize, usize, usize)> = Vec::new();
    let rel = T::rel_tol();

    dist[src] = T::zero();
    let mut heap = BinaryHeap::new();
    heap.push(HeapItem { dist: T::zero(), v: src });
    while let Some(HeapItem { dist: du, v: u }) = heap.pop() {
        if settled[u] || du > dist[u] {
            continue;
        }
        settled[u] = true;
        for &(v, w) in g.neighbors(u) {
            if settled[v] {
                continue;
            }
            let cand = du + w;
            let cur = dist[v];
            let threshold = rel * (T::one() + cur.min(cand));
            if cur.is_finite() && (cand - cur).abs() < threshold {
                if let Some(p) = parent[v] {
                    ties.push((v, p, u));
                }
            }
            let better = cand < cur || (cand == cur && parent[v].is_some_and(|p| u < p));
            if better {
                dist[v] = cand;
                parent[v] = Some(u);
                heap.push(HeapItem { dist: cand, v });
            }
        }
    }

    let unreached = settled.iter().filter(|&&s| !s).count();
    if unreached > 0 {
        return Err(Error::Disconnected { source_label: s, unreached });
    }

    let mut children = vec![Vec::new(); n];
    for v in 0..n {
        if let Some(p) = parent[v] {
            children[p].push(v);
        }
    }

    let mut branch: Vec<Option<usize>> = vec![None; n];
    let mut stack: Vec<(usize, usize)> = children[src].iter().map(|&c| (c, c)).collect();
    while let Some((v, top)) = stack.pop() {
        branch[v] = Some(top);
        stack.extend(children[v].iter().map(|&c| (c, top)));
    }

    let labels = g.labels().to_vec();
    let warnings = ties
        .into_iter()
        .map(|(v, a, b)| Warning::NearTie { source: s, vertex: labels[v], parents: (labels[a], labels[b]) })
        .collect();

    Ok(ShortestPathTree { labels, source: src, parent, dist, children, branch, warnings })
}

impl<T: Scalar> ShortestPathTree<T> {
    pub fn n(&self) -> usize {
        self.dist.len()
    }

    pub fn source(&self) -> VertexLabel {
        self.labels[self.source]
    }

    pub fn source_index(&self) -> usize {
        self.source
    }

    pub fn label_of(&self, v: usize) -> VertexLabel {
        self.labels[v]
    }

    fn index(&self, l: VertexLabel) -> Result<usize> {
        self.labels.binary_search(&l).map_err(|_| Error::InvalidLabel(l.to_string()))
    }

    /// Geodesic distance from the source.
    pub fn dist(&self, q: VertexLabel) -> Result<T> {
        Ok(self.dist[self.index(q)?])
    }

    pub fn dist_by_index(&self, v: usize) -> T {
        self.dist[v]
    }

    pub fn parent(&self, q: VertexLabel) -> Result<Option<VertexLabel>> {
        Ok(self.parent[self.index(q)?].map(|p| self.labels[p]))
    }

    pub fn parent_by_index(&self, v: usize) -> Option<usize> {
        self.parent[v]
    }

    pub fn children_by_index(&self, v: usize) -> &[usize] {
        &self.children[v]
    }

    /// Children of the source, i.e. the vertices it sees.
    pub fn source_children(&self) -> Vec<VertexLabel> {
        self.children[self.source].iter().map(|&c| self.labels[c]).collect()
    }

    /// Second vertex on the tree path from the source to `q`.
    pub fn first_edge(&self, q: VertexLabel) -> Result<VertexLabel> {
        let v = self.index(q)?;
        self.first_edge_by_index(v).map(|c| self.labels[c])
    }

    pub fn first_edge_by_index(&self, v: usize) -> Result<usize> {
        self.branch[v].ok_or(Error::SourceVertex { label: self.labels[v] })
    }

    /// All vertices of the subtree rooted at the source's child `c`.
    pub fn subtree_vertices(&self, c: VertexLabel) -> Result<Vec<VertexLabel>> {
        let v = self.index(c)?;
        if self.parent[v] != Some(self.source) {
            return Err(Error::NotAChild { child: c, source_label: self.source() });
        }
        let mut out = Vec::new();
        self.collect_subtree(v, &mut out);
        Ok(out.into_iter().map(|u| self.labels[u]).collect())
    }

    /// Appends the dense indices of the subtree rooted at `v` to `out`.
    pub fn collect_subtree(&self, v: usize, out: &mut Vec<usize>) {
        let start = out.len();
        out.push(v);
        let mut i = start;
        while i < out.len() {
            let u = out[i];
            out.extend_from_slice(&self.children[u]);
            i += 1;
        }
    }

    /// Tree path from the source to `q`, both ends included, as dense indices.
    pub fn path_indices(&self, v: usize) -> Vec<usize> {
        let mut path = vec![v];
        let mut cur = v;
        while let Some(p) = self.parent[cur] {
            path.push(p);
            cur = p;
        }
        path.reverse();
        path
    }
}
