//! Routing tables.
//!
//! For a vertex `p`, each cone `j` of its fan and each boundary `i`, the
//! targets on boundary `i` whose shortest path from `p` leaves through cone
//! `j` form a cyclic index interval. Each nonempty interval becomes one entry
//! `(i, k1, k2, via)` where `via` is the nearest vertex of cone `j` that `p`
//! sees.

mod interval;
mod io;

pub use interval::{extract_interval, find_cyclic_interval, CyclicInterval};
pub use io::{parse_tables, serialize_tables, TablesDocument};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::cones::{build_fan, cone_count, ConeFan};
use crate::domain::{ceil_log2, PolygonalDomain, VertexLabel};
use crate::error::{Error, Result};
use crate::scalar::Scalar;
use crate::shortest_paths::{shortest_path_tree, ShortestPathTree};
use crate::visibility::VisibilityGraph;
use crate::warning::Warning;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct TableEntry {
    /// Boundary index `i` of the covered targets.
    pub hole: usize,
    pub interval: CyclicInterval,
    pub via: VertexLabel,
    /// Cone index; kept for diagnostics and not counted in the table size.
    pub cone: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RoutingTable {
    pub owner: VertexLabel,
    pub entries: Vec<TableEntry>,
}

impl RoutingTable {
    /// Entries whose interval covers `target`.
    pub fn covering(&self, target: VertexLabel) -> impl Iterator<Item = &TableEntry> {
        self.entries.iter().filter(move |e| e.hole == target.boundary && e.interval.contains(target.vertex))
    }
}

/// Bits per entry: `2 ceil(log h) + 3 ceil(log n)`.
pub fn entry_bits(n: usize, h: usize) -> u64 {
    2 * ceil_log2(h) as u64 + 3 * ceil_log2(n) as u64
}

pub fn table_bits(tbl: &RoutingTable, n: usize, h: usize) -> u64 {
    tbl.entries.len() as u64 * entry_bits(n, h)
}

/// Per-worker scratch space: one bucket per boundary, the list of buckets
/// touched by the current cone, and a reusable subtree buffer.
#[derive(Debug, Clone)]
pub struct TableScratch {
    buckets: Vec<Vec<usize>>,
    touched: Vec<usize>,
    subtree: Vec<usize>,
}

impl TableScratch {
    pub fn new(h: usize) -> Self {
        TableScratch { buckets: vec![Vec::new(); h], touched: Vec::new(), subtree: Vec::new() }
    }
}

/// Builds the table of the tree source `p`.
pub fn build_table<T: Scalar>(
    d: &PolygonalDomain<T>,
    spt: &ShortestPathTree<T>,
    fan: &ConeFan<T>,
    scratch: &mut TableScratch,
) -> Result<(RoutingTable, Vec<Warning>)> {
    let p = spt.source();
    assert_eq!(p, fan.apex, "tree and fan must share their apex");
    let origin = d.point(p);
    let mut warnings = Vec::new();

    // Sweep the children into their cones.
    let mut cones: Vec<Vec<usize>> = vec![Vec::new(); fan.t + 1];
    for &c in spt.children_by_index(spt.source_index()) {
        let j = fan.cone_index(d.point(spt.label_of(c)) - origin)?;
        cones[j].push(c);
    }

    let mut entries = Vec::new();
    for (j, children) in cones.iter().enumerate().skip(1) {
        if children.is_empty() {
            continue;
        }
        let key = |c: usize| (origin.dist(d.point(spt.label_of(c))), spt.label_of(c));
        let mut via = children[0];
        for &c in &children[1..] {
            let (dc, lc) = key(c);
            let (dv, lv) = key(via);
            if dc == dv {
                warnings.push(Warning::ViaTie { owner: p, cone: j, candidates: (lv.min(lc), lv.max(lc)) });
            }
            if dc < dv || (dc == dv && lc < lv) {
                via = c;
            }
        }
        let via = spt.label_of(via);

        scratch.subtree.clear();
        for &c in children {
            spt.collect_subtree(c, &mut scratch.subtree);
        }
        for &v in &scratch.subtree {
            let l = spt.label_of(v);
            let bucket = &mut scratch.buckets[l.boundary];
            if bucket.is_empty() {
                scratch.touched.push(l.boundary);
            }
            bucket.push(l.vertex);
        }
        scratch.touched.sort_unstable();
        for &i in &scratch.touched {
            let interval = find_cyclic_interval(&scratch.buckets[i], d.boundary_len(i))
                .map_err(|_| Error::TableCorruption {
                    owner: p,
                    message: format!("cone {j} reaches a non-interval index set on boundary {i}"),
                })?
                .expect("touched buckets are nonempty");
            entries.push(TableEntry { hole: i, interval, via, cone: j });
        }
        for &i in &scratch.touched {
            scratch.buckets[i].clear();
        }
        scratch.touched.clear();
    }

    Ok((RoutingTable { owner: p, entries }, warnings))
}

/// Tables for every vertex together with the parameters that produced them.
#[derive(Debug, Clone)]
pub struct CompiledTables {
    pub epsilon: f64,
    pub t: usize,
    pub tables: Vec<RoutingTable>,
    pub warnings: Vec<Warning>,
}

impl CompiledTables {
    pub fn total_entries(&self) -> usize {
        self.tables.iter().map(|t| t.entries.len()).sum()
    }

    pub fn max_entries(&self) -> usize {
        self.tables.iter().map(|t| t.entries.len()).max().unwrap_or(0)
    }
}

/// Builds all `n` tables in parallel.
pub fn build_all_tables<T: Scalar>(d: &PolygonalDomain<T>, g: &VisibilityGraph<T>, epsilon: T) -> Result<CompiledTables> {
    let t = cone_count(epsilon)?;
    let labels: Vec<VertexLabel> = d.labels().collect();
    let results: Vec<Result<(RoutingTable, Vec<Warning>)>> = labels
        .par_iter()
        .map_init(
            || TableScratch::new(d.h()),
            |scratch, &p| {
                let spt = shortest_path_tree(g, p)?;
                let fan = build_fan(d, p, t)?;
                let (table, mut warnings) = build_table(d, &spt, &fan, scratch)?;
                warnings.extend(spt.warnings.iter().cloned());
                Ok((table, warnings))
            },
        )
        .collect();

    let mut tables = Vec::with_capacity(labels.len());
    let mut warnings: Vec<Warning> =
        g.grazing.iter().map(|&(a, b)| Warning::Grazing { a, b }).collect();
    for r in results {
        let (table, w) = r?;
        tables.push(table);
        warnings.extend(w);
    }
    Ok(CompiledTables { epsilon: epsilon.to_f64_lossy(), t, tables, warnings })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::domain::tests::square;
    use crate::domain::{parse_domain, Boundary, BoundaryKind};
    use crate::geometry::Point;
    use crate::visibility::build_visibility_graph;

    fn l(i: usize, k: usize) -> VertexLabel {
        VertexLabel::new(i, k)
    }

    fn table_for(d: &PolygonalDomain<f64>, p: VertexLabel, eps: f64) -> RoutingTable {
        let g = build_visibility_graph(d);
        let spt = shortest_path_tree(&g, p).unwrap();
        let fan = build_fan(d, p, cone_count(eps).unwrap()).unwrap();
        build_table(d, &spt, &fan, &mut TableScratch::new(d.h())).unwrap().0
    }

    /// Visible vertices of `p` grouped by cone through direct angle arithmetic.
    fn naive_cone_members(d: &PolygonalDomain<f64>, p: VertexLabel, t: usize) -> Vec<(usize, VertexLabel)> {
        let base = d.base_ray(p);
        let alpha = d.inner_angle(p).unwrap();
        d.labels()
            .filter(|&q| q != p)
            .map(|q| {
                let dir = d.point(q) - d.point(p);
                let phi = crate::geometry::clockwise_angle(base, dir).unwrap();
                let j = ((phi / (alpha / t as f64)).floor() as usize + 1).min(t);
                (j, q)
            })
            .collect()
    }

    #[test]
    fn unit_square_table() {
        let d = square();
        let tbl = table_for(&d, l(0, 0), 1.0);
        let want = vec![
            TableEntry { hole: 0, interval: CyclicInterval::new(3, 3), via: l(0, 3), cone: 1 },
            TableEntry { hole: 0, interval: CyclicInterval::new(2, 2), via: l(0, 2), cone: 7 },
            TableEntry { hole: 0, interval: CyclicInterval::new(1, 1), via: l(0, 1), cone: 13 },
        ];
        assert_eq!(tbl.entries, want);
        assert!(tbl.entries.len() <= 13 + 2);
        for (j, q) in naive_cone_members(&d, l(0, 0), 13) {
            let e: Vec<_> = tbl.covering(q).collect();
            assert_eq!(e.len(), 1);
            assert_eq!(e[0].cone, j);
        }
    }

    #[test]
    fn table_bits_arithmetic() {
        let d = square();
        let tbl = table_for(&d, l(0, 0), 1.0);
        assert_eq!(table_bits(&tbl, 4, 1), 18);
        assert_eq!(entry_bits(7, 2), 11);
        let five = RoutingTable { owner: l(0, 0), entries: vec![tbl.entries[0]; 5] };
        assert_eq!(table_bits(&five, 7, 2), 55);
        assert_eq!(table_bits(&RoutingTable { owner: l(0, 0), entries: vec![] }, 7, 2), 0);
    }

    #[test]
    fn convex_polygon_entries_are_singletons_with_nearest_via() {
        let d = parse_domain::<f64>(
            r#"{"boundaries":[{"kind":"outer","vertices":[[0,0],[40,-3],[57,30],[21,55],[-13,31],[-9,11]]}]}"#,
        )
        .unwrap()
        .domain;
        let t = cone_count(1.0).unwrap();
        for p in d.labels().collect::<Vec<_>>() {
            let tbl = table_for(&d, p, 1.0);
            let naive = naive_cone_members(&d, p, t);
            for e in &tbl.entries {
                let in_cone: Vec<VertexLabel> = naive.iter().filter(|(j, _)| *j == e.cone).map(|&(_, q)| q).collect();
                let nearest = *in_cone
                    .iter()
                    .min_by(|a, b| d.point(p).dist(d.point(**a)).partial_cmp(&d.point(p).dist(d.point(**b))).unwrap())
                    .unwrap();
                assert_eq!(e.via, nearest);
                let covered: Vec<usize> = e.interval.iter(d.boundary_len(0)).collect();
                let mut want: Vec<usize> = in_cone.iter().map(|q| q.vertex).collect();
                want.sort();
                let mut got = covered.clone();
                got.sort();
                assert_eq!(got, want);
            }
        }
    }

    #[test]
    fn thin_wedge_puts_everything_in_one_cone() {
        // A needle polygon: from the apex all other vertices lie within a few
        // degrees, well inside one cone.
        let mut verts = vec![Point::new(0.0, 0.0)];
        for k in 0..6 {
            let x = 1000.0 + 37.0 * k as f64;
            verts.push(Point::new(x, 3.0 + (k * k) as f64));
        }
        verts.push(Point::new(1300.0, 60.0));
        for k in (0..6).rev() {
            let x = 1000.0 + 37.0 * k as f64 + 11.0;
            verts.push(Point::new(x, 70.0 + (k * k) as f64 + 0.5 * k as f64));
        }
        let (d, _) = PolygonalDomain::new(vec![Boundary { kind: BoundaryKind::Outer, vertices: verts }]).unwrap();
        assert!(crate::domain::validate(&d, Default::default()).is_ok());
        let g = build_visibility_graph(&d);
        let apex = l(0, 0);
        let spt = shortest_path_tree(&g, apex).unwrap();
        let fan = build_fan(&d, apex, 13).unwrap();
        assert!(fan.alpha < fan.width() * 13.0 + 1e-12);
        // Oracle: which cone does each target's first edge use?
        let mut cones_used = std::collections::BTreeSet::new();
        for q in d.labels().filter(|&q| q != apex) {
            let fe = spt.first_edge(q).unwrap();
            cones_used.insert(fan.cone_index(d.point(fe) - d.point(apex)).unwrap());
        }
        let tbl = build_table(&d, &spt, &fan, &mut TableScratch::new(1)).unwrap().0;
        assert_eq!(tbl.entries.len(), cones_used.len());
        let n0 = d.boundary_len(0);
        let covered: usize = tbl.entries.iter().map(|e| e.interval.len(n0)).sum();
        assert_eq!(covered, n0 - 1);
    }

    #[test]
    fn build_all_on_holed_domain() {
        let d = crate::visibility::tests::blocked_square();
        let g = build_visibility_graph(&d);
        let c = build_all_tables(&d, &g, 0.5).unwrap();
        assert_eq!(c.t, 19);
        assert_eq!(c.tables.len(), d.n());
        for tbl in &c.tables {
            assert!(tbl.entries.len() <= c.t + 2 * d.h());
            for q in d.labels().filter(|&q| q != tbl.owner) {
                assert_eq!(tbl.covering(q).count(), 1, "{} -> {}", tbl.owner, q);
            }
        }
    }
}
