//! The local routing function and end-to-end packet simulation.

use std::fmt::Write as _;

use crate::domain::{PolygonalDomain, VertexLabel};
use crate::error::{Error, Result};
use crate::scalar::Scalar;
use crate::tables::{build_all_tables, CompiledTables, RoutingTable, TablesDocument};
use crate::visibility::build_visibility_graph;

/// Next hop for a packet addressed to `target`, using only the current
/// vertex's table.
pub fn route_step(tbl: &RoutingTable, target: VertexLabel) -> Result<VertexLabel> {
    if target == tbl.owner {
        return Err(Error::TargetIsOwner(target));
    }
    let mut hits = tbl.covering(target);
    let first = hits.next().ok_or(Error::UnknownDestination { owner: tbl.owner, target })?;
    if let Some(second) = hits.next() {
        return Err(Error::TableCorruption {
            owner: tbl.owner,
            message: format!(
                "entries {} on boundary {} and {} on boundary {} both cover {target}",
                first.interval, first.hole, second.interval, second.hole
            ),
        });
    }
    Ok(first.via)
}

/// Tables for every vertex plus coordinates. Coordinates are used for hop
/// length accounting only; [`route_step`] never sees them.
#[derive(Debug, Clone)]
pub struct RoutingScheme<T> {
    pub domain: PolygonalDomain<T>,
    pub epsilon: f64,
    pub t: usize,
    tables: Vec<RoutingTable>,
}

impl<T: Scalar> RoutingScheme<T> {
    /// Compiles tables for `domain` at stretch `1 + epsilon`.
    pub fn build(domain: PolygonalDomain<T>, epsilon: T) -> Result<(Self, CompiledTables)> {
        let g = build_visibility_graph(&domain);
        let compiled = build_all_tables(&domain, &g, epsilon)?;
        let scheme = RoutingScheme {
            domain,
            epsilon: compiled.epsilon,
            t: compiled.t,
            tables: compiled.tables.clone(),
        };
        Ok((scheme, compiled))
    }

    /// Wraps existing tables. Table `v` must belong to the vertex with dense
    /// index `v`.
    pub fn from_tables(domain: PolygonalDomain<T>, epsilon: f64, t: usize, tables: Vec<RoutingTable>) -> Result<Self> {
        if tables.len() != domain.n() {
            return Err(Error::HeaderMismatch(format!("{} tables for {} vertices", tables.len(), domain.n())));
        }
        for (v, tbl) in tables.iter().enumerate() {
            if tbl.owner != domain.label_of(v) {
                return Err(Error::HeaderMismatch(format!("table {v} belongs to {}", tbl.owner)));
            }
        }
        Ok(RoutingScheme { domain, epsilon, t, tables })
    }

    pub fn from_document(doc: &TablesDocument) -> Result<Self> {
        let domain = doc
            .domain::<T>()?
            .ok_or_else(|| Error::HeaderMismatch("tables file carries no domain".into()))?;
        doc.check_against(&domain)?;
        RoutingScheme::from_tables(domain, doc.epsilon, doc.t, doc.tables.clone())
    }

    pub fn n(&self) -> usize {
        self.domain.n()
    }

    pub fn h(&self) -> usize {
        self.domain.h()
    }

    pub fn tables(&self) -> &[RoutingTable] {
        &self.tables
    }

    pub fn table(&self, v: VertexLabel) -> &RoutingTable {
        &self.tables[self.domain.index_of(v)]
    }

    /// Routes a packet from `from` to `to`. At most `n` hops are allowed.
    pub fn route(&self, from: VertexLabel, to: VertexLabel) -> Result<RoutingTrace<T>> {
        self.domain.check_label(from)?;
        self.domain.check_label(to)?;
        let budget = self.n();
        let mut path = vec![from];
        let mut hop_lengths = Vec::new();
        let mut cur = from;
        while cur != to {
            if hop_lengths.len() == budget {
                return Err(Error::NonTermination { from, to, budget });
            }
            let next = route_step(self.table(cur), to)?;
            self.domain.check_label(next)?;
            hop_lengths.push(self.domain.point(cur).dist(self.domain.point(next)));
            path.push(next);
            cur = next;
        }
        let routing_distance = hop_lengths.iter().fold(T::zero(), |a, &b| a + b);
        Ok(RoutingTrace { path, hop_lengths, routing_distance, geodesic: None })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RoutingTrace<T> {
    /// `p_0 ..= p_k`.
    pub path: Vec<VertexLabel>,
    pub hop_lengths: Vec<T>,
    pub routing_distance: T,
    pub geodesic: Option<T>,
}

impl<T: Scalar> RoutingTrace<T> {
    pub fn hops(&self) -> usize {
        self.hop_lengths.len()
    }

    pub fn with_geodesic(mut self, geodesic: T) -> Self {
        self.geodesic = Some(geodesic);
        self
    }

    /// Routing distance over geodesic distance; 1 for an empty route.
    pub fn stretch(&self) -> Option<T> {
        self.geodesic.map(|g| if g > T::zero() { self.routing_distance / g } else { T::one() })
    }

    /// One line per hop, `i:k -> i:k length=<len>`, then a summary line.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for (w, len) in self.path.windows(2).zip(&self.hop_lengths) {
            let _ = writeln!(out, "{} -> {} length={}", w[0], w[1], len);
        }
        let fmt_opt = |v: Option<T>| v.map(|x| x.to_string()).unwrap_or_else(|| "unknown".into());
        let _ = writeln!(
            out,
            "total={} geodesic={} stretch={}",
            self.routing_distance,
            fmt_opt(self.geodesic),
            fmt_opt(self.stretch())
        );
        out
    }
}

/// Vertex sequence of a trace printed by [`RoutingTrace::to_text`].
pub fn parse_trace_path(text: &str) -> Result<Vec<VertexLabel>> {
    let mut path = Vec::new();
    for line in text.lines().map(str::trim).filter(|l| l.contains("->")) {
        let mut parts = line.split_whitespace();
        let a: VertexLabel = parts.next().unwrap_or_default().parse()?;
        let arrow = parts.next();
        let b: VertexLabel = parts.next().unwrap_or_default().parse()?;
        if arrow != Some("->") {
            return Err(Error::Syntax { what: "trace", message: format!("malformed hop line `{line}`") });
        }
        if path.is_empty() {
            path.push(a);
        } else if path.last() != Some(&a) {
            return Err(Error::Syntax { what: "trace", message: format!("hop `{line}` does not continue the path") });
        }
        path.push(b);
    }
    Ok(path)
}
