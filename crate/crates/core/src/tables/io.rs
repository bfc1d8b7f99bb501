//! Tables file: a JSON header `{n, h, epsilon, t}`, the domain the tables
//! were built for, and one entry list per vertex.

use serde::{Deserialize, Serialize};

use super::{CyclicInterval, RoutingTable, TableEntry};
use crate::domain::{fmt_num, DomainFile, PolygonalDomain, VertexLabel};
use crate::error::{Error, Result};
use crate::scalar::Scalar;

#[derive(Debug, Clone, Serialize, Deserialize)]
struct EntryRecord {
    i: usize,
    k1: usize,
    k2: usize,
    via: VertexLabel,
    cone: usize,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
struct TableRecord {
    owner: VertexLabel,
    entries: Vec<EntryRecord>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
struct TablesFile {
    n: usize,
    h: usize,
    epsilon: f64,
    t: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    domain: Option<DomainFile>,
    tables: Vec<TableRecord>,
}

/// In-memory form of a tables file.
#[derive(Debug, Clone)]
pub struct TablesDocument {
    pub n: usize,
    pub h: usize,
    pub epsilon: f64,
    pub t: usize,
    domain: Option<DomainFile>,
    pub tables: Vec<RoutingTable>,
}

impl PartialEq for TablesDocument {
    fn eq(&self, other: &Self) -> bool {
        serialize_document(self) == serialize_document(other)
    }
}

impl TablesDocument {
    pub fn new<T: Scalar>(domain: Option<&PolygonalDomain<T>>, n: usize, h: usize, epsilon: f64, t: usize, tables: Vec<RoutingTable>) -> Self {
        TablesDocument { n, h, epsilon, t, domain: domain.map(DomainFile::from_domain), tables }
    }

    /// The embedded domain, if the file carries one.
    pub fn domain<T: Scalar>(&self) -> Result<Option<PolygonalDomain<T>>> {
        match &self.domain {
            None => Ok(None),
            Some(f) => {
                let (d, _) = f.clone().into_domain()?;
                if d.n() != self.n || d.h() != self.h {
                    return Err(Error::HeaderMismatch(format!(
                        "header says n={}, h={} but the embedded domain has n={}, h={}",
                        self.n,
                        self.h,
                        d.n(),
                        d.h()
                    )));
                }
                Ok(Some(d))
            }
        }
    }

    /// Checks the header against a domain's vertex and boundary counts.
    pub fn check_against<T: Scalar>(&self, d: &PolygonalDomain<T>) -> Result<()> {
        if self.n != d.n() || self.h != d.h() {
            return Err(Error::HeaderMismatch(format!(
                "tables are for n={}, h={} but the domain has n={}, h={}",
                self.n,
                self.h,
                d.n(),
                d.h()
            )));
        }
        for tbl in &self.tables {
            let bad = |l: VertexLabel| !d.is_valid_label(l);
            if bad(tbl.owner) || tbl.entries.iter().any(|e| bad(e.via) || e.hole >= d.h()) {
                return Err(Error::HeaderMismatch(format!("table of {} refers to labels outside the domain", tbl.owner)));
            }
        }
        Ok(())
    }
}

pub fn serialize_tables<T: Scalar>(domain: &PolygonalDomain<T>, epsilon: f64, t: usize, tables: &[RoutingTable]) -> String {
    serialize_document(&TablesDocument::new(Some(domain), domain.n(), domain.h(), epsilon, t, tables.to_vec()))
}

fn serialize_document(doc: &TablesDocument) -> String {
    let mut out = String::new();
    out.push_str("{\n");
    out.push_str(&format!("  \"n\": {},\n  \"h\": {},\n  \"epsilon\": {},\n  \"t\": {},\n", doc.n, doc.h, fmt_num(doc.epsilon), doc.t));
    if let Some(dom) = &doc.domain {
        out.push_str("  \"domain\": ");
        dom.write(&mut out, "  ");
        out.push_str(",\n");
    }
    out.push_str("  \"tables\": [");
    for (ti, tbl) in doc.tables.iter().enumerate() {
        out.push_str(if ti == 0 { "\n" } else { ",\n" });
        out.push_str(&format!(
            "    {{\"owner\": [{}, {}], \"entries\": [",
            tbl.owner.boundary, tbl.owner.vertex
        ));
        for (ei, e) in tbl.entries.iter().enumerate() {
            out.push_str(if ei == 0 { "\n" } else { ",\n" });
            out.push_str(&format!(
                "      {{\"i\": {}, \"k1\": {}, \"k2\": {}, \"via\": [{}, {}], \"cone\": {}}}",
                e.hole, e.interval.k1, e.interval.k2, e.via.boundary, e.via.vertex, e.cone
            ));
        }
        if !tbl.entries.is_empty() {
            out.push_str("\n    ");
        }
        out.push_str("]}");
    }
    if !doc.tables.is_empty() {
        out.push_str("\n  ");
    }
    out.push_str("]\n}\n");
    out
}

pub fn parse_tables(text: &str) -> Result<TablesDocument> {
    let file: TablesFile =
        serde_json::from_str(text).map_err(|e| Error::Syntax { what: "tables file", message: e.to_string() })?;
    if file.tables.len() != file.n {
        return Err(Error::HeaderMismatch(format!("header says n={} but the file has {} tables", file.n, file.tables.len())));
    }
    if !(file.epsilon > 0.0) {
        return Err(Error::HeaderMismatch(format!("epsilon must be positive, got {}", file.epsilon)));
    }
    let tables = file
        .tables
        .into_iter()
        .map(|r| RoutingTable {
            owner: r.owner,
            entries: r
                .entries
                .into_iter()
                .map(|e| TableEntry { hole: e.i, interval: CyclicInterval::new(e.k1, e.k2), via: e.via, cone: e.cone })
                .collect(),
        })
        .collect();
    let doc = TablesDocument { n: file.n, h: file.h, epsilon: file.epsilon, t: file.t, domain: file.domain, tables };
    if let Some(d) = doc.domain::<f64>()? {
        doc.check_against(&d)?;
    }
    Ok(doc)
}
