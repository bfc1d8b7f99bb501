//! The example corpus under `fixtures/`, regenerated from fixed seeds.

use serde::{Deserialize, Serialize};

use super::generators::{gen_holed_domain, gen_spire_polygon};
use crate::domain::{parse_domain, serialize_domain, PolygonalDomain, VertexLabel};
use crate::error::Result;
use crate::router::RoutingScheme;
use crate::tables::table_bits;

pub const HOLED_SEED: u64 = 1603;

pub const SQUARE: &str = r#"{"boundaries":[{"kind":"outer","vertices":[[0,0],[1,0],[1,1],[0,1]]}]}"#;
pub const PENTAGON: &str = r#"{"boundaries":[{"kind":"outer","vertices":[[0,0],[4,0],[5,3],[2,5],[-1,3]]}]}"#;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExpectedTrace {
    pub from: VertexLabel,
    pub to: VertexLabel,
    pub hops: usize,
    pub path: Vec<VertexLabel>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Expected {
    pub file: String,
    pub epsilon: f64,
    pub n: usize,
    pub h: usize,
    pub t: usize,
    pub vg_edges: usize,
    pub entries_per_vertex: Vec<usize>,
    pub total_entries: usize,
    pub total_table_bits: u64,
    pub label_bits: u32,
    pub traces: Vec<ExpectedTrace>,
}

fn expect(file: &str, d: &PolygonalDomain<f64>, epsilon: f64, pairs: &[(VertexLabel, VertexLabel)]) -> Result<Expected> {
    let (scheme, compiled) = RoutingScheme::build(d.clone(), epsilon)?;
    let g = crate::visibility::build_visibility_graph(d);
    let mut traces = Vec::new();
    for &(from, to) in pairs {
        let tr = scheme.route(from, to)?;
        traces.push(ExpectedTrace { from, to, hops: tr.hops(), path: tr.path });
    }
    Ok(Expected {
        file: file.to_string(),
        epsilon,
        n: d.n(),
        h: d.h(),
        t: compiled.t,
        vg_edges: g.edge_count(),
        entries_per_vertex: compiled.tables.iter().map(|t| t.entries.len()).collect(),
        total_entries: compiled.total_entries(),
        total_table_bits: compiled.tables.iter().map(|t| table_bits(t, d.n(), d.h())).sum(),
        label_bits: d.label_bits(),
        traces,
    })
}

/// Every fixture file as `(file name, contents)`, including `expected.json`.
pub fn example_corpus() -> Result<Vec<(String, String)>> {
    let l = VertexLabel::new;
    let square = parse_domain::<f64>(SQUARE)?.domain;
    let pentagon = parse_domain::<f64>(PENTAGON)?.domain;
    let holed = gen_holed_domain::<f64>(16, 3, HOLED_SEED)?;
    let spire = gen_spire_polygon::<f64>(8)?;

    let far_hole = l(holed.h() - 1, 0);
    let expected = vec![
        expect("square.json", &square, 1.0, &[(l(0, 0), l(0, 2)), (l(0, 1), l(0, 3))])?,
        expect("pentagon.json", &pentagon, 1.0, &[(l(0, 0), l(0, 2))])?,
        expect("holed_16_3.json", &holed, 0.5, &[(l(0, 0), far_hole), (l(0, 0), l(0, 8))])?,
        expect("spire_8.json", &spire.domain, 1.0, &[(spire.p, spire.q)])?,
    ];
    let mut expected_text = serde_json::to_string_pretty(&expected)?;
    expected_text.push('\n');

    Ok(vec![
        ("square.json".into(), serialize_domain(&square)),
        ("pentagon.json".into(), serialize_domain(&pentagon)),
        ("holed_16_3.json".into(), serialize_domain(&holed)),
        ("spire_8.json".into(), serialize_domain(&spire.domain)),
        ("expected.json".into(), expected_text),
    ])
}
