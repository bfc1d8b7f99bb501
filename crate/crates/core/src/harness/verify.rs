//! End-to-end verification of a compiled scheme against slow oracles.

use std::collections::BTreeSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use super::oracles::{
    distance_matrix, naive_cone_boundary_sets, naive_interval_scan, naive_nearest_per_cone, tree_paths_disjoint,
};
use crate::cones::{build_fan, cone_count, cone_count_upper_bound};
use crate::domain::{ceil_log2, serialize_domain, PolygonalDomain, VertexLabel};
use crate::router::RoutingScheme;
use crate::scalar::{Scalar, REL_TOL};
use crate::shortest_paths::{shortest_path_tree, ShortestPathTree};
use crate::tables::{build_all_tables, entry_bits, table_bits, RoutingTable, TableEntry};
use crate::visibility::{build_visibility_graph, visibility_oracle, VisibilityGraph};

/// Pairs exercised by the routing checks.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase", tag = "mode")]
pub enum PairSelection {
    /// Every ordered pair when `n` is at most [`VerifyOptions::exhaustive_max_n`],
    /// otherwise a seeded sample of that many pairs.
    Auto,
    All,
    Sample { count: usize },
    /// A single ordered pair.
    One { from: VertexLabel, to: VertexLabel },
}

#[derive(Debug, Clone)]
pub struct VerifyOptions {
    pub pairs: PairSelection,
    pub seed: u64,
    pub exhaustive_max_n: usize,
    /// Run the per-pair visibility oracle only up to this size.
    pub visibility_oracle_max_n: usize,
    /// Number of sampled (source, target, target) triples for the shortest
    /// path tree non-crossing check. Zero disables it.
    pub noncrossing_samples: usize,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            pairs: PairSelection::Auto,
            seed: 0,
            exhaustive_max_n: 80,
            visibility_oracle_max_n: 40,
            noncrossing_samples: 200,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Counterexample {
    pub seed: u64,
    pub epsilon: f64,
    pub domain: serde_json::Value,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub vertex: Option<VertexLabel>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub pair: Option<(VertexLabel, VertexLabel)>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub trace: Option<Vec<VertexLabel>>,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CheckResult {
    pub name: String,
    pub passed: bool,
    pub checked: usize,
    pub failures: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<Counterexample>,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize)]
pub struct ReportStats {
    pub vg_edges: usize,
    pub pairs_routed: usize,
    pub max_stretch: f64,
    pub max_hops: usize,
    pub max_entries: usize,
    pub total_entries: usize,
    pub entry_bits: u64,
    pub max_table_bits: u64,
    pub total_table_bits: u64,
    pub label_bits: u32,
    pub warnings: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerificationReport {
    pub passed: bool,
    pub n: usize,
    pub h: usize,
    pub epsilon: f64,
    pub t: usize,
    pub seed: u64,
    pub checks: Vec<CheckResult>,
    pub stats: ReportStats,
}

impl VerificationReport {
    pub fn check(&self, name: &str) -> Option<&CheckResult> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn failed_checks(&self) -> impl Iterator<Item = &CheckResult> {
        self.checks.iter().filter(|c| !c.passed)
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }
}

/// Accumulates one named check.
struct Check {
    name: &'static str,
    checked: usize,
    failures: usize,
    cx: Option<Counterexample>,
}

#[derive(Default)]
struct Locus {
    vertex: Option<VertexLabel>,
    pair: Option<(VertexLabel, VertexLabel)>,
    trace: Option<Vec<VertexLabel>>,
}

struct Ctx<'a> {
    seed: u64,
    epsilon: f64,
    domain_json: &'a serde_json::Value,
    checks: Vec<CheckResult>,
}

impl Ctx<'_> {
    fn start(&self, name: &'static str) -> Check {
        Check { name, checked: 0, failures: 0, cx: None }
    }

    fn record(&self, c: &mut Check, ok: bool, locus: impl FnOnce() -> (Locus, String)) {
        c.checked += 1;
        if ok {
            return;
        }
        c.failures += 1;
        if c.cx.is_none() {
            let (l, detail) = locus();
            c.cx = Some(Counterexample {
                seed: self.seed,
                epsilon: self.epsilon,
                domain: self.domain_json.clone(),
                vertex: l.vertex,
                pair: l.pair,
                trace: l.trace,
                detail,
            });
        }
    }

    fn finish(&mut self, c: Check) {
        self.checks.push(CheckResult {
            name: c.name.to_string(),
            passed: c.failures == 0,
            checked: c.checked,
            failures: c.failures,
            counterexample: c.cx,
        });
    }

    fn fail_once(&mut self, name: &'static str, locus: Locus, detail: String) {
        let mut c = self.start(name);
        self.record(&mut c, false, || (locus, detail));
        self.finish(c);
    }
}

fn at(v: VertexLabel) -> Locus {
    Locus { vertex: Some(v), ..Default::default() }
}

fn pair(a: VertexLabel, b: VertexLabel) -> Locus {
    Locus { pair: Some((a, b)), ..Default::default() }
}

fn rel_le(a: f64, b: f64, scale: f64) -> bool {
    a <= b + REL_TOL * scale.abs().max(f64::MIN_POSITIVE)
}

/// Builds the scheme for `d` at `epsilon` and checks it.
pub fn verify_scheme<T: Scalar>(d: &PolygonalDomain<T>, epsilon: f64, opts: &VerifyOptions) -> VerificationReport {
    verify_scheme_with(d, epsilon, opts, None)
}

/// Like [`verify_scheme`], but routes with `tables` instead of freshly built
/// ones. The oracle checks still compare against what the builder would
/// produce.
pub fn verify_scheme_with<T: Scalar>(
    d: &PolygonalDomain<T>,
    epsilon: f64,
    opts: &VerifyOptions,
    tables: Option<Vec<RoutingTable>>,
) -> VerificationReport {
    let domain_json: serde_json::Value =
        serde_json::from_str(&serialize_domain(d)).expect("serialized domain is JSON");
    let mut ctx = Ctx { seed: opts.seed, epsilon, domain_json: &domain_json, checks: Vec::new() };
    let mut stats = ReportStats::default();
    let (n, h) = (d.n(), d.h());

    let t = match cone_count(epsilon) {
        Ok(t) => t,
        Err(e) => {
            ctx.fail_once("cone-count", Locus::default(), e.to_string());
            return finish(ctx, d, epsilon, 0, opts.seed, stats);
        }
    };
    check_cone_count(&mut ctx, epsilon, t);

    let g = build_visibility_graph(d);
    stats.vg_edges = g.edge_count();
    check_visibility(&mut ctx, d, &g, opts);

    let dist = distance_matrix(&g);
    let trees: Vec<_> = (0..n).into_par_iter().map(|s| shortest_path_tree(&g, g.label_of(s))).collect();
    let mut spts = Vec::with_capacity(n);
    for r in trees {
        match r {
            Ok(s) => spts.push(s),
            Err(e) => {
                ctx.fail_once("shortest-paths", Locus::default(), e.to_string());
                return finish(ctx, d, epsilon, t, opts.seed, stats);
            }
        }
    }
    check_shortest_paths(&mut ctx, d, &g, &dist, &spts, opts);

    let compiled = match build_all_tables(d, &g, T::of(epsilon)) {
        Ok(c) => c,
        Err(e) => {
            ctx.fail_once("table-build", Locus::default(), e.to_string());
            return finish(ctx, d, epsilon, t, opts.seed, stats);
        }
    };
    stats.warnings = compiled.warnings.len();
    let tables = tables.unwrap_or(compiled.tables);
    if tables.len() != n || tables.iter().enumerate().any(|(v, tb)| tb.owner != d.label_of(v)) {
        ctx.fail_once("table-build", Locus::default(), "table set does not match the domain's vertices".into());
        return finish(ctx, d, epsilon, t, opts.seed, stats);
    }
    check_tables(&mut ctx, d, &g, &dist, &spts, &tables, t);

    stats.max_entries = tables.iter().map(|tb| tb.entries.len()).max().unwrap_or(0);
    stats.total_entries = tables.iter().map(|tb| tb.entries.len()).sum();
    stats.entry_bits = entry_bits(n, h);
    stats.max_table_bits = tables.iter().map(|tb| table_bits(tb, n, h)).max().unwrap_or(0);
    stats.total_table_bits = tables.iter().map(|tb| table_bits(tb, n, h)).sum();
    stats.label_bits = d.label_bits();
    check_bits(&mut ctx, d, &tables);

    let scheme = RoutingScheme::from_tables(d.clone(), epsilon, t, tables).expect("owners checked above");
    check_routing(&mut ctx, d, &g, &dist, &scheme, opts, &mut stats);

    finish(ctx, d, epsilon, t, opts.seed, stats)
}

fn finish<T: Scalar>(
    ctx: Ctx<'_>,
    d: &PolygonalDomain<T>,
    epsilon: f64,
    t: usize,
    seed: u64,
    stats: ReportStats,
) -> VerificationReport {
    let passed = ctx.checks.iter().all(|c| c.passed);
    VerificationReport { passed, n: d.n(), h: d.h(), epsilon, t, seed, checks: ctx.checks, stats }
}

fn check_cone_count(ctx: &mut Ctx<'_>, epsilon: f64, t: usize) {
    let mut c = ctx.start("cone-count");
    let target = 1.0 / (2.0 * (1.0 + 1.0 / epsilon));
    let pi = std::f64::consts::PI;
    let fits = |t: usize| (pi / t as f64).sin() <= target;
    let minimal = fits(t) && (t <= 2 || !fits(t - 1));
    let bound = cone_count_upper_bound(epsilon);
    ctx.record(&mut c, minimal && t as f64 <= bound, || {
        (Locus::default(), format!("t={t} is not the least count with sin(pi/t) <= {target} under the bound {bound}"))
    });
    ctx.finish(c);
}

fn check_visibility<T: Scalar>(ctx: &mut Ctx<'_>, d: &PolygonalDomain<T>, g: &VisibilityGraph<T>, opts: &VerifyOptions) {
    let mut c = ctx.start("visibility-oracle");
    if d.n() <= opts.visibility_oracle_max_n {
        let oracle = visibility_oracle(d);
        for v in 0..g.n() {
            let got: BTreeSet<usize> = g.neighbors(v).iter().map(|e| e.0).collect();
            let want: BTreeSet<usize> = oracle.neighbors(v).iter().map(|e| e.0).collect();
            ctx.record(&mut c, got == want, || {
                let extra: Vec<_> = got.symmetric_difference(&want).map(|&u| g.label_of(u).to_string()).collect();
                (at(g.label_of(v)), format!("adjacency differs from the oracle at {}", extra.join(", ")))
            });
        }
    }
    ctx.finish(c);

    let mut c = ctx.start("visibility-structure");
    for (a, b) in d.edges() {
        let ok = g.has_edge(d.index_of(a), d.index_of(b));
        ctx.record(&mut c, ok, || (pair(a, b), "boundary edge missing from the visibility graph".into()));
    }
    for v in 0..g.n() {
        for &(u, w) in g.neighbors(v) {
            let (a, b) = (g.label_of(v), g.label_of(u));
            let len = d.point(a).dist(d.point(b)).to_f64_lossy();
            let ok = g.has_edge(u, v) && (w.to_f64_lossy() - len).abs() <= REL_TOL * len;
            ctx.record(&mut c, ok, || (pair(a, b), "edge is one-sided or its weight is not its length".into()));
        }
    }
    ctx.finish(c);
}

fn check_shortest_paths<T: Scalar>(
    ctx: &mut Ctx<'_>,
    d: &PolygonalDomain<T>,
    g: &VisibilityGraph<T>,
    dist: &[Vec<T>],
    spts: &[ShortestPathTree<T>],
    opts: &VerifyOptions,
) {
    let n = g.n();
    let mut c = ctx.start("dijkstra-vs-bellman-ford");
    for (s, spt) in spts.iter().enumerate() {
        for v in 0..n {
            let a = spt.dist_by_index(v).to_f64_lossy();
            let b = dist[s][v].to_f64_lossy();
            ctx.record(&mut c, (a - b).abs() <= REL_TOL * b.max(1.0), || {
                (pair(g.label_of(s), g.label_of(v)), format!("Dijkstra {a} vs Bellman-Ford {b}"))
            });
        }
    }
    ctx.finish(c);

    // A visible vertex is its own first edge.
    let mut c = ctx.start("first-edge-of-visible");
    for (s, spt) in spts.iter().enumerate() {
        for &(v, _) in g.neighbors(s) {
            let ok = spt.first_edge_by_index(v).ok() == Some(v);
            ctx.record(&mut c, ok, || (pair(g.label_of(s), g.label_of(v)), "shortest path to a visible vertex is not direct".into()));
        }
    }
    ctx.finish(c);

    let mut c = ctx.start("spt-non-crossing");
    if n >= 3 && opts.noncrossing_samples > 0 {
        let pts = d.points();
        let mut rng = ChaCha8Rng::seed_from_u64(opts.seed ^ 0x6e6f_6e63);
        for _ in 0..opts.noncrossing_samples {
            let s = rng.gen_range(0..n);
            let a = rng.gen_range(0..n);
            let b = rng.gen_range(0..n);
            if a == s || b == s || a == b {
                continue;
            }
            let ok = tree_paths_disjoint(&pts, &spts[s], a, b);
            ctx.record(&mut c, ok, || {
                (
                    Locus { vertex: Some(g.label_of(s)), pair: Some((g.label_of(a), g.label_of(b))), trace: None },
                    "tree paths to the pair cross".into(),
                )
            });
        }
    }
    ctx.finish(c);
}

/// Per-vertex findings from the table oracles.
#[derive(Default)]
struct VertexFindings {
    interval: Vec<String>,
    coverage: Vec<String>,
    stretched: Vec<String>,
    size: Vec<String>,
    lemma1: Vec<String>,
    lemma1_checked: usize,
    coverage_checked: usize,
}

fn check_tables<T: Scalar>(
    ctx: &mut Ctx<'_>,
    d: &PolygonalDomain<T>,
    g: &VisibilityGraph<T>,
    dist: &[Vec<T>],
    spts: &[ShortestPathTree<T>],
    tables: &[RoutingTable],
    t: usize,
) {
    let h = d.h();
    let shrink = 1.0 - 2.0 * (std::f64::consts::PI / t as f64).sin();
    let findings: Vec<VertexFindings> = (0..d.n())
        .into_par_iter()
        .map(|v| {
            let p = d.label_of(v);
            let mut f = VertexFindings::default();
            let fan = match build_fan(d, p, t) {
                Ok(fan) => fan,
                Err(e) => {
                    f.interval.push(format!("cone fan: {e}"));
                    return f;
                }
            };
            let (sets, nearest) = match (naive_cone_boundary_sets(d, &spts[v], &fan), naive_nearest_per_cone(d, g, &fan)) {
                (Ok(s), Ok(nr)) => (s, nr),
                (Err(e), _) | (_, Err(e)) => {
                    f.interval.push(format!("cone oracle: {e}"));
                    return f;
                }
            };

            let mut want: Vec<(usize, usize, usize, usize, VertexLabel)> = Vec::new();
            for (&(j, i), mask) in &sets {
                match naive_interval_scan(mask) {
                    Some(Some(iv)) => want.push((i, iv.k1, iv.k2, j, nearest[&j])),
                    _ => f.interval.push(format!("cone {j} reaches a non-interval set on boundary {i}")),
                }
            }
            let key = |e: &TableEntry| (e.hole, e.interval.k1, e.interval.k2, e.via);
            let mut got: Vec<_> = tables[v].entries.iter().map(key).collect();
            let mut want_keys: Vec<_> = want.iter().map(|w| (w.0, w.1, w.2, w.4)).collect();
            got.sort();
            want_keys.sort();
            if got != want_keys {
                f.interval.push(format!("built entries {got:?} differ from oracle entries {want_keys:?}"));
            }

            for q in d.labels() {
                let hits = tables[v].covering(q).count();
                let expect = usize::from(q != p);
                f.coverage_checked += 1;
                if hits != expect {
                    f.coverage.push(format!("{q} is covered by {hits} entries"));
                }
            }

            for j in 1..=t {
                let stretched = (0..h)
                    .filter(|&i| {
                        let before = (1..j).any(|a| sets.contains_key(&(a, i)));
                        let after = (j + 1..=t).any(|b| sets.contains_key(&(b, i)));
                        sets.contains_key(&(j, i)) && before && after
                    })
                    .count();
                if stretched > 1 {
                    f.stretched.push(format!("cone {j} has {stretched} stretched boundaries"));
                }
            }

            let len = tables[v].entries.len();
            if len > t + 2 * h {
                f.size.push(format!("{len} entries exceed t + 2h = {}", t + 2 * h));
            }

            let origin = d.point(p);
            for &(u, pq) in g.neighbors(v) {
                let q = g.label_of(u);
                let Ok(j) = fan.cone_index(d.point(q) - origin) else { continue };
                let s = nearest[&j];
                if s == q {
                    continue;
                }
                let ps = origin.dist(d.point(s)).to_f64_lossy();
                let sq = dist[d.index_of(s)][u].to_f64_lossy();
                let bound = pq.to_f64_lossy() - shrink * ps;
                f.lemma1_checked += 1;
                if !rel_le(sq, bound, pq.to_f64_lossy()) {
                    f.lemma1.push(format!("d({s},{q})={sq} exceeds |pq| - (1 - 2 sin(pi/t))|ps| = {bound}"));
                }
            }
            f
        })
        .collect();

    let groups: [(&'static str, fn(&VertexFindings) -> &Vec<String>); 5] = [
        ("interval-oracle", |f| &f.interval),
        ("coverage-partition", |f| &f.coverage),
        ("stretched-boundaries", |f| &f.stretched),
        ("table-size", |f| &f.size),
        ("cone-lemma", |f| &f.lemma1),
    ];
    for (name, get) in groups {
        let mut c = ctx.start(name);
        for (v, f) in findings.iter().enumerate() {
            let found = get(f);
            let per_vertex = match name {
                "coverage-partition" => f.coverage_checked.max(1),
                "cone-lemma" => f.lemma1_checked,
                _ => 1,
            };
            c.checked += per_vertex.saturating_sub(found.len().min(per_vertex));
            for msg in found {
                ctx.record(&mut c, false, || (at(d.label_of(v)), msg.clone()));
            }
        }
        ctx.finish(c);
    }
}

fn check_bits<T: Scalar>(ctx: &mut Ctx<'_>, d: &PolygonalDomain<T>, tables: &[RoutingTable]) {
    let (n, h) = (d.n(), d.h());
    // Independent ceil(log2) through floating point; exact for these sizes.
    let lg = |x: usize| if x <= 1 { 0 } else { (x as f64).log2().ceil() as u64 };
    let mut c = ctx.start("bit-accounting");
    let want_label = lg(h) + lg(n);
    ctx.record(&mut c, u64::from(d.label_bits()) == want_label && u64::from(ceil_log2(n)) == lg(n), || {
        (Locus::default(), format!("label bits {} but formula gives {want_label}", d.label_bits()))
    });
    let mut seen = BTreeSet::new();
    for l in d.labels() {
        let code = ((l.boundary as u64) << lg(n)) | l.vertex as u64;
        let fits = (l.boundary as u64) < (1 << lg(h)).max(1) && (l.vertex as u64) < (1 << lg(n)).max(1);
        ctx.record(&mut c, fits && seen.insert(code), || (at(l), "label does not fit or collides".into()));
    }
    for tb in tables {
        let want = tb.entries.len() as u64 * (2 * lg(h) + 3 * lg(n));
        let got = table_bits(tb, n, h);
        ctx.record(&mut c, got == want, || (at(tb.owner), format!("table bits {got} but formula gives {want}")));
    }
    ctx.finish(c);
}

struct PairOutcome {
    from: VertexLabel,
    to: VertexLabel,
    routed: Result<(Vec<VertexLabel>, f64, usize), String>,
    stretch: f64,
    geodesic: f64,
    bad_step: Option<String>,
    non_edge: Option<(VertexLabel, VertexLabel)>,
}

fn check_routing<T: Scalar>(
    ctx: &mut Ctx<'_>,
    d: &PolygonalDomain<T>,
    g: &VisibilityGraph<T>,
    dist: &[Vec<T>],
    scheme: &RoutingScheme<T>,
    opts: &VerifyOptions,
    stats: &mut ReportStats,
) {
    let n = d.n();
    let eps = scheme.epsilon;
    let pairs: Vec<(usize, usize)> = match opts.pairs {
        PairSelection::One { from, to } => {
            if d.is_valid_label(from) && d.is_valid_label(to) {
                vec![(d.index_of(from), d.index_of(to))]
            } else {
                ctx.fail_once("routing", pair(from, to), "pair is not in the domain".into());
                return;
            }
        }
        PairSelection::All => all_pairs(n),
        PairSelection::Auto if n <= opts.exhaustive_max_n => all_pairs(n),
        PairSelection::Auto => sample_pairs(n, 4 * opts.exhaustive_max_n * opts.exhaustive_max_n, opts.seed),
        PairSelection::Sample { count } => sample_pairs(n, count, opts.seed),
    };

    let outcomes: Vec<PairOutcome> = pairs
        .par_iter()
        .map(|&(a, b)| {
            let (from, to) = (d.label_of(a), d.label_of(b));
            let geodesic = dist[a][b].to_f64_lossy();
            let mut out = PairOutcome { from, to, routed: Err(String::new()), stretch: 1.0, geodesic, bad_step: None, non_edge: None };
            match scheme.route(from, to) {
                Err(e) => out.routed = Err(e.to_string()),
                Ok(tr) => {
                    let total = tr.routing_distance.to_f64_lossy();
                    out.stretch = if geodesic > 0.0 { total / geodesic } else { 1.0 };
                    for (w, len) in tr.path.windows(2).zip(&tr.hop_lengths) {
                        let (cur, next) = (d.index_of(w[0]), d.index_of(w[1]));
                        if out.non_edge.is_none() && !g.has_edge(cur, next) {
                            out.non_edge = Some((w[0], w[1]));
                        }
                        let before = dist[cur][b].to_f64_lossy();
                        let after = dist[next][b].to_f64_lossy();
                        let bound = before - len.to_f64_lossy() / (1.0 + eps);
                        if out.bad_step.is_none() && !rel_le(after, bound, before) {
                            out.bad_step = Some(format!("hop {} -> {}: d(s,q)={after} > d(p,q) - |ps|/(1+eps) = {bound}", w[0], w[1]));
                        }
                    }
                    out.routed = Ok((tr.path.clone(), total, tr.hops()));
                }
            }
            out
        })
        .collect();

    let mut routing = ctx.start("routing");
    let mut stretch = ctx.start("stretch");
    let mut step = ctx.start("per-step-decrease");
    let mut edges = ctx.start("hops-are-edges");
    let mut term = ctx.start("termination");
    for o in &outcomes {
        let trace = o.routed.as_ref().ok().map(|r| r.0.clone());
        let locus = || Locus { vertex: None, pair: Some((o.from, o.to)), trace: trace.clone() };
        match &o.routed {
            Err(e) => {
                ctx.record(&mut routing, false, || (locus(), e.clone()));
                if e.contains("hops") {
                    ctx.record(&mut term, false, || (locus(), e.clone()));
                }
            }
            Ok((_, total, hops)) => {
                ctx.record(&mut routing, true, || unreachable!());
                ctx.record(&mut term, *hops <= n, || (locus(), format!("{hops} hops exceed n = {n}")));
                let limit = (1.0 + eps) * o.geodesic;
                ctx.record(&mut stretch, rel_le(*total, limit, limit), || {
                    (locus(), format!("routing distance {total} exceeds (1+eps) * {} = {limit}", o.geodesic))
                });
                ctx.record(&mut step, o.bad_step.is_none(), || (locus(), o.bad_step.clone().unwrap_or_default()));
                ctx.record(&mut edges, o.non_edge.is_none(), || {
                    let (a, b) = o.non_edge.unwrap();
                    (locus(), format!("hop {a} -> {b} is not a visibility edge"))
                });
                stats.pairs_routed += 1;
                stats.max_hops = stats.max_hops.max(*hops);
                stats.max_stretch = stats.max_stretch.max(o.stretch);
            }
        }
    }
    for c in [routing, stretch, step, edges, term] {
        ctx.finish(c);
    }
}

fn all_pairs(n: usize) -> Vec<(usize, usize)> {
    (0..n).flat_map(|a| (0..n).filter(move |&b| b != a).map(move |b| (a, b))).collect()
}

fn sample_pairs(n: usize, count: usize, seed: u64) -> Vec<(usize, usize)> {
    if n < 2 {
        return Vec::new();
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let a = rng.gen_range(0..n);
            let b = (a + rng.gen_range(1..n)) % n;
            (a, b)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::domain::tests::square;
    use crate::harness::generators::gen_holed_domain;
    use crate::tables::CyclicInterval;

    #[test]
    fn square_passes_with_unit_stretch() {
        let r = verify_scheme(&square(), 1.0, &VerifyOptions::default());
        assert!(r.passed, "{}", r.to_json());
        assert_eq!(r.stats.pairs_routed, 12);
        assert_eq!(r.stats.max_stretch, 1.0);
        assert_eq!(r.stats.max_entries, 3);
        assert_eq!(r.stats.total_table_bits, 4 * 18);
        assert_eq!(r.stats.label_bits, 2);
    }

    #[test]
    fn holed_domain_passes() {
        let d = gen_holed_domain::<f64>(16, 3, 11).unwrap();
        let r = verify_scheme(&d, 0.5, &VerifyOptions::default());
        assert!(r.passed, "{}", r.to_json());
        assert_eq!(r.t, 19);
        assert!(r.stats.max_stretch <= 1.5 * (1.0 + 1e-9));
    }

    #[test]
    fn swapped_interval_endpoints_fail_coverage() {
        let d = crate::visibility::tests::blocked_square();
        let g = build_visibility_graph(&d);
        let mut tables = build_all_tables(&d, &g, 1.0).unwrap().tables;
        let v = tables.iter().position(|tb| tb.entries.iter().any(|e| e.interval.k1 != e.interval.k2)).unwrap();
        let e = tables[v].entries.iter_mut().find(|e| e.interval.k1 != e.interval.k2).unwrap();
        e.interval = CyclicInterval::new(e.interval.k2, e.interval.k1);
        let opts = VerifyOptions { seed: 3, ..Default::default() };
        let r = verify_scheme_with(&d, 1.0, &opts, Some(tables));
        assert!(!r.passed);
        let cov = r.check("coverage-partition").unwrap();
        assert!(!cov.passed);
        let cx = cov.counterexample.as_ref().unwrap();
        assert_eq!(cx.vertex, Some(d.label_of(v)));
        assert_eq!(cx.seed, 3);
        assert_eq!(cx.domain["boundaries"].as_array().unwrap().len(), 2);
    }

    #[test]
    fn reports_are_deterministic() {
        let d = gen_holed_domain::<f64>(12, 2, 4).unwrap();
        let opts = VerifyOptions { pairs: PairSelection::Sample { count: 100 }, seed: 9, ..Default::default() };
        assert_eq!(verify_scheme(&d, 0.5, &opts).to_json(), verify_scheme(&d, 0.5, &opts).to_json());
    }

    #[test]
    fn bad_epsilon_is_a_failed_check() {
        let r = verify_scheme(&square(), 0.0, &VerifyOptions::default());
        assert!(!r.passed);
        assert_eq!(r.checks.len(), 1);
    }
}
