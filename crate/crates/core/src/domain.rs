//! Polygonal domains: boundary chains, vertex labels, base rays and inner
//! angles, plus the JSON domain file format.
//!
//! Every chain is stored so that the domain lies to the left of each directed
//! edge `p(i,k) -> p(i,k+1)`: the outer chain counterclockwise and hole
//! chains clockwise. The base ray at `p(i,k)` therefore always points to
//! `p(i,k-1)`, and the inner angle is the clockwise sweep from there to
//! `p(i,k+1)`.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{
    clockwise_angle, on_open_segment, orient, point_in_ring, point_segment_distance, segments_intersect,
    signed_area2, Orientation, Point,
};
use crate::scalar::Scalar;

/// Identity of a vertex: boundary index and position along that boundary.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(into = "[usize; 2]", from = "[usize; 2]")]
pub struct VertexLabel {
    pub boundary: usize,
    pub vertex: usize,
}

impl VertexLabel {
    pub const fn new(boundary: usize, vertex: usize) -> Self {
        VertexLabel { boundary, vertex }
    }
}

impl From<VertexLabel> for [usize; 2] {
    fn from(l: VertexLabel) -> Self {
        [l.boundary, l.vertex]
    }
}

impl From<[usize; 2]> for VertexLabel {
    fn from(a: [usize; 2]) -> Self {
        VertexLabel::new(a[0], a[1])
    }
}

impl fmt::Display for VertexLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.boundary, self.vertex)
    }
}

impl FromStr for VertexLabel {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (i, k) = s.trim().split_once(':').ok_or_else(|| Error::InvalidLabel(s.to_string()))?;
        let i = i.parse().map_err(|_| Error::InvalidLabel(s.to_string()))?;
        let k = k.parse().map_err(|_| Error::InvalidLabel(s.to_string()))?;
        Ok(VertexLabel::new(i, k))
    }
}

/// Number of bits needed to write values in `0..count`; `ceil_log2(1) == 0`.
pub fn ceil_log2(count: usize) -> u32 {
    if count <= 1 {
        0
    } else {
        usize::BITS - (count - 1).leading_zeros()
    }
}

/// Label width: `ceil(log h) + ceil(log n)` bits.
pub fn label_bits(n: usize, h: usize) -> u32 {
    ceil_log2(h) + ceil_log2(n)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum BoundaryKind {
    Outer,
    Hole,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Boundary<T> {
    pub kind: BoundaryKind,
    pub vertices: Vec<Point<T>>,
}

/// Emitted when a chain arrived in the wrong orientation and was reversed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Notice {
    pub boundary: usize,
    pub kind: BoundaryKind,
}

impl fmt::Display for Notice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let want = match self.kind {
            BoundaryKind::Outer => "counterclockwise",
            BoundaryKind::Hole => "clockwise",
        };
        write!(f, "boundary {} reversed to {} order", self.boundary, want)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct PolygonalDomain<T> {
    boundaries: Vec<Boundary<T>>,
    offsets: Vec<usize>,
}

impl<T: Scalar> PolygonalDomain<T> {
    /// Builds a domain, normalizing chain orientation. Performs the structural
    /// checks (vertex counts, duplicates, outer count) but not `validate`.
    pub fn new(mut boundaries: Vec<Boundary<T>>) -> Result<(Self, Vec<Notice>)> {
        let outers = boundaries.iter().filter(|b| b.kind == BoundaryKind::Outer).count();
        if outers > 1 {
            return Err(Error::MultipleOuter(outers));
        }
        let mut notices = Vec::new();
        for (i, b) in boundaries.iter_mut().enumerate() {
            let m = b.vertices.len();
            if m < 3 {
                return Err(Error::TooFewVertices { boundary: i, count: m });
            }
            if let Some(k) = b.vertices.iter().position(|v| !v.is_finite()) {
                return Err(Error::Syntax { what: "domain", message: format!("non-finite coordinate at {i}:{k}") });
            }
            for k in 0..m {
                if b.vertices[k] == b.vertices[(k + 1) % m] {
                    return Err(Error::DuplicateVertex { boundary: i, vertex: k });
                }
            }
            let area = signed_area2(&b.vertices);
            let wrong = match b.kind {
                BoundaryKind::Outer => area < T::zero(),
                BoundaryKind::Hole => area > T::zero(),
            };
            if wrong {
                b.vertices.reverse();
                notices.push(Notice { boundary: i, kind: b.kind });
            }
        }
        let mut offsets = Vec::with_capacity(boundaries.len() + 1);
        offsets.push(0);
        for b in &boundaries {
            offsets.push(offsets.last().unwrap() + b.vertices.len());
        }
        Ok((PolygonalDomain { boundaries, offsets }, notices))
    }

    pub fn boundaries(&self) -> &[Boundary<T>] {
        &self.boundaries
    }

    /// Total vertex count.
    pub fn n(&self) -> usize {
        *self.offsets.last().unwrap()
    }

    /// Number of boundary chains, the outer chain included.
    pub fn h(&self) -> usize {
        self.boundaries.len()
    }

    pub fn boundary_len(&self, i: usize) -> usize {
        self.boundaries[i].vertices.len()
    }

    pub fn outer(&self) -> Option<&Boundary<T>> {
        self.boundaries.iter().find(|b| b.kind == BoundaryKind::Outer)
    }

    pub fn is_valid_label(&self, l: VertexLabel) -> bool {
        l.boundary < self.h() && l.vertex < self.boundary_len(l.boundary)
    }

    pub fn check_label(&self, l: VertexLabel) -> Result<VertexLabel> {
        if self.is_valid_label(l) {
            Ok(l)
        } else {
            Err(Error::InvalidLabel(l.to_string()))
        }
    }

    /// Dense index in `0..n`.
    pub fn index_of(&self, l: VertexLabel) -> usize {
        self.offsets[l.boundary] + l.vertex
    }

    pub fn label_of(&self, idx: usize) -> VertexLabel {
        let i = self.offsets.partition_point(|&o| o <= idx) - 1;
        VertexLabel::new(i, idx - self.offsets[i])
    }

    pub fn labels(&self) -> impl Iterator<Item = VertexLabel> + '_ {
        self.boundaries
            .iter()
            .enumerate()
            .flat_map(|(i, b)| (0..b.vertices.len()).map(move |k| VertexLabel::new(i, k)))
    }

    pub fn point(&self, l: VertexLabel) -> Point<T> {
        self.boundaries[l.boundary].vertices[l.vertex]
    }

    pub fn points(&self) -> Vec<Point<T>> {
        self.boundaries.iter().flat_map(|b| b.vertices.iter().copied()).collect()
    }

    /// `p(i,k-1)`: clockwise neighbor on the outer chain, counterclockwise
    /// neighbor on a hole chain.
    pub fn prev(&self, l: VertexLabel) -> VertexLabel {
        let m = self.boundary_len(l.boundary);
        VertexLabel::new(l.boundary, (l.vertex + m - 1) % m)
    }

    pub fn next(&self, l: VertexLabel) -> VertexLabel {
        let m = self.boundary_len(l.boundary);
        VertexLabel::new(l.boundary, (l.vertex + 1) % m)
    }

    /// All boundary edges as `(label, label of next)`.
    pub fn edges(&self) -> impl Iterator<Item = (VertexLabel, VertexLabel)> + '_ {
        self.labels().map(move |l| (l, self.next(l)))
    }

    pub fn is_boundary_edge(&self, a: VertexLabel, b: VertexLabel) -> bool {
        a.boundary == b.boundary && (self.next(a) == b || self.next(b) == a)
    }

    pub fn label_bits(&self) -> u32 {
        label_bits(self.n(), self.h())
    }

    /// Closed-region membership by ray casting; points on the boundary get an
    /// arbitrary answer.
    pub fn contains_point(&self, x: Point<T>) -> bool {
        self.boundaries.iter().all(|b| match b.kind {
            BoundaryKind::Outer => point_in_ring(x, &b.vertices),
            BoundaryKind::Hole => !point_in_ring(x, &b.vertices),
        })
    }

    /// Unit direction of the base ray at `v`, pointing at `p(i,k-1)`.
    pub fn base_ray(&self, v: VertexLabel) -> Point<T> {
        (self.point(self.prev(v)) - self.point(v)).unit().expect("validated domain has no duplicate vertices")
    }

    /// Unit direction from `v` toward `p(i,k+1)`.
    pub fn far_ray(&self, v: VertexLabel) -> Point<T> {
        (self.point(self.next(v)) - self.point(v)).unit().expect("validated domain has no duplicate vertices")
    }

    /// True for vertices whose inner angle is below π.
    pub fn is_convex(&self, v: VertexLabel) -> bool {
        orient(self.point(self.prev(v)), self.point(v), self.point(self.next(v))) == Orientation::CounterClockwise
    }

    /// Inner angle at `v`, in `(0, 2π)`. The clockwise sweep from the base ray
    /// must cover the interior; this is checked by stepping a short distance
    /// along the bisector and testing region membership.
    pub fn inner_angle(&self, v: VertexLabel) -> Result<T> {
        let alpha = clockwise_angle(self.base_ray(v), self.far_ray(v))?;
        let p = self.point(v);
        let bisector = self.base_ray(v).rotate_cw(alpha * T::of(0.5));
        let step = self.clearance(v) * T::of(0.25);
        if !self.contains_point(p + bisector * step) {
            return Err(Error::OrientationCorruption {
                label: v,
                message: "clockwise sweep from the base ray leaves the domain".into(),
            });
        }
        Ok(alpha)
    }

    /// Distance from `v` to the nearest boundary feature not incident to it,
    /// capped by its incident edge lengths.
    fn clearance(&self, v: VertexLabel) -> T {
        let p = self.point(v);
        let mut best = p.dist(self.point(self.prev(v))).min(p.dist(self.point(self.next(v))));
        for (a, b) in self.edges() {
            if a == v || b == v {
                continue;
            }
            best = best.min(point_segment_distance(p, self.point(a), self.point(b)));
        }
        best
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    SelfIntersection { boundary: usize, edges: (usize, usize) },
    ChainIntersection { a: (usize, usize), b: (usize, usize) },
    HoleOutsideOuter { hole: usize },
    NestedChain { inner: usize, outer: usize },
    CollinearTriple([VertexLabel; 3]),
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::SelfIntersection { boundary, edges } => {
                write!(f, "boundary {boundary}: edges {} and {} intersect", edges.0, edges.1)
            }
            Violation::ChainIntersection { a, b } => {
                write!(f, "edge {}:{} intersects edge {}:{}", a.0, a.1, b.0, b.1)
            }
            Violation::HoleOutsideOuter { hole } => write!(f, "hole {hole} is not inside the outer boundary"),
            Violation::NestedChain { inner, outer } => write!(f, "boundary {inner} lies inside hole {outer}"),
            Violation::CollinearTriple([a, b, c]) => write!(f, "vertices {a}, {b}, {c} are collinear"),
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_ok(&self) -> bool {
        self.violations.is_empty()
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.violations.is_empty() {
            return write!(f, "ok");
        }
        for (idx, v) in self.violations.iter().enumerate() {
            if idx > 0 {
                writeln!(f)?;
            }
            write!(f, "{v}")?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy)]
pub struct ValidateOptions {
    /// Exhaustive O(n^3) scan for collinear vertex triples.
    pub check_collinear: bool,
}

impl Default for ValidateOptions {
    fn default() -> Self {
        ValidateOptions { check_collinear: true }
    }
}

const MAX_REPORTED_TRIPLES: usize = 256;

pub fn validate<T: Scalar>(d: &PolygonalDomain<T>, opts: ValidateOptions) -> ValidationReport {
    let mut violations = Vec::new();
    let bs = d.boundaries();

    for (i, b) in bs.iter().enumerate() {
        let m = b.vertices.len();
        let v = &b.vertices;
        for e in 0..m {
            for f in e + 1..m {
                let (a0, a1) = (v[e], v[(e + 1) % m]);
                let (b0, b1) = (v[f], v[(f + 1) % m]);
                let hit = if (e + 1) % m == f {
                    on_open_segment(b1, a0, a1) || on_open_segment(a0, b0, b1)
                } else if (f + 1) % m == e {
                    on_open_segment(a1, b0, b1) || on_open_segment(b0, a0, a1)
                } else {
                    segments_intersect((a0, a1), (b0, b1))
                };
                if hit {
                    violations.push(Violation::SelfIntersection { boundary: i, edges: (e, f) });
                }
            }
        }
    }

    for i in 0..bs.len() {
        for j in i + 1..bs.len() {
            let (vi, vj) = (&bs[i].vertices, &bs[j].vertices);
            'pairs: for e in 0..vi.len() {
                for f in 0..vj.len() {
                    let s1 = (vi[e], vi[(e + 1) % vi.len()]);
                    let s2 = (vj[f], vj[(f + 1) % vj.len()]);
                    if segments_intersect(s1, s2) {
                        violations.push(Violation::ChainIntersection { a: (i, e), b: (j, f) });
                        break 'pairs;
                    }
                }
            }
        }
    }

    let outer = bs.iter().position(|b| b.kind == BoundaryKind::Outer);
    for (i, b) in bs.iter().enumerate() {
        if b.kind != BoundaryKind::Hole {
            continue;
        }
        if let Some(o) = outer {
            if !point_in_ring(b.vertices[0], &bs[o].vertices) {
                violations.push(Violation::HoleOutsideOuter { hole: i });
            }
        }
        for (j, other) in bs.iter().enumerate() {
            if j != i && other.kind == BoundaryKind::Hole && point_in_ring(b.vertices[0], &other.vertices) {
                violations.push(Violation::NestedChain { inner: i, outer: j });
            }
        }
    }

    if opts.check_collinear {
        let labels: Vec<_> = d.labels().collect();
        let pts = d.points();
        let n = pts.len();
        let mut found = 0;
        for a in 0..n {
            for b in a + 1..n {
                for c in b + 1..n {
                    if orient(pts[a], pts[b], pts[c]) == Orientation::Collinear {
                        found += 1;
                        if found <= MAX_REPORTED_TRIPLES {
                            violations.push(Violation::CollinearTriple([labels[a], labels[b], labels[c]]));
                        }
                    }
                }
            }
        }
    }

    ValidationReport { violations }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
struct BoundaryFile {
    kind: BoundaryKind,
    vertices: Vec<[f64; 2]>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub(crate) struct DomainFile {
    boundaries: Vec<BoundaryFile>,
}

impl DomainFile {
    pub(crate) fn from_domain<T: Scalar>(d: &PolygonalDomain<T>) -> Self {
        DomainFile {
            boundaries: d
                .boundaries()
                .iter()
                .map(|b| BoundaryFile {
                    kind: b.kind,
                    vertices: b.vertices.iter().map(|p| [p.x.to_f64_lossy(), p.y.to_f64_lossy()]).collect(),
                })
                .collect(),
        }
    }

    pub(crate) fn into_domain<T: Scalar>(self) -> Result<(PolygonalDomain<T>, Vec<Notice>)> {
        let boundaries = self
            .boundaries
            .into_iter()
            .map(|b| Boundary { kind: b.kind, vertices: b.vertices.iter().map(|&[x, y]| Point::new(T::of(x), T::of(y))).collect() })
            .collect();
        PolygonalDomain::new(boundaries)
    }

    /// Deterministic text layout, one vertex per line.
    pub(crate) fn write(&self, out: &mut String, indent: &str) {
        out.push_str("{\n");
        out.push_str(&format!("{indent}  \"boundaries\": [\n"));
        for (bi, b) in self.boundaries.iter().enumerate() {
            let kind = match b.kind {
                BoundaryKind::Outer => "outer",
                BoundaryKind::Hole => "hole",
            };
            out.push_str(&format!("{indent}    {{\n{indent}      \"kind\": \"{kind}\",\n{indent}      \"vertices\": [\n"));
            for (vi, [x, y]) in b.vertices.iter().enumerate() {
                let sep = if vi + 1 < b.vertices.len() { "," } else { "" };
                out.push_str(&format!("{indent}        [{}, {}]{sep}\n", fmt_num(*x), fmt_num(*y)));
            }
            let sep = if bi + 1 < self.boundaries.len() { "," } else { "" };
            out.push_str(&format!("{indent}      ]\n{indent}    }}{sep}\n"));
        }
        out.push_str(&format!("{indent}  ]\n{indent}}}"));
    }
}

pub(crate) fn fmt_num(x: f64) -> String {
    serde_json::Number::from_f64(x).map(|n| n.to_string()).unwrap_or_else(|| "null".into())
}

/// A parsed and validated domain together with any orientation fix-ups.
#[derive(Debug, Clone)]
pub struct ParsedDomain<T> {
    pub domain: PolygonalDomain<T>,
    pub notices: Vec<Notice>,
}

pub fn parse_domain<T: Scalar>(text: &str) -> Result<ParsedDomain<T>> {
    parse_domain_with(text, ValidateOptions::default())
}

pub fn parse_domain_with<T: Scalar>(text: &str, opts: ValidateOptions) -> Result<ParsedDomain<T>> {
    let file: DomainFile =
        serde_json::from_str(text).map_err(|e| Error::Syntax { what: "domain file", message: e.to_string() })?;
    let (domain, notices) = file.into_domain()?;
    let report = validate(&domain, opts);
    if !report.is_ok() {
        return Err(Error::Validation(report.to_string()));
    }
    Ok(ParsedDomain { domain, notices })
}

pub fn serialize_domain<T: Scalar>(d: &PolygonalDomain<T>) -> String {
    let mut out = String::new();
    DomainFile::from_domain(d).write(&mut out, "");
    out.push('\n');
    out
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;
    use std::f64::consts::{FRAC_PI_2, FRAC_PI_3, PI, TAU};

    pub(crate) fn ring(pts: &[(f64, f64)]) -> Vec<Point<f64>> {
        pts.iter().map(|&(x, y)| Point::new(x, y)).collect()
    }

    pub(crate) fn square() -> PolygonalDomain<f64> {
        PolygonalDomain::new(vec![Boundary {
            kind: BoundaryKind::Outer,
            vertices: ring(&[(0., 0.), (1., 0.), (1., 1.), (0., 1.)]),
        }])
        .unwrap()
        .0
    }

    const SQUARE_JSON: &str = r#"{"boundaries":[{"kind":"outer","vertices":[[0,0],[1,0],[1,1],[0,1]]}]}"#;

    #[test]
    fn parse_unit_square() {
        let p = parse_domain::<f64>(SQUARE_JSON).unwrap();
        assert_eq!((p.domain.h(), p.domain.n()), (1, 4));
        assert!(p.notices.is_empty());
    }

    #[test]
    fn parse_clockwise_square_normalizes() {
        let cw = r#"{"boundaries":[{"kind":"outer","vertices":[[0,1],[1,1],[1,0],[0,0]]}]}"#;
        let p = parse_domain::<f64>(cw).unwrap();
        assert_eq!(p.notices, vec![Notice { boundary: 0, kind: BoundaryKind::Outer }]);
        assert!(signed_area2(&p.domain.boundaries()[0].vertices) > 0.0);
    }

    #[test]
    fn parse_ccw_hole_is_reversed() {
        let text = r#"{"boundaries":[
            {"kind":"outer","vertices":[[0,0],[10,0],[10,10],[0,10]]},
            {"kind":"hole","vertices":[[3,2],[7,4],[4,7]]}]}"#;
        let p = parse_domain::<f64>(text).unwrap();
        assert_eq!((p.domain.h(), p.domain.n()), (2, 7));
        assert_eq!(p.notices, vec![Notice { boundary: 1, kind: BoundaryKind::Hole }]);
        assert!(signed_area2(&p.domain.boundaries()[1].vertices) < 0.0);
    }

    #[test]
    fn parse_errors() {
        assert!(matches!(parse_domain::<f64>("{"), Err(Error::Syntax { .. })));
        let two = r#"{"boundaries":[{"kind":"outer","vertices":[[0,0],[1,0]]}]}"#;
        assert!(matches!(parse_domain::<f64>(two), Err(Error::TooFewVertices { .. })));
        let dup = r#"{"boundaries":[{"kind":"outer","vertices":[[0,0],[1,0],[1,0],[0,1]]}]}"#;
        assert!(matches!(parse_domain::<f64>(dup), Err(Error::DuplicateVertex { boundary: 0, vertex: 1 })));
        let two_outer = r#"{"boundaries":[
            {"kind":"outer","vertices":[[0,0],[1,0],[0,1]]},
            {"kind":"outer","vertices":[[5,5],[6,5],[5,6]]}]}"#;
        assert!(matches!(parse_domain::<f64>(two_outer), Err(Error::MultipleOuter(2))));
    }

    #[test]
    fn validate_reports() {
        assert!(validate(&square(), ValidateOptions::default()).is_ok());

        let notched = PolygonalDomain::new(vec![Boundary {
            kind: BoundaryKind::Outer,
            vertices: ring(&[(0., 0.), (0.5, 0.), (1., 0.), (1., 1.), (0., 1.)]),
        }])
        .unwrap()
        .0;
        let r = validate(&notched, ValidateOptions::default());
        assert!(r.violations.contains(&Violation::CollinearTriple([
            VertexLabel::new(0, 0),
            VertexLabel::new(0, 1),
            VertexLabel::new(0, 2)
        ])));
        assert!(validate(&notched, ValidateOptions { check_collinear: false }).is_ok());

        let overlapping = PolygonalDomain::new(vec![
            Boundary { kind: BoundaryKind::Hole, vertices: ring(&[(0., 0.), (0., 2.), (2., 2.), (2., 0.)]) },
            Boundary { kind: BoundaryKind::Hole, vertices: ring(&[(1., 1.), (1., 3.), (3., 3.), (3., 1.)]) },
        ])
        .unwrap()
        .0;
        let r = validate(&overlapping, ValidateOptions { check_collinear: false });
        assert!(r.violations.iter().any(|v| matches!(v, Violation::ChainIntersection { .. })));
    }

    #[test]
    fn validate_catches_bowtie_and_bad_nesting() {
        let bowtie = PolygonalDomain::new(vec![Boundary {
            kind: BoundaryKind::Outer,
            vertices: ring(&[(0., 0.), (2., 2.), (2., 0.), (0., 2.)]),
        }])
        .unwrap()
        .0;
        let r = validate(&bowtie, ValidateOptions { check_collinear: false });
        assert!(r.violations.iter().any(|v| matches!(v, Violation::SelfIntersection { .. })));

        let outside = PolygonalDomain::new(vec![
            Boundary { kind: BoundaryKind::Outer, vertices: ring(&[(0., 0.), (4., 0.), (4., 4.), (0., 4.)]) },
            Boundary { kind: BoundaryKind::Hole, vertices: ring(&[(10., 10.), (10., 11.), (11., 10.)]) },
        ])
        .unwrap()
        .0;
        let r = validate(&outside, ValidateOptions { check_collinear: false });
        assert_eq!(r.violations, vec![Violation::HoleOutsideOuter { hole: 1 }]);
    }

    #[test]
    fn base_ray_follows_neighbor_rule() {
        let d = square();
        let r = d.base_ray(VertexLabel::new(0, 0));
        assert!((r.x - 0.0).abs() < 1e-15 && (r.y - 1.0).abs() < 1e-15);
        let r = d.base_ray(VertexLabel::new(0, 1));
        assert!((r.x + 1.0).abs() < 1e-15 && r.y.abs() < 1e-15);

        let holed = parse_domain::<f64>(
            r#"{"boundaries":[
            {"kind":"outer","vertices":[[0,0],[10,0],[10,10],[0,10]]},
            {"kind":"hole","vertices":[[3,2],[4,7],[7,4]]}]}"#,
        )
        .unwrap()
        .domain;
        // Holes are clockwise, so p(i,k-1) is the counterclockwise neighbor.
        for k in 0..3 {
            let v = VertexLabel::new(1, k);
            let p = holed.point(v);
            let ccw_neighbor = holed.point(holed.prev(v));
            let after = holed.point(holed.next(v));
            assert_eq!(orient(ccw_neighbor, p, after), Orientation::Clockwise);
            let r = holed.base_ray(v);
            let want = (ccw_neighbor - p).unit().unwrap();
            assert!((r - want).norm() < 1e-15);
        }
    }

    #[test]
    fn inner_angles() {
        let d = square();
        let a = d.inner_angle(VertexLabel::new(0, 0)).unwrap();
        assert!((a - FRAC_PI_2).abs() < 1e-12);

        let tri = PolygonalDomain::new(vec![Boundary {
            kind: BoundaryKind::Outer,
            vertices: ring(&[(0., 0.), (2., 0.), (1., 3f64.sqrt())]),
        }])
        .unwrap()
        .0;
        for k in 0..3 {
            assert!((tri.inner_angle(VertexLabel::new(0, k)).unwrap() - FRAC_PI_3).abs() < 1e-12);
        }

        // Square with a notch poking in from the top edge.
        let notch = PolygonalDomain::new(vec![Boundary {
            kind: BoundaryKind::Outer,
            vertices: ring(&[(0., 0.), (4., 0.), (4., 4.), (2.5, 4.), (2.1, 1.3), (1.7, 4.), (0., 4.)]),
        }])
        .unwrap()
        .0;
        let v = VertexLabel::new(0, 4);
        let alpha = notch.inner_angle(v).unwrap();
        assert!(alpha > PI);
        // Brute-force: sample the sector bisector and the opposite direction.
        let p = notch.point(v);
        let bis = notch.base_ray(v).rotate_cw(alpha / 2.0);
        assert!(notch.contains_point(p + bis * 0.01));
        assert!(!notch.contains_point(p - bis * 0.01));
    }

    #[test]
    fn inner_angle_detects_corrupted_orientation() {
        // Build a hole-free domain whose outer ring is clockwise by bypassing
        // normalization.
        let d = PolygonalDomain {
            boundaries: vec![Boundary { kind: BoundaryKind::Outer, vertices: ring(&[(0., 1.), (1., 1.), (1., 0.), (0., 0.)]) }],
            offsets: vec![0, 4],
        };
        assert!(matches!(d.inner_angle(VertexLabel::new(0, 0)), Err(Error::OrientationCorruption { .. })));
    }

    #[test]
    fn angle_sum_identity() {
        let text = r#"{"boundaries":[
            {"kind":"outer","vertices":[[0,0],[131,9],[122,113],[61,79],[8,121]]},
            {"kind":"hole","vertices":[[31,29],[52,61],[71,38]]},
            {"kind":"hole","vertices":[[92,31],[101,72],[113,43],[99,19]]}]}"#;
        let d = parse_domain::<f64>(text).unwrap().domain;
        for (i, b) in d.boundaries().iter().enumerate() {
            let s: f64 = (0..b.vertices.len())
                .map(|k| PI - d.inner_angle(VertexLabel::new(i, k)).unwrap())
                .sum();
            let want = if b.kind == BoundaryKind::Outer { TAU } else { -TAU };
            assert!((s - want).abs() < 1e-9, "boundary {i}: {s}");
        }
    }

    #[test]
    fn labels_and_bits() {
        assert_eq!(ceil_log2(1), 0);
        assert_eq!(ceil_log2(2), 1);
        assert_eq!(ceil_log2(4), 2);
        assert_eq!(ceil_log2(5), 3);
        assert_eq!(label_bits(4, 1), 2);
        assert_eq!(label_bits(7, 2), 4);
        let d = square();
        let labels: Vec<_> = d.labels().collect();
        for (idx, l) in labels.iter().enumerate() {
            assert_eq!(d.index_of(*l), idx);
            assert_eq!(d.label_of(idx), *l);
        }
        assert_eq!("3:14".parse::<VertexLabel>().unwrap(), VertexLabel::new(3, 14));
        assert!("3-14".parse::<VertexLabel>().is_err());
        assert_eq!(VertexLabel::new(2, 5).to_string(), "2:5");
    }

    #[test]
    fn serialize_round_trip() {
        let text = serialize_domain(&square());
        let back = parse_domain::<f64>(&text).unwrap().domain;
        assert_eq!(back, square());
        assert_eq!(serialize_domain(&back), text);
    }
}
