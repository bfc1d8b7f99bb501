//! Seeded instance generators. All coordinates are integers, so orientation
//! tests on generated domains are exact.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::cones::{build_fan, cone_count};
use crate::domain::{validate, Boundary, BoundaryKind, PolygonalDomain, VertexLabel};
use crate::error::{Error, Result};
use crate::geometry::{clockwise_angle, Point};
use crate::scalar::Scalar;
use crate::shortest_paths::shortest_path_tree;
use crate::visibility::build_visibility_graph;

const RADIUS: f64 = 10_000.0;
const MAX_ATTEMPTS: usize = 1_000;

fn pt<T: Scalar>(x: f64, y: f64) -> Point<T> {
    Point::new(T::of(x.round()), T::of(y.round()))
}

fn accept<T: Scalar>(boundaries: Vec<Boundary<T>>) -> Option<PolygonalDomain<T>> {
    let (d, _) = PolygonalDomain::new(boundaries).ok()?;
    validate(&d, Default::default()).is_ok().then_some(d)
}

/// Simple polygon on `n` random points sorted by angle around their centroid.
pub fn gen_star_polygon<T: Scalar>(n: usize, seed: u64) -> Result<PolygonalDomain<T>> {
    if n < 3 {
        return Err(Error::Generator(format!("a polygon needs at least 3 vertices, got {n}")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..MAX_ATTEMPTS {
        let raw: Vec<(f64, f64)> = (0..n)
            .map(|_| {
                let a = rng.gen_range(0.0..std::f64::consts::TAU);
                let r = rng.gen_range(0.5 * RADIUS..RADIUS);
                ((r * a.cos()).round(), (r * a.sin()).round())
            })
            .collect();
        let cx = raw.iter().map(|p| p.0).sum::<f64>() / n as f64;
        let cy = raw.iter().map(|p| p.1).sum::<f64>() / n as f64;
        let mut keyed: Vec<(f64, (f64, f64))> = raw.iter().map(|&(x, y)| ((y - cy).atan2(x - cx), (x, y))).collect();
        keyed.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap());
        let vertices = keyed.iter().map(|&(_, (x, y))| pt(x, y)).collect();
        if let Some(d) = accept(vec![Boundary { kind: BoundaryKind::Outer, vertices }]) {
            return Ok(d);
        }
    }
    Err(Error::Generator(format!("no valid star polygon with n={n} after {MAX_ATTEMPTS} attempts")))
}

/// Convex outer polygon with `holes` small convex holes on a jittered grid.
pub fn gen_holed_domain<T: Scalar>(n_outer: usize, holes: usize, seed: u64) -> Result<PolygonalDomain<T>> {
    if holes == 0 {
        return Err(Error::Generator("a holed domain needs at least one hole".into()));
    }
    if n_outer < 3 {
        return Err(Error::Generator(format!("outer boundary needs at least 3 vertices, got {n_outer}")));
    }
    let grid = (holes as f64).sqrt().ceil() as usize;
    let half_side = 0.6 * RADIUS * (std::f64::consts::PI / n_outer as f64).cos();
    let cell = 2.0 * half_side / grid as f64;
    if cell < 200.0 {
        return Err(Error::Generator(format!("cannot pack {holes} holes into an {n_outer}-gon")));
    }

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let tau = std::f64::consts::TAU;
    for _ in 0..MAX_ATTEMPTS {
        let outer: Vec<Point<T>> = (0..n_outer)
            .map(|k| {
                let a = tau * (k as f64 + rng.gen_range(-0.3..0.3)) / n_outer as f64;
                let r = RADIUS * rng.gen_range(0.95..1.0);
                pt(r * a.cos(), r * a.sin())
            })
            .collect();
        let mut boundaries = vec![Boundary { kind: BoundaryKind::Outer, vertices: outer }];
        for h in 0..holes {
            let (gx, gy) = (h % grid, h / grid);
            let cx = -half_side + cell * (gx as f64 + 0.5 + rng.gen_range(-0.15..0.15));
            let cy = -half_side + cell * (gy as f64 + 0.5 + rng.gen_range(-0.15..0.15));
            let r = cell * rng.gen_range(0.15..0.3);
            let m = rng.gen_range(3..=5);
            let mut angles: Vec<f64> =
                (0..m).map(|k| tau * (k as f64 + rng.gen_range(-0.3..0.3)) / m as f64).collect();
            angles.sort_by(|a, b| a.partial_cmp(b).unwrap());
            // Holes are stored clockwise.
            let vertices = angles.iter().rev().map(|a| pt(cx + r * a.cos(), cy + r * a.sin())).collect();
            boundaries.push(Boundary { kind: BoundaryKind::Hole, vertices });
        }
        if let Some(d) = accept(boundaries) {
            return Ok(d);
        }
    }
    Err(Error::Generator(format!("no valid domain with {holes} holes after {MAX_ATTEMPTS} attempts")))
}

/// A spire polygon together with its designated endpoints.
#[derive(Debug, Clone)]
pub struct SpireInstance<T> {
    pub domain: PolygonalDomain<T>,
    pub p: VertexLabel,
    pub q: VertexLabel,
    /// Cone count the geometry was tuned for.
    pub t: usize,
}

/// Spire polygon tuned for `epsilon = 1`.
pub fn gen_spire_polygon<T: Scalar>(m: usize) -> Result<SpireInstance<T>> {
    gen_spire_polygon_for(m, cone_count(1.0f64)?)
}

/// Polygon where `p` sees `q`, but `m` thin spires hang from the ceiling with
/// their tips on a concave arc just above segment `pq`; the last tip is `q`.
/// Every tip sees the next tip and `q` inside one cone, with the next tip the
/// closest vertex there, so routing from `p` visits each spire in turn.
pub fn gen_spire_polygon_for<T: Scalar>(m: usize, t: usize) -> Result<SpireInstance<T>> {
    if m < 2 {
        return Err(Error::Generator(format!("need at least 2 spires, got {m}")));
    }
    let spacing = 10_000.0;
    let rise = 10.0;
    let half_width = 150.0;
    let tips: Vec<(f64, f64)> =
        (1..=m).map(|i| (i as f64 * spacing, rise * (i * (m + 1 - i)) as f64)).collect();
    let top = tips.iter().map(|t| t.1).fold(0.0, f64::max);
    let ceiling = top + spacing;
    let q_dir = (tips[m - 1].0, tips[m - 1].1);

    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0000 ^ ((m as u64) << 16) ^ t as u64);
    for _ in 0..MAX_ATTEMPTS {
        let mut jitter = || rng.gen_range(0.0..60.0f64).round();

        // Corner at p: inner angle of a right angle, with the direction to q
        // in the middle of a cone.
        let right = std::f64::consts::FRAC_PI_2;
        let theta_q = q_dir.1.atan2(q_dir.0);
        let j_mid = (t / 2) as f64;
        let theta_base = theta_q + (j_mid + 0.5) * right / t as f64;
        let arm = 0.4 * spacing;
        let c0 = (arm * theta_base.cos(), arm * theta_base.sin());
        let b1 = (arm * (theta_base - right).cos(), arm * (theta_base - right).sin());
        let c1 = (c0.0 - 500.0 - jitter(), ceiling - 200.0 + jitter());
        let b2 = ((m + 1) as f64 * spacing + jitter(), b1.1 - jitter());
        let r = ((m + 1) as f64 * spacing + 300.0 + jitter(), ceiling + 400.0 + jitter());

        // Ceiling vertices of each spire; the lean is tuned per spire.
        let mut spires: Vec<((f64, f64), (f64, f64), (f64, f64))> = Vec::with_capacity(m);
        for (i, &tip) in tips.iter().enumerate() {
            let (yl, yr) = (ceiling + jitter(), ceiling + jitter());
            let lean = if i + 1 < m { best_lean(tip, tips[i + 1], q_dir, yl, yr, half_width, spacing, t) } else { 0.0 };
            let sl = ((tip.0 + lean - half_width).round(), yl);
            let sr = ((tip.0 + lean + half_width).round(), yr);
            spires.push((sr, tip, sl));
        }

        let mut verts: Vec<(f64, f64)> = vec![(0.0, 0.0), b1, b2, r];
        for &(sr, tip, sl) in spires.iter().rev() {
            verts.extend([sr, tip, sl]);
        }
        verts.extend([c1, c0]);
        let vertices: Vec<Point<T>> = verts.iter().map(|&(x, y)| pt(x, y)).collect();
        let Some(domain) = accept(vec![Boundary { kind: BoundaryKind::Outer, vertices }]) else {
            continue;
        };
        let p = VertexLabel::new(0, 0);
        // Tip of spire i sits at 4 + 3 (m - 1 - i) + 1.
        let tip_label = |i: usize| VertexLabel::new(0, 4 + 3 * (m - 1 - i) + 1);
        let q = tip_label(m - 1);
        let chain: Vec<VertexLabel> = std::iter::once(p).chain((0..m).map(tip_label)).collect();
        if spire_chain_holds(&domain, &chain, t)? {
            return Ok(SpireInstance { domain, p, q, t });
        }
    }
    Err(Error::Generator(format!("could not tune a {m}-spire polygon for {t} cones")))
}

/// Lean offset that puts the directions from `tip` to `next` and to `q` in
/// the same cone, as far from the cone's bounding rays as possible.
#[allow(clippy::too_many_arguments)]
fn best_lean(
    tip: (f64, f64),
    next: (f64, f64),
    q: (f64, f64),
    yl: f64,
    yr: f64,
    half_width: f64,
    spacing: f64,
    t: usize,
) -> f64 {
    let dir = |to: (f64, f64)| Point::new(to.0 - tip.0, to.1 - tip.1);
    let mut best = (f64::NEG_INFINITY, 0.0);
    for step in -35..=35 {
        let lean = step as f64 * spacing / 100.0;
        let sr = Point::new((tip.0 + lean + half_width).round() - tip.0, yr - tip.1);
        let sl = Point::new((tip.0 + lean - half_width).round() - tip.0, yl - tip.1);
        let alpha = clockwise_angle(sr, sl).unwrap();
        let w = alpha / t as f64;
        let pos = |to| clockwise_angle(sr, dir(to)).unwrap() / w;
        let (a, b) = (pos(next), pos(q));
        if a.floor() != b.floor() {
            continue;
        }
        let margin = [a, b].iter().map(|x| (x - x.floor()).min(1.0 - (x - x.floor()))).fold(f64::INFINITY, f64::min);
        if margin > best.0 {
            best = (margin, lean);
        }
    }
    best.1
}

/// Along the chain `p, tip_1, ..., tip_m`, each vertex must see `q`, and the
/// next vertex must be the closest visible vertex in the cone holding `q`.
fn spire_chain_holds<T: Scalar>(d: &PolygonalDomain<T>, chain: &[VertexLabel], t: usize) -> Result<bool> {
    let g = build_visibility_graph(d);
    let q = *chain.last().unwrap();
    for w in chain.windows(2) {
        let (cur, next) = (w[0], w[1]);
        let ci = d.index_of(cur);
        if !g.has_edge(ci, d.index_of(q)) {
            return Ok(false);
        }
        let fan = build_fan(d, cur, t)?;
        let origin = d.point(cur);
        let jq = fan.cone_index(d.point(q) - origin)?;
        let spt = shortest_path_tree(&g, cur)?;
        let nearest = spt
            .source_children()
            .into_iter()
            .filter(|&c| fan.cone_index(d.point(c) - origin).map(|j| j == jq).unwrap_or(false))
            .min_by(|a, b| origin.dist(d.point(*a)).partial_cmp(&origin.dist(d.point(*b))).unwrap());
        if nearest != Some(next) {
            return Ok(false);
        }
    }
    Ok(true)
}
