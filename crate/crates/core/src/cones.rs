//! Cone fans at polygon vertices.
//!
//! The inner angle `alpha` at a vertex is split into `t` cones of opening
//! `alpha / t` by rotating the base ray clockwise. Cone `j` (1-based) spans
//! the rays `r_{j-1}` and `r_j`; it owns `r_{j-1}` and not `r_j`, except that
//! the last cone also owns `r_t`.

use crate::domain::{PolygonalDomain, VertexLabel};
use crate::error::{Error, Result};
use crate::geometry::{clockwise_angle, Point};
use crate::scalar::Scalar;

/// Number of cones for stretch `1 + epsilon`:
/// `t = ceil(pi / asin(1 / (2 (1 + 1/epsilon))))`.
pub fn cone_count<T: Scalar>(epsilon: T) -> Result<usize> {
    if !(epsilon > T::zero()) || !epsilon.is_finite() {
        return Err(Error::InvalidEpsilon(epsilon.to_f64_lossy()));
    }
    let two = T::of(2.0);
    let half_sine = T::one() / (two * (T::one() + T::one() / epsilon));
    let t = (T::PI() / half_sine.asin()).ceil();
    let t = t.to_usize().ok_or(Error::InvalidEpsilon(epsilon.to_f64_lossy()))?;
    debug_assert!(t >= 6, "cone count below the epsilon -> infinity limit");
    debug_assert!(
        (t as f64) <= cone_count_upper_bound(epsilon.to_f64_lossy()) + 1e-9,
        "cone count exceeds 2 pi (1 + 1/eps) + 1"
    );
    Ok(t)
}

/// Closed-form upper bound `2 pi (1 + 1/epsilon) + 1` on [`cone_count`].
pub fn cone_count_upper_bound(epsilon: f64) -> f64 {
    std::f64::consts::TAU * (1.0 + 1.0 / epsilon) + 1.0
}

#[derive(Debug, Clone, PartialEq)]
pub struct ConeFan<T> {
    pub apex: VertexLabel,
    pub t: usize,
    pub alpha: T,
    pub base_dir: Point<T>,
    /// `r_0 ..= r_t`.
    pub rays: Vec<Point<T>>,
}

pub fn build_fan<T: Scalar>(d: &PolygonalDomain<T>, p: VertexLabel, t: usize) -> Result<ConeFan<T>> {
    assert!(t >= 3, "a cone fan needs at least three cones");
    let alpha = d.inner_angle(p)?;
    let base_dir = d.base_ray(p);
    let step = alpha / T::of(t as f64);
    let rays: Vec<Point<T>> = (0..=t).map(|j| base_dir.rotate_cw(step * T::of(j as f64))).collect();

    let miss = clockwise_angle(rays[t], d.far_ray(p))?;
    let miss = miss.min(T::TAU() - miss);
    if miss > T::sector_tol() {
        return Err(Error::OrientationCorruption {
            label: p,
            message: format!("last ray misses the far neighbor by {miss} rad"),
        });
    }
    Ok(ConeFan { apex: p, t, alpha, base_dir, rays })
}

impl<T: Scalar> ConeFan<T> {
    /// Opening angle of each cone.
    pub fn width(&self) -> T {
        self.alpha / T::of(self.t as f64)
    }

    /// 1-based index of the cone containing direction `dir`.
    pub fn cone_index(&self, dir: Point<T>) -> Result<usize> {
        let tau = T::TAU();
        let mut phi = clockwise_angle(self.base_dir, dir)?;
        if tau - phi <= T::angle_tol() {
            phi = T::zero();
        }
        if phi > self.alpha + T::sector_tol() {
            return Err(Error::OutsideSector(self.apex));
        }
        let w = self.width();
        let t = self.t;
        let nearest = (phi / w).round();
        let j = if (phi - nearest * w).abs() <= T::angle_tol() {
            // On ray r_m: it belongs to cone m + 1.
            nearest.to_usize().unwrap_or(0) + 1
        } else {
            (phi / w).floor().to_usize().unwrap_or(0) + 1
        };
        Ok(j.clamp(1, t))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::domain::tests::square;
    use crate::domain::{Boundary, BoundaryKind};
    use proptest::prelude::*;
    use std::f64::consts::{FRAC_PI_2, PI};

    /// Independent evaluation of the defining formula, via the half-angle
    /// bisection `sin(pi / t) <= 1 / (2 (1 + 1/eps))`.
    fn smallest_t_by_search(eps: f64) -> usize {
        let s = 1.0 / (2.0 * (1.0 + 1.0 / eps));
        (3..100_000).find(|&t| (PI / t as f64).sin() <= s).unwrap()
    }

    #[test]
    fn cone_count_reference_values() {
        assert_eq!(cone_count(1.0f64).unwrap(), 13);
        assert_eq!(cone_count(0.5f64).unwrap(), 19);
        assert_eq!(cone_count(0.1f64).unwrap(), 70);
        assert!(70.0 <= cone_count_upper_bound(0.1));
        for eps in [1.0, 0.5, 0.1, 0.03, 2.0, 10.0] {
            assert_eq!(cone_count(eps).unwrap(), smallest_t_by_search(eps), "eps = {eps}");
        }
        assert!(matches!(cone_count(0.0f64), Err(Error::InvalidEpsilon(_))));
        assert!(matches!(cone_count(-1.0f64), Err(Error::InvalidEpsilon(_))));
        assert!(matches!(cone_count(f64::NAN), Err(Error::InvalidEpsilon(_))));
    }

    #[test]
    fn square_fan() {
        let d = square();
        let f = build_fan(&d, VertexLabel::new(0, 0), 13).unwrap();
        assert!((f.alpha - FRAC_PI_2).abs() < 1e-12);
        assert!((f.rays[0] - Point::new(0.0, 1.0)).norm() < 1e-12);
        assert!((f.rays[13] - Point::new(1.0, 0.0)).norm() < 1e-12);
        assert_eq!(f.cone_index(Point::new(1.0, 1.0)).unwrap(), 7);
        assert_eq!(f.cone_index(Point::new(0.0, 1.0)).unwrap(), 1);
        assert_eq!(f.cone_index(Point::new(1.0, 0.0)).unwrap(), 13);
        assert!(matches!(f.cone_index(Point::new(-1.0, -1.0)), Err(Error::OutsideSector(_))));
        // Every interior ray r_j starts cone j + 1.
        for j in 1..13 {
            assert_eq!(f.cone_index(f.rays[j]).unwrap(), j + 1);
        }
    }

    #[test]
    fn triangle_fan_has_equal_cones() {
        let (d, _) = PolygonalDomain::new(vec![Boundary {
            kind: BoundaryKind::Outer,
            vertices: vec![Point::new(0.0, 0.0), Point::new(2.0, 0.0), Point::new(1.0, 3f64.sqrt())],
        }])
        .unwrap();
        for k in 0..3 {
            let f = build_fan(&d, VertexLabel::new(0, k), 6).unwrap();
            assert!((f.width() - PI / 18.0).abs() < 1e-12);
            assert_eq!(f.rays.len(), 7);
        }
    }

    #[test]
    fn reflex_fan_sweeps_the_reflex_sector() {
        let (d, _) = PolygonalDomain::new(vec![Boundary {
            kind: BoundaryKind::Outer,
            vertices: [(0., 0.), (40., 1.), (41., 40.), (25., 41.), (21., 13.), (17., 42.), (1., 39.)]
                .iter()
                .map(|&(x, y)| Point::new(x, y))
                .collect(),
        }])
        .unwrap();
        let v = VertexLabel::new(0, 4);
        let f = build_fan(&d, v, 13).unwrap();
        assert!(f.alpha > PI);
        assert!(f.width() < 2.0 * PI / 13.0);
        // Straight down from the notch tip lies in the interior.
        let j = f.cone_index(Point::new(0.0, -1.0)).unwrap();
        assert!((1..=13).contains(&j));
        // Straight up points into the notch, outside the sector.
        assert!(f.cone_index(Point::new(0.0, 1.0)).is_err());
    }

    proptest! {
        #[test]
        fn cone_count_nonincreasing(a in 1e-3f64..1e3, b in 1e-3f64..1e3) {
            let (lo, hi) = if a <= b { (a, b) } else { (b, a) };
            prop_assert!(cone_count(lo).unwrap() >= cone_count(hi).unwrap());
        }

        #[test]
        fn every_sector_direction_has_one_cone(frac in 0.0f64..=1.0) {
            let d = square();
            let f = build_fan(&d, VertexLabel::new(0, 0), 13).unwrap();
            let dir = f.base_dir.rotate_cw(frac * f.alpha);
            let j = f.cone_index(dir).unwrap();
            let phi = frac * f.alpha;
            let w = f.width();
            prop_assert!(phi >= (j - 1) as f64 * w - 1e-9 && phi <= j as f64 * w + 1e-9);
        }
    }
}
