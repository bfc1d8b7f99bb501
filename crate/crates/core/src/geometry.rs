//! Planar primitives: orientation, segment intersection and clockwise angles.
//!
//! `orient` evaluates the sign of a 2x2 determinant directly. With integer
//! coordinates of magnitude at most 2^25 every product and difference is
//! representable in an `f64`, so the predicate is exact on such inputs. The
//! generators and fixtures only emit integer coordinates with |c| <= 10^6.

use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::Scalar;

#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct Point<T> {
    pub x: T,
    pub y: T,
}

impl<T: Scalar> Point<T> {
    pub fn new(x: T, y: T) -> Self {
        Point { x, y }
    }

    pub fn cross(self, other: Self) -> T {
        self.x * other.y - self.y * other.x
    }

    pub fn dot(self, other: Self) -> T {
        self.x * other.x + self.y * other.y
    }

    pub fn norm(self) -> T {
        self.x.hypot(self.y)
    }

    pub fn dist(self, other: Self) -> T {
        (other - self).norm()
    }

    pub fn is_finite(self) -> bool {
        self.x.is_finite() && self.y.is_finite()
    }

    pub fn is_zero(self) -> bool {
        self.x == T::zero() && self.y == T::zero()
    }

    /// Unit vector in the same direction.
    pub fn unit(self) -> Result<Self> {
        let len = self.norm();
        if len == T::zero() || !len.is_finite() {
            return Err(Error::InvalidDirection);
        }
        Ok(Point::new(self.x / len, self.y / len))
    }

    /// Rotates this vector clockwise by `angle` radians.
    pub fn rotate_cw(self, angle: T) -> Self {
        let (s, c) = angle.sin_cos();
        Point::new(self.x * c + self.y * s, self.y * c - self.x * s)
    }

    pub fn midpoint(self, other: Self) -> Self {
        let half = T::of(0.5);
        Point::new((self.x + other.x) * half, (self.y + other.y) * half)
    }

    pub fn cast<U: Scalar>(self) -> Point<U> {
        Point::new(U::of(self.x.to_f64_lossy()), U::of(self.y.to_f64_lossy()))
    }
}

impl<T: Scalar> Add for Point<T> {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        Point::new(self.x + o.x, self.y + o.y)
    }
}

impl<T: Scalar> Sub for Point<T> {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        Point::new(self.x - o.x, self.y - o.y)
    }
}

impl<T: Scalar> Mul<T> for Point<T> {
    type Output = Self;
    fn mul(self, s: T) -> Self {
        Point::new(self.x * s, self.y * s)
    }
}

impl<T: Scalar> Neg for Point<T> {
    type Output = Self;
    fn neg(self) -> Self {
        Point::new(-self.x, -self.y)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Orientation {
    CounterClockwise,
    Clockwise,
    Collinear,
}

impl Orientation {
    pub fn reversed(self) -> Self {
        match self {
            Orientation::CounterClockwise => Orientation::Clockwise,
            Orientation::Clockwise => Orientation::CounterClockwise,
            Orientation::Collinear => Orientation::Collinear,
        }
    }
}

/// Sign of `(b - a) x (c - a)`.
pub fn orient<T: Scalar>(a: Point<T>, b: Point<T>, c: Point<T>) -> Orientation {
    let det = (b - a).cross(c - a);
    if det > T::zero() {
        Orientation::CounterClockwise
    } else if det < T::zero() {
        Orientation::Clockwise
    } else {
        Orientation::Collinear
    }
}

/// True iff the open segments share exactly one point. Touching at an
/// endpoint, or collinear overlap, is not a proper crossing.
pub fn segments_properly_cross<T: Scalar>(s1: (Point<T>, Point<T>), s2: (Point<T>, Point<T>)) -> bool {
    let (a, b) = s1;
    let (c, d) = s2;
    let o1 = orient(a, b, c);
    let o2 = orient(a, b, d);
    let o3 = orient(c, d, a);
    let o4 = orient(c, d, b);
    o1 != Orientation::Collinear
        && o2 != Orientation::Collinear
        && o3 != Orientation::Collinear
        && o4 != Orientation::Collinear
        && o1 != o2
        && o3 != o4
}

/// True iff `p` lies on the closed segment `ab` (assumes collinearity was not
/// yet checked).
pub fn on_closed_segment<T: Scalar>(p: Point<T>, a: Point<T>, b: Point<T>) -> bool {
    orient(a, b, p) == Orientation::Collinear
        && p.x >= a.x.min(b.x)
        && p.x <= a.x.max(b.x)
        && p.y >= a.y.min(b.y)
        && p.y <= a.y.max(b.y)
}

/// True iff `p` lies strictly between `a` and `b` on segment `ab`.
pub fn on_open_segment<T: Scalar>(p: Point<T>, a: Point<T>, b: Point<T>) -> bool {
    p != a && p != b && on_closed_segment(p, a, b)
}

/// True iff the closed segments share at least one point.
pub fn segments_intersect<T: Scalar>(s1: (Point<T>, Point<T>), s2: (Point<T>, Point<T>)) -> bool {
    let (a, b) = s1;
    let (c, d) = s2;
    segments_properly_cross(s1, s2)
        || on_closed_segment(c, a, b)
        || on_closed_segment(d, a, b)
        || on_closed_segment(a, c, d)
        || on_closed_segment(b, c, d)
}

/// Clockwise rotation, in `[0, 2π)`, that carries `from_dir` onto `to_dir`.
pub fn clockwise_angle<T: Scalar>(from_dir: Point<T>, to_dir: Point<T>) -> Result<T> {
    if from_dir.is_zero() || to_dir.is_zero() || !from_dir.is_finite() || !to_dir.is_finite() {
        return Err(Error::InvalidDirection);
    }
    let tau = T::TAU();
    let ccw = from_dir.cross(to_dir).atan2(from_dir.dot(to_dir));
    let mut cw = T::zero() - ccw;
    if cw < T::zero() {
        cw = cw + tau;
    }
    if cw >= tau {
        cw = T::zero();
    }
    Ok(cw)
}

/// Twice the signed area of a closed ring; positive for counterclockwise.
pub fn signed_area2<T: Scalar>(ring: &[Point<T>]) -> T {
    let n = ring.len();
    (0..n).fold(T::zero(), |acc, k| acc + ring[k].cross(ring[(k + 1) % n]))
}

/// Even-odd ray casting. Points exactly on the ring get an arbitrary answer.
pub fn point_in_ring<T: Scalar>(p: Point<T>, ring: &[Point<T>]) -> bool {
    let n = ring.len();
    let mut inside = false;
    let mut j = n - 1;
    for i in 0..n {
        let (a, b) = (ring[i], ring[j]);
        if (a.y > p.y) != (b.y > p.y) {
            let x_at = a.x + (p.y - a.y) * (b.x - a.x) / (b.y - a.y);
            if p.x < x_at {
                inside = !inside;
            }
        }
        j = i;
    }
    inside
}

/// Euclidean distance from `p` to the closed segment `ab`.
pub fn point_segment_distance<T: Scalar>(p: Point<T>, a: Point<T>, b: Point<T>) -> T {
    let ab = b - a;
    let len2 = ab.dot(ab);
    if len2 == T::zero() {
        return p.dist(a);
    }
    let s = ((p - a).dot(ab) / len2).max(T::zero()).min(T::one());
    p.dist(a + ab * s)
}
