//! Planar points and segment distance primitives.

use std::ops::{Add, Mul, Sub};

use crate::scalar::Scalar;

/// A point (or displacement) in the working planar coordinate frame.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Point2<S> {
    pub x: S,
    pub y: S,
}

impl<S: Scalar> Point2<S> {
    pub fn new(x: S, y: S) -> Self {
        Point2 { x, y }
    }

    pub fn distance(self, other: Self) -> S {
        self.distance_sq(other).sqrt()
    }

    pub fn distance_sq(self, other: Self) -> S {
        let dx = self.x - other.x;
        let dy = self.y - other.y;
        dx * dx + dy * dy
    }

    pub fn midpoint(self, other: Self) -> Self {
        Point2::new(
            (self.x + other.x) * S::of(0.5),
            (self.y + other.y) * S::of(0.5),
        )
    }

    pub fn dot(self, other: Self) -> S {
        self.x * other.x + self.y * other.y
    }
}

impl<S: Scalar> Add for Point2<S> {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        Point2::new(self.x + rhs.x, self.y + rhs.y)
    }
}

impl<S: Scalar> Sub for Point2<S> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        Point2::new(self.x - rhs.x, self.y - rhs.y)
    }
}

impl<S: Scalar> Mul<S> for Point2<S> {
    type Output = Self;
    fn mul(self, rhs: S) -> Self {
        Point2::new(self.x * rhs, self.y * rhs)
    }
}

/// Distance from `p` to the closed segment `[a, b]`.
pub fn point_segment_distance<S: Scalar>(p: Point2<S>, a: Point2<S>, b: Point2<S>) -> S {
    let ab = b - a;
    let len_sq = ab.dot(ab);
    if len_sq == S::zero() {
        return p.distance(a);
    }
    let t = (p - a).dot(ab) / len_sq;
    let t = t.max(S::zero()).min(S::one());
    p.distance(a + ab * t)
}

/// Distance from `p` to a polyline (minimum over its segments).
///
/// A single-point polyline degenerates to point distance; an empty one
/// returns infinity.
pub fn point_polyline_distance<S: Scalar>(p: Point2<S>, polyline: &[Point2<S>]) -> S {
    match polyline {
        [] => S::infinity(),
        [only] => p.distance(*only),
        _ => polyline
            .windows(2)
            .map(|w| point_segment_distance(p, w[0], w[1]))
            .fold(S::infinity(), S::min),
    }
}

/// Total length of a polyline.
pub fn polyline_length<S: Scalar>(polyline: &[Point2<S>]) -> S {
    polyline
        .windows(2)
        .map(|w| w[0].distance(w[1]))
        .fold(S::zero(), |acc, d| acc + d)
}
