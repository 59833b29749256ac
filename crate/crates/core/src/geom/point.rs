use num::Zero;
use serde::{Deserialize, Serialize};
use std::cmp::Ordering;

use crate::rat::{rat_to_f64, Rat};

/// Exact planar point with arbitrary-precision rational coordinates.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RationalPoint {
    pub x: Rat,
    pub y: Rat,
}

impl RationalPoint {
    pub fn new(x: Rat, y: Rat) -> Self {
        Self { x, y }
    }

    pub fn from_ints(x: i64, y: i64) -> Self {
        Self::new(crate::rat::rat(x), crate::rat::rat(y))
    }

    pub fn to_float(&self) -> FloatPoint {
        FloatPoint {
            x: rat_to_f64(&self.x),
            y: rat_to_f64(&self.y),
        }
    }

    pub fn norm_sq(&self) -> Rat {
        &self.x * &self.x + &self.y * &self.y
    }
}

/// Sign of the cross product (q - p) x (r - p): +1 for a counterclockwise
/// turn, -1 for clockwise, 0 for collinear. Exact.
pub fn orient(p: &RationalPoint, q: &RationalPoint, r: &RationalPoint) -> i32 {
    let lhs = (&q.x - &p.x) * (&r.y - &p.y);
    let rhs = (&q.y - &p.y) * (&r.x - &p.x);
    match lhs.cmp(&rhs) {
        Ordering::Less => -1,
        Ordering::Equal => 0,
        Ordering::Greater => 1,
    }
}

/// Exact dot product of (b - a) and (c - a).
pub fn dot_from(a: &RationalPoint, b: &RationalPoint, c: &RationalPoint) -> Rat {
    (&b.x - &a.x) * (&c.x - &a.x) + (&b.y - &a.y) * (&c.y - &a.y)
}

pub fn dist_sq(p: &RationalPoint, q: &RationalPoint) -> Rat {
    let dx = &p.x - &q.x;
    let dy = &p.y - &q.y;
    &dx * &dx + &dy * &dy
}

/// True iff `p` lies on the closed segment [a, b].
pub fn on_segment(a: &RationalPoint, b: &RationalPoint, p: &RationalPoint) -> bool {
    if orient(a, b, p) != 0 {
        return false;
    }
    // Collinear: check the projection parameter range via dot products.
    let d = dot_from(a, b, p);
    if d < Rat::zero() {
        return false;
    }
    d <= dist_sq(a, b)
}

/// Finite binary floating-point point; the numerical layer for the simplex search.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FloatPoint {
    pub x: f64,
    pub y: f64,
}

impl FloatPoint {
    pub fn new(x: f64, y: f64) -> Self {
        debug_assert!(x.is_finite() && y.is_finite());
        Self { x, y }
    }

    pub fn dist(&self, other: &FloatPoint) -> f64 {
        ((self.x - other.x).powi(2) + (self.y - other.y).powi(2)).sqrt()
    }

    pub fn norm(&self) -> f64 {
        (self.x * self.x + self.y * self.y).sqrt()
    }
}

/// Cross product (b - a) x (c - a) in floating point.
pub fn cross_f(a: FloatPoint, b: FloatPoint, c: FloatPoint) -> f64 {
    (b.x - a.x) * (c.y - a.y) - (b.y - a.y) * (c.x - a.x)
}
