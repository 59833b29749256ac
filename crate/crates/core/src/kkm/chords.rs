//! Simplex points, circle boundary points, and the chord system they induce.
//!
//! A point x in the simplex of dimension 2(k-2)-1 splits the unit circle at
//! parameters given by its prefix sums; chord i joins boundary points i and
//! i+k-2, so there are k-2 distinct chord supports when all coordinates are
//! positive.

use crate::error::Error;
use crate::geom::{cross_f, ConvexBody, FloatPoint};

pub const SIMPLEX_TOL: f64 = 1e-12;

/// Barycentric coordinates x in the simplex: nonnegative entries summing to
/// one, both within absolute tolerance 1e-12. Exact zeros are permitted.
#[derive(Debug, Clone, PartialEq)]
pub struct SimplexPoint {
    coords: Vec<f64>,
}

impl SimplexPoint {
    pub fn new(coords: Vec<f64>) -> Result<Self, Error> {
        if coords.is_empty() {
            return Err(Error::InvalidArgument("empty coordinate vector".into()));
        }
        if coords.iter().any(|c| !c.is_finite() || *c < -SIMPLEX_TOL) {
            return Err(Error::InvalidArgument(format!(
                "simplex coordinates must be nonnegative: {coords:?}"
            )));
        }
        let sum: f64 = coords.iter().sum();
        if (sum - 1.0).abs() > 1e-9 {
            return Err(Error::InvalidArgument(format!(
                "simplex coordinates sum to {sum}, expected 1"
            )));
        }
        // Clamp tolerance-level negatives and renormalize.
        let mut coords: Vec<f64> = coords.iter().map(|c| c.max(0.0)).collect();
        let sum: f64 = coords.iter().sum();
        for c in &mut coords {
            *c /= sum;
        }
        Ok(SimplexPoint { coords })
    }

    pub fn barycenter(dim_plus_one: usize) -> Self {
        SimplexPoint {
            coords: vec![1.0 / dim_plus_one as f64; dim_plus_one],
        }
    }

    /// Lattice point z/m for integer z summing to m.
    pub fn from_lattice(z: &[u32], m: u32) -> Self {
        debug_assert_eq!(z.iter().sum::<u32>(), m);
        SimplexPoint {
            coords: z.iter().map(|&c| c as f64 / m as f64).collect(),
        }
    }

    pub fn coords(&self) -> &[f64] {
        &self.coords
    }

    pub fn len(&self) -> usize {
        self.coords.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coords.is_empty()
    }
}

/// Boundary points f_0..f_{n-1} and chords l_i = [f_i, f_{i+k-2}] induced by
/// a simplex point, where n = 2(k-2) and f(t) = (cos 2*pi*t, sin 2*pi*t).
#[derive(Debug, Clone)]
pub struct ChordSystem {
    pub k: usize,
    /// Prefix sums s_0 = 0, ..., s_n = 1.
    pub prefix: Vec<f64>,
    /// f_0..f_{n-1}; f_n coincides with f_0.
    pub boundary: Vec<FloatPoint>,
}

fn circle(t: f64) -> FloatPoint {
    let a = std::f64::consts::TAU * t;
    FloatPoint::new(a.cos(), a.sin())
}

impl ChordSystem {
    pub fn new(x: &SimplexPoint, k: usize) -> Result<Self, Error> {
        if k < 5 {
            return Err(Error::InvalidArgument("k must be at least 5".into()));
        }
        let n = 2 * (k - 2);
        if x.len() != n {
            return Err(Error::InvalidArgument(format!(
                "expected {n} simplex coordinates, got {}",
                x.len()
            )));
        }
        let mut prefix = Vec::with_capacity(n + 1);
        let mut acc = 0.0;
        prefix.push(0.0);
        for c in x.coords() {
            acc += c;
            prefix.push(acc);
        }
        prefix[n] = 1.0;
        let boundary = (0..n).map(|i| circle(prefix[i])).collect();
        Ok(ChordSystem { k, prefix, boundary })
    }

    pub fn n(&self) -> usize {
        2 * (self.k - 2)
    }

    /// Endpoints of chord i (indices taken modulo n).
    pub fn chord(&self, i: usize) -> (FloatPoint, FloatPoint) {
        let n = self.n();
        (self.boundary[i % n], self.boundary[(i + self.k - 2) % n])
    }

    /// A chord is degenerate (a point) when the circle mass strictly between
    /// its endpoints is zero on one side.
    pub fn chord_degenerate(&self, i: usize) -> bool {
        let n = self.n();
        let i = i % n;
        let j = (i + self.k - 2) % n;
        let mass = if i < j {
            self.prefix[j] - self.prefix[i]
        } else {
            1.0 - (self.prefix[i] - self.prefix[j])
        };
        !(1e-14..=1.0 - 1e-14).contains(&mass)
    }

    /// Midpoint of the arc from f_{i-1} to f_i, for region index i in 1..=n.
    pub fn arc_mid(&self, i: usize) -> FloatPoint {
        circle(0.5 * (self.prefix[i - 1] + self.prefix[i]))
    }

    /// Point at the middle of the open arc from f_0 to f_{k-3}.
    pub fn q1_arc_mid(&self) -> FloatPoint {
        circle(0.5 * self.prefix[self.k - 3])
    }

    /// Signed side of point p relative to chord i's supporting line.
    pub fn side(&self, i: usize, p: FloatPoint) -> f64 {
        let (a, b) = self.chord(i);
        cross_f(a, b, p)
    }

    /// Distance from a float polygon to chord i treated as a segment.
    pub fn dist_to_chord(&self, i: usize, body: &FloatBody) -> f64 {
        let (a, b) = self.chord(i);
        body.dist_to_segment(a, b)
    }
}

/// Floating-point snapshot of a convex body for the numerical layer.
#[derive(Debug, Clone)]
pub struct FloatBody {
    pub vertices: Vec<FloatPoint>,
}

impl FloatBody {
    pub fn of(body: &ConvexBody) -> Self {
        FloatBody {
            vertices: body.vertices().iter().map(|v| v.to_float()).collect(),
        }
    }

    pub fn max_norm(&self) -> f64 {
        self.vertices
            .iter()
            .map(|v| v.norm())
            .fold(0.0, f64::max)
    }

    fn edges(&self) -> Vec<(FloatPoint, FloatPoint)> {
        match self.vertices.len() {
            0 => vec![],
            1 => vec![(self.vertices[0], self.vertices[0])],
            2 => vec![(self.vertices[0], self.vertices[1])],
            n => (0..n)
                .map(|i| (self.vertices[i], self.vertices[(i + 1) % n]))
                .collect(),
        }
    }

    pub fn contains(&self, p: FloatPoint) -> bool {
        match self.vertices.len() {
            0 => false,
            1 => self.vertices[0].dist(&p) == 0.0,
            2 => dist_point_segment(p, self.vertices[0], self.vertices[1]) == 0.0,
            n => (0..n).all(|i| cross_f(self.vertices[i], self.vertices[(i + 1) % n], p) >= 0.0),
        }
    }

    /// Distance to the segment [a, b]; zero when they touch or overlap.
    pub fn dist_to_segment(&self, a: FloatPoint, b: FloatPoint) -> f64 {
        if self.vertices.len() >= 3 && (self.contains(a) || self.contains(b)) {
            return 0.0;
        }
        let mut best = f64::INFINITY;
        for (u, v) in self.edges() {
            best = best.min(dist_segment_segment(u, v, a, b));
        }
        best
    }
}

pub fn dist_point_segment(p: FloatPoint, a: FloatPoint, b: FloatPoint) -> f64 {
    let (dx, dy) = (b.x - a.x, b.y - a.y);
    let len_sq = dx * dx + dy * dy;
    if len_sq == 0.0 {
        return p.dist(&a);
    }
    let t = (((p.x - a.x) * dx + (p.y - a.y) * dy) / len_sq).clamp(0.0, 1.0);
    p.dist(&FloatPoint::new(a.x + t * dx, a.y + t * dy))
}

fn segments_intersect(a: FloatPoint, b: FloatPoint, c: FloatPoint, d: FloatPoint) -> bool {
    let d1 = cross_f(c, d, a);
    let d2 = cross_f(c, d, b);
    let d3 = cross_f(a, b, c);
    let d4 = cross_f(a, b, d);
    if ((d1 > 0.0 && d2 < 0.0) || (d1 < 0.0 && d2 > 0.0))
        && ((d3 > 0.0 && d4 < 0.0) || (d3 < 0.0 && d4 > 0.0))
    {
        return true;
    }
    false
}

pub fn dist_segment_segment(a: FloatPoint, b: FloatPoint, c: FloatPoint, d: FloatPoint) -> f64 {
    if segments_intersect(a, b, c, d) {
        return 0.0;
    }
    dist_point_segment(a, c, d)
        .min(dist_point_segment(b, c, d))
        .min(dist_point_segment(c, a, b))
        .min(dist_point_segment(d, a, b))
}
