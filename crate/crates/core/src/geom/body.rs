use crate::error::Error;
use crate::geom::point::{dist_sq, on_segment, orient, RationalPoint};

/// Compact convex set represented by its vertices in strictly counterclockwise
/// convex position. Degenerate forms are first-class: one vertex is a point,
/// two vertices a segment.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ConvexBody {
    vertices: Vec<RationalPoint>,
}

impl ConvexBody {
    /// Builds the convex hull of an arbitrary nonempty point set.
    pub fn hull(points: &[RationalPoint]) -> Result<Self, Error> {
        if points.is_empty() {
            return Err(Error::InvalidArgument("empty point set".into()));
        }
        Ok(Self {
            vertices: convex_hull_vertices(points),
        })
    }

    /// Accepts a vertex list that must already be a canonical hull.
    pub fn from_hull_vertices(vertices: Vec<RationalPoint>) -> Result<Self, Error> {
        let body = Self::hull(&vertices)?;
        if body.vertices != vertices {
            return Err(Error::Validation(
                "vertex list is not a canonical convex hull".into(),
            ));
        }
        Ok(body)
    }

    pub fn point(p: RationalPoint) -> Self {
        Self { vertices: vec![p] }
    }

    pub fn segment(a: RationalPoint, b: RationalPoint) -> Self {
        Self::hull(&[a, b]).expect("two points")
    }

    pub fn vertices(&self) -> &[RationalPoint] {
        &self.vertices
    }

    pub fn is_point(&self) -> bool {
        self.vertices.len() == 1
    }

    pub fn is_segment(&self) -> bool {
        self.vertices.len() == 2
    }

    /// Closed containment test.
    pub fn contains(&self, p: &RationalPoint) -> bool {
        match self.vertices.len() {
            1 => &self.vertices[0] == p,
            2 => on_segment(&self.vertices[0], &self.vertices[1], p),
            n => {
                for i in 0..n {
                    if orient(&self.vertices[i], &self.vertices[(i + 1) % n], p) < 0 {
                        return false;
                    }
                }
                true
            }
        }
    }

    /// True iff every vertex of `other` is contained in `self`.
    pub fn contains_body(&self, other: &ConvexBody) -> bool {
        other.vertices.iter().all(|v| self.contains(v))
    }

    /// True iff `p` lies on the boundary of the body (for degenerate bodies
    /// the whole set is boundary).
    pub fn on_boundary(&self, p: &RationalPoint) -> bool {
        match self.vertices.len() {
            1 | 2 => self.contains(p),
            n => (0..n)
                .any(|i| on_segment(&self.vertices[i], &self.vertices[(i + 1) % n], p)),
        }
    }

    /// Convex hull of the union of two bodies.
    pub fn union_hull(&self, other: &ConvexBody) -> ConvexBody {
        let mut pts = self.vertices.clone();
        pts.extend_from_slice(&other.vertices);
        ConvexBody::hull(&pts).expect("nonempty")
    }
}

/// Andrew's monotone chain over exact rationals. Output is in strictly
/// counterclockwise convex position starting at the lexicographically
/// smallest vertex; collinear inputs collapse to a point or segment.
fn convex_hull_vertices(points: &[RationalPoint]) -> Vec<RationalPoint> {
    let mut pts: Vec<RationalPoint> = points.to_vec();
    pts.sort();
    pts.dedup();
    let n = pts.len();
    if n <= 2 {
        return pts;
    }
    let mut lower: Vec<RationalPoint> = Vec::new();
    for p in &pts {
        while lower.len() >= 2
            && orient(&lower[lower.len() - 2], &lower[lower.len() - 1], p) <= 0
        {
            lower.pop();
        }
        lower.push(p.clone());
    }
    let mut upper: Vec<RationalPoint> = Vec::new();
    for p in pts.iter().rev() {
        while upper.len() >= 2
            && orient(&upper[upper.len() - 2], &upper[upper.len() - 1], p) <= 0
        {
            upper.pop();
        }
        upper.push(p.clone());
    }
    lower.pop();
    upper.pop();
    lower.extend(upper);
    if lower.len() < 3 {
        // All input points collinear: keep the two extremes.
        let mut extremes = vec![pts[0].clone(), pts[n - 1].clone()];
        extremes.sort();
        extremes.dedup();
        return extremes;
    }
    lower
}

/// Exact squared distance between two bodies' closest vertex/edge features.
/// Zero iff the closed bodies intersect.
pub fn body_dist_sq(a: &ConvexBody, b: &ConvexBody) -> crate::rat::Rat {
    use num::Zero;
    if !crate::geom::sat::bodies_disjoint(a, b) {
        return crate::rat::Rat::zero();
    }
    let mut best: Option<crate::rat::Rat> = None;
    let mut upd = |d: crate::rat::Rat| {
        if best.as_ref().is_none_or(|b| &d < b) {
            best = Some(d);
        }
    };
    for v in a.vertices() {
        upd(point_body_dist_sq(v, b));
    }
    for v in b.vertices() {
        upd(point_body_dist_sq(v, a));
    }
    best.expect("nonempty bodies")
}

fn point_body_dist_sq(p: &RationalPoint, b: &ConvexBody) -> crate::rat::Rat {
    let vs = b.vertices();
    let n = vs.len();
    if n == 1 {
        return dist_sq(p, &vs[0]);
    }
    let mut best: Option<crate::rat::Rat> = None;
    for i in 0..n {
        let (u, v) = (&vs[i], &vs[(i + 1) % n]);
        if i > 0 && n == 2 {
            break;
        }
        let d = point_segment_dist_sq(p, u, v);
        if best.as_ref().is_none_or(|b| &d < b) {
            best = Some(d);
        }
    }
    best.expect("nonempty")
}

fn point_segment_dist_sq(
    p: &RationalPoint,
    a: &RationalPoint,
    b: &RationalPoint,
) -> crate::rat::Rat {
    use num::Zero;
    let len_sq = dist_sq(a, b);
    if len_sq.is_zero() {
        return dist_sq(p, a);
    }
    let t = crate::geom::point::dot_from(a, b, p);
    if t <= crate::rat::Rat::zero() {
        return dist_sq(p, a);
    }
    if t >= len_sq {
        return dist_sq(p, b);
    }
    // Perpendicular foot: |ap|^2 - (t^2 / |ab|^2)
    dist_sq(p, a) - &t * &t / len_sq
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::rat;

    fn p(x: i64, y: i64) -> RationalPoint {
        RationalPoint::from_ints(x, y)
    }

    #[test]
    fn hull_singleton() {
        let b = ConvexBody::hull(&[p(0, 0)]).unwrap();
        assert_eq!(b.vertices(), &[p(0, 0)]);
    }

    #[test]
    fn hull_duplicates_collapse_to_segment() {
        let b = ConvexBody::hull(&[p(0, 0), p(1, 0), p(0, 0)]).unwrap();
        assert_eq!(b.vertices(), &[p(0, 0), p(1, 0)]);
    }

    #[test]
    fn hull_drops_interior_and_collinear() {
        let b = ConvexBody::hull(&[p(0, 0), p(2, 0), p(1, 1), p(1, 0)]).unwrap();
        assert_eq!(b.vertices(), &[p(0, 0), p(2, 0), p(1, 1)]);
    }

    #[test]
    fn hull_idempotent() {
        let b = ConvexBody::hull(&[p(0, 0), p(3, 1), p(2, 5), p(-1, 2), p(1, 1)]).unwrap();
        let again = ConvexBody::hull(b.vertices()).unwrap();
        assert_eq!(b, again);
    }

    #[test]
    fn union_hull_of_points_is_segment() {
        let a = ConvexBody::point(p(0, 0));
        let b = ConvexBody::point(p(1, 1));
        let u = a.union_hull(&b);
        assert_eq!(u.vertices(), &[p(0, 0), p(1, 1)]);
    }

    #[test]
    fn union_hull_idempotent_and_commutative() {
        let a = ConvexBody::hull(&[p(0, 0), p(1, 0), p(0, 1)]).unwrap();
        assert_eq!(a.union_hull(&a), a);
        let b = ConvexBody::hull(&[p(2, 2), p(3, 2)]).unwrap();
        assert_eq!(a.union_hull(&b), b.union_hull(&a));
    }

    #[test]
    fn union_of_parallel_segments_is_square() {
        let a = ConvexBody::segment(p(0, 0), p(1, 0));
        let b = ConvexBody::segment(p(0, 1), p(1, 1));
        let u = a.union_hull(&b);
        assert_eq!(u.vertices().len(), 4);
        for q in [p(0, 0), p(1, 0), p(1, 1), p(0, 1)] {
            assert!(u.contains(&q));
        }
    }

    #[test]
    fn contains_polygon_boundary() {
        let sq = ConvexBody::hull(&[p(0, 0), p(2, 0), p(2, 2), p(0, 2)]).unwrap();
        assert!(sq.contains(&p(1, 1)));
        assert!(sq.contains(&p(0, 1)));
        assert!(sq.contains(&p(2, 2)));
        assert!(!sq.contains(&p(3, 1)));
    }

    #[test]
    fn from_hull_vertices_rejects_non_canonical() {
        assert!(ConvexBody::from_hull_vertices(vec![p(0, 0), p(2, 0), p(1, 0)]).is_err());
        assert!(ConvexBody::from_hull_vertices(vec![p(0, 0), p(0, 1), p(1, 0)]).is_err());
        assert!(ConvexBody::from_hull_vertices(vec![p(0, 0), p(1, 0), p(1, 1)]).is_ok());
    }

    #[test]
    fn body_distance() {
        use crate::rat::ratio;
        let sq = ConvexBody::hull(&[p(0, 0), p(1, 0), p(1, 1), p(0, 1)]).unwrap();
        let far = ConvexBody::point(p(3, 0));
        assert_eq!(body_dist_sq(&sq, &far), rat(4));
        let touching = ConvexBody::point(p(1, 1));
        assert_eq!(body_dist_sq(&sq, &touching), rat(0));
        let seg = ConvexBody::segment(p(2, -1), p(2, 2));
        assert_eq!(body_dist_sq(&sq, &seg), rat(1));
        let diag = ConvexBody::point(p(2, 2));
        assert_eq!(body_dist_sq(&sq, &diag), ratio(2, 1));
    }
}
