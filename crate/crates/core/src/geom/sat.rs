//! Separating-axis disjointness for closed convex bodies, including the
//! degenerate point and segment forms.

use crate::geom::body::ConvexBody;
use crate::rat::Rat;

/// True iff the closed bodies have empty intersection. Closed-set semantics:
/// touching bodies are not disjoint, so only strict separation counts.
///
/// Candidate separating directions are the edge normals of both bodies plus
/// every vertex-difference direction between them; for 2D convex polytopes the
/// closest-feature pair is vertex-vertex, vertex-edge, or edge-edge, and each
/// case yields an axis in this set.
pub fn bodies_disjoint(a: &ConvexBody, b: &ConvexBody) -> bool {
    for axis in axes(a).chain(axes(b)).chain(vertex_pair_axes(a, b)) {
        if separates(&axis, a, b) {
            return true;
        }
    }
    false
}

type Axis = (Rat, Rat);

fn axes<'a>(body: &'a ConvexBody) -> impl Iterator<Item = Axis> + 'a {
    let vs = body.vertices();
    let n = vs.len();
    let edge_count = match n {
        0 | 1 => 0,
        2 => 1,
        _ => n,
    };
    (0..edge_count).map(move |i| {
        let u = &vs[i];
        let v = &vs[(i + 1) % n];
        // Normal of the edge u -> v.
        (&u.y - &v.y, &v.x - &u.x)
    })
}

fn vertex_pair_axes<'a>(
    a: &'a ConvexBody,
    b: &'a ConvexBody,
) -> impl Iterator<Item = Axis> + 'a {
    a.vertices().iter().flat_map(move |u| {
        b.vertices()
            .iter()
            .map(move |v| (&v.x - &u.x, &v.y - &u.y))
    })
}

fn separates(axis: &Axis, a: &ConvexBody, b: &ConvexBody) -> bool {
    use num::Zero;
    if axis.0.is_zero() && axis.1.is_zero() {
        return false;
    }
    let (min_a, max_a) = project(axis, a);
    let (min_b, max_b) = project(axis, b);
    max_a < min_b || max_b < min_a
}

fn project(axis: &Axis, body: &ConvexBody) -> (Rat, Rat) {
    let mut iter = body
        .vertices()
        .iter()
        .map(|v| &axis.0 * &v.x + &axis.1 * &v.y);
    let first = iter.next().expect("nonempty body");
    let mut min = first.clone();
    let mut max = first;
    for d in iter {
        if d < min {
            min = d.clone();
        }
        if d > max {
            max = d;
        }
    }
    (min, max)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geom::point::RationalPoint;

    fn p(x: i64, y: i64) -> RationalPoint {
        RationalPoint::from_ints(x, y)
    }

    fn square(ox: i64, oy: i64) -> ConvexBody {
        ConvexBody::hull(&[p(ox, oy), p(ox + 1, oy), p(ox + 1, oy + 1), p(ox, oy + 1)]).unwrap()
    }

    #[test]
    fn far_squares_disjoint() {
        assert!(bodies_disjoint(&square(0, 0), &square(3, 0)));
    }

    #[test]
    fn corner_touching_squares_intersect() {
        assert!(!bodies_disjoint(&square(0, 0), &square(1, 1)));
    }

    #[test]
    fn crossing_diagonals_intersect() {
        let d1 = ConvexBody::segment(p(0, 0), p(1, 1));
        let d2 = ConvexBody::segment(p(0, 1), p(1, 0));
        assert!(!bodies_disjoint(&d1, &d2));
    }

    #[test]
    fn point_cases() {
        let a = ConvexBody::point(p(0, 0));
        let b = ConvexBody::point(p(0, 1));
        assert!(bodies_disjoint(&a, &b));
        assert!(!bodies_disjoint(&a, &a.clone()));
        let seg = ConvexBody::segment(p(-1, 1), p(1, 1));
        assert!(bodies_disjoint(&a, &seg));
        assert!(!bodies_disjoint(&b, &seg));
    }

    #[test]
    fn collinear_segments() {
        let s1 = ConvexBody::segment(p(0, 0), p(2, 0));
        let s2 = ConvexBody::segment(p(3, 0), p(5, 0));
        assert!(bodies_disjoint(&s1, &s2));
        let s3 = ConvexBody::segment(p(2, 0), p(4, 0));
        assert!(!bodies_disjoint(&s1, &s3));
        let s4 = ConvexBody::segment(p(1, 0), p(3, 0));
        assert!(!bodies_disjoint(&s1, &s4));
    }

    #[test]
    fn shared_vertex_never_disjoint() {
        let t1 = ConvexBody::hull(&[p(0, 0), p(2, 0), p(1, 2)]).unwrap();
        let t2 = ConvexBody::hull(&[p(2, 0), p(4, 0), p(3, -2)]).unwrap();
        assert!(!bodies_disjoint(&t1, &t2));
    }
}
