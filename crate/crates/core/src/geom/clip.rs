//! Exact convex intersection by half-plane clipping. This is the second,
//! independent route to the disjointness decision (the first is the
//! separating-axis test) and the basis of the tight-triple predicate.

use num::Zero;

use crate::geom::body::ConvexBody;
use crate::geom::point::RationalPoint;
use crate::rat::Rat;

/// Closed half-plane {(x, y) : ax + by <= c}.
#[derive(Debug, Clone)]
pub struct HalfPlane {
    pub a: Rat,
    pub b: Rat,
    pub c: Rat,
}

impl HalfPlane {
    fn eval(&self, p: &RationalPoint) -> Rat {
        &self.a * &p.x + &self.b * &p.y - &self.c
    }
}

/// The finite set of closed half-planes whose intersection is the body.
pub fn supporting_halfplanes(body: &ConvexBody) -> Vec<HalfPlane> {
    let vs = body.vertices();
    match vs.len() {
        1 => {
            let p = &vs[0];
            vec![
                HalfPlane { a: Rat::from_integer(1.into()), b: Rat::zero(), c: p.x.clone() },
                HalfPlane { a: Rat::from_integer((-1).into()), b: Rat::zero(), c: -p.x.clone() },
                HalfPlane { a: Rat::zero(), b: Rat::from_integer(1.into()), c: p.y.clone() },
                HalfPlane { a: Rat::zero(), b: Rat::from_integer((-1).into()), c: -p.y.clone() },
            ]
        }
        2 => {
            let (u, v) = (&vs[0], &vs[1]);
            let a = &v.y - &u.y;
            let b = &u.x - &v.x;
            let c = &a * &u.x + &b * &u.y;
            let (dx, dy) = (&v.x - &u.x, &v.y - &u.y);
            vec![
                // Both sides of the supporting line.
                HalfPlane { a: a.clone(), b: b.clone(), c: c.clone() },
                HalfPlane { a: -a, b: -b, c: -c },
                // Perpendicular caps at each endpoint.
                HalfPlane {
                    a: -dx.clone(),
                    b: -dy.clone(),
                    c: -(&dx * &u.x + &dy * &u.y),
                },
                HalfPlane {
                    a: dx.clone(),
                    b: dy.clone(),
                    c: &dx * &v.x + &dy * &v.y,
                },
            ]
        }
        n => (0..n)
            .map(|i| {
                let (u, v) = (&vs[i], &vs[(i + 1) % n]);
                let a = &v.y - &u.y;
                let b = &u.x - &v.x;
                let c = &a * &u.x + &b * &u.y;
                HalfPlane { a, b, c }
            })
            .collect(),
    }
}

/// Clips a body to a closed half-plane. Returns None when empty.
pub fn clip_halfplane(body: &ConvexBody, hp: &HalfPlane) -> Option<ConvexBody> {
    let vs = body.vertices();
    match vs.len() {
        1 => (hp.eval(&vs[0]) <= Rat::zero()).then(|| body.clone()),
        _ => {
            let n = vs.len();
            let evals: Vec<Rat> = vs.iter().map(|v| hp.eval(v)).collect();
            let mut out: Vec<RationalPoint> = Vec::new();
            // Sutherland-Hodgman over the (cyclic) vertex sequence. For a
            // segment the single edge is walked in both directions.
            let edges: Vec<(usize, usize)> = if n == 2 {
                vec![(0, 1), (1, 0)]
            } else {
                (0..n).map(|i| (i, (i + 1) % n)).collect()
            };
            for (i, j) in edges {
                let (cur, nxt) = (&vs[i], &vs[j]);
                let (ec, en) = (&evals[i], &evals[j]);
                if *ec <= Rat::zero() {
                    out.push(cur.clone());
                }
                if (*ec < Rat::zero() && *en > Rat::zero())
                    || (*ec > Rat::zero() && *en < Rat::zero())
                {
                    let t = ec / (ec - en);
                    out.push(RationalPoint::new(
                        &cur.x + (&nxt.x - &cur.x) * &t,
                        &cur.y + (&nxt.y - &cur.y) * &t,
                    ));
                }
            }
            if out.is_empty() {
                None
            } else {
                Some(ConvexBody::hull(&out).expect("nonempty"))
            }
        }
    }
}

/// Exact intersection of two closed convex bodies.
pub fn intersect_bodies(a: &ConvexBody, b: &ConvexBody) -> Option<ConvexBody> {
    let mut acc = a.clone();
    for hp in supporting_halfplanes(b) {
        acc = clip_halfplane(&acc, &hp)?;
    }
    Some(acc)
}
