//! Generator for the circle-based lower-bound family: 3(k-1) segments with
//! endpoints on the unit circle, realized with exact rational coordinates via
//! the tangent-half-angle map. Equidistance of the base points is only
//! approximate (within far less than 1% of the spacing); every argument about
//! the family depends only on the clockwise cyclic order and arc membership,
//! which are exact.

use num::{One, Zero};
use std::collections::BTreeSet;

use crate::error::Error;
use crate::family::{CirclePointId, ConstructionMeta, Family, Source};
use crate::geom::{ConvexBody, RationalPoint};
use crate::rat::{ratio, Rat};

#[derive(Debug, Clone)]
pub struct CirclePointSpec {
    pub k: u32,
    /// Offset of each perturbed point as a fraction of the base gap.
    pub perturbation: Rat,
}

impl CirclePointSpec {
    pub fn new(k: u32) -> Self {
        CirclePointSpec {
            k,
            perturbation: ratio(1, 10),
        }
    }
}

/// Named rational point on the unit circle.
#[derive(Debug, Clone)]
pub struct CirclePoint {
    pub id: CirclePointId,
    pub point: RationalPoint,
}

/// Rational point exactly on the unit circle near the given angle (degrees),
/// via t -> ((1-t^2)/(1+t^2), 2t/(1+t^2)) with t a rational approximation of
/// tan(angle/2).
fn circle_point_at(angle_deg: f64) -> RationalPoint {
    let mut a = angle_deg.rem_euclid(360.0);
    if a > 180.0 {
        a -= 360.0;
    }
    if (a - 180.0).abs() < 1e-12 {
        return RationalPoint::new(-Rat::one(), Rat::zero());
    }
    let t_star = (a.to_radians() / 2.0).tan();
    let scale = 100_000.0;
    let t = ratio((t_star * scale).round() as i64, scale as i64);
    let t_sq = &t * &t;
    let denom = Rat::one() + &t_sq;
    RationalPoint::new((Rat::one() - &t_sq) / &denom, ratio(2, 1) * &t / &denom)
}

/// All 3(k-1) + 6 named points (bases p_1..p_{3(k-1)} plus the six perturbed
/// points around p_1, p_2, p_3) in clockwise cyclic order, each exactly on
/// the unit circle.
pub fn circle_points(spec: &CirclePointSpec) -> Result<Vec<CirclePoint>, Error> {
    if spec.k < 5 {
        return Err(Error::InvalidArgument("k must be at least 5".into()));
    }
    if spec.perturbation <= Rat::zero() || spec.perturbation >= ratio(1, 2) {
        return Err(Error::InvalidArgument(
            "perturbation too large to preserve order".into(),
        ));
    }
    let n = 3 * (spec.k as i64 - 1);
    let gap = 360.0 / n as f64;
    let delta = crate::rat::rat_to_f64(&spec.perturbation) * gap;
    // Base point p_i sits at (5 - i) * gap so that p_5 lands at angle 0 and
    // the indices run clockwise.
    let base_angle = |i: i64| ((5 - i) as f64) * gap;
    let mut out: Vec<CirclePoint> = Vec::new();
    for i in 1..=n {
        let idx = i as u32;
        if i <= 3 {
            out.push(CirclePoint {
                id: CirclePointId::Left(idx),
                point: circle_point_at(base_angle(i) + delta),
            });
            out.push(CirclePoint {
                id: CirclePointId::Base(idx),
                point: circle_point_at(base_angle(i)),
            });
            out.push(CirclePoint {
                id: CirclePointId::Right(idx),
                point: circle_point_at(base_angle(i) - delta),
            });
        } else {
            out.push(CirclePoint {
                id: CirclePointId::Base(idx),
                point: circle_point_at(base_angle(i)),
            });
        }
    }
    validate_clockwise_order(&out)?;
    Ok(out)
}

/// Exact comparator of circle points by counterclockwise angle from (1, 0).
fn angle_less(p: &RationalPoint, q: &RationalPoint) -> bool {
    let half = |v: &RationalPoint| -> u8 {
        let zero = Rat::zero();
        if v.y > zero || (v.y == zero && v.x > zero) {
            0
        } else {
            1
        }
    };
    let (hp, hq) = (half(p), half(q));
    if hp != hq {
        return hp < hq;
    }
    // Same half-turn: compare by cross product.
    &p.x * &q.y - &p.y * &q.x > Rat::zero()
}

fn validate_clockwise_order(points: &[CirclePoint]) -> Result<(), Error> {
    let set: BTreeSet<&RationalPoint> = points.iter().map(|c| &c.point).collect();
    if set.len() != points.len() {
        return Err(Error::Validation(
            "perturbation too large to preserve order: coincident points".into(),
        ));
    }
    for c in points {
        if c.point.norm_sq() != Rat::one() {
            return Err(Error::Validation(format!("{} is not on the unit circle", c.id)));
        }
    }
    // Reversing the clockwise list gives a counterclockwise list, which must
    // be a rotation of the angle-sorted order.
    let mut sorted: Vec<&RationalPoint> = points.iter().map(|c| &c.point).collect();
    sorted.sort_by(|a, b| {
        if a == b {
            std::cmp::Ordering::Equal
        } else if angle_less(a, b) {
            std::cmp::Ordering::Less
        } else {
            std::cmp::Ordering::Greater
        }
    });
    let ccw: Vec<&RationalPoint> = points.iter().rev().map(|c| &c.point).collect();
    let start = sorted
        .iter()
        .position(|p| *p == ccw[0])
        .expect("point present");
    let ok = (0..ccw.len()).all(|j| ccw[j] == sorted[(start + j) % sorted.len()]);
    if !ok {
        return Err(Error::Validation(
            "perturbation too large to preserve order".into(),
        ));
    }
    Ok(())
}

/// The 3(k-1)-segment family demonstrating the lower bound, with labels
/// recording the subfamily of origin and endpoint provenance stored for the
/// arc-index helpers.
pub fn build_construction(k: u32) -> Result<Family, Error> {
    build_construction_with(&CirclePointSpec::new(k))
}

pub fn build_construction_with(spec: &CirclePointSpec) -> Result<Family, Error> {
    let points = circle_points(spec)?;
    let lookup = |id: CirclePointId| -> &RationalPoint {
        &points.iter().find(|c| c.id == id).expect("generated").point
    };
    let k = spec.k;
    let last = 3 * (k - 1);
    use CirclePointId::{Base, Left, Right};

    let mut spec_segments: Vec<(&str, CirclePointId, CirclePointId)> = Vec::new();
    // F_1 = {[p_1^r, p_3^l], [p_4, p_6], ..., [p_{3(k-1)-2}, p_{3(k-1)}]}
    spec_segments.push(("F1", Right(1), Left(3)));
    for m in 1..=(k - 2) {
        spec_segments.push(("F1", Base(3 * m + 1), Base(3 * m + 3)));
    }
    // F_2 = {[p_2^r, p_4], [p_5, p_7], ..., [p_{3(k-1)-1}, p_1^l]}
    spec_segments.push(("F2", Right(2), Base(4)));
    for m in 1..=(k - 3) {
        spec_segments.push(("F2", Base(3 * m + 2), Base(3 * m + 4)));
    }
    spec_segments.push(("F2", Base(last - 1), Left(1)));
    // F_3 = {[p_3^r, p_5], [p_6, p_8], ..., [p_{3(k-1)}, p_2^l]}; the middle
    // run follows the stride-3 pattern [p_{3m+3}, p_{3m+5}].
    spec_segments.push(("F3", Right(3), Base(5)));
    for m in 1..=(k - 3) {
        spec_segments.push(("F3", Base(3 * m + 3), Base(3 * m + 5)));
    }
    spec_segments.push(("F3", Base(last), Left(2)));

    let mut members = Vec::new();
    let mut labels = Vec::new();
    let mut provenance = Vec::new();
    for (label, a, b) in spec_segments {
        members.push(ConvexBody::segment(lookup(a).clone(), lookup(b).clone()));
        labels.push(Some(label.to_string()));
        provenance.push((a, b));
    }
    let construction = ConstructionMeta {
        k,
        perturbation: spec.perturbation.clone(),
        point_order: points.iter().map(|c| c.id).collect(),
        provenance,
    };
    Ok(Family {
        members,
        labels,
        source: Source::Generated,
        construction: Some(construction),
    })
}

/// Indices i such that p_i, p_i^l, or p_i^r lies on the clockwise arc spanned
/// by the member's endpoints (endpoints included), where the first endpoint
/// is the one that comes clockwise before the other.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ArcIndexSet {
    pub indices: BTreeSet<u32>,
}

/// Positions of the points of the member's clockwise arc in the full cyclic
/// point order; also used for the point-count checks of the freeness lemma.
pub fn arc_positions(f: &Family, member: usize) -> Result<Vec<usize>, Error> {
    let meta = f
        .construction
        .as_ref()
        .ok_or_else(|| Error::InvalidArgument("member not from a construction".into()))?;
    let (a, b) = *meta
        .provenance
        .get(member)
        .ok_or_else(|| Error::InvalidArgument(format!("member {member} out of range")))?;
    let total = meta.point_order.len();
    let pos = |id: CirclePointId| -> usize {
        meta.point_order.iter().position(|&p| p == id).expect("named point")
    };
    let (pa, pb) = (pos(a), pos(b));
    let d_ab = (pb + total - pa) % total;
    let d_ba = total - d_ab;
    // The endpoint that comes clockwise before the other starts the arc.
    let (start, steps) = if d_ab <= d_ba { (pa, d_ab) } else { (pb, d_ba) };
    Ok((0..=steps).map(|s| (start + s) % total).collect())
}

pub fn arc_index_set(f: &Family, member: usize) -> Result<ArcIndexSet, Error> {
    let meta = f.construction.as_ref().unwrap();
    let positions = arc_positions(f, member)?;
    let indices = positions
        .iter()
        .map(|&p| meta.point_order[p].index())
        .collect();
    Ok(ArcIndexSet { indices })
}

/// Number of points of P (every point except the bases p_1, p_2, p_3) on the
/// member's clockwise arc.
pub fn arc_p_point_count(f: &Family, member: usize) -> Result<usize, Error> {
    let meta = f.construction.as_ref().unwrap();
    let positions = arc_positions(f, member)?;
    Ok(positions
        .iter()
        .filter(|&&p| !matches!(meta.point_order[p], CirclePointId::Base(i) if i <= 3))
        .count())
}

/// True iff p_2^r lies on the member's clockwise arc.
pub fn arc_contains_p2r(f: &Family, member: usize) -> Result<bool, Error> {
    let meta = f.construction.as_ref().unwrap();
    let positions = arc_positions(f, member)?;
    Ok(positions
        .iter()
        .any(|&p| meta.point_order[p] == CirclePointId::Right(2)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geom::bodies_disjoint;
    use crate::rat::rat;

    #[test]
    fn points_on_circle_and_counted() {
        let pts = circle_points(&CirclePointSpec::new(5)).unwrap();
        assert_eq!(pts.len(), 18);
        for c in &pts {
            assert_eq!(c.point.norm_sq(), rat(1));
        }
    }

    #[test]
    fn construction_sizes() {
        for k in [5u32, 6, 7] {
            let f = build_construction(k).unwrap();
            assert_eq!(f.len() as u32, 3 * (k - 1));
        }
    }

    #[test]
    fn k5_first_members_match_pattern() {
        use CirclePointId::{Base, Left, Right};
        let f = build_construction(5).unwrap();
        let prov = &f.construction.as_ref().unwrap().provenance;
        assert_eq!(prov[0], (Right(1), Left(3)));
        assert_eq!(prov[1], (Base(4), Base(6)));
        assert_eq!(prov[4], (Right(2), Base(4)));
        assert_eq!(prov[7], (Base(11), Left(1)));
        assert_eq!(prov[8], (Right(3), Base(5)));
        assert_eq!(prov[10], (Base(9), Base(11)));
        assert_eq!(prov[11], (Base(12), Left(2)));
    }

    #[test]
    fn arc_index_examples() {
        let f = build_construction(5).unwrap();
        let idx = |m: usize| -> Vec<u32> {
            arc_index_set(&f, m).unwrap().indices.into_iter().collect()
        };
        assert_eq!(idx(4), vec![2, 3, 4]); // [p_2^r, p_4]
        assert_eq!(idx(1), vec![4, 5, 6]); // [p_4, p_6]
        assert_eq!(idx(0), vec![1, 2, 3]); // [p_1^r, p_3^l]
    }

    #[test]
    fn arc_point_counts_follow_freeness_lemma() {
        for k in [5u32, 6] {
            let f = build_construction(k).unwrap();
            for m in 0..f.len() {
                let count = arc_p_point_count(&f, m).unwrap();
                assert!(count >= 3, "member {m}: {count}");
                if arc_contains_p2r(&f, m).unwrap() {
                    assert!(count >= 4, "member {m}: {count}");
                }
            }
        }
    }

    #[test]
    fn intersecting_members_share_arc_indices() {
        let f = build_construction(5).unwrap();
        for i in 0..f.len() {
            for j in (i + 1)..f.len() {
                if !bodies_disjoint(&f.members[i], &f.members[j]) {
                    let a = arc_index_set(&f, i).unwrap();
                    let b = arc_index_set(&f, j).unwrap();
                    assert!(
                        a.indices.intersection(&b.indices).next().is_some(),
                        "members {i},{j} intersect but arcs share no index"
                    );
                }
            }
        }
    }

    #[test]
    fn oversized_perturbation_rejected() {
        let spec = CirclePointSpec {
            k: 5,
            perturbation: ratio(3, 4),
        };
        assert!(circle_points(&spec).is_err());
    }

    #[test]
    fn small_k_rejected() {
        assert!(build_construction(4).is_err());
    }

    #[test]
    fn roundtrips_through_json() {
        let f = build_construction(5).unwrap();
        let text = crate::family::save_family(&f);
        let g = crate::family::load_family(&text).unwrap();
        assert!(f.same_members(&g));
        assert_eq!(f.construction, g.construction);
    }
}
