//! Open regions cut out of the unit disk by the chord system, the cover
//! labeling used by the fixed-point search, and the first-quadrant region
//! selector used during witness extraction.
//!
//! Region i (1-based, i in 1..=n) sits against the open arc from f_{i-1} to
//! f_i. For i <= k-3 only the two adjacent chords bound it; for i >= k-2
//! every distinct chord separates it from the rest of the disk. Membership
//! tests are strict floating-point half-plane tests with the arc midpoint
//! fixing the side; exactness is recovered downstream when certificates are
//! verified over the rationals.

use crate::error::Error;
use crate::geom::{cross_f, FloatPoint};

use super::chords::{ChordSystem, FloatBody, SimplexPoint};

/// True iff every vertex of `body` lies strictly inside region i of the
/// system induced by `x`. Region i is empty whenever x_i = 0.
pub fn region_contains(x: &SimplexPoint, k: usize, i: usize, body: &FloatBody) -> Result<bool, Error> {
    let sys = ChordSystem::new(x, k)?;
    let n = sys.n();
    if i < 1 || i > n {
        return Err(Error::InvalidArgument(format!(
            "region index {i} out of range 1..={n}"
        )));
    }
    Ok(region_contains_sys(&sys, i, body))
}

pub(crate) fn region_contains_sys(sys: &ChordSystem, i: usize, body: &FloatBody) -> bool {
    let n = sys.n();
    // Zero arc mass: the region is empty.
    if sys.prefix[i] - sys.prefix[i - 1] < 1e-14 {
        return false;
    }
    if body.vertices.is_empty() || body.max_norm() >= 1.0 {
        return false;
    }
    let mid = sys.arc_mid(i);
    let constraints: Vec<usize> = if i <= sys.k - 3 {
        vec![(i + n - 1) % n, i % n]
    } else {
        (0..sys.k - 2).collect()
    };
    for j in constraints {
        if sys.chord_degenerate(j) {
            continue;
        }
        let (a, b) = sys.chord(j);
        let side_mid = cross_f(a, b, mid);
        if side_mid == 0.0 {
            return false;
        }
        for v in &body.vertices {
            let s = cross_f(a, b, *v);
            if s == 0.0 || (s > 0.0) != (side_mid > 0.0) {
                return false;
            }
        }
    }
    true
}

/// Label assigned to a simplex point by the cover: either every member is
/// within `tau` of some chord, or a region whose coordinate is positive
/// contains a member untouched by all chords.
#[derive(Debug, Clone, PartialEq)]
pub enum CoverLabel {
    /// Every member is within tau of one of these k-2 chord segments.
    Pierced(Vec<(FloatPoint, FloatPoint)>),
    Region(usize),
}

impl CoverLabel {
    pub fn region_index(&self) -> Option<usize> {
        match self {
            CoverLabel::Region(i) => Some(*i),
            CoverLabel::Pierced(_) => None,
        }
    }
}

pub fn cover_label(
    x: &SimplexPoint,
    k: usize,
    members: &[FloatBody],
    tau: f64,
) -> Result<CoverLabel, Error> {
    cover_label_with_member(x, k, members, tau).map(|(l, _)| l)
}

/// As `cover_label`, also reporting which member witnessed a region label.
pub(crate) fn cover_label_with_member(
    x: &SimplexPoint,
    k: usize,
    members: &[FloatBody],
    tau: f64,
) -> Result<(CoverLabel, Option<usize>), Error> {
    if tau < 0.0 || !tau.is_finite() {
        return Err(Error::InvalidArgument("tau must be nonnegative".into()));
    }
    if members.is_empty() {
        return Err(Error::InvalidArgument("empty family".into()));
    }
    let sys = ChordSystem::new(x, k)?;
    let n = sys.n();
    let unmet: Vec<usize> = (0..members.len())
        .filter(|&m| {
            (0..k - 2).all(|j| sys.dist_to_chord(j, &members[m]) > tau)
        })
        .collect();
    if unmet.is_empty() {
        let chords = (0..k - 2).map(|j| sys.chord(j)).collect();
        return Ok((CoverLabel::Pierced(chords), None));
    }
    // Smallest region index containing an unmet member. The covering lemma
    // guarantees one exists for each unmet member, so the scan terminates in
    // exact arithmetic; a margin-based fallback guards the float boundary.
    for i in 1..=n {
        if x.coords()[i - 1] <= 0.0 {
            continue;
        }
        if let Some(&m) = unmet
            .iter()
            .find(|&&m| region_contains_sys(&sys, i, &members[m]))
        {
            return Ok((CoverLabel::Region(i), Some(m)));
        }
    }
    // Fallback: pick the positive-coordinate region with the best worst-case
    // signed margin over an unmet member's vertices.
    let mut best: Option<(f64, usize, usize)> = None;
    for i in 1..=n {
        if x.coords()[i - 1] <= 0.0 {
            continue;
        }
        for &m in &unmet {
            let margin = region_margin(&sys, i, &members[m]);
            if best.is_none_or(|(b, _, _)| margin > b) {
                best = Some((margin, i, m));
            }
        }
    }
    best.map(|(_, i, m)| (CoverLabel::Region(i), Some(m))).ok_or_else(|| {
        Error::Validation("cover labeling failed: no region with positive coordinate".into())
    })
}

/// Worst-case signed margin of the body's vertices against the region's
/// bounding chords (positive means strictly inside).
fn region_margin(sys: &ChordSystem, i: usize, body: &FloatBody) -> f64 {
    let n = sys.n();
    let mid = sys.arc_mid(i);
    let constraints: Vec<usize> = if i <= sys.k - 3 {
        vec![(i + n - 1) % n, i % n]
    } else {
        (0..sys.k - 2).collect()
    };
    let mut worst = f64::INFINITY;
    for j in constraints {
        if sys.chord_degenerate(j) {
            continue;
        }
        let (a, b) = sys.chord(j);
        let len = a.dist(&b).max(1e-30);
        let sgn = cross_f(a, b, mid).signum();
        for v in &body.vertices {
            worst = worst.min(sgn * cross_f(a, b, *v) / len);
        }
    }
    worst
}

/// Index j in 1..=k-3 such that region j lies inside the first quadrant
/// sector Q_1 bounded by chords l_{k-3} and l_{k-2} around the arc from f_0
/// to f_{k-3}. Requires all coordinates positive (all regions nonempty).
pub fn quadrant_region_index(x: &SimplexPoint, k: usize) -> Result<usize, Error> {
    let sys = ChordSystem::new(x, k)?;
    if x.coords().iter().any(|&c| c <= 0.0) {
        return Err(Error::InvalidArgument(
            "quadrant selection requires all regions nonempty".into(),
        ));
    }
    let q_mid = sys.q1_arc_mid();
    let q_chords = [k - 3, k - 2];
    let inside_q1 = |p: FloatPoint| -> f64 {
        let mut worst = f64::INFINITY;
        for &j in &q_chords {
            if sys.chord_degenerate(j) {
                continue;
            }
            let (a, b) = sys.chord(j);
            let len = a.dist(&b).max(1e-30);
            let sgn = cross_f(a, b, q_mid).signum();
            worst = worst.min(sgn * cross_f(a, b, p) / len);
        }
        worst
    };
    let mut best: Option<(f64, usize)> = None;
    for j in 1..=k - 3 {
        // Sample the closure of region j: arc endpoints, arc midpoint, and
        // the intersection of its bounding chords when it exists.
        let mut samples = vec![
            sys.boundary[j - 1],
            sys.boundary[j % sys.n()],
            sys.arc_mid(j),
        ];
        if let Some(v) = chord_intersection(&sys, (j + sys.n() - 1) % sys.n(), j % sys.n()) {
            if v.norm() <= 1.0 + 1e-9 {
                samples.push(v);
            }
        }
        let margin = samples
            .iter()
            .map(|&p| inside_q1(p))
            .fold(f64::INFINITY, f64::min);
        if margin >= -1e-12 {
            return Ok(j);
        }
        if best.is_none_or(|(b, _)| margin > b) {
            best = Some((margin, j));
        }
    }
    // Float boundary fallback: the best-margin candidate, deterministically.
    Ok(best.expect("k >= 5 gives at least one candidate").1)
}

fn chord_intersection(sys: &ChordSystem, i: usize, j: usize) -> Option<FloatPoint> {
    if sys.chord_degenerate(i) || sys.chord_degenerate(j) {
        return None;
    }
    let (a, b) = sys.chord(i);
    let (c, d) = sys.chord(j);
    let (r, s) = (
        FloatPoint::new(b.x - a.x, b.y - a.y),
        FloatPoint::new(d.x - c.x, d.y - c.y),
    );
    let denom = r.x * s.y - r.y * s.x;
    if denom.abs() < 1e-14 {
        return None;
    }
    let t = ((c.x - a.x) * s.y - (c.y - a.y) * s.x) / denom;
    Some(FloatPoint::new(a.x + t * r.x, a.y + t * r.y))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geom::{ConvexBody, RationalPoint};
    use crate::rat::ratio;

    fn tiny_body_at(x: f64, y: f64) -> FloatBody {
        // 1e-3-sized triangle around (x, y) in float space.
        let d = 1e-3;
        FloatBody {
            vertices: vec![
                FloatPoint::new(x - d, y - d),
                FloatPoint::new(x + d, y - d),
                FloatPoint::new(x, y + d),
            ],
        }
    }

    #[test]
    fn barycenter_region_membership() {
        let x = SimplexPoint::barycenter(6);
        // Region 1 spans the arc (0, 60) degrees; a tiny body near its arc
        // midpoint at radius 0.95 sits inside.
        let mid = FloatPoint::new(0.95 * (30f64.to_radians()).cos(), 0.95 * (30f64.to_radians()).sin());
        let inside = tiny_body_at(mid.x, mid.y);
        assert!(region_contains(&x, 5, 1, &inside).unwrap());
        // The same body is not in region 2 or region 4.
        assert!(!region_contains(&x, 5, 2, &inside).unwrap());
        assert!(!region_contains(&x, 5, 4, &inside).unwrap());
        // A body near the opposite arc lands in region 4 = R^{k-2}.
        let opp = tiny_body_at(0.95 * (210f64.to_radians()).cos(), 0.95 * (210f64.to_radians()).sin());
        assert!(region_contains(&x, 5, 4, &opp).unwrap());
        assert!(!region_contains(&x, 5, 1, &opp).unwrap());
    }

    #[test]
    fn zero_coordinate_region_is_empty() {
        let x = SimplexPoint::new(vec![0.0, 0.2, 0.2, 0.2, 0.2, 0.2]).unwrap();
        let body = tiny_body_at(0.5, 0.1);
        assert!(!region_contains(&x, 5, 1, &body).unwrap());
    }

    #[test]
    fn region_index_out_of_range() {
        let x = SimplexPoint::barycenter(6);
        let body = tiny_body_at(0.5, 0.1);
        assert!(region_contains(&x, 5, 0, &body).is_err());
        assert!(region_contains(&x, 5, 7, &body).is_err());
    }

    #[test]
    fn cover_label_pierced_and_region() {
        let x = SimplexPoint::barycenter(6);
        // A body straddling the horizontal diameter l_0 is pierced.
        let center = FloatBody {
            vertices: vec![
                FloatPoint::new(0.4, -0.05),
                FloatPoint::new(0.5, -0.05),
                FloatPoint::new(0.45, 0.05),
            ],
        };
        let label = cover_label(&x, 5, &[center], 0.0).unwrap();
        assert!(matches!(label, CoverLabel::Pierced(ref chords) if chords.len() == 3));
        // A body hiding in region 2 forces label 2.
        let hidden = tiny_body_at(
            0.95 * (90f64.to_radians()).cos(),
            0.95 * (90f64.to_radians()).sin(),
        );
        assert_eq!(
            cover_label(&x, 5, &[hidden], 0.0).unwrap(),
            CoverLabel::Region(2)
        );
    }

    #[test]
    fn cover_label_respects_tau() {
        let x = SimplexPoint::barycenter(6);
        // Distance from this body to the nearest diameter is about 0.02.
        let near = tiny_body_at(0.5, 0.022);
        assert!(matches!(
            cover_label(&x, 5, std::slice::from_ref(&near), 0.1).unwrap(),
            CoverLabel::Pierced(_)
        ));
        assert!(matches!(
            cover_label(&x, 5, &[near], 1e-6).unwrap(),
            CoverLabel::Region(_)
        ));
    }

    #[test]
    fn quadrant_index_at_barycenter() {
        let x = SimplexPoint::barycenter(6);
        // For k=5 the only candidates are j in {1, 2}; by symmetry both
        // regions sit inside Q_1 and the scan returns 1.
        assert_eq!(quadrant_region_index(&x, 5).unwrap(), 1);
        let y = SimplexPoint::new(vec![0.05, 0.45, 0.1, 0.1, 0.2, 0.1]).unwrap();
        let j = quadrant_region_index(&y, 5).unwrap();
        assert!((1..=2).contains(&j));
    }

    #[test]
    fn quadrant_index_requires_positive_coords() {
        let x = SimplexPoint::new(vec![0.0, 0.2, 0.2, 0.2, 0.2, 0.2]).unwrap();
        assert!(quadrant_region_index(&x, 5).is_err());
    }

    #[test]
    fn float_body_roundtrip() {
        let b = ConvexBody::hull(&[
            RationalPoint::new(ratio(1, 2), ratio(1, 4)),
            RationalPoint::new(ratio(-1, 2), ratio(1, 4)),
            RationalPoint::new(ratio(0, 1), ratio(-1, 2)),
        ])
        .unwrap();
        let fb = FloatBody::of(&b);
        assert_eq!(fb.vertices.len(), 3);
        assert!(fb.max_norm() < 1.0);
    }
}
