//! Ready-made families: a convex-position point pentagon (a C(5)) and seeded
//! general-position point sets.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::Error;
use crate::family::{Family, Source};
use crate::geom::{orient, ConvexBody, RationalPoint};
use crate::rat::ratio;

/// Five points in convex position near a regular pentagon of radius 4/5,
/// rotated so no diagonal lines up with (1, 0). Their convex-position cyclic
/// order is a C(5).
pub fn pentagon_ck() -> Family {
    let coords: [(i64, i64); 5] = [
        (0, 8000),
        (-7608, 2472),
        (-4702, -6472),
        (4702, -6472),
        (7608, 2472),
    ];
    let members = coords
        .iter()
        .map(|&(x, y)| ConvexBody::point(RationalPoint::new(ratio(x, 10_000), ratio(y, 10_000))))
        .collect();
    let mut f = Family::new(members);
    f.labels = (1..=5).map(|i| Some(format!("P{i}"))).collect();
    f.source = Source::Generated;
    f
}

/// `n` one-vertex members with integer coordinates, no three collinear and
/// no two equal; deterministic for a fixed seed (rejection sampling).
pub fn general_position_points(n: usize, seed: u64) -> Result<Family, Error> {
    if n == 0 {
        return Err(Error::InvalidArgument("need at least one point".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut points: Vec<RationalPoint> = Vec::with_capacity(n);
    let mut attempts = 0usize;
    while points.len() < n {
        attempts += 1;
        if attempts > 100_000 {
            return Err(Error::Validation(
                "failed to sample points in general position".into(),
            ));
        }
        let p = RationalPoint::from_ints(rng.gen_range(-1000..=1000), rng.gen_range(-1000..=1000));
        if points.contains(&p) {
            continue;
        }
        let collinear = points
            .iter()
            .enumerate()
            .any(|(i, a)| points[i + 1..].iter().any(|b| orient(a, b, &p) == 0));
        if collinear {
            continue;
        }
        points.push(p);
    }
    let mut f = Family::new(points.into_iter().map(ConvexBody::point).collect());
    f.source = Source::Generated;
    Ok(f)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ck::{find_ck, verify_ck};

    #[test]
    fn pentagon_is_a_c5() {
        let f = pentagon_ck();
        assert!(verify_ck(&f, &[0, 1, 2, 3, 4]).unwrap().is_valid());
        assert!(find_ck(&f, 5).unwrap().is_some());
    }

    #[test]
    fn general_position_holds() {
        let f = general_position_points(8, 0).unwrap();
        assert_eq!(f.len(), 8);
        let pts: Vec<_> = f.members.iter().map(|m| m.vertices()[0].clone()).collect();
        for i in 0..8 {
            for j in i + 1..8 {
                for l in j + 1..8 {
                    assert_ne!(orient(&pts[i], &pts[j], &pts[l]), 0);
                }
            }
        }
        // Same seed, same family; different seed, different family.
        assert!(f.same_members(&general_position_points(8, 0).unwrap()));
        assert!(!f.same_members(&general_position_points(8, 1).unwrap()));
    }
}
