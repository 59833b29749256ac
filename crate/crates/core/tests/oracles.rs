//! Independent oracles and seeded generators backing the acceptance suite.
//!
//! The oracles deliberately avoid the library's decision paths: disjointness
//! goes through half-plane clipping instead of separating axes, the C(k)
//! search enumerates every canonical order with no pruning, and transversal
//! existence is probed by rotational sampling of projection intervals.

use itertools::Itertools;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use ckpierce::ck::{verify_ck, CkCertificate};
use ckpierce::family::Family;
use ckpierce::geom::{intersect_bodies, ConvexBody, RationalPoint};
use ckpierce::rat::rat_to_f64;

/// Disjointness via Sutherland-Hodgman clipping: bodies are disjoint iff
/// their exact intersection is empty.
pub fn disjoint_by_clipping(a: &ConvexBody, b: &ConvexBody) -> bool {
    intersect_bodies(a, b).is_none()
}

/// Pruning-free C(k) search. Enumerates k-subsets in lexicographic order and,
/// for each, every cyclic order with the smallest index pinned at position 0
/// and reflections removed by order[1] < order[k-1], checking each candidate
/// in full with verify_ck. Returns the first (lexicographically least) valid
/// certificate, matching the canonical order of the pruned search.
pub fn brute_force_find_ck(f: &Family, k: usize) -> Option<CkCertificate> {
    assert!(k >= 3);
    if f.len() < k {
        return None;
    }
    for combo in (0..f.len()).combinations(k) {
        if k == 3 {
            if let Some(cert) = verify_ck(f, &combo).unwrap().certificate() {
                return Some(cert);
            }
            continue;
        }
        for perm in combo[1..].iter().copied().permutations(k - 1) {
            if perm[0] > perm[k - 2] {
                continue;
            }
            let mut order = vec![combo[0]];
            order.extend(perm);
            if let Some(cert) = verify_ck(f, &order).unwrap().certificate() {
                return Some(cert);
            }
        }
    }
    None
}

/// Best projection-interval overlap over `dirs` sampled line directions.
/// A line with unit normal u meets every listed member iff the projections
/// of the members onto u share a common value, so a positive return value
/// witnesses a transversal (up to float error) and exact infeasibility
/// forces the sampled maximum to stay non-positive up to rounding.
pub fn sampled_transversal_width(f: &Family, subset: &[usize], dirs: usize) -> f64 {
    let polys: Vec<Vec<(f64, f64)>> = subset
        .iter()
        .map(|&i| {
            f.members[i]
                .vertices()
                .iter()
                .map(|v| (rat_to_f64(&v.x), rat_to_f64(&v.y)))
                .collect()
        })
        .collect();
    let mut best = f64::NEG_INFINITY;
    for t in 0..dirs {
        let theta = std::f64::consts::PI * t as f64 / dirs as f64;
        let (nx, ny) = (theta.cos(), theta.sin());
        let mut lo = f64::NEG_INFINITY;
        let mut hi = f64::INFINITY;
        for poly in &polys {
            let mut mn = f64::INFINITY;
            let mut mx = f64::NEG_INFINITY;
            for &(x, y) in poly {
                let p = nx * x + ny * y;
                mn = mn.min(p);
                mx = mx.max(p);
            }
            lo = lo.max(mn);
            hi = hi.min(mx);
        }
        best = best.max(hi - lo);
    }
    best
}

fn random_point(rng: &mut ChaCha8Rng, range: i64) -> RationalPoint {
    RationalPoint::from_ints(rng.gen_range(-range..=range), rng.gen_range(-range..=range))
}

/// Random convex body: hull of 3-6 integer points. Degenerate draws collapse
/// to segments or points, which is intended coverage.
pub fn random_body(rng: &mut ChaCha8Rng, range: i64) -> ConvexBody {
    let count = rng.gen_range(3..=6);
    let pts: Vec<RationalPoint> = (0..count).map(|_| random_point(rng, range)).collect();
    ConvexBody::hull(&pts).unwrap()
}

pub fn random_family(rng: &mut ChaCha8Rng, members: usize, range: i64) -> Family {
    Family::new((0..members).map(|_| random_body(rng, range)).collect())
}

/// Random verified C(k): k small bodies spread around a large circle in
/// convex position, re-drawn until verify_ck accepts the circular order.
pub fn random_ck_family(rng: &mut ChaCha8Rng, k: usize) -> (Family, CkCertificate) {
    loop {
        let members: Vec<ConvexBody> = (0..k)
            .map(|i| {
                let jitter = rng.gen_range(-0.25..0.25) / k as f64;
                let theta = 2.0 * std::f64::consts::PI * (i as f64 / k as f64 + jitter);
                let (cx, cy) = (
                    (10_000.0 * theta.cos()).round() as i64,
                    (10_000.0 * theta.sin()).round() as i64,
                );
                let count = rng.gen_range(3..=5);
                let pts: Vec<RationalPoint> = (0..count)
                    .map(|_| {
                        RationalPoint::from_ints(
                            cx + rng.gen_range(-800..=800),
                            cy + rng.gen_range(-800..=800),
                        )
                    })
                    .collect();
                ConvexBody::hull(&pts).unwrap()
            })
            .collect();
        let f = Family::new(members);
        let order: Vec<usize> = (0..k).collect();
        if let Some(cert) = verify_ck(&f, &order).unwrap().certificate() {
            return (f, cert);
        }
    }
}

/// Random C(5)-free family of long segments biased to cross near the origin,
/// re-drawn until the exhaustive search certifies freeness.
pub fn random_c5_free_segments(
    rng: &mut ChaCha8Rng,
    members: usize,
) -> Family {
    loop {
        let bodies: Vec<ConvexBody> = (0..members)
            .map(|_| {
                let theta = rng.gen_range(0.0..std::f64::consts::PI);
                let (dx, dy) = (theta.cos(), theta.sin());
                let r = 5_000.0;
                let (ox, oy) = (rng.gen_range(-400..=400), rng.gen_range(-400..=400));
                let a = RationalPoint::from_ints(
                    (r * dx).round() as i64 + ox,
                    (r * dy).round() as i64 + oy,
                );
                let b = RationalPoint::from_ints(
                    (-r * dx).round() as i64 + ox,
                    (-r * dy).round() as i64 + oy,
                );
                ConvexBody::segment(a, b)
            })
            .collect();
        let f = Family::new(bodies);
        if ckpierce::ck::find_ck(&f, 5).unwrap().is_none() {
            return f;
        }
    }
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}
