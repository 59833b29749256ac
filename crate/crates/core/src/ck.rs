//! Tight-triple and C(k) machinery: certificate verification and exhaustive
//! C(k) search with pruning.
//!
//! A C(k) for k >= 4 is an ordered family whose consecutive-pair convex hull
//! unions are pairwise disjoint whenever the position pairs are cyclically
//! non-adjacent. A C(3) is three pairwise disjoint sets that are not a tight
//! triple.

use itertools::Itertools;
use std::collections::HashMap;

use crate::error::Error;
use crate::family::Family;
use crate::geom::{bodies_disjoint, intersect_bodies, ConvexBody};

/// True iff the three pairwise hull unions share a common point.
pub fn is_tight_triple(a: &ConvexBody, b: &ConvexBody, c: &ConvexBody) -> bool {
    let ab = a.union_hull(b);
    let bc = b.union_hull(c);
    let ca = c.union_hull(a);
    match intersect_bodies(&ab, &bc) {
        None => false,
        Some(i) => intersect_bodies(&i, &ca).is_some(),
    }
}

/// Ordered witness of a C(k): `order` lists k distinct member indices, and
/// `checked_pairs` records which hull pairs were verified disjoint.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CkCertificate {
    pub k: usize,
    pub order: Vec<usize>,
    pub checked_pairs: Vec<((usize, usize), (usize, usize))>,
}

/// Verification outcome: a certificate, or the first violated condition.
#[derive(Debug, Clone)]
pub enum VerifyOutcome {
    Valid(CkCertificate),
    Rejected(String),
}

impl VerifyOutcome {
    pub fn is_valid(&self) -> bool {
        matches!(self, VerifyOutcome::Valid(_))
    }

    pub fn certificate(self) -> Option<CkCertificate> {
        match self {
            VerifyOutcome::Valid(c) => Some(c),
            VerifyOutcome::Rejected(_) => None,
        }
    }
}

/// Checks an ordered index list against the C(k) conditions.
pub fn verify_ck(f: &Family, order: &[usize]) -> Result<VerifyOutcome, Error> {
    let k = order.len();
    if k < 3 {
        return Err(Error::InvalidArgument("order must have k >= 3 indices".into()));
    }
    let mut seen = vec![false; f.len()];
    for &i in order {
        if i >= f.len() {
            return Err(Error::InvalidArgument(format!("index {i} out of range")));
        }
        if seen[i] {
            return Err(Error::InvalidArgument(format!("duplicate index {i}")));
        }
        seen[i] = true;
    }
    if k == 3 {
        return Ok(verify_c3(f, order));
    }
    let mut checked = Vec::new();
    for i in 0..k {
        for j in (i + 1)..k {
            if !positions_nonadjacent(i, j, k) {
                continue;
            }
            let pair_i = (order[i], order[(i + 1) % k]);
            let pair_j = (order[j], order[(j + 1) % k]);
            let hull_i = f.members[pair_i.0].union_hull(&f.members[pair_i.1]);
            let hull_j = f.members[pair_j.0].union_hull(&f.members[pair_j.1]);
            if !bodies_disjoint(&hull_i, &hull_j) {
                return Ok(VerifyOutcome::Rejected(format!(
                    "hulls of pairs {pair_i:?} and {pair_j:?} intersect"
                )));
            }
            checked.push((pair_i, pair_j));
        }
    }
    Ok(VerifyOutcome::Valid(CkCertificate {
        k,
        order: order.to_vec(),
        checked_pairs: checked,
    }))
}

fn verify_c3(f: &Family, order: &[usize]) -> VerifyOutcome {
    let (a, b, c) = (order[0], order[1], order[2]);
    let mut checked = Vec::new();
    for (i, j) in [(a, b), (b, c), (a, c)] {
        if !bodies_disjoint(&f.members[i], &f.members[j]) {
            return VerifyOutcome::Rejected(format!("members {i} and {j} intersect"));
        }
        checked.push(((i, i), (j, j)));
    }
    if is_tight_triple(&f.members[a], &f.members[b], &f.members[c]) {
        return VerifyOutcome::Rejected("members form a tight triple".into());
    }
    VerifyOutcome::Valid(CkCertificate {
        k: 3,
        order: order.to_vec(),
        checked_pairs: checked,
    })
}

/// Position pairs (i, i+1) and (j, j+1) share no position, cyclically.
fn positions_nonadjacent(i: usize, j: usize, k: usize) -> bool {
    let pi = [i, (i + 1) % k];
    let pj = [j, (j + 1) % k];
    pi.iter().all(|p| !pj.contains(p))
}

/// Unordered member pair, smaller index first.
type Pair = (usize, usize);

/// Precomputed disjointness of consecutive-pair hull unions, keyed by
/// unordered member pairs. Makes the order search pure table lookups.
struct PairHullTable {
    n: usize,
    member_disjoint: Vec<bool>,
    hull_disjoint: HashMap<(Pair, Pair), bool>,
}

impl PairHullTable {
    fn build(f: &Family) -> Self {
        let n = f.len();
        let mut member_disjoint = vec![false; n * n];
        for i in 0..n {
            for j in (i + 1)..n {
                let d = bodies_disjoint(&f.members[i], &f.members[j]);
                member_disjoint[i * n + j] = d;
                member_disjoint[j * n + i] = d;
            }
        }
        let mut hulls = HashMap::new();
        for i in 0..n {
            for j in (i + 1)..n {
                hulls.insert((i, j), f.members[i].union_hull(&f.members[j]));
            }
        }
        let keys: Vec<(usize, usize)> = hulls.keys().copied().sorted().collect();
        let mut hull_disjoint = HashMap::new();
        for (ai, a) in keys.iter().enumerate() {
            for b in keys.iter().skip(ai + 1) {
                let d = bodies_disjoint(&hulls[a], &hulls[b]);
                hull_disjoint.insert((*a, *b), d);
                hull_disjoint.insert((*b, *a), d);
            }
        }
        PairHullTable {
            n,
            member_disjoint,
            hull_disjoint,
        }
    }

    fn members_disjoint(&self, i: usize, j: usize) -> bool {
        self.member_disjoint[i * self.n + j]
    }

    fn pair_hulls_disjoint(&self, a: (usize, usize), b: (usize, usize)) -> bool {
        let a = normalize(a);
        let b = normalize(b);
        if a == b {
            return false;
        }
        self.hull_disjoint[&(a, b)]
    }
}

fn normalize(p: (usize, usize)) -> (usize, usize) {
    if p.0 <= p.1 {
        p
    } else {
        (p.1, p.0)
    }
}

/// Exhaustive C(k) search over all k-subsets and all cyclic orders up to
/// rotation and reflection, pruning a partial order as soon as one required
/// disjointness fails. Returns the lexicographically least certificate, or
/// None, which proves C(k)-freeness.
pub fn find_ck(f: &Family, k: usize) -> Result<Option<CkCertificate>, Error> {
    if k < 3 {
        return Err(Error::InvalidArgument("k must be at least 3".into()));
    }
    if f.len() < k {
        return Ok(None);
    }
    let table = PairHullTable::build(f);
    if k == 3 {
        for combo in (0..f.len()).combinations(3) {
            let (a, b, c) = (combo[0], combo[1], combo[2]);
            if table.members_disjoint(a, b)
                && table.members_disjoint(b, c)
                && table.members_disjoint(a, c)
                && !is_tight_triple(&f.members[a], &f.members[b], &f.members[c])
            {
                return Ok(verify_ck(f, &combo)?.certificate());
            }
        }
        return Ok(None);
    }
    for combo in (0..f.len()).combinations(k) {
        // Quick necessary condition: all members of a C(k) are pairwise disjoint.
        let all_disjoint = combo
            .iter()
            .tuple_combinations()
            .all(|(&a, &b)| table.members_disjoint(a, b));
        if !all_disjoint {
            continue;
        }
        let mut order = vec![combo[0]];
        if let Some(found) = search_orders(&table, &combo, &mut order, k) {
            return Ok(verify_ck(f, &found)?.certificate());
        }
    }
    Ok(None)
}

/// Depth-first enumeration of cyclic orders with the first subset element
/// pinned at position 0 and reflection killed by requiring the element at
/// position 1 to be smaller than the element at position k-1.
fn search_orders(
    table: &PairHullTable,
    subset: &[usize],
    order: &mut Vec<usize>,
    k: usize,
) -> Option<Vec<usize>> {
    let t = order.len();
    if t == k {
        // Close the cycle: pair (k-1, 0) against interior pairs.
        let wrap = (order[k - 1], order[0]);
        for j in 1..=(k - 3) {
            if !table.pair_hulls_disjoint(wrap, (order[j], order[j + 1])) {
                return None;
            }
        }
        return Some(order.clone());
    }
    for &cand in subset.iter().skip(1) {
        if order.contains(&cand) {
            continue;
        }
        if t == k - 1 && order[1] > cand {
            // Reflection canonicalization.
            continue;
        }
        let new_pair = (order[t - 1], cand);
        // Check against completed pairs, most recent (most constrained) first.
        let mut ok = true;
        if t >= 3 {
            for j in (0..=(t - 3)).rev() {
                if !table.pair_hulls_disjoint(new_pair, (order[j], order[j + 1])) {
                    ok = false;
                    break;
                }
            }
        }
        if ok {
            order.push(cand);
            if let Some(found) = search_orders(table, subset, order, k) {
                return Some(found);
            }
            order.pop();
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geom::RationalPoint;

    fn p(x: i64, y: i64) -> RationalPoint {
        RationalPoint::from_ints(x, y)
    }

    fn points_family(pts: &[(i64, i64)]) -> Family {
        Family::new(
            pts.iter()
                .map(|&(x, y)| ConvexBody::point(p(x, y)))
                .collect(),
        )
    }

    #[test]
    fn collinear_points_are_tight() {
        assert!(is_tight_triple(
            &ConvexBody::point(p(0, 0)),
            &ConvexBody::point(p(1, 0)),
            &ConvexBody::point(p(2, 0)),
        ));
    }

    #[test]
    fn triangle_vertices_not_tight() {
        assert!(!is_tight_triple(
            &ConvexBody::point(p(0, 0)),
            &ConvexBody::point(p(1, 0)),
            &ConvexBody::point(p(0, 1)),
        ));
    }

    #[test]
    fn transversal_triples_are_tight() {
        // Three disjoint segments crossed by y = 0.
        let a = ConvexBody::segment(p(0, -1), p(0, 1));
        let b = ConvexBody::segment(p(2, -1), p(2, 1));
        let c = ConvexBody::segment(p(4, -1), p(4, 1));
        assert!(is_tight_triple(&a, &b, &c));
    }

    #[test]
    fn square_corners_form_c4() {
        let f = points_family(&[(1, 1), (-1, 1), (-1, -1), (1, -1)]);
        let out = verify_ck(&f, &[0, 1, 2, 3]).unwrap();
        assert!(out.is_valid());
        // Crossing order is rejected: the diagonal hulls intersect.
        let bad = verify_ck(&f, &[0, 2, 1, 3]).unwrap();
        assert!(!bad.is_valid());
    }

    #[test]
    fn verify_rejects_bad_indices() {
        let f = points_family(&[(0, 0), (1, 0), (2, 0), (3, 0)]);
        assert!(verify_ck(&f, &[0, 1, 1, 2]).is_err());
        assert!(verify_ck(&f, &[0, 1, 2, 9]).is_err());
        assert!(verify_ck(&f, &[0, 1]).is_err());
    }

    #[test]
    fn convex_position_points_yield_ck() {
        // Regular-pentagon-ish convex position.
        let f = points_family(&[(0, 10), (-9, 3), (-6, -8), (6, -8), (9, 3)]);
        let cert = find_ck(&f, 5).unwrap().expect("C(5) expected");
        assert_eq!(cert.order, vec![0, 1, 2, 3, 4]);
        // All cyclic orders other than convex position (up to rotation and
        // reflection) fail.
        use itertools::Itertools;
        let mut valid = 0;
        for perm in (1..5).permutations(4) {
            if perm[0] > perm[3] {
                continue;
            }
            let mut order = vec![0];
            order.extend(perm);
            if verify_ck(&f, &order).unwrap().is_valid() {
                valid += 1;
            }
        }
        assert_eq!(valid, 1);
    }

    #[test]
    fn c3_detection() {
        // Disjoint, not a tight triple: triangle corner points.
        let f = points_family(&[(0, 0), (4, 0), (0, 4)]);
        let cert = find_ck(&f, 3).unwrap().expect("C(3) expected");
        assert_eq!(cert.order, vec![0, 1, 2]);
        // Collinear points are a tight triple, hence C(3)-free.
        let g = points_family(&[(0, 0), (1, 0), (2, 0)]);
        assert!(find_ck(&g, 3).unwrap().is_none());
    }

    #[test]
    fn single_member_free() {
        let f = points_family(&[(0, 0)]);
        assert!(find_ck(&f, 3).unwrap().is_none());
        assert!(find_ck(&f, 4).unwrap().is_none());
    }

    #[test]
    fn k_below_three_rejected() {
        let f = points_family(&[(0, 0)]);
        assert!(find_ck(&f, 2).is_err());
    }
}
