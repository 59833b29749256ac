use num::bigint::BigInt;
use num::{Integer, Signed, Zero};
use std::cmp::Ordering;

use crate::error::Error;
use crate::geom::body::ConvexBody;
use crate::geom::point::RationalPoint;
use crate::rat::Rat;

/// Exact line {(x, y) : ax + by = c} with canonical integer coefficients:
/// content 1 and lexicographically positive leading coefficient, so equality
/// is syntactic.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Line {
    pub a: BigInt,
    pub b: BigInt,
    pub c: BigInt,
}

impl Line {
    pub fn from_coeffs(a: Rat, b: Rat, c: Rat) -> Result<Self, Error> {
        if a.is_zero() && b.is_zero() {
            return Err(Error::InvalidArgument("line with (a,b) = (0,0)".into()));
        }
        // Clear denominators, then reduce by the content.
        let lcm = a.denom().lcm(b.denom()).lcm(c.denom());
        let mut a = (a * Rat::from_integer(lcm.clone())).to_integer();
        let mut b = (b * Rat::from_integer(lcm.clone())).to_integer();
        let mut c = (c * Rat::from_integer(lcm)).to_integer();
        let g = a.gcd(&b).gcd(&c);
        if !g.is_zero() {
            a /= &g;
            b /= &g;
            c /= &g;
        }
        let flip = a.is_negative() || (a.is_zero() && b.is_negative());
        if flip {
            a = -a;
            b = -b;
            c = -c;
        }
        Ok(Line { a, b, c })
    }

    /// Line through two distinct points.
    pub fn through(p: &RationalPoint, q: &RationalPoint) -> Result<Self, Error> {
        if p == q {
            return Err(Error::InvalidArgument("line through coincident points".into()));
        }
        let a = &q.y - &p.y;
        let b = &p.x - &q.x;
        let c = &a * &p.x + &b * &p.y;
        Self::from_coeffs(a, b, c)
    }

    /// Signed evaluation a*x + b*y - c at a point; sign gives the side.
    pub fn eval(&self, p: &RationalPoint) -> Rat {
        Rat::from_integer(self.a.clone()) * &p.x + Rat::from_integer(self.b.clone()) * &p.y
            - Rat::from_integer(self.c.clone())
    }

    pub fn side(&self, p: &RationalPoint) -> i32 {
        match self.eval(p).cmp(&Rat::zero()) {
            Ordering::Less => -1,
            Ordering::Equal => 0,
            Ordering::Greater => 1,
        }
    }

    pub fn contains(&self, p: &RationalPoint) -> bool {
        self.side(p) == 0
    }
}

/// True iff the line meets the closed body: the signed evaluations over the
/// vertices straddle or touch zero.
pub fn line_meets_body(line: &Line, body: &ConvexBody) -> bool {
    let mut has_nonneg = false;
    let mut has_nonpos = false;
    for v in body.vertices() {
        match line.side(v) {
            0 => return true,
            1 => has_nonneg = true,
            _ => has_nonpos = true,
        }
        if has_nonneg && has_nonpos {
            return true;
        }
    }
    false
}

/// Exact squared distance from the body to the line; zero iff they meet.
pub fn distance_lower_bound(body: &ConvexBody, line: &Line) -> Rat {
    if line_meets_body(line, body) {
        return Rat::zero();
    }
    let norm_sq = Rat::from_integer(&line.a * &line.a + &line.b * &line.b);
    body.vertices()
        .iter()
        .map(|v| {
            let e = line.eval(v);
            &e * &e / &norm_sq
        })
        .min()
        .expect("nonempty body")
}
