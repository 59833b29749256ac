//! Family container, exact JSON serialization, and the normalization that
//! scales a family strictly into the open unit disk.

use num::{One, Signed, Zero};
use serde_json::{json, Map, Value};
use std::fmt;

use crate::error::Error;
use crate::geom::{ConvexBody, Line, RationalPoint};
use crate::rat::{format_rat, parse_rat, ratio, Rat};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Source {
    Generated,
    Loaded,
}

/// Named point of a lower-bound construction: a base point `p_i` or one of
/// the perturbed points `p_i^l` / `p_i^r`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CirclePointId {
    Base(u32),
    Left(u32),
    Right(u32),
}

impl CirclePointId {
    pub fn index(&self) -> u32 {
        match self {
            CirclePointId::Base(i) | CirclePointId::Left(i) | CirclePointId::Right(i) => *i,
        }
    }

    pub fn parse(s: &str) -> Result<Self, Error> {
        let bad = || Error::Parse(format!("invalid point name: {s:?}"));
        let rest = s.strip_prefix('p').ok_or_else(bad)?;
        if let Some(i) = rest.strip_suffix('l') {
            Ok(CirclePointId::Left(i.parse().map_err(|_| bad())?))
        } else if let Some(i) = rest.strip_suffix('r') {
            Ok(CirclePointId::Right(i.parse().map_err(|_| bad())?))
        } else {
            Ok(CirclePointId::Base(rest.parse().map_err(|_| bad())?))
        }
    }
}

impl fmt::Display for CirclePointId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CirclePointId::Base(i) => write!(f, "p{i}"),
            CirclePointId::Left(i) => write!(f, "p{i}l"),
            CirclePointId::Right(i) => write!(f, "p{i}r"),
        }
    }
}

/// Provenance carried by generated lower-bound constructions; lets the
/// arc-index helpers work combinatorially instead of geometrically.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConstructionMeta {
    pub k: u32,
    pub perturbation: Rat,
    /// All 3k named points in clockwise cyclic order.
    pub point_order: Vec<CirclePointId>,
    /// Per-member segment endpoints, aligned with `Family::members`.
    pub provenance: Vec<(CirclePointId, CirclePointId)>,
}

/// Ordered collection of convex bodies; indices are the stable identifiers
/// used by every certificate and piercing assignment.
#[derive(Debug, Clone)]
pub struct Family {
    pub members: Vec<ConvexBody>,
    pub labels: Vec<Option<String>>,
    pub source: Source,
    pub construction: Option<ConstructionMeta>,
}

impl Family {
    pub fn new(members: Vec<ConvexBody>) -> Self {
        let labels = vec![None; members.len()];
        Family {
            members,
            labels,
            source: Source::Generated,
            construction: None,
        }
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    /// Member-by-member equality (bodies and labels; provenance metadata and
    /// source are not part of the geometric identity).
    pub fn same_members(&self, other: &Family) -> bool {
        self.members == other.members && self.labels == other.labels
    }
}

/// Uniform scale followed by a translation: v -> scale * v + translation.
/// A similarity, so disjointness, tight triples, C(k) structure, and
/// piercing numbers are preserved.
#[derive(Debug, Clone, PartialEq)]
pub struct DiskTransform {
    pub scale: Rat,
    pub translation: RationalPoint,
}

impl DiskTransform {
    pub fn apply_point(&self, p: &RationalPoint) -> RationalPoint {
        RationalPoint::new(
            &self.scale * &p.x + &self.translation.x,
            &self.scale * &p.y + &self.translation.y,
        )
    }

    pub fn apply_body(&self, body: &ConvexBody) -> ConvexBody {
        let pts: Vec<RationalPoint> =
            body.vertices().iter().map(|v| self.apply_point(v)).collect();
        ConvexBody::hull(&pts).expect("nonempty")
    }

    /// Image of a line under the transform.
    pub fn apply_line(&self, line: &Line) -> Line {
        // ax + by = c maps to a x' + b y' = s c + a tx + b ty.
        let a = Rat::from_integer(line.a.clone());
        let b = Rat::from_integer(line.b.clone());
        let c = Rat::from_integer(line.c.clone());
        let c2 = &self.scale * c + &a * &self.translation.x + &b * &self.translation.y;
        Line::from_coeffs(a, b, c2).expect("nondegenerate")
    }
}

/// Scales the family by a similarity so that every vertex lies strictly
/// inside the unit circle, with maximum norm at most 9/10 to leave slack for
/// the numerical search layer.
pub fn scale_to_unit_disk(f: &Family) -> Result<(Family, DiskTransform), Error> {
    if f.is_empty() {
        return Err(Error::InvalidArgument("empty family".into()));
    }
    let all: Vec<&RationalPoint> = f.members.iter().flat_map(|m| m.vertices()).collect();
    let count = Rat::from_integer((all.len() as i64).into());
    let cx = all.iter().map(|p| p.x.clone()).sum::<Rat>() / &count;
    let cy = all.iter().map(|p| p.y.clone()).sum::<Rat>() / &count;
    let center = RationalPoint::new(cx, cy);

    let max_sq = all
        .iter()
        .map(|p| {
            let dx = &p.x - &center.x;
            let dy = &p.y - &center.y;
            &dx * &dx + &dy * &dy
        })
        .max()
        .expect("nonempty");

    let mut scale = if max_sq.is_zero() {
        Rat::one()
    } else {
        // Rational upper bound r >= sqrt(max_sq): for p/q, sqrt(p/q) <= (isqrt(p*q)+1)/q.
        let p = max_sq.numer().abs();
        let q = max_sq.denom().clone();
        let root = (&p * &q).sqrt() + 1;
        ratio(9, 10) * Rat::new(q, root)
    };
    loop {
        let transform = DiskTransform {
            translation: RationalPoint::new(-(&scale) * &center.x, -(&scale) * &center.y),
            scale: scale.clone(),
        };
        let mapped: Vec<ConvexBody> =
            f.members.iter().map(|m| transform.apply_body(m)).collect();
        let inside = mapped
            .iter()
            .flat_map(|m| m.vertices())
            .all(|v| v.norm_sq() < Rat::one());
        if inside {
            let mut out = f.clone();
            out.members = mapped;
            return Ok((out, transform));
        }
        scale *= ratio(9, 10);
    }
}

// ---------------------------------------------------------------------------
// JSON serialization. Coordinates are exact: integers or "n/d" strings;
// floats are rejected on load.
// ---------------------------------------------------------------------------

fn coord_to_json(r: &Rat) -> Value {
    use num::ToPrimitive;
    if r.denom().is_one() {
        if let Some(i) = r.numer().to_i64() {
            return json!(i);
        }
    }
    Value::String(format_rat(r))
}

fn coord_from_json(v: &Value, what: &str) -> Result<Rat, Error> {
    match v {
        Value::Number(n) => {
            if let Some(i) = n.as_i64() {
                Ok(crate::rat::rat(i))
            } else {
                Err(Error::Parse(format!(
                    "{what}: floating-point coordinates are rejected; use \"n/d\" strings"
                )))
            }
        }
        Value::String(s) => parse_rat(s).map_err(|e| Error::Parse(format!("{what}: {e}"))),
        _ => Err(Error::Parse(format!(
            "{what}: expected integer or \"n/d\" string"
        ))),
    }
}

pub fn save_family(f: &Family) -> String {
    let members: Vec<Value> = f
        .members
        .iter()
        .zip(&f.labels)
        .map(|(m, label)| {
            let vertices: Vec<Value> = m
                .vertices()
                .iter()
                .map(|v| json!([coord_to_json(&v.x), coord_to_json(&v.y)]))
                .collect();
            let mut obj = Map::new();
            if let Some(l) = label {
                obj.insert("label".into(), json!(l));
            }
            obj.insert("vertices".into(), json!(vertices));
            Value::Object(obj)
        })
        .collect();
    let mut root = Map::new();
    root.insert("members".into(), json!(members));
    if let Some(c) = &f.construction {
        root.insert(
            "construction".into(),
            json!({
                "k": c.k,
                "perturbation": format_rat(&c.perturbation),
                "point_order": c.point_order.iter().map(|p| p.to_string()).collect::<Vec<_>>(),
                "provenance": c
                    .provenance
                    .iter()
                    .map(|(a, b)| json!([a.to_string(), b.to_string()]))
                    .collect::<Vec<_>>(),
            }),
        );
    }
    serde_json::to_string_pretty(&Value::Object(root)).expect("serializable")
}

pub fn load_family(text: &str) -> Result<Family, Error> {
    let root: Value = serde_json::from_str(text)
        .map_err(|e| Error::Parse(format!("malformed document: {e}")))?;
    let members_json = root
        .get("members")
        .and_then(Value::as_array)
        .ok_or_else(|| Error::Parse("missing \"members\" array".into()))?;
    if members_json.is_empty() {
        return Err(Error::Validation("empty member list".into()));
    }
    let mut members = Vec::new();
    let mut labels = Vec::new();
    for (idx, mj) in members_json.iter().enumerate() {
        let verts_json = mj
            .get("vertices")
            .and_then(Value::as_array)
            .ok_or_else(|| Error::Parse(format!("member {idx}: missing \"vertices\"")))?;
        if verts_json.is_empty() {
            return Err(Error::Validation(format!("member {idx}: no vertices")));
        }
        let mut pts = Vec::new();
        for (vi, vj) in verts_json.iter().enumerate() {
            let pair = vj.as_array().filter(|a| a.len() == 2).ok_or_else(|| {
                Error::Parse(format!("member {idx} vertex {vi}: expected [x, y]"))
            })?;
            let what = format!("member {idx} vertex {vi}");
            pts.push(RationalPoint::new(
                coord_from_json(&pair[0], &what)?,
                coord_from_json(&pair[1], &what)?,
            ));
        }
        let body = ConvexBody::hull(&pts)?;
        // Every listed vertex must lie on the hull boundary; an interior
        // vertex means the list was not in convex position.
        for (vi, p) in pts.iter().enumerate() {
            if !body.on_boundary(p) {
                return Err(Error::Validation(format!(
                    "member {idx}: vertex {vi} is interior; vertex list is not convex"
                )));
            }
        }
        members.push(body);
        labels.push(
            mj.get("label")
                .and_then(Value::as_str)
                .map(|s| s.to_string()),
        );
    }
    let construction = match root.get("construction") {
        None | Some(Value::Null) => None,
        Some(c) => Some(parse_construction(c, members.len())?),
    };
    Ok(Family {
        members,
        labels,
        source: Source::Loaded,
        construction,
    })
}

fn parse_construction(c: &Value, member_count: usize) -> Result<ConstructionMeta, Error> {
    let k = c
        .get("k")
        .and_then(Value::as_u64)
        .ok_or_else(|| Error::Parse("construction: missing k".into()))? as u32;
    let perturbation = parse_rat(
        c.get("perturbation")
            .and_then(Value::as_str)
            .ok_or_else(|| Error::Parse("construction: missing perturbation".into()))?,
    )?;
    let point_order = c
        .get("point_order")
        .and_then(Value::as_array)
        .ok_or_else(|| Error::Parse("construction: missing point_order".into()))?
        .iter()
        .map(|v| {
            v.as_str()
                .ok_or_else(|| Error::Parse("construction: point name must be a string".into()))
                .and_then(CirclePointId::parse)
        })
        .collect::<Result<Vec<_>, _>>()?;
    let provenance = c
        .get("provenance")
        .and_then(Value::as_array)
        .ok_or_else(|| Error::Parse("construction: missing provenance".into()))?
        .iter()
        .map(|v| {
            let pair = v
                .as_array()
                .filter(|a| a.len() == 2)
                .ok_or_else(|| Error::Parse("construction: provenance entry".into()))?;
            let a = pair[0]
                .as_str()
                .ok_or_else(|| Error::Parse("construction: provenance entry".into()))?;
            let b = pair[1]
                .as_str()
                .ok_or_else(|| Error::Parse("construction: provenance entry".into()))?;
            Ok((CirclePointId::parse(a)?, CirclePointId::parse(b)?))
        })
        .collect::<Result<Vec<_>, Error>>()?;
    if provenance.len() != member_count {
        return Err(Error::Validation(
            "construction: provenance length does not match member count".into(),
        ));
    }
    Ok(ConstructionMeta {
        k,
        perturbation,
        point_order,
        provenance,
    })
}
