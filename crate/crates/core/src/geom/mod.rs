//! Exact planar geometry kernel: predicates, hulls, intersections, and
//! distances over arbitrary-precision rationals. No epsilons anywhere; all
//! decisions here are exact, and touching closed sets count as intersecting.

pub mod body;
pub mod clip;
pub mod line;
pub mod point;
pub mod sat;

pub use body::{body_dist_sq, ConvexBody};
pub use clip::{clip_halfplane, intersect_bodies, supporting_halfplanes, HalfPlane};
pub use line::{distance_lower_bound, line_meets_body, Line};
pub use point::{cross_f, orient, FloatPoint, RationalPoint};
pub use sat::bodies_disjoint;
