//! Exact planar geometry for detecting C(k) subfamilies, deciding line
//! transversals, computing minimum line piercings, generating the circle
//! lower-bound family, and searching for k-2 piercing lines through the
//! simplex chord system.

pub mod ck;
pub mod error;
pub mod family;
pub mod fixtures;
pub mod geom;
pub mod kkm;
pub mod lowerbound;
pub mod piercing;
pub mod rat;
pub mod svg;

pub use error::Error;
