//! Simple polygonizations of planar point sets with a bounded maximum
//! interior angle.
//!
//! Given points `S` whose convex hull has `m` edges and `r` inner points, the
//! constructions in [`polygonize`] return a simple polygon through every
//! point whose interior angles never exceed `2π − 2π/(r·m)`
//! ([`polygonize_edgewise`]) or the sharper `2π − 2π/(d·m)`
//! ([`polygonize_onion`]), where `d` is the depth of the angular onion
//! peeling. [`oracle`] enumerates every polygonization of small inputs to
//! compute the true min-max angle and certify both bounds against it.

pub mod geometry;
pub mod oracle;
pub mod polygonize;

pub use geometry::{GeometryError, Hull, Orientation, Point, PointSet, Polygon};
pub use polygonize::{
    polygonize_edgewise, polygonize_onion, BoundKind, BoundReport, OnionPeeling, PolygonizeError,
};

/// Tolerance for every comparison between floating-point angles.
pub const ANGLE_TOL: f64 = 1e-9;
