//! Planar primitives shared by the polygonization algorithms.
//!
//! Orientation and every predicate derived from it (hull construction,
//! segment intersection, simplicity, visibility) are exact. Angles are plain
//! `f64` and compared with [`ANGLE_TOL`](crate::ANGLE_TOL).

pub(crate) mod angle;
mod hull;
pub(crate) mod polygon;

pub use angle::{arc_measure_of, beta_max, in_major_segment, subtended_angle, MajorSegment};
pub use hull::{convex_hull, Hull};
pub use polygon::{
    interior_angle, is_simple, point_in_triangle, segments_intersect, triangle_visible, Polygon,
};

use std::fmt;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum GeometryError {
    #[error("point {index} has a non-finite coordinate")]
    NonFinite { index: usize },
    #[error("need at least 3 points, got {0}")]
    TooFewPoints(usize),
    #[error("point {second} duplicates point {first}")]
    DuplicatePoint { first: usize, second: usize },
    #[error("all points are collinear")]
    DegenerateInput,
    #[error("query point coincides with a segment endpoint")]
    CoincidentPoint,
    #[error("point lies on the far side of the chord and is never met by its sweep arc")]
    WrongSide,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Point {
    pub x: f64,
    pub y: f64,
}

impl Point {
    pub const fn new(x: f64, y: f64) -> Self {
        Point { x, y }
    }

    pub fn is_finite(&self) -> bool {
        self.x.is_finite() && self.y.is_finite()
    }

    pub fn dist(&self, other: Point) -> f64 {
        (self.x - other.x).hypot(self.y - other.y)
    }

    pub fn midpoint(&self, other: Point) -> Point {
        Point::new(0.5 * (self.x + other.x), 0.5 * (self.y + other.y))
    }

    fn coord(self) -> robust::Coord<f64> {
        robust::Coord {
            x: self.x,
            y: self.y,
        }
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

impl From<(f64, f64)> for Point {
    fn from((x, y): (f64, f64)) -> Self {
        Point::new(x, y)
    }
}

/// Turn direction of an ordered triple.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Orientation {
    Left,
    Right,
    Collinear,
}

impl Orientation {
    pub fn reverse(self) -> Self {
        match self {
            Orientation::Left => Orientation::Right,
            Orientation::Right => Orientation::Left,
            Orientation::Collinear => Orientation::Collinear,
        }
    }
}

/// Sign of `(b - a) x (c - a)`, evaluated with adaptive-precision arithmetic.
/// `Collinear` is returned only when the exact cross product is zero.
pub fn orientation(a: Point, b: Point, c: Point) -> Orientation {
    let det = robust::orient2d(a.coord(), b.coord(), c.coord());
    if det > 0.0 {
        Orientation::Left
    } else if det < 0.0 {
        Orientation::Right
    } else {
        Orientation::Collinear
    }
}

/// Validated input points: at least three, all finite, pairwise distinct.
///
/// Indices into the set are the identities used by every other type in the
/// crate (hull vertices, polygon chains, layers).
#[derive(Debug, Clone, PartialEq)]
pub struct PointSet {
    points: Vec<Point>,
}

impl PointSet {
    pub fn new(points: Vec<Point>) -> Result<Self, GeometryError> {
        if let Some(index) = points.iter().position(|p| !p.is_finite()) {
            return Err(GeometryError::NonFinite { index });
        }
        if points.len() < 3 {
            return Err(GeometryError::TooFewPoints(points.len()));
        }
        // -0.0 and 0.0 compare equal, so store a single representation
        let points: Vec<Point> = points
            .into_iter()
            .map(|p| Point::new(p.x + 0.0, p.y + 0.0))
            .collect();
        let mut seen = std::collections::HashMap::with_capacity(points.len());
        for (i, p) in points.iter().enumerate() {
            if let Some(&first) = seen.get(&(p.x.to_bits(), p.y.to_bits())) {
                return Err(GeometryError::DuplicatePoint { first, second: i });
            }
            seen.insert((p.x.to_bits(), p.y.to_bits()), i);
        }
        Ok(PointSet { points })
    }

    pub fn from_xy(coords: &[(f64, f64)]) -> Result<Self, GeometryError> {
        Self::new(coords.iter().map(|&c| c.into()).collect())
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn points(&self) -> &[Point] {
        &self.points
    }

    pub fn get(&self, i: usize) -> Point {
        self.points[i]
    }

    /// True when every point lies on one line.
    pub fn all_collinear(&self) -> bool {
        let p = &self.points;
        // the first point differs from every other one, so any second point fixes the line
        (2..p.len()).all(|i| orientation(p[0], p[1], p[i]) == Orientation::Collinear)
    }

    pub fn reversed(&self) -> PointSet {
        let mut points = self.points.clone();
        points.reverse();
        PointSet { points }
    }
}

impl std::ops::Index<usize> for PointSet {
    type Output = Point;

    fn index(&self, i: usize) -> &Point {
        &self.points[i]
    }
}
