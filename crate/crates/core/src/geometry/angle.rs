use std::f64::consts::PI;

use super::{orientation, GeometryError, Orientation, Point};

/// Undirected angle `∠(a, x, b)` in `[0, π]`.
pub fn subtended_angle(a: Point, x: Point, b: Point) -> Result<f64, GeometryError> {
    if x == a || x == b {
        return Err(GeometryError::CoincidentPoint);
    }
    Ok(angle_unchecked(a, x, b))
}

pub(crate) fn angle_unchecked(a: Point, x: Point, b: Point) -> f64 {
    let (ux, uy) = (a.x - x.x, a.y - x.y);
    let (vx, vy) = (b.x - x.x, b.y - x.y);
    let cross = ux * vy - uy * vx;
    let dot = ux * vx + uy * vy;
    cross.abs().atan2(dot)
}

/// True when `x` lies on the open segment `ab` (exact).
pub(crate) fn on_open_segment(a: Point, b: Point, x: Point) -> bool {
    orientation(a, b, x) == Orientation::Collinear
        && x != a
        && x != b
        && x.x >= a.x.min(b.x)
        && x.x <= a.x.max(b.x)
        && x.y >= a.y.min(b.y)
        && x.y <= a.y.max(b.y)
}

/// Region bounded by the chord `a b` and a circular arc of measure `beta`
/// bulging towards `side` of the directed line `a → b`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MajorSegment {
    pub a: Point,
    pub b: Point,
    pub beta: f64,
    pub side: Orientation,
}

impl MajorSegment {
    /// # Panics
    /// If `beta` is outside `(0, 2π)` or `side` is `Collinear`.
    pub fn new(a: Point, b: Point, beta: f64, side: Orientation) -> Self {
        assert!(beta > 0.0 && beta < 2.0 * PI, "arc measure {beta} outside (0, 2π)");
        assert!(side != Orientation::Collinear, "a segment needs a bulge side");
        MajorSegment { a, b, beta, side }
    }

    /// Segment of measure `2π − 4π/m` on the left (interior) side of a
    /// counter-clockwise hull edge.
    pub fn covering(a: Point, b: Point, m: usize) -> Self {
        Self::new(a, b, beta_max(m), Orientation::Left)
    }

    /// Inscribed angle of the bounding arc, `π − β/2`. Points of the open
    /// segment see the chord at a strictly larger angle.
    pub fn threshold(&self) -> f64 {
        PI - self.beta / 2.0
    }

    /// Center and radius of the circle carrying the bounding arc.
    pub fn circle(&self) -> (Point, f64) {
        let phi = self.threshold();
        let chord = self.a.dist(self.b);
        let radius = chord / (2.0 * phi.sin());
        let offset = radius * phi.cos();
        let mid = self.a.midpoint(self.b);
        let (dx, dy) = ((self.b.x - self.a.x) / chord, (self.b.y - self.a.y) / chord);
        // unit normal pointing to the bulge side
        let (nx, ny) = match self.side {
            Orientation::Left => (-dy, dx),
            _ => (dy, -dx),
        };
        (Point::new(mid.x + nx * offset, mid.y + ny * offset), radius)
    }
}

/// `2π − 4π/m`, the largest arc measure swept on a hull with `m` edges.
pub fn beta_max(m: usize) -> f64 {
    2.0 * PI - 4.0 * PI / m as f64
}

/// Open-region membership: strictly on the bulge side with subtended angle
/// above the threshold, or on the open chord. Points on the bounding arc and
/// the chord endpoints are outside.
pub fn in_major_segment(seg: &MajorSegment, x: Point) -> bool {
    if x == seg.a || x == seg.b {
        return false;
    }
    let o = orientation(seg.a, seg.b, x);
    if o == seg.side {
        angle_unchecked(seg.a, x, seg.b) > seg.threshold()
    } else if o == Orientation::Collinear {
        on_open_segment(seg.a, seg.b, x)
    } else {
        false
    }
}

/// Measure of the sweep arc on `a → b` (sweeping the left side) at the moment
/// it meets `x`: `2(π − ∠axb)`. Points on the open chord are met at 0.
pub fn arc_measure_of(a: Point, b: Point, x: Point) -> Result<f64, GeometryError> {
    if x == a || x == b {
        return Err(GeometryError::CoincidentPoint);
    }
    match orientation(a, b, x) {
        Orientation::Left => Ok(2.0 * (PI - angle_unchecked(a, x, b))),
        Orientation::Collinear if on_open_segment(a, b, x) => Ok(0.0),
        _ => Err(GeometryError::WrongSide),
    }
}
