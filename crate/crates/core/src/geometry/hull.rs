use super::{orientation, GeometryError, Orientation, Point, PointSet};

/// Strictly convex hull of a [`PointSet`].
///
/// Only corners are hull vertices. Points on an open hull edge are listed with
/// the strictly interior points in `inner`, since the polygon still has to
/// visit them and their sweep arc meets them at measure zero.
#[derive(Debug, Clone, PartialEq)]
pub struct Hull {
    vertices: Vec<usize>,
    inner: Vec<usize>,
    boundary_inner: usize,
}

impl Hull {
    /// Hull corners in counter-clockwise order, starting at the lexicographically
    /// smallest point.
    pub fn vertices(&self) -> &[usize] {
        &self.vertices
    }

    /// Inner point indices in ascending order.
    pub fn inner(&self) -> &[usize] {
        &self.inner
    }

    /// Number of hull edges.
    pub fn m(&self) -> usize {
        self.vertices.len()
    }

    /// Number of inner points.
    pub fn r(&self) -> usize {
        self.inner.len()
    }

    /// How many of the inner points sit on an open hull edge rather than
    /// strictly inside.
    pub fn boundary_inner_count(&self) -> usize {
        self.boundary_inner
    }

    /// Edge `j` runs from vertex `j` to vertex `j + 1`, with the hull interior on its left.
    pub fn edge(&self, j: usize) -> (usize, usize) {
        let m = self.m();
        (self.vertices[j], self.vertices[(j + 1) % m])
    }

    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.m()).map(move |j| self.edge(j))
    }

    /// Orientation of `x` against every hull edge: `Some(true)` strictly inside,
    /// `Some(false)` on the boundary, `None` outside.
    pub fn locate(&self, s: &PointSet, x: Point) -> Option<bool> {
        let mut strict = true;
        for (a, b) in self.edges() {
            match orientation(s[a], s[b], x) {
                Orientation::Left => {}
                Orientation::Collinear => strict = false,
                Orientation::Right => return None,
            }
        }
        Some(strict)
    }
}

/// Andrew's monotone chain with exact orientation. Collinear points are
/// dropped from the hull and reported as inner points.
pub fn convex_hull(s: &PointSet) -> Result<Hull, GeometryError> {
    if s.all_collinear() {
        return Err(GeometryError::DegenerateInput);
    }
    let pts = s.points();
    let mut order: Vec<usize> = (0..pts.len()).collect();
    order.sort_by(|&i, &j| {
        pts[i]
            .x
            .total_cmp(&pts[j].x)
            .then(pts[i].y.total_cmp(&pts[j].y))
    });

    let mut hull: Vec<usize> = Vec::with_capacity(pts.len() + 1);
    for pass in [&order[..], &order.iter().rev().copied().collect::<Vec<_>>()[..]] {
        let floor = hull.len();
        for &i in pass {
            while hull.len() >= floor + 2
                && orientation(
                    pts[hull[hull.len() - 2]],
                    pts[hull[hull.len() - 1]],
                    pts[i],
                ) != Orientation::Left
            {
                hull.pop();
            }
            hull.push(i);
        }
        // last point of each half is the first point of the other
        hull.pop();
    }

    let mut on_hull = vec![false; pts.len()];
    for &v in &hull {
        on_hull[v] = true;
    }
    let inner: Vec<usize> = (0..pts.len()).filter(|&i| !on_hull[i]).collect();
    let mut result = Hull {
        vertices: hull,
        inner,
        boundary_inner: 0,
    };
    result.boundary_inner = result
        .inner
        .iter()
        .filter(|&&i| result.locate(s, pts[i]) == Some(false))
        .count();
    Ok(result)
}
