use std::f64::consts::PI;

use super::angle::on_open_segment;
use super::{orientation, Orientation, Point, PointSet};

/// Closed vertex chain over indices of a [`PointSet`]; the closing edge from
/// the last index back to the first is implicit.
///
/// Polygons built by this crate are counter-clockwise and simple. The type
/// itself does not enforce that; use [`is_simple`] to check.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Polygon {
    chain: Vec<usize>,
}

impl Polygon {
    pub fn new(chain: Vec<usize>) -> Self {
        Polygon { chain }
    }

    pub fn chain(&self) -> &[usize] {
        &self.chain
    }

    pub fn into_chain(self) -> Vec<usize> {
        self.chain
    }

    pub fn len(&self) -> usize {
        self.chain.len()
    }

    pub fn is_empty(&self) -> bool {
        self.chain.is_empty()
    }

    /// Edge `i` runs from position `i` to position `i + 1` (cyclically).
    pub fn edge(&self, i: usize) -> (usize, usize) {
        (self.chain[i], self.chain[(i + 1) % self.chain.len()])
    }

    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.chain.len()).map(move |i| self.edge(i))
    }

    /// Twice the signed area (positive for counter-clockwise chains).
    pub fn signed_area2(&self, s: &PointSet) -> f64 {
        self.edges()
            .map(|(i, j)| s[i].x * s[j].y - s[j].x * s[i].y)
            .sum()
    }

    /// Reverse the chain in place if it is clockwise.
    pub fn make_ccw(&mut self, s: &PointSet) {
        if self.signed_area2(s) < 0.0 {
            self.chain.reverse();
        }
    }

    /// True when the chain is a permutation of `0..n`.
    pub fn visits_all(&self, n: usize) -> bool {
        if self.chain.len() != n {
            return false;
        }
        let mut seen = vec![false; n];
        for &v in &self.chain {
            if v >= n || seen[v] {
                return false;
            }
            seen[v] = true;
        }
        true
    }

    pub fn interior_angles(&self, s: &PointSet) -> Vec<f64> {
        (0..self.len()).map(|i| interior_angle(self, s, i)).collect()
    }

    pub fn max_interior_angle(&self, s: &PointSet) -> f64 {
        self.interior_angles(s).into_iter().fold(0.0, f64::max)
    }

    /// Rotation/reflection-invariant representative: smallest index first,
    /// direction chosen so the second entry is smaller than the last.
    pub fn canonical_chain(&self) -> Vec<usize> {
        let k = self.chain.len();
        let start = (0..k).min_by_key(|&i| self.chain[i]).unwrap_or(0);
        let fwd: Vec<usize> = (0..k).map(|o| self.chain[(start + o) % k]).collect();
        if k > 2 && fwd[1] > fwd[k - 1] {
            let mut rev = vec![fwd[0]];
            rev.extend(fwd[1..].iter().rev());
            rev
        } else {
            fwd
        }
    }
}

/// Interior angle at chain position `i` of a counter-clockwise polygon, in `[0, 2π)`.
pub fn interior_angle(p: &Polygon, s: &PointSet, i: usize) -> f64 {
    let k = p.len();
    let v = s[p.chain[i]];
    let next = s[p.chain[(i + 1) % k]];
    let prev = s[p.chain[(i + k - 1) % k]];
    let (ax, ay) = (next.x - v.x, next.y - v.y);
    let (bx, by) = (prev.x - v.x, prev.y - v.y);
    let t = (ax * by - ay * bx).atan2(ax * bx + ay * by);
    if t < 0.0 {
        t + 2.0 * PI
    } else {
        t
    }
}

/// Closed segment intersection, touching and collinear overlap included.
pub fn segments_intersect(p1: Point, p2: Point, q1: Point, q2: Point) -> bool {
    let d1 = orientation(p1, p2, q1);
    let d2 = orientation(p1, p2, q2);
    let d3 = orientation(q1, q2, p1);
    let d4 = orientation(q1, q2, p2);
    if d1 != d2
        && d3 != d4
        && d1 != Orientation::Collinear
        && d2 != Orientation::Collinear
        && d3 != Orientation::Collinear
        && d4 != Orientation::Collinear
    {
        return true;
    }
    let on = |a: Point, b: Point, x: Point| x == a || x == b || on_open_segment(a, b, x);
    (d1 == Orientation::Collinear && on(p1, p2, q1))
        || (d2 == Orientation::Collinear && on(p1, p2, q2))
        || (d3 == Orientation::Collinear && on(q1, q2, p1))
        || (d4 == Orientation::Collinear && on(q1, q2, p2))
}

/// Closed triangle containment (boundary counts as inside). The triangle may
/// have either orientation.
pub fn point_in_triangle(a: Point, b: Point, c: Point, x: Point) -> bool {
    let o1 = orientation(a, b, x);
    let o2 = orientation(b, c, x);
    let o3 = orientation(c, a, x);
    let has_left = [o1, o2, o3].contains(&Orientation::Left);
    let has_right = [o1, o2, o3].contains(&Orientation::Right);
    if has_left && has_right {
        return false;
    }
    if has_left || has_right {
        return true;
    }
    // degenerate triangle: inside means on one of its sides
    segments_intersect(a, b, x, x) || segments_intersect(b, c, x, x)
}

/// Two segments from a common endpoint `w` overlap beyond `w` exactly when
/// their far ends are collinear with `w` and on the same side of it.
fn folds_back(w: Point, o1: Point, o2: Point) -> bool {
    orientation(w, o1, o2) == Orientation::Collinear
        && (o1.x - w.x) * (o2.x - w.x) + (o1.y - w.y) * (o2.y - w.y) > 0.0
}

/// Whether the existing edge `(u, v)` conflicts with the new segment `(p, q)`.
/// Endpoints are identified by index so shared vertices are recognised.
pub(crate) fn edge_conflicts(pts: &[Point], p: usize, q: usize, u: usize, v: usize) -> bool {
    let shared = if p == u || p == v {
        Some((p, q, if p == u { v } else { u }))
    } else if q == u || q == v {
        Some((q, p, if q == u { v } else { u }))
    } else {
        None
    };
    match shared {
        Some((w, o1, o2)) => {
            // both endpoints shared means the same segment
            o1 == o2 || folds_back(pts[w], pts[o1], pts[o2])
        }
        None => segments_intersect(pts[p], pts[q], pts[u], pts[v]),
    }
}

/// True iff no two non-adjacent edges meet and adjacent edges share only
/// their common vertex. All tests are exact.
pub fn is_simple(p: &Polygon, s: &PointSet) -> bool {
    let k = p.len();
    if k < 3 || !distinct_in_range(p.chain(), s.len()) {
        return false;
    }
    let pts = s.points();
    for i in 0..k {
        let (u, v) = p.edge(i);
        let w = p.chain[(i + 2) % k];
        if folds_back(pts[v], pts[u], pts[w]) {
            return false;
        }
    }
    if k == 3 {
        return true;
    }

    // sweep-and-prune on x extents
    let mut order: Vec<(f64, f64, usize)> = (0..k)
        .map(|i| {
            let (u, v) = p.edge(i);
            (pts[u].x.min(pts[v].x), pts[u].x.max(pts[v].x), i)
        })
        .collect();
    order.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.2.cmp(&b.2)));
    for (pos, &(_, xmax, i)) in order.iter().enumerate() {
        let (u1, v1) = p.edge(i);
        let (ylo, yhi) = (pts[u1].y.min(pts[v1].y), pts[u1].y.max(pts[v1].y));
        for &(xmin_j, _, j) in &order[pos + 1..] {
            if xmin_j > xmax {
                break;
            }
            let adjacent = (i + 1) % k == j || (j + 1) % k == i;
            if adjacent {
                continue;
            }
            let (u2, v2) = p.edge(j);
            if pts[u2].y.max(pts[v2].y) < ylo || pts[u2].y.min(pts[v2].y) > yhi {
                continue;
            }
            if segments_intersect(pts[u1], pts[v1], pts[u2], pts[v2]) {
                return false;
            }
        }
    }
    true
}

fn distinct_in_range(chain: &[usize], n: usize) -> bool {
    let mut seen = vec![false; n];
    chain.iter().all(|&v| v < n && !std::mem::replace(&mut seen[v], true))
}

/// Whether edge `edge` of `p` can be replaced by `a → x → b` while keeping the
/// polygon simple: the closed triangle `(a, x, b)` holds no other vertex of
/// `p` and no other edge meets it except at `a` and `b`.
///
/// `x` may lie on either side of the edge; it must not already be a vertex.
pub fn triangle_visible(p: &Polygon, s: &PointSet, edge: usize, x: usize) -> bool {
    if p.chain().contains(&x) {
        return false;
    }
    let (a, b) = p.edge(edge);
    let pts = s.points();
    if !triangle_shape_ok(pts[a], pts[x], pts[b]) {
        return false;
    }
    for &v in p.chain() {
        if v != a && v != b && point_in_triangle(pts[a], pts[x], pts[b], pts[v]) {
            return false;
        }
    }
    for (i, (u, v)) in p.edges().enumerate() {
        if i == edge {
            continue;
        }
        if edge_conflicts(pts, a, x, u, v) || edge_conflicts(pts, x, b, u, v) {
            return false;
        }
    }
    true
}

/// Whether cutting triangle `(a, x, b)` out of a polygon would leave the
/// not yet inserted point `q` outside it. Points on the open new edges `a x`
/// and `x b` stay on the boundary and can still be spliced into them.
pub(crate) fn swallows_pending(a: Point, x: Point, b: Point, q: Point) -> bool {
    point_in_triangle(a, x, b, q) && !on_open_segment(a, x, q) && !on_open_segment(x, b, q)
}

/// A degenerate triangle is only acceptable when `x` splits the edge itself.
pub(crate) fn triangle_shape_ok(a: Point, x: Point, b: Point) -> bool {
    orientation(a, b, x) != Orientation::Collinear || on_open_segment(a, b, x)
}
