//! Incremental carving of the convex hull.
//!
//! The working polygon starts as the hull. Inserting an inner point `x` into
//! edge `a → b` cuts the triangle `(a, x, b)` out of the polygon; the cut is
//! allowed only when that closed triangle holds no other vertex, no pending
//! point except on the new edges `a x` and `x b`, and no polygon edge meets it
//! except at `a` and `b`. Every
//! intermediate polygon is therefore simple and still contains every pending
//! point, and angles at existing vertices only shrink.
//!
//! Queries go through a uniform grid holding all input points (static) and
//! every polygon edge ever created, keyed by start vertex. Entries for edges
//! that were later split are left in place and resolved against the current
//! successor of their start vertex when read.

use crate::geometry::angle::angle_unchecked;
use crate::geometry::polygon::{edge_conflicts, swallows_pending, triangle_shape_ok};
use crate::geometry::{point_in_triangle, Hull, Point, PointSet, Polygon};

use super::sweep::faces_edge;

const NONE: usize = usize::MAX;

struct Grid {
    x0: f64,
    y0: f64,
    cw: f64,
    ch: f64,
    nx: usize,
    ny: usize,
    points: Vec<Vec<u32>>,
    edges: Vec<Vec<u32>>,
}

impl Grid {
    fn new(s: &PointSet) -> Self {
        let pts = s.points();
        let (mut x0, mut y0, mut x1, mut y1) = (f64::MAX, f64::MAX, f64::MIN, f64::MIN);
        for p in pts {
            x0 = x0.min(p.x);
            y0 = y0.min(p.y);
            x1 = x1.max(p.x);
            y1 = y1.max(p.y);
        }
        let side = ((pts.len() as f64).sqrt().ceil() as usize).clamp(1, 2048);
        let (w, h) = ((x1 - x0).max(f64::MIN_POSITIVE), (y1 - y0).max(f64::MIN_POSITIVE));
        let (nx, ny) = if w >= h {
            (side, ((side as f64 * h / w).ceil() as usize).max(1))
        } else {
            (((side as f64 * w / h).ceil() as usize).max(1), side)
        };
        let mut g = Grid {
            x0,
            y0,
            cw: w / nx as f64,
            ch: h / ny as f64,
            nx,
            ny,
            points: vec![Vec::new(); nx * ny],
            edges: vec![Vec::new(); nx * ny],
        };
        for (i, p) in pts.iter().enumerate() {
            let c = g.cell_of(*p);
            g.points[c.1 * nx + c.0].push(i as u32);
        }
        g
    }

    fn col(&self, x: f64) -> usize {
        (((x - self.x0) / self.cw).floor().max(0.0) as usize).min(self.nx - 1)
    }

    fn row(&self, y: f64) -> usize {
        (((y - self.y0) / self.ch).floor().max(0.0) as usize).min(self.ny - 1)
    }

    fn cell_of(&self, p: Point) -> (usize, usize) {
        (self.col(p.x), self.row(p.y))
    }

    /// Cells met by the convex hull of `poly` (two or three points), padded
    /// by one cell in y per column to absorb rounding in the clipping.
    fn cover(&self, poly: &[Point], out: &mut Vec<usize>) {
        out.clear();
        let xmin = poly.iter().map(|p| p.x).fold(f64::MAX, f64::min);
        let xmax = poly.iter().map(|p| p.x).fold(f64::MIN, f64::max);
        let (c0, c1) = (self.col(xmin), self.col(xmax));
        for c in c0..=c1 {
            let sx0 = (self.x0 + c as f64 * self.cw).max(xmin);
            let sx1 = (self.x0 + (c + 1) as f64 * self.cw).min(xmax);
            let (mut lo, mut hi) = (f64::MAX, f64::MIN);
            let k = poly.len();
            for i in 0..k {
                let (p, q) = (poly[i], poly[(i + 1) % k]);
                let (pxl, pxh) = (p.x.min(q.x), p.x.max(q.x));
                if pxh < sx0 || pxl > sx1 {
                    continue;
                }
                if q.x == p.x {
                    lo = lo.min(p.y.min(q.y));
                    hi = hi.max(p.y.max(q.y));
                    continue;
                }
                for xs in [sx0.max(pxl), sx1.min(pxh)] {
                    let y = p.y + (q.y - p.y) * ((xs - p.x) / (q.x - p.x));
                    lo = lo.min(y);
                    hi = hi.max(y);
                }
            }
            if lo > hi {
                continue;
            }
            let r0 = self.row(lo).saturating_sub(1);
            let r1 = (self.row(hi) + 1).min(self.ny - 1);
            out.extend((r0..=r1).map(|r| r * self.nx + c));
        }
    }
}

/// Working polygon stored as a doubly linked cycle over point indices.
pub(crate) struct Carver<'a> {
    s: &'a PointSet,
    hull_vertices: Vec<usize>,
    next: Vec<usize>,
    prev: Vec<usize>,
    /// Hull edge whose pocket a vertex belongs to (hull vertex `j` starts pocket `j`).
    pocket: Vec<usize>,
    grid: Grid,
    stamp: Vec<u32>,
    epoch: u32,
    cells: Vec<usize>,
    len: usize,
}

impl<'a> Carver<'a> {
    pub fn new(s: &'a PointSet, hull: &Hull) -> Self {
        let n = s.len();
        let mut c = Carver {
            s,
            hull_vertices: hull.vertices().to_vec(),
            next: vec![NONE; n],
            prev: vec![NONE; n],
            pocket: vec![NONE; n],
            grid: Grid::new(s),
            stamp: vec![0; n],
            epoch: 0,
            cells: Vec::new(),
            len: hull.m(),
        };
        for (j, (a, b)) in hull.edges().enumerate() {
            c.next[a] = b;
            c.prev[b] = a;
            c.pocket[a] = j;
            c.register(a, b);
        }
        c
    }

    pub fn contains(&self, v: usize) -> bool {
        self.next[v] != NONE
    }

    pub fn successor(&self, v: usize) -> usize {
        self.next[v]
    }

    pub fn pocket_of(&self, v: usize) -> usize {
        self.pocket[v]
    }

    fn register(&mut self, a: usize, b: usize) {
        let seg = [self.s[a], self.s[b]];
        let mut cells = std::mem::take(&mut self.cells);
        self.grid.cover(&seg, &mut cells);
        for &c in &cells {
            self.grid.edges[c].push(a as u32);
        }
        self.cells = cells;
    }

    fn bump(&mut self) -> u32 {
        self.epoch = self.epoch.wrapping_add(1);
        if self.epoch == 0 {
            self.stamp.iter_mut().for_each(|v| *v = 0);
            self.epoch = 1;
        }
        self.epoch
    }

    /// Start vertices of the edges of pocket `j`, from hull vertex `j` up to
    /// (excluding) hull vertex `j + 1`.
    pub fn pocket_edges(&self, j: usize) -> Vec<usize> {
        let m = self.hull_vertices.len();
        let (start, stop) = (self.hull_vertices[j], self.hull_vertices[(j + 1) % m]);
        let mut out = Vec::new();
        let mut v = start;
        while v != stop {
            out.push(v);
            v = self.next[v];
        }
        out
    }

    /// Start vertices of every edge in polygon order, from hull vertex 0.
    pub fn all_edges(&self) -> Vec<usize> {
        let start = self.hull_vertices[0];
        let mut out = Vec::with_capacity(self.len);
        let mut v = start;
        loop {
            out.push(v);
            v = self.next[v];
            if v == start {
                break;
            }
        }
        out
    }

    /// Start vertices of current edges passing near `x` (within `radius` cells).
    pub fn nearby_edges(&mut self, x: usize, radius: usize) -> Vec<usize> {
        let epoch = self.bump();
        let (cx, cy) = self.grid.cell_of(self.s[x]);
        let mut out = Vec::new();
        let (c0, c1) = (cx.saturating_sub(radius), (cx + radius).min(self.grid.nx - 1));
        let (r0, r1) = (cy.saturating_sub(radius), (cy + radius).min(self.grid.ny - 1));
        for r in r0..=r1 {
            for c in c0..=c1 {
                for &u in &self.grid.edges[r * self.grid.nx + c] {
                    let u = u as usize;
                    if self.next[u] != NONE && self.stamp[u] != epoch {
                        self.stamp[u] = epoch;
                        out.push(u);
                    }
                }
            }
        }
        out
    }

    /// Whether `x` can replace the current edge starting at `a`.
    pub fn can_splice(&mut self, a: usize, x: usize) -> bool {
        let b = self.next[a];
        let s = self.s;
        let pts = s.points();
        if b == NONE || self.contains(x) || !faces_edge(s, a, b, x) {
            return false;
        }
        let (pa, px, pb) = (pts[a], pts[x], pts[b]);
        if !triangle_shape_ok(pa, px, pb) {
            return false;
        }
        let tri = [pa, px, pb];
        let (bx0, bx1) = (pa.x.min(px.x).min(pb.x), pa.x.max(px.x).max(pb.x));
        let (by0, by1) = (pa.y.min(px.y).min(pb.y), pa.y.max(px.y).max(pb.y));
        let mut cells = std::mem::take(&mut self.cells);
        self.grid.cover(&tri, &mut cells);
        let epoch = self.bump();
        let mut ok = true;
        'cells: for &c in &cells {
            for &q in &self.grid.points[c] {
                let q = q as usize;
                if q == a || q == b || q == x {
                    continue;
                }
                let p = pts[q];
                if p.x < bx0 || p.x > bx1 || p.y < by0 || p.y > by1 {
                    continue;
                }
                let blocks = if self.contains(q) {
                    point_in_triangle(pa, px, pb, p)
                } else {
                    swallows_pending(pa, px, pb, p)
                };
                if blocks {
                    ok = false;
                    break 'cells;
                }
            }
            for &u in &self.grid.edges[c] {
                let u = u as usize;
                let v = self.next[u];
                if v == NONE || self.stamp[u] == epoch {
                    continue;
                }
                self.stamp[u] = epoch;
                if u == a {
                    continue;
                }
                let (pu, pv) = (pts[u], pts[v]);
                if pu.x.max(pv.x) < bx0
                    || pu.x.min(pv.x) > bx1
                    || pu.y.max(pv.y) < by0
                    || pu.y.min(pv.y) > by1
                {
                    continue;
                }
                if edge_conflicts(pts, a, x, u, v) || edge_conflicts(pts, x, b, u, v) {
                    ok = false;
                    break 'cells;
                }
            }
        }
        self.cells = cells;
        ok
    }

    /// Angle under which `x` sees the current edge starting at `a`.
    pub fn edge_angle(&self, a: usize, x: usize) -> f64 {
        angle_unchecked(self.s[a], self.s[x], self.s[self.next[a]])
    }

    /// Replace the edge starting at `a` by `a → x → next(a)`. The caller must
    /// have checked [`Carver::can_splice`].
    pub fn splice(&mut self, a: usize, x: usize) -> (usize, usize) {
        let b = self.next[a];
        self.next[a] = x;
        self.prev[x] = a;
        self.next[x] = b;
        self.prev[b] = x;
        self.pocket[x] = self.pocket[a];
        self.len += 1;
        self.register(a, x);
        self.register(x, b);
        (a, b)
    }

    pub fn polygon(&self) -> Polygon {
        Polygon::new(self.all_edges())
    }
}
