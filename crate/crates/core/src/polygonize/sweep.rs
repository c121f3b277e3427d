//! Sweep arc on a single chord.
//!
//! An arc anchored at the chord endpoints grows from measure 0 towards
//! `2π − 4π/m`, meeting points in order of decreasing subtended angle. Each met
//! point is spliced into the edge of the chain built so far that it sees
//! under the largest angle among the edges it can reach without crossing the
//! chain.

use std::cmp::Ordering;
use std::f64::consts::PI;

use crate::geometry::angle::angle_unchecked;
use crate::geometry::polygon::{edge_conflicts, swallows_pending, triangle_shape_ok};
use crate::geometry::{self, point_in_triangle, Orientation, Point, PointSet, Polygon};
use crate::ANGLE_TOL;

use super::PolygonizeError;

/// One splice performed while growing a chain.
#[derive(Debug, Clone, PartialEq)]
pub struct Insertion {
    /// The inserted point.
    pub point: usize,
    /// Hull edge (or chord) whose sweep arc claimed the point.
    pub claimed_by: usize,
    /// Number of points that arc claimed before this one (`t`).
    pub chain_len_before: usize,
    /// Hull edge whose chain received the point.
    pub pocket: usize,
    /// The replaced edge `(a, b)`; the chain now runs `a → point → b`.
    pub replaced: (usize, usize),
    /// Angle under which `point` sees the replaced edge.
    pub beta: f64,
    /// `2π / ((t + 1)·m)` with `t = chain_len_before`.
    pub required: f64,
}

impl Insertion {
    /// The per-insertion guarantee of the sweep: the chosen edge is seen
    /// under at least `2π/((t+1)·m)`.
    pub fn meets_guarantee(&self) -> bool {
        self.beta >= self.required - ANGLE_TOL
    }
}

/// `2π / ((t + 1)·m)`.
pub fn insertion_threshold(chain_len_before: usize, m: usize) -> f64 {
    2.0 * PI / ((chain_len_before + 1) * m) as f64
}

/// Total order in which a sweep arc on `a → b` meets points: arc measure,
/// then distance to the chord midpoint, then index.
#[derive(Debug, Clone, Copy, PartialEq)]
pub(crate) struct SweepKey {
    pub measure: f64,
    pub mid_dist: f64,
    pub index: usize,
}

impl SweepKey {
    pub fn new(s: &PointSet, a: usize, b: usize, x: usize, measure: f64) -> Self {
        SweepKey {
            measure,
            mid_dist: s[a].midpoint(s[b]).dist(s[x]),
            index: x,
        }
    }

    pub fn cmp(&self, other: &Self) -> Ordering {
        self.measure
            .total_cmp(&other.measure)
            .then(self.mid_dist.total_cmp(&other.mid_dist))
            .then(self.index.cmp(&other.index))
    }
}

/// Arc measure of `x` for the sweep on `a → b` when `x` lies in the closed
/// covering segment of measure `2π − 4π/m` (up to [`ANGLE_TOL`] on the
/// bounding arc). `None` otherwise.
pub(crate) fn covering_measure(s: &PointSet, a: usize, b: usize, x: usize, m: usize) -> Option<f64> {
    let (pa, pb, px) = (s[a], s[b], s[x]);
    match geometry::orientation(pa, pb, px) {
        Orientation::Left => {
            let seen = crate::geometry::subtended_angle(pa, px, pb).ok()?;
            (seen >= 2.0 * PI / m as f64 - ANGLE_TOL).then_some(2.0 * (PI - seen))
        }
        Orientation::Collinear => geometry::arc_measure_of(pa, pb, px).ok(),
        Orientation::Right => None,
    }
}

/// State of a sweep arc on one chord: the chain built so far and the points
/// still waiting to be met.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepState {
    /// Chord endpoints `(c1, c2)`; the sweep covers the left side of `c1 → c2`.
    pub edge: (usize, usize),
    /// Hull edge count used for `β_max`.
    pub m: usize,
    /// Current arc measure: the measure at which the last point was met.
    pub measure: f64,
    /// Met points in chain order from `c1` to `c2`.
    pub chain: Vec<usize>,
    /// Every splice in the order performed; the last entry is the most recent.
    pub insertions: Vec<Insertion>,
    // reversed meet order, so the next point is at the end
    pending: Vec<(usize, f64)>,
}

impl SweepState {
    /// Prepare a sweep over `pts`. Every point must lie in the covering
    /// segment of `edge`.
    pub fn new(
        s: &PointSet,
        edge: (usize, usize),
        pts: &[usize],
        m: usize,
    ) -> Result<Self, PolygonizeError> {
        if m < 3 {
            return Err(PolygonizeError::InvalidHullSize(m));
        }
        let (a, b) = edge;
        let mut keys = Vec::with_capacity(pts.len());
        for &x in pts {
            if x == a || x == b {
                return Err(PolygonizeError::OutsideSegment { point: x });
            }
            let measure = covering_measure(s, a, b, x, m)
                .ok_or(PolygonizeError::OutsideSegment { point: x })?;
            keys.push(SweepKey::new(s, a, b, x, measure));
        }
        keys.sort_by_key(|p| p.index);
        keys.dedup_by_key(|k| k.index);
        keys.sort_by(SweepKey::cmp);
        Ok(SweepState {
            edge,
            m,
            measure: 0.0,
            chain: Vec::new(),
            insertions: Vec::new(),
            pending: keys.into_iter().rev().map(|k| (k.index, k.measure)).collect(),
        })
    }

    pub fn last_insertion(&self) -> Option<&Insertion> {
        self.insertions.last()
    }

    pub fn is_done(&self) -> bool {
        self.pending.is_empty()
    }

    /// Points not met yet, in the order the arc will meet them.
    pub fn pending(&self) -> impl Iterator<Item = usize> + '_ {
        self.pending.iter().rev().map(|&(x, _)| x)
    }

    /// Closed chain `(c1, s_1, …, s_t, c2)`.
    pub fn polygon(&self) -> Polygon {
        let mut v = Vec::with_capacity(self.chain.len() + 2);
        v.push(self.edge.0);
        v.extend(&self.chain);
        v.push(self.edge.1);
        Polygon::new(v)
    }

    /// Next point the arc will meet.
    pub fn peek(&self) -> Option<usize> {
        self.pending.last().map(|&(x, _)| x)
    }

    /// Whether `x` can replace chain edge `i` (`seq[i] → seq[i + 1]`) without
    /// touching the rest of the chain or swallowing a pending point.
    fn can_splice(&self, s: &PointSet, seq: &[usize], i: usize, x: usize) -> bool {
        let pts = s.points();
        let (a, b) = (seq[i], seq[i + 1]);
        if !faces_edge(s, a, b, x) || !triangle_shape_ok(pts[a], pts[x], pts[b]) {
            return false;
        }
        let inside = |q: usize| point_in_triangle(pts[a], pts[x], pts[b], pts[q]);
        if seq.iter().any(|&v| v != a && v != b && inside(v)) {
            return false;
        }
        if self.pending[..self.pending.len() - 1]
            .iter()
            .any(|&(q, _)| swallows_pending(pts[a], pts[x], pts[b], pts[q]))
        {
            return false;
        }
        // the chord closing the region is never crossed: everything lies on its left
        (0..seq.len() - 1).filter(|&j| j != i).all(|j| {
            let (u, v) = (seq[j], seq[j + 1]);
            !edge_conflicts(pts, a, x, u, v) && !edge_conflicts(pts, x, b, u, v)
        })
    }

    /// Meet the next pending point and splice it into the chain.
    pub fn advance(&mut self, s: &PointSet) -> Result<Option<&Insertion>, PolygonizeError> {
        let Some(&(x, measure)) = self.pending.last() else {
            return Ok(None);
        };
        let seq = self.polygon().into_chain();
        let mut best: Option<(f64, usize)> = None;
        for i in 0..seq.len() - 1 {
            if !self.can_splice(s, &seq, i, x) {
                continue;
            }
            let beta = angle_unchecked(s[seq[i]], s[x], s[seq[i + 1]]);
            if best.is_none_or(|(bb, _)| beta > bb) {
                best = Some((beta, i));
            }
        }
        let Some((beta, pos)) = best else {
            return Err(PolygonizeError::NoVisibleEdge {
                point: x,
                hull_edge: self.edge,
                chain_len: self.chain.len(),
            });
        };
        let t = self.chain.len();
        self.pending.pop();
        self.chain.insert(pos, x);
        self.measure = measure;
        self.insertions.push(Insertion {
            point: x,
            claimed_by: 0,
            chain_len_before: t,
            pocket: 0,
            replaced: (seq[pos], seq[pos + 1]),
            beta,
            required: insertion_threshold(t, self.m),
        });
        Ok(self.insertions.last())
    }
}

/// `x` is strictly left of `a → b` or on the open edge.
pub(crate) fn faces_edge(s: &PointSet, a: usize, b: usize, x: usize) -> bool {
    face(s[a], s[b], s[x])
}

fn face(a: Point, b: Point, x: Point) -> bool {
    match geometry::orientation(a, b, x) {
        Orientation::Left => true,
        Orientation::Collinear => geometry::arc_measure_of(a, b, x).is_ok(),
        Orientation::Right => false,
    }
}

/// Run the sweep arc on `edge` over `pts` to completion.
///
/// The returned chain `(c1, s_1, …, s_k, c2)` is simple and every chain vertex
/// has interior angle (on the side of the chord) at least `2π/(k·m)`.
pub fn sweep_arc_chain(
    s: &PointSet,
    edge: (usize, usize),
    pts: &[usize],
    m: usize,
) -> Result<SweepState, PolygonizeError> {
    if pts.is_empty() {
        return Err(PolygonizeError::EmptySweep);
    }
    let mut state = SweepState::new(s, edge, pts, m)?;
    while !state.is_done() {
        state.advance(s)?;
    }
    Ok(state)
}
