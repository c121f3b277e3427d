//! Polygonizations with a bounded maximum interior angle.
//!
//! Both constructions start from the convex hull and differ in which hull
//! edge's sweep arc claims each inner point:
//!
//! * [`polygonize_edgewise`] lets the hull edges sweep one after another, each
//!   claiming every remaining point of its covering segment. An edge claims
//!   at most `r` points, giving the bound `2π − 2π/(r·m)`.
//! * [`polygonize_onion`] sweeps all arcs together in rounds where every
//!   edge claims at most one point, so an edge claims at most `d` points and
//!   the bound becomes `2π − 2π/(d·m)`.
//!
//! The claimed points are then spliced into one working polygon (see
//! [`carve`]) in the order the union of all arcs meets them: by the largest
//! angle under which a point sees any hull edge. Each point replaces the edge
//! `a → b` it sees under the largest angle among those whose triangle
//! `(a, x, b)` is empty, so the polygon stays simple after every step and the
//! angle left at `x` is at most `2π − ∠axb`. The `t`-th point an arc claims
//! is expected to find such an edge under at least `2π/(t·m)`; a point that
//! falls short waits behind a few later points and retries, and a point with
//! no empty triangle at all waits until the others have moved. If some points
//! still end up short, the run is repeated with them at the front, allowed to
//! wait as long as needed, and after that with the points in claim order.
//!
//! A run is single-threaded and its sweeps share one pool of unclaimed
//! points, so they must not be split across threads; distinct inputs can be
//! processed concurrently.

mod carve;
pub mod onion;
pub mod sweep;

use std::collections::{HashSet, VecDeque};
use std::f64::consts::PI;

use thiserror::Error;

use crate::geometry::angle::angle_unchecked;
use crate::geometry::{convex_hull, subtended_angle, GeometryError, Hull, Point, PointSet, Polygon};
use crate::ANGLE_TOL;

use carve::Carver;
pub use onion::{onion_depth, peel, Claim, OnionPeeling, PeelMode};
pub use sweep::{insertion_threshold, sweep_arc_chain, Insertion, SweepState};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum PolygonizeError {
    #[error(transparent)]
    Geometry(#[from] GeometryError),
    #[error("no edge of the chain of hull edge {hull_edge:?} (length {chain_len}) is visible from point {point}")]
    NoVisibleEdge {
        point: usize,
        hull_edge: (usize, usize),
        chain_len: usize,
    },
    #[error("inner point {point} is not met by any sweep arc")]
    UnclaimedPoint { point: usize },
    #[error("point {point} is outside the covering segment of the chord")]
    OutsideSegment { point: usize },
    #[error("sweep over an empty point set")]
    EmptySweep,
    #[error("a hull needs at least 3 edges, got {0}")]
    InvalidHullSize(usize),
    #[error("point is not strictly inside the hull")]
    NotInterior,
    #[error("constructed chain does not visit every point exactly once")]
    Incomplete,
}

impl PolygonizeError {
    /// Failures that indicate a geometric degeneracy inside the algorithm
    /// rather than bad input.
    pub fn is_internal(&self) -> bool {
        matches!(
            self,
            PolygonizeError::NoVisibleEdge { .. }
                | PolygonizeError::UnclaimedPoint { .. }
                | PolygonizeError::Incomplete
        )
    }
}

/// Which upper bound a report refers to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BoundKind {
    /// `2π − 2π/(r·m)`.
    RM,
    /// `2π − 2π/(d·m)`.
    DM,
    /// No inner points: the hull itself, every angle below `π`.
    Convex,
}

/// `2π − 2π/(k·m)`, or `π` when `k = 0`.
pub fn angle_bound(k: usize, m: usize) -> f64 {
    if k == 0 {
        PI
    } else {
        2.0 * PI - 2.0 * PI / (k * m) as f64
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct BoundReport {
    pub kind: BoundKind,
    /// `r` for [`BoundKind::RM`], `d` for [`BoundKind::DM`], 0 for convex input.
    pub k: usize,
    pub m: usize,
    pub bound: f64,
    pub max_angle: f64,
    /// Largest angle at an inner point (0 without inner points).
    pub max_inner_angle: f64,
    /// Largest angle at a hull vertex.
    pub max_hull_angle: f64,
    /// Optimal min-max angle, when an oracle run supplied it.
    pub theta: Option<f64>,
}

impl BoundReport {
    fn measure(kind: BoundKind, k: usize, hull: &Hull, s: &PointSet, p: &Polygon) -> Self {
        let (kind, k) = if k == 0 { (BoundKind::Convex, 0) } else { (kind, k) };
        let mut is_hull = vec![false; s.len()];
        for &v in hull.vertices() {
            is_hull[v] = true;
        }
        let (mut inner, mut corner) = (0.0f64, 0.0f64);
        for (i, a) in p.interior_angles(s).into_iter().enumerate() {
            if is_hull[p.chain()[i]] {
                corner = corner.max(a);
            } else {
                inner = inner.max(a);
            }
        }
        BoundReport {
            kind,
            k,
            m: hull.m(),
            bound: angle_bound(k, hull.m()),
            max_angle: inner.max(corner),
            max_inner_angle: inner,
            max_hull_angle: corner,
            theta: None,
        }
    }

    /// `max_angle ≤ bound + ANGLE_TOL`.
    pub fn satisfied(&self) -> bool {
        self.max_angle <= self.bound + ANGLE_TOL
    }
}

/// Output of a construction together with its trace.
#[derive(Debug, Clone)]
pub struct Polygonization {
    pub polygon: Polygon,
    pub hull: Hull,
    pub report: BoundReport,
    /// Every splice, in execution order.
    pub insertions: Vec<Insertion>,
    /// For each hull edge `j`, the points between hull vertices `j` and `j + 1`
    /// in the final polygon.
    pub chains: Vec<Vec<usize>>,
    /// The layers driving the onion construction; `None` for the edgewise one.
    pub peeling: Option<OnionPeeling>,
}

impl Polygonization {
    /// Insertions whose angle fell below `2π/((t+1)·m)`.
    pub fn guarantee_violations(&self) -> impl Iterator<Item = &Insertion> {
        self.insertions.iter().filter(|i| !i.meets_guarantee())
    }
}

/// Which polygon edges a point may be spliced into.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum CandidateScope {
    /// Polygon edges in the grid cells around the point, widened to every
    /// edge when none of them reaches the guaranteed angle.
    #[default]
    Local,
    /// Every edge of the current polygon.
    All,
}

/// Order in which claimed points are spliced.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum InsertionOrder {
    /// The order of the claims: edge by edge (edgewise) or round by round
    /// (onion). Pending points of later claims can then block every edge a
    /// point could take, so this order aborts on some inputs.
    Claim,
    /// By the earliest measure at which any arc meets the point, with the
    /// claim order as fallback when some insertion stays short.
    #[default]
    UnionSweep,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Options {
    pub peel: PeelMode,
    pub scope: CandidateScope,
    pub order: InsertionOrder,
}

/// A claim with its rank among the claims of the same edge.
#[derive(Debug, Clone, Copy)]
struct Ranked {
    claim: Claim,
    rank: usize,
}

fn ranked_claims(
    s: &PointSet,
    hull: &Hull,
    claims: impl IntoIterator<Item = Claim>,
    order: InsertionOrder,
) -> Vec<Ranked> {
    let mut per_edge = vec![0; hull.m()];
    let claims = claims.into_iter().map(|claim| {
        let rank = per_edge[claim.edge];
        per_edge[claim.edge] += 1;
        Ranked { claim, rank }
    });
    match order {
        InsertionOrder::Claim => claims.collect(),
        InsertionOrder::UnionSweep => {
            let mut keyed: Vec<(f64, Ranked)> = claims
                .map(|c| {
                    let x = c.claim.point;
                    let seen = hull
                        .edges()
                        .map(|(a, b)| angle_unchecked(s[a], s[x], s[b]))
                        .fold(0.0, f64::max);
                    (2.0 * (PI - seen), c)
                })
                .collect();
            keyed.sort_by(|p, q| p.0.total_cmp(&q.0).then(p.1.claim.point.cmp(&q.1.claim.point)));
            keyed.into_iter().map(|k| k.1).collect()
        }
    }
}

/// Splice orders to try: the requested one, then the claim order as a
/// fallback for union-sweep runs.
fn orders(s: &PointSet, hull: &Hull, claims: &[Claim], order: InsertionOrder) -> Vec<Vec<Ranked>> {
    let mut out = vec![ranked_claims(s, hull, claims.iter().copied(), order)];
    if order == InsertionOrder::UnionSweep {
        out.push(ranked_claims(s, hull, claims.iter().copied(), InsertionOrder::Claim));
    }
    out
}

/// How many times a point may step back behind its successor in the queue.
const DEFER_LIMIT: usize = 32;

fn insert_all(b: &mut Builder<'_>, claims: Vec<Ranked>, patient: &HashSet<usize>) -> Result<(), PolygonizeError> {
    let mut queue: VecDeque<(Ranked, usize)> = claims.into_iter().map(|c| (c, 0)).collect();
    // consecutive points that found no empty triangle at all
    let mut stalled = 0;
    while let Some((c, waited)) = queue.pop_front() {
        let x = c.claim.point;
        let required = insertion_threshold(c.rank, b.m);
        let choice = b.choose(x, required);
        if choice.is_none() && stalled < queue.len() {
            stalled += 1;
            queue.push_back((c, waited));
            continue;
        }
        let short = choice.is_none_or(|(beta, _)| beta < required - ANGLE_TOL);
        let limit = if patient.contains(&x) { usize::MAX } else { DEFER_LIMIT };
        if short && waited < limit && !queue.is_empty() {
            queue.insert(1, (c, waited + 1));
            continue;
        }
        stalled = 0;
        b.commit(c, choice)?;
    }
    Ok(())
}

/// Rebuilds allowed per splice order after a run left insertions below
/// their guarantee.
const RESCHEDULES: usize = 3;

/// Carves every claimed point into the hull, trying the splice orders in
/// turn. When a run leaves insertions short of `2π/((t+1)·m)`, it is
/// repeated with those points moved to the front and allowed to wait for
/// their guarantee; then the next order is tried. The first run without
/// shortfalls wins, otherwise the one with the fewest (earliest on ties).
fn carve_all<'a>(
    s: &'a PointSet,
    hull: &Hull,
    orders: Vec<Vec<Ranked>>,
    scope: CandidateScope,
) -> Result<Builder<'a>, PolygonizeError> {
    let mut best: Option<Builder<'a>> = None;
    let mut first_err = None;
    let shortfalls = |b: &Option<Builder<'_>>| b.as_ref().map_or(usize::MAX, |b| b.shortfalls().count());
    for order in orders {
        let mut patient = HashSet::new();
        for round in 0..=RESCHEDULES {
            let mut queue = order.clone();
            if round > 0 {
                let Some(b) = &best else { break };
                patient.extend(b.shortfalls());
                let (mut first, rest): (Vec<Ranked>, Vec<Ranked>) =
                    order.iter().partition(|c| patient.contains(&c.claim.point));
                first.extend(rest);
                queue = first;
            }
            let mut b = Builder::new(s, hull, scope);
            match insert_all(&mut b, queue, &patient) {
                Ok(()) => {
                    if b.shortfalls().count() < shortfalls(&best) {
                        best = Some(b);
                    }
                }
                Err(e) => {
                    first_err.get_or_insert(e);
                }
            }
            if shortfalls(&best) == 0 {
                return Ok(best.expect("a run without shortfalls"));
            }
        }
    }
    match (best, first_err) {
        (Some(b), _) => Ok(b),
        (None, Some(e)) => Err(e),
        (None, None) => unreachable!("at least one order is tried"),
    }
}

struct Builder<'a> {
    s: &'a PointSet,
    m: usize,
    carver: Carver<'a>,
    insertions: Vec<Insertion>,
    scope: CandidateScope,
}

impl<'a> Builder<'a> {
    fn new(s: &'a PointSet, hull: &Hull, scope: CandidateScope) -> Self {
        Builder {
            s,
            m: hull.m(),
            carver: Carver::new(s, hull),
            insertions: Vec::with_capacity(hull.r()),
            scope,
        }
    }

    fn shortfalls(&self) -> impl Iterator<Item = usize> + '_ {
        self.insertions.iter().filter(|i| !i.meets_guarantee()).map(|i| i.point)
    }

    /// Edge starts facing `x`, by decreasing angle, then index.
    fn ranked(&self, x: usize, mut starts: Vec<usize>) -> Vec<(f64, usize)> {
        starts.sort_unstable();
        starts.dedup();
        let mut ranked: Vec<(f64, usize)> = starts
            .into_iter()
            .filter(|&a| sweep::faces_edge(self.s, a, self.carver.successor(a), x))
            .map(|a| (self.carver.edge_angle(a, x), a))
            .collect();
        ranked.sort_by(|p, q| q.0.total_cmp(&p.0).then(p.1.cmp(&q.1)));
        ranked
    }

    fn first_reachable(&mut self, x: usize, ranked: &[(f64, usize)]) -> Option<(f64, usize)> {
        ranked
            .iter()
            .copied()
            .find(|&(_, a)| self.carver.can_splice(a, x))
    }

    /// Widest reachable edge for `x` as `(angle, start vertex)`.
    fn choose(&mut self, x: usize, required: f64) -> Option<(f64, usize)> {
        let starts = match self.scope {
            CandidateScope::Local => self.carver.nearby_edges(x, 1),
            CandidateScope::All => self.carver.all_edges(),
        };
        let near = self.ranked(x, starts);
        let mut choice = self.first_reachable(x, &near);
        let short = choice.is_none_or(|(beta, _)| beta < required - ANGLE_TOL);
        if short && self.scope == CandidateScope::Local {
            let tried: HashSet<usize> = near.iter().map(|r| r.1).collect();
            let rest = self
                .carver
                .all_edges()
                .into_iter()
                .filter(|a| !tried.contains(a))
                .collect();
            let far = self.ranked(x, rest);
            if let Some(f) = self.first_reachable(x, &far) {
                if choice.is_none_or(|c| f.0 > c.0) {
                    choice = Some(f);
                }
            }
        }
        choice
    }

    fn commit(&mut self, c: Ranked, choice: Option<(f64, usize)>) -> Result<(), PolygonizeError> {
        let x = c.claim.point;
        let Some((beta, a)) = choice else {
            let chain = self.carver.pocket_edges(c.claim.edge);
            return Err(PolygonizeError::NoVisibleEdge {
                point: x,
                hull_edge: (chain[0], self.carver.successor(chain[chain.len() - 1])),
                chain_len: c.rank,
            });
        };
        let pocket = self.carver.pocket_of(a);
        let replaced = self.carver.splice(a, x);
        self.insertions.push(Insertion {
            point: x,
            claimed_by: c.claim.edge,
            chain_len_before: c.rank,
            pocket,
            replaced,
            beta,
            required: insertion_threshold(c.rank, self.m),
        });
        Ok(())
    }

    fn finish(
        self,
        hull: Hull,
        kind: BoundKind,
        k: usize,
        peeling: Option<OnionPeeling>,
    ) -> Result<Polygonization, PolygonizeError> {
        let polygon = self.carver.polygon();
        if !polygon.visits_all(self.s.len()) {
            return Err(PolygonizeError::Incomplete);
        }
        let chains = (0..hull.m())
            .map(|j| self.carver.pocket_edges(j).into_iter().skip(1).collect())
            .collect();
        let report = BoundReport::measure(kind, k, &hull, self.s, &polygon);
        Ok(Polygonization {
            polygon,
            hull,
            report,
            insertions: self.insertions,
            chains,
            peeling,
        })
    }
}

/// Simple polygon through all points of `s` with every interior angle at
/// most `2π − 2π/(r·m)`. With no inner points the hull is returned.
pub fn polygonize_edgewise(s: &PointSet) -> Result<Polygonization, PolygonizeError> {
    polygonize_edgewise_with(s, Options::default())
}

/// Like [`polygonize_edgewise`]; `opts.peel` is ignored.
pub fn polygonize_edgewise_with(s: &PointSet, opts: Options) -> Result<Polygonization, PolygonizeError> {
    let hull = convex_hull(s)?;
    let claims: Vec<Claim> = onion::claim_edgewise(s, &hull)?.into_iter().flatten().collect();
    let b = carve_all(s, &hull, orders(s, &hull, &claims, opts.order), opts.scope)?;
    let r = hull.r();
    b.finish(hull, BoundKind::RM, r, None)
}

/// Simple polygon through all points of `s` with every interior angle at
/// most `2π − 2π/(d·m)`, `d` being the depth of the angular onion peeling.
pub fn polygonize_onion(s: &PointSet) -> Result<Polygonization, PolygonizeError> {
    polygonize_onion_with(s, Options::default())
}

/// Like [`polygonize_onion`] with a choice of peeling rule, candidate edges
/// and splice order. Under [`PeelMode::GlobalHit`] the reported bound uses
/// that peeling's depth, which is not a proven bound.
pub fn polygonize_onion_with(s: &PointSet, opts: Options) -> Result<Polygonization, PolygonizeError> {
    let hull = convex_hull(s)?;
    let peeling = peel(s, &hull, opts.peel)?;
    let claims: Vec<Claim> = peeling.claims().copied().collect();
    let b = carve_all(s, &hull, orders(s, &hull, &claims, opts.order), opts.scope)?;
    let d = peeling.d();
    b.finish(hull, BoundKind::DM, d, Some(peeling))
}

/// Hull edge whose covering segment contains `x`: the one `x` sees under the
/// largest angle (lowest index on ties). That angle is at least `2π/m`.
pub fn find_covering_edge(hull: &Hull, s: &PointSet, x: Point) -> Result<usize, PolygonizeError> {
    if hull.locate(s, x) != Some(true) {
        return Err(PolygonizeError::NotInterior);
    }
    let mut best = (f64::MIN, 0);
    for (j, (a, b)) in hull.edges().enumerate() {
        let seen = subtended_angle(s[a], x, s[b])?;
        if seen > best.0 {
            best = (seen, j);
        }
    }
    Ok(best.1)
}

#[derive(Debug, Clone, PartialEq)]
pub enum AlphaOutcome {
    Polygon(Polygon),
    /// `alpha` does not exceed the guaranteed bound. This is not a proof that
    /// no such polygon exists.
    Infeasible { bound: f64 },
}

/// Guaranteed bound `2π − 2π/(d·m)` for `s` (`π` for convex input).
pub fn onion_bound(s: &PointSet) -> Result<f64, PolygonizeError> {
    let hull = convex_hull(s)?;
    Ok(angle_bound(peel(s, &hull, PeelMode::PerEdge)?.d(), hull.m()))
}

/// A polygon through all points with every interior angle at most `alpha`,
/// whenever `alpha` exceeds `2π − 2π/(d·m)`.
pub fn alpha_polygon(s: &PointSet, alpha: f64) -> Result<AlphaOutcome, PolygonizeError> {
    let bound = onion_bound(s)?;
    if alpha <= bound {
        return Ok(AlphaOutcome::Infeasible { bound });
    }
    let built = polygonize_onion(s)?;
    if built.report.max_angle > alpha {
        return Ok(AlphaOutcome::Infeasible { bound });
    }
    Ok(AlphaOutcome::Polygon(built.polygon))
}

#[derive(Debug, Clone, PartialEq)]
pub struct CoveragePath {
    pub feasible: bool,
    pub bound: f64,
    pub tour: Option<Polygon>,
}

/// Closed tour through all points turning by at most `max_turn` at every
/// vertex (interior angle at most `max_turn`), available whenever `max_turn`
/// exceeds `2π − 2π/(d·m)`.
pub fn coverage_path_feasible(s: &PointSet, max_turn: f64) -> Result<CoveragePath, PolygonizeError> {
    Ok(match alpha_polygon(s, max_turn)? {
        AlphaOutcome::Polygon(p) => CoveragePath {
            feasible: true,
            bound: onion_bound(s)?,
            tour: Some(p),
        },
        AlphaOutcome::Infeasible { bound } => CoveragePath {
            feasible: false,
            bound,
            tour: None,
        },
    })
}
