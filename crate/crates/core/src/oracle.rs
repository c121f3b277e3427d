//! Exhaustive ground truth for small inputs.
//!
//! Every cyclic order of the points is visited once up to rotation and
//! reflection (index 0 first, second index below the last), with partial
//! chains pruned as soon as their newest edge crosses an earlier one. The
//! enumeration is exact for `n ≤ 10`.

use thiserror::Error;

use crate::geometry::polygon::edge_conflicts;
use crate::geometry::{convex_hull, is_simple, GeometryError, Point, PointSet, Polygon};
use crate::polygonize::{
    angle_bound, onion_depth, polygonize_edgewise, polygonize_onion, PolygonizeError,
};
use crate::ANGLE_TOL;

pub const MAX_ORACLE_POINTS: usize = 10;

#[derive(Debug, Clone, PartialEq)]
pub struct PolygonizationEnumeration {
    /// Distinct simple polygonizations seen.
    pub count: usize,
    /// Smallest maximum interior angle over all of them.
    pub theta: f64,
    /// Lexicographically smallest canonical chain attaining `theta`, CCW.
    pub best: Polygon,
    /// Search nodes visited.
    pub explored: u64,
    /// Set when the search stopped at the cap; such a result proves nothing.
    pub partial: bool,
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum OracleError {
    #[error(transparent)]
    Geometry(#[from] GeometryError),
    #[error("{0} points is too many for exhaustive enumeration (limit {MAX_ORACLE_POINTS})")]
    TooLarge(usize),
    #[error("search cap reached after {} nodes", .0.explored)]
    CapExceeded(Box<PolygonizationEnumeration>),
    #[error("no simple polygonization found")]
    Empty,
    #[error("certification failed: {reason} on instance {instance:?}")]
    CertificationFailure {
        reason: String,
        instance: Vec<(f64, f64)>,
    },
}

struct Search<'a> {
    pts: &'a [Point],
    s: &'a PointSet,
    cap: u64,
    explored: u64,
    count: usize,
    best: Option<(f64, Vec<usize>)>,
    path: Vec<usize>,
    used: Vec<bool>,
}

impl Search<'_> {
    /// Whether the new edge `path.last() → v` avoids every edge on the path.
    fn extends(&self, v: usize) -> bool {
        let k = self.path.len();
        let q = self.path[k - 1];
        (0..k - 1).all(|i| !edge_conflicts(self.pts, q, v, self.path[i], self.path[i + 1]))
    }

    fn dfs(&mut self) -> bool {
        self.explored += 1;
        if self.explored > self.cap {
            return false;
        }
        let n = self.pts.len();
        if self.path.len() == n {
            if self.path[1] < self.path[n - 1] && self.extends(self.path[0]) {
                self.record();
            }
            return true;
        }
        for v in 1..n {
            if self.used[v] || !self.extends(v) {
                continue;
            }
            self.used[v] = true;
            self.path.push(v);
            let go_on = self.dfs();
            self.path.pop();
            self.used[v] = false;
            if !go_on {
                return false;
            }
        }
        true
    }

    fn record(&mut self) {
        let mut p = Polygon::new(self.path.clone());
        debug_assert!(is_simple(&p, self.s));
        p.make_ccw(self.s);
        let worst = p.max_interior_angle(self.s);
        let chain = Polygon::new(self.path.clone()).canonical_chain();
        self.count += 1;
        let better = match &self.best {
            None => true,
            Some((t, c)) => worst.total_cmp(t).then_with(|| chain.cmp(c)).is_lt(),
        };
        if better {
            self.best = Some((worst, chain));
        }
    }
}

/// All simple polygonizations of `s`, or at most `cap` search nodes of them.
pub fn enumerate_polygonizations(
    s: &PointSet,
    cap: u64,
) -> Result<PolygonizationEnumeration, OracleError> {
    let n = s.len();
    if n > MAX_ORACLE_POINTS {
        return Err(OracleError::TooLarge(n));
    }
    if s.all_collinear() {
        return Err(GeometryError::DegenerateInput.into());
    }
    let mut search = Search {
        pts: s.points(),
        s,
        cap,
        explored: 0,
        count: 0,
        best: None,
        path: vec![0],
        used: vec![false; n],
    };
    search.used[0] = true;
    let complete = search.dfs();
    let Some((theta, chain)) = search.best else {
        return Err(if complete {
            OracleError::Empty
        } else {
            OracleError::CapExceeded(Box::new(PolygonizationEnumeration {
                count: 0,
                theta: f64::INFINITY,
                best: Polygon::new(Vec::new()),
                explored: search.explored,
                partial: true,
            }))
        });
    };
    let mut best = Polygon::new(chain);
    best.make_ccw(s);
    let out = PolygonizationEnumeration {
        count: search.count,
        theta,
        best,
        explored: search.explored,
        partial: !complete,
    };
    if complete {
        Ok(out)
    } else {
        Err(OracleError::CapExceeded(Box::new(out)))
    }
}

/// Large enough to finish every 10-point instance.
pub const DEFAULT_CAP: u64 = 50_000_000;

#[derive(Debug, Clone, PartialEq)]
pub struct Certificate {
    pub n: usize,
    pub m: usize,
    pub r: usize,
    pub d: usize,
    pub theta: f64,
    pub count: usize,
    pub rm_bound: f64,
    pub dm_bound: f64,
    pub edgewise_max: f64,
    pub onion_max: f64,
}

/// Checks `θ ≤` both bounds and `θ ≤` each construction's maximum angle `≤`
/// its bound.
pub fn certify_bounds(s: &PointSet) -> Result<Certificate, OracleError> {
    let fail = |reason: String| OracleError::CertificationFailure {
        reason,
        instance: s.points().iter().map(|p| (p.x, p.y)).collect(),
    };
    let construction = |e: PolygonizeError| fail(format!("construction failed: {e}"));
    let hull = convex_hull(s)?;
    let (m, r) = (hull.m(), hull.r());
    let d = onion_depth(s).map_err(construction)?.d();
    let rm_bound = angle_bound(r, m);
    let dm_bound = angle_bound(d, m);
    let e = enumerate_polygonizations(s, DEFAULT_CAP)?;
    let edge = polygonize_edgewise(s).map_err(construction)?;
    let onion = polygonize_onion(s).map_err(construction)?;
    let cert = Certificate {
        n: s.len(),
        m,
        r,
        d,
        theta: e.theta,
        count: e.count,
        rm_bound,
        dm_bound,
        edgewise_max: edge.report.max_angle,
        onion_max: onion.report.max_angle,
    };
    let checks = [
        (cert.theta <= rm_bound + ANGLE_TOL, "theta exceeds the r*m bound"),
        (cert.theta <= dm_bound + ANGLE_TOL, "theta exceeds the d*m bound"),
        (d <= r, "d exceeds r"),
        (cert.edgewise_max >= cert.theta - ANGLE_TOL, "edgewise beats theta"),
        (cert.onion_max >= cert.theta - ANGLE_TOL, "onion beats theta"),
        (cert.edgewise_max <= rm_bound + ANGLE_TOL, "edgewise exceeds the r*m bound"),
        (cert.onion_max <= dm_bound + ANGLE_TOL, "onion exceeds the d*m bound"),
        (is_simple(&edge.polygon, s) && edge.polygon.visits_all(s.len()), "edgewise polygon invalid"),
        (is_simple(&onion.polygon, s) && onion.polygon.visits_all(s.len()), "onion polygon invalid"),
    ];
    if let Some((_, why)) = checks.iter().find(|c| !c.0) {
        return Err(fail(format!("{why} ({cert:?})")));
    }
    Ok(cert)
}
