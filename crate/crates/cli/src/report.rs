//! Running the constructions on one instance and the versioned JSON report.

use std::collections::BTreeMap;
use std::f64::consts::PI;
use std::time::Instant;

use polyangle_core::geometry::convex_hull;
use polyangle_core::oracle::{enumerate_polygonizations, PolygonizationEnumeration, DEFAULT_CAP, MAX_ORACLE_POINTS};
use polyangle_core::polygonize::{
    angle_bound, onion_depth, polygonize_onion_with, Options, PeelMode, Polygonization,
};
use polyangle_core::{polygonize_edgewise, BoundKind, PointSet, ANGLE_TOL};
use serde::Serialize;

use crate::CliError;

pub const SCHEMA_VERSION: u32 = 1;

/// Radians to 9 decimals plus the same value as a multiple of π.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Angle {
    pub rad: f64,
    pub over_pi: f64,
}

fn round9(x: f64) -> f64 {
    (x * 1e9).round() / 1e9 + 0.0
}

impl From<f64> for Angle {
    fn from(a: f64) -> Self {
        Angle { rad: round9(a), over_pi: round9(a / PI) }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Algo {
    Edgewise,
    Onion,
    Oracle,
    All,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RunOptions {
    pub algo: Algo,
    pub onion_global_hit: bool,
    /// Record wall-clock time per phase. Off by default so that reports of
    /// the same instance are byte-identical.
    pub timing: bool,
}

impl Default for RunOptions {
    fn default() -> Self {
        RunOptions { algo: Algo::All, onion_global_hit: false, timing: false }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct InstanceSummary {
    pub n: usize,
    pub m: usize,
    pub r: usize,
    pub d: usize,
    /// Inner points lying on an open hull edge.
    pub boundary_inner: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AlgoReport {
    /// `rm`, `dm` or `convex`.
    pub bound_kind: &'static str,
    pub k: usize,
    pub m: usize,
    pub bound: Angle,
    pub max_angle: Angle,
    pub max_inner_angle: Angle,
    pub max_hull_angle: Angle,
    pub satisfied: bool,
    /// Whether `satisfied` counts towards the exit status.
    pub asserted: bool,
    pub insertions: usize,
    /// Insertions below `2π/((t+1)·m)`.
    pub guarantee_violations: usize,
    /// Smallest `β / (2π/((t+1)·m))` over all insertions.
    pub min_guarantee_ratio: Option<f64>,
    pub polygon: Vec<usize>,
    pub layers: Option<Vec<Vec<usize>>>,
}

impl AlgoReport {
    pub fn new(p: &Polygonization, asserted: bool) -> Self {
        let rep = &p.report;
        let min_ratio = p
            .insertions
            .iter()
            .map(|i| i.beta / i.required)
            .min_by(f64::total_cmp)
            .map(round9);
        AlgoReport {
            bound_kind: match rep.kind {
                BoundKind::RM => "rm",
                BoundKind::DM => "dm",
                BoundKind::Convex => "convex",
            },
            k: rep.k,
            m: rep.m,
            bound: rep.bound.into(),
            max_angle: rep.max_angle.into(),
            max_inner_angle: rep.max_inner_angle.into(),
            max_hull_angle: rep.max_hull_angle.into(),
            satisfied: rep.satisfied(),
            asserted,
            insertions: p.insertions.len(),
            guarantee_violations: p.guarantee_violations().count(),
            min_guarantee_ratio: min_ratio,
            polygon: p.polygon.chain().to_vec(),
            layers: p
                .peeling
                .as_ref()
                .map(|l| l.layers.iter().map(|c| c.iter().map(|c| c.point).collect()).collect()),
        }
    }

    /// Counts towards the exit status and fails.
    pub fn fails(&self) -> bool {
        self.asserted && (!self.satisfied || self.guarantee_violations > 0)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OracleReport {
    pub theta: Angle,
    pub count: usize,
    pub explored: u64,
    pub best: Vec<usize>,
    pub rm_bound: Angle,
    pub dm_bound: Angle,
    pub rm_bound_holds: bool,
    pub dm_bound_holds: bool,
}

impl OracleReport {
    fn new(e: &PolygonizationEnumeration, summary: &InstanceSummary) -> Self {
        let rm = angle_bound(summary.r, summary.m);
        let dm = angle_bound(summary.d, summary.m);
        OracleReport {
            theta: e.theta.into(),
            count: e.count,
            explored: e.explored,
            best: e.best.chain().to_vec(),
            rm_bound: rm.into(),
            dm_bound: dm.into(),
            rm_bound_holds: e.theta <= rm + ANGLE_TOL,
            dm_bound_holds: e.theta <= dm + ANGLE_TOL,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RunReport {
    pub schema_version: u32,
    pub instance: InstanceSummary,
    pub edgewise: Option<AlgoReport>,
    pub onion: Option<AlgoReport>,
    /// Onion construction with one global hit per round; reported only.
    pub onion_global_hit: Option<AlgoReport>,
    pub oracle: Option<OracleReport>,
    /// Milliseconds per phase, present only when requested.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timing_ms: Option<BTreeMap<&'static str, f64>>,
    /// Every asserted bound holds.
    pub ok: bool,
}

impl RunReport {
    pub fn to_json(&self) -> String {
        let mut out = serde_json::to_string_pretty(self).expect("report serializes");
        out.push('\n');
        out
    }
}

/// Everything produced by one run; the polygonizations are kept for SVG output.
pub struct RunOutput {
    pub report: RunReport,
    pub edgewise: Option<Polygonization>,
    pub onion: Option<Polygonization>,
}

pub fn run(s: &PointSet, opts: RunOptions) -> Result<RunOutput, CliError> {
    let mut timing = BTreeMap::new();
    let mut clock = |name: &'static str, start: Instant| {
        timing.insert(name, start.elapsed().as_secs_f64() * 1e3);
    };

    let t = Instant::now();
    let hull = convex_hull(s)?;
    let d = onion_depth(s)?.d();
    clock("summary", t);
    let summary = InstanceSummary {
        n: s.len(),
        m: hull.m(),
        r: hull.r(),
        d,
        boundary_inner: hull.boundary_inner_count(),
    };

    let want = |a: Algo| opts.algo == a || opts.algo == Algo::All;
    let oracle_fits = s.len() <= MAX_ORACLE_POINTS;
    if opts.algo == Algo::Oracle && !oracle_fits {
        return Err(CliError::Usage(format!(
            "the oracle handles at most {MAX_ORACLE_POINTS} points, the instance has {}",
            s.len()
        )));
    }

    let oracle = if want(Algo::Oracle) && oracle_fits {
        let t = Instant::now();
        let e = enumerate_polygonizations(s, DEFAULT_CAP)?;
        clock("oracle", t);
        Some(e)
    } else {
        None
    };
    let theta = oracle.as_ref().map(|e| e.theta);

    let with_theta = |mut p: Polygonization| {
        p.report.theta = theta;
        p
    };
    let edgewise = if want(Algo::Edgewise) {
        let t = Instant::now();
        let p = polygonize_edgewise(s)?;
        clock("edgewise", t);
        Some(with_theta(p))
    } else {
        None
    };
    let onion = if want(Algo::Onion) {
        let t = Instant::now();
        let p = polygonize_onion_with(s, Options::default())?;
        clock("onion", t);
        Some(with_theta(p))
    } else {
        None
    };
    let global_hit = if opts.onion_global_hit {
        let t = Instant::now();
        let p = polygonize_onion_with(s, Options { peel: PeelMode::GlobalHit, ..Options::default() })?;
        clock("onion_global_hit", t);
        Some(AlgoReport::new(&p, false))
    } else {
        None
    };

    let edge_rep = edgewise.as_ref().map(|p| AlgoReport::new(p, true));
    let onion_rep = onion.as_ref().map(|p| AlgoReport::new(p, true));
    let oracle_rep = oracle.as_ref().map(|e| OracleReport::new(e, &summary));
    let ok = !edge_rep.as_ref().is_some_and(AlgoReport::fails)
        && !onion_rep.as_ref().is_some_and(AlgoReport::fails)
        && oracle_rep.as_ref().is_none_or(|o| o.rm_bound_holds && o.dm_bound_holds)
        && summary.d <= summary.r;
    let report = RunReport {
        schema_version: SCHEMA_VERSION,
        instance: summary,
        edgewise: edge_rep,
        onion: onion_rep,
        onion_global_hit: global_hit,
        oracle: oracle_rep,
        timing_ms: opts.timing.then_some(timing),
        ok,
    };
    Ok(RunOutput { report, edgewise, onion })
}
