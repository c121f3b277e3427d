//! Batch certification of the bounds against the exhaustive oracle.

use polyangle_core::oracle::{certify_bounds, Certificate, OracleError};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::generate::{InstanceSpec, Shape};
use crate::report::{Angle, SCHEMA_VERSION};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BatchSpec {
    pub n_min: usize,
    pub n_max: usize,
    pub trials: usize,
    pub seed: u64,
    pub jobs: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TrialReport {
    pub index: usize,
    pub n: usize,
    pub seed: u64,
    pub m: Option<usize>,
    pub r: Option<usize>,
    pub d: Option<usize>,
    pub count: Option<usize>,
    pub theta: Option<Angle>,
    pub rm_bound: Option<Angle>,
    pub dm_bound: Option<Angle>,
    pub edgewise_max: Option<Angle>,
    pub onion_max: Option<Angle>,
    pub error: Option<String>,
}

impl TrialReport {
    fn new(index: usize, spec: &InstanceSpec, outcome: Result<Certificate, String>) -> Self {
        let mut t = TrialReport {
            index,
            n: spec.n,
            seed: spec.seed,
            m: None,
            r: None,
            d: None,
            count: None,
            theta: None,
            rm_bound: None,
            dm_bound: None,
            edgewise_max: None,
            onion_max: None,
            error: None,
        };
        match outcome {
            Ok(c) => {
                t.m = Some(c.m);
                t.r = Some(c.r);
                t.d = Some(c.d);
                t.count = Some(c.count);
                t.theta = Some(c.theta.into());
                t.rm_bound = Some(c.rm_bound.into());
                t.dm_bound = Some(c.dm_bound.into());
                t.edgewise_max = Some(c.edgewise_max.into());
                t.onion_max = Some(c.onion_max.into());
            }
            Err(e) => t.error = Some(e),
        }
        t
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BatchReport {
    pub schema_version: u32,
    pub seed: u64,
    pub trials: usize,
    pub n_min: usize,
    pub n_max: usize,
    pub failures: usize,
    pub results: Vec<TrialReport>,
}

impl BatchReport {
    pub fn to_json(&self) -> String {
        let mut out = serde_json::to_string_pretty(self).expect("report serializes");
        out.push('\n');
        out
    }
}

/// Instance specs for every trial, drawn up front from `seed` so that the
/// batch does not depend on scheduling.
pub fn trial_specs(b: &BatchSpec) -> Vec<InstanceSpec> {
    let mut rng = ChaCha8Rng::seed_from_u64(b.seed);
    (0..b.trials)
        .map(|_| {
            let n = rng.gen_range(b.n_min..=b.n_max);
            InstanceSpec::new(Shape::Random, n, rng.gen())
        })
        .collect()
}

fn certify_one(spec: &InstanceSpec) -> Result<Certificate, String> {
    let s = spec.generate()?;
    certify_bounds(&s).map_err(|e| match e {
        OracleError::CertificationFailure { reason, .. } => reason,
        other => other.to_string(),
    })
}

/// Runs the trials on `jobs` threads; results are ordered by trial index.
pub fn certify_batch(b: &BatchSpec) -> BatchReport {
    let specs = trial_specs(b);
    let jobs = b.jobs.clamp(1, specs.len().max(1));
    let mut results: Vec<Option<TrialReport>> = vec![None; specs.len()];
    std::thread::scope(|scope| {
        let workers: Vec<_> = (0..jobs)
            .map(|w| {
                let specs = &specs;
                scope.spawn(move || {
                    (w..specs.len())
                        .step_by(jobs)
                        .map(|i| TrialReport::new(i, &specs[i], certify_one(&specs[i])))
                        .collect::<Vec<_>>()
                })
            })
            .collect();
        for w in workers {
            for t in w.join().expect("certification worker panicked") {
                let i = t.index;
                results[i] = Some(t);
            }
        }
    });
    let results: Vec<TrialReport> = results.into_iter().flatten().collect();
    BatchReport {
        schema_version: SCHEMA_VERSION,
        seed: b.seed,
        trials: b.trials,
        n_min: b.n_min,
        n_max: b.n_max,
        failures: results.iter().filter(|t| t.error.is_some()).count(),
        results,
    }
}
