use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use polyangle::certify::{certify_batch, BatchSpec};
use polyangle::generate::{BBox, InstanceSpec, Shape};
use polyangle::report::{run, Algo, RunOptions};
use polyangle::svg::{render_svg, Overlays};
use polyangle::{exit, ingest, CliError};

/// Simple polygonizations with bounded interior angles.
#[derive(Parser)]
#[command(name = "polyangle", version)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Write a generated instance as CSV.
    Gen {
        #[command(flatten)]
        spec: GenArgs,
        #[arg(long)]
        out: PathBuf,
    },
    /// Run the constructions (and the oracle) on one instance.
    Run {
        /// CSV or JSON point file; without it the generator options apply.
        #[arg(long = "in")]
        input: Option<PathBuf>,
        #[command(flatten)]
        spec: GenArgs,
        #[arg(long, value_enum, default_value = "all")]
        algo: Algo,
        /// Also run the onion construction with one global hit per round.
        #[arg(long)]
        onion_global_hit: bool,
        /// Write a figure of the onion polygon (edgewise when onion is not run).
        #[arg(long)]
        svg: Option<PathBuf>,
        /// Write the report here instead of stdout.
        #[arg(long)]
        json: Option<PathBuf>,
        /// Add wall-clock times to the report.
        #[arg(long)]
        timing: bool,
    },
    /// Check the bounds against the oracle on random small instances.
    Certify {
        #[arg(long, default_value_t = 5)]
        n_min: usize,
        #[arg(long, default_value_t = 9)]
        n_max: usize,
        #[arg(long, default_value_t = 200)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        #[arg(long)]
        json: Option<PathBuf>,
    },
}

#[derive(Args)]
struct GenArgs {
    #[arg(long, value_enum, default_value = "random")]
    shape: Shape,
    #[arg(long, default_value_t = 100)]
    n: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Corners of the regular polygon for `regular-random`.
    #[arg(long)]
    k: Option<usize>,
    /// Bounding box as `x0,y0,x1,y1`.
    #[arg(long, value_parser = parse_bbox)]
    bbox: Option<BBox>,
}

impl GenArgs {
    fn spec(&self) -> InstanceSpec {
        InstanceSpec {
            shape: self.shape,
            n: self.n,
            seed: self.seed,
            bbox: self.bbox.unwrap_or_default(),
            k: self.k,
        }
    }
}

fn parse_bbox(s: &str) -> Result<BBox, String> {
    let v: Vec<f64> = s
        .split(',')
        .map(|f| f.trim().parse::<f64>().map_err(|e| format!("{f:?}: {e}")))
        .collect::<Result<_, _>>()?;
    match v[..] {
        [x0, y0, x1, y1] => Ok(BBox { x0, y0, x1, y1 }),
        _ => Err(format!("expected 4 numbers, got {}", v.len())),
    }
}

fn write(path: &Path, text: &str) -> Result<(), CliError> {
    std::fs::write(path, text).map_err(|source| CliError::Write {
        path: path.display().to_string(),
        source,
    })
}

fn emit(path: Option<&Path>, text: &str) -> Result<(), CliError> {
    match path {
        Some(p) => write(p, text),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn execute(cmd: Cmd) -> Result<u8, CliError> {
    match cmd {
        Cmd::Gen { spec, out } => {
            let s = spec.spec().generate().map_err(CliError::Usage)?;
            write(&out, &ingest::to_csv(&s))?;
            Ok(exit::OK)
        }
        Cmd::Run { input, spec, algo, onion_global_hit, svg, json, timing } => {
            let s = match input {
                Some(path) => ingest::load(&path)?,
                None => spec.spec().generate().map_err(CliError::Usage)?,
            };
            let out = run(&s, RunOptions { algo, onion_global_hit, timing })?;
            if let Some(path) = svg {
                let Some(p) = out.onion.as_ref().or(out.edgewise.as_ref()) else {
                    return Err(CliError::Usage("--svg needs --algo edgewise, onion or all".into()));
                };
                let overlays = Overlays {
                    hull: Some(&p.hull),
                    major_segments: true,
                    layers: p.peeling.as_ref(),
                };
                write(&path, &render_svg(&s, &p.polygon, overlays))?;
            }
            emit(json.as_deref(), &out.report.to_json())?;
            Ok(if out.report.ok { exit::OK } else { exit::BOUND_FAILURE })
        }
        Cmd::Certify { n_min, n_max, trials, seed, jobs, json } => {
            if !(3 <= n_min && n_min <= n_max && n_max <= polyangle_core::oracle::MAX_ORACLE_POINTS) {
                return Err(CliError::Usage(format!(
                    "need 3 <= n-min <= n-max <= {}",
                    polyangle_core::oracle::MAX_ORACLE_POINTS
                )));
            }
            let rep = certify_batch(&BatchSpec { n_min, n_max, trials, seed, jobs });
            emit(json.as_deref(), &rep.to_json())?;
            for t in rep.results.iter().filter(|t| t.error.is_some()) {
                eprintln!("trial {} (n = {}, seed {}): {}", t.index, t.n, t.seed, t.error.as_deref().unwrap_or(""));
            }
            Ok(if rep.failures == 0 { exit::OK } else { exit::BOUND_FAILURE })
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match execute(cli.cmd) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
