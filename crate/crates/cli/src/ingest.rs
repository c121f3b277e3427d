//! Point files: CSV (`x,y` per line, `#` comments) and JSON (`[[x, y], ...]`).

use std::fmt;
use std::path::Path;

use polyangle_core::{GeometryError, Point, PointSet};
use thiserror::Error;

/// Where a point came from in its file.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Location {
    Line(usize),
    Entry(usize),
}

impl fmt::Display for Location {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Location::Line(l) => write!(f, "line {l}"),
            Location::Entry(e) => write!(f, "entry {e}"),
        }
    }
}

#[derive(Debug, Error)]
pub enum InputError {
    #[error("cannot read {path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    #[error("{at}: {message}")]
    Parse { at: Location, message: String },
    #[error("{at}: duplicate of the point at {first}")]
    DuplicatePoint { at: Location, first: Location },
    #[error("{at}: non-finite coordinate")]
    NonFinite { at: Location },
    #[error("need at least 3 points, got {0}")]
    TooFewPoints(usize),
    #[error("all points are collinear")]
    DegenerateInput,
}

fn validate(points: Vec<Point>, at: &[Location]) -> Result<PointSet, InputError> {
    let s = PointSet::new(points).map_err(|e| match e {
        GeometryError::DuplicatePoint { first, second } => InputError::DuplicatePoint {
            at: at[second],
            first: at[first],
        },
        GeometryError::NonFinite { index } => InputError::NonFinite { at: at[index] },
        GeometryError::TooFewPoints(n) => InputError::TooFewPoints(n),
        _ => InputError::DegenerateInput,
    })?;
    if s.all_collinear() {
        return Err(InputError::DegenerateInput);
    }
    Ok(s)
}

pub fn parse_csv(text: &str) -> Result<PointSet, InputError> {
    let mut points = Vec::new();
    let mut at = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let here = Location::Line(i + 1);
        let fields: Vec<&str> = line.split(',').map(str::trim).collect();
        if fields.len() != 2 {
            return Err(InputError::Parse {
                at: here,
                message: format!("expected 2 fields, found {}", fields.len()),
            });
        }
        let num = |f: &str| {
            f.parse::<f64>().map_err(|_| InputError::Parse {
                at: here,
                message: format!("not a number: {f:?}"),
            })
        };
        points.push(Point::new(num(fields[0])?, num(fields[1])?));
        at.push(here);
    }
    validate(points, &at)
}

pub fn parse_json(text: &str) -> Result<PointSet, InputError> {
    let raw: Vec<[f64; 2]> = serde_json::from_str(text).map_err(|e| InputError::Parse {
        at: Location::Line(e.line()),
        message: e.to_string(),
    })?;
    let at: Vec<Location> = (1..=raw.len()).map(Location::Entry).collect();
    validate(raw.into_iter().map(|[x, y]| Point::new(x, y)).collect(), &at)
}

/// Reads `path` as JSON when it ends in `.json`, as CSV otherwise.
pub fn load(path: &Path) -> Result<PointSet, InputError> {
    let text = std::fs::read_to_string(path).map_err(|source| InputError::Io {
        path: path.display().to_string(),
        source,
    })?;
    if path.extension().is_some_and(|e| e.eq_ignore_ascii_case("json")) {
        parse_json(&text)
    } else {
        parse_csv(&text)
    }
}

/// One `x,y` line per point, with the shortest representation that reads
/// back to the same value.
pub fn to_csv(s: &PointSet) -> String {
    s.points().iter().map(|p| format!("{},{}\n", p.x, p.y)).collect()
}
