//! Command-line front end: point files, generators, reports and figures.

pub mod certify;
pub mod generate;
pub mod ingest;
pub mod report;
pub mod svg;

use polyangle_core::oracle::OracleError;
use polyangle_core::{GeometryError, PolygonizeError};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Input(#[from] ingest::InputError),
    #[error("{0}")]
    Usage(String),
    #[error("cannot write {path}: {source}")]
    Write {
        path: String,
        source: std::io::Error,
    },
    #[error(transparent)]
    Geometry(#[from] GeometryError),
    #[error(transparent)]
    Polygonize(#[from] PolygonizeError),
    #[error(transparent)]
    Oracle(#[from] OracleError),
}

pub mod exit {
    pub const OK: u8 = 0;
    pub const BOUND_FAILURE: u8 = 1;
    pub const INPUT: u8 = 2;
    pub const INTERNAL: u8 = 3;
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Input(_) | CliError::Usage(_) | CliError::Write { .. } => exit::INPUT,
            CliError::Geometry(_) | CliError::Polygonize(PolygonizeError::Geometry(_)) => exit::INPUT,
            CliError::Oracle(OracleError::TooLarge(_) | OracleError::Geometry(_)) => exit::INPUT,
            CliError::Oracle(OracleError::CertificationFailure { .. }) => exit::BOUND_FAILURE,
            CliError::Polygonize(_) | CliError::Oracle(_) => exit::INTERNAL,
        }
    }
}
