//! Library half of the `casimir` command-line tool.
//!
//! The binary is a thin wrapper: it parses arguments into a [`RunSpec`] and
//! hands it to [`run_eval`], [`run_sweep`], [`run_fig1`] or [`run_check`],
//! all of which write to any [`std::io::Write`].

pub mod args;
pub mod check;
pub mod model_spec;
pub mod run;
pub mod spec;

use casimir::{CasimirError, ConvergenceFailure};
use thiserror::Error;

pub use check::{run_check, CheckOutcome, CheckReport};
pub use run::{run_eval, run_fig1, run_sweep, Fig1Row, SweepRow};
pub use spec::{Axis, Command, Format, Geometry, Range, RunSpec};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("convergence failure: {}", .0.reason)]
    Convergence(Box<ConvergenceFailure>),
    #[error("{failed} of {total} grid points failed")]
    PointsFailed { failed: usize, total: usize },
    #[error("{failed} consistency check(s) failed")]
    ChecksFailed { failed: usize },
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Csv(#[from] csv::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            Self::Usage(_) => 2,
            Self::Convergence(_) => 3,
            Self::PointsFailed { .. } => 4,
            Self::ChecksFailed { .. } => 5,
            Self::Io(_) | Self::Csv(_) | Self::Json(_) => 1,
        }
    }
}

impl From<CasimirError> for CliError {
    fn from(e: CasimirError) -> Self {
        match e {
            CasimirError::Domain(msg) => Self::Usage(msg),
            CasimirError::Convergence(f) => Self::Convergence(f),
        }
    }
}

pub type Result<T, E = CliError> = std::result::Result<T, E>;
