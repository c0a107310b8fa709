//! Experiment front-end shared by the command-line tool and the tests.

mod commands;
mod config;
mod selftest;
mod sweeps;

use thiserror::Error;

use crate::diary::DiaryError;
use crate::hexgroup::GroupError;
use crate::oracles::OracleError;

pub use commands::{run, Command};
pub use config::{ExperimentConfig, Format, ModeName, KEYS};
pub use selftest::{selftest, CheckResult};
pub use sweeps::{
    classification_census, coarse_sweep, distort, isometry_sweep, reduce_agreement, sample_pairs, write_records,
    Census, CoarseReport, DistortSummary, IsometryReport,
};

#[derive(Debug, Error)]
pub enum HarnessError {
    #[error("config: {0}")]
    Config(String),
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Diary(#[from] DiaryError),
    #[error(transparent)]
    Oracle(#[from] OracleError),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Csv(#[from] csv::Error),
}

impl HarnessError {
    /// 2 for anything the caller got wrong, 1 otherwise.
    pub fn exit_code(&self) -> i32 {
        match self {
            HarnessError::Config(_) | HarnessError::Group(_) | HarnessError::Diary(_) => 2,
            _ => 1,
        }
    }
}
