//! Verification suites, JSON ingestion and corpus generation for the
//! `relmonad-lab` binary.

pub mod checks;
pub mod corpus;
pub mod fixtures;
pub mod input;
pub mod report;
pub mod suites;

use thiserror::Error;

pub use corpus::{generate_corpus, CorpusSpec, InstanceKind};
pub use input::{digest, Document, Input};
pub use report::{RunReport, Status, Summary, Verdict};
pub use suites::{run, Format, Options, Suite};

#[derive(Debug, Error)]
pub enum LabError {
    #[error(transparent)]
    Core(#[from] relmonad::Error),

    #[error("invalid JSON: {0}")]
    Json(#[from] serde_json::Error),

    #[error("cannot read input: {0}")]
    Io(#[from] std::io::Error),

    #[error("{0}")]
    Usage(String),

    #[error("corpus exhausted: found {found} of {wanted} instances in {attempts} attempts")]
    Exhausted { wanted: usize, found: usize, attempts: usize },
}

impl LabError {
    /// 1 for a law failure surfaced as an error, 2 for everything else.
    pub fn exit_code(&self) -> i32 {
        match self {
            LabError::Core(e) if !e.is_input_error() => 1,
            _ => 2,
        }
    }
}
