use thiserror::Error;

use crate::report::LawReport;

/// Errors raised by constructors and constructions.
///
/// Law violations on well-formed data are not errors: validators return a
/// [`LawReport`]. An error is returned when data is malformed, too large, or
/// when a construction is asked to run on data that fails its preconditions.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// An index is dangling, a table is not total, or a name does not resolve.
    #[error("malformed {what}: {detail}")]
    Malformed { what: &'static str, detail: String },

    /// A size guard was hit.
    #[error("capacity exceeded: {what} needs {needed}, limit is {limit}")]
    Capacity {
        what: &'static str,
        needed: usize,
        limit: usize,
    },

    /// Two inputs that must share a category do not.
    #[error("mismatch: {0}")]
    Mismatch(String),

    /// A construction was given data that fails its own law check.
    #[error("{what} is not valid: {report}")]
    Invalid {
        what: &'static str,
        report: LawReport,
    },
}

impl Error {
    pub(crate) fn malformed(what: &'static str, detail: impl Into<String>) -> Self {
        Error::Malformed {
            what,
            detail: detail.into(),
        }
    }

    /// True for the input and capacity errors that are not law failures.
    pub fn is_input_error(&self) -> bool {
        !matches!(self, Error::Invalid { .. })
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Size guards applied to inputs and to searches.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Caps {
    pub max_objects: usize,
    pub max_morphisms: usize,
    pub max_het: usize,
    /// Upper bound on assignments tried by a single exhaustive search.
    pub max_search_nodes: usize,
}

impl Default for Caps {
    fn default() -> Self {
        Caps {
            max_objects: 16,
            max_morphisms: 64,
            max_het: 8,
            max_search_nodes: 50_000_000,
        }
    }
}

impl Caps {
    pub fn check(&self, what: &'static str, needed: usize, limit: usize) -> Result<()> {
        if needed > limit {
            Err(Error::Capacity {
                what,
                needed,
                limit,
            })
        } else {
            Ok(())
        }
    }
}
