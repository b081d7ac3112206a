//! Support library for the `witnesslab` binary: file formats, report
//! types, and the error chassis that fixes the exit-code contract. Kept as
//! a library target so integration tests can generate input files and
//! parse reports with the exact serializers the binary uses.

pub mod io;
pub mod report;

/// Error chassis carrying the exit-code class.
#[derive(Debug)]
pub enum CliError {
    /// Unreadable, unparsable, or structurally invalid input file (exit 2).
    Format(String),
    /// Well-formed input violating a documented precondition (exit 3).
    Precondition(String),
    /// Numeric or environmental failure during processing (exit 4).
    Internal(String),
}

impl CliError {
    /// Process exit code for this class of failure.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Format(_) => 2,
            CliError::Precondition(_) => 3,
            CliError::Internal(_) => 4,
        }
    }

    /// The human-readable message.
    pub fn message(&self) -> &str {
        match self {
            CliError::Format(m) | CliError::Precondition(m) | CliError::Internal(m) => m,
        }
    }
}

impl From<witnesslab::Error> for CliError {
    fn from(e: witnesslab::Error) -> Self {
        use witnesslab::Error;
        match e {
            // Violations of documented input contracts.
            Error::NotPsd { .. }
            | Error::NotHermitian { .. }
            | Error::InvalidLambda(_)
            | Error::TOutOfRange(_)
            | Error::NonPositiveT(_)
            | Error::BadDimension(_)
            | Error::InvalidConfig(_)
            | Error::DimensionMismatch { .. }
            | Error::NonSquare { .. } => CliError::Precondition(e.to_string()),
            // Anything else points at the numerics, not the input.
            _ => CliError::Internal(e.to_string()),
        }
    }
}
