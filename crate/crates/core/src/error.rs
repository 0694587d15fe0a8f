use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("{what} is {actual}, above the configured bound {limit}")]
    BoundExceeded {
        what: &'static str,
        limit: usize,
        actual: usize,
    },

    #[error("parse error: {0}")]
    Parse(String),

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("vector is not in the fundamental cone of block {block}")]
    NotInCone { block: usize },

    #[error("matrix is not quasi-cyclic with shifting constraint {n0}")]
    NotQuasiCyclic { n0: usize },

    #[error("row {first} of H1 is not orthogonal to row {second} of H2")]
    NotOrthogonal { first: usize, second: usize },

    #[error("word is not in the dual of the code")]
    NotInDual,

    #[error("no dual word of weight at most {max_weight} is left to add")]
    NoCandidate { max_weight: usize },

    #[error("containment certificate failed: {0}")]
    CertificateFailed(String),

    #[error("numerical failure: {0}")]
    Numerical(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    /// Process exit code for the command-line front end.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::BoundExceeded { .. } => 3,
            Error::Numerical(_) | Error::CertificateFailed(_) => 4,
            _ => 2,
        }
    }
}

pub(crate) fn check_dim(expected: usize, found: usize) -> Result<()> {
    if expected != found {
        return Err(Error::DimensionMismatch { expected, found });
    }
    Ok(())
}
