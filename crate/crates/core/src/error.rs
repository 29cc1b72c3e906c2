use std::path::PathBuf;

/// Errors produced anywhere in the ladder toolkit.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("invalid ladder: {0}")]
    InvalidLadder(String),

    #[error("site ({rung}, {leg}) out of range for {n_rungs} rungs")]
    SiteOutOfRange {
        rung: usize,
        leg: usize,
        n_rungs: usize,
    },

    #[error("invalid sector: {0}")]
    InvalidSector(String),

    #[error("dimension mismatch: expected {expected}, got {actual}")]
    DimensionMismatch { expected: usize, actual: usize },

    #[error("matrix not symmetric at ({row}, {col})")]
    NotSymmetric { row: usize, col: usize },

    #[error("invalid matrix: {0}")]
    InvalidMatrix(String),

    #[error(
        "eigensolver did not converge after {iterations} matrix-vector products \
         (best residual {best_residual:e})"
    )]
    NotConverged {
        iterations: usize,
        best_residual: f64,
    },

    #[error("dense eigensolver limited to dimension {limit}, got {dim}")]
    DimensionGuard { dim: usize, limit: usize },

    #[error("invalid state: {0}")]
    InvalidState(String),

    #[error("invalid subset: {0}")]
    InvalidSubset(String),

    #[error("invalid density matrix: {0}")]
    InvalidDensityMatrix(String),

    #[error("invalid scan configuration: {0}")]
    InvalidScan(String),

    #[error("config error at {location}: {message}")]
    Config { location: String, message: String },

    #[error("csv error at line {line}: {message}")]
    Csv { line: usize, message: String },

    #[error("incomplete grid, missing (delta index, alpha index) cells: {missing:?}")]
    IncompleteGrid { missing: Vec<(usize, usize)> },

    #[error("heatmap: {0}")]
    Heatmap(String),

    #[error("cache entry rejected: {0}")]
    Cache(String),

    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

impl Error {
    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }
}
