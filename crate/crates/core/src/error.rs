use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid instance: {0}")]
    InvalidInstance(String),

    #[error("infeasible instance: item {item} of size {size} cannot be cut into {pieces} pieces that fit a bin of capacity {max_capacity}")]
    Infeasible {
        item: usize,
        size: String,
        pieces: String,
        max_capacity: String,
    },

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("structural error: {0}")]
    Structural(String),

    #[error("arithmetic overflow")]
    Overflow,

    #[error("invalid fill factor {0}: must lie in [1/2, 1]")]
    FillFactor(String),

    #[error("instance exceeds exact-search limits: {0}")]
    LimitsExceeded(String),

    #[error("invalid configuration: {0}")]
    Config(String),

    #[error("series aborted on instance {index} (seed {seed}, stream {stream}): {source}")]
    Series {
        index: usize,
        seed: u64,
        stream: u64,
        #[source]
        source: Box<Error>,
    },

    #[error("empty report")]
    EmptyReport,

    #[error("json: {0}")]
    Json(#[from] serde_json::Error),

    #[error("csv: {0}")]
    Csv(#[from] csv::Error),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    /// Short stable category name, used in CLI messages.
    pub fn category(&self) -> &'static str {
        match self {
            Error::InvalidInstance(_) => "invalid-instance",
            Error::Infeasible { .. } => "infeasible",
            Error::Precondition(_) => "precondition",
            Error::Structural(_) => "structural",
            Error::Overflow => "overflow",
            Error::FillFactor(_) => "fill-factor",
            Error::LimitsExceeded(_) => "limits-exceeded",
            Error::Config(_) => "config",
            Error::Series { .. } => "series",
            Error::EmptyReport => "empty-report",
            Error::Json(_) => "json",
            Error::Csv(_) => "csv",
            Error::Io(_) => "io",
        }
    }
}
