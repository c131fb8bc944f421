use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid physical parameters: {0}")]
    InvalidParams(String),

    #[error("invalid angle: {0}")]
    InvalidAngle(String),

    #[error("invalid state: {0}")]
    InvalidState(String),

    #[error("invalid schedule: {0}")]
    InvalidSchedule(String),

    #[error("invalid integration step: {0}")]
    InvalidStep(String),

    /// Frequency modulation needs a non-degenerate carrier band.
    #[error("frequency band is empty (min(wb-, wb+) = 0); FAPM synthesis is infeasible")]
    EmptyBand,

    #[error("invalid sweep: {0}")]
    InvalidSweep(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error("schedule file: {0}")]
    Json(#[from] serde_json::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
