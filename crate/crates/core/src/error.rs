use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    #[error("gamma pole at {0}")]
    Pole(String),

    #[error("series did not converge: {0}")]
    NonConvergence(String),

    #[error("ODE integration failed: {0}")]
    Integration(String),

    #[error("operator is singular at t = {0}")]
    SingularPoint(f64),

    #[error("tail mass too large: {0}")]
    TailMass(String),

    #[error("interpolation error: {0}")]
    Interpolation(String),

    #[error("unsupported tail law: {0}")]
    UnsupportedTail(String),

    #[error("inadmissible decay profile: {0}")]
    Admissibility(String),

    #[error("radius budget exceeded: {0}")]
    Budget(String),

    #[error("moment integral diverges: {0}")]
    DivergentMoment(String),

    #[error("case violation: {0}")]
    CaseViolation(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),

    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    /// Process exit code used by the command-line front end.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::InvalidParams(_) | Error::Parse(_) | Error::Io(_) | Error::Json(_) | Error::Csv(_) => 2,
            Error::Admissibility(_) | Error::Budget(_) | Error::CaseViolation(_) | Error::UnsupportedTail(_) => 4,
            _ => 3,
        }
    }
}
