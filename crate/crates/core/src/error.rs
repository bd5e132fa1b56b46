use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum GeometryError {
    #[error("target lies behind the IRS panel (boresight component {0:.3e} m)")]
    TargetBehindPanel(f64),
    #[error("angle out of range: az {az:.6} rad, el {el:.6} rad")]
    OutOfRange { az: f64, el: f64 },
    #[error("range must be positive, got {0}")]
    NonPositiveRange(f64),
    #[error("leg length would be negative ({0:.6} m)")]
    NegativeLeg(f64),
    #[error("invalid frame: {0}")]
    InvalidFrame(&'static str),
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum CrbError {
    #[error("Fisher information is singular (condition number {condition:.3e})")]
    SingularFim { condition: f64 },
    #[error("dimension mismatch: {0}")]
    Dimension(String),
}

#[derive(Debug, Error)]
pub enum Error {
    #[error(transparent)]
    Geometry(#[from] GeometryError),
    #[error(transparent)]
    Crb(#[from] CrbError),
    #[error("invalid scenario: {0}")]
    Scenario(String),
    #[error("invalid sweep: {0}")]
    Sweep(String),
    #[error("estimator: {0}")]
    Estimator(String),
    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
}
