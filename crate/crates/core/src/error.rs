use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// Malformed tensor or polynomial input.
    #[error("construction error: {0}")]
    Construction(String),

    #[error("matrix is not orthogonal within tolerance (deviation {deviation:.3e})")]
    NotOrthogonal { deviation: f64 },

    #[error("invalid parameter: {0}")]
    Parameter(String),

    #[error("outside domain: {0}")]
    Domain(String),

    /// The input sits on (or numerically at) a degeneracy locus where the
    /// requested quantity is not well defined.
    #[error("degenerate configuration: {0}")]
    Degenerate(String),

    #[error("numerical failure: {0}")]
    Numerical(String),
}
