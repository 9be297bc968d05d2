use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("gamma function pole at {0}")]
    Pole(f64),
    #[error("argument out of domain: {0}")]
    Domain(String),
    #[error("kernel series diverges: |x| = |y| = 1")]
    Divergent,
    #[error("non-finite value encountered during integration")]
    NonFinite,
    #[error("invalid regime: {0}")]
    InvalidRegime(String),
    #[error("malformed expansion: {0}")]
    Expansion(String),
}

pub type Result<T> = std::result::Result<T, Error>;
