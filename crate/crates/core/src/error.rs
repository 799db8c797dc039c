use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),
    #[error("pole: {0}")]
    Pole(String),
    #[error("series with zero constant term is not invertible")]
    NotInvertible,
    #[error("precision must be at least 53 bits, got {0}")]
    Precision(usize),
    #[error("truncation order {0} exceeds the cap of {cap}", cap = crate::laurent::MAX_ORDER)]
    OrderTooLarge(usize),
    #[error("parameter outside the convergence region: {0}")]
    OutsideRegion(String),
    #[error("schedule must be non-empty and strictly increasing")]
    BadSchedule,
    #[error("need at least {needed} sample points, got {got}")]
    InsufficientData { needed: usize, got: usize },
    #[error("cannot parse complex literal {0:?}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
