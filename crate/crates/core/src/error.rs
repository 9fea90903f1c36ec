use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("letters must be positive integers, got {0}")]
    InvalidLetter(i64),

    #[error("empty word has no horizon")]
    EmptyWord,

    #[error("invalid configuration: {0}")]
    InvalidConfiguration(String),

    #[error("invalid move distribution: {0}")]
    InvalidDistribution(String),

    #[error("size limit exceeded: {what} = {value} (maximum {limit})")]
    SizeLimit {
        what: &'static str,
        value: u64,
        limit: u64,
    },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error(
        "no coupling within horizon {horizon}: tracker reached depth {best_depth} of {requested}"
    )]
    NoCoupling {
        horizon: u64,
        best_depth: usize,
        requested: usize,
    },

    #[error("parse error: {0}")]
    Parse(String),
}
