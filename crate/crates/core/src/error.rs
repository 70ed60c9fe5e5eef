use thiserror::Error;

/// Errors produced by labeling, coding and verification routines.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("symbol {symbol} is outside the alphabet of size {size}")]
    AlphabetMismatch { symbol: u8, size: usize },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("invalid labeling: {0}")]
    InvalidLabeling(String),

    #[error("labeling has more than one preimage")]
    AmbiguousLabeling,

    #[error("no codeword is consistent with the input")]
    NoCodeword,

    #[error("more than one codeword is consistent with the input")]
    MultipleCandidates,

    #[error("syndrome does not match any single substitution")]
    UncorrectableSyndrome,

    #[error("input is not within one error of any codeword labeling")]
    NotDecodable,

    #[error("input is within one error of several codeword labelings")]
    AmbiguousDecoding,

    #[error("value {value} does not fit in {width} base-{base} digits")]
    Overflow { value: u64, base: u32, width: usize },

    #[error("enumeration needs {needed} items, cap is {cap}")]
    BudgetExceeded { needed: u128, cap: u128 },

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
