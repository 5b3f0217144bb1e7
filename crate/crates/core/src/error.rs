use thiserror::Error;

/// Errors shared across the crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("length mismatch: {left} vs {right} bits")]
    LengthMismatch { left: u8, right: u8 },

    #[error("word length {len} outside supported range {min}..={max}")]
    WordLengthOutOfRange { len: u8, min: u8, max: u8 },

    #[error("value {value:#x} does not fit in {len} bits")]
    ValueTooWide { value: u32, len: u8 },

    #[error("cannot parse {input:?} as a binary word")]
    ParseWord { input: String },

    #[error("truth table has {got} entries, expected {expected}")]
    TruthTableSize { expected: usize, got: usize },

    #[error("function is not maximally unbalanced (preimage sizes {zeros} and {ones})")]
    NotMubf { zeros: usize, ones: usize },

    #[error("parity map has {got} entries, expected {expected}")]
    IncompleteParityMap { expected: usize, got: usize },

    #[error("parity length {got} does not match code redundancy {expected}")]
    ParityLengthMismatch { expected: u8, got: u8 },

    #[error("no message {message} in a code over {k}-bit messages")]
    UnknownMessage { message: String, k: u8 },

    #[error("enumeration is only supported for t = 1 (requested t = {t})")]
    UnsupportedT { t: u32 },

    #[error("enumeration space does not fit in a 64-bit counter")]
    EnumerationTooLarge,

    #[error("counter range {start}..{end} outside 0..{total}")]
    CounterRangeOutOfBounds { start: u64, end: u64, total: u64 },

    #[error("matrix order mismatch: {left} vs {right}")]
    OrderMismatch { left: usize, right: usize },

    #[error("matrix is not symmetric with a zero diagonal")]
    MalformedMatrix,

    #[error("codebook is empty")]
    EmptyCodebook,

    #[error("invalid simulation config: {0}")]
    InvalidConfig(String),
}
