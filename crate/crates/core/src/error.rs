use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{what} {value} exceeds the configured bound {bound}")]
    SizeLimit {
        what: &'static str,
        value: usize,
        bound: usize,
    },

    #[error("color count mismatch: {left} vs {right}")]
    ColorMismatch { left: usize, right: usize },

    #[error("color {color} is outside 1..={colors}")]
    ColorOutOfRange { color: usize, colors: usize },

    #[error("elements belong to different Heisenberg doubles (pairing specs differ)")]
    SpecMismatch,

    #[error("inexact division: {dividend} is not divisible by {divisor}")]
    InexactDivision { dividend: String, divisor: String },

    #[error("division by the zero polynomial")]
    DivisionByZero,

    #[error("gram matrix is not symmetric at ({row}, {col})")]
    AsymmetricGram { row: usize, col: usize },

    #[error("malformed input: {0}")]
    Malformed(String),
}
