use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("value {value} does not fit in {width} lines")]
    ValueOutOfRange { value: u64, width: usize },

    #[error("line count {0} outside 1..=16")]
    WidthOutOfRange(usize),

    #[error("width mismatch: {left} vs {right}")]
    WidthMismatch { left: usize, right: usize },

    #[error("not a permutation: value {0} is repeated")]
    NotAPermutation(u32),

    #[error("permutation has {found} entries, expected {expected}")]
    PermLength { expected: usize, found: usize },

    #[error("invalid gate: {0}")]
    InvalidGate(String),

    #[error("bit strings {p} and {q} are not at Hamming distance 1")]
    NotAdjacent { p: u32, q: u32 },

    #[error("gate budget of {0} exceeded during synthesis")]
    GateBudgetExceeded(usize),

    #[error("invalid synthesis options: {0}")]
    InvalidOptions(String),

    #[error("template arity {0} exceeds 10")]
    ArityTooLarge(usize),

    #[error("invalid template: {0}")]
    InvalidTemplate(String),

    #[error("embedding needs {0} lines, at most 16 supported")]
    TooManyLines(usize),

    #[error("invalid truth table: {0}")]
    InvalidTable(String),

    #[error("table has {found} rows, expected {expected}")]
    RowCountMismatch { expected: usize, found: usize },

    #[error("invalid binding: {0}")]
    BindingInvalid(String),

    #[error("parse error at {line}:{column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("unknown line name `{name}` at {line}:{column}")]
    UnknownLine {
        name: String,
        line: usize,
        column: usize,
    },

    #[error("line `{name}` is both target and control at {line}:{column}")]
    SelfControl {
        name: String,
        line: usize,
        column: usize,
    },
}
