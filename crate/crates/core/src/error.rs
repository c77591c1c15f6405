use thiserror::Error;

/// Errors reported by the library and its text format.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("symbol index {symbol} is outside an alphabet of size {size}")]
    UnknownSymbol { symbol: usize, size: usize },
    #[error("unknown symbol `{0}`")]
    UnknownSymbolName(String),
    #[error("invalid alphabet: {0}")]
    InvalidAlphabet(String),
    #[error("alphabet mismatch: {0}")]
    AlphabetMismatch(String),
    #[error("invalid machine: {0}")]
    InvalidMachine(String),
    #[error("domain mismatch: expected a set of size {expected}, found {found}")]
    DomainMismatch { expected: usize, found: usize },
    #[error("longest common prefix of an empty set of words")]
    EmptyLcp,
    #[error("table is nowhere defined")]
    NowhereDefined,
    #[error("square does not commute at element {0}")]
    NonCommutingSquare(usize),
    #[error("morphism is not in E_Kl: element {0} of the codomain is not hit")]
    NotEpi(usize),
    #[error("morphism is not in M_Kl: {0}")]
    NotMono(String),
    #[error("transducer is not trimmed: state `{0}` is unreachable or has empty behavior")]
    NotTrimmed(String),
    #[error("too many states for exhaustive search: {found} > {limit}")]
    TooManyStates { found: usize, limit: usize },
    #[error("{message}, line {line}")]
    Parse { line: usize, message: String },
    #[error("internal defect: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
