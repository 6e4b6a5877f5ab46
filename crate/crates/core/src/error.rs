use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("malformed scalar {text:?}: {reason}")]
    ParseScalar { text: String, reason: String },
    #[error("denominator of {0:?} is zero in the field")]
    ZeroDenominator(String),
    #[error("attempt to invert zero")]
    ZeroInverse,
    #[error("invalid field: {0}")]
    InvalidField(String),

    #[error("matrix is singular")]
    Singular,
    #[error("expected a square matrix, got {rows}x{cols}")]
    NotSquare { rows: usize, cols: usize },
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("basis does not have full column rank ({rank} < {cols})")]
    RankDeficientBasis { rank: usize, cols: usize },

    #[error("maps are defined over different fields")]
    FieldMismatch,
    #[error("maps have different sample key sets")]
    KeySetMismatch,
    #[error("duplicate sample key {0}")]
    DuplicateKey(String),
    #[error("a sample map needs at least one sample")]
    EmptyMap,
    #[error("unknown sample key {0}")]
    UnknownKey(String),
    #[error("dataset schema violation: {0}")]
    Schema(String),
    #[error("io error: {0}")]
    Io(String),

    #[error("base points are linearly dependent")]
    BaseDependent,
    #[error("sample {0} lies outside the span of the base points")]
    NotInSpan(String),

    #[error("unsupported group: {0}")]
    UnsupportedGroup(String),
    #[error("custom groups need maps of full rank (k = n), got k = {k}, n = {n}")]
    CustomGroupNeedsFullRank { k: usize, n: usize },
    #[error("custom group class functions disagree with the membership predicate")]
    ClassFunctionDisagreement,
    #[error("operation requires an exact field")]
    NotExactField,
    #[error("could not draw a generic point after {0} attempts")]
    RetriesExhausted(usize),
    #[error("invalid shape: {0}")]
    InvalidShape(String),
    #[error("group enumeration too large: {0}")]
    TooLarge(String),

    #[error("internal invariant failure: {0}")]
    Internal(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
