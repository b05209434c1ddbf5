use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid word: {0}")]
    InvalidWord(String),
    #[error("invalid substitution: {0}")]
    InvalidSubstitution(String),
    #[error("substitution is not prolongable: image of seed letter {seed} does not start with it")]
    NotProlongable { seed: u16 },
    #[error("substitution does not grow: |ζⁿ({letter})| stays bounded")]
    NotGrowing { letter: u16 },
    #[error("explicit sequence has {available} symbols, {requested} requested")]
    SequenceExhausted { available: usize, requested: usize },
    #[error("not a stochastic vector or matrix: {0}")]
    NotStochastic(String),
    #[error("symbol 0 has zero stationary probability")]
    ZeroMassOnSymbolZero,
    #[error("word contains no symbol 0")]
    NoZeroSymbol,
    #[error("composition matrix is not primitive")]
    NotPrimitive,
    #[error("iteration did not converge after {iterations} steps (residual {residual:e})")]
    NoConvergence { iterations: usize, residual: f64 },
    #[error("return-word decomposition failed: {0}")]
    DecompositionFailure(String),
    #[error("missing cylinder frequency for word {0}")]
    MissingFrequency(String),
    #[error("invalid 𝓑-free set: {0}")]
    InvalidBFreeSet(String),
    #[error("requested precision {requested:e} is below the attainable floor {floor:e}")]
    PrecisionUnreachable { requested: f64, floor: f64 },
    #[error("invalid cylinder: {0}")]
    InvalidCylinder(String),
    #[error("too many free positions in cylinder: {0} (limit 20)")]
    TooManyFreePositions(usize),
    #[error("Euler product diverges: {0}")]
    Divergent(String),
    #[error("exact-frequency routes disagree for {word}: {first} vs {second}")]
    MethodDisagreement { word: String, first: f64, second: f64 },
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("matrix given for A0 is not rank one (relative residual {0:e})")]
    RankOneViolation(f64),
    #[error("invalid matrix family: {0}")]
    InvalidFamily(String),
    #[error("numerical breakdown: {0}")]
    NumericalBreakdown(String),
    #[error("weights must be 0 or 1: {0}")]
    UnsupportedWeight(String),
    #[error("empty β grid")]
    GridEmpty,
    #[error("configuration error: {0}")]
    Config(String),
    #[error("i/o error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
