use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),

    #[error("index entries must be positive, got {0}")]
    NonPositiveEntry(i64),

    #[error("position {pos} is out of range for depth {depth}")]
    OutOfRange { pos: usize, depth: usize },

    #[error("length mismatch: {left} vs {right}")]
    LengthMismatch { left: usize, right: usize },

    #[error("word `{0}` is not in H^1 (must be empty or start with y)")]
    NotInH1(String),

    #[error("series order mismatch: {0} vs {1}")]
    OrderMismatch(usize, usize),

    #[error("index ({0}) is not admissible")]
    NotAdmissible(String),

    #[error("singular configuration: {0}")]
    Singular(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("invalid tree: {0}")]
    InvalidTree(String),

    #[error("tree is not essentially positive: path {0} -> {1} has weight 0")]
    NotEssentiallyPositive(String, String),

    #[error("tree is not harvestable: {0}")]
    NotHarvestable(String),

    #[error("{0} is not prime")]
    NotPrime(u64),

    #[error("{value} has a denominator that is not a unit modulo {p}^{n}")]
    NonUnit { value: String, p: u64, n: u32 },

    #[error("requested precision {eps:e} not reached (bound {bound:e} at M = {m})")]
    PrecisionNotReached { eps: f64, bound: f64, m: u64 },

    #[error("unknown {kind} `{name}`")]
    Unknown { kind: &'static str, name: String },
}

impl Error {
    pub fn is_parse(&self) -> bool {
        matches!(self, Error::Parse(_) | Error::Unknown { .. })
    }
}
