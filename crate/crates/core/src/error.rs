use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("ambient dimension required")]
    AmbientDimensionRequired,
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("face lattice requires pointed cone")]
    NotPointed,
    #[error("cone must be pointed and solid")]
    NotPointedSolid,
    #[error("point is not in the cone")]
    NotInCone,
    #[error("zero vector has no ray limit")]
    ZeroVector,
    #[error("subspace basis is rank-deficient")]
    RankDeficient,
    #[error("cone too large for enumeration: {0}")]
    TooLarge(String),
    #[error("not an order point: {0}")]
    NotOrderPoint(String),
    #[error("level {level} out of range 0..={max}")]
    LevelOutOfRange { level: usize, max: usize },
    #[error("empty input")]
    EmptyInput,
    #[error("projection did not converge after {iterations} iterations; last iterate {iterate:?}")]
    NoConvergence { iterations: usize, iterate: Vec<f64> },
    #[error("origin is not an interior point of the body")]
    ZeroNotInterior,
    #[error("subdifferential not a singleton; normal cone generators {generators:?}")]
    NotDifferentiable { generators: Vec<Vec<f64>> },
    #[error("base point not admissible: {0}")]
    BasePointNotAdmissible(String),
    #[error("faces lie in different stratum levels ({0} and {1})")]
    DifferentLevels(usize, usize),
    #[error("invalid radii r={r}, R={big_r}")]
    InvalidRadii { r: f64, big_r: f64 },
    #[error("kernel not window-compatible: {0}")]
    KernelNotWindowCompatible(String),
    #[error("invalid grid: {0}")]
    InvalidGrid(String),
    #[error("grid/cone mismatch: {0}")]
    GridConeMismatch(String),
    #[error("winding undefined: curve passes within {0:e} of 0")]
    WindingUndefined(f64),
    #[error("index not resolved at this truncation: {0}")]
    IndexNotResolved(String),
    #[error("unsupported face orientation: {0}")]
    UnsupportedFace(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
}

impl Error {
    /// Short stable category string reported by the command line front-end.
    pub fn category(&self) -> &'static str {
        use Error::*;
        match self {
            AmbientDimensionRequired | DimensionMismatch { .. } | RankDeficient => "cone",
            NotPointed | NotPointedSolid | TooLarge(_) => "lattice",
            NotInCone | ZeroVector => "membership",
            NotOrderPoint(_) | LevelOutOfRange { .. } | EmptyInput => "strata",
            NoConvergence { .. } => "projection",
            ZeroNotInterior | NotDifferentiable { .. } => "gauge",
            BasePointNotAdmissible(_) | DifferentLevels(..) | InvalidRadii { .. } => "trivialization",
            KernelNotWindowCompatible(_) | InvalidGrid(_) | GridConeMismatch(_) | WindingUndefined(_) => "symbol",
            IndexNotResolved(_) => "index",
            UnsupportedFace(_) => "face-symbol",
            Parse(_) | InvalidInput(_) => "spec",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
