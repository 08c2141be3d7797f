use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("argument is not unimodular: |{value}| = {modulus}")]
    NonUnitArgument { value: String, modulus: f64 },

    #[error("point {value} lies outside the admissible disk (|z| = {modulus}, limit {limit})")]
    OutsideDisk { value: String, modulus: f64, limit: f64 },

    #[error("symbol is not analytic: coefficient at index {index} has modulus {modulus:e}")]
    NotAnalytic { index: i64, modulus: f64 },

    #[error("insufficient resolution at {size} samples: discarded coefficient {dropped:e}")]
    InsufficientResolution { size: usize, dropped: f64 },

    #[error("degenerate denominator |1 - a^2 conj(lambda)| = {0:e}")]
    DegenerateDenominator(f64),

    #[error("sample grids differ in length ({left} vs {right})")]
    GridMismatch { left: usize, right: usize },

    #[error("Wold expansion decays too slowly: tail energy fraction {0:e}")]
    SlowDecay(f64),

    #[error("section of size {size} is too small, need at least {required}")]
    SectionTooSmall { size: usize, required: usize },

    #[error("dimension or basis mismatch: {0}")]
    DimensionMismatch(String),

    #[error("sequence has {len} entries, {required} required")]
    SequenceTooShort { len: usize, required: usize },

    #[error("map leaves the unit disk: |v| = {0}")]
    RangeViolation(f64),

    #[error("point is too close to the curve (distance {distance:e}, need > {required:e})")]
    TooCloseToCurve { distance: f64, required: f64 },

    #[error("argument accumulation {0} is not near an integer")]
    NonIntegerAccumulation(f64),

    #[error("polynomial has a root on the unit circle (min |p| = {0:e})")]
    RootOnCircle(f64),

    #[error("input lacks the required rational structure: {0}")]
    UnstructuredInput(String),

    #[error("unknown suite `{0}`")]
    UnknownSuite(String),

    #[error("invalid configuration: {0}")]
    ConfigInvalid(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub(crate) fn fmt_c(z: num_complex::Complex64) -> String {
    format!("{}{:+}i", z.re, z.im)
}
