//! Crate-wide error type.

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("signature mismatch: (r={0}, s={1}) vs (r={2}, s={3})")]
    SignatureMismatch(usize, usize, usize, usize),

    #[error("invalid signature r={r}, s={s}: degree r+2s must be at least 2")]
    InvalidSignature { r: usize, s: usize },

    #[error("zero coordinate at index {0}")]
    ZeroCoordinate(usize),

    #[error("non-finite value in {0}")]
    NonFinite(&'static str),

    #[error("automorphism index {index} out of range 1..={n}")]
    AutomorphismIndex { index: usize, n: usize },

    #[error("field data invalid: {0}")]
    FieldInvariant(String),

    #[error("unit generator {index} has embedding-norm product {norm}, expected 1")]
    GeneratorNorm { index: usize, norm: f64 },

    #[error("unit group has rank 0: no log-unit lattice")]
    UnitRankZero,

    #[error("unit generators are log-linearly dependent")]
    DependentGenerators,

    #[error("rank {rank} exceeds the exact-enumeration limit {max}")]
    RankTooLarge { rank: usize, max: usize },

    #[error("enumeration would visit {0} points; reduce the radius or resolution")]
    EnumerationTooLarge(u128),

    #[error("target not in the trace-zero hyperplane (coordinate sum {0})")]
    TargetNotInHyperplane(f64),

    #[error("lattice is not well-rounded (successive minima ratio {ratio})")]
    NotWellRounded { ratio: f64 },

    #[error("unit is not Pisot: {0}")]
    NotPisot(String),

    #[error("delta {delta} outside the admissible window ({lo}, {hi})")]
    DeltaWindow { delta: f64, lo: f64, hi: f64 },

    #[error("trace-form Gram matrix is not positive definite")]
    GramNotPositiveDefinite,

    #[error("enumeration bound cap exceeded at {0}")]
    EnumerationCap(f64),

    #[error("Pisot search failed after {retries} retries: {diagnostics}")]
    PisotSearch { retries: u32, diagnostics: String },

    #[error("integer exponent recovery failed (residual {0})")]
    ExponentRecovery(f64),

    #[error("{0} is not squarefree")]
    NotSquarefree(u64),

    #[error("d = {0} outside the supported range 2..=1000000")]
    PellRange(u64),

    #[error("value out of f64 range: {0}")]
    Overflow(String),

    #[error("mixed signature r={r}, s={s}: gamma is defined only for totally real or totally complex fields")]
    MixedSignature { r: usize, s: usize },

    #[error("invalid parameter: {0}")]
    Parameter(String),

    #[error("io: {0}")]
    Io(#[from] std::io::Error),

    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
}
