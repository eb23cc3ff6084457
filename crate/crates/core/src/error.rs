use thiserror::Error;

use crate::exactnum::RingId;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("ring mismatch: {0} vs {1}")]
    RingMismatch(RingId, RingId),
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("determinant {0} of the linear part is not a unit")]
    NonUnitDeterminant(String),
    #[error("unsupported automorphism: linear part has no finite order up to {bound}")]
    UnsupportedAutomorphism { bound: u32 },
    #[error("torsion level {level} exceeds the cap of {cap}")]
    TorsionLevelTooLarge { level: String, cap: u32 },
    #[error("translation {point} is not {n}-torsion")]
    NotNTorsion { point: String, n: u32 },
    #[error("matrix has no finite order up to {bound}")]
    NonFiniteOrder { bound: u32 },
    #[error("degenerate: det(I - M) = 0, the Lefschetz number of the torus map vanishes")]
    Degenerate,
    #[error("non-integral Lefschetz quotient {numerator}/{denominator}")]
    NonIntegral { numerator: String, denominator: String },
    #[error("non-integral series coefficient {0}")]
    NonIntegralSeries(String),
    #[error("dimension {0} must be even and positive")]
    OddDimension(u32),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("bound exceeded: {0}")]
    BoundExceeded(String),
}

pub type Result<T> = std::result::Result<T, Error>;
