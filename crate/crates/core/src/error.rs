use thiserror::Error;

use crate::lattice::RootVector;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("not a generalized Cartan matrix: {0}")]
    NotGcm(String),
    #[error("Cartan matrix is not symmetrizable: {0}")]
    NotSymmetrizable(String),
    #[error("dimension mismatch: expected {expected} coordinates, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("simple root index {index} out of range for rank {rank}")]
    IndexOutOfRange { index: usize, rank: usize },
    #[error("seed {0} is not recorded in the root table")]
    SeedMissing(RootVector),
    #[error("Hilbert basis search needs height {needed}, above the safety bound {bound}")]
    CapExceeded { needed: i64, bound: i64 },
    #[error("integer overflow while computing {0}")]
    Overflow(&'static str),
    #[error("Peterson denominator vanishes at {0}")]
    ZeroDenominator(RootVector),
    #[error(
        "Moebius inversion produced a non-integral or negative multiplicity {value} at {root}"
    )]
    NonIntegerMultiplicity { root: RootVector, value: String },
    #[error("{root} has height {height}, above the table cap {cap}")]
    HeightExceedsCap {
        root: RootVector,
        height: i64,
        cap: u32,
    },
    #[error("real-direction shortcut requires positive norm, {root} has norm {norm}")]
    NonPositiveNorm { root: RootVector, norm: i64 },
}
