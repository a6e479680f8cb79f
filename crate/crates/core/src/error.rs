use num_bigint::BigInt;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("lattice of rank {rank} is not full rank in Z^{dim}")]
    NotFullRank { rank: usize, dim: usize },

    #[error("matrix is singular")]
    DegenerateMatrix,

    #[error("index {index} out of range 1..={max}")]
    IndexOutOfRange { index: usize, max: usize },

    #[error("no vertex has a unimodular chart (consecutive determinants: {dets:?})")]
    NoSmoothVertex { dets: Vec<BigInt> },

    #[error("characteristic vectors not in standard position: need lambda_(m-1) = (1,0) and lambda_m = (0,1)")]
    NotInStandardPosition,

    #[error("random pair generation failed at slot {slot} after {attempts} attempts")]
    GenerationFailed { slot: usize, attempts: usize },

    #[error("cellular identity failed for u_{index}")]
    CellularIdentity { index: usize },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
