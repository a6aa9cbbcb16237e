//! Error type shared across the crate.

use thiserror::Error;

use crate::basis::BasisLabel;

/// Errors raised by basis construction, operator algebra, thermodynamics,
/// and dynamics routines.
#[derive(Debug, Clone, Error, PartialEq)]
pub enum QdError {
    #[error("invalid dimension range: n1 = {n1} exceeds n2 = {n2}")]
    InvalidRange { n1: u32, n2: u32 },

    #[error("occupation list has {len} entries but the sector dimension is {d}")]
    LabelLength { d: u32, len: usize },

    #[error("operands are defined over different bases")]
    BasisMismatch,

    #[error("sector d = {d} lies outside the basis range [{n1}, {n2}]")]
    SectorOutOfRange { d: u32, n1: u32, n2: u32 },

    #[error("mode index {index} out of range for sector d = {d} (valid: 1..={d})")]
    ModeIndex { d: u32, index: u32 },

    #[error("label {0} is not part of the basis")]
    LabelNotInBasis(BasisLabel),

    #[error("block ({d}, {dp}) has shape {rows}x{cols}, expected {want_rows}x{want_cols}")]
    BlockShape {
        d: u32,
        dp: u32,
        rows: usize,
        cols: usize,
        want_rows: usize,
        want_cols: usize,
    },

    #[error("operator flagged hermitian violates conjugate symmetry by {max_violation:e}")]
    NotHermitian { max_violation: f64 },

    #[error("state is not normalized: |amps|^2 = {norm_sq}")]
    NotNormalized { norm_sq: f64 },

    #[error("amplitude vector has {got} entries, basis has {expected}")]
    AmplitudeCount { expected: usize, got: usize },

    #[error("inverse temperature must be positive and finite, got {0}")]
    InvalidBeta(f64),

    #[error("beta grid is empty")]
    EmptyBetaGrid,

    #[error("mixing matrix is {rows}x{cols}, expected {m}x{m}")]
    MixingSize { m: usize, rows: usize, cols: usize },

    #[error("mixing matrix deviates from unitarity by {max_violation:e}")]
    NotUnitary { max_violation: f64 },

    #[error("basis has {size} states, exceeding the dense-evolution guard of {limit}")]
    StateTooLarge { size: usize, limit: usize },
}
