use std::fmt;

use thiserror::Error;

/// Which of the three symplectic identities failed validation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SymplecticIdentity {
    /// `ABᵀ = BAᵀ`
    AbSymmetric,
    /// `CDᵀ = DCᵀ`
    CdSymmetric,
    /// `ADᵀ − BCᵀ = I`
    UnitDeterminant,
}

impl fmt::Display for SymplecticIdentity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::AbSymmetric => "AB^T = BA^T",
            Self::CdSymmetric => "CD^T = DC^T",
            Self::UnitDeterminant => "AD^T - BC^T = I",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("symplectic identity {identity} violated (max residual {residual:e})")]
    SymplecticViolation {
        identity: SymplecticIdentity,
        residual: f64,
    },
    #[error("B is singular: |det B| = {det_abs:e}")]
    SingularB { det_abs: f64 },
    #[error("dilation matrix is singular")]
    SingularM,
    #[error("tolerance must be positive and finite, got {0:e}")]
    InvalidTolerance(f64),
    #[error("index {index} out of range for {len} coset representatives")]
    IndexOutOfRange { index: usize, len: usize },
    #[error("support extent {extent:?} exceeds grid size {n} per axis")]
    SupportTooLarge { extent: [usize; 2], n: usize },
    #[error("grid step {h} is not the reciprocal of a positive integer")]
    IncommensurateGrid { h: f64 },
    #[error("grid steps differ: {left} vs {right}")]
    StepMismatch { left: f64, right: f64 },
    #[error("sample point {point:?} does not land on a grid node")]
    GridMismatch { point: [f64; 2] },
    #[error("evolution power must be at least 1")]
    InvalidPower,
    #[error("grid resolution {n} below the minimum {min}")]
    InvalidGrid { n: usize, min: usize },
    #[error("amalgam exponent must satisfy p >= 1, got {0}")]
    InvalidExponent(f64),
    #[error("system is not stably invertible: min |det| = {min_det:e} at xi = {argmin:?}")]
    UnstableSystem { min_det: f64, argmin: [f64; 2] },
    #[error("spectrum was computed with different transform parameters")]
    ParamsMismatch,
    #[error("{what} has non-finite samples")]
    NonFinite { what: &'static str },
    #[error("{what} differs from the one the measurements were taken with")]
    ProvenanceMismatch { what: &'static str },
    #[error("expected {expected} measurement sequences, got {got}")]
    MeasurementCount { expected: usize, got: usize },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
