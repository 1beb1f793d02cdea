//! Crate-wide error type.

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("qubit count mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },

    #[error("state is not normalized: |norm - 1| = {deviation:.3e}")]
    NotNormalized { deviation: f64 },

    #[error("site index {site} out of range for {qubit_count} qubits")]
    SiteOutOfRange { site: usize, qubit_count: usize },

    #[error("duplicate site {site} in Pauli term")]
    DuplicateSite { site: usize },

    #[error("parameter index {index} out of range ({count} parameters)")]
    ParamIndexOutOfRange { index: usize, count: usize },

    #[error("expected {expected} parameters, got {got}")]
    ParamCountMismatch { expected: usize, got: usize },

    #[error("site count must be a positive even number, got {n}")]
    OddSiteCount { n: usize },

    #[error("dense realization capped at {cap} qubits, got {n}")]
    DenseCapExceeded { n: usize, cap: usize },

    #[error("operator product has imaginary coefficient residual {residual:.3e}")]
    ImaginaryCoefficient { residual: f64 },

    #[error("expectation value has imaginary residual {residual:.3e}")]
    ImaginaryResidual { residual: f64 },

    #[error("charge |q| = {q} exceeds capacity for {n} sites")]
    ChargeCapacity { q: i64, n: usize },

    #[error("charge sector q = {q} is empty for {n} sites")]
    EmptySector { q: i64, n: usize },

    #[error("degenerate spectrum: E_max = E_min = {energy}")]
    DegenerateSpectrum { energy: f64 },

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    #[error("McLachlan distance significantly negative ({value:.3e}): broken assembly")]
    NegativeDistance { value: f64 },

    #[error("solver aborted at iteration {iter}: {reason}")]
    SolverAbort { iter: usize, reason: String },

    #[error("non-finite value in {context}")]
    NonFinite { context: &'static str },
}
