//! Error type shared by all modules.

use thiserror::Error;

/// Everything that can go wrong when building distributions, spectra, or flows.
#[derive(Debug, Error)]
pub enum Error {
    #[error("input weight list is empty")]
    EmptyInput,

    #[error("weight {value} at index {index} is below -{tol}")]
    NegativeWeight { index: usize, value: f64, tol: f64 },

    #[error("weight at index {0} is not finite")]
    NonFiniteWeight(usize),

    #[error(
        "weights sum to {sum}, more than {tol} away from 1 (request normalization to rescale)"
    )]
    NotNormalized { sum: f64, tol: f64 },

    #[error("matrix is not doubly stochastic: {0}")]
    NotDoublyStochastic(String),

    #[error("a flow needs at least two points, got {0}")]
    TooFewPoints(usize),

    #[error("flow parameter values must be strictly monotone")]
    NonMonotoneParameter,

    #[error("elliptic modulus {0} is outside [0, 1)")]
    ModulusOutOfRange(f64),

    #[error("arcosh argument {0} is below 1")]
    DomainError(f64),

    #[error("chain model invariant violated: {0}")]
    ModelInvariantViolation(String),

    #[error("requested mode {requested} but only {available} modes exist")]
    ModeCountExceedsBlock { requested: usize, available: usize },

    #[error("{0} modes would materialize 2^{0} eigenvalues; the dense limit is 20")]
    TooManyModes(usize),

    #[error("flow grid crosses a region boundary: {0}")]
    GridCrossesRegionBoundary(String),

    #[error("finite-difference step leaves the valid parameter region around {0}")]
    StepLeavesRegion(f64),

    #[error("finite-difference step leaves the domain around L = {0}")]
    StepLeavesDomain(f64),

    #[error("block length {length} does not exceed the UV cutoff {cutoff}")]
    BlockTooSmall { length: f64, cutoff: f64 },

    #[error("q = {0} is outside [0, 1)")]
    QOutOfRange(f64),

    #[error("scaling spectrum is invalid: {0}")]
    InvalidSpectrum(String),

    #[error(
        "q-flow hypothesis violated: q rises from {q_from} to {q_to} \
         between g = {g_from} and g = {g_to}"
    )]
    HypothesisViolated {
        g_from: f64,
        g_to: f64,
        q_from: f64,
        q_to: f64,
    },

    #[error("site count {0} is outside the supported range 2..=14")]
    SizeOutOfRange(usize),

    #[error("block {start}..{end} is not a proper non-empty subrange of {sites} sites")]
    BadBlock {
        start: usize,
        end: usize,
        sites: usize,
    },

    #[error("eigensolver did not converge: residual {residual:.3e} after {restarts} restarts")]
    NoConvergence { residual: f64, restarts: usize },

    #[error("parse error: {0}")]
    Parse(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
