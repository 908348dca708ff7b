use thiserror::Error;

/// Errors shared across the crate.
///
/// Variants split into three groups that the CLI maps to distinct exit
/// codes: domain errors (bad lattices, mismatched shapes, singular or
/// non-frame data), convergence failures of iterative solvers, and
/// internal consistency failures, which signal a bug rather than bad
/// input.
#[derive(Debug, Error)]
pub enum Error {
    #[error("signal dimensions disagree: ({l_lhs}, {n_lhs}) vs ({l_rhs}, {n_rhs})")]
    DimensionMismatch {
        l_lhs: usize,
        n_lhs: usize,
        l_rhs: usize,
        n_rhs: usize,
    },

    #[error("lattice steps must divide the signal length: a={a}, b={b}, len={len}")]
    InvalidLattice { a: usize, b: usize, len: usize },

    #[error("lattice ({a}, {b}, {len}) does not match data with length {expected}")]
    LatticeMismatch {
        a: usize,
        b: usize,
        len: usize,
        expected: usize,
    },

    #[error("exponent {value} is outside [1, inf]")]
    InvalidExponent { value: f64 },

    #[error("block length {block} does not divide the signal length {len}")]
    InvalidBlock { block: usize, len: usize },

    #[error("weight is not positive at index {index}")]
    NonPositiveWeight { index: usize },

    #[error("weight is not symmetric at index {index}")]
    AsymmetricWeight { index: usize },

    #[error("weight length {got} does not match signal length {expected}")]
    WeightLengthMismatch { got: usize, expected: usize },

    #[error("window does not generate a frame (lower bound {lower:.3e})")]
    NotAFrame { lower: f64 },

    #[error("iteration did not converge within {iters} steps (residual {residual:.3e})")]
    NoConvergence { iters: usize, residual: f64 },

    #[error("window support spans {support} samples, wider than the {max} allowed here")]
    SupportTooWide { support: usize, max: usize },

    #[error("pointwise weight matrix is singular at sample {index}")]
    SingularWeight { index: usize },

    #[error("windows are not a dual pair (max deviation {max_dev:.3e})")]
    NotDualPair { max_dev: f64 },

    #[error("expected {expected} channel windows, got {got}")]
    ChannelMismatch { expected: usize, got: usize },

    #[error("operation requires a single-term operator, got {terms} terms")]
    MultiTerm { terms: usize },

    #[error("operator is singular or too close to singular (condition {cond:.3e})")]
    Singular { cond: f64 },

    #[error("requested accuracy {requested:.3e} not reached (achieved {achieved:.3e})")]
    Tolerance { requested: f64, achieved: f64 },

    #[error("internal consistency check failed: {what} (deviation {dev:.3e})")]
    InternalConsistency { what: &'static str, dev: f64 },
}

pub type Result<T> = std::result::Result<T, Error>;
