//! Error type shared across the crate.

use thiserror::Error;

/// Failures surfaced by fallible operations. Contract violations that can
/// only arise from caller bugs (negative `beta`, non-finite coefficients)
/// panic instead.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// Two functions with different deformation parameters were combined.
    #[error("deformation mismatch: beta = {0} vs {1}")]
    BetaMismatch(f64, f64),

    /// Two functions with different decay exponents were added or subtracted.
    #[error("exponent mismatch: s = {0} vs {1}")]
    ExponentMismatch(f64, f64),

    /// A weighted integral does not converge for the given degrees and decay.
    #[error("divergent integral: polynomial degree {degree} with total decay exponent {s_total}")]
    DivergentIntegral { degree: usize, s_total: f64 },

    /// A `(j, g)` pair outside the admissible discrete set.
    #[error("invalid representation label: j = {j}, g = {g}")]
    InvalidLabel { j: f64, g: f64 },

    /// A parameter outside an operation's stated domain.
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    /// A derived quantity left the representable floating-point range.
    #[error("overflow: {0}")]
    Overflow(String),

    /// A pointwise comparison was requested at a zero of its denominator.
    #[error("comparison sample at a zero of the reference function, p = {0}")]
    SampleAtZero(f64),
}

pub type Result<T> = std::result::Result<T, Error>;
