//! Numerical library for a family of Bernoulli-kernel functions, the
//! exponential-sum inequalities they generate, and the gamma-function
//! ratios whose monotonicity those inequalities certify.
//!
//! Everything revolves around the kernel `1/(e^x - 1)` and the family
//! `h_alpha(t) = t^(alpha-1) / (e^(1/t) - 1)` on `t > 0`:
//!
//! * [`specfun`]: scalar substrate (`ln_gamma`, `polygamma`, exact
//!   Bernoulli numbers, a stable `1/(e^x - 1)`, the q-gamma function).
//! * [`hfamily`]: `h_alpha`, its closed-form first two derivatives, the
//!   auxiliary factor pair that controls the sign of the second
//!   derivative, inflection/extremum location, and log-concavity data.
//! * [`ineq`]: margins for the split, matrix, and tensor superadditivity
//!   inequalities built from the kernel, plus deterministic random sweeps.
//! * [`gammaratio`]: log-derivatives of binomial/multinomial gamma
//!   ratios, the trigamma combination `P`, complete-monotonicity data,
//!   and suprema/minima of the associated product ratio.
//! * [`monocheck`]: grid-based property checkers (sign patterns,
//!   convexity, star-shapedness, superadditivity, monotone ratios, sign
//!   changes) producing witness reports.
//! * [`suites`]: named verification suites combining the above; the CLI
//!   `verify` verb and the acceptance tests run these same functions.
//!
//! All floating-point work is `f64`. Exact rational arithmetic (via
//! [`num`]) backs the Bernoulli table and the series-coefficient
//! identities where exactness is part of the contract.

// Tolerance checks are written `!(value <= bound)` on purpose: a NaN
// must take the failing branch, which `value > bound` would not do.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod gammaratio;
pub mod hfamily;
pub mod ineq;
pub mod monocheck;
pub mod rng;
pub mod specfun;
pub mod suites;

use thiserror::Error;

/// Errors shared by all modules.
#[derive(Debug, Clone, Error, PartialEq)]
pub enum Error {
    /// Argument outside the mathematical domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),
    /// Derivative or series order above the supported maximum.
    #[error("unsupported order: {0}")]
    UnsupportedOrder(String),
    /// A series or iteration hit its cap before meeting tolerance.
    #[error("did not converge: {0}")]
    NonConvergence(String),
    /// A root search found no sign change in the search window.
    #[error("no bracket: {0}")]
    NoBracket(String),
    /// Observed root census disagrees with the regime implied by alpha.
    #[error("regime mismatch: {0}")]
    RegimeMismatch(String),
    /// The discriminant under a square root evaluated negative.
    #[error("negative radicand: {0}")]
    NegativeRadicand(String),
    /// Malformed input data (shape, positivity, normalization).
    #[error("invalid input: {0}")]
    InvalidInput(String),
    /// Operation called outside its stated precondition.
    #[error("precondition violated: {0}")]
    Precondition(String),
}

pub type Result<T> = std::result::Result<T, Error>;

/// Absolute floor used when turning margins into relative margins and
/// when deciding that a value has underflowed for good.
pub const ABS_FLOOR: f64 = 1e-300;

/// Euler-Mascheroni constant, frozen to the f64 nearest to
/// 0.57721566490153286...; used by the boundary-limit formulas.
pub const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;

/// pi^2/6, frozen independently of any polygamma evaluation.
pub const PI2_OVER_6: f64 = 1.644_934_066_848_226_4;
