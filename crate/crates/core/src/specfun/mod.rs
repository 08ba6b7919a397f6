//! Scalar special-function substrate.
//!
//! | Function | Description |
//! |----------|-------------|
//! | [`ln_gamma`] | log-gamma on x > 0 |
//! | [`polygamma`] | psi^(n), orders 0..=32 |
//! | [`bernoulli_number`], [`bernoulli_rational`] | B_n up to n = 60, B1 = -1/2 |
//! | [`recip_expm1`] | 1/(e^x - 1) without cancellation or overflow |
//! | [`q_ln_gamma`] | ln Gamma_q for q in (0,1), q = 1, q > 1 |
//!
//! Everything downstream (the kernel family, the inequality margins, the
//! gamma-ratio derivatives) is built from these five.

mod bernoulli;
mod gamma;
mod kernel;
mod qgamma;

pub use bernoulli::{bernoulli_number, bernoulli_rational, MAX_BERNOULLI};
pub use gamma::{ln_gamma, polygamma, MAX_POLYGAMMA_ORDER};
pub use kernel::recip_expm1;
pub(crate) use kernel::recip_expm1_unchecked;
pub use qgamma::q_ln_gamma;

use crate::{Error, Result};

/// Shared accuracy knobs for series evaluation.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct Accuracy {
    /// Relative truncation target for series tails.
    pub rel_tol: f64,
    /// Magnitudes below this are treated as zero for relative tests.
    pub abs_floor: f64,
    /// Hard cap on series terms before reporting non-convergence.
    pub series_cap: usize,
}

impl Default for Accuracy {
    fn default() -> Self {
        Accuracy {
            rel_tol: 1e-12,
            abs_floor: 1e-300,
            series_cap: 200,
        }
    }
}

/// Validated base q for the q-gamma function: finite and positive.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize, serde::Deserialize)]
#[serde(try_from = "f64", into = "f64")]
pub struct QParam(f64);

impl QParam {
    pub fn new(q: f64) -> Result<Self> {
        if !q.is_finite() || q <= 0.0 {
            return Err(Error::InvalidInput(format!(
                "q must be finite and positive, got {q}"
            )));
        }
        Ok(QParam(q))
    }

    pub fn value(self) -> f64 {
        self.0
    }
}

impl TryFrom<f64> for QParam {
    type Error = Error;
    fn try_from(q: f64) -> Result<Self> {
        QParam::new(q)
    }
}

impl From<QParam> for f64 {
    fn from(q: QParam) -> f64 {
        q.0
    }
}
