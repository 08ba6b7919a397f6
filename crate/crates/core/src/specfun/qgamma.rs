//! Log of the q-gamma function, all three q ranges.

use super::{ln_gamma, Accuracy, QParam};
use crate::{Error, Result};

/// ln Gamma_q(x) for x > 0.
///
/// * `0 < q < 1`: `(1-q)^(1-x) prod_{i>=0} (1-q^(i+1))/(1-q^(i+x))`
/// * `q > 1`: `(q-1)^(1-x) q^(x(x-1)/2) prod_{i>=0} (1-q^-(i+1))/(1-q^-(i+x))`
/// * `q = 1`: the classical gamma function.
///
/// The product is summed in log form and truncated once a term's
/// relative contribution drops below `acc.rel_tol`; exhausting
/// `acc.series_cap` first is a [`Error::NonConvergence`]. For q within
/// ~1e-3 of 1 the default cap is far too small on purpose: callers
/// probing the q -> 1 limit must widen `Accuracy`.
pub fn q_ln_gamma(q: QParam, x: f64, acc: &Accuracy) -> Result<f64> {
    if !x.is_finite() || x <= 0.0 {
        return Err(Error::Domain(format!(
            "q_ln_gamma requires finite x > 0, got {x}"
        )));
    }
    let qv = q.value();
    if qv == 1.0 {
        return ln_gamma(x);
    }
    let (ratio, prefix) = if qv < 1.0 {
        // ln(1-q) via ln1p so q near 1 keeps full precision
        (qv, (1.0 - x) * (-qv).ln_1p())
    } else {
        (
            1.0 / qv,
            (1.0 - x) * (qv - 1.0).ln() + x * (x - 1.0) * 0.5 * qv.ln(),
        )
    };
    let ln_r = ratio.ln();
    let mut sum = 0.0;
    for i in 0..acc.series_cap {
        let ifl = i as f64;
        let a = f64::ln_1p(-((ifl + 1.0) * ln_r).exp());
        let b = f64::ln_1p(-((ifl + x) * ln_r).exp());
        let term = a - b;
        sum += term;
        let scale = sum.abs().max(prefix.abs()).max(acc.abs_floor);
        if term.abs() <= acc.rel_tol * scale {
            return Ok(prefix + sum);
        }
    }
    Err(Error::NonConvergence(format!(
        "q_ln_gamma(q={qv}, x={x}) needs more than {} product terms at rel_tol {}",
        acc.series_cap, acc.rel_tol
    )))
}
