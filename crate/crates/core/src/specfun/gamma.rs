//! Log-gamma and polygamma on the positive half line.
//!
//! Both use the same scheme: recurrence-shift the argument above a
//! threshold, then sum the divergent asymptotic series truncated at its
//! smallest term region (B2..B30 is far past sufficient for the shifted
//! arguments used here). The shift direction never cancels: the shifted
//! asymptotic value and the accumulated recurrence terms carry the same
//! sign for every derivative order.

use std::sync::OnceLock;

use super::bernoulli::even_bernoulli_f64;
use crate::{Error, Result};

/// Highest supported polygamma order.
pub const MAX_POLYGAMMA_ORDER: u32 = 32;

const HALF_LN_TWO_PI: f64 = 0.918_938_533_204_672_8;

/// Argument above which the asymptotic series for ln_gamma is used.
const LN_GAMMA_SHIFT: f64 = 8.0;

fn factorials() -> &'static [f64; 64] {
    static F: OnceLock<[f64; 64]> = OnceLock::new();
    F.get_or_init(|| {
        let mut out = [1.0; 64];
        for i in 1..64 {
            out[i] = out[i - 1] * i as f64;
        }
        out
    })
}

fn check_positive(x: f64, what: &str) -> Result<()> {
    if !x.is_finite() || x <= 0.0 {
        return Err(Error::Domain(format!("{what} requires finite x > 0, got {x}")));
    }
    Ok(())
}

/// ln Gamma(x) for x > 0.
pub fn ln_gamma(x: f64) -> Result<f64> {
    check_positive(x, "ln_gamma")?;
    // exact at the two integer zeros of ln Gamma
    if x == 1.0 || x == 2.0 {
        return Ok(0.0);
    }
    let mut y = x;
    let mut shift = 1.0;
    while y < LN_GAMMA_SHIFT {
        shift *= y;
        y += 1.0;
    }
    // Stirling at y >= 8 with B2..B20; the first omitted term is below
    // 1e-17 in absolute value there.
    let b = even_bernoulli_f64();
    let r = 1.0 / (y * y);
    let mut series = 0.0;
    for k in (1..=10u32).rev() {
        let c = b[(k - 1) as usize] / ((2 * k) as f64 * (2 * k - 1) as f64);
        series = series * r + c;
    }
    series /= y;
    let stirling = (y - 0.5) * y.ln() - y + HALF_LN_TWO_PI + series;
    Ok(stirling - shift.ln())
}

/// Polygamma psi^(n)(x) for x > 0; n = 0 is the digamma function.
pub fn polygamma(n: u32, x: f64) -> Result<f64> {
    if n > MAX_POLYGAMMA_ORDER {
        return Err(Error::UnsupportedOrder(format!(
            "polygamma order {n} exceeds {MAX_POLYGAMMA_ORDER}"
        )));
    }
    check_positive(x, "polygamma")?;

    let threshold = 10.0 + n as f64;
    let mut y = x;
    // sum over the shifted-out terms of 1/(x+j)^(n+1)
    let mut shift_sum = 0.0;
    while y < threshold {
        shift_sum += y.powi(-(n as i32) - 1);
        y += 1.0;
    }

    let b = even_bernoulli_f64();
    if n == 0 {
        // psi(y) = ln y - 1/(2y) - sum_k B_2k / (2k y^2k)
        let r = 1.0 / (y * y);
        let mut series = 0.0;
        for k in (1..=15u32).rev() {
            series = series * r + b[(k - 1) as usize] / (2 * k) as f64;
        }
        series *= r;
        Ok(y.ln() - 0.5 / y - series - shift_sum)
    } else {
        // |psi^(n)(y)| = (n-1)!/y^n + n!/(2 y^(n+1))
        //             + sum_k B_2k (2k+n-1)! / ((2k)! y^(2k+n))
        let f = factorials();
        let nf = n as usize;
        let r = 1.0 / (y * y);
        let mut series = 0.0;
        for k in (1..=15usize).rev() {
            let c = b[k - 1] * f[2 * k + nf - 1] / f[2 * k];
            series = series * r + c;
        }
        series *= r * y.powi(-(n as i32));
        let mag = f[nf - 1] * y.powi(-(n as i32))
            + f[nf] * 0.5 * y.powi(-(n as i32) - 1)
            + series;
        let sign = if n.is_multiple_of(2) { -1.0 } else { 1.0 };
        // Recurrence terms enter with the same sign as the asymptotic
        // magnitude, so the final sum is cancellation-free.
        Ok(sign * (mag + f[nf] * shift_sum))
    }
}
