//! The reciprocal kernel 1/(e^x - 1), stable across the whole positive axis.

use crate::{Error, Result};

/// Below this, the Laurent series beats forming e^x - 1 at all.
const SERIES_CUTOFF: f64 = 1e-5;
/// Above this, e^x overflows f64 and the tail form takes over.
/// (ln f64::MAX ~ 709.78; the mathematically equivalent tail form keeps
/// returning subnormal positives down to the underflow floor.)
const TAIL_CUTOFF: f64 = 709.0;

/// 1/(e^x - 1) for x > 0.
///
/// Relative error stays within a few ulp until the result leaves the
/// normal range; past that it degrades to subnormal granularity and
/// finally underflows to +0.0.
pub fn recip_expm1(x: f64) -> Result<f64> {
    if !x.is_finite() || x <= 0.0 {
        return Err(Error::Domain(format!(
            "recip_expm1 requires finite x > 0, got {x}"
        )));
    }
    Ok(recip_expm1_unchecked(x))
}

/// Same as [`recip_expm1`] with the domain check hoisted to the caller.
pub(crate) fn recip_expm1_unchecked(x: f64) -> f64 {
    if x < SERIES_CUTOFF {
        // 1/(e^x-1) = 1/x - 1/2 + x/12 - x^3/720 + O(x^5)
        1.0 / x - 0.5 + x / 12.0 - x * x * x / 720.0
    } else if x <= TAIL_CUTOFF {
        1.0 / x.exp_m1()
    } else {
        let e = (-x).exp();
        e / (1.0 - e)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn ln2_gives_exactly_one_kernel_unit() {
        assert_relative_eq!(
            recip_expm1(std::f64::consts::LN_2).unwrap(),
            1.0,
            max_relative = 1e-14
        );
    }

    #[test]
    fn tiny_argument_matches_laurent_series() {
        let x = 1e-9;
        let want = 1.0 / x - 0.5 + x / 12.0;
        assert_relative_eq!(recip_expm1(x).unwrap(), want, max_relative = 1e-14);
    }

    #[test]
    fn series_and_direct_branch_agree_at_the_switch() {
        for &x in &[0.5e-5, 0.9e-5, 1.0e-5, 1.1e-5, 2e-5] {
            let series = 1.0 / x - 0.5 + x / 12.0 - x * x * x / 720.0;
            let direct = 1.0 / f64::exp_m1(x);
            assert_relative_eq!(series, direct, max_relative = 1e-13);
            assert_relative_eq!(recip_expm1(x).unwrap(), direct, max_relative = 1e-13);
        }
    }

    #[test]
    fn deep_tail_is_positive_subnormal_or_zero() {
        let v = recip_expm1(800.0).unwrap();
        assert!(v >= 0.0);
        assert!(v < 1e-300);
        // around the overflow boundary of exp the value must stay
        // positive and consistent with e^-x
        for &x in &[700.0, 709.0, 709.5, 710.0, 720.0, 745.0] {
            let v = recip_expm1(x).unwrap();
            assert!(v >= 0.0, "x={x}");
            if v > 0.0 {
                let rel = (v - (-x).exp()) / v;
                assert!(rel.abs() < 1e-10, "x={x} v={v}");
            }
        }
    }

    #[test]
    fn strictly_decreasing_on_samples() {
        let mut prev = f64::INFINITY;
        for i in 0..200 {
            let x = (1e-12f64.ln() + (745f64 / 1e-12).ln() * i as f64 / 199.0).exp();
            let v = recip_expm1(x).unwrap();
            assert!(v < prev, "x={x}");
            if v == 0.0 {
                break;
            }
            prev = v;
        }
    }

    #[test]
    fn rejects_nonpositive_and_nonfinite() {
        for x in [0.0, -1.0, f64::NAN, f64::INFINITY] {
            assert!(matches!(recip_expm1(x), Err(Error::Domain(_))), "x={x}");
        }
    }
}
