//! The one-parameter kernel family `h_alpha(t) = t^(alpha-1) / (e^(1/t) - 1)`
//! on `t > 0`, with closed-form derivatives and shape classification.
//!
//! Writing `u = 1/t`, `E = e^-u`, `w = 1 - E`, the derivatives reduce to
//!
//! ```text
//! h'    = t^(alpha-3) * s * E / w^2,        s = (alpha-1) t w + 1
//! h''   = t^(alpha-5) * C * E / w^3,        C = c2 w^2 + c1 w + 1 + E
//! ```
//!
//! with `c2 = (alpha-1)(alpha-2) t^2` and `c1 = 2 (alpha-2) t`. These are
//! exact regroupings of the quotient-rule forms; every factor except `s`
//! and `C` is positive, so the shape of the family is decided by the sign
//! of `C` alone ("the carrier"). Viewed as a quadratic in alpha, the
//! carrier factors through the pair `(H1, H2)` returned by [`aux_h1_h2`]:
//!
//! ```text
//! C(alpha, 1/u) * e^(2u)
//!     = ((e^u - 1)^2 / u^2)
//!     * (alpha - 3/2 + H1(u)/2) * (alpha - 3/2 + H2(u)/2)
//! ```
//!
//! so the inflection points are where alpha meets `3/2 - H_i(1/t)/2`:
//! none for `alpha >= 1`, one for `0 <= alpha < 1`, two for `alpha < 0`.
//!
//! Shape census: [`inflection_points`] (sign changes of the carrier,
//! refined by bisection), [`extremum_point`] (root of the logarithmic
//! derivative, `alpha < 0` only), and the log-concavity data
//! [`logconc_h`] / [`log_h_alpha_d2`].

use num::{BigInt, BigRational, One};
use serde::{Deserialize, Serialize};

use crate::monocheck::GridSpec;
use crate::{Error, Result};

/// Relative width target for root refinement.
const REFINE_REL: f64 = 1e-12;
/// Small-t switch for the series evaluations of D and related numerators.
const SERIES_SWITCH: f64 = 0.1;
/// Series length used at the switch; overlap error is below 1e-12 there.
const SERIES_TERMS: usize = 30;

fn check_alpha(alpha: f64) -> Result<()> {
    if !alpha.is_finite() {
        return Err(Error::Domain(format!("alpha must be finite, got {alpha}")));
    }
    Ok(())
}

fn check_t(t: f64) -> Result<()> {
    if !t.is_finite() || t <= 0.0 {
        return Err(Error::Domain(format!("t must be finite and > 0, got {t}")));
    }
    Ok(())
}

/// h_alpha(t) = t^(alpha-1) / (e^(1/t) - 1).
///
/// Values below the representable range underflow to +0.0; the mixed
/// overflow/underflow products that would produce NaN are evaluated in
/// log space instead.
pub fn h_alpha(alpha: f64, t: f64) -> Result<f64> {
    check_alpha(alpha)?;
    check_t(t)?;
    let u = 1.0 / t;
    let r = crate::specfun::recip_expm1_unchecked(u);
    let direct = t.powf(alpha - 1.0) * r;
    if direct.is_finite() && direct != 0.0 {
        return Ok(direct);
    }
    // ln h = (alpha-1) ln t - u - ln(1 - e^-u); exp underflows to 0 or
    // overflows to +inf gracefully.
    let ln_mag = (alpha - 1.0) * t.ln() - u - f64::ln_1p(-(-u).exp());
    Ok(ln_mag.exp())
}

/// Sign-carrying factor of h'' (the quotient-rule bracket scaled by
/// e^(-2u)): never overflows on sensible grids, vanishes exactly at the
/// inflection points.
fn d2_carrier(alpha: f64, t: f64) -> f64 {
    let u = 1.0 / t;
    let e = (-u).exp();
    let w = -f64::exp_m1(-u);
    let c2 = (alpha - 1.0) * (alpha - 2.0) * t * t;
    let c1 = 2.0 * (alpha - 2.0) * t;
    c2 * w * w + c1 * w + 1.0 + e
}

fn signed_exp(sign_source: f64, ln_mag: f64) -> f64 {
    if sign_source == 0.0 {
        0.0
    } else if sign_source > 0.0 {
        ln_mag.exp()
    } else {
        -ln_mag.exp()
    }
}

/// First and second derivative of h_alpha in t, as a pair.
pub fn h_alpha_derivs(alpha: f64, t: f64) -> Result<(f64, f64)> {
    check_alpha(alpha)?;
    check_t(t)?;
    let u = 1.0 / t;
    let w = -f64::exp_m1(-u);
    let ln_t = t.ln();
    let ln_w = w.ln();

    let s = (alpha - 1.0) * t * w + 1.0;
    let d1 = signed_exp(
        s,
        (alpha - 3.0) * ln_t + s.abs().ln() - u - 2.0 * ln_w,
    );

    let c = d2_carrier(alpha, t);
    let d2 = signed_exp(
        c,
        (alpha - 5.0) * ln_t + c.abs().ln() - u - 3.0 * ln_w,
    );
    Ok((d1, d2))
}

/// Exact coefficient of t^k in the series of the radicand D(t),
/// `(2k(2^k - 2k) + 2^k - 2) / k!`, valid for k >= 2.
pub fn series_d_coefficient(k: u32) -> Result<BigRational> {
    if !(2..=41).contains(&k) {
        return Err(Error::UnsupportedOrder(format!(
            "series coefficient index must lie in 2..=41, got {k}"
        )));
    }
    let two_k = BigInt::one() << k;
    let kb = BigInt::from(k);
    let num = BigInt::from(2u32) * &kb * (&two_k - BigInt::from(2u32) * &kb) + &two_k
        - BigInt::from(2u32);
    let mut fact = BigInt::one();
    for i in 2..=k {
        fact *= BigInt::from(i);
    }
    Ok(BigRational::new(num, fact))
}

/// Power series of `D(t) = (4t+1)e^(2t) - 2(2t^2+2t+1)e^t + 1` around 0;
/// all coefficients are positive, so the sum is cancellation-free.
/// Requires |t| <= 1 and 1 <= terms <= 40.
pub fn series_d(t: f64, terms: usize) -> Result<f64> {
    if t.abs() > 1.0 || !t.is_finite() {
        return Err(Error::Domain(format!("series_d requires |t| <= 1, got {t}")));
    }
    if terms == 0 || terms > 40 {
        return Err(Error::UnsupportedOrder(format!(
            "series_d supports 1..=40 terms, got {terms}"
        )));
    }
    // coefficient numerators 2k(2^k - 2k) + 2^k - 2 are exact in f64 up
    // to k = 41 (below 2^53)
    let mut sum = 0.0;
    let mut t_pow_over_fact = t * t / 2.0; // t^k / k! at k = 2
    for j in 0..terms {
        let k = (j + 2) as f64;
        let two_k = k.exp2();
        let c = 2.0 * k * (two_k - 2.0 * k) + two_k - 2.0;
        sum += c * t_pow_over_fact;
        t_pow_over_fact *= t / (k + 1.0);
    }
    Ok(sum)
}

/// Power series of `e^(2t) + (t^2-3t-2)e^t + t^2 + 3t + 1`, the second
/// cancellation-prone combination from the same proof chain; coefficient
/// of t^k is `(2(2^(k-1) - 1) + k(k-4)) / k!` for k >= 3.
pub fn series_aux_h2(t: f64, terms: usize) -> Result<f64> {
    if t.abs() > 1.0 || !t.is_finite() {
        return Err(Error::Domain(format!(
            "series_aux_h2 requires |t| <= 1, got {t}"
        )));
    }
    if terms == 0 || terms > 40 {
        return Err(Error::UnsupportedOrder(format!(
            "series_aux_h2 supports 1..=40 terms, got {terms}"
        )));
    }
    let mut sum = 0.0;
    let mut t_pow_over_fact = t * t * t / 6.0; // t^k / k! at k = 3
    for j in 0..terms {
        let k = (j + 3) as f64;
        let two_km1 = (k - 1.0).exp2();
        let c = 2.0 * (two_km1 - 1.0) + k * (k - 4.0);
        sum += c * t_pow_over_fact;
        t_pow_over_fact *= t / (k + 1.0);
    }
    Ok(sum)
}

/// The increasing factor pair (H1, H2) with
/// `H_i(t) = (2 t e^t -+ sqrt(D(t))) / (e^t - 1)`; H1 -> 3 and H2 -> 1 as
/// t -> 0+, both grow without bound. The radicand is evaluated by its
/// series below t = 0.1 and in the e^(-t)-reduced form above, which
/// stays finite for every t.
pub fn aux_h1_h2(t: f64) -> Result<(f64, f64)> {
    check_t(t)?;
    if t < SERIES_SWITCH {
        let d = series_d(t, SERIES_TERMS)?;
        if d < 0.0 {
            return Err(Error::NegativeRadicand(format!(
                "series D({t}) evaluated to {d}"
            )));
        }
        let em = f64::exp_m1(t);
        let two_t_et = 2.0 * t * t.exp();
        Ok(((two_t_et + d.sqrt()) / em, (two_t_et - d.sqrt()) / em))
    } else {
        // D(t) e^(-2t) = (4t+1) - 2(2t^2+2t+1)e^(-t) + e^(-2t)
        let e = (-t).exp();
        let dr = (4.0 * t + 1.0) - 2.0 * (2.0 * t * t + 2.0 * t + 1.0) * e + e * e;
        if dr < 0.0 {
            return Err(Error::NegativeRadicand(format!(
                "reduced D({t}) evaluated to {dr}"
            )));
        }
        let w = -f64::exp_m1(-t);
        Ok(((2.0 * t + dr.sqrt()) / w, (2.0 * t - dr.sqrt()) / w))
    }
}

/// The decreasing combination
/// `[1 + (t^2+2t-2)e^t + (1-2t)e^(2t)] / (e^t - 1)^2`;
/// tends to 0 from below at 0+ and to -infinity like 1 - 2t.
pub fn logconc_h(t: f64) -> Result<f64> {
    check_t(t)?;
    if t < SERIES_SWITCH {
        // numerator series: -t^3 - (5/4)t^4 - (5/6)t^5 - ...,
        // k! c_k = k^2 + k - 2 + 2^k (1 - k), single-signed
        let mut num = 0.0;
        let mut t_pow_over_fact = t * t * t / 6.0;
        for j in 0..SERIES_TERMS {
            let k = (j + 3) as f64;
            let c = k * k + k - 2.0 + k.exp2() * (1.0 - k);
            num += c * t_pow_over_fact;
            t_pow_over_fact *= t / (k + 1.0);
        }
        let em = f64::exp_m1(t);
        Ok(num / (em * em))
    } else {
        // reduced by e^(2t): [e^(-2t) + (t^2+2t-2)e^(-t) + 1-2t] / (1-e^(-t))^2
        let e = (-t).exp();
        let num = e * e + (t * t + 2.0 * t - 2.0) * e + (1.0 - 2.0 * t);
        let w = -f64::exp_m1(-t);
        Ok(num / (w * w))
    }
}

/// d/dt ln h_alpha = (alpha-1)/t + 1 / (t^2 (1 - e^(-1/t))).
pub fn log_h_alpha_d1(alpha: f64, t: f64) -> Result<f64> {
    check_alpha(alpha)?;
    check_t(t)?;
    let w = -f64::exp_m1(-1.0 / t);
    Ok((alpha - 1.0) / t + 1.0 / (t * t * w))
}

/// d^2/dt^2 ln h_alpha = (logconc_h(1/t) - alpha) / t^2; strictly
/// negative for alpha >= 0 since logconc_h < 0 on the whole axis.
pub fn log_h_alpha_d2(alpha: f64, t: f64) -> Result<f64> {
    check_alpha(alpha)?;
    check_t(t)?;
    Ok((logconc_h(1.0 / t)? - alpha) / (t * t))
}

/// Shape regimes of the family by alpha.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Regime {
    Convex,
    OneInflection,
    TwoInflections,
}

impl Regime {
    pub fn for_alpha(alpha: f64) -> Regime {
        if alpha >= 1.0 {
            Regime::Convex
        } else if alpha >= 0.0 {
            Regime::OneInflection
        } else {
            Regime::TwoInflections
        }
    }

    pub fn expected_roots(self) -> usize {
        match self {
            Regime::Convex => 0,
            Regime::OneInflection => 1,
            Regime::TwoInflections => 2,
        }
    }
}

/// Census of the second-derivative sign changes.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct InflectionReport {
    /// Refined inflection abscissas, ascending.
    pub roots: Vec<f64>,
    /// Largest final bisection bracket width across the roots.
    pub bracket_width: f64,
    pub regime: Regime,
}

/// Default search window; wide enough for |alpha| up to a few hundred.
pub fn default_search_grid() -> GridSpec {
    GridSpec::log(1e-3, 1e3, 1200).expect("static grid parameters are valid")
}

fn bisect<F>(f: &F, mut a: f64, mut b: f64, fa_pos: bool) -> (f64, f64)
where
    F: Fn(f64) -> f64,
{
    for _ in 0..240 {
        if b - a <= REFINE_REL * b {
            break;
        }
        let mid = 0.5 * (a + b);
        let fm = f(mid);
        if fm == 0.0 {
            // converged exactly; collapse the bracket
            a = mid;
            b = mid;
            break;
        }
        if (fm > 0.0) == fa_pos {
            a = mid;
        } else {
            b = mid;
        }
    }
    (0.5 * (a + b), b - a)
}

/// Locates the inflection points of h_alpha inside the grid window and
/// checks the census against the regime alpha implies. The scan runs on
/// the sign carrier of h'' (not h'' itself), so deep-tail underflow of
/// the second derivative cannot mask a root. A node where the carrier
/// vanishes exactly closes the bracket on its left.
pub fn inflection_points(alpha: f64, grid: &GridSpec) -> Result<InflectionReport> {
    check_alpha(alpha)?;
    grid.validate()?;
    let regime = Regime::for_alpha(alpha);
    let f = |t: f64| d2_carrier(alpha, t);

    let ts = grid.abscissas();
    let mut roots = Vec::new();
    let mut width: f64 = 0.0;
    let mut prev_t = ts[0];
    let mut prev_sign = {
        let v = f(prev_t);
        if v == 0.0 {
            roots.push(prev_t);
            0.0
        } else {
            v.signum()
        }
    };
    for &t in &ts[1..] {
        let v = f(t);
        if v == 0.0 {
            roots.push(t);
            prev_sign = -prev_sign;
            prev_t = t;
            continue;
        }
        let s = v.signum();
        if prev_sign != 0.0 && s != prev_sign {
            let (root, w) = bisect(&f, prev_t, t, prev_sign > 0.0);
            roots.push(root);
            width = width.max(w);
        }
        prev_sign = s;
        prev_t = t;
    }

    if roots.len() != regime.expected_roots() {
        return Err(Error::RegimeMismatch(format!(
            "alpha = {alpha} implies {} inflection point(s) in [{}, {}], found {} at {:?}",
            regime.expected_roots(),
            grid.lo,
            grid.hi,
            roots.len(),
            roots
        )));
    }
    Ok(InflectionReport {
        roots,
        bracket_width: width,
        regime,
    })
}

/// Location of the unique maximum of h_alpha for alpha < 0 (where the
/// logarithmic derivative crosses zero); `None` for alpha >= 0, where
/// h_alpha is strictly increasing.
pub fn extremum_point(alpha: f64, grid: &GridSpec) -> Result<Option<f64>> {
    check_alpha(alpha)?;
    grid.validate()?;
    if alpha >= 0.0 {
        return Ok(None);
    }
    let f = |t: f64| log_h_alpha_d1(alpha, t).unwrap_or(f64::NAN);
    let ts = grid.abscissas();
    let mut prev_t = ts[0];
    let mut prev_v = f(prev_t);
    for &t in &ts[1..] {
        let v = f(t);
        if prev_v > 0.0 && v <= 0.0 {
            let (root, _) = bisect(&f, prev_t, t, true);
            return Ok(Some(root));
        }
        prev_t = t;
        prev_v = v;
    }
    Err(Error::RegimeMismatch(format!(
        "alpha = {alpha} < 0 implies a maximum, but the log-derivative kept one sign on [{}, {}]",
        grid.lo, grid.hi
    )))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn value_at_one_is_reciprocal_e_minus_one() {
        let want = 1.0 / f64::exp_m1(1.0);
        assert_relative_eq!(h_alpha(1.0, 1.0).unwrap(), want, max_relative = 1e-14);
        // alpha only scales by t^(alpha-1) = 1 at t = 1
        assert_relative_eq!(h_alpha(3.7, 1.0).unwrap(), want, max_relative = 1e-14);
    }

    #[test]
    fn tail_limits_by_alpha_sign() {
        assert_relative_eq!(h_alpha(0.0, 1e6).unwrap(), 1.0, max_relative = 1e-5);
        assert!(h_alpha(2.0, 1e-6).unwrap() <= 1e-300);
        assert!(h_alpha(-1.0, 1e6).unwrap() <= 1e-5);
        // deep small-t underflow with negative alpha must not produce NaN
        let v = h_alpha(-300.0, 1e-6).unwrap();
        assert!(v.is_finite() && v >= 0.0);
    }

    #[test]
    fn derivatives_match_central_differences() {
        for &(alpha, t) in &[(2.0, 1.0), (1.5, 0.3), (0.5, 2.0), (-1.0, 0.8), (10.0, 5.0)] {
            let (d1, d2) = h_alpha_derivs(alpha, t).unwrap();
            let h = 1e-5 * t;
            let f = |x: f64| h_alpha(alpha, x).unwrap();
            let fd1 = (f(t + h) - f(t - h)) / (2.0 * h);
            let fd2 = (f(t + h) - 2.0 * f(t) + f(t - h)) / (h * h);
            assert_relative_eq!(d1, fd1, max_relative = 1e-7);
            assert_relative_eq!(d2, fd2, max_relative = 1e-4);
        }
    }

    #[test]
    fn second_derivative_rebuilds_from_aux_pair() {
        let (alpha, t) = (1.7, 2.0);
        let u: f64 = 1.0 / t;
        let (h1, h2) = aux_h1_h2(u).unwrap();
        let em = f64::exp_m1(u);
        let rebuilt = (em * em / (u * u))
            * (alpha - 1.5 + h1 / 2.0)
            * (alpha - 1.5 + h2 / 2.0);
        let carrier_scaled = d2_carrier(alpha, t) * (2.0 * u).exp();
        assert_relative_eq!(rebuilt, carrier_scaled, max_relative = 1e-8);
        // and through the actual second derivative
        let (_, d2) = h_alpha_derivs(alpha, t).unwrap();
        let from_aux = t.powf(alpha - 5.0) * rebuilt / (em * em * em);
        assert_relative_eq!(d2, from_aux, max_relative = 1e-8);
    }

    #[test]
    fn aux_pair_limits_and_growth() {
        let (h1, h2) = aux_h1_h2(1e-4).unwrap();
        assert!((h1 - 3.0).abs() < 1e-3, "h1={h1}");
        assert!((h2 - 1.0).abs() < 1e-3, "h2={h2}");
        let mut prev = (h1, h2);
        for &t in &[1e-3, 1e-2, 0.05, 0.0999, 0.1001, 0.5, 1.0, 5.0, 50.0, 400.0] {
            let cur = aux_h1_h2(t).unwrap();
            assert!(cur.0 > prev.0 - 1e-12, "H1 not increasing at {t}");
            assert!(cur.1 > prev.1 - 1e-12, "H2 not increasing at {t}");
            prev = cur;
        }
        assert!(prev.0 > 100.0 && prev.1 > 100.0);
    }

    #[test]
    fn radicand_series_agrees_with_direct_form() {
        for &t in &[0.01, 0.05, 0.0999] {
            let s = series_d(t, 30).unwrap();
            let direct = (4.0 * t + 1.0) * (2.0 * t).exp()
                - 2.0 * (2.0 * t * t + 2.0 * t + 1.0) * t.exp()
                + 1.0;
            assert_relative_eq!(s, direct, max_relative = 1e-10);
        }
    }

    #[test]
    fn aux_series_agrees_with_direct_form() {
        // the direct form cancels terms of size ~2 down to ~t^3/2, so
        // its own roundoff floor is a few 1e-16 absolute
        for &t in &[0.01, 0.05] {
            let s = series_aux_h2(t, 30).unwrap();
            let direct = (2.0 * t).exp() + (t * t - 3.0 * t - 2.0) * t.exp()
                + t * t
                + 3.0 * t
                + 1.0;
            assert_relative_eq!(s, direct, max_relative = 1e-10, epsilon = 1e-14);
        }
    }

    #[test]
    fn exact_series_coefficients() {
        let rat = |n: i64, d: i64| BigRational::new(BigInt::from(n), BigInt::from(d));
        let want = [rat(1, 1), rat(3, 1), rat(13, 4), rat(25, 12), rat(343, 360)];
        for (k, w) in (2..=6).zip(want) {
            assert_eq!(series_d_coefficient(k).unwrap(), w, "k={k}");
        }
        assert!(series_d_coefficient(1).is_err());
        assert!(series_d_coefficient(42).is_err());
    }

    #[test]
    fn logconc_series_and_direct_agree_across_switch() {
        for &t in &[0.05f64, 0.0999, 0.1001, 0.3] {
            let direct = {
                let et = t.exp();
                let e2t = (2.0 * t).exp();
                let em = f64::exp_m1(t);
                (1.0 + (t * t + 2.0 * t - 2.0) * et + (1.0 - 2.0 * t) * e2t) / (em * em)
            };
            assert_relative_eq!(logconc_h(t).unwrap(), direct, max_relative = 1e-9);
        }
    }

    #[test]
    fn logconc_limits_and_monotone_decrease() {
        let near_zero = logconc_h(1e-4).unwrap();
        assert!(near_zero < 0.0 && near_zero.abs() < 1e-2);
        let far = logconc_h(500.0).unwrap();
        assert_relative_eq!(far, 1.0 - 2.0 * 500.0, max_relative = 1e-6);
        let mut prev = f64::INFINITY;
        for i in 0..400 {
            let t = (1e-3f64.ln() + (1e3f64 / 1e-3).ln() * i as f64 / 399.0).exp();
            let v = logconc_h(t).unwrap();
            assert!(v < prev + 1e-12, "not decreasing at t={t}");
            prev = v;
        }
    }

    #[test]
    fn log_second_derivative_nonpositive_for_nonnegative_alpha() {
        for &alpha in &[0.0, 0.5, 1.0, 2.0] {
            for i in 0..200 {
                let t = (1e-3f64.ln() + (1e3f64 / 1e-3).ln() * i as f64 / 199.0).exp();
                let v = log_h_alpha_d2(alpha, t).unwrap();
                assert!(v <= 1e-12, "alpha={alpha} t={t} v={v}");
            }
        }
    }

    #[test]
    fn census_matches_regime() {
        let grid = default_search_grid();
        let r = inflection_points(2.0, &grid).unwrap();
        assert_eq!(r.regime, Regime::Convex);
        assert!(r.roots.is_empty());

        let r = inflection_points(0.5, &grid).unwrap();
        assert_eq!(r.regime, Regime::OneInflection);
        assert_eq!(r.roots.len(), 1);
        assert!(r.bracket_width <= REFINE_REL * r.roots[0] * 1.01);

        let r = inflection_points(-1.0, &grid).unwrap();
        assert_eq!(r.regime, Regime::TwoInflections);
        assert_eq!(r.roots.len(), 2);
        assert!(r.roots[0] < r.roots[1]);
        // the sign factor vanishes at the refined roots
        for &root in &r.roots {
            let (_, d2) = h_alpha_derivs(-1.0, root * (1.0 + 1e-9)).unwrap();
            let (_, d2m) = h_alpha_derivs(-1.0, root * (1.0 - 1e-9)).unwrap();
            assert!(d2 * d2m <= 0.0, "no sign flip around {root}");
        }
    }

    #[test]
    fn extremum_only_below_zero_alpha() {
        let grid = default_search_grid();
        assert_eq!(extremum_point(0.0, &grid).unwrap(), None);
        assert_eq!(extremum_point(2.0, &grid).unwrap(), None);
        let t_star = extremum_point(-0.5, &grid).unwrap().unwrap();
        // maximum: h rises before, falls after
        let h0 = h_alpha(-0.5, t_star).unwrap();
        assert!(h_alpha(-0.5, t_star * 0.9).unwrap() < h0);
        assert!(h_alpha(-0.5, t_star * 1.1).unwrap() < h0);
        // the log-derivative crosses zero there
        assert!(log_h_alpha_d1(-0.5, t_star).unwrap().abs() < 1e-9);
    }

    #[test]
    fn domain_errors() {
        assert!(h_alpha(f64::NAN, 1.0).is_err());
        assert!(h_alpha(1.0, 0.0).is_err());
        assert!(h_alpha(1.0, -2.0).is_err());
        assert!(series_d(1.5, 10).is_err());
        assert!(series_d(0.5, 0).is_err());
        assert!(series_d(0.5, 41).is_err());
    }
}
