//! Shared test oracles, all independent of the library's own numerics:
//! Richardson finite differences, exact-rational exponential sums, a
//! slow series digamma, and a zeta(2) partial sum with tail correction.
#![allow(dead_code)]
// oracle constants keep their full decimal expansions on purpose; the
// extra digits document the true values they round from
#![allow(clippy::excessive_precision)]

use num::{BigInt, BigRational, One};

/// Euler-Mascheroni constant, frozen from standard tables.
pub const GAMMA_ORACLE: f64 = 0.577_215_664_901_532_860_6;
/// pi^2/6, frozen from standard tables.
pub const PI2_OVER_6_ORACLE: f64 = 1.644_934_066_848_226_436_5;

/// Fourth-order first derivative via Richardson extrapolation of the
/// central difference.
pub fn d1_richardson<F: Fn(f64) -> f64>(f: &F, t: f64, h: f64) -> f64 {
    let d = |h: f64| (f(t + h) - f(t - h)) / (2.0 * h);
    (4.0 * d(h / 2.0) - d(h)) / 3.0
}

/// Fourth-order second derivative via Richardson extrapolation.
pub fn d2_richardson<F: Fn(f64) -> f64>(f: &F, t: f64, h: f64) -> f64 {
    let d = |h: f64| (f(t + h) - 2.0 * f(t) + f(t - h)) / (h * h);
    (4.0 * d(h / 2.0) - d(h)) / 3.0
}

/// exp(x) as an exact rational Taylor sum; with |x| <= 1 and 40 terms
/// the truncation sits far below f64 resolution.
pub fn exp_rational(x: &BigRational, terms: u32) -> BigRational {
    let mut sum = BigRational::one();
    let mut term = BigRational::one();
    for k in 1..=terms {
        term = term * x / BigRational::from_integer(BigInt::from(k));
        sum += term.clone();
    }
    sum
}

/// Digamma at 1 + t through the harmonic-difference series
/// `-gamma + sum_k t/(k(k+t))`, truncated at 200k terms with the
/// integral tail `ln(1 + t/(N+1/2))`; good to ~1e-13 absolute for
/// t of order one. Summed smallest-first.
pub fn digamma_1p_oracle(t: f64) -> f64 {
    let n = 200_000u32;
    let mut sum = 0.0;
    for k in (1..=n).rev() {
        let kf = f64::from(k);
        sum += t / (kf * (kf + t));
    }
    -GAMMA_ORACLE + sum + f64::ln_1p(t / (f64::from(n) + 0.5))
}

/// Bisection on a bracketing interval with f(lo) < 0 < f(hi).
pub fn root_bisect<F: Fn(f64) -> f64>(f: &F, mut lo: f64, mut hi: f64) -> f64 {
    for _ in 0..200 {
        if hi - lo <= 1e-12 * hi {
            break;
        }
        let mid = 0.5 * (lo + hi);
        if f(mid) < 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

/// zeta(2) as a partial sum plus the Euler-Maclaurin tail
/// `1/N - 1/(2N^2) + 1/(6N^3)`; error ~ 1/(30 N^5).
pub fn zeta2_oracle() -> f64 {
    let n = 10_000u32;
    let mut sum = 0.0;
    for k in (1..=n).rev() {
        let kf = f64::from(k);
        sum += 1.0 / (kf * kf);
    }
    let nf = f64::from(n);
    sum + 1.0 / nf - 1.0 / (2.0 * nf * nf) + 1.0 / (6.0 * nf * nf * nf)
}
