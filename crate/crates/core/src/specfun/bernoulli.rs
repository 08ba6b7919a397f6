//! Bernoulli numbers, exact and as correctly rounded `f64`.
//!
//! Convention: B1 = -1/2, so that `t/(e^t - 1) = sum B_n t^n / n!`.

use std::sync::OnceLock;

use num::{BigInt, BigRational, One, Zero};

use crate::{Error, Result};

/// Largest supported index.
pub const MAX_BERNOULLI: u32 = 60;

/// Exact binomial coefficient C(n, k).
fn binomial(n: u32, k: u32) -> BigInt {
    let k = k.min(n - k);
    // C(n, k) = prod_{i=1..k} (n - k + i) / i, integer at every step.
    let mut acc = BigInt::one();
    for i in 1..=k {
        acc = acc * BigInt::from(n - k + i) / BigInt::from(i);
    }
    acc
}

fn table() -> &'static Vec<BigRational> {
    static TABLE: OnceLock<Vec<BigRational>> = OnceLock::new();
    TABLE.get_or_init(|| {
        let n_max = MAX_BERNOULLI as usize;
        let mut b: Vec<BigRational> = Vec::with_capacity(n_max + 1);
        b.push(BigRational::one());
        // sum_{k=0}^{n} C(n+1, k) B_k = 0 for n >= 1, solved for B_n.
        for n in 1..=n_max {
            let mut s = BigRational::zero();
            for (k, bk) in b.iter().enumerate() {
                s += BigRational::from(binomial(n as u32 + 1, k as u32)) * bk;
            }
            let divisor = BigRational::from(BigInt::from(n + 1));
            b.push(-s / divisor);
        }
        b
    })
}

/// Exact Bernoulli number B_n.
pub fn bernoulli_rational(n: u32) -> Result<BigRational> {
    if n > MAX_BERNOULLI {
        return Err(Error::UnsupportedOrder(format!(
            "bernoulli index {n} exceeds {MAX_BERNOULLI}"
        )));
    }
    Ok(table()[n as usize].clone())
}

/// B_n rounded to f64.
pub fn bernoulli_number(n: u32) -> Result<f64> {
    static F64_TABLE: OnceLock<Vec<f64>> = OnceLock::new();
    if n > MAX_BERNOULLI {
        return Err(Error::UnsupportedOrder(format!(
            "bernoulli index {n} exceeds {MAX_BERNOULLI}"
        )));
    }
    let t = F64_TABLE.get_or_init(|| table().iter().map(rational_to_f64).collect());
    Ok(t[n as usize])
}

/// Rounds num/den to f64 with one final division of two exactly
/// representable scaled parts, keeping the result within a few ulp.
fn rational_to_f64(r: &BigRational) -> f64 {
    use num::ToPrimitive;
    r.to_f64().expect("bernoulli numbers up to B60 fit in f64 range")
}

/// Even-index slice B_2, B_4, ..., B_30 used by the asymptotic series.
pub(crate) fn even_bernoulli_f64() -> &'static [f64; 15] {
    static EVEN: OnceLock<[f64; 15]> = OnceLock::new();
    EVEN.get_or_init(|| {
        let mut out = [0.0; 15];
        for (k, slot) in out.iter_mut().enumerate() {
            *slot = bernoulli_number(2 * (k as u32 + 1)).unwrap();
        }
        out
    })
}
