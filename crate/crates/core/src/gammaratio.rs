//! Gamma-ratio families over weight matrices and tensors: the binomial
//! and multinomial log-ratios, the trigamma combination `P` with exact
//! derivatives of every order, the product ratio `F` with its
//! log-derivatives, boundary limits, supremum/minimum structure, the
//! Stirling remainder, and the four tensor-indexed combinations left
//! open for investigation.
//!
//! Given a positive matrix with row sums `nu_i` and column sums `tau_j`,
//! the recurring pattern is the weighted combination
//!
//! ```text
//! sum_i nu_i^e f(nu_i) + sum_j tau_j^e f(tau_j) - rho * sum_ij lambda_ij^e f(lambda_ij)
//! ```
//!
//! instantiated with `f = psi^(n)(1 + w t)` or `f = ln Gamma(1 + w t)`.
//! Every derivative is analytic (polygamma), never a finite difference;
//! differences appear only in test oracles.

use serde::{Deserialize, Serialize};

use crate::ineq::{LambdaMatrix, LambdaTensor};
use crate::monocheck::GridSpec;
use crate::specfun::{ln_gamma, polygamma, q_ln_gamma, recip_expm1, Accuracy, QParam};
use crate::{Error, Result, EULER_GAMMA, PI2_OVER_6};

/// Highest supported derivative order of the trigamma combination.
pub const MAX_P_DERIV: u32 = 8;
/// Highest supported log-derivative order of the product ratio.
pub const MAX_LNF_DERIV: u32 = 9;
/// Highest supported derivative order of the tensor combinations.
pub const MAX_CONJECTURE_DERIV: u32 = 6;

fn check_t(t: f64) -> Result<()> {
    if !t.is_finite() || t <= 0.0 {
        return Err(Error::Domain(format!("t must be finite and > 0, got {t}")));
    }
    Ok(())
}

/// Weight matrix with the two scalar parameters of the ratio family.
/// JSON shape: `{"lambda": [[...]], "rho": 2.0, "theta": 0.0}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RatioSpec {
    pub lambda: Vec<Vec<f64>>,
    pub rho: f64,
    pub theta: f64,
}

impl RatioSpec {
    pub fn new(lambda: Vec<Vec<f64>>, rho: f64, theta: f64) -> Result<RatioSpec> {
        let spec = RatioSpec { lambda, rho, theta };
        spec.validate()?;
        Ok(spec)
    }

    pub fn validate(&self) -> Result<()> {
        self.matrix().validate()?;
        if !self.rho.is_finite() || !self.theta.is_finite() {
            return Err(Error::InvalidInput(format!(
                "rho and theta must be finite, got rho={} theta={}",
                self.rho, self.theta
            )));
        }
        Ok(())
    }

    pub fn matrix(&self) -> LambdaMatrix {
        LambdaMatrix {
            lambda: self.lambda.clone(),
        }
    }
}

/// Binomial-coefficient ratio parameters.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BinomSpec {
    pub n: u32,
    pub k: u32,
    pub p: f64,
}

impl BinomSpec {
    pub fn validate(&self) -> Result<()> {
        if self.k > self.n {
            return Err(Error::InvalidInput(format!(
                "k must satisfy k <= n, got k={} n={}",
                self.k, self.n
            )));
        }
        if !(self.p > 0.0 && self.p < 1.0) {
            return Err(Error::InvalidInput(format!(
                "p must lie in (0,1), got {}",
                self.p
            )));
        }
        Ok(())
    }
}

/// Multinomial-coefficient ratio parameters; probabilities lie in (0,1]
/// and sum to 1 (a single weight forces p = 1). An optional q switches
/// every gamma to its q-deformation.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MultinomSpec {
    pub lambdas: Vec<f64>,
    pub probs: Vec<f64>,
    #[serde(default)]
    pub q: Option<QParam>,
}

impl MultinomSpec {
    pub fn validate(&self) -> Result<()> {
        if self.lambdas.is_empty() || self.lambdas.len() != self.probs.len() {
            return Err(Error::InvalidInput(format!(
                "need equal nonzero counts of lambdas and probs, got {} and {}",
                self.lambdas.len(),
                self.probs.len()
            )));
        }
        for (i, &l) in self.lambdas.iter().enumerate() {
            if !l.is_finite() || l <= 0.0 {
                return Err(Error::Domain(format!(
                    "lambdas[{i}] must be finite and > 0, got {l}"
                )));
            }
        }
        for (i, &p) in self.probs.iter().enumerate() {
            if !(p > 0.0 && p <= 1.0) {
                return Err(Error::InvalidInput(format!(
                    "probs[{i}] must lie in (0,1], got {p}"
                )));
            }
        }
        let total: f64 = self.probs.iter().sum();
        if (total - 1.0).abs() > 1e-12 {
            return Err(Error::InvalidInput(format!(
                "probs must sum to 1 within 1e-12, got {total}"
            )));
        }
        Ok(())
    }
}

/// The four tensor-indexed combinations.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum ConjectureVariant {
    L1,
    L2,
    R1,
    R2,
}

impl ConjectureVariant {
    pub fn name(self) -> &'static str {
        match self {
            ConjectureVariant::L1 => "L1",
            ConjectureVariant::L2 => "L2",
            ConjectureVariant::R1 => "R1",
            ConjectureVariant::R2 => "R2",
        }
    }
}

impl std::fmt::Display for ConjectureVariant {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for ConjectureVariant {
    type Err = Error;
    fn from_str(s: &str) -> Result<ConjectureVariant> {
        match s {
            "L1" => Ok(ConjectureVariant::L1),
            "L2" => Ok(ConjectureVariant::L2),
            "R1" => Ok(ConjectureVariant::R1),
            "R2" => Ok(ConjectureVariant::R2),
            _ => Err(Error::InvalidInput(format!(
                "unknown variant {s:?}; expected L1, L2, R1, or R2"
            ))),
        }
    }
}

/// Weight tensor with parameters and variant selector.
/// JSON shape: `{"lambda3": [[[...]]], "rho": 3.0, "theta": 1.0, "variant": "L1"}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConjectureSpec {
    pub lambda3: Vec<Vec<Vec<f64>>>,
    pub rho: f64,
    pub theta: f64,
    pub variant: ConjectureVariant,
}

impl ConjectureSpec {
    pub fn validate(&self) -> Result<()> {
        self.tensor().validate()?;
        if !self.rho.is_finite() || !self.theta.is_finite() {
            return Err(Error::InvalidInput(format!(
                "rho and theta must be finite, got rho={} theta={}",
                self.rho, self.theta
            )));
        }
        Ok(())
    }

    pub fn tensor(&self) -> LambdaTensor {
        LambdaTensor {
            lambda3: self.lambda3.clone(),
        }
    }
}

/// A supremum that is either a finite value or genuinely infinite.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Bound {
    Finite(f64),
    Unbounded,
}

/// Log of the binomial-coefficient ratio term
/// `Gamma(nx+1) / (Gamma(kx+1) Gamma((n-k)x+1)) * p^(kx) (1-p)^((n-k)x)`.
pub fn ln_g(x: f64, spec: &BinomSpec) -> Result<f64> {
    check_t(x)?;
    spec.validate()?;
    let (n, k) = (spec.n as f64, spec.k as f64);
    Ok(ln_gamma(n * x + 1.0)? - ln_gamma(k * x + 1.0)? - ln_gamma((n - k) * x + 1.0)?
        + k * x * spec.p.ln()
        + (n - k) * x * (1.0 - spec.p).ln())
}

/// Log of the multinomial-coefficient ratio term
/// `Gamma(1 + x sum lambda) / prod Gamma(1 + x lambda_i) * prod p_i^(x lambda_i)`,
/// with every gamma q-deformed when `spec.q` is set.
pub fn ln_q_ratio(x: f64, spec: &MultinomSpec) -> Result<f64> {
    ln_q_ratio_with(x, spec, &Accuracy::default())
}

/// [`ln_q_ratio`] with caller-controlled q-series accuracy (the plain
/// gamma path ignores `acc`).
pub fn ln_q_ratio_with(x: f64, spec: &MultinomSpec, acc: &Accuracy) -> Result<f64> {
    check_t(x)?;
    spec.validate()?;
    let total: f64 = spec.lambdas.iter().sum();
    let lg = |y: f64| -> Result<f64> {
        match spec.q {
            Some(q) => q_ln_gamma(q, y, acc),
            None => ln_gamma(y),
        }
    };
    let mut out = lg(1.0 + x * total)?;
    for &l in &spec.lambdas {
        out -= lg(1.0 + x * l)?;
    }
    for (&l, &p) in spec.lambdas.iter().zip(&spec.probs) {
        out += x * l * p.ln();
    }
    Ok(out)
}

/// Power sums of the three weight families:
/// `(sum nu_i^e, sum tau_j^e, sum_ij lambda_ij^e)`. The combination
/// `a + b - rho*c` of these drives every boundary limit; the sum
/// `a + b + |rho|*c` is the natural pre-cancellation scale.
pub fn weight_power_sums(spec: &RatioSpec, expo: f64) -> Result<(f64, f64, f64)> {
    spec.validate()?;
    let lm = spec.matrix();
    let a = lm.nu().iter().map(|&v| v.powf(expo)).sum();
    let b = lm.tau().iter().map(|&v| v.powf(expo)).sum();
    let c = lm.lambda.iter().flatten().map(|&v| v.powf(expo)).sum();
    Ok((a, b, c))
}

/// The weighted nu/tau/entry combination with per-weight function `f`.
fn comb<F>(spec: &RatioSpec, wexp: f64, mut f: F) -> Result<f64>
where
    F: FnMut(f64) -> Result<f64>,
{
    let lm = spec.matrix();
    let mut lhs = 0.0;
    for &v in &lm.nu() {
        lhs += v.powf(wexp) * f(v)?;
    }
    for &v in &lm.tau() {
        lhs += v.powf(wexp) * f(v)?;
    }
    let mut entries = 0.0;
    for &v in lm.lambda.iter().flatten() {
        entries += v.powf(wexp) * f(v)?;
    }
    Ok(lhs - spec.rho * entries)
}

/// The trigamma combination
/// `sum nu^(theta+2) psi'(1+nu t) + sum tau^(theta+2) psi'(1+tau t) -
/// rho sum lambda^(theta+2) psi'(1+lambda t)`;
/// completely monotonic in t for rho <= 2, theta >= 0.
pub fn p_eval(t: f64, spec: &RatioSpec) -> Result<f64> {
    p_deriv(t, spec, 0)
}

/// k-th derivative of [`p_eval`]: weight exponents shift to
/// `theta + 2 + k` and the polygamma order to `k + 1`.
pub fn p_deriv(t: f64, spec: &RatioSpec, k: u32) -> Result<f64> {
    check_t(t)?;
    spec.validate()?;
    if k > MAX_P_DERIV {
        return Err(Error::UnsupportedOrder(format!(
            "derivative order must be <= {MAX_P_DERIV}, got {k}"
        )));
    }
    comb(spec, spec.theta + 2.0 + k as f64, |w| {
        polygamma(k + 1, 1.0 + w * t)
    })
}

/// Value of [`p_eval`] as t -> 0+: `(pi^2/6)(sum nu^(theta+2) + sum
/// tau^(theta+2) - rho sum lambda^(theta+2))`.
pub fn p_zero_limit(spec: &RatioSpec) -> Result<f64> {
    let (a, b, c) = weight_power_sums(spec, spec.theta + 2.0)?;
    Ok(PI2_OVER_6 * (a + b - spec.rho * c))
}

/// Log of the gamma-product ratio:
/// `sum nu^theta ln Gamma(1+nu t) + sum tau^theta ln Gamma(1+tau t)
///  - rho sum lambda^theta ln Gamma(1+lambda t)`.
pub fn ln_f(t: f64, spec: &RatioSpec) -> Result<f64> {
    check_t(t)?;
    spec.validate()?;
    comb(spec, spec.theta, |w| ln_gamma(1.0 + w * t))
}

/// k-th derivative of [`ln_f`] for k in 1..=9: weight exponents
/// `theta + k`, polygamma order `k - 1`. Order 2 is exactly [`p_eval`]
/// (identical code path).
pub fn ln_f_deriv(t: f64, spec: &RatioSpec, k: u32) -> Result<f64> {
    check_t(t)?;
    spec.validate()?;
    if k == 0 || k > MAX_LNF_DERIV {
        return Err(Error::UnsupportedOrder(format!(
            "log-derivative order must lie in 1..={MAX_LNF_DERIV}, got {k}"
        )));
    }
    comb(spec, spec.theta + k as f64, |w| {
        polygamma(k - 1, 1.0 + w * t)
    })
}

/// Value of the first log-derivative of F as t -> 0+:
/// `-gamma (sum nu^(theta+1) + sum tau^(theta+1) - rho sum lambda^(theta+1))`.
pub fn lnf_d1_zero_limit(spec: &RatioSpec) -> Result<f64> {
    let (a, b, c) = weight_power_sums(spec, spec.theta + 1.0)?;
    Ok(-EULER_GAMMA * (a + b - spec.rho * c))
}

/// Supremum of the first log-derivative of F.
///
/// At (rho, theta) = (2, 0) it is the finite entropy-style value
/// `sum nu ln nu + sum tau ln tau - 2 sum lambda ln lambda`; for
/// rho < 2 or theta > 0 (within rho <= 2, theta >= 0) the derivative
/// grows without bound and the result is [`Bound::Unbounded`]. Outside
/// rho <= 2, theta >= 0 nothing is guaranteed and the call errors.
pub fn lnf_d1_sup(spec: &RatioSpec) -> Result<Bound> {
    spec.validate()?;
    if spec.rho == 2.0 && spec.theta == 0.0 {
        let lm = spec.matrix();
        let ent = |v: f64| v * v.ln();
        let a: f64 = lm.nu().iter().map(|&v| ent(v)).sum();
        let b: f64 = lm.tau().iter().map(|&v| ent(v)).sum();
        let c: f64 = lm.lambda.iter().flatten().map(|&v| ent(v)).sum();
        Ok(Bound::Finite(a + b - 2.0 * c))
    } else if spec.rho <= 2.0 && spec.theta >= 0.0 {
        Ok(Bound::Unbounded)
    } else {
        Err(Error::Precondition(format!(
            "supremum is characterized only for rho <= 2 and theta >= 0, got rho={} theta={}",
            spec.rho, spec.theta
        )))
    }
}

/// Locates the unique minimum of F for rho < 2 or theta > 0 by
/// bracketing the sign change of the increasing first log-derivative
/// and bisecting to rel 1e-12. The initial window comes from `grid`;
/// if the derivative does not change sign there, the window expands
/// stepwise up to [1e-8, 1e8] before a no-bracket error.
pub fn find_min_f(spec: &RatioSpec, grid: &GridSpec) -> Result<f64> {
    spec.validate()?;
    grid.validate()?;
    if !(spec.rho < 2.0 || spec.theta > 0.0) {
        return Err(Error::Precondition(format!(
            "a minimum exists only for rho < 2 or theta > 0, got rho={} theta={}",
            spec.rho, spec.theta
        )));
    }
    let d1 = |t: f64| ln_f_deriv(t, spec, 1);
    let mut lo = grid.lo;
    let mut hi = grid.hi;
    let mut flo = d1(lo)?;
    let mut fhi = d1(hi)?;
    while flo > 0.0 && lo > 1e-8 {
        lo = (lo / 10.0).max(1e-8);
        flo = d1(lo)?;
    }
    while fhi < 0.0 && hi < 1e8 {
        hi = (hi * 10.0).min(1e8);
        fhi = d1(hi)?;
    }
    if flo == 0.0 {
        return Ok(lo);
    }
    if fhi == 0.0 {
        return Ok(hi);
    }
    if flo > 0.0 || fhi < 0.0 {
        return Err(Error::NoBracket(format!(
            "first log-derivative keeps one sign on [{lo}, {hi}] (values {flo}, {fhi})"
        )));
    }
    for _ in 0..240 {
        if hi - lo <= 1e-12 * hi {
            break;
        }
        let mid = 0.5 * (lo + hi);
        let fm = d1(mid)?;
        if fm == 0.0 {
            return Ok(mid);
        }
        if fm < 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// Stirling remainder density `(1/s)(1/(e^s - 1) - 1/s + 1/2)`;
/// positive, decreasing, with limit 1/12 at 0+. Below s = 0.1 the
/// cancellation-prone bracket is replaced by its even power series.
pub fn stirling_theta(s: f64) -> Result<f64> {
    check_t(s)?;
    if s < 0.1 {
        // 1/12 - s^2/720 + s^4/30240 - s^6/1209600 + s^8/47900160
        let s2 = s * s;
        Ok(1.0 / 12.0
            + s2 * (-1.0 / 720.0
                + s2 * (1.0 / 30240.0 + s2 * (-1.0 / 1209600.0 + s2 / 47900160.0))))
    } else {
        Ok((recip_expm1(s)? - 1.0 / s + 0.5) / s)
    }
}

/// Evaluates the k-th derivative of one of the four tensor combinations.
///
/// The L-variants are trigamma combinations over the tensor's collapsed
/// sums (single-axis families for L1, double-axis families for L2) with
/// weight exponents `theta + k` and polygamma order `k + 1`. The
/// R-variants are the logs of the corresponding gamma-product ratios;
/// k = 0 gives the log itself, k >= 1 differentiates through to
/// polygamma order `k - 1`. Purely observational: no sign claims are
/// made for any of them anywhere in this crate.
pub fn conjecture_eval(t: f64, spec: &ConjectureSpec, k: u32) -> Result<f64> {
    check_t(t)?;
    spec.validate()?;
    if k > MAX_CONJECTURE_DERIV {
        return Err(Error::UnsupportedOrder(format!(
            "derivative order must be <= {MAX_CONJECTURE_DERIV}, got {k}"
        )));
    }
    let lt = spec.tensor();
    let is_l = matches!(spec.variant, ConjectureVariant::L1 | ConjectureVariant::L2);
    let single_axis = matches!(
        spec.variant,
        ConjectureVariant::L1 | ConjectureVariant::R1
    );
    let (wexp, f): (f64, Box<dyn Fn(f64) -> Result<f64>>) = if is_l {
        (
            spec.theta + k as f64,
            Box::new(move |w| polygamma(k + 1, 1.0 + w * t)),
        )
    } else if k == 0 {
        (spec.theta, Box::new(move |w| ln_gamma(1.0 + w * t)))
    } else {
        (
            spec.theta + k as f64,
            Box::new(move |w| polygamma(k - 1, 1.0 + w * t)),
        )
    };
    let mut lhs = 0.0;
    for axis in 0..3 {
        let family = if single_axis {
            lt.collapse_one(axis)?
        } else {
            lt.collapse_two(axis)?
        };
        for &w in &family {
            lhs += w.powf(wexp) * f(w)?;
        }
    }
    let mut entries = 0.0;
    for &v in lt.lambda3.iter().flatten().flatten() {
        entries += v.powf(wexp) * f(v)?;
    }
    Ok(lhs - spec.rho * entries)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::SampleStream;
    use approx::assert_relative_eq;

    fn ones_spec(rho: f64, theta: f64) -> RatioSpec {
        RatioSpec::new(vec![vec![1.0, 1.0], vec![1.0, 1.0]], rho, theta).unwrap()
    }

    fn random_spec(seed: u64, m: usize, n: usize, rho: f64, theta: f64) -> RatioSpec {
        let mut s = SampleStream::new(seed, 0);
        RatioSpec::new(
            (0..m)
                .map(|_| (0..n).map(|_| s.next_log_uniform(0.1, 10.0)).collect())
                .collect(),
            rho,
            theta,
        )
        .unwrap()
    }

    #[test]
    fn binom_ratio_values() {
        let spec = BinomSpec { n: 2, k: 1, p: 0.5 };
        assert_relative_eq!(
            ln_g(1.0, &spec).unwrap(),
            0.5f64.ln(),
            max_relative = 1e-13
        );
        let spec = BinomSpec { n: 5, k: 0, p: 0.3 };
        assert_relative_eq!(
            ln_g(2.0, &spec).unwrap(),
            10.0 * 0.7f64.ln(),
            max_relative = 1e-13
        );
        let spec = BinomSpec { n: 3, k: 1, p: 0.25 };
        assert!(ln_g(1e-12, &spec).unwrap().abs() < 1e-9);
    }

    #[test]
    fn binom_ratio_log_decreasing_and_convex() {
        let spec = BinomSpec { n: 4, k: 2, p: 0.4 };
        let xs: Vec<f64> = (1..=40).map(|i| 0.1 * i as f64).collect();
        let vals: Vec<f64> = xs.iter().map(|&x| ln_g(x, &spec).unwrap()).collect();
        for w in vals.windows(2) {
            assert!(w[1] - w[0] <= 1e-12, "not nonincreasing: {w:?}");
        }
        for w in vals.windows(3) {
            assert!(w[0] - 2.0 * w[1] + w[2] >= -1e-12, "not convex: {w:?}");
        }
    }

    #[test]
    fn multinom_ratio_values() {
        let single = MultinomSpec {
            lambdas: vec![2.5],
            probs: vec![1.0],
            q: None,
        };
        for &x in &[0.5, 1.0, 7.0] {
            assert_eq!(ln_q_ratio(x, &single).unwrap(), 0.0);
        }
        let pair = MultinomSpec {
            lambdas: vec![1.0, 1.0],
            probs: vec![0.5, 0.5],
            q: None,
        };
        assert_relative_eq!(
            ln_q_ratio(1.0, &pair).unwrap(),
            -(2.0f64.ln()),
            max_relative = 1e-13
        );
    }

    #[test]
    fn multinom_ratio_q_variant() {
        let q = QParam::new(0.5).unwrap();
        let single = MultinomSpec {
            lambdas: vec![1.5],
            probs: vec![1.0],
            q: Some(q),
        };
        assert_eq!(ln_q_ratio(1.0, &single).unwrap(), 0.0);
        // Gamma_q(3) = 1 + q, Gamma_q(2) = 1
        let pair = MultinomSpec {
            lambdas: vec![1.0, 1.0],
            probs: vec![0.5, 0.5],
            q: Some(q),
        };
        let want = 1.5f64.ln() + 1.0 * (0.5f64.ln() + 0.5f64.ln());
        assert_relative_eq!(ln_q_ratio(1.0, &pair).unwrap(), want, max_relative = 1e-10);
    }

    #[test]
    fn multinom_spec_validation() {
        let bad = MultinomSpec {
            lambdas: vec![1.0, 2.0],
            probs: vec![0.5, 0.6],
            q: None,
        };
        assert!(bad.validate().is_err());
        let bad = MultinomSpec {
            lambdas: vec![1.0],
            probs: vec![0.5, 0.5],
            q: None,
        };
        assert!(bad.validate().is_err());
        let bad = MultinomSpec {
            lambdas: vec![1.0, 1.0],
            probs: vec![0.0, 1.0],
            q: None,
        };
        assert!(bad.validate().is_err());
    }

    #[test]
    fn trigamma_combination_trivial_zero() {
        let spec = RatioSpec::new(vec![vec![0.7]], 2.0, 0.0).unwrap();
        for &t in &[0.1, 1.0, 42.0] {
            assert_eq!(p_eval(t, &spec).unwrap(), 0.0);
        }
    }

    #[test]
    fn trigamma_combination_all_ones_value() {
        let spec = ones_spec(2.0, 0.0);
        let want = 16.0 * polygamma(1, 3.0).unwrap() - 8.0 * polygamma(1, 2.0).unwrap();
        let got = p_eval(1.0, &spec).unwrap();
        assert_relative_eq!(got, want, max_relative = 1e-13);
        assert!(got > 0.0);
    }

    #[test]
    fn trigamma_combination_zero_limit() {
        let spec = ones_spec(2.0, 0.0);
        let got = p_eval(1e-9, &spec).unwrap();
        let want = p_zero_limit(&spec).unwrap();
        assert_relative_eq!(got, want, max_relative = 1e-6);
        // pre-cancellation sanity: 8 * pi^2/6 for this spec
        assert_relative_eq!(want, 8.0 * PI2_OVER_6, max_relative = 1e-14);
    }

    #[test]
    fn trigamma_derivatives_match_finite_differences() {
        let spec = ones_spec(0.0, 0.0);
        let t = 1.0;
        let h = 1e-5;
        let fd = (p_eval(t + h, &spec).unwrap() - p_eval(t - h, &spec).unwrap()) / (2.0 * h);
        assert_relative_eq!(p_deriv(t, &spec, 1).unwrap(), fd, max_relative = 1e-7);
        assert_eq!(p_deriv(t, &spec, 0).unwrap(), p_eval(t, &spec).unwrap());
        assert!(p_deriv(t, &spec, 9).is_err());
    }

    #[test]
    fn trigamma_combination_alternates_in_sign() {
        let spec = random_spec(31, 3, 4, 2.0, 1.0);
        for k in 0..=5u32 {
            let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
            for i in 0..10 {
                let t = (1e-2f64.ln() + (1e2f64 / 1e-2).ln() * i as f64 / 9.0).exp();
                let v = p_deriv(t, &spec, k).unwrap();
                assert!(sign * v >= -1e-10 * v.abs().max(1.0), "k={k} t={t} v={v}");
            }
        }
    }

    #[test]
    fn ratio_log_trivial_zero_and_growth() {
        let spec = RatioSpec::new(vec![vec![1.3]], 2.0, 0.0).unwrap();
        for &t in &[0.2, 5.0] {
            assert_eq!(ln_f(t, &spec).unwrap(), 0.0);
        }
        let spec = ones_spec(2.0, 0.0);
        assert!(ln_f(1e-9, &spec).unwrap().abs() < 1e-6);
        let (a, b, c) = (
            ln_f(1.0, &spec).unwrap(),
            ln_f(5.0, &spec).unwrap(),
            ln_f(10.0, &spec).unwrap(),
        );
        assert!(0.0 < a && a < b && b < c, "not increasing: {a} {b} {c}");
    }

    #[test]
    fn ratio_log_second_derivative_is_the_trigamma_combination() {
        let spec = random_spec(7, 2, 3, 1.0, 0.5);
        for &t in &[0.3, 2.0, 40.0] {
            assert_eq!(
                ln_f_deriv(t, &spec, 2).unwrap(),
                p_eval(t, &spec).unwrap()
            );
        }
    }

    #[test]
    fn ratio_log_first_derivative_matches_finite_difference() {
        let spec = random_spec(7, 2, 3, 1.0, 0.5);
        let t = 2.0;
        let h = 1e-5;
        let fd = (ln_f(t + h, &spec).unwrap() - ln_f(t - h, &spec).unwrap()) / (2.0 * h);
        assert_relative_eq!(ln_f_deriv(t, &spec, 1).unwrap(), fd, max_relative = 1e-7);
        assert!(ln_f_deriv(t, &spec, 0).is_err());
        assert!(ln_f_deriv(t, &spec, 10).is_err());
    }

    #[test]
    fn ratio_log_first_derivative_zero_limit() {
        let spec = ones_spec(1.0, 0.0);
        let got = ln_f_deriv(1e-9, &spec, 1).unwrap();
        let want = lnf_d1_zero_limit(&spec).unwrap();
        assert_relative_eq!(got, want, max_relative = 1e-5);
        assert_relative_eq!(want, -4.0 * EULER_GAMMA, max_relative = 1e-14);
    }

    #[test]
    fn supremum_cases() {
        let spec = RatioSpec::new(vec![vec![0.9]], 2.0, 0.0).unwrap();
        assert_eq!(lnf_d1_sup(&spec).unwrap(), Bound::Finite(0.0));

        let spec = ones_spec(2.0, 0.0);
        match lnf_d1_sup(&spec).unwrap() {
            Bound::Finite(v) => {
                assert_relative_eq!(v, 8.0 * 2.0f64.ln(), max_relative = 1e-14);
                // the increasing derivative approaches the supremum from below
                let far = ln_f_deriv(1e7, &spec, 1).unwrap();
                assert!(far < v);
                assert_relative_eq!(far, v, max_relative = 1e-3);
            }
            Bound::Unbounded => panic!("expected finite supremum"),
        }

        assert_eq!(
            lnf_d1_sup(&ones_spec(1.5, 0.0)).unwrap(),
            Bound::Unbounded
        );
        assert_eq!(lnf_d1_sup(&ones_spec(2.0, 1.0)).unwrap(), Bound::Unbounded);
        assert!(lnf_d1_sup(&ones_spec(3.0, 0.0)).is_err());
        assert!(lnf_d1_sup(&ones_spec(2.0, -1.0)).is_err());
    }

    #[test]
    fn minimum_of_plain_log_gamma() {
        // 1x1 weight 1 at rho=1, theta=0 reduces the derivative to
        // psi(1+t), whose root is the Gamma minimum abscissa minus 1
        let spec = RatioSpec::new(vec![vec![1.0]], 1.0, 0.0).unwrap();
        let grid = GridSpec::log(1e-3, 1e3, 100).unwrap();
        let t_star = find_min_f(&spec, &grid).unwrap();
        assert_relative_eq!(t_star, 0.461_632_144_968_362_3, max_relative = 1e-10);
        let at = ln_f(t_star, &spec).unwrap();
        assert!(at < ln_f(t_star / 2.0, &spec).unwrap());
        assert!(at < ln_f(2.0 * t_star, &spec).unwrap());
    }

    #[test]
    fn minimum_exists_for_reduced_rho() {
        let spec = ones_spec(1.5, 0.0);
        let grid = GridSpec::log(1e-3, 1e3, 100).unwrap();
        let t_star = find_min_f(&spec, &grid).unwrap();
        assert!(ln_f_deriv(t_star * 0.99, &spec, 1).unwrap() < 0.0);
        assert!(ln_f_deriv(t_star * 1.01, &spec, 1).unwrap() > 0.0);
        // no minimum at the boundary parameter pair
        assert!(find_min_f(&ones_spec(2.0, 0.0), &grid).is_err());
    }

    #[test]
    fn stirling_remainder_values() {
        assert!((stirling_theta(1e-4).unwrap() - 1.0 / 12.0).abs() < 1e-6);
        assert_relative_eq!(
            stirling_theta(1.0).unwrap(),
            0.081_976_706_869_326_5,
            max_relative = 1e-12
        );
        assert_relative_eq!(
            stirling_theta(100.0).unwrap(),
            0.01 * (0.5 - 0.01),
            max_relative = 1e-10
        );
        // branch continuity
        assert_relative_eq!(
            stirling_theta(0.0999).unwrap(),
            stirling_theta(0.1001).unwrap(),
            max_relative = 1e-5
        );
    }

    #[test]
    fn stirling_remainder_positive_decreasing() {
        let mut prev = f64::INFINITY;
        for i in 0..200 {
            let s = (1e-4f64.ln() + (1e3f64 / 1e-4).ln() * i as f64 / 199.0).exp();
            let v = stirling_theta(s).unwrap();
            assert!(v > 0.0, "s={s} v={v}");
            assert!(v < prev, "not decreasing at s={s}");
            prev = v;
        }
    }

    fn ones_tensor_spec(rho: f64, theta: f64, variant: ConjectureVariant) -> ConjectureSpec {
        ConjectureSpec {
            lambda3: vec![vec![vec![1.0; 2]; 2]; 2],
            rho,
            theta,
            variant,
        }
    }

    #[test]
    fn conjecture_trivial_zeros() {
        for variant in [
            ConjectureVariant::L1,
            ConjectureVariant::L2,
            ConjectureVariant::R1,
            ConjectureVariant::R2,
        ] {
            let spec = ConjectureSpec {
                lambda3: vec![vec![vec![0.8]]],
                rho: 3.0,
                theta: 0.0,
                variant,
            };
            for &t in &[0.5, 3.0] {
                assert_eq!(conjecture_eval(t, &spec, 0).unwrap(), 0.0, "{variant}");
            }
        }
    }

    #[test]
    fn conjecture_derivative_consistency() {
        let spec = ones_tensor_spec(3.0, 1.0, ConjectureVariant::L1);
        let t = 1.0;
        let h = 1e-5;
        let fd = (conjecture_eval(t + h, &spec, 0).unwrap()
            - conjecture_eval(t - h, &spec, 0).unwrap())
            / (2.0 * h);
        assert_relative_eq!(conjecture_eval(t, &spec, 1).unwrap(), fd, max_relative = 1e-7);

        let spec = ones_tensor_spec(3.0, 1.0, ConjectureVariant::R2);
        let fd = (conjecture_eval(t + h, &spec, 0).unwrap()
            - conjecture_eval(t - h, &spec, 0).unwrap())
            / (2.0 * h);
        assert_relative_eq!(conjecture_eval(t, &spec, 1).unwrap(), fd, max_relative = 1e-7);
        assert!(conjecture_eval(t, &spec, 7).is_err());
    }

    #[test]
    fn conjecture_r_variants_vanish_at_zero() {
        let spec = ones_tensor_spec(3.0, 1.0, ConjectureVariant::R1);
        assert!(conjecture_eval(1e-9, &spec, 0).unwrap().abs() < 1e-6);
    }

    #[test]
    fn spec_json_shapes() {
        let spec: RatioSpec =
            serde_json::from_str(r#"{"lambda": [[1.0, 2.0]], "rho": 2.0, "theta": 0.0}"#)
                .unwrap();
        spec.validate().unwrap();
        assert!(serde_json::from_str::<RatioSpec>(
            r#"{"lambda": [[1.0]], "rho": 2.0, "theta": 0.0, "extra": 1}"#
        )
        .is_err());

        let spec: ConjectureSpec = serde_json::from_str(
            r#"{"lambda3": [[[1.0], [2.0]]], "rho": 3.0, "theta": 1.0, "variant": "L1"}"#,
        )
        .unwrap();
        spec.validate().unwrap();
        assert_eq!(spec.variant, ConjectureVariant::L1);
        assert_eq!("R2".parse::<ConjectureVariant>().unwrap(), ConjectureVariant::R2);
        assert!("Q7".parse::<ConjectureVariant>().is_err());
    }
}
