//! Margin evaluators for the exponential-sum inequalities over positive
//! weight lists, matrices, and rank-3 tensors, plus a seeded randomized
//! sweep harness that hunts for violations and maps empirical
//! (alpha, rho) frontiers.
//!
//! Every inequality here compares sums of terms `v^e / (e^(x/v) - 1)`
//! built from a weight array and its marginal sums. Two exponent
//! conventions coexist and are documented per function: the split
//! inequality over a flat list uses the exponent `alpha` directly, while
//! the matrix/tensor inequalities weight by `alpha - 1` (their `alpha`
//! is the classical parameter with validity threshold `alpha >= 1`).
//!
//! A margin is `lhs - rhs`; nonnegative margins certify the inequality
//! at that sample. The sweep records a violation only when the relative
//! margin stays below `-VIOLATION_TOL` after a compensated-summation
//! re-evaluation, so accumulation rounding cannot masquerade as a
//! counterexample.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::rng::SampleStream;
use crate::specfun::recip_expm1_unchecked;
use crate::{Error, Result, ABS_FLOOR};

/// Relative-margin threshold below which a sample counts as a violation.
pub const VIOLATION_TOL: f64 = 1e-9;

fn check_x(x: f64) -> Result<()> {
    if !x.is_finite() || x <= 0.0 {
        return Err(Error::Domain(format!("x must be finite and > 0, got {x}")));
    }
    Ok(())
}

fn check_finite(name: &str, v: f64) -> Result<()> {
    if !v.is_finite() {
        return Err(Error::Domain(format!("{name} must be finite, got {v}")));
    }
    Ok(())
}

fn check_weights(name: &str, vals: &[f64]) -> Result<()> {
    if vals.is_empty() {
        return Err(Error::InvalidInput(format!("{name} must be nonempty")));
    }
    for (i, &v) in vals.iter().enumerate() {
        if !v.is_finite() || v <= 0.0 {
            return Err(Error::Domain(format!(
                "{name}[{i}] must be finite and > 0, got {v}"
            )));
        }
    }
    Ok(())
}

/// One exponential-sum term, `v^expo / (e^(x/v) - 1)`.
fn term(v: f64, x: f64, expo: f64) -> f64 {
    v.powf(expo) * recip_expm1_unchecked(x / v)
}

/// Plain or Neumaier-compensated sum; the compensated path backs the
/// violation re-evaluation.
fn sum_terms<I: IntoIterator<Item = f64>>(it: I, compensated: bool) -> f64 {
    if compensated {
        let mut sum = 0.0f64;
        let mut comp = 0.0f64;
        for v in it {
            let t = sum + v;
            if sum.abs() >= v.abs() {
                comp += (sum - t) + v;
            } else {
                comp += (v - t) + sum;
            }
            sum = t;
        }
        sum + comp
    } else {
        let mut sum = 0.0f64;
        for v in it {
            sum += v;
        }
        sum
    }
}

/// Signed gap between the two sides of one inequality instance.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Margin {
    pub lhs: f64,
    pub rhs: f64,
    /// lhs - rhs; nonnegative certifies the inequality at this sample.
    pub margin: f64,
    /// margin / max(|lhs|, |rhs|, ABS_FLOOR).
    pub relative_margin: f64,
}

impl Margin {
    fn new(lhs: f64, rhs: f64) -> Margin {
        let margin = lhs - rhs;
        let scale = lhs.abs().max(rhs.abs()).max(ABS_FLOOR);
        Margin {
            lhs,
            rhs,
            margin,
            relative_margin: margin / scale,
        }
    }
}

/// Positive weight matrix; row sums (`nu`) and column sums (`tau`) are
/// recomputed on demand, never stored.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LambdaMatrix {
    pub lambda: Vec<Vec<f64>>,
}

impl LambdaMatrix {
    pub fn new(lambda: Vec<Vec<f64>>) -> Result<LambdaMatrix> {
        let lm = LambdaMatrix { lambda };
        lm.validate()?;
        Ok(lm)
    }

    pub fn validate(&self) -> Result<()> {
        if self.lambda.is_empty() || self.lambda[0].is_empty() {
            return Err(Error::InvalidInput("matrix must be nonempty".into()));
        }
        let n = self.lambda[0].len();
        for (i, row) in self.lambda.iter().enumerate() {
            if row.len() != n {
                return Err(Error::InvalidInput(format!(
                    "ragged matrix: row {i} has {} entries, row 0 has {n}",
                    row.len()
                )));
            }
            check_weights(&format!("lambda[{i}]"), row)?;
        }
        Ok(())
    }

    pub fn dims(&self) -> (usize, usize) {
        (self.lambda.len(), self.lambda[0].len())
    }

    /// Row sums.
    pub fn nu(&self) -> Vec<f64> {
        self.lambda.iter().map(|r| r.iter().sum()).collect()
    }

    /// Column sums.
    pub fn tau(&self) -> Vec<f64> {
        let (_, n) = self.dims();
        let mut out = vec![0.0; n];
        for row in &self.lambda {
            for (j, &v) in row.iter().enumerate() {
                out[j] += v;
            }
        }
        out
    }

    /// Grand total accumulated along rows and along columns; the pair
    /// must agree to rel 1e-14 for any valid matrix.
    pub fn grand_totals(&self) -> (f64, f64) {
        (self.nu().iter().sum(), self.tau().iter().sum())
    }

    pub fn transpose(&self) -> LambdaMatrix {
        let (m, n) = self.dims();
        let mut out = vec![vec![0.0; m]; n];
        for (i, row) in self.lambda.iter().enumerate() {
            for (j, &v) in row.iter().enumerate() {
                out[j][i] = v;
            }
        }
        LambdaMatrix { lambda: out }
    }
}

/// Positive weight tensor indexed `lambda3[i][j][k]` with shape l*m*n.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LambdaTensor {
    pub lambda3: Vec<Vec<Vec<f64>>>,
}

impl LambdaTensor {
    pub fn new(lambda3: Vec<Vec<Vec<f64>>>) -> Result<LambdaTensor> {
        let lt = LambdaTensor { lambda3 };
        lt.validate()?;
        Ok(lt)
    }

    pub fn validate(&self) -> Result<()> {
        if self.lambda3.is_empty() || self.lambda3[0].is_empty() || self.lambda3[0][0].is_empty()
        {
            return Err(Error::InvalidInput("tensor must be nonempty".into()));
        }
        let (m, n) = (self.lambda3[0].len(), self.lambda3[0][0].len());
        for (i, slab) in self.lambda3.iter().enumerate() {
            if slab.len() != m {
                return Err(Error::InvalidInput(format!(
                    "ragged tensor: slab {i} has {} rows, slab 0 has {m}",
                    slab.len()
                )));
            }
            for (j, row) in slab.iter().enumerate() {
                if row.len() != n {
                    return Err(Error::InvalidInput(format!(
                        "ragged tensor: row [{i}][{j}] has {} entries, expected {n}",
                        row.len()
                    )));
                }
                check_weights(&format!("lambda3[{i}][{j}]"), row)?;
            }
        }
        Ok(())
    }

    pub fn dims(&self) -> (usize, usize, usize) {
        (
            self.lambda3.len(),
            self.lambda3[0].len(),
            self.lambda3[0][0].len(),
        )
    }

    /// Sums over exactly one axis; the surviving two indices are
    /// flattened row-major.
    pub fn collapse_one(&self, axis: usize) -> Result<Vec<f64>> {
        let (l, m, n) = self.dims();
        let mut out = match axis {
            0 => vec![0.0; m * n],
            1 => vec![0.0; l * n],
            2 => vec![0.0; l * m],
            _ => return Err(Error::InvalidInput(format!("axis must be 0..3, got {axis}"))),
        };
        for (i, slab) in self.lambda3.iter().enumerate() {
            for (j, row) in slab.iter().enumerate() {
                for (k, &v) in row.iter().enumerate() {
                    match axis {
                        0 => out[j * n + k] += v,
                        1 => out[i * n + k] += v,
                        _ => out[i * m + j] += v,
                    }
                }
            }
        }
        Ok(out)
    }

    /// Sums over the two axes other than `kept`.
    pub fn collapse_two(&self, kept: usize) -> Result<Vec<f64>> {
        let (l, m, n) = self.dims();
        let mut out = match kept {
            0 => vec![0.0; l],
            1 => vec![0.0; m],
            2 => vec![0.0; n],
            _ => return Err(Error::InvalidInput(format!("axis must be 0..3, got {kept}"))),
        };
        for (i, slab) in self.lambda3.iter().enumerate() {
            for (j, row) in slab.iter().enumerate() {
                for (k, &v) in row.iter().enumerate() {
                    match kept {
                        0 => out[i] += v,
                        1 => out[j] += v,
                        _ => out[k] += v,
                    }
                }
            }
        }
        Ok(out)
    }
}

fn sum_split_sides(x: f64, lambdas: &[f64], alpha: f64, comp: bool) -> (f64, f64) {
    let total: f64 = sum_terms(lambdas.iter().copied(), comp);
    let lhs = term(total, x, alpha);
    let rhs = sum_terms(lambdas.iter().map(|&l| term(l, x, alpha)), comp);
    (lhs, rhs)
}

/// Split inequality over a flat weight list: compares
/// `(sum lambda)^alpha / (e^(x/sum) - 1)` against
/// `sum_k lambda_k^alpha / (e^(x/lambda_k) - 1)`.
///
/// `alpha` is the exponent itself: 0 gives the plain reciprocal form,
/// 2 the squared-weight form. Holds with nonnegative margin for
/// alpha in [0, 2] at least; the largest valid range is exactly what
/// the sweep harness explores.
pub fn margin_sum_split(x: f64, lambdas: &[f64], alpha: f64) -> Result<Margin> {
    check_x(x)?;
    check_finite("alpha", alpha)?;
    check_weights("lambdas", lambdas)?;
    let (lhs, rhs) = sum_split_sides(x, lambdas, alpha, false);
    Ok(Margin::new(lhs, rhs))
}

fn matrix_sides(x: f64, lm: &LambdaMatrix, alpha: f64, rho: f64, comp: bool) -> (f64, f64) {
    let e = alpha - 1.0;
    let nu = lm.nu();
    let tau = lm.tau();
    let lhs = sum_terms(
        nu.iter().chain(tau.iter()).map(|&v| term(v, x, e)),
        comp,
    );
    let rhs = rho
        * sum_terms(
            lm.lambda.iter().flatten().map(|&v| term(v, x, e)),
            comp,
        );
    (lhs, rhs)
}

/// Two-index inequality: row-sum terms plus column-sum terms against
/// `rho` times the sum of entrywise terms, all with weight exponent
/// `alpha - 1`. Guaranteed nonnegative for alpha >= 1, rho <= 2.
pub fn margin_matrix(x: f64, lm: &LambdaMatrix, alpha: f64, rho: f64) -> Result<Margin> {
    check_x(x)?;
    check_finite("alpha", alpha)?;
    check_finite("rho", rho)?;
    lm.validate()?;
    let (lhs, rhs) = matrix_sides(x, lm, alpha, rho, false);
    Ok(Margin::new(lhs, rhs))
}

fn tensor_sides(x: f64, lt: &LambdaTensor, alpha: f64, one_axis: bool, comp: bool) -> Result<(f64, f64)> {
    let e = alpha - 1.0;
    let mut lhs_terms: Vec<f64> = Vec::new();
    for axis in 0..3 {
        let sums = if one_axis {
            lt.collapse_one(axis)?
        } else {
            lt.collapse_two(axis)?
        };
        lhs_terms.extend(sums.iter().map(|&v| term(v, x, e)));
    }
    let lhs = sum_terms(lhs_terms, comp);
    let rhs = 3.0
        * sum_terms(
            lt.lambda3
                .iter()
                .flatten()
                .flatten()
                .map(|&v| term(v, x, e)),
            comp,
        );
    Ok((lhs, rhs))
}

/// Three-index inequality, partial-sum form: the three families of
/// single-axis sums (each a two-index array) against 3 times the
/// entrywise sum, weight exponent `alpha - 1`. Nonnegative for
/// alpha >= 1.
pub fn margin_tensor_2to1(x: f64, lt: &LambdaTensor, alpha: f64) -> Result<Margin> {
    check_x(x)?;
    check_finite("alpha", alpha)?;
    lt.validate()?;
    let (lhs, rhs) = tensor_sides(x, lt, alpha, true, false)?;
    Ok(Margin::new(lhs, rhs))
}

/// Three-index inequality, aggregate form: the three families of
/// double-axis sums (each a vector) against 3 times the entrywise sum,
/// weight exponent `alpha - 1`. Nonnegative for alpha >= 1.
pub fn margin_tensor_1to2(x: f64, lt: &LambdaTensor, alpha: f64) -> Result<Margin> {
    check_x(x)?;
    check_finite("alpha", alpha)?;
    lt.validate()?;
    let (lhs, rhs) = tensor_sides(x, lt, alpha, false, false)?;
    Ok(Margin::new(lhs, rhs))
}

/// Degenerate-limit consistency check. Builds the square matrix whose
/// first row and first column both equal `lm_base` with `eps`
/// everywhere else, and returns
///
/// - the two-index margin of that matrix at the given alpha and rho = 2,
/// - twice the split margin of `lm_base` at exponent `alpha - 1`,
///
/// which is the exact eps -> 0 limit of the first component (the base
/// row and base column each contribute one copy of the split inequality
/// while the eps block vanishes faster than any power). The two margins
/// converge toward each other as eps shrinks.
pub fn reduction_check(
    lm_base: &[f64],
    eps: f64,
    x: f64,
    alpha: f64,
) -> Result<(Margin, Margin)> {
    check_x(x)?;
    check_finite("alpha", alpha)?;
    check_weights("lm_base", lm_base)?;
    if !(eps > 0.0 && eps <= 1e-3) {
        return Err(Error::Precondition(format!(
            "eps must lie in (0, 1e-3], got {eps}"
        )));
    }
    let n = lm_base.len();
    let mut entries = vec![vec![eps; n]; n];
    for k in 0..n {
        entries[0][k] = lm_base[k];
        entries[k][0] = lm_base[k];
    }
    let lm = LambdaMatrix::new(entries)?;
    let matrix_margin = margin_matrix(x, &lm, alpha, 2.0)?;
    let (lhs, rhs) = sum_split_sides(x, lm_base, alpha - 1.0, false);
    let doubled_split = Margin::new(2.0 * lhs, 2.0 * rhs);
    Ok((matrix_margin, doubled_split))
}

/// Which inequality a sweep samples.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum IneqId {
    #[serde(rename = "sum_split")]
    SumSplit,
    #[serde(rename = "matrix")]
    Matrix,
    #[serde(rename = "tensor_2to1")]
    Tensor2to1,
    #[serde(rename = "tensor_1to2")]
    Tensor1to2,
}

impl IneqId {
    pub const ALL: [IneqId; 4] = [
        IneqId::SumSplit,
        IneqId::Matrix,
        IneqId::Tensor2to1,
        IneqId::Tensor1to2,
    ];

    pub fn name(self) -> &'static str {
        match self {
            IneqId::SumSplit => "sum_split",
            IneqId::Matrix => "matrix",
            IneqId::Tensor2to1 => "tensor_2to1",
            IneqId::Tensor1to2 => "tensor_1to2",
        }
    }
}

impl fmt::Display for IneqId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for IneqId {
    type Err = Error;
    fn from_str(s: &str) -> Result<IneqId> {
        IneqId::ALL
            .into_iter()
            .find(|id| id.name() == s)
            .ok_or_else(|| {
                Error::InvalidInput(format!(
                    "unknown inequality id {s:?}; expected one of sum_split, matrix, tensor_2to1, tensor_1to2"
                ))
            })
    }
}

/// Configuration of one randomized sweep.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepConfig {
    pub ineq_id: IneqId,
    /// (l, m, n); sum_split uses n, matrix uses (m, n), tensors use all.
    pub dims: (usize, usize, usize),
    pub samples: u64,
    pub seed: u64,
    pub alpha: f64,
    /// Factor on the entrywise side; only the matrix inequality reads it.
    pub rho: f64,
    /// Log-uniform sampling range for the weights.
    pub lambda_range: (f64, f64),
    /// Log-uniform sampling range for x.
    pub x_range: (f64, f64),
}

impl SweepConfig {
    pub fn validate(&self) -> Result<()> {
        if self.samples == 0 {
            return Err(Error::InvalidInput("samples must be >= 1".into()));
        }
        check_finite("alpha", self.alpha)?;
        check_finite("rho", self.rho)?;
        for (name, (lo, hi)) in [
            ("lambda_range", self.lambda_range),
            ("x_range", self.x_range),
        ] {
            if !(lo.is_finite() && hi.is_finite() && 0.0 < lo && lo < hi) {
                return Err(Error::InvalidInput(format!(
                    "{name} must satisfy 0 < lo < hi, got ({lo}, {hi})"
                )));
            }
        }
        let (l, m, n) = self.dims;
        let needed: &[usize] = match self.ineq_id {
            IneqId::SumSplit => &[n],
            IneqId::Matrix => &[m, n],
            IneqId::Tensor2to1 | IneqId::Tensor1to2 => &[l, m, n],
        };
        if needed.contains(&0) {
            return Err(Error::InvalidInput(format!(
                "dims {:?} has a zero in a position {} requires",
                self.dims, self.ineq_id
            )));
        }
        if needed.iter().product::<usize>() > 1 << 20 {
            return Err(Error::InvalidInput(format!(
                "dims {:?} asks for more than 2^20 weights per sample",
                self.dims
            )));
        }
        Ok(())
    }

    fn entry_count(&self) -> usize {
        let (l, m, n) = self.dims;
        match self.ineq_id {
            IneqId::SumSplit => n,
            IneqId::Matrix => m * n,
            IneqId::Tensor2to1 | IneqId::Tensor1to2 => l * m * n,
        }
    }
}

/// One recorded counterexample candidate; rebuildable from
/// (config.seed, sample_index) alone.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Violation {
    pub sample_index: u64,
    pub x: f64,
    /// Weights in draw order (row-major; innermost index fastest).
    pub lambdas: Vec<f64>,
    pub margin: Margin,
}

/// (alpha, rho) cell of a frontier exploration.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FrontierPoint {
    pub alpha: f64,
    pub rho: f64,
    pub worst_relative_margin: f64,
}

/// Outcome of a sweep or frontier run.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepReport {
    pub violations: Vec<Violation>,
    pub min_relative_margin: f64,
    pub samples_run: u64,
    pub frontier_points: Vec<FrontierPoint>,
}

/// Draws sample `index`: x first, then the weights in row-major order
/// (innermost index fastest), all log-uniform. The draw depends only on
/// (seed, index), never on loop history.
fn draw_sample(config: &SweepConfig, index: u64) -> (f64, Vec<f64>) {
    let mut stream = SampleStream::new(config.seed, index);
    let x = stream.next_log_uniform(config.x_range.0, config.x_range.1);
    let lambdas = (0..config.entry_count())
        .map(|_| stream.next_log_uniform(config.lambda_range.0, config.lambda_range.1))
        .collect();
    (x, lambdas)
}

fn margin_for_sample(
    config: &SweepConfig,
    x: f64,
    flat: &[f64],
    comp: bool,
) -> Result<Margin> {
    let (l, m, n) = config.dims;
    let (lhs, rhs) = match config.ineq_id {
        IneqId::SumSplit => sum_split_sides(x, flat, config.alpha, comp),
        IneqId::Matrix => {
            let lambda: Vec<Vec<f64>> =
                (0..m).map(|i| flat[i * n..(i + 1) * n].to_vec()).collect();
            matrix_sides(x, &LambdaMatrix { lambda }, config.alpha, config.rho, comp)
        }
        IneqId::Tensor2to1 | IneqId::Tensor1to2 => {
            let lambda3: Vec<Vec<Vec<f64>>> = (0..l)
                .map(|i| {
                    (0..m)
                        .map(|j| {
                            let base = (i * m + j) * n;
                            flat[base..base + n].to_vec()
                        })
                        .collect()
                })
                .collect();
            tensor_sides(
                x,
                &LambdaTensor { lambda3 },
                config.alpha,
                config.ineq_id == IneqId::Tensor2to1,
                comp,
            )?
        }
    };
    Ok(Margin::new(lhs, rhs))
}

/// Runs `config.samples` independent draws and records every sample
/// whose relative margin stays below -VIOLATION_TOL after the
/// compensated re-evaluation. Reports are bit-identical across reruns
/// of the same config.
pub fn sweep(config: &SweepConfig) -> Result<SweepReport> {
    config.validate()?;
    let mut violations = Vec::new();
    let mut min_rel = f64::INFINITY;
    for index in 0..config.samples {
        let (x, flat) = draw_sample(config, index);
        let margin = margin_for_sample(config, x, &flat, false)?;
        min_rel = min_rel.min(margin.relative_margin);
        if margin.relative_margin < -VIOLATION_TOL {
            let rechecked = margin_for_sample(config, x, &flat, true)?;
            if rechecked.relative_margin < -VIOLATION_TOL {
                violations.push(Violation {
                    sample_index: index,
                    x,
                    lambdas: flat,
                    margin: rechecked,
                });
            }
        }
    }
    Ok(SweepReport {
        violations,
        min_relative_margin: min_rel,
        samples_run: config.samples,
        frontier_points: Vec::new(),
    })
}

/// Frontier exploration: reruns the sweep over the (alphas x rhos) grid
/// and records the worst relative margin per cell. Purely observational;
/// no violation records, no pass/fail claim (the valid parameter range
/// is an open problem).
pub fn frontier(config: &SweepConfig, alphas: &[f64], rhos: &[f64]) -> Result<SweepReport> {
    config.validate()?;
    if alphas.is_empty() || rhos.is_empty() {
        return Err(Error::InvalidInput(
            "frontier needs nonempty alpha and rho grids".into(),
        ));
    }
    for &v in alphas.iter().chain(rhos) {
        check_finite("frontier grid value", v)?;
    }
    let mut points = Vec::with_capacity(alphas.len() * rhos.len());
    let mut min_rel = f64::INFINITY;
    let mut cell = config.clone();
    for &alpha in alphas {
        for &rho in rhos {
            cell.alpha = alpha;
            cell.rho = rho;
            let mut worst = f64::INFINITY;
            for index in 0..cell.samples {
                let (x, flat) = draw_sample(&cell, index);
                let margin = margin_for_sample(&cell, x, &flat, false)?;
                worst = worst.min(margin.relative_margin);
            }
            min_rel = min_rel.min(worst);
            points.push(FrontierPoint {
                alpha,
                rho,
                worst_relative_margin: worst,
            });
        }
    }
    Ok(SweepReport {
        violations: Vec::new(),
        min_relative_margin: min_rel,
        samples_run: config.samples * (alphas.len() * rhos.len()) as u64,
        frontier_points: points,
    })
}
