//! Grid-based property checkers with witness reporting.
//!
//! Every checker walks an explicit [`GridSpec`], applies a tolerance of
//! the form `tol_abs + tol_rel * scale` with a scale visible in the
//! report, and returns a [`CheckReport`] whose `passed` flag is true
//! exactly when no witness was collected. Checkers never decide what to
//! do about a failure; callers (suites, tests, the CLI) do.

use serde::{Deserialize, Serialize};

use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Spacing {
    Log,
    Linear,
}

/// Evaluation grid plus the tolerances used against it.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GridSpec {
    pub lo: f64,
    pub hi: f64,
    pub points: usize,
    pub spacing: Spacing,
    pub tol_rel: f64,
    pub tol_abs: f64,
}

impl GridSpec {
    pub fn log(lo: f64, hi: f64, points: usize) -> Result<Self> {
        let g = GridSpec {
            lo,
            hi,
            points,
            spacing: Spacing::Log,
            tol_rel: 1e-9,
            tol_abs: 1e-12,
        };
        g.validate()?;
        Ok(g)
    }

    pub fn linear(lo: f64, hi: f64, points: usize) -> Result<Self> {
        let g = GridSpec {
            spacing: Spacing::Linear,
            ..GridSpec::log(lo, hi, points)?
        };
        g.validate()?;
        Ok(g)
    }

    pub fn with_tols(mut self, tol_rel: f64, tol_abs: f64) -> Self {
        self.tol_rel = tol_rel;
        self.tol_abs = tol_abs;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.lo.is_finite() && self.hi.is_finite()) || self.lo <= 0.0 || self.lo >= self.hi {
            return Err(Error::InvalidInput(format!(
                "grid requires 0 < lo < hi, got [{}, {}]",
                self.lo, self.hi
            )));
        }
        if self.points < 3 {
            return Err(Error::InvalidInput(format!(
                "grid requires at least 3 points, got {}",
                self.points
            )));
        }
        if !(self.tol_rel > 0.0 && self.tol_abs > 0.0) {
            return Err(Error::InvalidInput(
                "grid tolerances must be positive".into(),
            ));
        }
        Ok(())
    }

    /// Grid abscissas; both endpoints are hit exactly.
    pub fn abscissas(&self) -> Vec<f64> {
        let n = self.points;
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            let frac = i as f64 / (n - 1) as f64;
            let t = match self.spacing {
                Spacing::Log => (self.lo.ln() + frac * (self.hi.ln() - self.lo.ln())).exp(),
                Spacing::Linear => self.lo + frac * (self.hi - self.lo),
            };
            out.push(t);
        }
        out[0] = self.lo;
        out[n - 1] = self.hi;
        out
    }
}

/// One tolerance violation: where, what was observed, what was allowed.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Witness {
    pub abscissa: f64,
    pub observed: f64,
    pub threshold: f64,
}

/// Outcome of one property check over one grid.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckReport {
    pub property_id: String,
    pub passed: bool,
    pub checked_points: usize,
    pub witnesses: Vec<Witness>,
}

impl CheckReport {
    fn new(property_id: &str, checked_points: usize, witnesses: Vec<Witness>) -> Self {
        CheckReport {
            property_id: property_id.to_string(),
            passed: witnesses.is_empty(),
            checked_points,
            witnesses,
        }
    }
}

/// Checks the alternating-sign pattern `(-1)^k f^(k)(t) >= -tol` for
/// k = 0..=max_order, the defining inequality of complete monotonicity.
pub fn check_sign_pattern<F>(
    property_id: &str,
    derivs: F,
    max_order: u32,
    grid: &GridSpec,
) -> Result<CheckReport>
where
    F: Fn(f64, u32) -> Result<f64>,
{
    grid.validate()?;
    let mut witnesses = Vec::new();
    let mut checked = 0usize;
    for t in grid.abscissas() {
        for k in 0..=max_order {
            let v = derivs(t, k)?;
            let signed = if k % 2 == 0 { v } else { -v };
            let threshold = -(grid.tol_abs + grid.tol_rel * v.abs());
            checked += 1;
            if signed < threshold {
                witnesses.push(Witness {
                    abscissa: t,
                    observed: signed,
                    threshold,
                });
            }
        }
    }
    Ok(CheckReport::new(property_id, checked, witnesses))
}

/// Checks midpoint convexity via non-uniform three-point second
/// differences, which stay correct on log-spaced grids.
pub fn check_convex<F>(property_id: &str, f: F, grid: &GridSpec) -> Result<CheckReport>
where
    F: Fn(f64) -> Result<f64>,
{
    grid.validate()?;
    let ts = grid.abscissas();
    let vals: Vec<f64> = ts.iter().map(|&t| f(t)).collect::<Result<_>>()?;
    let mut witnesses = Vec::new();
    let mut checked = 0usize;
    for i in 1..ts.len() - 1 {
        let (a, b, c) = (ts[i - 1], ts[i], ts[i + 1]);
        let (fa, fb, fc) = (vals[i - 1], vals[i], vals[i + 1]);
        let wa = 2.0 / ((b - a) * (c - a));
        let wb = 2.0 / ((c - b) * (b - a));
        let wc = 2.0 / ((c - b) * (c - a));
        let d2 = wa * fa - wb * fb + wc * fc;
        let scale = (wa * fa).abs() + (wb * fb).abs() + (wc * fc).abs();
        let threshold = -(grid.tol_abs + grid.tol_rel * scale);
        checked += 1;
        if d2 < threshold {
            witnesses.push(Witness {
                abscissa: b,
                observed: d2,
                threshold,
            });
        }
    }
    Ok(CheckReport::new(property_id, checked, witnesses))
}

/// Checks `f(nu * t) <= nu * f(t) + tol` for each `nu` in (0, 1],
/// star-shapedness of f with respect to the origin.
pub fn check_star_shaped<F>(
    property_id: &str,
    f: F,
    grid: &GridSpec,
    nus: &[f64],
) -> Result<CheckReport>
where
    F: Fn(f64) -> Result<f64>,
{
    grid.validate()?;
    for &nu in nus {
        if !(nu > 0.0 && nu <= 1.0) {
            return Err(Error::InvalidInput(format!(
                "star-shape factors must lie in (0, 1], got {nu}"
            )));
        }
    }
    let mut witnesses = Vec::new();
    let mut checked = 0usize;
    for t in grid.abscissas() {
        for &nu in nus {
            let lhs = f(nu * t)?;
            let rhs = nu * f(t)?;
            let tol = grid.tol_abs + grid.tol_rel * lhs.abs().max(rhs.abs());
            checked += 1;
            if lhs - rhs > tol {
                witnesses.push(Witness {
                    abscissa: t,
                    observed: lhs - rhs,
                    threshold: tol,
                });
            }
        }
    }
    Ok(CheckReport::new(property_id, checked, witnesses))
}

/// Checks `f(s + t) >= f(s) + f(t) - tol` over explicit sample pairs.
/// The grid supplies only the tolerances.
pub fn check_superadditive<F>(
    property_id: &str,
    f: F,
    grid: &GridSpec,
    pairs: &[(f64, f64)],
) -> Result<CheckReport>
where
    F: Fn(f64) -> Result<f64>,
{
    grid.validate()?;
    let mut witnesses = Vec::new();
    let mut checked = 0usize;
    for &(s, t) in pairs {
        let fs = f(s)?;
        let ft = f(t)?;
        let fst = f(s + t)?;
        let gap = fst - fs - ft;
        let tol = grid.tol_abs + grid.tol_rel * (fs.abs() + ft.abs() + fst.abs());
        checked += 1;
        if gap < -tol {
            witnesses.push(Witness {
                abscissa: s + t,
                observed: gap,
                threshold: -tol,
            });
        }
    }
    Ok(CheckReport::new(property_id, checked, witnesses))
}

/// Checks that both endpoint-anchored divided-difference ratios
/// `(U(t) - U(a))/(V(t) - V(a))` and `(U(t) - U(b))/(V(t) - V(b))`
/// move monotonically along the grid. `decreasing` carries the caller's
/// hypothesis about U'/V'; with `decreasing = false` the expected
/// direction flips. Points where a denominator falls below `tol_abs`
/// are skipped (they do not enter `checked_points`).
pub fn check_ratio_monotone<U, V>(
    property_id: &str,
    u: U,
    v: V,
    a: f64,
    b: f64,
    decreasing: bool,
    grid: &GridSpec,
) -> Result<CheckReport>
where
    U: Fn(f64) -> Result<f64>,
    V: Fn(f64) -> Result<f64>,
{
    grid.validate()?;
    if !(a < b) {
        return Err(Error::InvalidInput(format!(
            "ratio check needs a < b, got a={a}, b={b}"
        )));
    }
    let ua = u(a)?;
    let va = v(a)?;
    let ub = u(b)?;
    let vb = v(b)?;
    let mut witnesses = Vec::new();
    let mut checked = 0usize;

    for (u0, v0, anchor) in [(ua, va, a), (ub, vb, b)] {
        let mut prev: Option<f64> = None;
        for t in grid.abscissas() {
            if t <= a || t >= b || t == anchor {
                continue;
            }
            let dv = v(t)? - v0;
            if dv.abs() < grid.tol_abs {
                continue; // denominator too close to the anchor value
            }
            let r = (u(t)? - u0) / dv;
            if let Some(rp) = prev {
                let step = r - rp;
                let tol = grid.tol_abs + grid.tol_rel * (r.abs() + rp.abs());
                checked += 1;
                let bad = if decreasing { step > tol } else { step < -tol };
                if bad {
                    witnesses.push(Witness {
                        abscissa: t,
                        observed: step,
                        threshold: if decreasing { tol } else { -tol },
                    });
                }
            }
            prev = Some(r);
        }
    }
    Ok(CheckReport::new(property_id, checked, witnesses))
}

/// Counts strict sign alternations of f along the grid and returns the
/// bracketing intervals. Values with |f| < tol_abs inherit the sign of
/// the nearest non-tiny neighbor (ties resolve rightward); if every
/// value is tiny the count is zero.
pub fn count_sign_changes<F>(f: F, grid: &GridSpec) -> Result<(usize, Vec<(f64, f64)>)>
where
    F: Fn(f64) -> Result<f64>,
{
    grid.validate()?;
    let ts = grid.abscissas();
    let vals: Vec<f64> = ts.iter().map(|&t| f(t)).collect::<Result<_>>()?;
    let raw: Vec<i8> = vals
        .iter()
        .map(|&v| {
            if v.abs() < grid.tol_abs {
                0
            } else if v > 0.0 {
                1
            } else {
                -1
            }
        })
        .collect();
    if raw.iter().all(|&s| s == 0) {
        return Ok((0, Vec::new()));
    }
    let n = raw.len();
    let mut signs = raw.clone();
    for i in 0..n {
        if raw[i] != 0 {
            continue;
        }
        let mut best: Option<(usize, i8)> = None;
        for (j, &s) in raw.iter().enumerate() {
            if s == 0 {
                continue;
            }
            let d = usize::abs_diff(i, j);
            let better = match best {
                None => true,
                // strict: on a tie the rightward neighbor (larger j) wins
                Some((bd, _)) => d < bd || (d == bd && j > i),
            };
            if better {
                best = Some((d, s));
            }
        }
        signs[i] = best.expect("at least one non-tiny value exists").1;
    }
    let mut count = 0usize;
    let mut brackets = Vec::new();
    for i in 1..n {
        if signs[i] != signs[i - 1] {
            count += 1;
            brackets.push((ts[i - 1], ts[i]));
        }
    }
    Ok((count, brackets))
}
