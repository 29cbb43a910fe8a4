//! Numerical singularity analysis of the leaf-rooted tree series.
//!
//! `T_diamond` solves `y = F(x, y)` with
//! `F(x, y) = (x/2) (e^{3u} + e^{u} Q(x))`, `u = y + P(x)`,
//! `P(x) = sum_{k>=2} T_diamond(x^k)/k` and
//! `Q(x) = exp(sum_{k>=1} T_diamond(x^{2k})/k)`. Its dominant singularity
//! `rho` is the `x` of the solution of `y = F, 1 = F_y`; near it
//! `T_diamond = y0 - h0 X + O(X^2)` with `X = sqrt(1 - x/rho)`.

use nalgebra::{DMatrix, DVector};
use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::series::PowerSeries;
use crate::species::SeriesSystemSolution;

/// Tails `sum_k T(x^k)/k` stop once a term drops below this.
pub const TAIL_EPS: f64 = 1e-18;
/// Hard cap on the number of tail terms.
pub const DEFAULT_TAIL_CAP: usize = 200;

/// Natural log of a positive big integer, accurate to double precision.
pub fn ln_big(a: &BigInt) -> f64 {
    let bits = a.bits();
    let shift = bits.saturating_sub(60);
    let top: BigInt = a >> shift;
    top.to_f64().expect("60-bit value").ln() + shift as f64 * std::f64::consts::LN_2
}

/// Natural logs of the coefficients of an integer series (`None` for zeros).
pub fn ln_coeffs(s: &PowerSeries) -> Result<Vec<Option<f64>>> {
    s.coeffs()
        .iter()
        .map(|c| {
            if !c.is_integer() || c.is_negative() {
                return Err(Error::Numeric(
                    "expected non-negative integer coefficients".into(),
                ));
            }
            let a = c.to_integer();
            Ok((!a.is_zero()).then(|| ln_big(&a)))
        })
        .collect()
}

/// Value, first and second derivative of a truncated series at `0 < z < 1`.
fn eval3(ln_a: &[Option<f64>], z: f64) -> (f64, f64, f64) {
    let lz = z.ln();
    let (mut s0, mut s1, mut s2) = (0.0, 0.0, 0.0);
    for (n, la) in ln_a.iter().enumerate() {
        let Some(la) = la else { continue };
        let nf = n as f64;
        s0 += (la + nf * lz).exp();
        if n >= 1 {
            s1 += nf * (la + (nf - 1.0) * lz).exp();
        }
        if n >= 2 {
            s2 += nf * (nf - 1.0) * (la + (nf - 2.0) * lz).exp();
        }
    }
    (s0, s1, s2)
}

/// Truncated `T_diamond` prepared for repeated numerical evaluation.
#[derive(Clone, Debug)]
pub struct LeafSeries {
    ln_a: Vec<Option<f64>>,
    tail_cap: usize,
    tail_extra: usize,
}

/// `F` and the partial derivatives used by the saddle solve and the
/// expansion coefficients.
#[derive(Clone, Copy, Debug, Default, Serialize)]
pub struct Partials {
    pub f: f64,
    pub f_x: f64,
    pub f_y: f64,
    pub f_yy: f64,
    pub f_yyy: f64,
    pub f_yyyy: f64,
    pub f_xy: f64,
    pub f_xx: f64,
    pub f_xyyy: f64,
    /// Largest `k` used in the tails.
    pub tail_terms: usize,
}

impl LeafSeries {
    pub fn new(sol: &SeriesSystemSolution) -> Result<Self> {
        Self::from_series(&sol.t_diamond, DEFAULT_TAIL_CAP)
    }

    pub fn from_series(t_diamond: &PowerSeries, tail_cap: usize) -> Result<Self> {
        Ok(LeafSeries {
            ln_a: ln_coeffs(t_diamond)?,
            tail_cap,
            tail_extra: 0,
        })
    }

    /// Keep summing `extra` tail terms past the point where they become
    /// negligible.
    pub fn with_tail_extra(mut self, extra: usize) -> Self {
        self.tail_extra = extra;
        self
    }

    pub fn order(&self) -> usize {
        self.ln_a.len() - 1
    }

    /// Returns `(P, P', P'', R, R', R'', terms)` with
    /// `R = sum_{k>=1} T(x^{2k})/k`.
    fn tails(&self, x: f64) -> Result<([f64; 6], usize)> {
        let mut out = [0.0; 6];
        // `done[i]` records when tail `i` became negligible
        let mut done: [Option<usize>; 2] = [None, None];
        for k in 1..=self.tail_cap + self.tail_extra {
            let kf = k as f64;
            let past = |d: Option<usize>| d.is_some_and(|d| k > d + self.tail_extra);
            if k >= 2 && !past(done[0]) {
                let (t0, t1, t2) = eval3(&self.ln_a, x.powi(k as i32));
                let term = t0 / kf;
                out[0] += term;
                out[1] += x.powi(k as i32 - 1) * t1;
                out[2] +=
                    (kf - 1.0) * x.powi(k as i32 - 2) * t1 + kf * x.powi(2 * k as i32 - 2) * t2;
                if term < TAIL_EPS && done[0].is_none() {
                    done[0] = Some(k);
                }
            }
            if !past(done[1]) {
                let (t0, t1, t2) = eval3(&self.ln_a, x.powi(2 * k as i32));
                let term = t0 / kf;
                out[3] += term;
                out[4] += 2.0 * x.powi(2 * k as i32 - 1) * t1;
                out[5] += 2.0 * (2.0 * kf - 1.0) * x.powi(2 * k as i32 - 2) * t1
                    + 4.0 * kf * x.powi(4 * k as i32 - 2) * t2;
                if term < TAIL_EPS && done[1].is_none() {
                    done[1] = Some(k);
                }
            }
            if let [Some(a), Some(b)] = done {
                if k >= a.max(b) + self.tail_extra {
                    return Ok((out, k));
                }
            }
        }
        Err(Error::Numeric(format!(
            "tails did not fall below {TAIL_EPS} within {} terms at x={x}",
            self.tail_cap
        )))
    }

    pub fn eval(&self, x: f64, y: f64) -> Result<Partials> {
        if !(x > 0.0 && x < 1.0) {
            return Err(Error::Numeric(format!("x={x} outside (0, 1)")));
        }
        let ([p, p1, p2, r, r1, r2], tail_terms) = self.tails(x)?;
        let q = r.exp();
        let q1 = r1 * q;
        let q2 = (r2 + r1 * r1) * q;
        let u = y + p;
        let e3 = (3.0 * u).exp();
        let e1 = u.exp();
        let g = |j: i32| 3f64.powi(j) * e3 + e1 * q;
        let gp = |j: i32| 3f64.powi(j) * 3.0 * p1 * e3 + e1 * (p1 * q + q1);
        let gpp = |j: i32| {
            3f64.powi(j) * (9.0 * p1 * p1 + 3.0 * p2) * e3
                + e1 * ((p1 * p1 + p2) * q + 2.0 * p1 * q1 + q2)
        };
        let h = x / 2.0;
        Ok(Partials {
            f: h * g(0),
            f_y: h * g(1),
            f_yy: h * g(2),
            f_yyy: h * g(3),
            f_yyyy: h * g(4),
            f_x: g(0) / 2.0 + h * gp(0),
            f_xy: g(1) / 2.0 + h * gp(1),
            f_xyyy: g(3) / 2.0 + h * gp(3),
            f_xx: gp(0) + h * gpp(0),
            tail_terms,
        })
    }

    /// `T_diamond(x)` below `rho`, as the smaller root of `y = F(x, y)`:
    /// fixed-point iteration from 0, then Newton polishing.
    pub fn solve_y(&self, x: f64) -> Result<f64> {
        let mut y = 0.0;
        for _ in 0..100_000 {
            let next = self.eval(x, y)?.f;
            if (next - y).abs() < 1e-15 {
                y = next;
                break;
            }
            y = next;
        }
        for _ in 0..50 {
            let d = self.eval(x, y)?;
            let step = (y - d.f) / (1.0 - d.f_y);
            if !step.is_finite() {
                break;
            }
            y -= step;
            if step.abs() < 1e-17 {
                break;
            }
        }
        Ok(y)
    }
}

/// `F` and its partials at `(x, y)` from the truncated solution.
pub fn eval_f(x: f64, y: f64, sol: &SeriesSystemSolution, tail_cap: usize) -> Result<Partials> {
    LeafSeries::from_series(&sol.t_diamond, tail_cap)?.eval(x, y)
}

#[derive(Clone, Copy, Debug, Serialize)]
pub struct SaddlePoint {
    pub x0: f64,
    pub y0: f64,
    pub tail_truncation: usize,
    /// `(y0 - F, 1 - F_y)` at the solution.
    pub residuals: (f64, f64),
    pub iterations: usize,
}

impl SaddlePoint {
    pub fn rho(&self) -> f64 {
        self.x0
    }
}

/// Damped Newton on `{y - F(x,y), 1 - F_y(x,y)}` from `(0.15, 0.4)`.
pub fn solve_saddle(sol: &SeriesSystemSolution, tol: f64) -> Result<SaddlePoint> {
    solve_saddle_from(&LeafSeries::new(sol)?, (0.15, 0.4), tol)
}

pub fn solve_saddle_from(leaf: &LeafSeries, start: (f64, f64), tol: f64) -> Result<SaddlePoint> {
    let residual = |x: f64, y: f64| -> Result<(f64, f64, Partials)> {
        let d = leaf.eval(x, y)?;
        Ok((y - d.f, 1.0 - d.f_y, d))
    };
    let (mut x, mut y) = start;
    let (mut r1, mut r2, mut d) = residual(x, y)?;
    for it in 0..200 {
        let norm = r1.hypot(r2);
        if norm < tol {
            return Ok(SaddlePoint {
                x0: x,
                y0: y,
                tail_truncation: d.tail_terms,
                residuals: (r1, r2),
                iterations: it,
            });
        }
        // Jacobian of (y - F, 1 - F_y) in (x, y)
        let (a, b, c, e) = (-d.f_x, 1.0 - d.f_y, -d.f_xy, -d.f_yy);
        let det = a * e - b * c;
        if det == 0.0 || !det.is_finite() {
            return Err(Error::Numeric(format!("singular Jacobian at x={x}, y={y}")));
        }
        let dx = (e * r1 - b * r2) / det;
        let dy = (-c * r1 + a * r2) / det;
        let mut lambda = 1.0;
        loop {
            let (nx, ny) = (x - lambda * dx, y - lambda * dy);
            if let Ok((nr1, nr2, nd)) = residual(nx, ny) {
                if nr1.hypot(nr2) < norm || lambda < 1e-6 {
                    (x, y, r1, r2, d) = (nx, ny, nr1, nr2, nd);
                    break;
                }
            }
            lambda /= 2.0;
            if lambda < 1e-9 {
                return Err(Error::Numeric(format!(
                    "Newton stalled at x={x}, y={y}, residual {norm:e}"
                )));
            }
        }
    }
    Err(Error::Numeric(format!(
        "Newton did not converge in 200 steps; last x={x}, y={y}"
    )))
}

#[derive(Clone, Copy, Debug, Serialize)]
pub struct ExpansionCoefficients {
    pub h0: f64,
    pub h1: f64,
    pub q1: f64,
}

/// `h0`, `h1`, `q1` from the closed-form expressions in the partials.
pub fn expansion_from_partials(rho: f64, d: &Partials) -> Result<ExpansionCoefficients> {
    if d.f_yy.abs() < 1e-300 {
        return Err(Error::Numeric("F_yy vanishes at the saddle point".into()));
    }
    let h0 = (2.0 * rho * d.f_x / d.f_yy).sqrt();
    if h0.is_nan() || h0 <= 0.0 {
        return Err(Error::Numeric(format!("h0 = {h0} is not positive")));
    }
    let h1 = (-d.f_yyy * h0 * h0 + 6.0 * d.f_xy * rho) / (6.0 * 2.0 * d.f_yy);
    let q1 = -(d.f_yyyy * h0.powi(4) - 12.0 * d.f_xyyy * h0 * h0 * rho
        + 12.0 * d.f_yyy * h1 * h0 * h0)
        / (24.0 * d.f_yy * h0)
        + (12.0 * d.f_xx * rho * rho - 24.0 * d.f_xy * h1 * rho + 12.0 * d.f_xx * h1 * h1)
            / (d.f_yy * h0);
    Ok(ExpansionCoefficients { h0, h1, q1 })
}

pub fn expansion_coeffs(
    sp: &SaddlePoint,
    sol: &SeriesSystemSolution,
) -> Result<ExpansionCoefficients> {
    let leaf = LeafSeries::new(sol)?;
    expansion_from_partials(sp.x0, &leaf.eval(sp.x0, sp.y0)?)
}

/// Comparison of the expansion with `T_diamond` evaluated just below `rho`.
#[derive(Clone, Debug, Serialize)]
pub struct BackSubstitution {
    /// `(eps, T_diamond(rho (1 - eps^2)), (T - y0 + h0 eps) / eps^2)`.
    pub samples: Vec<(f64, f64, f64)>,
    /// Least-squares coefficients of `X, X^2, X^3, X^4` in `T_diamond - y0`.
    pub fitted: [f64; 4],
    /// The fitted `X` coefficient equals `-h0` (relative 1e-4).
    pub h0_consistent: bool,
    /// The fitted `X^3` coefficient equals `-h1` (relative 1e-2).
    pub h1_consistent: bool,
    /// The fitted `X^2` coefficient equals `q1` (relative 1e-2).
    pub q1_consistent: bool,
}

pub fn back_substitution(
    sp: &SaddlePoint,
    sol: &SeriesSystemSolution,
    ex: &ExpansionCoefficients,
) -> Result<BackSubstitution> {
    let leaf = LeafSeries::new(sol)?;
    let rho = sp.x0;
    let mut samples = Vec::new();
    for eps in [0.05, 0.02] {
        let y = leaf.solve_y(rho * (1.0 - eps * eps))?;
        samples.push((eps, y, (y - sp.y0 + ex.h0 * eps) / (eps * eps)));
    }
    let fit_eps: Vec<f64> = (0..8).map(|i| 0.04 + 0.02 * i as f64).collect();
    let mut a = DMatrix::zeros(fit_eps.len(), 4);
    let mut b = DVector::zeros(fit_eps.len());
    for (i, &e) in fit_eps.iter().enumerate() {
        let y = leaf.solve_y(rho * (1.0 - e * e))?;
        for j in 0..4 {
            a[(i, j)] = e.powi(j as i32 + 1);
        }
        b[i] = y - sp.y0;
    }
    let coef = a
        .svd(true, true)
        .solve(&b, 1e-14)
        .map_err(|e| Error::Numeric(format!("least squares failed: {e}")))?;
    let fitted = [coef[0], coef[1], coef[2], coef[3]];
    let close = |a: f64, b: f64, rel: f64| (a - b).abs() <= rel * b.abs().max(1e-12);
    Ok(BackSubstitution {
        samples,
        fitted,
        h0_consistent: close(fitted[0], -ex.h0, 1e-4),
        h1_consistent: close(fitted[2], -ex.h1, 1e-2),
        q1_consistent: close(fitted[1], ex.q1, 1e-2),
    })
}

/// `c` in `[x^n] f ~ c n^{-alpha-1} rho^{-n}`.
#[derive(Clone, Debug, Serialize)]
pub struct AsymptoticEstimate {
    pub rho: f64,
    pub alpha: f64,
    pub c: f64,
    /// `c * Gamma(-alpha)`: the coefficient of `X^{2 alpha}` in the
    /// singular expansion.
    pub expansion_coefficient: f64,
    pub fit_window: (usize, usize),
    /// Spread of the extrapolations over 3 to 6 sample points, relative to `c`.
    pub spread: f64,
    /// Relative error bound: the larger of `spread` and `holdout_error`.
    pub tolerance: f64,
    /// Largest relative gap between `a_n` and the model with the fitted
    /// `1/n` corrections, over the window.
    pub holdout_error: f64,
}

/// Neville's algorithm: the interpolating polynomial through `(xs, ys)` at `x0`.
pub fn neville(xs: &[f64], ys: &[f64], x0: f64) -> f64 {
    let mut p = ys.to_vec();
    let n = xs.len();
    for k in 1..n {
        for i in 0..n - k {
            p[i] = ((x0 - xs[i + k]) * p[i] + (xs[i] - x0) * p[i + 1]) / (xs[i] - xs[i + k]);
        }
    }
    p[0]
}

fn normalised(ln_a: &[Option<f64>], n: usize, rho: f64, alpha: f64) -> Result<f64> {
    let la = ln_a[n].ok_or_else(|| Error::Numeric(format!("coefficient {n} is not positive")))?;
    Ok((la + (alpha + 1.0) * (n as f64).ln() + n as f64 * rho.ln()).exp())
}

/// Estimate `c` from `c_n = a_n n^{alpha+1} rho^n`, extrapolated in `1/n` to
/// `n = infinity` by polynomial (Richardson) extrapolation through equally
/// spaced points of the top half of the coefficient window.
pub fn estimate_constant(series: &PowerSeries, rho: f64, alpha: f64) -> Result<AsymptoticEstimate> {
    let ln_a = ln_coeffs(series)?;
    let n_max = series.order();
    if n_max < 12 {
        return Err(Error::Numeric("need at least 12 coefficients".into()));
    }
    let lo = n_max / 2;
    for n in lo..=n_max {
        normalised(&ln_a, n, rho, alpha)?;
    }
    let extrapolate = |m: usize| -> Result<f64> {
        let ns: Vec<usize> = (0..m).map(|i| lo + (n_max - lo) * i / (m - 1)).collect();
        let xs: Vec<f64> = ns.iter().map(|&n| 1.0 / n as f64).collect();
        let ys: Vec<f64> = ns
            .iter()
            .map(|&n| normalised(&ln_a, n, rho, alpha))
            .collect::<Result<_>>()?;
        Ok(neville(&xs, &ys, 0.0))
    };
    let c = extrapolate(5)?;
    let all: Vec<f64> = (3..=6).map(extrapolate).collect::<Result<_>>()?;
    let spread = (all.iter().cloned().fold(f64::MIN, f64::max)
        - all.iter().cloned().fold(f64::MAX, f64::min))
        / c.abs();
    // model c_n = c + d1/n + d2/n^2 fitted on the window, checked on every n
    let ns: Vec<usize> = (lo..=n_max).collect();
    let mut a = DMatrix::zeros(ns.len(), 2);
    let mut b = DVector::zeros(ns.len());
    for (i, &n) in ns.iter().enumerate() {
        let h = 1.0 / n as f64;
        a[(i, 0)] = h;
        a[(i, 1)] = h * h;
        b[i] = normalised(&ln_a, n, rho, alpha)? - c;
    }
    let coef = a
        .svd(true, true)
        .solve(&b, 1e-14)
        .map_err(|e| Error::Numeric(format!("least squares failed: {e}")))?;
    let mut holdout_error: f64 = 0.0;
    for (i, &n) in ns.iter().enumerate() {
        let h = 1.0 / n as f64;
        let model = c + coef[0] * h + coef[1] * h * h;
        holdout_error = holdout_error.max(((b[i] + c) / model - 1.0).abs());
    }
    Ok(AsymptoticEstimate {
        rho,
        alpha,
        c,
        expansion_coefficient: c * statrs::function::gamma::gamma(-alpha),
        fit_window: (lo, n_max),
        spread,
        tolerance: spread.max(holdout_error),
        holdout_error,
    })
}

/// Radius estimate from coefficient ratios: `a_n / a_{n-1}` is linear in
/// `1/n` to first order, so a straight-line fit over the top half of the
/// window extrapolates to `1/rho`.
pub fn ratio_radius(series: &PowerSeries) -> Result<f64> {
    let ln_a = ln_coeffs(series)?;
    let n_max = series.order();
    let lo = n_max / 2;
    let (mut sx, mut sy, mut sxx, mut sxy, mut k) = (0.0, 0.0, 0.0, 0.0, 0.0);
    for n in lo..=n_max {
        let (Some(a), Some(b)) = (ln_a[n], ln_a[n - 1]) else {
            return Err(Error::Numeric(format!("zero coefficient near {n}")));
        };
        let x = 1.0 / n as f64;
        let y = (a - b).exp();
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
        k += 1.0;
    }
    let slope = (k * sxy - sx * sy) / (k * sxx - sx * sx);
    let intercept = (sy - slope * sx) / k;
    Ok(1.0 / intercept)
}

/// Least-squares slope of `log(a_n rho^n)` against `log n` for `n` in `lo..=hi`.
pub fn log_slope(series: &PowerSeries, rho: f64, lo: usize, hi: usize) -> Result<f64> {
    let ln_a = ln_coeffs(series)?;
    let pts: Vec<(f64, f64)> = (lo..=hi)
        .map(|n| {
            ln_a[n]
                .map(|la| ((n as f64).ln(), la + n as f64 * rho.ln()))
                .ok_or_else(|| Error::Numeric(format!("coefficient {n} is zero")))
        })
        .collect::<Result<_>>()?;
    let k = pts.len() as f64;
    let (sx, sy) = pts.iter().fold((0.0, 0.0), |(a, b), p| (a + p.0, b + p.1));
    let (sxx, sxy) = pts
        .iter()
        .fold((0.0, 0.0), |(a, b), p| (a + p.0 * p.0, b + p.0 * p.1));
    Ok((k * sxy - sx * sy) / (k * sxx - sx * sx))
}

#[derive(Clone, Debug, Serialize)]
pub struct Z1Report {
    pub n: usize,
    pub rho: f64,
    /// `T_star(rho)`, extrapolated from the partial sums.
    pub a0: f64,
    /// `T_star(rho^2)`.
    pub c0: f64,
    /// `3 rho a0^3 / 2 + rho a0 c0 / 2 - 1`.
    pub residual: f64,
}

/// Check that `3 rho A0^3/2 + rho A0 C0/2 = 1` with `A0 = T_star(rho)` and
/// `C0 = T_star(rho^2)` computed from the truncated series.
///
/// The partial sums `S_M` of `T_star(rho)` converge like `M^{-1/2}`, with
/// corrections in odd powers of `M^{-1/2}`; `A0` comes from fitting
/// `S_M = A0 + d1 h + d3 h^3 + d5 h^5`, `h = M^{-1/2}`, at four equally spaced
/// `M` in the top half.
pub fn check_z1_vanishes(rho: f64, sol: &SeriesSystemSolution) -> Result<Z1Report> {
    let ln_b = ln_coeffs(&sol.t_star)?;
    let n = sol.t_star.order();
    if n < 8 {
        return Err(Error::Numeric("need at least 8 coefficients".into()));
    }
    let lr = rho.ln();
    let mut partial = Vec::with_capacity(n + 1);
    let mut acc = 0.0;
    for la in &ln_b {
        if let Some((i, la)) = la.map(|la| (partial.len(), la)) {
            acc += (la + i as f64 * lr).exp();
        }
        partial.push(acc);
    }
    let ms: Vec<usize> = (0..4).map(|i| n / 2 + (n - n / 2) * i / 3).collect();
    let a = DMatrix::from_fn(4, 4, |i, j| {
        if j == 0 {
            1.0
        } else {
            (ms[i] as f64).powf(-((2 * j - 1) as f64) / 2.0)
        }
    });
    let b = DVector::from_iterator(4, ms.iter().map(|&m| partial[m]));
    let x = a
        .lu()
        .solve(&b)
        .ok_or_else(|| Error::Numeric("singular extrapolation system".into()))?;
    let a0 = x[0];
    let (c0, _, _) = eval3(&ln_b, rho * rho);
    let residual = 1.5 * rho * a0.powi(3) + 0.5 * rho * a0 * c0 - 1.0;
    Ok(Z1Report {
        n,
        rho,
        a0,
        c0,
        residual,
    })
}

/// `Gamma(-3/2) = 4 sqrt(pi) / 3`.
pub fn gamma_minus_three_halves() -> f64 {
    4.0 * std::f64::consts::PI.sqrt() / 3.0
}

/// Everything the singularity analysis produces for one truncation order.
#[derive(Clone, Debug, Serialize)]
pub struct SingularityReport {
    #[serde(rename = "N")]
    pub n: usize,
    pub rho: f64,
    pub rho_inv: f64,
    pub y0: f64,
    pub h0: f64,
    pub h1: f64,
    pub q1: f64,
    #[serde(rename = "c_T")]
    pub c_t: AsymptoticEstimate,
    #[serde(rename = "c_G")]
    pub c_g: AsymptoticEstimate,
    pub residuals: SingularityResiduals,
    pub fit_window: (usize, usize),
    pub back_substitution: BackSubstitution,
    pub saddle: SaddlePoint,
}

#[derive(Clone, Copy, Debug, Serialize)]
pub struct SingularityResiduals {
    pub saddle: (f64, f64),
    pub z1: f64,
    pub ratio_radius_t: f64,
    pub log_slope_g: Option<f64>,
}

/// Solve the series system at `order` and run the full analysis.
pub fn analyse(order: usize, tol: f64) -> Result<SingularityReport> {
    let sol = crate::species::solve_system(order)?;
    analyse_solution(&sol, tol)
}

pub fn analyse_solution(sol: &SeriesSystemSolution, tol: f64) -> Result<SingularityReport> {
    let sp = solve_saddle(sol, tol)?;
    let ex = expansion_coeffs(&sp, sol)?;
    let bs = back_substitution(&sp, sol, &ex)?;
    let c_t = estimate_constant(&sol.t, sp.x0, 1.5)?;
    let c_g = estimate_constant(&sol.g, sp.x0, 1.5)?;
    let z1 = check_z1_vanishes(sp.x0, sol)?;
    let n = sol.order();
    let log_slope_g = (n >= 256)
        .then(|| log_slope(&sol.g, sp.x0, 128, 256))
        .transpose()?;
    Ok(SingularityReport {
        n,
        rho: sp.x0,
        rho_inv: 1.0 / sp.x0,
        y0: sp.y0,
        h0: ex.h0,
        h1: ex.h1,
        q1: ex.q1,
        fit_window: c_t.fit_window,
        c_t,
        c_g,
        residuals: SingularityResiduals {
            saddle: sp.residuals,
            z1: z1.residual,
            ratio_radius_t: 1.0 / ratio_radius(&sol.t)?,
            log_slope_g,
        },
        back_substitution: bs,
        saddle: sp,
    })
}


#[cfg(test)]
mod tail_tests {
    use super::*;
    use crate::species::solve_system;

    #[test]
    fn extra_tail_terms_do_not_move_h0() {
        let sol = solve_system(64).unwrap();
        let base = LeafSeries::new(&sol).unwrap();
        let sp = solve_saddle_from(&base, (0.15, 0.4), 1e-13).unwrap();
        let h0 = expansion_from_partials(sp.x0, &base.eval(sp.x0, sp.y0).unwrap())
            .unwrap()
            .h0;
        let wide = base.clone().with_tail_extra(10);
        let d = wide.eval(sp.x0, sp.y0).unwrap();
        assert_eq!(d.tail_terms, sp.tail_truncation + 10);
        let h0_wide = expansion_from_partials(sp.x0, &d).unwrap().h0;
        assert!((h0 - h0_wide).abs() < 1e-8);
    }
}
