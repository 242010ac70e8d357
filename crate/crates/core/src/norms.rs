//! Sobolev norms on K-types, minimal-norm scans over the Cartan ray, the
//! duality proxy for the maximal norm, and exponent fits.

use std::collections::BTreeMap;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::group::CartanCoord;
use crate::quad::golden_max;
use crate::reps::{CoefEvaluator, CoefValue, KIndex, Method, RepSpec};

/// Order `s` of a Sobolev norm.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Serialize, Deserialize)]
#[serde(transparent)]
pub struct SobolevOrder(f64);

impl SobolevOrder {
    pub fn new(s: f64) -> Result<Self> {
        if !s.is_finite() {
            return Err(Error::domain("Sobolev order must be finite"));
        }
        Ok(SobolevOrder(s))
    }

    pub fn value(self) -> f64 {
        self.0
    }
}

/// `(1 + kappa^2)^{s/2}`, the eigenvalue of `D_s` on the K-type with label `kappa`.
pub fn sobolev_multiplier(kappa: f64, s: SobolevOrder) -> f64 {
    if kappa == 0.0 {
        return 1.0;
    }
    (0.5 * s.0 * kappa.mul_add(kappa, 1.0).ln()).exp()
}

/// `sqrt(sum |a_n|^2 (1 + n^2)^s)` over a finitely supported vector.
pub fn sobolev_norm(coeffs: &BTreeMap<KIndex, Complex64>, s: SobolevOrder) -> f64 {
    coeffs
        .iter()
        .map(|(n, a)| {
            let w = sobolev_multiplier(n.value(), s);
            a.norm_sqr() * w * w
        })
        .sum::<f64>()
        .sqrt()
}

/// Resolution parameters of [`pmin_scan`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct ScanConfig {
    /// Grid spacing in `t` is `c_grid / (|n| + 1)`.
    pub c_grid: f64,
    /// Golden-section iterations per refined candidate.
    pub refine_iters: usize,
    /// The grid covers `t <= t_max_pad + ln(1 + |n|)`.
    pub t_max_pad: f64,
}

impl Default for ScanConfig {
    fn default() -> Self {
        ScanConfig {
            c_grid: 0.1,
            refine_iters: 40,
            t_max_pad: 6.0,
        }
    }
}

impl ScanConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.c_grid > 0.0 && self.c_grid.is_finite()) {
            return Err(Error::Config(format!("c_grid must be positive, got {}", self.c_grid)));
        }
        if !(self.t_max_pad > 0.0 && self.t_max_pad.is_finite()) {
            return Err(Error::Config(format!("t_max_pad must be positive, got {}", self.t_max_pad)));
        }
        if self.refine_iters == 0 {
            return Err(Error::Config("refine_iters must be at least 1".into()));
        }
        Ok(())
    }
}

/// `sup_x |coef(n, m, a_x)|` for one basis vector.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NormSample {
    pub n: KIndex,
    pub value: f64,
    pub x_argmax: f64,
    pub method: Method,
    pub err_est: f64,
}

/// Number of grid candidates polished by golden-section search.
const CANDIDATES: usize = 8;
/// Scale parameters of the seed points `x = 1 - 1/(1 + |n|/u)`.
const SEED_SCALES: [f64; 3] = [0.5, 1.0, 2.0];

fn modulus(ev: &CoefEvaluator, t: f64) -> Result<(f64, CoefValue)> {
    let c = CartanCoord::from_t(t)?;
    let v = match ev.eval_closed(&c) {
        Err(Error::Convergence { .. }) => ev.eval(&c)?,
        other => other?,
    };
    Ok((v.value.norm(), v))
}

/// Minimal norm `p_min(e_n)` for the generating vector `e_m`.
///
/// Scans `|coef(n, m, a_t)|` on a uniform `t`-grid, adds the seed points
/// near `x = 1 - u/|n|`, and polishes the best local maxima.
pub fn pmin_scan(rep: &RepSpec, m: KIndex, n: KIndex, cfg: &ScanConfig) -> Result<NormSample> {
    cfg.validate()?;
    let ev = CoefEvaluator::new(rep, n, m)?;
    let kappa = n.value().abs();
    let dt = cfg.c_grid / (kappa + 1.0);
    let t_max = cfg.t_max_pad + kappa.ln_1p();
    let steps = (t_max / dt).ceil() as usize;
    let grid: Vec<f64> = (0..=steps)
        .into_par_iter()
        .map(|j| modulus(&ev, (j as f64 * dt).min(t_max)).map(|(a, _)| a))
        .collect::<Result<_>>()?;

    let (best_j, best_grid) = grid
        .iter()
        .enumerate()
        .fold((0, f64::NEG_INFINITY), |acc, (j, &a)| if a > acc.1 { (j, a) } else { acc });
    if best_j == steps && steps > 0 {
        return Err(Error::Scan(format!(
            "maximum of |coef({n}, {m})| sits at the grid end t = {t_max}"
        )));
    }

    // Local maxima of the grid, largest first; ties keep grid order.
    let mut peaks: Vec<usize> = (0..=steps)
        .filter(|&j| {
            let left = j == 0 || grid[j - 1] <= grid[j];
            let right = j == steps || grid[j + 1] <= grid[j];
            left && right
        })
        .collect();
    peaks.sort_by(|&a, &b| grid[b].total_cmp(&grid[a]).then(a.cmp(&b)));
    peaks.truncate(CANDIDATES);
    let mut brackets: Vec<f64> = peaks.iter().map(|&j| j as f64 * dt).collect();
    if kappa > 0.0 {
        for u in SEED_SCALES {
            let x = 1.0 - 1.0 / (1.0 + kappa / u);
            brackets.push(x.sqrt().atanh());
        }
    }

    let mut best = (best_j as f64 * dt, best_grid);
    for centre in brackets {
        let lo = (centre - dt).max(0.0);
        let hi = (centre + dt).min(t_max);
        let (a_centre, _) = modulus(&ev, centre.min(t_max))?;
        if a_centre > best.1 {
            best = (centre.min(t_max), a_centre);
        }
        let (t, a) = golden_max(|t| modulus(&ev, t).map(|(a, _)| a), lo, hi, cfg.refine_iters)?;
        if a > best.1 {
            best = (t, a);
        }
    }
    let (value, at) = modulus(&ev, best.0)?;
    let x_argmax = CartanCoord::from_t(best.0)?.x();
    Ok(NormSample {
        n,
        value,
        x_argmax,
        method: at.method,
        err_est: (value - best_grid).abs() + at.err_est,
    })
}

/// `1 / p_min(e_n)`, a lower bound for `p_max(e_n)` through the duality
/// pairing of a unitary representation with its conjugate.
pub fn pmax_lower_proxy(rep: &RepSpec, m: KIndex, n: KIndex, cfg: &ScanConfig) -> Result<f64> {
    if !rep.is_unitary() {
        return Err(Error::Precondition(format!("{rep} is not unitary")));
    }
    Ok(1.0 / pmin_scan(rep, m, n, cfg)?.value)
}

/// Least-squares fit `ln v = ln A + alpha ln(1+n) + beta ln ln(e+n)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FitResult {
    pub alpha: f64,
    pub beta: f64,
    pub amplitude: f64,
    pub residual_rms: f64,
    pub n_range: (f64, f64),
}

/// Solves the least-squares problem `min |A c - b|` by Householder QR.
/// `None` when a column is numerically dependent on the others.
fn least_squares(cols: &[Vec<f64>], rhs: &[f64]) -> Option<Vec<f64>> {
    let rows = rhs.len();
    let k = cols.len();
    let mut a: Vec<Vec<f64>> = cols.to_vec();
    let mut b = rhs.to_vec();
    let scale: Vec<f64> = a.iter().map(|c| c.iter().map(|v| v * v).sum::<f64>().sqrt()).collect();
    for j in 0..k {
        let norm = a[j][j..].iter().map(|v| v * v).sum::<f64>().sqrt();
        if norm <= 1e-10 * scale[j].max(f64::MIN_POSITIVE) {
            return None;
        }
        let alpha = if a[j][j] > 0.0 { -norm } else { norm };
        let mut v: Vec<f64> = a[j][j..].to_vec();
        v[0] -= alpha;
        let vv: f64 = v.iter().map(|x| x * x).sum();
        if vv > 0.0 {
            for col in a.iter_mut().skip(j) {
                let d: f64 = v.iter().zip(&col[j..]).map(|(p, q)| p * q).sum::<f64>() * 2.0 / vv;
                for (i, vi) in v.iter().enumerate() {
                    col[j + i] -= d * vi;
                }
            }
            let d: f64 = v.iter().zip(&b[j..]).map(|(p, q)| p * q).sum::<f64>() * 2.0 / vv;
            for (i, vi) in v.iter().enumerate() {
                b[j + i] -= d * vi;
            }
        }
    }
    let mut x = vec![0.0; k];
    for j in (0..k).rev() {
        let s: f64 = (j + 1..k).map(|i| a[i][j] * x[i]).sum();
        x[j] = (b[j] - s) / a[j][j];
    }
    debug_assert!(rows >= k);
    Some(x)
}

/// Fits the power-log model to `(n, v)` pairs.
pub fn fit_points(points: &[(f64, f64)], with_log: bool) -> Result<FitResult> {
    if points.len() < 5 {
        return Err(Error::Precondition(format!("a fit needs at least 5 points, got {}", points.len())));
    }
    if let Some(&(n, v)) = points.iter().find(|(n, v)| !(*n >= 2.0 && *v > 0.0 && v.is_finite())) {
        return Err(Error::Precondition(format!("fit point ({n}, {v}) needs n >= 2 and a positive value")));
    }
    let e = std::f64::consts::E;
    let mut cols = vec![vec![1.0; points.len()], points.iter().map(|(n, _)| n.ln_1p()).collect()];
    if with_log {
        cols.push(points.iter().map(|(n, _)| (e + n).ln().ln()).collect());
    }
    let rhs: Vec<f64> = points.iter().map(|(_, v)| v.ln()).collect();
    let coef = least_squares(&cols, &rhs).ok_or_else(|| Error::Fit("degenerate design matrix".into()))?;
    let ss: f64 = rhs
        .iter()
        .enumerate()
        .map(|(i, y)| {
            let fit: f64 = cols.iter().zip(&coef).map(|(c, k)| c[i] * k).sum();
            (y - fit).powi(2)
        })
        .sum();
    let lo = points.iter().map(|p| p.0).fold(f64::INFINITY, f64::min);
    let hi = points.iter().map(|p| p.0).fold(f64::NEG_INFINITY, f64::max);
    Ok(FitResult {
        alpha: coef[1],
        beta: if with_log { coef[2] } else { 0.0 },
        amplitude: coef[0].exp(),
        residual_rms: (ss / points.len() as f64).sqrt(),
        n_range: (lo, hi),
    })
}

/// Fits the power-log model to scan samples, against `|n|`.
pub fn fit_exponent(samples: &[NormSample], with_log: bool) -> Result<FitResult> {
    let points: Vec<(f64, f64)> = samples.iter().map(|s| (s.n.value().abs(), s.value)).collect();
    fit_points(&points, with_log)
}

/// K-type-diagonal estimate of `d([q], [p])`: the exponent `a >= 0` with
/// `p(e_n) ~ C q(e_n) (1 + n^2)^{a/2}`. Inputs are `(n, value)` pairs on a
/// common set of `n`.
pub fn distance_from_points(p: &[(f64, f64)], q: &[(f64, f64)]) -> Result<f64> {
    if p.len() != q.len() || p.iter().zip(q).any(|(a, b)| a.0 != b.0) {
        return Err(Error::Precondition("samples must share the same n values".into()));
    }
    if p.len() < 5 {
        return Err(Error::Precondition(format!("a fit needs at least 5 points, got {}", p.len())));
    }
    let multiplier: Vec<f64> = p.iter().map(|(n, _)| 0.5 * n.mul_add(*n, 1.0).ln()).collect();
    let rhs: Vec<f64> = p.iter().zip(q).map(|(a, b)| (a.1 / b.1).ln()).collect();
    if rhs.iter().any(|v| !v.is_finite()) {
        return Err(Error::Precondition("norm values must be positive".into()));
    }
    let coef = least_squares(&[vec![1.0; p.len()], multiplier], &rhs)
        .ok_or_else(|| Error::Fit("degenerate design matrix".into()))?;
    Ok(coef[1].max(0.0))
}

/// [`distance_from_points`] on scan samples.
pub fn distance_estimate(p: &[NormSample], q: &[NormSample]) -> Result<f64> {
    let pts = |s: &[NormSample]| s.iter().map(|v| (v.n.value().abs(), v.value)).collect::<Vec<_>>();
    distance_from_points(&pts(p), &pts(q))
}

/// Sobolev gap from `p_min` samples: the distance from the minimal norm to
/// the duality proxy `1 / p_min` of the maximal norm.
pub fn sobolev_gap_from_samples(pmin: &[NormSample]) -> Result<f64> {
    let q: Vec<(f64, f64)> = pmin.iter().map(|s| (s.n.value().abs(), s.value)).collect();
    let p: Vec<(f64, f64)> = q.iter().map(|&(n, v)| (n, 1.0 / v)).collect();
    distance_from_points(&p, &q)
}

/// Geometric labels `16, 32, ..., n_max` shifted into the K-spectrum of `rep`.
pub fn geometric_labels(rep: &RepSpec, n_min: i64, n_max: i64) -> Vec<KIndex> {
    let mut out = Vec::new();
    let mut n = n_min.max(1);
    while n <= n_max {
        let k = KIndex::new(n);
        out.push(if rep.contains(k) {
            k
        } else {
            KIndex::from_twice(2 * n + 1)
        });
        n *= 2;
    }
    out
}

/// `p_min` samples for several `n`, computed in parallel, in input order.
pub fn pmin_samples(rep: &RepSpec, m: KIndex, ns: &[KIndex], cfg: &ScanConfig) -> Result<Vec<NormSample>> {
    ns.par_iter().map(|&n| pmin_scan(rep, m, n, cfg)).collect()
}

/// Sobolev gap estimate of `rep` over `n in {16, 32, ..., n_max}`.
pub fn sobolev_gap_estimate(rep: &RepSpec, n_max: i64, cfg: &ScanConfig) -> Result<f64> {
    if !rep.is_unitary() {
        return Err(Error::Precondition(format!("{rep} is not unitary")));
    }
    let ns = geometric_labels(rep, 16, n_max);
    let samples = pmin_samples(rep, rep.lowest(), &ns, cfg)?;
    sobolev_gap_from_samples(&samples)
}
