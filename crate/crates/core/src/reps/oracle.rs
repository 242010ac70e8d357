//! Matrix coefficients read off as Laurent/Taylor coefficients of the
//! transformed basis vector, sampled on circles and transformed by FFT.
//!
//! Each coefficient band is extracted on its own circle, placed close to the
//! singularity that governs its decay, so that small coefficients keep their
//! relative accuracy. Every band is checked by doubling the sample count.

use std::collections::BTreeMap;
use std::f64::consts::PI;

use num_complex::Complex64;
use rustfft::FftPlanner;

use super::{complementary_normalization, CoefValue, KIndex, Method, RepSpec, Sigma};
use crate::error::{Error, Result};
use crate::group::CartanCoord;
use crate::specfun::{ln_1p, ln_binomial};

const MAX_SAMPLES: usize = 1 << 22;
const DOUBLINGS: usize = 3;
const AGREEMENT: f64 = 1e-9;
/// Coefficients with `|power| <= UNIT_BAND` are read on the unit circle.
const UNIT_BAND: i64 = 8;
/// Absolute error of a coefficient in units of `eps * max|F| r^{-p}`.
const FLOOR_FACTOR: f64 = 64.0;

/// An oracle coefficient with its absolute rounding floor. Coefficients far
/// below the sup-norm of the sampled function on the circle are only known
/// to within `floor`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OracleValue {
    pub value: Complex64,
    pub floor: f64,
}

impl OracleValue {
    fn scaled(self, k: f64) -> Self {
        OracleValue {
            value: self.value * k,
            floor: self.floor * k.abs(),
        }
    }

    /// Whether `v` agrees with this value to `rel` relative accuracy, up to the floor.
    pub fn agrees(&self, v: Complex64, rel: f64) -> bool {
        (v - self.value).norm() <= rel * self.value.norm() + self.floor
    }
}

/// A range of powers `z^p`, `lo <= p <= hi`, read on one circle.
struct Band {
    radius: f64,
    lo: i64,
    hi: i64,
    /// Geometric decay rate of the sampled Fourier coefficients away from
    /// the band, used to size the FFT against aliasing.
    decay: f64,
}

struct Extracted {
    values: Vec<(i64, Complex64)>,
    noise: Vec<f64>,
}

/// Coefficients of `z^p` for `p` in the band, from `N` samples of `ln F`.
fn sample_band(ln_f: &dyn Fn(Complex64) -> Complex64, band: &Band, n: usize) -> Extracted {
    let mut logs: Vec<Complex64> = (0..n)
        .map(|j| {
            let theta = 2.0 * PI * j as f64 / n as f64;
            ln_f(Complex64::from_polar(band.radius, theta))
        })
        .collect();
    let shift = logs.iter().map(|l| l.re).fold(f64::NEG_INFINITY, f64::max);
    for l in logs.iter_mut() {
        *l = (*l - shift).exp();
    }
    let mut planner = FftPlanner::new();
    planner.plan_fft_forward(n).process(&mut logs);
    let ln_r = band.radius.ln();
    let mut values = Vec::with_capacity((band.hi - band.lo + 1) as usize);
    let mut noise = Vec::with_capacity(values.capacity());
    for p in band.lo..=band.hi {
        let idx = p.rem_euclid(n as i64) as usize;
        let scale = (shift - p as f64 * ln_r).exp() / n as f64;
        values.push((p, logs[idx] * scale));
        noise.push(scale * n as f64);
    }
    Extracted { values, noise }
}

fn extract(ln_f: &dyn Fn(Complex64) -> Complex64, band: &Band, min_samples: usize) -> Result<Vec<(i64, OracleValue)>> {
    let reach = band.lo.unsigned_abs().max(band.hi.unsigned_abs()) as f64;
    let alias = reach + 60.0 / band.decay.max(1e-12);
    let want = (min_samples as f64).max(2.0 * reach + 64.0).max(reach + alias);
    if want > MAX_SAMPLES as f64 {
        return Err(Error::convergence(
            format!("oracle needs {want:.0} samples, above the cap of {MAX_SAMPLES}"),
            f64::NAN,
            f64::INFINITY,
        ));
    }
    let mut n = (want as usize).next_power_of_two();
    let mut coarse = sample_band(ln_f, band, n);
    for _ in 0..DOUBLINGS {
        if 2 * n > MAX_SAMPLES {
            break;
        }
        n *= 2;
        let fine = sample_band(ln_f, band, n);
        let agree = coarse
            .values
            .iter()
            .zip(&fine.values)
            .zip(&fine.noise)
            .all(|(((_, a), (_, b)), noise)| (a - b).norm() <= AGREEMENT * b.norm().max(1e-6 * noise));
        if agree {
            return Ok(fine
                .values
                .into_iter()
                .zip(fine.noise)
                .map(|((p, value), noise)| {
                    let floor = FLOOR_FACTOR * f64::EPSILON * noise;
                    (p, OracleValue { value, floor })
                })
                .collect());
        }
        coarse = fine;
    }
    Err(Error::convergence(
        format!("oracle did not stabilise on the circle of radius {}", band.radius),
        f64::NAN,
        f64::INFINITY,
    ))
}

fn exact(v: f64) -> OracleValue {
    OracleValue {
        value: Complex64::new(v, 0.0),
        floor: 0.0,
    }
}

/// Splits `0 < |p| <= reach` into dyadic bands beyond the unit band.
fn dyadic_ranges(reach: i64) -> Vec<(i64, i64)> {
    let mut out = Vec::new();
    let mut lo = UNIT_BAND + 1;
    while lo <= reach {
        let hi = (2 * (lo - 1)).min(reach).max(lo);
        out.push((lo, hi));
        lo = hi + 1;
    }
    out
}

/// Principal series column `n -> t_{n,m}(x)` for `|n| <= n_max`.
///
/// `pi(a_x) e_m` is the Laurent series
/// `(1-x)^{-lambda} (1 + rho z)^{lambda+sigma+m} (1 + rho/z)^{lambda-sigma-m} z^{-m}`
/// with `rho = sqrt(x)`, whose coefficient of `z^{-n}` is `t_{n,m}`. The
/// coefficients decay geometrically in `|n - m|`, so the circles are chosen
/// per dyadic band of `n - m`.
pub fn coef_oracle_principal(
    sigma: Sigma,
    lambda: Complex64,
    m: i64,
    c: &CartanCoord,
    n_max: i64,
) -> Result<BTreeMap<i64, OracleValue>> {
    RepSpec::principal(sigma, lambda)?;
    if n_max < 0 {
        return Err(Error::domain("n_max must be non-negative"));
    }
    let x = c.x();
    if x == 0.0 {
        return Ok((-n_max..=n_max)
            .map(|n| (n, exact(if n == m { 1.0 } else { 0.0 })))
            .collect());
    }
    let rho = x.sqrt();
    let s = sigma.value();
    let mf = m as f64;
    let e_out = lambda + s + mf;
    let e_in = lambda - s - mf;
    let ln_pref = -lambda * c.one_minus_x().ln();
    // Powers are read relative to m: the coefficient of z^{-(n-m)} of G is t_{n,m}.
    let ln_g = move |z: Complex64| ln_pref + e_out * ln_1p(z * rho) + e_in * ln_1p(z.inv() * rho);
    // Singularity strengths at -rho (negative powers) and -1/rho (positive).
    let p_in = (-e_in.re).max(0.0);
    let p_out = (-e_out.re).max(0.0);
    let min_samples = 8 * (n_max.unsigned_abs() as usize + m.unsigned_abs() as usize) + 64;
    let decay_for = |r: f64| -((rho / r).max(r * rho)).ln();
    // d = n - m ranges over [d_lo, d_hi].
    let (d_lo, d_hi) = (-n_max - m, n_max - m);

    let mut out = BTreeMap::new();
    let mut take = |vals: Vec<(i64, OracleValue)>| {
        for (p, v) in vals {
            let n = m - p;
            if n.abs() <= n_max {
                out.insert(n, v);
            }
        }
    };
    let unit_band = Band {
        radius: 1.0,
        lo: (-UNIT_BAND).max(-d_hi),
        hi: UNIT_BAND.min(-d_lo),
        decay: decay_for(1.0),
    };
    if unit_band.lo <= unit_band.hi {
        take(extract(&ln_g, &unit_band, min_samples)?);
    }
    for (lo, hi) in dyadic_ranges(d_hi) {
        // d in [lo, hi]: powers z^{-d}, circle just outside -rho.
        let delta = (p_in + 1.0) / hi as f64;
        let r = (rho * (1.0 + delta)).min(1.0);
        let band = Band {
            radius: r,
            lo: -hi,
            hi: -lo,
            decay: decay_for(r),
        };
        take(extract(&ln_g, &band, min_samples)?);
    }
    for (lo, hi) in dyadic_ranges(-d_lo) {
        // d in [-hi, -lo]: powers z^{|d|}, circle just inside -1/rho.
        let delta = (p_out + 1.0) / hi as f64;
        let r = (1.0 / (rho * (1.0 + delta))).max(1.0);
        let band = Band {
            radius: r,
            lo,
            hi,
            decay: decay_for(r),
        };
        take(extract(&ln_g, &band, min_samples)?);
    }
    Ok(out)
}

/// Discrete series column `n -> <pi(a_x) f_m, f_n>` for `l/2 <= n <= n_max`.
///
/// `pi(a_x) f_m = c_m (1-x)^{l/2} (1 - rho z)^{-l-j} (z - rho)^j`, `j = m - l/2`,
/// and the coefficient along `f_n` is its `z^{n-l/2}` Taylor coefficient
/// divided by the basis constant `c_n`.
pub fn coef_oracle_discrete(ell: u32, m: KIndex, c: &CartanCoord, n_max: KIndex) -> Result<BTreeMap<KIndex, OracleValue>> {
    let rep = RepSpec::discrete(ell)?;
    rep.check_index(m)?;
    let l = ell as f64;
    let jm = (m.twice() - ell as i64) / 2;
    let j_max = (n_max.twice() - ell as i64).div_euclid(2);
    if j_max < 0 {
        return Ok(BTreeMap::new());
    }
    let ln_basis = |j: i64| -> Result<f64> { Ok(0.5 * ln_binomial(j as f64 + l - 1.0, j as f64)?) };
    let x = c.x();
    if x == 0.0 {
        return Ok((0..=j_max)
            .map(|j| {
                let n = KIndex::from_twice(2 * j + ell as i64);
                (n, exact(if n == m { 1.0 } else { 0.0 }))
            })
            .collect());
    }
    let rho = x.sqrt();
    let jmf = jm as f64;
    let sign_m = if jm % 2 == 0 { 0.0 } else { PI };
    let ln_pref = 0.5 * l * c.one_minus_x().ln() + ln_basis(jm)?;
    let ln_f = move |z: Complex64| {
        Complex64::new(ln_pref, sign_m) - (l + jmf) * ln_1p(-z * rho) + (z - rho).ln() * jmf
    };
    let strength = l + jmf;
    let min_samples = 8 * (j_max as usize + jm as usize) + 64;
    let decay_for = |r: f64| -(r * rho).ln();

    let mut taylor = BTreeMap::new();
    let unit = UNIT_BAND.min(j_max);
    let unit_band = Band {
        radius: 1.0,
        lo: 0,
        hi: unit,
        decay: decay_for(1.0),
    };
    for (p, v) in extract(&ln_f, &unit_band, min_samples)? {
        taylor.insert(p, v);
    }
    for (lo, hi) in dyadic_ranges(j_max) {
        let delta = (strength + 1.0) / hi as f64;
        let r = (1.0 / (rho * (1.0 + delta))).max(1.0);
        let band = Band {
            radius: r,
            lo,
            hi,
            decay: decay_for(r),
        };
        for (p, v) in extract(&ln_f, &band, min_samples)? {
            taylor.insert(p, v);
        }
    }
    let mut out = BTreeMap::new();
    for (j, a) in taylor {
        let sign = if j % 2 == 0 { 1.0 } else { -1.0 };
        let v = a.scaled(sign * (-ln_basis(j)?).exp());
        out.insert(KIndex::from_twice(2 * j + ell as i64), v);
    }
    Ok(out)
}

/// Oracle column for any representation, keyed by basis label.
pub fn coef_oracle(rep: &RepSpec, m: KIndex, c: &CartanCoord, n_max: KIndex) -> Result<BTreeMap<KIndex, OracleValue>> {
    rep.validate()?;
    rep.check_index(m)?;
    match *rep {
        RepSpec::Principal { sigma, lambda } => {
            let mi = m.as_integer().expect("checked");
            let reach = n_max.value().floor() as i64;
            Ok(coef_oracle_principal(sigma, lambda, mi, c, reach)?
                .into_iter()
                .map(|(n, v)| (KIndex::new(n), v))
                .collect())
        }
        RepSpec::Complementary { lambda } => {
            let mi = m.as_integer().expect("checked");
            let reach = n_max.value().floor() as i64;
            let col = coef_oracle_principal(Sigma::Zero, Complex64::new(lambda, 0.0), mi, c, reach)?;
            col.into_iter()
                .map(|(n, v)| Ok((KIndex::new(n), v.scaled(complementary_normalization(lambda, n, mi)?))))
                .collect()
        }
        RepSpec::Discrete { ell } => coef_oracle_discrete(ell, m, c, n_max),
    }
}

/// Single coefficient from the oracle.
pub(crate) fn coef_oracle_single(rep: &RepSpec, n: KIndex, m: KIndex, c: &CartanCoord) -> Result<CoefValue> {
    let reach = KIndex::from_twice(n.twice().abs().max(m.twice().abs()));
    let col = coef_oracle(rep, m, c, reach)?;
    let v = *col
        .get(&n)
        .ok_or_else(|| Error::domain(format!("{n} is not a basis label of {rep}")))?;
    Ok(CoefValue {
        value: v.value,
        method: Method::Oracle,
        err_est: AGREEMENT * v.value.norm() + v.floor,
    })
}
