use num_complex::Complex64;

use super::gamma::{digamma, digamma_int, gamma_pole_index, gamma_ratio_signed};
use super::KahanSum;
use crate::error::{Error, Result};
use crate::quad::{integrate, QuadOptions};

/// Hard cap on the number of series terms.
pub const MAX_TERMS: usize = 1_000_000;

/// Result of a hypergeometric evaluation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HypValue {
    pub value: Complex64,
    pub err_est: f64,
    pub terms: usize,
}

fn check_tol(tol: f64) -> Result<()> {
    if !(tol > 0.0 && tol <= 1e-6) {
        return Err(Error::domain(format!("tolerance must lie in (0, 1e-6], got {tol}")));
    }
    Ok(())
}

fn check_finite(params: &[Complex64]) -> Result<()> {
    if params.iter().all(|p| p.re.is_finite() && p.im.is_finite()) {
        Ok(())
    } else {
        Err(Error::domain("non-finite hypergeometric parameter"))
    }
}

/// Degree of the polynomial when `a` or `b` is a non-positive integer.
pub fn terminating_degree(a: Complex64, b: Complex64) -> Option<u64> {
    match (gamma_pole_index(a), gamma_pole_index(b)) {
        (Some(i), Some(j)) => Some(i.min(j)),
        (Some(i), None) | (None, Some(i)) => Some(i),
        (None, None) => None,
    }
}

/// Gauss hypergeometric function `2F1(a, b; c; z)`.
///
/// Terminating cases are summed exactly for any real `z`; otherwise the
/// Gauss series is summed for `|z| < 1` until a geometric bound on the tail
/// falls below `tol` relative to the running sum.
pub fn hyp2f1(a: Complex64, b: Complex64, c: Complex64, z: f64, tol: f64) -> Result<HypValue> {
    check_tol(tol)?;
    check_finite(&[a, b, c])?;
    if !z.is_finite() {
        return Err(Error::domain("non-finite argument"));
    }
    let c_pole = gamma_pole_index(c);
    if let Some(k) = terminating_degree(a, b) {
        if let Some(j) = c_pole {
            if k > j {
                return Err(Error::Pole(format!("c = {c} is hit before the series terminates")));
            }
        }
        return Ok(terminating_sum(a, b, c, z, k));
    }
    if c_pole.is_some() {
        return Err(Error::Pole(format!("c = {c}")));
    }
    if !(z.abs() < 1.0) {
        return Err(Error::domain(format!("non-terminating series needs |z| < 1, got {z}")));
    }
    gauss_series(a, b, c, z, tol)
}

fn terminating_sum(a: Complex64, b: Complex64, c: Complex64, z: f64, degree: u64) -> HypValue {
    let mut sum = KahanSum::new();
    let mut term = Complex64::new(1.0, 0.0);
    let mut abs_sum = 0.0;
    for j in 0..=degree {
        sum.add(term);
        abs_sum += term.norm();
        if j == degree {
            break;
        }
        let jf = j as f64;
        term *= (a + jf) * (b + jf) / ((c + jf) * (jf + 1.0)) * z;
    }
    HypValue {
        value: sum.value(),
        err_est: 4.0 * f64::EPSILON * abs_sum * ((degree + 1) as f64).sqrt(),
        terms: degree as usize + 1,
    }
}

/// Bound on `|r_j|` for all `j >= k`, where `r_j` is the term ratio of the
/// Gauss series. Writing `r_j = z (1 + (a-1)/(j+1)) (1 + (b-c)/(c+j))`, both
/// factors decrease in modulus bound once `Re c + j > 0`.
fn ratio_bound(a: Complex64, b: Complex64, c: Complex64, az: f64, k: f64) -> Option<f64> {
    let den = c.re + k;
    if den <= 0.0 {
        return None;
    }
    let pair = |p: Complex64, q: Complex64| (1.0 + (p - 1.0).norm() / (k + 1.0)) * (1.0 + (q - c).norm() / den);
    Some(az * pair(a, b).min(pair(b, a)))
}

fn gauss_series(a: Complex64, b: Complex64, c: Complex64, z: f64, tol: f64) -> Result<HypValue> {
    let mut sum = KahanSum::new();
    let mut term = Complex64::new(1.0, 0.0);
    let mut abs_sum = 0.0;
    let az = z.abs();
    for k in 0..MAX_TERMS {
        sum.add(term);
        abs_sum += term.norm();
        let kf = k as f64;
        term *= (a + kf) * (b + kf) / ((c + kf) * (kf + 1.0)) * z;
        // `term` is now t_{k+1}; the remaining tail is bounded geometrically.
        if let Some(rho) = ratio_bound(a, b, c, az, kf + 1.0) {
            if rho < 1.0 {
                let tail = term.norm() / (1.0 - rho);
                if tail <= 0.5 * tol * sum.value().norm() || term.norm() == 0.0 {
                    return Ok(HypValue {
                        value: sum.value(),
                        err_est: tail + 4.0 * f64::EPSILON * abs_sum,
                        terms: k + 1,
                    });
                }
            }
        }
        if !(term.re.is_finite() && term.im.is_finite()) {
            return Err(Error::convergence("series term overflowed", sum.value().norm(), f64::INFINITY));
        }
    }
    Err(Error::convergence(
        format!("Gauss series did not converge in {MAX_TERMS} terms"),
        sum.value().norm(),
        term.norm(),
    ))
}

/// How far from an integer `c - a - b` must be for the connection formula to
/// be used without excessive cancellation between its two branches.
const CONNECTION_MIN_GAP: f64 = 1e-3;

/// `2F1(a, b; c; 1 - y)` for `0 < y < 1` via the connection formula around
/// `z = 1`; the series converge geometrically in `y`, so this is the right
/// tool when `1 - z` is small.
///
/// `c - a - b = 0` uses the logarithmic form; other integer (or nearly
/// integer) values of `c - a - b` are rejected with a convergence error.
pub fn hyp2f1_near_one(a: Complex64, b: Complex64, c: Complex64, y: f64, tol: f64) -> Result<HypValue> {
    check_tol(tol)?;
    check_finite(&[a, b, c])?;
    if !(y > 0.0 && y < 1.0) {
        return Err(Error::domain(format!("need 0 < 1 - z < 1, got {y}")));
    }
    if terminating_degree(a, b).is_some() {
        return hyp2f1(a, b, c, 1.0 - y, tol);
    }
    if gamma_pole_index(c).is_some() {
        return Err(Error::Pole(format!("c = {c}")));
    }
    let s = c - a - b;
    if s == Complex64::new(0.0, 0.0) {
        return log_case(a, b, y, tol);
    }
    let near_int = (s.re - s.re.round()).abs().max(s.im.abs());
    if near_int < CONNECTION_MIN_GAP {
        return Err(Error::convergence(
            format!("connection formula degenerate for c - a - b = {s}"),
            f64::NAN,
            f64::INFINITY,
        ));
    }
    let one = Complex64::new(1.0, 0.0);
    let coef_a = gamma_ratio_signed(&[c, s], &[c - a, c - b])?;
    let coef_b = gamma_ratio_signed(&[c, -s], &[a, b])?;
    let inner = 0.25 * tol;
    let f1 = hyp2f1(a, b, one - s, y, inner)?;
    let f2 = hyp2f1(c - a, c - b, one + s, y, inner)?;
    let ys = (s * y.ln()).exp();
    let p1 = coef_a * f1.value;
    let p2 = coef_b * ys * f2.value;
    Ok(HypValue {
        value: p1 + p2,
        err_est: coef_a.norm() * f1.err_est
            + (coef_b * ys).norm() * f2.err_est
            + 16.0 * f64::EPSILON * (p1.norm() + p2.norm()),
        terms: f1.terms + f2.terms,
    })
}

/// `c = a + b`: the connection coefficients have a double pole and the
/// expansion picks up `ln(1 - z)`.
fn log_case(a: Complex64, b: Complex64, y: f64, tol: f64) -> Result<HypValue> {
    let pref = gamma_ratio_signed(&[a + b], &[a, b])?;
    let ln_y = y.ln();
    let mut psi_a = digamma(a)?;
    let mut psi_b = digamma(b)?;
    let mut u = Complex64::new(1.0, 0.0);
    let mut sum = KahanSum::new();
    let mut abs_sum = 0.0;
    let settle = 2.0 * (a.norm() + b.norm()) + 4.0;
    for k in 0..MAX_TERMS {
        let kf = k as f64;
        let bracket = 2.0 * digamma_int(k as u64) - psi_a - psi_b - ln_y;
        let t = u * bracket;
        sum.add(t);
        abs_sum += t.norm();
        let ratio = (a + kf) * (b + kf) / ((kf + 1.0) * (kf + 1.0)) * y;
        psi_a += (a + kf).inv();
        psi_b += (b + kf).inv();
        u *= ratio;
        if kf >= settle {
            let rho = ratio.norm().max(y);
            if rho < 1.0 {
                // The bracket grows at most logarithmically; bound it by its
                // current size plus a margin for that growth.
                let bound = (2.0 * digamma_int(k as u64 + 1) - psi_a - psi_b - ln_y).norm() + 2.0;
                let tail = u.norm() * bound / (1.0 - rho);
                if tail <= 0.5 * tol * sum.value().norm() || u.norm() == 0.0 {
                    let v = pref * sum.value();
                    return Ok(HypValue {
                        value: v,
                        err_est: pref.norm() * (tail + 8.0 * f64::EPSILON * abs_sum),
                        terms: k + 1,
                    });
                }
            }
        }
    }
    Err(Error::convergence(
        "logarithmic connection series did not converge",
        (pref * sum.value()).norm(),
        f64::INFINITY,
    ))
}

/// Independent evaluation of `2F1(a, b; c; z)` from Euler's integral, for
/// `Re c > Re b > 0` and `0 <= z < 1`.
///
/// Both endpoint singularities are removed by power substitutions before
/// adaptive Gauss-Kronrod quadrature.
pub fn hyp2f1_euler(a: Complex64, b: Complex64, c: Complex64, z: f64) -> Result<HypValue> {
    check_finite(&[a, b, c])?;
    let p = b.re;
    let q = (c - b).re;
    if !(p > 0.0 && q > 0.0) {
        return Err(Error::domain("Euler integral needs Re c > Re b > 0"));
    }
    if !(0.0..1.0).contains(&z) {
        return Err(Error::domain(format!("Euler integral needs 0 <= z < 1, got {z}")));
    }
    let one = Complex64::new(1.0, 0.0);
    let cb = c - b;
    let opts = QuadOptions {
        abs_tol: 0.0,
        rel_tol: 1e-12,
        max_intervals: 20_000,
    };
    // Left half: t = v^{1/p}, t^{b-1} dt = t^{b-p} dv / p.
    let left = integrate(
        |v| {
            if v <= 0.0 {
                return Ok(Complex64::new(0.0, 0.0));
            }
            let ln_t = v.ln() / p;
            let t = ln_t.exp();
            let w = ((b - p) * ln_t).exp() / p;
            let rest = ((cb - one) * (-t).ln_1p()).exp() * ((-a) * (-z * t).ln_1p()).exp();
            Ok(w * rest)
        },
        0.0,
        0.5f64.powf(p),
        opts,
    )?;
    // Right half: 1 - t = w^{1/q}.
    let right = integrate(
        |w| {
            if w <= 0.0 {
                return Ok(Complex64::new(0.0, 0.0));
            }
            let ln_s = w.ln() / q;
            let s = ln_s.exp();
            let t = 1.0 - s;
            let weight = ((cb - q) * ln_s).exp() / q;
            let rest = ((b - one) * t.ln()).exp() * ((-a) * (-z * t).ln_1p()).exp();
            Ok(weight * rest)
        },
        0.0,
        0.5f64.powf(q),
        opts,
    )?;
    let pref = gamma_ratio_signed(&[c], &[b, cb])?;
    let value = pref * (left.value + right.value);
    Ok(HypValue {
        value,
        err_est: pref.norm() * (left.err_est + right.err_est),
        terms: left.evaluations + right.evaluations,
    })
}
