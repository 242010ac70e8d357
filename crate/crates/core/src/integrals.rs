//! Integrals of matrix coefficients against `beta_eps`, by quadrature and by
//! series, plus the Stirling and Faulhaber lemmas used in their asymptotics.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::group::CartanCoord;
use crate::quad::{integrate, QuadOptions};
use crate::reps::{complementary_normalization, CoefEvaluator, KIndex, RepSpec, Sigma};
use crate::specfun::{
    digamma, gamma_ratio_power, ln_binomial, ln_gamma, ln_gamma_real, ln_pochhammer, terminating_degree, zeta, KahanSum,
};

/// The probability measure `c (1-x)^{-1+eps} dx` on `[0, 1)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BetaMeasure {
    epsilon: f64,
    c: f64,
}

impl BetaMeasure {
    pub fn new(epsilon: f64) -> Result<Self> {
        if !(epsilon > 0.0 && epsilon.is_finite()) {
            return Err(Error::domain(format!("epsilon must be positive, got {epsilon}")));
        }
        Ok(BetaMeasure { epsilon, c: epsilon })
    }

    pub fn epsilon(&self) -> f64 {
        self.epsilon
    }

    /// Normaliser `c`, equal to `epsilon`.
    pub fn c(&self) -> f64 {
        self.c
    }
}

pub fn beta_measure(epsilon: f64) -> Result<BetaMeasure> {
    BetaMeasure::new(epsilon)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum IntegralMethod {
    Quadrature,
    Series,
    ClosedForm,
    FiniteSum,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IntegralValue {
    pub value: Complex64,
    pub method: IntegralMethod,
    pub err_est: f64,
}

fn check_tol(tol: f64) -> Result<()> {
    if !(tol > 0.0 && tol < 1.0) {
        return Err(Error::domain(format!("tolerance must lie in (0, 1), got {tol}")));
    }
    Ok(())
}

/// Absolute accuracy requested from the quadrature on top of the relative
/// tolerance; integrals that cancel to zero cannot do better than the
/// rounding of the O(1) integrand.
const QUAD_ABS_TOL: f64 = 1e-13;

/// `int <pi(a_x) e_m, e_n> d beta(x)` by adaptive quadrature in
/// `u = (1-x)^eps`, where `d beta = (c / eps) du`.
pub fn integral_quadrature(rep: &RepSpec, n: KIndex, m: KIndex, beta: &BetaMeasure, tol: f64) -> Result<IntegralValue> {
    check_tol(tol)?;
    let ev = CoefEvaluator::new(rep, n, m)?;
    let inv_eps = 1.0 / beta.epsilon;
    let f = |u: f64| -> Result<Complex64> {
        let y = u.powf(inv_eps);
        if y == 0.0 {
            return Ok(Complex64::new(0.0, 0.0));
        }
        Ok(ev.eval(&CartanCoord::from_one_minus_x(y.min(1.0))?)?.value)
    };
    let opts = QuadOptions {
        abs_tol: QUAD_ABS_TOL,
        rel_tol: tol,
        max_intervals: 4000,
    };
    let q = integrate(f, 0.0, 1.0, opts)?;
    let scale = beta.c * inv_eps;
    Ok(IntegralValue {
        value: q.value * scale,
        method: IntegralMethod::Quadrature,
        err_est: q.err_est * scale,
    })
}

/// `I_{n,eps}(sigma, lambda) = int <pi(a_x) f_0, f_n> d beta` by quadrature.
pub fn i_principal_quadrature(
    sigma: Sigma,
    lambda: Complex64,
    n: i64,
    beta: &BetaMeasure,
    tol: f64,
) -> Result<IntegralValue> {
    check_cowling_strip(lambda)?;
    let rep = RepSpec::principal(sigma, lambda)?;
    integral_quadrature(&rep, KIndex::new(n), KIndex::new(0), beta, tol)
}

fn check_cowling_strip(lambda: Complex64) -> Result<()> {
    if !(lambda.re > -1.0 && lambda.re < 0.0) {
        return Err(Error::domain(format!("lambda = {lambda} is outside the strip -1 < Re lambda < 0")));
    }
    Ok(())
}

/// `eps (-1)^n B(n/2 + 1, 1/2 + eps)`: the value of `I_{n,eps}(1/2, -1/2)`,
/// whose coefficient is `(-1)^n x^{n/2} (1-x)^{1/2}` for `n >= 0`.
pub fn i_limit_closed_form(n: i64, beta: &BetaMeasure) -> Result<IntegralValue> {
    if n < 0 {
        return Ok(IntegralValue {
            value: Complex64::new(0.0, 0.0),
            method: IntegralMethod::ClosedForm,
            err_est: 0.0,
        });
    }
    let a = n as f64 / 2.0 + 1.0;
    let b = 0.5 + beta.epsilon;
    let ln_b = ln_gamma_real(a)? + ln_gamma_real(b)? - ln_gamma_real(a + b)?;
    let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
    let value = sign * beta.c * ln_b.exp();
    Ok(IntegralValue {
        value: Complex64::new(value, 0.0),
        method: IntegralMethod::ClosedForm,
        err_est: 8.0 * f64::EPSILON * (1.0 + ln_b.abs()) * value.abs(),
    })
}

/// `C^{lambda,sigma}_{n,0} = (lambda - sigma + 1 - n)_n / n!` for `n >= 0`.
pub fn principal_prefactor(sigma: Sigma, lambda: Complex64, n: i64) -> Result<Complex64> {
    if n < 0 {
        return Err(Error::domain(format!("prefactor needs n >= 0, got {n}")));
    }
    let d = lambda - sigma.value() + 1.0 - n as f64;
    Ok(match ln_pochhammer(d, n as u64)? {
        Some(l) => (l - ln_gamma_real(n as f64 + 1.0)?).exp(),
        None => Complex64::new(0.0, 0.0),
    })
}

/// `B(n/2 + 1, -lambda + eps)`, the first term of `J_{n,eps}`.
fn j_leading_term(lambda: Complex64, n: i64, epsilon: f64) -> Result<Complex64> {
    let h0 = Complex64::new(n as f64 / 2.0 + 1.0, 0.0);
    let shift = -lambda + epsilon;
    Ok((ln_gamma(h0)? + ln_gamma(shift)? - ln_gamma(h0 + shift)?).exp())
}

/// Summand of `J_{n,eps}` as an analytic function of large `k`:
/// `(a)_k (b)_k / ((n+1)_k k!) B(n/2 + k + 1, -lambda + eps)`.
///
/// Each Gamma ratio is formed as `Gamma(k + alpha) / (Gamma(k) k^alpha)`,
/// which stays accurate where the log-Gamma values themselves are huge.
struct JSummand {
    a: Complex64,
    b: Complex64,
    n: f64,
    h: f64,
    shift: Complex64,
    /// `-(lambda + eps + 2)`, the power of `k` in the summand.
    power: Complex64,
    ln_const: Complex64,
}

impl JSummand {
    fn new(sigma: f64, lambda: Complex64, n: i64, epsilon: f64) -> Result<Self> {
        let nf = n as f64;
        let a = -lambda - sigma;
        let b = -lambda + sigma + nf;
        let shift = -lambda + epsilon;
        let ln_const = ln_gamma_real(nf + 1.0)? + ln_gamma(shift)? - ln_gamma(a)? - ln_gamma(b)?;
        Ok(JSummand {
            a,
            b,
            n: nf,
            h: nf / 2.0 + 1.0,
            shift,
            power: -(lambda + epsilon + 2.0),
            ln_const,
        })
    }

    /// Valid for `k > |b| + n + 2`.
    fn at(&self, k: f64) -> Result<Complex64> {
        let one = Complex64::new(1.0, 0.0);
        let ratio = gamma_ratio_power(k, self.a)? * gamma_ratio_power(k, self.b)?
            / gamma_ratio_power(k, one * (self.n + 1.0))?
            / gamma_ratio_power(k, one)?
            * gamma_ratio_power(k, one * self.h)?
            / gamma_ratio_power(k, self.shift + self.h)?;
        Ok((self.ln_const + self.power * k.ln()).exp() * ratio)
    }

    /// Logarithmic derivative `T'(k) / T(k)`.
    fn log_derivative(&self, k: f64) -> Result<Complex64> {
        let one = Complex64::new(1.0, 0.0);
        let h = one * (self.h + k);
        Ok(digamma(self.a + k)? + digamma(self.b + k)?
            - digamma(one * (self.n + 1.0 + k))?
            - digamma(one * (k + 1.0))?
            + digamma(h)?
            - digamma(h + self.shift)?)
    }
}

/// Terms summed directly before the Euler-Maclaurin tail takes over.
fn direct_terms(n: i64) -> u64 {
    200 + 4 * n as u64
}

/// `J_{n,eps}(sigma, lambda) = sum_k (a)_k (b)_k / ((n+1)_k k!)
///     Gamma(n/2+k+1) Gamma(-lambda+eps) / Gamma(n/2+k+1-lambda+eps)`
/// with `a = -lambda - sigma`, `b = -lambda + sigma + n`.
///
/// The terms decay like `k^{-(lambda + eps + 2)}`. The first
/// `200 + 4n` are summed directly and the rest by the midpoint
/// Euler-Maclaurin formula, whose integral is taken by quadrature.
pub fn j_series(sigma: Sigma, lambda: Complex64, n: i64, epsilon: f64, tol: f64) -> Result<IntegralValue> {
    check_tol(tol)?;
    check_cowling_strip(lambda)?;
    BetaMeasure::new(epsilon)?;
    if n < 0 {
        return Err(Error::domain(format!("J series needs n >= 0, got {n}")));
    }
    let s = sigma.value();
    if (lambda + s).norm() == 0.0 {
        return Err(Error::domain("J series needs lambda + sigma != 0"));
    }
    let nf = n as f64;
    let a = -lambda - s;
    let b = -lambda + s + nf;
    let shift = -lambda + epsilon;
    let h0 = Complex64::new(nf / 2.0 + 1.0, 0.0);
    let t0 = j_leading_term(lambda, n, epsilon)?;

    let finite = terminating_degree(a, b);
    let k_direct = finite.map_or(direct_terms(n), |d| d + 1);
    let mut sum = KahanSum::new();
    let mut term = t0;
    for k in 0..k_direct {
        sum.add(term);
        let kf = k as f64;
        term *= (a + kf) * (b + kf) / ((nf + 1.0 + kf) * (kf + 1.0)) * (nf / 2.0 + kf + 1.0)
            / (h0 + kf + shift);
    }
    let direct = sum.value();
    let rounding = 4.0 * f64::EPSILON * k_direct as f64 * direct.norm();
    if finite.is_some() {
        return Ok(IntegralValue {
            value: direct,
            method: IntegralMethod::Series,
            err_est: rounding,
        });
    }

    let summand = JSummand::new(s, lambda, n, epsilon)?;
    let k0 = k_direct as f64 - 0.5;
    let q = lambda + epsilon + 2.0;
    let p = q.re;
    // Gamma ratios in the summand need k above every shift.
    debug_assert!(k0 > b.norm() + nf + 2.0);
    // k = k0 w^{-1/(p-1)} maps the algebraic tail onto a bounded integrand on (0, 1].
    let g = 1.0 / (p - 1.0);
    let tail_fn = |w: f64| -> Result<Complex64> {
        if w == 0.0 {
            return Ok(Complex64::new(0.0, 0.0));
        }
        let k = k0 * w.powf(-g);
        if !k.is_finite() {
            return Ok(Complex64::new(0.0, 0.0));
        }
        Ok(summand.at(k)? * (k * g / w))
    };
    let opts = QuadOptions {
        abs_tol: 1e-300,
        rel_tol: tol.max(1e-13),
        max_intervals: 4000,
    };
    let integral = integrate(tail_fn, 0.0, 1.0, opts)?;
    let t_mid = summand.at(k0)?;
    let d1 = t_mid * summand.log_derivative(k0)?;
    let tail = integral.value + d1 / 24.0;
    // The next correction is -7 T'''/5760; T''' ~ T' (q+1)(q+2) / k^2 for an algebraic tail.
    let next = 7.0 / 5760.0 * (d1 * (q + 1.0) * (q + 2.0)).norm() / (k0 * k0);
    Ok(IntegralValue {
        value: direct + tail,
        method: IntegralMethod::Series,
        err_est: rounding + integral.err_est + next,
    })
}

/// `C^{lambda,sigma}_{n,0} eps J_{n,eps}`, the series route to `I_{n,eps}`.
pub fn i_principal_series(sigma: Sigma, lambda: Complex64, n: i64, beta: &BetaMeasure, tol: f64) -> Result<IntegralValue> {
    let j = j_series(sigma, lambda, n, beta.epsilon, tol)?;
    let k = principal_prefactor(sigma, lambda, n)? * beta.c;
    Ok(IntegralValue {
        value: j.value * k,
        method: IntegralMethod::Series,
        err_est: j.err_est * k.norm(),
    })
}

/// `C_lambda(n, 0) I_{n,eps}(0, lambda)` for the complementary series.
pub fn i_complementary(lambda: f64, n: i64, beta: &BetaMeasure, tol: f64) -> Result<IntegralValue> {
    RepSpec::complementary(lambda)?;
    let norm = complementary_normalization(lambda, n, 0)?;
    let i = i_principal_quadrature(Sigma::Zero, Complex64::new(lambda, 0.0), n, beta, tol)?;
    Ok(IntegralValue {
        value: i.value * norm,
        method: i.method,
        err_est: i.err_est * norm,
    })
}

/// `int <pi(a_x) f_m, f_n> d beta` for the discrete series as a finite sum of
/// Beta integrals. With `j_n = n - l/2`, `j_m = m - l/2`, `B = (n+m-l)/2`:
///
/// `eps J_{n,m} sum_k C(j_n, k) (-j_m)_k / (l)_k
///     Gamma(B - k + 1) Gamma(l/2 + k + eps) / Gamma((n+m)/2 + 1 + eps)`.
pub fn i_discrete(ell: u32, m: KIndex, n: KIndex, beta: &BetaMeasure) -> Result<IntegralValue> {
    let rep = RepSpec::discrete(ell)?;
    if !rep.contains(m) || !rep.contains(n) {
        return Err(Error::domain(format!("{m} and {n} must both be basis labels of {rep}")));
    }
    let l = ell as f64;
    let half = l / 2.0;
    let eps = beta.epsilon;
    let (nv, mv) = (n.value(), m.value());
    let jn = nv - half;
    let jm = mv - half;
    let base = (nv + mv - l) / 2.0;
    let ln_j = -ln_gamma_real(l)?
        + 0.5 * (ln_gamma_real(nv + half)? + ln_gamma_real(mv + half)? - ln_gamma_real(jn + 1.0)? - ln_gamma_real(jm + 1.0)?);
    let sign_j = if (jn as i64) % 2 == 0 { 1.0 } else { -1.0 };
    let ln_den = ln_gamma_real((nv + mv) / 2.0 + 1.0 + eps)?;
    let top = jn.min(jm) as u64;
    let mut logs = Vec::with_capacity(top as usize + 1);
    for k in 0..=top {
        let kf = k as f64;
        // (-j_m)_k = (-1)^k j_m! / (j_m - k)!
        let ln_c = ln_binomial(jn, kf)? + ln_gamma_real(jm + 1.0)? - ln_gamma_real(jm - kf + 1.0)?
            - (ln_gamma_real(l + kf)? - ln_gamma_real(l)?);
        let ln_beta = ln_gamma_real(base - kf + 1.0)? + ln_gamma_real(half + kf + eps)? - ln_den;
        logs.push((ln_c + ln_beta, if k % 2 == 0 { 1.0 } else { -1.0 }));
    }
    let peak = logs.iter().map(|v| v.0).fold(f64::NEG_INFINITY, f64::max);
    let (mut sum, mut abs_sum) = (KahanSum::new(), 0.0);
    for (lv, s) in &logs {
        let v = (lv - peak).exp();
        sum.add(Complex64::new(s * v, 0.0));
        abs_sum += v;
    }
    let scale = beta.c * (ln_j + peak).exp();
    let value = sign_j * scale * sum.value().re;
    Ok(IntegralValue {
        value: Complex64::new(value, 0.0),
        method: IntegralMethod::FiniteSum,
        err_est: scale * abs_sum * 8.0 * f64::EPSILON * (1.0 + logs.len() as f64)
            + 8.0 * f64::EPSILON * (1.0 + (ln_j + peak).abs()) * value.abs(),
    })
}

/// Partial sum `sum_{k<=n} k^{-c}` against its Euler-Maclaurin form.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FaulhaberValue {
    pub exact: Complex64,
    pub asymptotic: Complex64,
    pub difference: Complex64,
}

/// Compares `sum_{k=1}^n k^{-c}` with `n^{1-c}/(1-c) + zeta(c) + n^{-c}/2`.
pub fn faulhaber_sum(c: Complex64, n: u64) -> Result<FaulhaberValue> {
    if n == 0 {
        return Err(Error::domain("n must be at least 1"));
    }
    if c == Complex64::new(1.0, 0.0) {
        return Err(Error::domain("the power sum at c = 1 is harmonic, not a power"));
    }
    let mut sum = KahanSum::new();
    for k in 1..=n {
        sum.add((-c * (k as f64).ln()).exp());
    }
    let exact = sum.value();
    let ln_n = (n as f64).ln();
    let asymptotic = ((1.0 - c) * ln_n).exp() / (1.0 - c) + zeta(c)? + (-c * ln_n).exp() * 0.5;
    Ok(FaulhaberValue {
        exact,
        asymptotic,
        difference: exact - asymptotic,
    })
}

/// `z |Gamma(z + alpha) / Gamma(z) z^{-alpha} - 1|`, which stays bounded as
/// `z` grows.
pub fn stirling_ratio_check(z: f64, alpha: Complex64) -> Result<f64> {
    Ok((gamma_ratio_power(z, alpha)? - 1.0).norm() * z)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cx(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn measure(eps: f64) -> BetaMeasure {
        BetaMeasure::new(eps).unwrap()
    }

    #[test]
    fn measure_normaliser() {
        for eps in [0.25, 0.5, 1.0] {
            assert_eq!(measure(eps).c(), eps);
        }
        assert!(BetaMeasure::new(0.0).is_err());
        assert!(BetaMeasure::new(-1.0).is_err());
        // For eps = 1 the measure is dx, and the coefficient of discrete(2) at m = n = 1 is 1 - x.
        let one = KIndex::new(1);
        let v = i_discrete(2, one, one, &measure(1.0)).unwrap().value.re;
        assert!((v - 0.5).abs() < 1e-15);
    }

    #[test]
    fn limit_series_matches_beta_values() {
        let b = measure(0.5);
        let q = i_principal_quadrature(Sigma::Half, cx(-0.5, 0.0), 0, &b, 1e-12).unwrap();
        assert!((q.value - 0.5).norm() < 1e-12);
        let b = measure(0.25);
        let want = 0.25 * (ln_gamma_real(3.0).unwrap() + ln_gamma_real(0.75).unwrap() - ln_gamma_real(3.75).unwrap()).exp();
        let q = i_principal_quadrature(Sigma::Half, cx(-0.5, 0.0), 4, &b, 1e-12).unwrap();
        assert!((q.value.re - want).abs() < 1e-10, "{} vs {want}", q.value);
        assert!((i_limit_closed_form(4, &b).unwrap().value.re - want).abs() < 1e-15);
    }

    #[test]
    fn limit_series_sign_pattern() {
        let b = measure(0.75);
        for n in 0..20 {
            let q = i_principal_quadrature(Sigma::Half, cx(-0.5, 0.0), n, &b, 1e-12).unwrap();
            let c = i_limit_closed_form(n, &b).unwrap();
            assert!((q.value - c.value).norm() < 1e-10, "n = {n}");
            assert_eq!(q.value.re.signum(), if n % 2 == 0 { 1.0 } else { -1.0 });
        }
    }

    #[test]
    fn j_series_leading_term() {
        // At n = 0 the k = 0 term is B(1, -lambda + eps) = 1 / (-lambda + eps).
        let lambda = cx(-0.5, 0.0);
        let eps = 0.25;
        let t0 = j_leading_term(lambda, 0, eps).unwrap();
        let want = (ln_gamma_real(1.0).unwrap() + ln_gamma_real(0.75).unwrap() - ln_gamma_real(1.75).unwrap()).exp();
        assert!((t0.re - want).abs() < 1e-14 && t0.im.abs() < 1e-14);
        assert!((want - 1.0 / 0.75).abs() < 1e-14);
    }

    #[test]
    fn j_series_matches_quadrature() {
        let lambda = cx(-0.5, 0.0);
        for eps in [0.25, 0.4] {
            let b = measure(eps);
            for n in [0i64, 1, 4, 8, 16, 32, 64] {
                let s = i_principal_series(Sigma::Zero, lambda, n, &b, 1e-12).unwrap();
                let q = i_principal_quadrature(Sigma::Zero, lambda, n, &b, 1e-10).unwrap();
                let rel = (s.value - q.value).norm() / q.value.norm();
                assert!(rel < 1e-8, "eps {eps} n {n}: {} vs {} ({rel:e})", s.value, q.value);
            }
        }
        let lambda = cx(-0.3, 0.8);
        let b = measure(0.3);
        for n in [2i64, 9] {
            let s = i_principal_series(Sigma::Half, lambda, n, &b, 1e-12).unwrap();
            let q = i_principal_quadrature(Sigma::Half, lambda, n, &b, 1e-10).unwrap();
            assert!((s.value - q.value).norm() < 1e-8 * q.value.norm(), "n {n}: {} vs {}", s.value, q.value);
        }
    }

    #[test]
    fn complementary_orders_agree() {
        let b = measure(0.25);
        let r = RepSpec::complementary(-0.25).unwrap();
        for n in [0i64, 3, 10] {
            let a = i_complementary(-0.25, n, &b, 1e-11).unwrap();
            let d = integral_quadrature(&r, KIndex::new(n), KIndex::new(0), &b, 1e-11).unwrap();
            assert!((a.value - d.value).norm() < 1e-8 * d.value.norm(), "n {n}");
            assert!(a.value.norm() > 0.0);
        }
    }

    #[test]
    fn discrete_sum_matches_quadrature() {
        let b = measure(0.5);
        let r2 = RepSpec::discrete(2).unwrap();
        let one = KIndex::new(1);
        for n in [1i64, 2, 7, 20] {
            let s = i_discrete(2, one, KIndex::new(n), &b).unwrap();
            let nf = n as f64;
            let ln_b = ln_gamma_real((nf - 1.0) / 2.0 + 1.0).unwrap() + ln_gamma_real(1.5).unwrap()
                - ln_gamma_real((nf + 1.0) / 2.0 + 1.5).unwrap();
            let sign = if (n - 1) % 2 == 0 { 1.0 } else { -1.0 };
            let want = sign * 0.5 * nf.sqrt() * ln_b.exp();
            assert!((s.value.re - want).abs() < 1e-14 * want.abs(), "n = {n}");
            let q = integral_quadrature(&r2, KIndex::new(n), one, &b, 1e-12).unwrap();
            assert!((q.value.re - want).abs() < 1e-9 * want.abs());
        }
        let r3 = RepSpec::discrete(3).unwrap();
        let m = KIndex::from_twice(5);
        let mut t = 3;
        while t <= 64 {
            let n = KIndex::from_twice(t);
            let s = i_discrete(3, m, n, &b).unwrap();
            let q = integral_quadrature(&r3, n, m, &b, 1e-12).unwrap();
            assert!((s.value - q.value).norm() < 1e-9 * s.value.norm().max(1e-3), "n = {n}");
            t += 2;
        }
        assert!(i_discrete(2, KIndex::new(0), one, &b).is_err());
    }

    #[test]
    fn faulhaber_examples() {
        let f = faulhaber_sum(cx(0.0, 0.0), 37).unwrap();
        assert!((f.exact - 37.0).norm() < 1e-12 && f.difference.norm() < 1e-12);
        let f = faulhaber_sum(cx(0.5, 0.0), 100).unwrap();
        assert!((f.exact.re - 18.589_603_824_784_152).abs() < 1e-10);
        assert!(f.difference.norm() < 1e-3);
        let e1 = faulhaber_sum(cx(1.0, 1.0), 1000).unwrap().difference.norm();
        let e2 = faulhaber_sum(cx(1.0, 1.0), 2000).unwrap().difference.norm();
        assert!(e2 / e1 <= 0.6, "{e1} {e2}");
        assert!(faulhaber_sum(cx(1.0, 0.0), 10).is_err());
    }

    #[test]
    fn stirling_examples() {
        assert_eq!(stirling_ratio_check(50.0, cx(0.0, 0.0)).unwrap(), 0.0);
        assert_eq!(stirling_ratio_check(50.0, cx(1.0, 0.0)).unwrap(), 0.0);
        for alpha in [cx(0.5, 0.0), cx(-0.5, 0.3)] {
            let v: Vec<f64> = [1e2, 1e3, 1e4].iter().map(|&z| stirling_ratio_check(z, alpha).unwrap()).collect();
            // The limit is |alpha (alpha - 1) / 2|.
            let lim = (alpha * (alpha - 1.0) / 2.0).norm();
            for x in &v {
                assert!((x - lim).abs() < 0.01 * lim.max(0.1), "{alpha}: {v:?}");
            }
        }
    }
}
