use num_complex::Complex64;

use super::{CoefValue, Method, COEF_TOL, X_CUT};
use crate::error::{Error, Result};
use crate::group::CartanCoord;
use crate::specfun::{hyp2f1, hyp2f1_near_one, ln_gamma_real, ln_pochhammer, terminating_degree, HypValue};

/// The connection formula is used once `(1 - x) * max(|n|, |m|)` drops below
/// this; above it the Gauss series converges in a bounded number of terms.
const NEAR_ONE_SCALE: f64 = 10.0;

/// `t_{n,m}(x) = C x^{|n-m|/2} (1-x)^{-lambda} 2F1(a, b; c; x)` with
///
/// * `n >= m`: `C = (lambda - sigma + 1 - n)_{n-m} / (n-m)!`,
///   `a = -lambda - m - sigma`, `b = -lambda + n + sigma`, `c = n - m + 1`;
/// * `m > n`: `C = (lambda + n + sigma + 1)_{m-n} / (m-n)!`,
///   `a = -lambda - n - sigma`, `b = -lambda + m + sigma`, `c = m - n + 1`.
#[derive(Debug, Clone)]
pub(crate) struct PrincipalKernel {
    lambda: Complex64,
    /// `None` when the coefficient vanishes identically.
    ln_c: Option<Complex64>,
    a: Complex64,
    b: Complex64,
    c: Complex64,
    power: f64,
    scale: f64,
    diagonal: bool,
}

impl PrincipalKernel {
    pub(crate) fn new(sigma: f64, lambda: Complex64, n: i64, m: i64) -> Result<Self> {
        let one = Complex64::new(1.0, 0.0);
        let (d, k, a, b) = if n >= m {
            (lambda - sigma + 1.0 - n as f64, (n - m) as u64, -lambda - m as f64 - sigma, -lambda + n as f64 + sigma)
        } else {
            (lambda + n as f64 + sigma + 1.0, (m - n) as u64, -lambda - n as f64 - sigma, -lambda + m as f64 + sigma)
        };
        let ln_c = ln_pochhammer(d, k)?.map(|l| l - ln_gamma_real(k as f64 + 1.0).unwrap_or(0.0));
        if !(lambda.re.is_finite() && lambda.im.is_finite()) {
            return Err(Error::domain("lambda must be finite"));
        }
        Ok(PrincipalKernel {
            lambda,
            ln_c,
            a,
            b,
            c: one * (k as f64 + 1.0),
            power: k as f64 / 2.0,
            scale: n.unsigned_abs().max(m.unsigned_abs()) as f64 + 1.0,
            diagonal: n == m,
        })
    }

    fn hypergeometric(&self, cc: &CartanCoord) -> Result<(HypValue, Method)> {
        let x = cc.x();
        let y = cc.one_minus_x();
        let series = terminating_degree(self.a, self.b).is_some() || x <= X_CUT || y * self.scale > NEAR_ONE_SCALE;
        if series {
            return Ok((hyp2f1(self.a, self.b, self.c, x, COEF_TOL)?, Method::ClosedForm));
        }
        match hyp2f1_near_one(self.a, self.b, self.c, y, COEF_TOL) {
            Ok(v) => Ok((v, Method::NearOne)),
            Err(Error::Convergence { .. }) => Ok((hyp2f1(self.a, self.b, self.c, x, COEF_TOL)?, Method::ClosedForm)),
            Err(e) => Err(e),
        }
    }

    pub(crate) fn eval(&self, cc: &CartanCoord) -> Result<CoefValue> {
        let Some(ln_c) = self.ln_c else {
            return Ok(CoefValue::exact(0.0));
        };
        let x = cc.x();
        if x == 0.0 {
            return Ok(CoefValue::exact(if self.diagonal { 1.0 } else { 0.0 }));
        }
        let (f, method) = self.hypergeometric(cc)?;
        let ln_p = ln_c + self.power * x.ln() - self.lambda * cc.one_minus_x().ln();
        let p = ln_p.exp();
        let value = p * f.value;
        let rounding = 4.0 * f64::EPSILON * (1.0 + ln_p.norm()) * value.norm();
        Ok(CoefValue {
            value,
            method,
            err_est: p.norm() * f.err_est + rounding,
        })
    }
}
