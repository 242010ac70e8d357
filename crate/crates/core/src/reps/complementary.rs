use num_complex::Complex64;

use super::principal::PrincipalKernel;
use super::CoefValue;
use crate::error::{Error, Result};
use crate::group::CartanCoord;
use crate::specfun::ln_gamma_ratio;

/// `ln h_k` with `h_k = Gamma(lambda - k + 1) / Gamma(-lambda - k)`, the
/// weights of the invariant inner product on the K-finite vectors.
fn ln_weight(lambda: f64, k: i64) -> Result<Complex64> {
    let l = Complex64::new(lambda, 0.0);
    ln_gamma_ratio(&[l - k as f64 + 1.0], &[-l - k as f64])?
        .ok_or_else(|| Error::Normalization(vec![k]))
}

/// `C_lambda(n, m) = sqrt(h_n / h_m)`, which makes the basis `e_n` of the
/// complementary series orthonormal.
///
/// Fails with a normalisation error when `h_n / h_m` is not positive.
pub fn complementary_normalization(lambda: f64, n: i64, m: i64) -> Result<f64> {
    if !lambda.is_finite() || lambda.fract() == 0.0 {
        return Err(Error::domain(format!("lambda must be a finite non-integer, got {lambda}")));
    }
    let ln_ratio = ln_weight(lambda, n)? - ln_weight(lambda, m)?;
    let r = ln_ratio.exp();
    if !(r.re > 0.0) || r.im.abs() > 1e-8 * r.norm() {
        return Err(Error::Normalization(vec![n, m]));
    }
    Ok((0.5 * ln_ratio.re).exp())
}

#[derive(Debug, Clone)]
pub(crate) struct ComplementaryKernel {
    norm: f64,
    inner: PrincipalKernel,
}

impl ComplementaryKernel {
    pub(crate) fn new(lambda: f64, n: i64, m: i64) -> Result<Self> {
        Ok(ComplementaryKernel {
            norm: complementary_normalization(lambda, n, m)?,
            inner: PrincipalKernel::new(0.0, Complex64::new(lambda, 0.0), n, m)?,
        })
    }

    pub(crate) fn eval(&self, c: &CartanCoord) -> Result<CoefValue> {
        let v = self.inner.eval(c)?;
        Ok(CoefValue {
            value: v.value * self.norm,
            method: v.method,
            err_est: v.err_est * self.norm,
        })
    }
}
