use num_complex::Complex64;

use super::{CoefValue, KIndex, Method};
use crate::error::Result;
use crate::group::CartanCoord;
use crate::specfun::ln_gamma_real;

/// Discrete series coefficient in the orthonormal basis
/// `f_n = (-1)^{n-l/2} sqrt(C(n+l/2-1, n-l/2)) z^{n-l/2}`:
///
/// `<pi(a_x) f_m, f_n> = J_{n,m} x^{(n+m-l)/2} (1-x)^{l/2}
///     sum_k C(n-l/2, k) (l/2-m)_k / (l)_k ((1-x)/x)^k`
///
/// with `J_{n,m} = (-1)^{n-l/2} / Gamma(l)
///     sqrt(Gamma(n+l/2) Gamma(m+l/2) / (Gamma(n+1-l/2) Gamma(m+1-l/2)))`.
/// The sum is the terminating `2F1(l/2-n, l/2-m; l; -(1-x)/x)`.
#[derive(Debug, Clone)]
pub(crate) struct DiscreteKernel {
    half_ell: f64,
    /// `(n + m - l) / 2`.
    base_power: f64,
    ln_j: f64,
    sign_j: f64,
    /// `ln |c_k|` and the sign of `c_k` for each term.
    terms: Vec<(f64, f64)>,
    diagonal: bool,
}

impl DiscreteKernel {
    pub(crate) fn new(ell: u32, n: KIndex, m: KIndex) -> Result<Self> {
        let l = ell as f64;
        let half = l / 2.0;
        let (nv, mv) = (n.value(), m.value());
        let jn = ((n.twice() - ell as i64) / 2) as u64;
        let jm = ((m.twice() - ell as i64) / 2) as u64;
        let ln_j = -ln_gamma_real(l)?
            + 0.5
                * (ln_gamma_real(nv + half)? + ln_gamma_real(mv + half)?
                    - ln_gamma_real(nv + 1.0 - half)?
                    - ln_gamma_real(mv + 1.0 - half)?);
        let sign_j = if jn % 2 == 0 { 1.0 } else { -1.0 };
        let mut terms = Vec::with_capacity(jn.min(jm) as usize + 1);
        let (mut ln_c, mut sign) = (0.0, 1.0);
        for k in 0..=jn.min(jm) {
            terms.push((ln_c, sign));
            let kf = k as f64;
            ln_c += ((jn as f64 - kf) * (jm as f64 - kf) / ((kf + 1.0) * (l + kf))).ln();
            sign = -sign;
        }
        Ok(DiscreteKernel {
            half_ell: half,
            base_power: (nv + mv - l) / 2.0,
            ln_j,
            sign_j,
            terms,
            diagonal: n == m,
        })
    }

    pub(crate) fn eval(&self, c: &CartanCoord) -> Result<CoefValue> {
        let x = c.x();
        if x == 0.0 {
            return Ok(CoefValue::exact(if self.diagonal { 1.0 } else { 0.0 }));
        }
        let (ln_x, ln_y) = (x.ln(), c.one_minus_x().ln());
        let ln_terms: Vec<f64> = self
            .terms
            .iter()
            .enumerate()
            .map(|(k, (ln_c, _))| {
                let k = k as f64;
                ln_c + (self.base_power - k) * ln_x + (self.half_ell + k) * ln_y
            })
            .collect();
        let top = ln_terms.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
        let (mut sum, mut abs_sum) = (0.0, 0.0);
        for (lt, (_, s)) in ln_terms.iter().zip(&self.terms) {
            let v = (lt - top).exp();
            sum += s * v;
            abs_sum += v;
        }
        let scale = (self.ln_j + top).exp();
        let value = self.sign_j * scale * sum;
        let err = scale * abs_sum * f64::EPSILON * (2.0 + self.terms.len() as f64)
            + 4.0 * f64::EPSILON * (1.0 + (self.ln_j + top).abs()) * value.abs();
        Ok(CoefValue {
            value: Complex64::new(value, 0.0),
            method: Method::ClosedForm,
            err_est: err,
        })
    }
}
