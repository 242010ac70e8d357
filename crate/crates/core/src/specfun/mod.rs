//! Special functions: complex Gamma family, Gauss hypergeometric function
//! (series, connection formulas and an integral oracle), Riemann zeta.

mod gamma;
mod hyp;
mod zeta;

pub use gamma::{
    beta, digamma, digamma_int, gamma, gamma_pole_index, gamma_ratio_power, gamma_ratio_signed, ln_1p,
    ln_binomial, ln_gamma, ln_gamma_ratio, ln_gamma_real, ln_pochhammer, pochhammer,
};
pub use hyp::{hyp2f1, hyp2f1_euler, hyp2f1_near_one, terminating_degree, HypValue, MAX_TERMS};
pub use zeta::zeta;

use num_complex::Complex64;

/// Compensated (Kahan-Babuska) summation of complex numbers.
#[derive(Debug, Clone, Copy, Default)]
pub struct KahanSum {
    sum: Complex64,
    comp: Complex64,
}

impl KahanSum {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add(&mut self, v: Complex64) {
        self.sum.re = neumaier(self.sum.re, v.re, &mut self.comp.re);
        self.sum.im = neumaier(self.sum.im, v.im, &mut self.comp.im);
    }

    pub fn value(&self) -> Complex64 {
        self.sum + self.comp
    }
}

fn neumaier(sum: f64, v: f64, comp: &mut f64) -> f64 {
    let t = sum + v;
    if sum.abs() >= v.abs() {
        *comp += (sum - t) + v;
    } else {
        *comp += (v - t) + sum;
    }
    t
}
