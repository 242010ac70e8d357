use num_complex::Complex64;

use crate::error::{Error, Result};

/// Bernoulli numbers `B_2, B_4, ..., B_24`.
const BERNOULLI: [f64; 12] = [
    1.0 / 6.0,
    -1.0 / 30.0,
    1.0 / 42.0,
    -1.0 / 30.0,
    5.0 / 66.0,
    -691.0 / 2730.0,
    7.0 / 6.0,
    -3617.0 / 510.0,
    43867.0 / 798.0,
    -174_611.0 / 330.0,
    854_513.0 / 138.0,
    -236_364_091.0 / 2730.0,
];

/// Riemann zeta function by Euler-Maclaurin summation, for `s != 1` with
/// `Re s > -20`.
pub fn zeta(s: Complex64) -> Result<Complex64> {
    if s == Complex64::new(1.0, 0.0) {
        return Err(Error::domain("zeta has a pole at s = 1"));
    }
    if !(s.re > -20.0 && s.re.is_finite() && s.im.is_finite()) {
        return Err(Error::domain(format!("zeta needs Re s > -20, got {s}")));
    }
    let n = 40.0 + s.norm().ceil();
    let nn = n as u64;
    let mut acc = Complex64::new(0.0, 0.0);
    for k in 1..nn {
        acc += (-s * (k as f64).ln()).exp();
    }
    let ln_n = n.ln();
    let n_pow = (-s * ln_n).exp();
    acc += n_pow * n / (s - 1.0) + n_pow * 0.5;
    // Falling chain s (s+1) ... (s + 2j - 2) / (2j)!, times N^{-s-2j+1}.
    let mut chain = s;
    let mut fact = 2.0;
    let mut power = n_pow / n;
    for (j, b) in BERNOULLI.iter().enumerate() {
        acc += chain * power * (*b / fact);
        let k = 2.0 * j as f64;
        chain *= (s + k + 1.0) * (s + k + 2.0);
        fact *= (k + 3.0) * (k + 4.0);
        power /= n * n;
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn known_values() {
        assert!((zeta(c(2.0, 0.0)).unwrap().re - PI * PI / 6.0).abs() < 1e-15);
        assert!((zeta(c(0.0, 0.0)).unwrap().re + 0.5).abs() < 1e-15);
        let v = zeta(c(-1.0, 0.0)).unwrap().re;
        assert!((v + 1.0 / 12.0).abs() < 1e-12, "{v}");
        assert!((zeta(c(0.5, 0.0)).unwrap().re + 1.460_354_508_809_586_8).abs() < 1e-14);
        // First nontrivial zero.
        assert!(zeta(c(0.5, 14.134_725_141_734_693)).unwrap().norm() < 1e-12);
        assert!(zeta(c(1.0, 0.0)).is_err());
    }
}
