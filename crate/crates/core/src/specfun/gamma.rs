use std::f64::consts::{LN_2, PI};

use num_complex::Complex64;

use crate::error::{Error, Result};

const LN_SQRT_2PI: f64 = 0.918_938_533_204_672_8;
const LN_PI: f64 = 1.144_729_885_849_400_2;
const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;

/// Stirling coefficients `B_{2k} / (2k (2k-1))`.
const STIRLING: [f64; 10] = [
    1.0 / 12.0,
    -1.0 / 360.0,
    1.0 / 1260.0,
    -1.0 / 1680.0,
    1.0 / 1188.0,
    -691.0 / 360_360.0,
    1.0 / 156.0,
    -3617.0 / 122_400.0,
    43867.0 / 244_188.0,
    -174_611.0 / 125_400.0,
];

/// Digamma asymptotic coefficients `B_{2k} / (2k)`.
const DIGAMMA_ASYM: [f64; 8] = [
    1.0 / 12.0,
    -1.0 / 120.0,
    1.0 / 252.0,
    -1.0 / 240.0,
    1.0 / 132.0,
    -691.0 / 32760.0,
    1.0 / 12.0,
    -3617.0 / 8160.0,
];

/// Below this modulus the argument is shifted upwards before the asymptotic
/// series is used.
const ASYMPTOTIC_RADIUS: f64 = 15.0;

/// If `z` is a pole of Gamma (a non-positive integer) returns `-z`.
pub fn gamma_pole_index(z: Complex64) -> Option<u64> {
    if z.im == 0.0 && z.re <= 0.0 && z.re.fract() == 0.0 && z.re > -9.0e15 {
        Some((-z.re) as u64)
    } else {
        None
    }
}

fn stirling_tail(z: Complex64) -> Complex64 {
    let inv = z.inv();
    let inv2 = inv * inv;
    let mut acc = Complex64::new(0.0, 0.0);
    let mut p = inv;
    for c in STIRLING {
        acc += p * c;
        p *= inv2;
    }
    acc
}

/// `ln sin(pi z)` modulo `2 pi i`, without overflow for large `|Im z|`.
fn ln_sin_pi(z: Complex64) -> Complex64 {
    // Reduce the real part into [-1, 1]; this is exact in floating point.
    let r = z.re - 2.0 * (z.re / 2.0).round();
    let w = Complex64::new(r, z.im);
    if w.im.abs() < 5.0 {
        let (s, c) = (PI * w.re).sin_cos();
        let v = Complex64::new(s * (PI * w.im).cosh(), c * (PI * w.im).sinh());
        return v.ln();
    }
    if w.im < 0.0 {
        return ln_sin_pi(w.conj()).conj();
    }
    // sin(pi w) = (i/2) e^{-i pi w} (1 - e^{2 i pi w}) with |e^{2 i pi w}| tiny.
    let i = Complex64::i();
    let e2 = (i * 2.0 * PI * w).exp();
    -i * PI * w + (Complex64::new(1.0, 0.0) - e2).ln() + Complex64::new(-LN_2, PI / 2.0)
}

/// Complex `ln Gamma(z)`.
///
/// The real part is exact up to rounding; the imaginary part is only fixed
/// modulo `2 pi` when `Re z < 1/2`, which is irrelevant after
/// exponentiation.
pub fn ln_gamma(z: Complex64) -> Result<Complex64> {
    if !(z.re.is_finite() && z.im.is_finite()) {
        return Err(Error::domain(format!("ln_gamma of non-finite {z}")));
    }
    if gamma_pole_index(z).is_some() {
        return Err(Error::Pole(format!("{z}")));
    }
    if z.re < 0.5 {
        let one = Complex64::new(1.0, 0.0);
        return Ok(Complex64::new(LN_PI, 0.0) - ln_sin_pi(z) - ln_gamma(one - z)?);
    }
    let mut w = z;
    let mut shift = Complex64::new(0.0, 0.0);
    while w.norm() < ASYMPTOTIC_RADIUS {
        shift += w.ln();
        w += 1.0;
    }
    Ok((w - 0.5) * w.ln() - w + LN_SQRT_2PI + stirling_tail(w) - shift)
}

/// Real `ln |Gamma(x)|` for `x > 0`.
pub fn ln_gamma_real(x: f64) -> Result<f64> {
    if !(x > 0.0) {
        return Err(Error::domain(format!("ln_gamma_real needs x > 0, got {x}")));
    }
    Ok(ln_gamma(Complex64::new(x, 0.0))?.re)
}

/// Complex Gamma function.
pub fn gamma(z: Complex64) -> Result<Complex64> {
    Ok(ln_gamma(z)?.exp())
}

/// `ln` of a Gamma ratio `prod Gamma(num) / prod Gamma(den)`.
///
/// Poles are paired in increasing order and replaced by the limit
/// `Gamma(-j + d) / Gamma(-k + d) -> (-1)^{j-k} k!/j!`, which is the right
/// value whenever the paired arguments differ by an integer. Returns `None`
/// when the ratio vanishes because of an unpaired denominator pole.
pub fn ln_gamma_ratio(num: &[Complex64], den: &[Complex64]) -> Result<Option<Complex64>> {
    let mut acc = Complex64::new(0.0, 0.0);
    let mut num_poles = Vec::new();
    let mut den_poles = Vec::new();
    for &z in num {
        match gamma_pole_index(z) {
            Some(j) => num_poles.push(j),
            None => acc += ln_gamma(z)?,
        }
    }
    for &z in den {
        match gamma_pole_index(z) {
            Some(k) => den_poles.push(k),
            None => acc -= ln_gamma(z)?,
        }
    }
    if num_poles.len() > den_poles.len() {
        return Err(Error::Pole(format!(
            "unpaired numerator poles at {:?}",
            num_poles.iter().map(|j| -(*j as f64)).collect::<Vec<_>>()
        )));
    }
    if den_poles.len() > num_poles.len() {
        return Ok(None);
    }
    num_poles.sort_unstable();
    den_poles.sort_unstable();
    for (&j, &k) in num_poles.iter().zip(&den_poles) {
        let lf = |n: u64| ln_gamma_real(n as f64 + 1.0);
        acc += Complex64::new(lf(k)? - lf(j)?, PI * ((j as f64) - (k as f64)));
    }
    Ok(Some(acc))
}

/// `prod Gamma(num) / prod Gamma(den)` evaluated in log space.
pub fn gamma_ratio_signed(num: &[Complex64], den: &[Complex64]) -> Result<Complex64> {
    Ok(match ln_gamma_ratio(num, den)? {
        Some(l) => l.exp(),
        None => Complex64::new(0.0, 0.0),
    })
}

/// Euler Beta function.
pub fn beta(a: Complex64, b: Complex64) -> Result<Complex64> {
    gamma_ratio_signed(&[a, b], &[a + b])
}

/// Rising factorial `(d)_m`.
///
/// Small `m` use the product directly, so `(d)_{m+1} = (d)_m (d+m)` holds
/// bit for bit there.
pub fn pochhammer(d: Complex64, m: u64) -> Complex64 {
    if m <= 512 {
        let mut p = Complex64::new(1.0, 0.0);
        for k in 0..m {
            p *= d + k as f64;
        }
        return p;
    }
    gamma_ratio_signed(&[d + m as f64], &[d]).unwrap_or(Complex64::new(f64::NAN, f64::NAN))
}

/// `ln (d)_m`, or `None` when the rising factorial is exactly zero.
pub fn ln_pochhammer(d: Complex64, m: u64) -> Result<Option<Complex64>> {
    if let Some(j) = gamma_pole_index(d) {
        if m > j {
            return Ok(None);
        }
    }
    if m <= 16 {
        let p = pochhammer(d, m);
        return Ok(Some(p.ln()));
    }
    ln_gamma_ratio(&[d + m as f64], &[d])
}

/// `ln` of the binomial coefficient `C(n, k)` for real `n >= k >= 0`.
pub fn ln_binomial(n: f64, k: f64) -> Result<f64> {
    Ok(ln_gamma_real(n + 1.0)? - ln_gamma_real(k + 1.0)? - ln_gamma_real(n - k + 1.0)?)
}

fn cot_pi(z: Complex64) -> Complex64 {
    let r = z.re - (z.re).round();
    let w = Complex64::new(r, z.im);
    if w.im.abs() < 5.0 {
        let s = (w * PI).sin();
        let c = (w * PI).cos();
        return c / s;
    }
    if w.im < 0.0 {
        return cot_pi(w.conj()).conj();
    }
    let i = Complex64::i();
    let e2 = (i * 2.0 * PI * w).exp();
    i * (e2 + 1.0) / (e2 - 1.0)
}

/// Complex digamma function `psi = Gamma'/Gamma`.
pub fn digamma(z: Complex64) -> Result<Complex64> {
    if !(z.re.is_finite() && z.im.is_finite()) {
        return Err(Error::domain(format!("digamma of non-finite {z}")));
    }
    if gamma_pole_index(z).is_some() {
        return Err(Error::Pole(format!("{z}")));
    }
    if z.re < 0.5 {
        let one = Complex64::new(1.0, 0.0);
        return Ok(digamma(one - z)? - cot_pi(z) * PI);
    }
    let mut w = z;
    let mut shift = Complex64::new(0.0, 0.0);
    while w.norm() < ASYMPTOTIC_RADIUS {
        shift += w.inv();
        w += 1.0;
    }
    let inv = w.inv();
    let inv2 = inv * inv;
    let mut p = inv2;
    let mut tail = Complex64::new(0.0, 0.0);
    for c in DIGAMMA_ASYM {
        tail += p * c;
        p *= inv2;
    }
    Ok(w.ln() - inv * 0.5 - tail - shift)
}

/// `psi(k + 1)` for a non-negative integer `k`.
pub fn digamma_int(k: u64) -> f64 {
    if k > 64 {
        return digamma(Complex64::new(k as f64 + 1.0, 0.0)).map(|v| v.re).unwrap_or(f64::NAN);
    }
    let mut h = -EULER_GAMMA;
    for j in 1..=k {
        h += 1.0 / j as f64;
    }
    h
}

/// Accurate complex `ln(1 + w)`.
pub fn ln_1p(w: Complex64) -> Complex64 {
    if w.norm() < 0.5 {
        let re = 0.5 * (2.0 * w.re + w.norm_sqr()).ln_1p();
        let im = w.im.atan2(1.0 + w.re);
        Complex64::new(re, im)
    } else {
        (w + 1.0).ln()
    }
}

/// `Gamma(z + alpha) / (Gamma(z) z^alpha)` for real `z > |alpha| + 1`,
/// accurate enough that `(ratio - 1) z` can be formed.
pub fn gamma_ratio_power(z: f64, alpha: Complex64) -> Result<Complex64> {
    if !(z > alpha.norm() + 1.0) {
        return Err(Error::domain(format!("need z > |alpha| + 1, got z = {z}, alpha = {alpha}")));
    }
    let one = Complex64::new(1.0, 0.0);
    if alpha.im == 0.0 && alpha.re >= 0.0 && alpha.re.fract() == 0.0 && alpha.re <= 64.0 {
        let mut p = one;
        for k in 0..alpha.re as u64 {
            p *= Complex64::new(1.0 + k as f64 / z, 0.0);
        }
        return Ok(p);
    }
    let zc = Complex64::new(z, 0.0);
    let za = zc + alpha;
    if z >= ASYMPTOTIC_RADIUS && za.norm() >= ASYMPTOTIC_RADIUS {
        let l = ln_1p(alpha / z);
        let lr = (za - 0.5) * l - alpha + stirling_tail(za) - stirling_tail(zc);
        return Ok(lr.exp());
    }
    Ok((ln_gamma(za)? - ln_gamma(zc)? - alpha * z.ln()).exp())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn rel(a: Complex64, b: Complex64) -> f64 {
        (a - b).norm() / b.norm()
    }

    #[test]
    fn gamma_at_integers_and_half_integers() {
        let mut f = 1.0;
        for n in 1..30 {
            let g = gamma(c(n as f64, 0.0)).unwrap();
            assert!(rel(g, c(f, 0.0)) < 1e-14, "n = {n}");
            f *= n as f64;
        }
        let sqrt_pi = PI.sqrt();
        assert!(rel(gamma(c(0.5, 0.0)).unwrap(), c(sqrt_pi, 0.0)) < 1e-14);
        assert!(rel(gamma(c(-0.5, 0.0)).unwrap(), c(-2.0 * sqrt_pi, 0.0)) < 1e-14);
        assert!(rel(gamma(c(-2.5, 0.0)).unwrap(), c(-8.0 * sqrt_pi / 15.0, 0.0)) < 1e-14);
    }

    #[test]
    fn gamma_complex_reference_values() {
        // Reference values from a 30-digit evaluation.
        let g = gamma(c(0.5, 1.0)).unwrap();
        assert!(rel(g, c(0.300_694_617_260_655_8, -0.424_967_879_433_123_8)) < 1e-14);
        let g = gamma(c(-1.3, 0.7)).unwrap();
        assert!(rel(g, c(0.335_641_539_898_461_1, 0.588_608_036_467_630_7)) < 1e-13);
        let l = ln_gamma(c(100.0, 50.0)).unwrap();
        assert!((l.re - 347.053_049_933_172_5).abs() < 1e-12);
    }

    #[test]
    fn gamma_modulus_on_critical_line() {
        // |Gamma(1/2 + i y)|^2 = pi / cosh(pi y).
        for y in [0.1, 1.0, 5.0, 30.0, 200.0] {
            let l = ln_gamma(c(0.5, y)).unwrap();
            let want = 0.5 * (PI.ln() - (PI * y).cosh().ln());
            assert!((l.re - want).abs() < 1e-12 * want.abs().max(1.0), "y = {y}");
        }
    }

    #[test]
    fn poles_are_reported() {
        assert!(matches!(ln_gamma(c(-3.0, 0.0)), Err(Error::Pole(_))));
        assert!(matches!(ln_gamma(c(0.0, 0.0)), Err(Error::Pole(_))));
        assert!(ln_gamma(c(-3.0, 1e-300)).is_ok());
    }

    #[test]
    fn paired_poles_give_the_limit() {
        // Gamma(-3 + d) / Gamma(-1 + d) -> 1 / ((-3)(-2)) = 1/6.
        let r = gamma_ratio_signed(&[c(-3.0, 0.0)], &[c(-1.0, 0.0)]).unwrap();
        assert!(rel(r, c(1.0 / 6.0, 0.0)) < 1e-14);
        let r = gamma_ratio_signed(&[c(2.0, 0.0)], &[c(-4.0, 0.0)]).unwrap();
        assert_eq!(r, c(0.0, 0.0));
        assert!(gamma_ratio_signed(&[c(-2.0, 0.0)], &[c(3.0, 0.0)]).is_err());
    }

    #[test]
    fn pochhammer_matches_ratio() {
        let d = c(0.3, -1.2);
        let p = pochhammer(d, 40);
        let g = gamma_ratio_signed(&[d + 40.0], &[d]).unwrap();
        assert!(rel(p, g) < 1e-12);
        assert_eq!(pochhammer(c(-3.0, 0.0), 4), c(0.0, 0.0));
        assert_eq!(ln_pochhammer(c(-3.0, 0.0), 4).unwrap(), None);
        let big = ln_pochhammer(c(-600.0, 0.0), 600).unwrap().unwrap();
        assert!((big.re - ln_gamma_real(601.0).unwrap()).abs() < 1e-9);
    }

    #[test]
    fn digamma_values() {
        assert!((digamma_int(0) + EULER_GAMMA).abs() < 1e-16);
        let d = digamma(c(0.5, 0.0)).unwrap();
        assert!((d.re - (-EULER_GAMMA - 2.0 * LN_2)).abs() < 1e-14);
        // psi(-0.5) = psi(0.5) + 2.
        let d = digamma(c(-0.5, 0.0)).unwrap();
        assert!((d.re - (-EULER_GAMMA - 2.0 * LN_2 + 2.0)).abs() < 1e-13);
        let z = c(2.5, 3.0);
        let lhs = digamma(z + 1.0).unwrap();
        let rhs = digamma(z).unwrap() + z.inv();
        assert!(rel(lhs, rhs) < 1e-14);
        assert!((digamma_int(100) - digamma(c(101.0, 0.0)).unwrap().re).abs() < 1e-13);
    }

    #[test]
    fn ratio_power_is_exact_for_integer_shift() {
        for z in [1e2, 1e3, 1e4] {
            assert_eq!(gamma_ratio_power(z, c(1.0, 0.0)).unwrap(), c(1.0, 0.0));
            let r = gamma_ratio_power(z, c(0.5, 0.0)).unwrap();
            let s = ((r - 1.0) * z).norm();
            assert!((s - 0.125).abs() < 1e-3, "{s}");
        }
    }
}
