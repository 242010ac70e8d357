//! SU(1,1) elements, Cartan coordinates on `A+ = [0, 1)` and the standard
//! `K x K`-invariant weights evaluated on `A`.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::quad::golden_max;

/// An element `(alpha beta; conj(beta) conj(alpha))` of SU(1,1).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GroupElement {
    alpha: Complex64,
    beta: Complex64,
}

impl GroupElement {
    pub fn new(alpha: Complex64, beta: Complex64) -> Result<Self> {
        let det = alpha.norm_sqr() - beta.norm_sqr();
        let scale = alpha.norm_sqr().max(1.0);
        if !det.is_finite() || (det - 1.0).abs() > 1e-12 * scale {
            return Err(Error::domain(format!(
                "|alpha|^2 - |beta|^2 = {det}, expected 1"
            )));
        }
        Ok(GroupElement { alpha, beta })
    }

    pub fn identity() -> Self {
        GroupElement {
            alpha: Complex64::new(1.0, 0.0),
            beta: Complex64::new(0.0, 0.0),
        }
    }

    /// The rotation `diag(e^{i phi}, e^{-i phi})` in `K`.
    pub fn rotation(phi: f64) -> Self {
        GroupElement {
            alpha: Complex64::from_polar(1.0, phi),
            beta: Complex64::new(0.0, 0.0),
        }
    }

    /// The Cartan element `a_x`.
    pub fn cartan(c: &CartanCoord) -> Self {
        GroupElement {
            alpha: Complex64::new(c.alpha(), 0.0),
            beta: Complex64::new(c.beta(), 0.0),
        }
    }

    pub fn alpha(&self) -> Complex64 {
        self.alpha
    }

    pub fn beta(&self) -> Complex64 {
        self.beta
    }

    /// `|alpha|^2 - |beta|^2`, equal to one up to rounding.
    pub fn determinant(&self) -> f64 {
        self.alpha.norm_sqr() - self.beta.norm_sqr()
    }

    pub fn compose(&self, other: &GroupElement) -> GroupElement {
        GroupElement {
            alpha: self.alpha * other.alpha + self.beta * other.beta.conj(),
            beta: self.alpha * other.beta + self.beta * other.alpha.conj(),
        }
    }

    pub fn inverse(&self) -> GroupElement {
        GroupElement {
            alpha: self.alpha.conj(),
            beta: -self.beta,
        }
    }

    /// Cartan coordinate of the double coset `K g K`.
    pub fn cartan_coord(&self) -> CartanCoord {
        let t = self.beta.norm().asinh();
        CartanCoord::from_t(t).expect("asinh of a finite modulus is a valid coordinate")
    }
}

/// A point of `A+`, stored both as `x = tanh^2 t` and as `t`.
///
/// `1 - x` is kept separately because it underflows relative precision when
/// formed from `x` near 1.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CartanCoord {
    x: f64,
    t: f64,
    one_minus_x: f64,
}

impl CartanCoord {
    pub fn from_t(t: f64) -> Result<Self> {
        if !(t >= 0.0 && t.is_finite()) {
            return Err(Error::domain(format!("Cartan parameter t must be finite and >= 0, got {t}")));
        }
        let ch = t.cosh();
        let one_minus_x = 1.0 / (ch * ch);
        if one_minus_x == 0.0 {
            return Err(Error::domain(format!("t = {t} is too large: 1 - x underflows")));
        }
        let th = t.tanh();
        Ok(CartanCoord {
            x: th * th,
            t,
            one_minus_x,
        })
    }

    pub fn from_x(x: f64) -> Result<Self> {
        if !(0.0..1.0).contains(&x) {
            return Err(Error::domain(format!("x must lie in [0, 1), got {x}")));
        }
        Ok(CartanCoord {
            x,
            t: x.sqrt().atanh(),
            one_minus_x: 1.0 - x,
        })
    }

    /// Builds the coordinate from `y = 1 - x`, keeping full relative
    /// precision in `y`.
    pub fn from_one_minus_x(y: f64) -> Result<Self> {
        if !(y > 0.0 && y <= 1.0) {
            return Err(Error::domain(format!("1 - x must lie in (0, 1], got {y}")));
        }
        let x = 1.0 - y;
        Ok(CartanCoord {
            x,
            t: (x / y).sqrt().asinh(),
            one_minus_x: y,
        })
    }

    pub fn x(&self) -> f64 {
        self.x
    }

    pub fn t(&self) -> f64 {
        self.t
    }

    pub fn one_minus_x(&self) -> f64 {
        self.one_minus_x
    }

    /// `cosh t = 1 / sqrt(1 - x)`.
    pub fn alpha(&self) -> f64 {
        1.0 / self.one_minus_x.sqrt()
    }

    /// `sinh t = sqrt(x) / sqrt(1 - x)`.
    pub fn beta(&self) -> f64 {
        (self.x / self.one_minus_x).sqrt()
    }
}

/// `K x K`-invariant weights, evaluated through the Cartan coordinate.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum WeightSpec {
    /// `(1 + t)^d`.
    Log { d: f64 },
    /// `e^{|mu| t}`.
    Exp { mu: f64 },
    /// Smallest reflexive weight dominating the listed exponents.
    Envelope { exponents: Vec<f64> },
    /// `(1 + t)^d` times the envelope of the leading exponents.
    MinimalWeight { d: u32, exponents: Vec<f64> },
}

impl WeightSpec {
    pub fn validate(&self) -> Result<()> {
        let finite = |v: &[f64]| v.iter().all(|e| e.is_finite());
        let ok = match self {
            WeightSpec::Log { d } => *d >= 0.0 && d.is_finite(),
            WeightSpec::Exp { mu } => mu.is_finite(),
            WeightSpec::Envelope { exponents } => finite(exponents),
            WeightSpec::MinimalWeight { exponents, .. } => finite(exponents),
        };
        if ok {
            Ok(())
        } else {
            Err(Error::domain(format!("invalid weight {self:?}")))
        }
    }

    fn max_rate(exponents: &[f64]) -> f64 {
        exponents.iter().fold(0.0f64, |m, e| m.max(e.abs()))
    }

    /// Value at Cartan parameter `t >= 0`.
    pub fn eval_t(&self, t: f64) -> f64 {
        match self {
            WeightSpec::Log { d } => (1.0 + t).powf(*d),
            WeightSpec::Exp { mu } => (mu.abs() * t).exp(),
            WeightSpec::Envelope { exponents } => (Self::max_rate(exponents) * t).exp(),
            WeightSpec::MinimalWeight { d, exponents } => {
                (1.0 + t).powi(*d as i32) * (Self::max_rate(exponents) * t).exp()
            }
        }
    }

    pub fn eval(&self, c: &CartanCoord) -> f64 {
        self.eval_t(c.t())
    }
}

pub fn weight_eval(w: &WeightSpec, c: &CartanCoord) -> f64 {
    w.eval(c)
}

/// Infimum of `w1(t1) w2(t - t1)` over splittings of `t` inside `A`.
///
/// This only sees factorisations within `A`, so it is an upper bound for the
/// infimum over all group factorisations.
pub fn weight_infimum(w1: &WeightSpec, w2: &WeightSpec, c: &CartanCoord, grid: usize) -> Result<f64> {
    if grid < 16 {
        return Err(Error::Precondition(format!("grid must be at least 16, got {grid}")));
    }
    w1.validate()?;
    w2.validate()?;
    let t = c.t();
    let h = t / grid as f64;
    let split = |t1: f64| w1.eval_t(t1) * w2.eval_t((t - t1).max(0.0));
    let mut best = f64::INFINITY;
    let mut best_i = 0;
    for i in 0..=grid {
        let v = split(i as f64 * h);
        if v < best {
            best = v;
            best_i = i;
        }
    }
    if h > 0.0 {
        let lo = (best_i as f64 - 1.0).max(0.0) * h;
        let hi = ((best_i + 1) as f64 * h).min(t);
        let (_, neg) = golden_max(|t1| Ok(-split(t1)), lo, hi, 60)?;
        best = best.min(-neg);
    }
    Ok(best)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn cartan_examples() {
        let c = CartanCoord::from_t(0.0).unwrap();
        assert_eq!(c.x(), 0.0);
        assert_eq!(GroupElement::cartan(&c), GroupElement::identity());
        let c = CartanCoord::from_x(0.5).unwrap();
        assert!((c.t() - 0.881_373_587_019_543).abs() < 1e-12);
        let c = CartanCoord::from_t(3.7).unwrap();
        let back = CartanCoord::from_x(c.x()).unwrap();
        assert!((back.t() - 3.7).abs() < 1e-13, "{}", back.t());
        assert!(CartanCoord::from_t(-1.0).is_err());
        assert!(CartanCoord::from_x(1.0).is_err());
    }

    #[test]
    fn one_minus_x_keeps_precision_near_one() {
        let c = CartanCoord::from_t(14.0).unwrap();
        let want = 1.0 / 14f64.cosh().powi(2);
        assert!((c.one_minus_x() / want - 1.0).abs() < 1e-15);
        let d = CartanCoord::from_one_minus_x(want).unwrap();
        assert!((d.t() - 14.0).abs() < 1e-12);
    }

    #[test]
    fn cartan_element_has_unit_determinant() {
        for t in [0.1, 1.0, 5.0, 12.0] {
            let g = GroupElement::cartan(&CartanCoord::from_t(t).unwrap());
            assert!((g.determinant() - 1.0).abs() < 1e-12 * g.alpha().norm_sqr());
            assert!((g.cartan_coord().t() - t).abs() < 1e-12 * t.max(1.0));
        }
    }

    #[test]
    fn weight_examples() {
        let c = CartanCoord::from_t(1.0).unwrap();
        assert_eq!(WeightSpec::Exp { mu: 0.0 }.eval(&c), 1.0);
        assert_eq!(WeightSpec::Envelope { exponents: vec![0.0] }.eval(&c), 1.0);
        assert!((WeightSpec::Log { d: 2.0 }.eval(&c) - 4.0).abs() < 1e-15);
        assert_eq!(WeightSpec::MinimalWeight { d: 1, exponents: vec![] }.eval(&c), 2.0);
        assert!(WeightSpec::Log { d: -1.0 }.validate().is_err());
    }

    #[test]
    fn infimum_examples() {
        let c = CartanCoord::from_t(2.0).unwrap();
        let e1 = WeightSpec::Exp { mu: 1.0 };
        let v = weight_infimum(&e1, &e1, &c, 64).unwrap();
        assert!((v - 2f64.exp()).abs() < 1e-12);
        let v = weight_infimum(&e1, &WeightSpec::Exp { mu: 0.0 }, &c, 64).unwrap();
        assert!((v - 1.0).abs() < 1e-15);
        // Brute force over a fine grid gives the endpoint value 1 * 3.
        let l1 = WeightSpec::Log { d: 1.0 };
        let brute = (0..=20_000)
            .map(|i| {
                let t1 = 2.0 * i as f64 / 20_000.0;
                (1.0 + t1) * (3.0 - t1)
            })
            .fold(f64::INFINITY, f64::min);
        let v = weight_infimum(&l1, &l1, &c, 64).unwrap();
        assert!((v - brute).abs() < 1e-12);
        assert!((v - 3.0).abs() < 1e-12);
        assert!(weight_infimum(&l1, &l1, &c, 8).is_err());
    }

    fn any_weight() -> impl Strategy<Value = WeightSpec> {
        prop_oneof![
            (0.0..4.0f64).prop_map(|d| WeightSpec::Log { d }),
            (-3.0..3.0f64).prop_map(|mu| WeightSpec::Exp { mu }),
            prop::collection::vec(-3.0..3.0f64, 0..4).prop_map(|exponents| WeightSpec::Envelope { exponents }),
            (0u32..4, prop::collection::vec(-3.0..3.0f64, 0..4))
                .prop_map(|(d, exponents)| WeightSpec::MinimalWeight { d, exponents }),
        ]
    }

    proptest! {
        #[test]
        fn weights_are_submultiplicative(w in any_weight(), t1 in 0.0..20.0f64, t2 in 0.0..20.0f64) {
            let lhs = w.eval_t(t1 + t2);
            let rhs = w.eval_t(t1) * w.eval_t(t2);
            prop_assert!(lhs <= rhs * (1.0 + 1e-12));
        }

        #[test]
        fn envelope_weights_are_at_least_one(w in any_weight(), t in 0.0..30.0f64) {
            if matches!(w, WeightSpec::Envelope { .. } | WeightSpec::MinimalWeight { .. }) {
                prop_assert!(w.eval_t(t) >= 1.0);
            }
        }

        #[test]
        fn infimum_beats_trivial_splittings(w1 in any_weight(), w2 in any_weight(), t in 0.0..10.0f64) {
            let c = CartanCoord::from_t(t).unwrap();
            let v = weight_infimum(&w1, &w2, &c, 32).unwrap();
            let trivial = (w1.eval_t(t) * w2.eval_t(0.0)).min(w1.eval_t(0.0) * w2.eval_t(t));
            prop_assert!(v <= trivial * (1.0 + 1e-12));
        }

        #[test]
        fn products_preserve_determinant(
            params in prop::collection::vec((0.0..2.0f64, 0.0..6.3f64, 0.0..6.3f64), 1..20)
        ) {
            let mut g = GroupElement::identity();
            for (t, phi, psi) in params {
                let a = GroupElement::cartan(&CartanCoord::from_t(t).unwrap());
                let h = GroupElement::rotation(phi).compose(&a).compose(&GroupElement::rotation(psi));
                g = g.compose(&h);
                let scale = g.alpha().norm_sqr();
                prop_assert!((g.determinant() - 1.0).abs() <= 1e-10 * scale.max(1.0));
            }
            let e = g.compose(&g.inverse());
            prop_assert!((e.alpha() - 1.0).norm() < 1e-8 * g.alpha().norm_sqr());
        }
    }
}
