//! The unitary dual of SU(1,1): parameters, K-spectra, closed-form matrix
//! coefficients and an independent circle-quadrature oracle.
//!
//! All coefficients use `coef(n, m, x) = <pi(a_x) e_m, e_n>`, the component of
//! `pi(a_x) e_m` along the basis vector `e_n`.

mod complementary;
mod discrete;
mod oracle;
mod principal;

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::group::CartanCoord;

pub use complementary::complementary_normalization;
pub use oracle::{coef_oracle, coef_oracle_discrete, coef_oracle_principal, OracleValue};

use complementary::ComplementaryKernel;
use discrete::DiscreteKernel;
use principal::PrincipalKernel;

/// Above this `x` the closed forms switch to expansions around `x = 1` once
/// the Gauss series becomes long.
pub const X_CUT: f64 = 0.98;

/// Relative accuracy targeted by the closed forms.
pub(crate) const COEF_TOL: f64 = 1e-15;

/// A basis label, stored as twice its value so that the half-integer labels
/// of discrete series with odd `l` are exact.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct KIndex {
    twice: i64,
}

impl KIndex {
    pub const fn new(n: i64) -> Self {
        KIndex { twice: 2 * n }
    }

    pub const fn from_twice(twice: i64) -> Self {
        KIndex { twice }
    }

    pub fn from_f64(v: f64) -> Result<Self> {
        let t = 2.0 * v;
        if !t.is_finite() || t.fract() != 0.0 || t.abs() > 1e15 {
            return Err(Error::domain(format!("basis label must be a multiple of 1/2, got {v}")));
        }
        Ok(KIndex { twice: t as i64 })
    }

    pub const fn twice(self) -> i64 {
        self.twice
    }

    pub fn value(self) -> f64 {
        self.twice as f64 / 2.0
    }

    pub fn as_integer(self) -> Option<i64> {
        (self.twice % 2 == 0).then_some(self.twice / 2)
    }

    fn integer(self, what: &str) -> Result<i64> {
        self.as_integer()
            .ok_or_else(|| Error::domain(format!("{what} needs an integer label, got {self}")))
    }
}

impl fmt::Display for KIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value())
    }
}

impl FromStr for KIndex {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        KIndex::from_f64(parse_real(s)?)
    }
}

impl Serialize for KIndex {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self.as_integer() {
            Some(n) => s.serialize_i64(n),
            None => s.serialize_f64(self.value()),
        }
    }
}

impl<'de> Deserialize<'de> for KIndex {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let v = f64::deserialize(d)?;
        KIndex::from_f64(v).map_err(serde::de::Error::custom)
    }
}

/// The two parities of the principal series.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Sigma {
    Zero,
    Half,
}

impl Sigma {
    pub fn value(self) -> f64 {
        match self {
            Sigma::Zero => 0.0,
            Sigma::Half => 0.5,
        }
    }

    fn twice(self) -> i64 {
        match self {
            Sigma::Zero => 0,
            Sigma::Half => 1,
        }
    }
}

impl FromStr for Sigma {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let v = parse_real(s)?;
        if v == 0.0 {
            Ok(Sigma::Zero)
        } else if v == 0.5 {
            Ok(Sigma::Half)
        } else {
            Err(Error::domain(format!("sigma must be 0 or 1/2, got {s}")))
        }
    }
}

/// A representation of SU(1,1) with its defining parameters.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum RepSpec {
    Principal { sigma: Sigma, lambda: Complex64 },
    Complementary { lambda: f64 },
    Discrete { ell: u32 },
}

impl RepSpec {
    pub fn principal(sigma: Sigma, lambda: Complex64) -> Result<Self> {
        let r = RepSpec::Principal { sigma, lambda };
        r.validate()?;
        Ok(r)
    }

    pub fn complementary(lambda: f64) -> Result<Self> {
        let r = RepSpec::Complementary { lambda };
        r.validate()?;
        Ok(r)
    }

    pub fn discrete(ell: u32) -> Result<Self> {
        let r = RepSpec::Discrete { ell };
        r.validate()?;
        Ok(r)
    }

    pub fn validate(&self) -> Result<()> {
        match *self {
            RepSpec::Principal { lambda, .. } => {
                if !(lambda.re.is_finite() && lambda.im.is_finite()) {
                    return Err(Error::domain(format!("lambda must be finite, got {lambda}")));
                }
            }
            RepSpec::Complementary { lambda } => {
                if !(lambda > -0.5 && lambda < 0.0) {
                    return Err(Error::domain(format!(
                        "complementary series needs -1/2 < lambda < 0, got {lambda}"
                    )));
                }
            }
            RepSpec::Discrete { ell } => {
                if ell < 2 {
                    return Err(Error::domain(format!("discrete series needs l >= 2, got {ell}")));
                }
            }
        }
        Ok(())
    }

    pub fn is_unitary(&self) -> bool {
        match *self {
            RepSpec::Principal { lambda, .. } => (lambda.re + 0.5).abs() <= 1e-14,
            RepSpec::Complementary { .. } | RepSpec::Discrete { .. } => true,
        }
    }

    /// Principal series are irreducible unless `lambda + sigma` is an integer.
    pub fn is_irreducible(&self) -> bool {
        match *self {
            RepSpec::Principal { sigma, lambda } => {
                let s = lambda.re + sigma.value();
                lambda.im != 0.0 || s.fract() != 0.0
            }
            _ => true,
        }
    }

    /// The vector the matrix coefficients are taken against by default.
    pub fn lowest(&self) -> KIndex {
        match *self {
            RepSpec::Discrete { ell } => KIndex::from_twice(ell as i64),
            _ => KIndex::new(0),
        }
    }

    pub fn contains(&self, k: KIndex) -> bool {
        match *self {
            RepSpec::Discrete { ell } => {
                let d = k.twice() - ell as i64;
                d >= 0 && d % 2 == 0
            }
            _ => k.as_integer().is_some(),
        }
    }

    pub(crate) fn check_index(&self, k: KIndex) -> Result<()> {
        if self.contains(k) {
            Ok(())
        } else {
            Err(Error::domain(format!("{k} is not a basis label of {self}")))
        }
    }

    /// K-character of `e_n`: `2n + 2 sigma`, or `2n` for discrete series.
    pub fn character(&self, k: KIndex) -> i64 {
        match *self {
            RepSpec::Principal { sigma, .. } => k.twice() + sigma.twice(),
            _ => k.twice(),
        }
    }

    /// Basis labels whose characters satisfy `|kappa| <= limit`, ascending.
    pub fn k_spectrum(&self, limit: i64) -> Vec<KIndex> {
        match *self {
            RepSpec::Discrete { ell } => (ell as i64..=limit)
                .step_by(2)
                .map(KIndex::from_twice)
                .collect(),
            _ => {
                let shift = self.character(KIndex::new(0));
                (-limit..=limit)
                    .filter(|c| (c - shift) % 2 == 0)
                    .map(|c| KIndex::from_twice(c - shift))
                    .collect()
            }
        }
    }
}

impl fmt::Display for RepSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            RepSpec::Principal { sigma, lambda } => {
                let s = if sigma == Sigma::Zero { "0" } else { "1/2" };
                if lambda.im == 0.0 {
                    write!(f, "principal:{s}:{}", lambda.re)
                } else {
                    let sign = if lambda.im < 0.0 { "-" } else { "+" };
                    write!(f, "principal:{s}:{}{sign}{}i", lambda.re, lambda.im.abs())
                }
            }
            RepSpec::Complementary { lambda } => write!(f, "complementary:{lambda}"),
            RepSpec::Discrete { ell } => write!(f, "discrete:{ell}"),
        }
    }
}

impl FromStr for RepSpec {
    type Err = Error;

    /// Parses `principal:<sigma>:<lambda>`, `complementary:<lambda>` or
    /// `discrete:<l>`, e.g. `principal:0:-1/2+1i`.
    fn from_str(s: &str) -> Result<Self> {
        let parts: Vec<&str> = s.trim().split(':').collect();
        match parts.as_slice() {
            ["principal", sigma, lambda] => RepSpec::principal(sigma.parse()?, parse_complex(lambda)?),
            ["complementary", lambda] => RepSpec::complementary(parse_real(lambda)?),
            ["discrete", ell] => {
                let ell: u32 = ell
                    .trim()
                    .parse()
                    .map_err(|_| Error::domain(format!("bad discrete parameter {ell}")))?;
                RepSpec::discrete(ell)
            }
            _ => Err(Error::domain(format!(
                "unrecognised representation {s}; expected principal:<sigma>:<lambda>, complementary:<lambda> or discrete:<l>"
            ))),
        }
    }
}

impl Serialize for RepSpec {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for RepSpec {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Parses a real number, allowing a fraction `p/q`.
pub fn parse_real(s: &str) -> Result<f64> {
    let s = s.trim();
    let bad = || Error::domain(format!("cannot parse number {s:?}"));
    let v = match s.split_once('/') {
        Some((p, q)) => {
            let p: f64 = p.trim().parse().map_err(|_| bad())?;
            let q: f64 = q.trim().parse().map_err(|_| bad())?;
            p / q
        }
        None => s.parse().map_err(|_| bad())?,
    };
    if v.is_finite() {
        Ok(v)
    } else {
        Err(bad())
    }
}

/// Parses `a`, `bi`, `a+bi` or `a-bi` (with `i` or `j`, fractions allowed).
pub fn parse_complex(s: &str) -> Result<Complex64> {
    let s: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    let Some(body) = s.strip_suffix('i').or_else(|| s.strip_suffix('j')) else {
        return Ok(Complex64::new(parse_real(&s)?, 0.0));
    };
    let bytes = body.as_bytes();
    let split = (1..bytes.len())
        .rev()
        .find(|&i| (bytes[i] == b'+' || bytes[i] == b'-') && !matches!(bytes[i - 1], b'e' | b'E'));
    let imag = |t: &str| -> Result<f64> {
        match t {
            "" | "+" => Ok(1.0),
            "-" => Ok(-1.0),
            _ => parse_real(t),
        }
    };
    match split {
        Some(i) => Ok(Complex64::new(parse_real(&body[..i])?, imag(&body[i..])?)),
        None => Ok(Complex64::new(0.0, imag(body)?)),
    }
}

/// Which evaluation path produced a coefficient.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    /// Gauss series or terminating sum in `x`.
    ClosedForm,
    /// Connection formula in `1 - x`.
    NearOne,
    /// Circle quadrature.
    Oracle,
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Method::ClosedForm => "closed",
            Method::NearOne => "near_one",
            Method::Oracle => "oracle",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CoefValue {
    pub value: Complex64,
    pub method: Method,
    pub err_est: f64,
}

impl CoefValue {
    pub(crate) fn exact(value: f64) -> Self {
        CoefValue {
            value: Complex64::new(value, 0.0),
            method: Method::ClosedForm,
            err_est: 0.0,
        }
    }
}

enum Kernel {
    Principal(PrincipalKernel),
    Complementary(ComplementaryKernel),
    Discrete(DiscreteKernel),
}

/// A matrix coefficient `x -> coef(n, m, x)` with all `x`-independent
/// factors precomputed.
pub struct CoefEvaluator {
    rep: RepSpec,
    n: KIndex,
    m: KIndex,
    kernel: Kernel,
}

/// Relative error above which a closed-form value is re-evaluated by the
/// oracle, where the oracle is affordable.
const ORACLE_FALLBACK_REL: f64 = 1e-10;

impl CoefEvaluator {
    pub fn new(rep: &RepSpec, n: KIndex, m: KIndex) -> Result<Self> {
        rep.validate()?;
        rep.check_index(n)?;
        rep.check_index(m)?;
        let kernel = match *rep {
            RepSpec::Principal { sigma, lambda } => Kernel::Principal(PrincipalKernel::new(
                sigma.value(),
                lambda,
                n.integer("principal series")?,
                m.integer("principal series")?,
            )?),
            RepSpec::Complementary { lambda } => Kernel::Complementary(ComplementaryKernel::new(
                lambda,
                n.integer("complementary series")?,
                m.integer("complementary series")?,
            )?),
            RepSpec::Discrete { ell } => Kernel::Discrete(DiscreteKernel::new(ell, n, m)?),
        };
        Ok(CoefEvaluator {
            rep: *rep,
            n,
            m,
            kernel,
        })
    }

    pub fn rep(&self) -> &RepSpec {
        &self.rep
    }

    pub fn n(&self) -> KIndex {
        self.n
    }

    pub fn m(&self) -> KIndex {
        self.m
    }

    /// Closed-form evaluation only, without the oracle fallback.
    pub fn eval_closed(&self, c: &CartanCoord) -> Result<CoefValue> {
        match &self.kernel {
            Kernel::Principal(k) => k.eval(c),
            Kernel::Complementary(k) => k.eval(c),
            Kernel::Discrete(k) => k.eval(c),
        }
    }

    pub fn eval(&self, c: &CartanCoord) -> Result<CoefValue> {
        let closed = self.eval_closed(c);
        let fallback = match &closed {
            Ok(v) => v.err_est > ORACLE_FALLBACK_REL * v.value.norm() && c.x() <= X_CUT,
            Err(Error::Convergence { .. }) => true,
            Err(_) => false,
        };
        if !fallback {
            return closed;
        }
        match oracle::coef_oracle_single(&self.rep, self.n, self.m, c) {
            Ok(o) => match closed {
                Ok(v) if v.err_est <= o.err_est => Ok(v),
                _ => Ok(o),
            },
            Err(e) => closed.or(Err(e)),
        }
    }
}

/// `<pi(a_x) e_m, e_n>` for any representation.
pub fn coef(rep: &RepSpec, n: KIndex, m: KIndex, c: &CartanCoord) -> Result<CoefValue> {
    CoefEvaluator::new(rep, n, m)?.eval(c)
}

/// Principal series coefficient `t_{n,m}^{lambda,sigma}(x)`.
pub fn coef_principal(sigma: Sigma, lambda: Complex64, n: i64, m: i64, c: &CartanCoord) -> Result<CoefValue> {
    coef(&RepSpec::principal(sigma, lambda)?, KIndex::new(n), KIndex::new(m), c)
}

/// Complementary series coefficient `C_lambda(n, m) t_{n,m}^{lambda,0}(x)`.
pub fn coef_complementary(lambda: f64, n: i64, m: i64, c: &CartanCoord) -> Result<CoefValue> {
    coef(&RepSpec::complementary(lambda)?, KIndex::new(n), KIndex::new(m), c)
}

/// Discrete series coefficient in the orthonormal Bargmann basis.
pub fn coef_discrete(ell: u32, n: KIndex, m: KIndex, c: &CartanCoord) -> Result<CoefValue> {
    coef(&RepSpec::discrete(ell)?, n, m, c)
}

/// `sum_n |coef(n, m, x)|^2` over the whole K-spectrum, truncated once the
/// geometric tail is below `tol`. Equals 1 for unitary representations.
pub fn column_norm_sq(rep: &RepSpec, m: KIndex, c: &CartanCoord, tol: f64) -> Result<f64> {
    rep.check_index(m)?;
    let y = c.one_minus_x();
    let past_peak = (4.0 / y).min(1e7) as i64 + 16;
    let mut total = 0.0;
    let mut walk = |dir: i64, start: i64| -> Result<()> {
        let mut k = start;
        loop {
            let n = KIndex::from_twice(m.twice() + 2 * dir * k);
            if !rep.contains(n) {
                return Ok(());
            }
            let v = CoefEvaluator::new(rep, n, m)?.eval_closed(c)?.value.norm_sqr();
            total += v;
            if k > past_peak && v * (1.0 + 1.0 / y) <= tol * total.max(f64::MIN_POSITIVE) {
                return Ok(());
            }
            if k > 50_000_000 {
                return Err(Error::convergence("column sum did not terminate", total, v));
            }
            k += 1;
        }
    };
    walk(1, 0)?;
    walk(-1, 1)?;
    Ok(total)
}

/// Full coefficient column `n -> coef(n, m, x)` for `|n| <= n_max` from the
/// closed forms.
pub fn coef_column(rep: &RepSpec, m: KIndex, c: &CartanCoord, n_max: KIndex) -> Result<BTreeMap<KIndex, CoefValue>> {
    let mut out = BTreeMap::new();
    let lo = match rep {
        RepSpec::Discrete { ell } => *ell as i64,
        _ => -n_max.twice(),
    };
    let mut t = lo;
    while t <= n_max.twice() {
        let n = KIndex::from_twice(t);
        if rep.contains(n) {
            out.insert(n, coef(rep, n, m, c)?);
        }
        t += 1;
    }
    Ok(out)
}
