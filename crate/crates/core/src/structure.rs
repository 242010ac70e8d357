//! Structural constants of real rank one groups and `SL(n, R)`, the
//! minimal-principal-series gap bound, and Sobolev domination thresholds.
//! Everything here is exact rational arithmetic.

use std::fmt;
use std::str::FromStr;

use num_rational::Rational64;

use crate::error::{Error, Result};

/// A Lie algebra family together with its rank parameter `n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum LieFamily {
    So1n(u32),
    Su1n(u32),
    Sp1n(u32),
    F4m20,
    SlnR(u32),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct LieType {
    family: LieFamily,
    rank_k: u32,
}

impl LieType {
    pub fn new(family: LieFamily) -> Result<Self> {
        let need = |n: u32, min: u32, name: &str| -> Result<()> {
            if n < min {
                return Err(Error::domain(format!("{name} needs n >= {min}, got {n}")));
            }
            Ok(())
        };
        let rank_k = match family {
            LieFamily::So1n(n) => {
                need(n, 2, "so(1,n)")?;
                n / 2
            }
            LieFamily::Su1n(n) => {
                need(n, 1, "su(1,n)")?;
                n
            }
            LieFamily::Sp1n(n) => {
                need(n, 1, "sp(1,n)")?;
                n + 1
            }
            LieFamily::F4m20 => 4,
            LieFamily::SlnR(n) => {
                need(n, 2, "sl(n,R)")?;
                n / 2
            }
        };
        Ok(LieType { family, rank_k })
    }

    pub fn family(&self) -> LieFamily {
        self.family
    }

    /// Rank of the maximal compact subgroup.
    pub fn rank_k(&self) -> u32 {
        self.rank_k
    }
}

impl fmt::Display for LieType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.family {
            LieFamily::So1n(n) => write!(f, "so(1,{n})"),
            LieFamily::Su1n(n) => write!(f, "su(1,{n})"),
            LieFamily::Sp1n(n) => write!(f, "sp(1,{n})"),
            LieFamily::F4m20 => write!(f, "f4(-20)"),
            LieFamily::SlnR(n) => write!(f, "sl({n},R)"),
        }
    }
}

impl FromStr for LieType {
    type Err = Error;

    /// Accepts `so(1,n)`, `su(1,n)`, `sp(1,n)`, `f4(-20)` and `sl(n,R)`.
    fn from_str(s: &str) -> Result<Self> {
        let t: String = s.chars().filter(|c| !c.is_whitespace()).collect::<String>().to_lowercase();
        let bad = || Error::domain(format!("unknown Lie algebra '{s}'"));
        if t == "f4(-20)" || t == "f4" {
            return LieType::new(LieFamily::F4m20);
        }
        let (name, rest) = t.split_once('(').ok_or_else(bad)?;
        let args = rest.strip_suffix(')').ok_or_else(bad)?;
        let (p, q) = args.split_once(',').ok_or_else(bad)?;
        let num = |v: &str| v.parse::<u32>().map_err(|_| bad());
        let family = match (name, p, q) {
            ("so", "1", n) => LieFamily::So1n(num(n)?),
            ("su", "1", n) => LieFamily::Su1n(num(n)?),
            ("sp", "1", n) => LieFamily::Sp1n(num(n)?),
            ("sl", n, "r") => LieFamily::SlnR(num(n)?),
            _ => return Err(bad()),
        };
        LieType::new(family)
    }
}

/// A reduced fraction, displayed as `p/q` or `p`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct RationalValue(Rational64);

impl RationalValue {
    pub fn new(num: i64, den: i64) -> Self {
        RationalValue(Rational64::new(num, den))
    }

    pub fn integer(v: i64) -> Self {
        RationalValue(Rational64::from_integer(v))
    }

    pub fn num(&self) -> i64 {
        *self.0.numer()
    }

    pub fn den(&self) -> i64 {
        *self.0.denom()
    }

    pub fn to_f64(&self) -> f64 {
        self.num() as f64 / self.den() as f64
    }

    pub fn ratio(&self) -> Rational64 {
        self.0
    }
}

impl fmt::Display for RationalValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// The structural constant `c_g`.
pub fn structural_constant(t: &LieType) -> RationalValue {
    match t.family {
        LieFamily::So1n(n) => RationalValue::new(n as i64 - 1, 2),
        LieFamily::Su1n(n) => RationalValue::integer(n as i64),
        LieFamily::Sp1n(n) => RationalValue::integer(2 * n as i64 + 1),
        LieFamily::F4m20 => RationalValue::integer(11),
        LieFamily::SlnR(n) => {
            let n = n as i64;
            RationalValue::new(n * (n * n - 1), 12)
        }
    }
}

/// `2 c_g + rank K + c R`, the bound on the Sobolev gap of minimal
/// principal series. The constant `c` has no default.
pub fn mps_gap_bound(t: &LieType, c: f64, r: f64) -> Result<f64> {
    if !(c > 0.0 && c.is_finite()) {
        return Err(Error::domain(format!("c must be positive, got {c}")));
    }
    if !(r >= 0.0 && r.is_finite()) {
        return Err(Error::domain(format!("R must be non-negative, got {r}")));
    }
    let exact = structural_constant(t).ratio() * 2 + Rational64::from_integer(t.rank_k as i64);
    Ok(RationalValue(exact).to_f64() + c * r)
}

/// The exact part `2 c_g + rank K` of [`mps_gap_bound`].
pub fn mps_gap_offset(t: &LieType) -> RationalValue {
    RationalValue(structural_constant(t).ratio() * 2 + Rational64::from_integer(t.rank_k as i64))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SeriesKind {
    PrincipalMps,
    GeneralizedVerma,
    OtherDiscrete,
}

impl FromStr for SeriesKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().replace(['_', '-'], "").as_str() {
            "principalmps" | "principal" => Ok(SeriesKind::PrincipalMps),
            "generalizedverma" | "verma" => Ok(SeriesKind::GeneralizedVerma),
            "otherdiscrete" | "discrete" => Ok(SeriesKind::OtherDiscrete),
            _ => Err(Error::domain(format!("unknown series kind '{s}'"))),
        }
    }
}

impl fmt::Display for SeriesKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SeriesKind::PrincipalMps => "principal_mps",
            SeriesKind::GeneralizedVerma => "generalized_verma",
            SeriesKind::OtherDiscrete => "other_discrete",
        })
    }
}

/// Sobolev order above which the relative traces converge.
pub fn domination_threshold(t: &LieType, series: SeriesKind) -> Result<RationalValue> {
    match t.family {
        LieFamily::So1n(n) => Ok(RationalValue::new(n as i64 - 1, 2)),
        LieFamily::Su1n(n) => {
            let n = n as i64;
            Ok(match series {
                SeriesKind::PrincipalMps => RationalValue::new(2 * n - 1, 2),
                SeriesKind::GeneralizedVerma => RationalValue::new(n, 2),
                SeriesKind::OtherDiscrete => RationalValue::integer(n - 1),
            })
        }
        _ => Err(Error::domain(format!("no domination threshold is available for {t}"))),
    }
}

/// K-type bound exponent `(n-1)/2` and Sobolev domination threshold `n/2`
/// for the Lorentz group `SO(1, n)`.
pub fn lorentz_sobolev_bound(n: u32) -> Result<(RationalValue, RationalValue)> {
    if n < 2 {
        return Err(Error::domain(format!("the Lorentz bound needs n >= 2, got {n}")));
    }
    let n = n as i64;
    Ok((RationalValue::new(n - 1, 2), RationalValue::new(n, 2)))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lie(s: &str) -> LieType {
        s.parse().unwrap()
    }

    fn q(p: i64, d: i64) -> RationalValue {
        RationalValue::new(p, d)
    }

    #[test]
    fn constants() {
        assert_eq!(structural_constant(&lie("so(1,2)")), q(1, 2));
        assert_eq!(structural_constant(&lie("su(1,2)")), q(2, 1));
        assert_eq!(structural_constant(&lie("sl(3,R)")), q(2, 1));
        assert_eq!(structural_constant(&lie("sl(4,R)")), q(5, 1));
        assert_eq!(structural_constant(&lie("sp(1,2)")), q(5, 1));
        assert_eq!(structural_constant(&lie("f4(-20)")), q(11, 1));
        assert_eq!(structural_constant(&lie("sl(2,R)")), structural_constant(&lie("so(1,2)")));
        assert_eq!(structural_constant(&lie("so(1,5)")).to_string(), "2");
        assert_eq!(structural_constant(&lie("so(1,4)")).to_string(), "3/2");
    }

    #[test]
    fn parsing() {
        for s in ["so(1,3)", "su(1,4)", "sp(1,2)", "f4(-20)", "sl(5,R)"] {
            assert_eq!(lie(s).to_string(), s);
        }
        for s in ["so(2,3)", "e8", "sl(1,R)", "su(1,x)"] {
            assert!(s.parse::<LieType>().is_err(), "{s}");
        }
        assert_eq!("generalized_verma".parse::<SeriesKind>().unwrap(), SeriesKind::GeneralizedVerma);
    }

    #[test]
    fn gap_bound() {
        assert_eq!(mps_gap_bound(&lie("sl(2,R)"), 1.0, 0.0).unwrap(), 2.0);
        assert_eq!(mps_gap_bound(&lie("so(1,3)"), 1.0, 0.0).unwrap(), 3.0);
        for t in ["su(1,3)", "f4(-20)", "sl(6,R)"] {
            let t = lie(t);
            assert_eq!(mps_gap_bound(&t, 0.1, 0.0).unwrap(), mps_gap_bound(&t, 7.0, 0.0).unwrap());
            let a = mps_gap_bound(&t, 0.5, 2.0).unwrap() - mps_gap_bound(&t, 0.5, 1.0).unwrap();
            assert_eq!(a, 0.5);
        }
        assert!(mps_gap_bound(&lie("so(1,3)"), 0.0, 1.0).is_err());
        assert!(mps_gap_bound(&lie("so(1,3)"), 1.0, -1.0).is_err());
    }

    #[test]
    fn thresholds() {
        for k in [SeriesKind::PrincipalMps, SeriesKind::GeneralizedVerma, SeriesKind::OtherDiscrete] {
            assert_eq!(domination_threshold(&lie("so(1,3)"), k).unwrap(), q(1, 1));
            assert!(domination_threshold(&lie("sl(3,R)"), k).is_err());
        }
        let su12 = lie("su(1,2)");
        assert_eq!(domination_threshold(&su12, SeriesKind::PrincipalMps).unwrap(), q(3, 2));
        assert_eq!(domination_threshold(&su12, SeriesKind::GeneralizedVerma).unwrap(), q(1, 1));
        assert_eq!(domination_threshold(&su12, SeriesKind::OtherDiscrete).unwrap(), q(1, 1));
        assert_eq!(
            domination_threshold(&lie("su(1,3)"), SeriesKind::GeneralizedVerma).unwrap(),
            q(3, 2)
        );
    }

    #[test]
    fn lorentz() {
        assert_eq!(lorentz_sobolev_bound(2).unwrap(), (q(1, 2), q(1, 1)));
        assert_eq!(lorentz_sobolev_bound(3).unwrap(), (q(1, 1), q(3, 2)));
        let mut prev = lorentz_sobolev_bound(2).unwrap();
        for n in 3..20 {
            let b = lorentz_sobolev_bound(n).unwrap();
            assert!(b.0 > prev.0 && b.1 > prev.1);
            prev = b;
        }
        assert!(lorentz_sobolev_bound(1).is_err());
    }
}
