use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::rational_to_f64;

/// Which pair of (weight scale, zero-free radius) constants applies.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Regime {
    /// gamma = 3/50, omega = 61/1000; any 1 < m <= n.
    #[default]
    Standard,
    /// gamma = 9/50, omega = 181/1000; needs m >= 10 and n >= 4m.
    LargeGap,
}

impl Regime {
    pub fn max_gamma(self) -> BigRational {
        match self {
            Regime::Standard => ratio(3, 50),
            Regime::LargeGap => ratio(9, 50),
        }
    }

    pub fn omega(self) -> BigRational {
        match self {
            Regime::Standard => ratio(61, 1000),
            Regime::LargeGap => ratio(181, 1000),
        }
    }
}

impl fmt::Display for Regime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Regime::Standard => "standard",
            Regime::LargeGap => "large-gap",
        })
    }
}

impl FromStr for Regime {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "standard" => Ok(Regime::Standard),
            "large-gap" => Ok(Regime::LargeGap),
            _ => Err(Error::Parameter(format!("unknown regime {s:?}"))),
        }
    }
}

pub(crate) fn ratio(p: i64, q: i64) -> BigRational {
    BigRational::new(BigInt::from(p), BigInt::from(q))
}

/// Parses `p/q`, an integer, or a plain decimal like `0.06` into an exact rational.
pub fn parse_rational(s: &str) -> Result<BigRational> {
    let s = s.trim();
    let bad = || Error::Parameter(format!("not a rational number: {s:?}"));
    if let Some((p, q)) = s.split_once('/') {
        let p: BigInt = p.trim().parse().map_err(|_| bad())?;
        let q: BigInt = q.trim().parse().map_err(|_| bad())?;
        if q.is_zero() {
            return Err(bad());
        }
        return Ok(BigRational::new(p, q));
    }
    let (neg, body) = match s.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, s),
    };
    let (int_part, frac_part) = body.split_once('.').unwrap_or((body, ""));
    if int_part.is_empty() && frac_part.is_empty() {
        return Err(bad());
    }
    if !int_part.chars().chain(frac_part.chars()).all(|c| c.is_ascii_digit()) {
        return Err(bad());
    }
    let digits = format!("{int_part}{frac_part}");
    let numer: BigInt = if digits.is_empty() { BigInt::zero() } else { digits.parse().map_err(|_| bad())? };
    let denom = num_traits::pow(BigInt::from(10), frac_part.len());
    let r = BigRational::new(numer, denom);
    Ok(if neg { -r } else { r })
}

/// Subset size and weight constants for one run.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlgorithmParams {
    m: usize,
    regime: Regime,
    #[serde(with = "rational_text")]
    gamma: BigRational,
    #[serde(with = "rational_text")]
    omega: BigRational,
}

/// Serializes rationals as `"p/q"` strings.
pub mod rational_text {
    use num_rational::BigRational;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(r: &BigRational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&format!("{}/{}", r.numer(), r.denom()))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigRational, D::Error> {
        let text = String::deserialize(d)?;
        super::parse_rational(&text).map_err(serde::de::Error::custom)
    }
}

impl AlgorithmParams {
    /// Parameters with gamma at the regime maximum.
    pub fn new(m: usize, regime: Regime) -> Result<Self> {
        Self::with_gamma(m, regime, regime.max_gamma())
    }

    pub fn standard(m: usize) -> Result<Self> {
        Self::new(m, Regime::Standard)
    }

    /// Gamma may be lowered below the regime constant but not raised past it.
    pub fn with_gamma(m: usize, regime: Regime, gamma: BigRational) -> Result<Self> {
        if m < 2 {
            return Err(Error::Parameter(format!("subset size m must exceed 1, got {m}")));
        }
        if !gamma.is_positive() {
            return Err(Error::Parameter("gamma must be positive".into()));
        }
        let cap = regime.max_gamma();
        if gamma > cap {
            return Err(Error::Parameter(format!("gamma {gamma} exceeds the {regime} regime maximum {cap}")));
        }
        Ok(AlgorithmParams { m, regime, gamma, omega: regime.omega() })
    }

    /// Checks the constraints that involve the vertex count.
    pub fn validate_for(&self, n: usize) -> Result<()> {
        if self.m > n {
            return Err(Error::Parameter(format!("m = {} exceeds n = {n}", self.m)));
        }
        if self.regime == Regime::LargeGap && (self.m < 10 || n < 4 * self.m) {
            return Err(Error::Regime { m: self.m, n });
        }
        Ok(())
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn regime(&self) -> Regime {
        self.regime
    }

    pub fn gamma(&self) -> &BigRational {
        &self.gamma
    }

    pub fn gamma_f64(&self) -> f64 {
        rational_to_f64(&self.gamma)
    }

    pub fn omega(&self) -> &BigRational {
        &self.omega
    }

    /// Root-exclusion radius omega / gamma.
    pub fn beta(&self) -> BigRational {
        &self.omega / &self.gamma
    }

    pub fn beta_f64(&self) -> f64 {
        rational_to_f64(&self.beta())
    }

    /// delta = gamma / (m - 1), the admissible deviation of each weight from 1.
    pub fn delta(&self) -> BigRational {
        &self.gamma / BigRational::from_integer(BigInt::from(self.m - 1))
    }

    pub fn delta_f64(&self) -> f64 {
        rational_to_f64(&self.delta())
    }

    /// Number of vertex pairs inside an m-subset.
    pub fn pair_count(&self) -> usize {
        self.m * (self.m - 1) / 2
    }
}
