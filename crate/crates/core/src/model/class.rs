use std::fmt;
use std::str::FromStr;

use crate::error::{usage, Error, Result};

/// `r!` as a float.
pub fn factorial(r: u32) -> f64 {
    (1..=r).map(f64::from).product()
}

/// Which detector construction the derivative bound calls for.
///
/// The thresholds are `r!` and `2^r r!`; the lower endpoint belongs to
/// `Small` and the upper one to `Large`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Regime {
    Large,
    Moderate,
    Small,
}

impl Regime {
    pub fn of(r: u32, m: f64) -> Regime {
        let rf = factorial(r);
        if m >= 2f64.powi(r as i32) * rf {
            Regime::Large
        } else if m > rf {
            Regime::Moderate
        } else {
            Regime::Small
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Regime::Large => "Large",
            Regime::Moderate => "Moderate",
            Regime::Small => "Small",
        }
    }
}

impl fmt::Display for Regime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Regime {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "large" => Ok(Regime::Large),
            "moderate" => Ok(Regime::Moderate),
            "small" => Ok(Regime::Small),
            other => usage(format!(
                "unknown regime `{other}` (expected large|moderate|small)"
            )),
        }
    }
}

/// The class of rank-one tensors on `[0,1]^d` whose factors map into
/// `[-1, 1]` and have `r`-th weak derivative bounded by `M`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SmoothnessClass {
    r: u32,
    m: f64,
    d: usize,
}

impl SmoothnessClass {
    pub fn new(r: u32, m: f64, d: usize) -> Result<Self> {
        if r == 0 {
            return usage("smoothness order r must be at least 1");
        }
        if !(m > 0.0) || !m.is_finite() {
            return usage(format!(
                "derivative bound M must be positive and finite, got {m}"
            ));
        }
        if d == 0 {
            return usage("dimension d must be at least 1");
        }
        Ok(SmoothnessClass { r, m, d })
    }

    pub fn r(&self) -> u32 {
        self.r
    }

    pub fn m(&self) -> f64 {
        self.m
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn regime(&self) -> Regime {
        Regime::of(self.r, self.m)
    }

    /// Same smoothness, different dimension.
    pub fn with_dim(&self, d: usize) -> Result<Self> {
        SmoothnessClass::new(self.r, self.m, d)
    }

    /// `max{r, M^(1/r)}`, the reciprocal scale of the guaranteed zero-free
    /// interval of a unit-range factor.
    pub fn rho(&self) -> f64 {
        (self.r as f64).max(self.m.powf(1.0 / self.r as f64))
    }

    /// `rho^k`, computed without taking and re-raising a root when the
    /// derivative term dominates so that integral powers stay exact.
    pub fn rho_pow(&self, k: usize) -> f64 {
        let r = self.r as f64;
        if self.m.powf(1.0 / r) >= r {
            self.m.powf(k as f64 / r)
        } else {
            r.powi(k as i32)
        }
    }
}

/// Growth class of the minimal number of samples.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Tractability {
    Curse,
    QuasiPolynomial,
    Polynomial,
}

impl Tractability {
    pub fn as_str(self) -> &'static str {
        match self {
            Tractability::Curse => "Curse",
            Tractability::QuasiPolynomial => "QuasiPolynomial",
            Tractability::Polynomial => "Polynomial",
        }
    }
}

impl fmt::Display for Tractability {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn regime_boundaries() {
        assert_eq!(Regime::of(1, 2.0), Regime::Large);
        assert_eq!(Regime::of(1, 1.0), Regime::Small);
        assert_eq!(Regime::of(1, 1.5), Regime::Moderate);
        assert_eq!(Regime::of(2, 3.0), Regime::Moderate);
        assert_eq!(Regime::of(2, 16.0), Regime::Large);
        assert_eq!(Regime::of(2, 2.0), Regime::Small);
        assert_eq!(Regime::of(3, 6.0), Regime::Small);
        assert_eq!(Regime::of(3, 47.9), Regime::Moderate);
    }

    #[test]
    fn invalid_classes_rejected() {
        assert!(SmoothnessClass::new(0, 1.0, 1).is_err());
        assert!(SmoothnessClass::new(1, 0.0, 1).is_err());
        assert!(SmoothnessClass::new(1, f64::NAN, 1).is_err());
        assert!(SmoothnessClass::new(1, 1.0, 0).is_err());
    }

    #[test]
    fn rho_powers() {
        let c = SmoothnessClass::new(2, 8.0, 2).unwrap();
        assert_eq!(c.rho_pow(2), 8.0);
        assert!((c.rho() - 8f64.sqrt()).abs() < 1e-15);
        let c = SmoothnessClass::new(3, 1.0, 2).unwrap();
        assert_eq!(c.rho(), 3.0);
        assert_eq!(c.rho_pow(3), 27.0);
    }

    #[test]
    fn regime_parses_case_insensitively() {
        assert_eq!("LARGE".parse::<Regime>().unwrap(), Regime::Large);
        assert!("huge".parse::<Regime>().is_err());
    }
}
