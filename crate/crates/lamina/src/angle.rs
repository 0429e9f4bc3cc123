//! Exact points of the circle R/Z and the d-tupling map.

use std::fmt;
use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::ParseError;

/// A rational point of the circle, stored in lowest terms with value in `[0, 1)`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Angle(BigRational);

impl Angle {
    pub fn zero() -> Angle {
        Angle(BigRational::zero())
    }

    /// Builds `p/q` reduced mod 1. Panics if `q == 0`.
    pub fn new(p: i64, q: i64) -> Angle {
        assert!(q != 0, "zero denominator");
        Angle::from_ratio(BigRational::new(BigInt::from(p), BigInt::from(q)))
    }

    /// Reduces an arbitrary rational into `[0, 1)`.
    pub fn from_ratio(r: BigRational) -> Angle {
        let f = r.clone() - r.floor();
        Angle(f)
    }

    pub fn value(&self) -> &BigRational {
        &self.0
    }

    pub fn numer(&self) -> BigUint {
        self.0.numer().magnitude().clone()
    }

    pub fn denom(&self) -> BigUint {
        self.0.denom().magnitude().clone()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    /// `d * self mod 1`.
    pub fn sigma(&self, d: u32) -> Angle {
        Angle::from_ratio(&self.0 * BigInt::from(d))
    }

    /// `sigma` applied `k` times.
    pub fn sigma_pow(&self, d: u32, k: u32) -> Angle {
        let m = BigInt::from(d).pow(k);
        Angle::from_ratio(&self.0 * m)
    }

    /// The `d` preimages under `sigma`, in increasing order.
    pub fn preimages(&self, d: u32) -> Vec<Angle> {
        let dd = BigInt::from(d);
        (0..d)
            .map(|j| Angle((&self.0 + BigInt::from(j)) / &dd))
            .collect()
    }

    /// Rotation by a rational amount.
    pub fn shift(&self, delta: &BigRational) -> Angle {
        Angle::from_ratio(&self.0 + delta)
    }

    /// Counterclockwise distance from `self` to `other`, in `[0, 1)`.
    pub fn ccw_to(&self, other: &Angle) -> BigRational {
        let diff = &other.0 - &self.0;
        if diff.is_negative() {
            diff + BigRational::one()
        } else {
            diff
        }
    }

    /// Membership in the open arc running counterclockwise from `a` to `b`.
    /// When `a == b` the arc is the whole circle minus `a`.
    pub fn in_open_arc(&self, a: &Angle, b: &Angle) -> bool {
        if self == a || self == b {
            return false;
        }
        if a == b {
            return true;
        }
        a.ccw_to(self) < a.ccw_to(b)
    }

    pub fn in_closed_arc(&self, a: &Angle, b: &Angle) -> bool {
        self == a || self == b || self.in_open_arc(a, b)
    }

    pub fn classify(&self, d: u32) -> OrbitClass {
        classify_orbit(self, d)
    }

    pub fn to_f64(&self) -> f64 {
        self.0.to_f64().unwrap_or(0.0)
    }
}

impl fmt::Display for Angle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.0.numer(), self.0.denom())
    }
}

impl fmt::Debug for Angle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Angle {
    type Err = ParseError;

    /// Accepts `p/q` or a bare integer; the value must lie in `[0, 1)`.
    fn from_str(s: &str) -> Result<Angle, ParseError> {
        let t = s.trim();
        let bad = || ParseError::Angle(t.to_string());
        let (p, q) = match t.split_once('/') {
            Some((p, q)) => (p.trim(), q.trim()),
            None => (t, "1"),
        };
        let p: BigInt = p.parse().map_err(|_| bad())?;
        let q: BigInt = q.parse().map_err(|_| bad())?;
        if q.is_zero() || p.is_negative() || q.is_negative() {
            return Err(bad());
        }
        let r = BigRational::new(p, q);
        if r >= BigRational::one() {
            return Err(bad());
        }
        Ok(Angle(r))
    }
}

impl Serialize for Angle {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Angle {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Angle, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OrbitKind {
    Periodic,
    Preperiodic,
}

/// Minimal preperiod and period of a rational angle.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct OrbitClass {
    pub kind: OrbitKind,
    pub preperiod: u32,
    pub period: u32,
}

impl OrbitClass {
    pub fn is_periodic(&self) -> bool {
        self.kind == OrbitKind::Periodic
    }
}

/// Splits the denominator into the part built from primes of `d` and the
/// part coprime to `d`; the first fixes the preperiod, the second the period.
pub fn classify_orbit(a: &Angle, d: u32) -> OrbitClass {
    let dd = BigUint::from(d);
    let mut q = a.denom();
    let mut preperiod = 0u32;
    loop {
        let g = q.gcd(&dd);
        if g.is_one() {
            break;
        }
        // one application of sigma divides out one factor of gcd(q, d)
        q /= &g;
        preperiod += 1;
    }
    let period = if q.is_one() {
        1
    } else {
        let m = &dd % &q;
        let mut x = m.clone();
        let mut k = 1u32;
        while !x.is_one() {
            x = (&x * &m) % &q;
            k += 1;
        }
        k
    };
    let kind = if preperiod == 0 {
        OrbitKind::Periodic
    } else {
        OrbitKind::Preperiodic
    };
    OrbitClass {
        kind,
        preperiod,
        period,
    }
}

/// Free-function form of [`Angle::sigma`].
pub fn sigma(a: &Angle, d: u32) -> Angle {
    a.sigma(d)
}
