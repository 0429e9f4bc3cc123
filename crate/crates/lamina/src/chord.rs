//! Chords of the closed disk with endpoints at rational angles.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::Zero;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::angle::Angle;
use crate::error::{GeometryError, ParseError};

/// An unordered pair of angles, stored smaller endpoint first.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Chord {
    a: Angle,
    b: Angle,
}

impl Chord {
    pub fn new(x: Angle, y: Angle) -> Chord {
        if x <= y {
            Chord { a: x, b: y }
        } else {
            Chord { a: y, b: x }
        }
    }

    pub fn a(&self) -> &Angle {
        &self.a
    }

    pub fn b(&self) -> &Angle {
        &self.b
    }

    pub fn endpoints(&self) -> [&Angle; 2] {
        [&self.a, &self.b]
    }

    pub fn is_degenerate(&self) -> bool {
        self.a == self.b
    }

    pub fn has_endpoint(&self, x: &Angle) -> bool {
        &self.a == x || &self.b == x
    }

    pub fn shares_endpoint(&self, other: &Chord) -> bool {
        self.has_endpoint(&other.a) || self.has_endpoint(&other.b)
    }

    /// Endpoints strictly alternate; shared endpoints never count.
    pub fn crosses(&self, other: &Chord) -> Result<bool, GeometryError> {
        if self.is_degenerate() || other.is_degenerate() {
            return Err(GeometryError::Degenerate);
        }
        Ok(self.linked(other))
    }

    /// Like [`Chord::crosses`] but false for degenerate input.
    pub fn linked(&self, other: &Chord) -> bool {
        let (a1, b1, a2, b2) = (&self.a, &self.b, &other.a, &other.b);
        (a1 < a2 && a2 < b1 && b1 < b2) || (a2 < a1 && a1 < b2 && b2 < b1)
    }

    /// Crossing or sharing an endpoint.
    pub fn meets(&self, other: &Chord) -> bool {
        self.shares_endpoint(other) || self.linked(other)
    }

    pub fn is_critical(&self, d: u32) -> bool {
        if self.is_degenerate() {
            return false;
        }
        let diff = (self.b.value() - self.a.value()) * BigInt::from(d);
        (diff.clone() - diff.floor()).is_zero()
    }

    pub fn sigma(&self, d: u32) -> Chord {
        Chord::new(self.a.sigma(d), self.b.sigma(d))
    }

    /// Length of the shorter arc cut off by the chord.
    pub fn length(&self) -> num_rational::BigRational {
        let l = self.a.ccw_to(&self.b);
        let m = self.b.ccw_to(&self.a);
        if l < m {
            l
        } else {
            m
        }
    }
}

impl fmt::Display for Chord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}-{}", self.a, self.b)
    }
}

impl fmt::Debug for Chord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Chord {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Chord, ParseError> {
        let (x, y) = s
            .trim()
            .split_once('-')
            .ok_or_else(|| ParseError::Chord(s.to_string()))?;
        Ok(Chord::new(x.parse()?, y.parse()?))
    }
}

impl Serialize for Chord {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Chord {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Chord, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Free-function form of [`Chord::crosses`].
pub fn crosses(c1: &Chord, c2: &Chord) -> Result<bool, GeometryError> {
    c1.crosses(c2)
}

/// Free-function form of [`Chord::is_critical`].
pub fn is_critical(c: &Chord, d: u32) -> bool {
    c.is_critical(d)
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn ch(s: &str) -> Chord {
        s.parse().unwrap()
    }

    /// Counts endpoints of `c2` in one open arc of `c1`.
    fn parity_cross(c1: &Chord, c2: &Chord) -> bool {
        let inside = |x: &Angle| x.in_open_arc(c1.a(), c1.b());
        let on = |x: &Angle| c1.has_endpoint(x);
        if on(c2.a()) || on(c2.b()) {
            return false;
        }
        inside(c2.a()) != inside(c2.b())
    }

    #[test]
    fn crossing_examples() {
        assert!(ch("0-1/2").crosses(&ch("1/4-3/4")).unwrap());
        assert!(!ch("0-1/4").crosses(&ch("1/2-3/4")).unwrap());
        assert!(!ch("1/3-2/3").crosses(&ch("2/3-5/6")).unwrap());
        assert!(ch("1/3-1/3").crosses(&ch("0-1/2")).is_err());
    }

    #[test]
    fn crossing_matches_parity_count() {
        let q = 12i64;
        let pts: Vec<Angle> = (0..q).map(|p| Angle::new(p, q)).collect();
        let mut chords = vec![];
        for i in 0..pts.len() {
            for j in i + 1..pts.len() {
                chords.push(Chord::new(pts[i].clone(), pts[j].clone()));
            }
        }
        for c1 in &chords {
            assert!(!c1.linked(c1));
            for c2 in &chords {
                assert_eq!(c1.linked(c2), parity_cross(c1, c2), "{c1} {c2}");
                assert_eq!(c1.linked(c2), c2.linked(c1));
            }
        }
    }

    #[test]
    fn critical_examples() {
        assert!(ch("1/4-3/4").is_critical(2));
        assert!(ch("1/9-4/9").is_critical(3));
        assert!(!ch("1/9-2/9").is_critical(3));
        assert!(!ch("1/4-3/4").is_critical(3));
    }

    #[test]
    fn text_round_trip() {
        let c = ch("2/3-1/6");
        assert_eq!(c.to_string(), "1/6-2/3");
        assert_eq!(ch(&c.to_string()), c);
        assert!("1/2".parse::<Chord>().is_err());
    }
}
