//! Exact half-integer angular momenta.
//!
//! Angular-momentum quantum numbers (J, F, I, ...) are stored as twice their
//! value so that all triangle conditions and parity checks are exact integer
//! arithmetic. The deliberately small integer range is plenty for atomic
//! hyperfine structure.

use std::fmt;
use std::str::FromStr;

use crate::error::Error;

/// A non-negative half-integer j ∈ {0, 1/2, 1, 3/2, ...}, stored as 2j.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct HalfInt {
    twice: i32,
}

impl HalfInt {
    /// Construct from 2j. Panics if negative.
    pub fn from_twice(twice: i32) -> Self {
        assert!(twice >= 0, "half-integer must be non-negative (2j = {twice})");
        HalfInt { twice }
    }

    pub fn from_int(j: i32) -> Self {
        Self::from_twice(2 * j)
    }

    pub const ZERO: HalfInt = HalfInt { twice: 0 };
    pub const HALF: HalfInt = HalfInt { twice: 1 };
    pub const ONE: HalfInt = HalfInt { twice: 2 };

    pub fn twice(self) -> i32 {
        self.twice
    }

    pub fn value(self) -> f64 {
        self.twice as f64 / 2.0
    }

    pub fn is_integer(self) -> bool {
        self.twice % 2 == 0
    }

    /// Number of magnetic sublevels, 2j + 1.
    pub fn multiplicity(self) -> usize {
        self.twice as usize + 1
    }

    /// j(j+1), exact in f64 for the ranges used here.
    pub fn casimir(self) -> f64 {
        let t = self.twice as f64;
        t * (t + 2.0) / 4.0
    }

    /// Values j, j+1, ..., up to and including `hi` (unit steps).
    pub fn range_inclusive(lo: HalfInt, hi: HalfInt) -> impl Iterator<Item = HalfInt> {
        (lo.twice..=hi.twice)
            .step_by(2)
            .map(|t| HalfInt { twice: t })
    }

    pub fn checked_add(self, other: HalfInt) -> HalfInt {
        HalfInt::from_twice(self.twice + other.twice)
    }

    pub fn abs_diff(self, other: HalfInt) -> HalfInt {
        HalfInt::from_twice((self.twice - other.twice).abs())
    }

    /// Triangle condition |a−b| ≤ c ≤ a+b together with integer perimeter.
    pub fn triangle(a: HalfInt, b: HalfInt, c: HalfInt) -> bool {
        let (ta, tb, tc) = (a.twice, b.twice, c.twice);
        tc >= (ta - tb).abs() && tc <= ta + tb && (ta + tb + tc) % 2 == 0
    }
}

impl fmt::Display for HalfInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.twice % 2 == 0 {
            write!(f, "{}", self.twice / 2)
        } else {
            write!(f, "{}/2", self.twice)
        }
    }
}

impl FromStr for HalfInt {
    type Err = Error;

    /// Accepts "4", "7/2" and (exact) decimal halves like "3.5".
    fn from_str(s: &str) -> Result<Self, Error> {
        let s = s.trim();
        let bad = || Error::InvalidLevel(format!("cannot parse half-integer from `{s}`"));
        if let Some((num, den)) = s.split_once('/') {
            if den.trim() != "2" {
                return Err(bad());
            }
            let n: i32 = num.trim().parse().map_err(|_| bad())?;
            if n < 0 {
                return Err(bad());
            }
            return Ok(HalfInt::from_twice(n));
        }
        if let Ok(n) = s.parse::<i32>() {
            if n < 0 {
                return Err(bad());
            }
            return Ok(HalfInt::from_int(n));
        }
        if let Ok(x) = s.parse::<f64>() {
            let t = (2.0 * x).round();
            if t >= 0.0 && (2.0 * x - t).abs() < 1e-9 {
                return Ok(HalfInt::from_twice(t as i32));
            }
        }
        Err(bad())
    }
}
