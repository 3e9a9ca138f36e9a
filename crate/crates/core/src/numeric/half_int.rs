use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Neg, Sub};
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::Error;

/// Largest accepted `|2j|`. Keeps every sum of a handful of spins, and every
/// factorial argument derived from them, comfortably inside `i64`.
pub const MAX_TWICE: i64 = 1 << 40;

/// An integer or half-integer stored losslessly as `2j`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct HalfInt {
    twice: i64,
}

impl HalfInt {
    pub const ZERO: HalfInt = HalfInt { twice: 0 };
    pub const HALF: HalfInt = HalfInt { twice: 1 };
    pub const ONE: HalfInt = HalfInt { twice: 2 };

    #[inline]
    pub const fn from_twice(twice: i64) -> Self {
        HalfInt { twice }
    }

    #[inline]
    pub const fn from_int(j: i64) -> Self {
        HalfInt { twice: 2 * j }
    }

    #[inline]
    pub const fn twice(self) -> i64 {
        self.twice
    }

    #[inline]
    pub const fn is_integer(self) -> bool {
        self.twice % 2 == 0
    }

    /// The integer value, if there is one.
    #[inline]
    pub const fn to_integer(self) -> Option<i64> {
        if self.is_integer() {
            Some(self.twice / 2)
        } else {
            None
        }
    }

    #[inline]
    pub fn to_f64(self) -> f64 {
        self.twice as f64 / 2.0
    }

    #[inline]
    pub fn abs(self) -> Self {
        HalfInt { twice: self.twice.abs() }
    }

    /// `2j + 1`, the multiplicity of a spin.
    #[inline]
    pub const fn dim(self) -> i64 {
        self.twice + 1
    }

    /// Half of an integer-or-half-integer sum, e.g. `(a+b+c+d)/2`.
    /// Fails when the result would be a quarter-integer.
    pub fn halve(self) -> Option<Self> {
        if self.twice % 2 == 0 {
            Some(HalfInt { twice: self.twice / 2 })
        } else {
            None
        }
    }

    /// Parse a non-negative spin magnitude.
    pub fn parse_spin(s: &str) -> Result<Self, Error> {
        let j: HalfInt = s.parse()?;
        if j.twice < 0 {
            return Err(Error::ParseSpin(s.to_string()));
        }
        Ok(j)
    }

    /// Parse a non-negative twice-encoded spin (`"3"` means 3/2).
    pub fn parse_twice(s: &str) -> Result<Self, Error> {
        let twice: i64 = s.trim().parse().map_err(|_| Error::ParseSpin(s.to_string()))?;
        if !(0..=MAX_TWICE).contains(&twice) {
            return Err(Error::ParseSpin(s.to_string()));
        }
        Ok(HalfInt { twice })
    }
}

/// Integer range `lo, lo+1, ..., hi` over half-integers with the parity of `lo`.
pub fn half_int_range(lo: HalfInt, hi: HalfInt) -> impl Iterator<Item = HalfInt> + Clone {
    let (lo, hi) = (lo.twice, hi.twice);
    (0..).map(move |k| lo + 2 * k).take_while(move |&t| t <= hi).map(HalfInt::from_twice)
}

impl Add for HalfInt {
    type Output = HalfInt;
    #[inline]
    fn add(self, rhs: HalfInt) -> HalfInt {
        HalfInt { twice: self.twice + rhs.twice }
    }
}

impl Sub for HalfInt {
    type Output = HalfInt;
    #[inline]
    fn sub(self, rhs: HalfInt) -> HalfInt {
        HalfInt { twice: self.twice - rhs.twice }
    }
}

impl Neg for HalfInt {
    type Output = HalfInt;
    #[inline]
    fn neg(self) -> HalfInt {
        HalfInt { twice: -self.twice }
    }
}

impl Add<i64> for HalfInt {
    type Output = HalfInt;
    #[inline]
    fn add(self, rhs: i64) -> HalfInt {
        HalfInt { twice: self.twice + 2 * rhs }
    }
}

impl PartialEq<i64> for HalfInt {
    fn eq(&self, other: &i64) -> bool {
        self.twice == 2 * other
    }
}

impl PartialOrd<i64> for HalfInt {
    fn partial_cmp(&self, other: &i64) -> Option<Ordering> {
        self.twice.partial_cmp(&(2 * other))
    }
}

impl From<i64> for HalfInt {
    fn from(j: i64) -> Self {
        HalfInt::from_int(j)
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

/// Accepts `"3"`, `"-2"`, `"3/2"`, `"6/4"`, `"1.5"`, `"1.50"`, `"2.0"`.
/// Anything that is not an exact integer or half-integer is rejected.
impl FromStr for HalfInt {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        let bad = || Error::ParseSpin(s.to_string());
        let t = s.trim();
        let (neg, body) = match t.strip_prefix('-') {
            Some(rest) => (true, rest),
            None => (false, t.strip_prefix('+').unwrap_or(t)),
        };
        if body.is_empty() {
            return Err(bad());
        }
        let twice = if let Some((num, den)) = body.split_once('/') {
            let num = parse_digits(num).ok_or_else(bad)?;
            let den = parse_digits(den).ok_or_else(bad)?;
            if den == 0 || (2 * num) % den != 0 {
                return Err(bad());
            }
            2 * num / den
        } else if let Some((int, frac)) = body.split_once('.') {
            let int = if int.is_empty() { 0 } else { parse_digits(int).ok_or_else(bad)? };
            if frac.is_empty() || !frac.bytes().all(|c| c.is_ascii_digit()) {
                return Err(bad());
            }
            let frac = frac.trim_end_matches('0');
            let half = match frac {
                "" => 0,
                "5" => 1,
                _ => return Err(bad()),
            };
            2 * int + half
        } else {
            2 * parse_digits(body).ok_or_else(bad)?
        };
        if twice > MAX_TWICE {
            return Err(bad());
        }
        Ok(HalfInt { twice: if neg { -twice } else { twice } })
    }
}

fn parse_digits(s: &str) -> Option<i64> {
    if s.is_empty() || s.len() > 15 || !s.bytes().all(|c| c.is_ascii_digit()) {
        return None;
    }
    s.parse().ok()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_the_accepted_forms() {
        assert_eq!("3/2".parse::<HalfInt>().unwrap().twice(), 3);
        assert_eq!("1.5".parse::<HalfInt>().unwrap().twice(), 3);
        assert_eq!("1.50".parse::<HalfInt>().unwrap().twice(), 3);
        assert_eq!("2".parse::<HalfInt>().unwrap().twice(), 4);
        assert_eq!("2.0".parse::<HalfInt>().unwrap().twice(), 4);
        assert_eq!("6/4".parse::<HalfInt>().unwrap().twice(), 3);
        assert_eq!("-1/2".parse::<HalfInt>().unwrap().twice(), -1);
        assert_eq!(".5".parse::<HalfInt>().unwrap().twice(), 1);
        assert_eq!(HalfInt::parse_twice("3").unwrap(), HalfInt::from_twice(3));
    }

    #[test]
    fn rejects_non_half_integers() {
        for s in ["", "1/3", "1.25", "0.7", "a", "1/0", "3/", "/2", "1.", "--1", "1e3", "99999999999999999"] {
            assert!(s.parse::<HalfInt>().is_err(), "{s:?} parsed");
        }
        assert!(HalfInt::parse_spin("-1").is_err());
        assert!(HalfInt::parse_twice("-3").is_err());
    }

    #[test]
    fn display_round_trips() {
        for t in -7..=7 {
            let j = HalfInt::from_twice(t);
            assert_eq!(j.to_string().parse::<HalfInt>().unwrap(), j);
        }
    }

    #[test]
    fn range_walks_integer_steps() {
        let r: Vec<_> = half_int_range(HalfInt::HALF, HalfInt::from_twice(5)).collect();
        assert_eq!(r, vec![HalfInt::from_twice(1), HalfInt::from_twice(3), HalfInt::from_twice(5)]);
        assert_eq!(half_int_range(HalfInt::ONE, HalfInt::ZERO).count(), 0);
    }
}
