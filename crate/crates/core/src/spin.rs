use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// A spin `j` stored as the integer `2j`.
///
/// Half-integer arithmetic stays exact because nothing is ever divided by two
/// until a value is displayed.
///
/// ```
/// use symres::TwiceSpin;
/// let j: TwiceSpin = "3/2".parse().unwrap();
/// assert_eq!(j.twice(), 3);
/// assert_eq!(j.to_string(), "3/2");
/// assert_eq!(TwiceSpin::from_f64(1.0).unwrap(), TwiceSpin::new(2));
/// ```
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct TwiceSpin(u32);

impl TwiceSpin {
    pub const ZERO: TwiceSpin = TwiceSpin(0);
    pub const HALF: TwiceSpin = TwiceSpin(1);
    pub const ONE: TwiceSpin = TwiceSpin(2);

    pub const fn new(twice: u32) -> Self {
        TwiceSpin(twice)
    }

    pub const fn twice(self) -> u32 {
        self.0
    }

    /// Multiplet size `2j + 1`.
    pub const fn multiplicity(self) -> u32 {
        self.0 + 1
    }

    pub fn value(self) -> f64 {
        f64::from(self.0) / 2.0
    }

    pub fn is_half_integer(self) -> bool {
        self.0 % 2 == 1
    }

    /// Converts a decimal spin such as `1.5`; rejects anything that is not a
    /// non-negative multiple of one half.
    pub fn from_f64(j: f64) -> Result<Self> {
        let twice = 2.0 * j;
        if !twice.is_finite() || twice < 0.0 || (twice - twice.round()).abs() > 1e-9 {
            return Err(Error::InvalidArgument(format!(
                "{j} is not a non-negative half-integer"
            )));
        }
        if twice.round() > f64::from(u32::MAX) {
            return Err(Error::InvalidArgument(format!("spin {j} is too large")));
        }
        Ok(TwiceSpin(twice.round() as u32))
    }
}

impl fmt::Display for TwiceSpin {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0 % 2 == 0 {
            write!(f, "{}", self.0 / 2)
        } else {
            write!(f, "{}/2", self.0)
        }
    }
}

impl FromStr for TwiceSpin {
    type Err = Error;

    /// Accepts `"1"`, `"1.5"` or `"3/2"`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if let Some((num, den)) = s.split_once('/') {
            let bad = || Error::InvalidArgument(format!("cannot parse spin `{s}`"));
            let num: u32 = num.trim().parse().map_err(|_| bad())?;
            return match den.trim() {
                "1" => Ok(TwiceSpin(num.checked_mul(2).ok_or_else(bad)?)),
                "2" => Ok(TwiceSpin(num)),
                _ => Err(bad()),
            };
        }
        let j: f64 = s
            .parse()
            .map_err(|_| Error::InvalidArgument(format!("cannot parse spin `{s}`")))?;
        TwiceSpin::from_f64(j)
    }
}

impl From<TwiceSpin> for u32 {
    fn from(j: TwiceSpin) -> u32 {
        j.0
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_all_forms() {
        assert_eq!("0".parse::<TwiceSpin>().unwrap(), TwiceSpin::ZERO);
        assert_eq!("0.5".parse::<TwiceSpin>().unwrap(), TwiceSpin::HALF);
        assert_eq!("1/2".parse::<TwiceSpin>().unwrap(), TwiceSpin::HALF);
        assert_eq!("2/1".parse::<TwiceSpin>().unwrap(), TwiceSpin::new(4));
        assert!("0.3".parse::<TwiceSpin>().is_err());
        assert!("-1".parse::<TwiceSpin>().is_err());
        assert!("1/3".parse::<TwiceSpin>().is_err());
    }

    #[test]
    fn display_round_trips() {
        for t in 0..20 {
            let j = TwiceSpin::new(t);
            assert_eq!(j.to_string().parse::<TwiceSpin>().unwrap(), j);
        }
    }
}
