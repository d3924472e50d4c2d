use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_traits::Signed;
use thiserror::Error;

use crate::rational::Rational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum IntervalError {
    #[error("empty interval {0}")]
    Empty(String),
    #[error("an infinite end must be open: {0}")]
    ClosedInfinity(String),
}

/// A timing interval over non-negative time differences, with integer endpoints or an open `∞`
/// upper end.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Interval {
    low: u64,
    high: Option<u64>,
    low_open: bool,
    high_open: bool,
}

impl Interval {
    /// `high = None` means `∞`.
    pub fn new(
        low: u64,
        high: Option<u64>,
        low_open: bool,
        high_open: bool,
    ) -> Result<Self, IntervalError> {
        let text = render(low, high, low_open, high_open);
        match high {
            None if !high_open => Err(IntervalError::ClosedInfinity(text)),
            None => Ok(Interval {
                low,
                high,
                low_open,
                high_open,
            }),
            Some(h) if low < h || (low == h && !low_open && !high_open) => Ok(Interval {
                low,
                high,
                low_open,
                high_open,
            }),
            Some(_) => Err(IntervalError::Empty(text)),
        }
    }

    pub fn closed(low: u64, high: u64) -> Self {
        Self::new(low, Some(high), false, false).expect("closed interval with low <= high")
    }

    pub fn open(low: u64, high: u64) -> Self {
        Self::new(low, Some(high), true, true).expect("open interval with low < high")
    }

    pub fn closed_open(low: u64, high: u64) -> Self {
        Self::new(low, Some(high), false, true).expect("[low,high) with low < high")
    }

    pub fn open_closed(low: u64, high: u64) -> Self {
        Self::new(low, Some(high), true, false).expect("(low,high] with low < high")
    }

    pub fn point(c: u64) -> Self {
        Self::closed(c, c)
    }

    /// `[low,∞)`
    pub fn at_least(low: u64) -> Self {
        Self::new(low, None, false, true).unwrap()
    }

    /// `(low,∞)`
    pub fn greater_than(low: u64) -> Self {
        Self::new(low, None, true, true).unwrap()
    }

    /// `[0,∞)`
    pub fn any() -> Self {
        Self::at_least(0)
    }

    pub fn low(&self) -> u64 {
        self.low
    }

    pub fn high(&self) -> Option<u64> {
        self.high
    }

    pub fn low_open(&self) -> bool {
        self.low_open
    }

    pub fn high_open(&self) -> bool {
        self.high_open
    }

    pub fn is_bounded(&self) -> bool {
        self.high.is_some()
    }

    pub fn is_singular(&self) -> bool {
        self.high == Some(self.low)
    }

    /// Largest finite constant mentioned by the interval.
    pub fn max_constant(&self) -> u64 {
        self.high.unwrap_or(self.low).max(self.low)
    }

    pub fn contains(&self, d: &Rational) -> bool {
        if d.is_negative() {
            return false;
        }
        let low = Rational::from_integer(BigInt::from(self.low));
        let above_low = match d.cmp(&low) {
            Ordering::Greater => true,
            Ordering::Equal => !self.low_open,
            Ordering::Less => false,
        };
        if !above_low {
            return false;
        }
        match self.high {
            None => true,
            Some(h) => match d.cmp(&Rational::from_integer(BigInt::from(h))) {
                Ordering::Less => true,
                Ordering::Equal => !self.high_open,
                Ordering::Greater => false,
            },
        }
    }

    /// Whether every point of `other` lies in `self`.
    pub fn includes(&self, other: &Interval) -> bool {
        let low_ok =
            self.low < other.low || (self.low == other.low && (!self.low_open || other.low_open));
        let high_ok = match (self.high, other.high) {
            (None, _) => true,
            (Some(_), None) => false,
            (Some(a), Some(b)) => a > b || (a == b && (!self.high_open || other.high_open)),
        };
        low_ok && high_ok
    }

    /// Whether `0` is a member.
    pub fn contains_zero(&self) -> bool {
        self.low == 0 && !self.low_open
    }

    /// Replaces every finite constant above `n`, and `∞`, by `n`, keeping each end's openness.
    /// Returns `None` when the result would be empty.
    pub fn truncate(&self, n: u64) -> Option<Interval> {
        let low = self.low.min(n);
        let high = Some(self.high.map_or(n, |h| h.min(n)));
        Interval::new(low, high, self.low_open, self.high_open).ok()
    }

    fn sort_key(&self) -> (u64, u64, bool, bool, bool) {
        (
            self.low,
            self.high.unwrap_or(u64::MAX),
            self.high.is_none(),
            self.low_open,
            self.high_open,
        )
    }
}

impl Ord for Interval {
    fn cmp(&self, other: &Self) -> Ordering {
        self.sort_key().cmp(&other.sort_key())
    }
}

impl PartialOrd for Interval {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

fn render(low: u64, high: Option<u64>, low_open: bool, high_open: bool) -> String {
    let hi = high.map_or_else(|| "inf".to_string(), |h| h.to_string());
    format!(
        "{}{},{}{}",
        if low_open { '(' } else { '[' },
        low,
        hi,
        if high_open { ')' } else { ']' }
    )
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&render(self.low, self.high, self.low_open, self.high_open))
    }
}

/// Named interval families defining logic fragments and game move vocabularies.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum IntervalFamily {
    /// All intervals.
    Int,
    /// Non-punctual intervals.
    ExtInt,
    /// Bounded intervals.
    BInt,
    /// Bounded, non-punctual intervals.
    BExtInt,
    /// Intervals with finite constants at most `k`, possibly unbounded.
    IntK(u64),
    /// Bounded intervals with constants at most `k`.
    BIntK(u64),
}

impl IntervalFamily {
    pub fn admits(&self, i: &Interval) -> bool {
        match *self {
            IntervalFamily::Int => true,
            IntervalFamily::ExtInt => !i.is_singular(),
            IntervalFamily::BInt => i.is_bounded(),
            IntervalFamily::BExtInt => i.is_bounded() && !i.is_singular(),
            IntervalFamily::IntK(k) => i.max_constant() <= k,
            IntervalFamily::BIntK(k) => i.is_bounded() && i.max_constant() <= k,
        }
    }

    pub fn is_bounded(&self) -> bool {
        matches!(
            self,
            IntervalFamily::BInt | IntervalFamily::BExtInt | IntervalFamily::BIntK(_)
        )
    }

    /// Constant cap built into the family, if any.
    pub fn own_cap(&self) -> Option<u64> {
        match *self {
            IntervalFamily::IntK(k) | IntervalFamily::BIntK(k) => Some(k),
            _ => None,
        }
    }

    /// Looks a family up by its lowercase name; `k` feeds the capped kinds.
    pub fn from_name(name: &str, k: u64) -> Option<Self> {
        Some(match name.to_ascii_lowercase().as_str() {
            "int" => IntervalFamily::Int,
            "extint" => IntervalFamily::ExtInt,
            "bint" => IntervalFamily::BInt,
            "bextint" => IntervalFamily::BExtInt,
            "intk" => IntervalFamily::IntK(k),
            "bintk" => IntervalFamily::BIntK(k),
            _ => return None,
        })
    }

    pub fn name(&self) -> String {
        match *self {
            IntervalFamily::Int => "Int".into(),
            IntervalFamily::ExtInt => "ExtInt".into(),
            IntervalFamily::BInt => "BInt".into(),
            IntervalFamily::BExtInt => "BExtInt".into(),
            IntervalFamily::IntK(k) => format!("Int^{k}"),
            IntervalFamily::BIntK(k) => format!("BInt^{k}"),
        }
    }
}

impl fmt::Display for IntervalFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, ratio};

    #[test]
    fn emptiness_rules() {
        assert!(Interval::new(2, Some(2), true, true).is_err());
        assert!(Interval::new(2, Some(2), false, true).is_err());
        assert!(Interval::new(3, Some(2), false, false).is_err());
        assert!(Interval::new(0, None, false, false).is_err());
        assert!(Interval::new(2, Some(2), false, false).is_ok());
    }

    #[test]
    fn membership_at_boundaries() {
        let i = Interval::closed_open(0, 2);
        assert!(i.contains(&int(0)));
        assert!(i.contains(&ratio(3, 2)));
        assert!(!i.contains(&int(2)));
        let j = Interval::greater_than(1);
        assert!(!j.contains(&int(1)));
        assert!(j.contains(&ratio(1001, 1000)));
        assert!(Interval::point(3).contains(&int(3)));
        assert!(!Interval::point(3).contains(&ratio(3001, 1000)));
    }

    #[test]
    fn display() {
        assert_eq!(Interval::closed_open(0, 2).to_string(), "[0,2)");
        assert_eq!(Interval::greater_than(1).to_string(), "(1,inf)");
        assert_eq!(Interval::point(3).to_string(), "[3,3]");
    }

    #[test]
    fn truncation() {
        assert_eq!(Interval::open(1, 3).truncate(2), Some(Interval::open(1, 2)));
        assert_eq!(
            Interval::any().truncate(2),
            Some(Interval::closed_open(0, 2))
        );
        assert_eq!(Interval::open(2, 3).truncate(2), None);
        assert_eq!(Interval::closed(3, 5).truncate(2), Some(Interval::point(2)));
    }

    #[test]
    fn inclusion() {
        assert!(Interval::any().includes(&Interval::open(0, 1)));
        assert!(Interval::closed(0, 1).includes(&Interval::open(0, 1)));
        assert!(!Interval::open(1, 2).includes(&Interval::open(0, 1)));
        assert!(!Interval::open(0, 1).includes(&Interval::closed(0, 1)));
    }

    #[test]
    fn family_filters() {
        let p = Interval::point(1);
        let u = Interval::greater_than(1);
        assert!(!IntervalFamily::ExtInt.admits(&p));
        assert!(!IntervalFamily::BInt.admits(&u));
        assert!(IntervalFamily::IntK(1).admits(&u));
        assert!(!IntervalFamily::IntK(1).admits(&Interval::open(1, 2)));
    }
}
