use std::fmt;

use num_traits::ToPrimitive;

use crate::logic::{Interval, IntervalFamily};
use crate::word::TimedWord;

/// The finite set of intervals a game or a signature computation may use.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntervalMenu {
    pub kind: IntervalFamily,
    /// Largest constant used by the menu.
    pub k: u64,
    pub intervals: Vec<Interval>,
}

impl IntervalMenu {
    pub fn len(&self) -> usize {
        self.intervals.len()
    }

    pub fn is_empty(&self) -> bool {
        self.intervals.is_empty()
    }

    pub fn contains(&self, i: &Interval) -> bool {
        self.intervals.contains(i)
    }

    /// The kind is capped by the menu itself rather than by its own definition.
    pub fn is_approximation(&self) -> bool {
        self.kind.own_cap().is_none()
    }

    /// Warning text when the cap is too small for the menu to stand in for the whole family on
    /// these words.
    pub fn faithfulness_warning(&self, words: &[&TimedWord]) -> Option<String> {
        if !self.is_approximation() {
            return None;
        }
        let need = faithful_cap(words);
        (self.k < need).then(|| {
            format!(
                "menu {} capped at {} but the words need a cap of at least {}; the verdict may differ from the uncapped game",
                self.kind, self.k, need
            )
        })
    }
}

impl fmt::Display for IntervalMenu {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} (cap {}, {} intervals)",
            self.kind,
            self.k,
            self.intervals.len()
        )
    }
}

/// Smallest integer strictly larger than every timestamp of the words.
pub fn faithful_cap(words: &[&TimedWord]) -> u64 {
    words
        .iter()
        .map(|w| {
            w.last_time()
                .floor()
                .to_integer()
                .to_u64()
                .unwrap_or(u64::MAX - 1)
                + 1
        })
        .max()
        .unwrap_or(1)
}

/// Every non-empty interval with integer ends in `0..=k` (and `⟨l,∞)` for unbounded kinds),
/// filtered by `kind`, in ascending order. Kinds with a built-in constant bound use that bound
/// instead of `k`.
pub fn build_menu(kind: IntervalFamily, k: u64) -> IntervalMenu {
    let cap = kind.own_cap().unwrap_or(k);
    let mut intervals = Vec::new();
    for low in 0..=cap {
        for low_open in [false, true] {
            for high in low..=cap {
                for high_open in [false, true] {
                    if let Ok(i) = Interval::new(low, Some(high), low_open, high_open) {
                        intervals.push(i);
                    }
                }
            }
            if !kind.is_bounded() {
                intervals
                    .push(Interval::new(low, None, low_open, true).expect("unbounded interval"));
            }
        }
    }
    intervals.retain(|i| kind.admits(i));
    intervals.sort();
    intervals.dedup();
    IntervalMenu {
        kind,
        k: cap,
        intervals,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::logic::parse_interval;

    fn names(m: &IntervalMenu) -> Vec<String> {
        m.intervals.iter().map(|i| i.to_string()).collect()
    }

    fn sorted(v: &[&str]) -> Vec<String> {
        let mut out: Vec<Interval> = v.iter().map(|s| parse_interval(s).unwrap()).collect();
        out.sort();
        out.iter().map(|i| i.to_string()).collect()
    }

    #[test]
    fn bounded_cap_one() {
        let m = build_menu(IntervalFamily::BIntK(1), 0);
        assert_eq!(
            names(&m),
            sorted(&["[0,0]", "[0,1]", "(0,1)", "[0,1)", "(0,1]", "[1,1]"])
        );
    }

    #[test]
    fn extended_cap_one() {
        let m = build_menu(IntervalFamily::ExtInt, 1);
        assert_eq!(
            names(&m),
            sorted(&[
                "[0,1]", "(0,1)", "[0,1)", "(0,1]", "[0,inf)", "(0,inf)", "[1,inf)", "(1,inf)"
            ])
        );
    }

    #[test]
    fn int_zero() {
        let m = build_menu(IntervalFamily::IntK(0), 5);
        assert_eq!(names(&m), sorted(&["[0,0]", "[0,inf)", "(0,inf)"]));
    }

    #[test]
    fn warning_when_cap_small() {
        let w = crate::word::parse_word("a 0\nb 5/2").unwrap();
        assert_eq!(faithful_cap(&[&w]), 3);
        assert!(build_menu(IntervalFamily::Int, 2)
            .faithfulness_warning(&[&w])
            .is_some());
        assert!(build_menu(IntervalFamily::Int, 3)
            .faithfulness_warning(&[&w])
            .is_none());
        assert!(build_menu(IntervalFamily::BIntK(1), 0)
            .faithfulness_warning(&[&w])
            .is_none());
    }
}
