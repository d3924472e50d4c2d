//! Finite timed words and their line-based text format.
//!
//! A word document has one `<letter> <timestamp>` pair per line; blank lines and lines starting
//! with `#` are ignored. Timestamps are decimals or `p/q` rationals.

use std::fmt;
use std::sync::Arc;

use num_traits::Zero;
use thiserror::Error;

use crate::rational::{format_rational, is_negative, parse_rational, Rational};

/// A letter of the alphabet, also used as an atomic proposition. Matches `[a-z][a-z0-9_]*`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Letter(Arc<str>);

impl Letter {
    pub fn new(name: &str) -> Result<Self, WordError> {
        if is_identifier(name) {
            Ok(Letter(Arc::from(name)))
        } else {
            Err(WordError::BadLetter(name.to_string()))
        }
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

/// `[a-z][a-z0-9_]*`
pub fn is_identifier(s: &str) -> bool {
    let mut bytes = s.bytes();
    matches!(bytes.next(), Some(b'a'..=b'z'))
        && bytes.all(|b| b.is_ascii_lowercase() || b.is_ascii_digit() || b == b'_')
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Monotonicity {
    Weak,
    Strict,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Event {
    pub letter: Letter,
    pub time: Rational,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WordError {
    #[error("line {line}: expected `<letter> <timestamp>`, got `{text}`")]
    MalformedLine { line: usize, text: String },
    #[error("line {line}: {source}")]
    BadTimestamp {
        line: usize,
        #[source]
        source: crate::rational::RationalError,
    },
    #[error("`{0}` is not a valid letter")]
    BadLetter(String),
    #[error("event {index}: negative timestamp {time}")]
    NegativeTimestamp { index: usize, time: String },
    #[error("event {index}: decreasing timestamps ({prev} then {next})")]
    Decreasing {
        index: usize,
        prev: String,
        next: String,
    },
    #[error("event {index}: timestamp repeats but the word was requested strictly monotonic")]
    NotStrict { index: usize },
    #[error("a timed word needs at least one event")]
    Empty,
    #[error("position {position} is outside 1..={len}")]
    Position { position: usize, len: usize },
    #[error("the first timestamp is {0}, but this operation needs a word starting at 0")]
    NotAnchored(String),
}

/// A finite timed word. Positions are 1-based, as in `dom(ρ) = {1..#ρ}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TimedWord {
    events: Vec<Event>,
    monotonicity: Monotonicity,
}

impl TimedWord {
    /// Validates events; the monotonicity mode is inferred (strict iff all timestamps increase).
    pub fn new(events: Vec<Event>) -> Result<Self, WordError> {
        Self::validate(&events)?;
        let strict = events.windows(2).all(|w| w[0].time < w[1].time);
        let monotonicity = if strict {
            Monotonicity::Strict
        } else {
            Monotonicity::Weak
        };
        Ok(TimedWord {
            events,
            monotonicity,
        })
    }

    /// Like [`TimedWord::new`] but rejects repeated timestamps.
    pub fn new_strict(events: Vec<Event>) -> Result<Self, WordError> {
        let word = Self::new(events)?;
        if word.monotonicity == Monotonicity::Weak {
            let index = word
                .events
                .windows(2)
                .position(|w| w[0].time == w[1].time)
                .map_or(0, |i| i + 2);
            return Err(WordError::NotStrict { index });
        }
        Ok(word)
    }

    /// Builds a word from `(letter, time)` pairs.
    pub fn from_pairs<'a, I>(pairs: I) -> Result<Self, WordError>
    where
        I: IntoIterator<Item = (&'a str, Rational)>,
    {
        let events = pairs
            .into_iter()
            .map(|(l, t)| {
                Ok(Event {
                    letter: Letter::new(l)?,
                    time: t,
                })
            })
            .collect::<Result<Vec<_>, WordError>>()?;
        Self::new(events)
    }

    fn validate(events: &[Event]) -> Result<(), WordError> {
        if events.is_empty() {
            return Err(WordError::Empty);
        }
        for (i, e) in events.iter().enumerate() {
            if is_negative(&e.time) {
                return Err(WordError::NegativeTimestamp {
                    index: i + 1,
                    time: format_rational(&e.time),
                });
            }
        }
        for (i, w) in events.windows(2).enumerate() {
            if w[1].time < w[0].time {
                return Err(WordError::Decreasing {
                    index: i + 2,
                    prev: format_rational(&w[0].time),
                    next: format_rational(&w[1].time),
                });
            }
        }
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.events.len()
    }

    /// Always false for a validated word; present for API symmetry.
    pub fn is_empty(&self) -> bool {
        self.events.is_empty()
    }

    pub fn events(&self) -> &[Event] {
        &self.events
    }

    pub fn monotonicity(&self) -> Monotonicity {
        self.monotonicity
    }

    /// Whether τ₁ = 0.
    pub fn anchored_zero(&self) -> bool {
        self.events[0].time.is_zero()
    }

    pub fn require_anchored(&self) -> Result<(), WordError> {
        if self.anchored_zero() {
            Ok(())
        } else {
            Err(WordError::NotAnchored(format_rational(
                &self.events[0].time,
            )))
        }
    }

    pub fn check_position(&self, position: usize) -> Result<(), WordError> {
        if (1..=self.len()).contains(&position) {
            Ok(())
        } else {
            Err(WordError::Position {
                position,
                len: self.len(),
            })
        }
    }

    /// Letter at 1-based `position`.
    pub fn letter(&self, position: usize) -> &Letter {
        &self.events[position - 1].letter
    }

    /// Timestamp at 1-based `position`.
    pub fn time(&self, position: usize) -> &Rational {
        &self.events[position - 1].time
    }

    pub fn last_time(&self) -> &Rational {
        &self.events[self.len() - 1].time
    }

    pub fn positions(&self) -> std::ops::RangeInclusive<usize> {
        1..=self.len()
    }

    /// The projection to letters.
    pub fn untime(&self) -> Vec<Letter> {
        self.events.iter().map(|e| e.letter.clone()).collect()
    }

    /// Letters concatenated, which is readable when all letters are single characters.
    pub fn untime_string(&self) -> String {
        self.events.iter().map(|e| e.letter.as_str()).collect()
    }

    pub fn parse(text: &str) -> Result<Self, WordError> {
        parse_word(text)
    }

    pub fn serialize(&self) -> String {
        serialize_word(self)
    }
}

pub fn parse_word(text: &str) -> Result<TimedWord, WordError> {
    let mut events = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let mut fields = line.split_whitespace();
        let (Some(letter), Some(stamp), None) = (fields.next(), fields.next(), fields.next())
        else {
            return Err(WordError::MalformedLine {
                line: idx + 1,
                text: line.to_string(),
            });
        };
        if !is_identifier(letter) {
            return Err(WordError::MalformedLine {
                line: idx + 1,
                text: line.to_string(),
            });
        }
        let time = parse_rational(stamp).map_err(|source| WordError::BadTimestamp {
            line: idx + 1,
            source,
        })?;
        events.push(Event {
            letter: Letter::new(letter)?,
            time,
        });
    }
    TimedWord::new(events)
}

pub fn serialize_word(word: &TimedWord) -> String {
    word.events
        .iter()
        .map(|e| format!("{} {}", e.letter, format_rational(&e.time)))
        .collect::<Vec<_>>()
        .join("\n")
}

impl fmt::Display for TimedWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for e in &self.events {
            write!(f, "({},{})", e.letter, format_rational(&e.time))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, ratio};

    #[test]
    fn parse_strict_word() {
        let w = parse_word("a 0\nb 3/2").unwrap();
        assert_eq!(w.len(), 2);
        assert_eq!(w.monotonicity(), Monotonicity::Strict);
        assert!(w.anchored_zero());
        assert_eq!(w.time(2), &ratio(3, 2));
        assert_eq!(w.untime_string(), "ab");
    }

    #[test]
    fn parse_weak_word() {
        let w = parse_word("a 0\na 0").unwrap();
        assert_eq!(w.monotonicity(), Monotonicity::Weak);
        assert!(w.anchored_zero());
    }

    #[test]
    fn decreasing_is_rejected() {
        let err = parse_word("a 0\nb 1\nb 0.5").unwrap_err();
        assert!(
            matches!(err, WordError::Decreasing { index: 3, .. }),
            "{err}"
        );
    }

    #[test]
    fn negative_and_malformed_are_rejected() {
        assert!(matches!(
            parse_word("a -1").unwrap_err(),
            WordError::NegativeTimestamp { .. }
        ));
        assert!(matches!(
            parse_word("a").unwrap_err(),
            WordError::MalformedLine { .. }
        ));
        assert!(matches!(
            parse_word("A 0").unwrap_err(),
            WordError::MalformedLine { .. }
        ));
        assert!(matches!(
            parse_word("a 0 extra").unwrap_err(),
            WordError::MalformedLine { .. }
        ));
        assert!(matches!(
            parse_word("# only a comment\n").unwrap_err(),
            WordError::Empty
        ));
    }

    #[test]
    fn comments_and_blank_lines() {
        let w = parse_word("# header\n\na 1\n  # indented comment\nb 2\n").unwrap();
        assert_eq!(w.untime_string(), "ab");
        assert!(!w.anchored_zero());
    }

    #[test]
    fn serialize_canonical() {
        let w = TimedWord::from_pairs([("a", int(0)), ("b", ratio(3, 2))]).unwrap();
        assert_eq!(serialize_word(&w), "a 0/1\nb 3/2");
        let single = TimedWord::from_pairs([("a", int(0))]).unwrap();
        assert_eq!(serialize_word(&single), "a 0/1");
        assert_eq!(parse_word(&serialize_word(&w)).unwrap(), w);
    }

    #[test]
    fn untime_repeated() {
        let w = parse_word("a 0\na 0\na 0").unwrap();
        assert_eq!(w.untime_string(), "aaa");
        assert_eq!(w.untime().len(), 3);
    }

    #[test]
    fn strict_constructor() {
        let e = |l: &str, t| Event {
            letter: Letter::new(l).unwrap(),
            time: t,
        };
        assert!(TimedWord::new_strict(vec![e("a", int(0)), e("b", int(0))]).is_err());
        assert!(TimedWord::new_strict(vec![e("a", int(0)), e("b", int(1))]).is_ok());
    }

    #[test]
    fn positions_are_one_based() {
        let w = parse_word("a 0\nb 1").unwrap();
        assert!(w.check_position(0).is_err());
        assert!(w.check_position(3).is_err());
        assert!(w.check_position(2).is_ok());
        assert_eq!(w.letter(1).as_str(), "a");
    }
}
