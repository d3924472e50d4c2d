//! Recursive-descent parser for the prefix formula grammar shared by the three logics.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use thiserror::Error;

use super::guard::{CmpOp, Guard, GuardAtom, Orientation, Var};
use super::interval::{Interval, IntervalError};
use super::mtl::Mtl;
use super::tptl::Tptl;
use super::ttl::{GuardedEvent, Ttl};
use crate::word::{is_identifier, Letter};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Logic {
    Mtl,
    Tptl,
    Ttl,
}

impl Logic {
    pub fn name(self) -> &'static str {
        match self {
            Logic::Mtl => "mtl",
            Logic::Tptl => "tptl",
            Logic::Ttl => "ttl",
        }
    }
}

impl fmt::Display for Logic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Logic {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "mtl" => Ok(Logic::Mtl),
            "tptl" => Ok(Logic::Tptl),
            "ttl" => Ok(Logic::Ttl),
            other => Err(format!(
                "unknown logic `{other}` (expected mtl, tptl or ttl)"
            )),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("syntax error at byte {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("at byte {pos}: {source}")]
    Interval {
        pos: usize,
        #[source]
        source: IntervalError,
    },
    #[error("at byte {pos}: operator `{op}` is not part of {logic}")]
    UnknownOperator {
        pos: usize,
        op: String,
        logic: Logic,
    },
}

/// A parsed formula of any of the three logics.
#[derive(Debug, Clone, PartialEq)]
pub enum Formula {
    Mtl(Arc<Mtl>),
    Tptl(Tptl),
    Ttl(Ttl),
}

impl Formula {
    pub fn logic(&self) -> Logic {
        match self {
            Formula::Mtl(_) => Logic::Mtl,
            Formula::Tptl(_) => Logic::Tptl,
            Formula::Ttl(_) => Logic::Ttl,
        }
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Formula::Mtl(g) => write!(f, "{g}"),
            Formula::Tptl(g) => write!(f, "{g}"),
            Formula::Ttl(g) => write!(f, "{g}"),
        }
    }
}

pub fn parse_formula(text: &str, logic: Logic) -> Result<Formula, ParseError> {
    Ok(match logic {
        Logic::Mtl => Formula::Mtl(Arc::new(parse_mtl(text)?)),
        Logic::Tptl => Formula::Tptl(parse_tptl(text)?),
        Logic::Ttl => Formula::Ttl(parse_ttl(text)?),
    })
}

pub fn print_formula(f: &Formula) -> String {
    f.to_string()
}

pub fn parse_mtl(text: &str) -> Result<Mtl, ParseError> {
    let mut p = Parser::new(text, Logic::Mtl);
    let f = p.mtl()?;
    p.finish()?;
    Ok(f)
}

pub fn parse_tptl(text: &str) -> Result<Tptl, ParseError> {
    let mut p = Parser::new(text, Logic::Tptl);
    let f = p.tptl()?;
    p.finish()?;
    Ok(f)
}

pub fn parse_ttl(text: &str) -> Result<Ttl, ParseError> {
    let mut p = Parser::new(text, Logic::Ttl);
    let f = p.ttl()?;
    p.finish()?;
    Ok(f)
}

/// Parses an interval such as `[0,2)` or `(1,inf)`.
pub fn parse_interval(text: &str) -> Result<Interval, ParseError> {
    let mut p = Parser::new(text, Logic::Mtl);
    let i = p.interval()?;
    p.finish()?;
    Ok(i)
}

/// Parses a guard: `(tt)`, a single `(cmp ...)`, or `(and (cmp ...) ...)`.
pub fn parse_guard(text: &str) -> Result<Guard, ParseError> {
    let mut p = Parser::new(text, Logic::Ttl);
    let g = p.guard()?;
    p.finish()?;
    Ok(g)
}

struct Parser<'a> {
    src: &'a str,
    pos: usize,
    logic: Logic,
}

impl<'a> Parser<'a> {
    fn new(src: &'a str, logic: Logic) -> Self {
        Parser { src, pos: 0, logic }
    }

    fn err<T>(&self, pos: usize, msg: impl Into<String>) -> Result<T, ParseError> {
        Err(ParseError::Syntax {
            pos,
            msg: msg.into(),
        })
    }

    fn skip_ws(&mut self) {
        while let Some(c) = self.src[self.pos..].chars().next() {
            if c.is_whitespace() {
                self.pos += c.len_utf8();
            } else {
                break;
            }
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.src[self.pos..].chars().next()
    }

    fn expect(&mut self, want: char) -> Result<(), ParseError> {
        match self.peek() {
            Some(c) if c == want => {
                self.pos += c.len_utf8();
                Ok(())
            }
            Some(c) => self.err(self.pos, format!("expected `{want}`, found `{c}`")),
            None => self.err(self.pos, format!("expected `{want}`, found end of input")),
        }
    }

    /// A run of characters other than whitespace and parentheses.
    fn word(&mut self) -> Result<(usize, &'a str), ParseError> {
        self.skip_ws();
        let start = self.pos;
        let rest = &self.src[start..];
        let len = rest
            .find(|c: char| c.is_whitespace() || c == '(' || c == ')')
            .unwrap_or(rest.len());
        if len == 0 {
            return match rest.chars().next() {
                Some(c) => self.err(start, format!("expected a name, found `{c}`")),
                None => self.err(start, "expected a name, found end of input"),
            };
        }
        self.pos += len;
        Ok((start, &rest[..len]))
    }

    fn finish(&mut self) -> Result<(), ParseError> {
        match self.peek() {
            None => Ok(()),
            Some(_) => self.err(self.pos, "unexpected trailing input"),
        }
    }

    fn letter(&mut self) -> Result<Letter, ParseError> {
        let (at, w) = self.word()?;
        match Letter::new(w) {
            Ok(l) => Ok(l),
            Err(_) => self.err(at, format!("`{w}` is not a valid letter")),
        }
    }

    fn var(&mut self) -> Result<Var, ParseError> {
        let (at, w) = self.word()?;
        match Var::new(w) {
            Some(v) => Ok(v),
            None => self.err(at, format!("`{w}` is not a valid variable name")),
        }
    }

    fn number(&mut self) -> Result<u64, ParseError> {
        self.skip_ws();
        let start = self.pos;
        let digits = self.src[start..]
            .find(|c: char| !c.is_ascii_digit())
            .unwrap_or(self.src.len() - start);
        if digits == 0 {
            return self.err(start, "expected an integer");
        }
        self.pos += digits;
        self.src[start..self.pos]
            .parse()
            .or_else(|_| self.err(start, "integer out of range"))
    }

    fn interval(&mut self) -> Result<Interval, ParseError> {
        self.skip_ws();
        let start = self.pos;
        let low_open = match self.peek() {
            Some('[') => false,
            Some('(') => true,
            _ => return self.err(start, "expected an interval such as `[0,2)`"),
        };
        self.pos += 1;
        let low = self.number()?;
        self.expect(',')?;
        self.skip_ws();
        let high = if self.src[self.pos..].starts_with("inf") {
            self.pos += 3;
            None
        } else {
            Some(self.number()?)
        };
        let high_open = match self.peek() {
            Some(']') => false,
            Some(')') => true,
            _ => return self.err(self.pos, "expected `]` or `)` closing the interval"),
        };
        self.pos += 1;
        Interval::new(low, high, low_open, high_open)
            .map_err(|source| ParseError::Interval { pos: start, source })
    }

    /// Reads `(` and the operator name that follows.
    fn head(&mut self) -> Result<(usize, &'a str), ParseError> {
        self.expect('(')?;
        self.word()
    }

    fn unknown<T>(&self, at: usize, op: &str) -> Result<T, ParseError> {
        Err(ParseError::UnknownOperator {
            pos: at,
            op: op.to_string(),
            logic: self.logic,
        })
    }

    /// Operands of an n-ary `and`/`or` (at least two), up to the closing parenthesis.
    fn operands<T>(
        &mut self,
        at: usize,
        mut item: impl FnMut(&mut Self) -> Result<T, ParseError>,
    ) -> Result<Vec<T>, ParseError> {
        let mut items = Vec::new();
        while self.peek() != Some(')') {
            if self.peek().is_none() {
                return self.err(self.pos, "unterminated list");
            }
            items.push(item(self)?);
        }
        self.pos += 1;
        if items.len() < 2 {
            return self.err(at, "`and`/`or` need at least two operands");
        }
        Ok(items)
    }

    fn mtl(&mut self) -> Result<Mtl, ParseError> {
        if self.peek() != Some('(') {
            return Ok(Mtl::atom(self.letter()?));
        }
        let (at, op) = self.head()?;
        let f = match op {
            "top" => Mtl::top(),
            "not" => Mtl::not(self.mtl()?),
            "and" | "or" => {
                let items = self.operands(at, |p| p.mtl())?;
                let fold = if op == "and" { Mtl::and } else { Mtl::or };
                return Ok(fold_right(items, fold));
            }
            "U" | "S" => {
                let i = self.interval()?;
                let l = self.mtl()?;
                let r = self.mtl()?;
                if op == "U" {
                    Mtl::until(i, l, r)
                } else {
                    Mtl::since(i, l, r)
                }
            }
            "F" | "P" => {
                let i = self.interval()?;
                let g = self.mtl()?;
                if op == "F" {
                    Mtl::future(i, g)
                } else {
                    Mtl::past(i, g)
                }
            }
            other => return self.unknown(at, other),
        };
        self.expect(')')?;
        Ok(f)
    }

    fn tptl(&mut self) -> Result<Tptl, ParseError> {
        if self.peek() != Some('(') {
            return Ok(Tptl::new(super::tptl::TptlKind::Atom(self.letter()?)));
        }
        let (at, op) = self.head()?;
        let f = match op {
            "top" => Tptl::top(),
            "not" => Tptl::not(self.tptl()?),
            "and" | "or" => {
                let items = self.operands(at, |p| p.tptl())?;
                let fold = if op == "and" { Tptl::and } else { Tptl::or };
                return Ok(fold_right(items, fold));
            }
            "U" | "S" => {
                let l = self.tptl()?;
                let r = self.tptl()?;
                if op == "U" {
                    Tptl::until(l, r)
                } else {
                    Tptl::since(l, r)
                }
            }
            "F" => Tptl::future(self.tptl()?),
            "P" => Tptl::past(self.tptl()?),
            "freeze" => {
                let x = self.var()?;
                Tptl::freeze(x, self.tptl()?)
            }
            "cmp" => return Ok(Tptl::constraint(Guard::atom(self.cmp_body()?))),
            "tt" => Tptl::constraint(Guard::tt()),
            other => return self.unknown(at, other),
        };
        self.expect(')')?;
        Ok(f)
    }

    fn ttl(&mut self) -> Result<Ttl, ParseError> {
        if self.peek() != Some('(') {
            // a bare letter abbreviates the unguarded event (ev a (tt))
            let a = self.letter()?;
            return Ok(Ttl::event(GuardedEvent::new(a, Guard::tt())));
        }
        let (at, op) = self.head()?;
        let f = match op {
            "top" => Ttl::top(),
            "not" => Ttl::not(self.ttl()?),
            "and" | "or" => {
                let items = self.operands(at, |p| p.ttl())?;
                let fold = if op == "and" { Ttl::and } else { Ttl::or };
                return Ok(fold_right(items, fold));
            }
            "sp" => Ttl::sp(self.ttl()?),
            "ep" => Ttl::ep(self.ttl()?),
            "X" | "Y" => {
                let theta = self.guarded_event()?;
                let g = self.ttl()?;
                if op == "X" {
                    Ttl::next(theta, g)
                } else {
                    Ttl::prev(theta, g)
                }
            }
            "freeze" => {
                let x = self.var()?;
                Ttl::freeze(x, self.ttl()?)
            }
            "ev" => {
                let theta = self.event_body()?;
                return Ok(Ttl::event(theta));
            }
            other => return self.unknown(at, other),
        };
        self.expect(')')?;
        Ok(f)
    }

    fn guarded_event(&mut self) -> Result<GuardedEvent, ParseError> {
        let (at, op) = self.head()?;
        if op != "ev" {
            return self.err(
                at,
                format!("expected `(ev <letter> <guard>)`, found `({op}`"),
            );
        }
        self.event_body()
    }

    /// The part of `(ev a g)` after `ev`, including the closing parenthesis.
    fn event_body(&mut self) -> Result<GuardedEvent, ParseError> {
        let a = self.letter()?;
        let g = self.guard()?;
        self.expect(')')?;
        Ok(GuardedEvent::new(a, g))
    }

    fn guard(&mut self) -> Result<Guard, ParseError> {
        let (at, op) = self.head()?;
        match op {
            "tt" => {
                self.expect(')')?;
                Ok(Guard::tt())
            }
            "cmp" => Ok(Guard::atom(self.cmp_body()?)),
            "and" => {
                let mut atoms = Vec::new();
                while self.peek() != Some(')') {
                    let (at, op) = self.head()?;
                    if op != "cmp" {
                        return self.err(
                            at,
                            format!("expected `(cmp ...)` inside a guard, found `{op}`"),
                        );
                    }
                    atoms.push(self.cmp_body()?);
                }
                self.pos += 1;
                if atoms.is_empty() {
                    return self.err(at, "empty guard conjunction; use `(tt)`");
                }
                Ok(Guard { atoms })
            }
            other => self.err(at, format!("expected a guard, found `({other}`")),
        }
    }

    /// The part of `(cmp x-T < 2)` after `cmp`, including the closing parenthesis.
    fn cmp_body(&mut self) -> Result<GuardAtom, ParseError> {
        let (at, lhs) = self.word()?;
        let (orientation, name) = if let Some(x) = lhs.strip_suffix("-T") {
            (Orientation::VarMinusTime, x)
        } else if let Some(x) = lhs.strip_prefix("T-") {
            (Orientation::TimeMinusVar, x)
        } else {
            return self.err(at, format!("expected `x-T` or `T-x`, found `{lhs}`"));
        };
        if !is_identifier(name) {
            return self.err(at, format!("`{name}` is not a valid variable name"));
        }
        let var = Var::new(name).expect("checked identifier");
        let (at, op) = self.word()?;
        let Some(op) = CmpOp::parse(op) else {
            return self.err(at, format!("unknown comparison `{op}`"));
        };
        let (at, c) = self.word()?;
        let Ok(c) = c.parse::<i64>() else {
            return self.err(at, format!("expected an integer constant, found `{c}`"));
        };
        self.expect(')')?;
        Ok(GuardAtom::new(orientation, var, op, c))
    }
}

fn fold_right<T>(items: Vec<T>, join: impl Fn(T, T) -> T) -> T {
    let mut it = items.into_iter().rev();
    let last = it.next().expect("non-empty");
    it.fold(last, |acc, item| join(item, acc))
}
