use std::fmt;

use super::guard::{Guard, Var};
use super::NodeId;
use crate::word::Letter;

/// θ = (a, g): a letter together with a timing guard.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GuardedEvent {
    pub letter: Letter,
    pub guard: Guard,
}

impl GuardedEvent {
    pub fn new(letter: Letter, guard: Guard) -> Self {
        GuardedEvent { letter, guard }
    }

    /// `(a, tt)`
    pub fn plain(name: &str) -> Self {
        GuardedEvent {
            letter: Letter::new(name).expect("valid letter"),
            guard: Guard::tt(),
        }
    }
}

impl fmt::Display for GuardedEvent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(ev {} {})", self.letter, self.guard)
    }
}

/// A TTL[X_θ,Y_θ] formula.
#[derive(Debug, Clone)]
pub struct Ttl {
    pub id: NodeId,
    pub kind: TtlKind,
}

#[derive(Debug, Clone, PartialEq)]
pub enum TtlKind {
    Top,
    Event(GuardedEvent),
    Sp(Box<Ttl>),
    Ep(Box<Ttl>),
    Next(GuardedEvent, Box<Ttl>),
    Prev(GuardedEvent, Box<Ttl>),
    Freeze(Var, Box<Ttl>),
    Not(Box<Ttl>),
    And(Box<Ttl>, Box<Ttl>),
    Or(Box<Ttl>, Box<Ttl>),
}

impl PartialEq for Ttl {
    fn eq(&self, other: &Self) -> bool {
        self.kind == other.kind
    }
}

impl Ttl {
    pub fn new(kind: TtlKind) -> Self {
        Ttl {
            id: NodeId::fresh(),
            kind,
        }
    }

    pub fn top() -> Self {
        Self::new(TtlKind::Top)
    }

    pub fn event(theta: GuardedEvent) -> Self {
        Self::new(TtlKind::Event(theta))
    }

    pub fn sp(f: Ttl) -> Self {
        Self::new(TtlKind::Sp(Box::new(f)))
    }

    pub fn ep(f: Ttl) -> Self {
        Self::new(TtlKind::Ep(Box::new(f)))
    }

    pub fn next(theta: GuardedEvent, f: Ttl) -> Self {
        Self::new(TtlKind::Next(theta, Box::new(f)))
    }

    pub fn prev(theta: GuardedEvent, f: Ttl) -> Self {
        Self::new(TtlKind::Prev(theta, Box::new(f)))
    }

    pub fn freeze(x: Var, f: Ttl) -> Self {
        Self::new(TtlKind::Freeze(x, Box::new(f)))
    }

    #[allow(clippy::should_implement_trait)]
    pub fn not(f: Ttl) -> Self {
        Self::new(TtlKind::Not(Box::new(f)))
    }

    pub fn and(l: Ttl, r: Ttl) -> Self {
        Self::new(TtlKind::And(Box::new(l), Box::new(r)))
    }

    pub fn or(l: Ttl, r: Ttl) -> Self {
        Self::new(TtlKind::Or(Box::new(l), Box::new(r)))
    }

    pub fn children(&self) -> Vec<&Ttl> {
        match &self.kind {
            TtlKind::Top | TtlKind::Event(_) => vec![],
            TtlKind::Sp(f)
            | TtlKind::Ep(f)
            | TtlKind::Next(_, f)
            | TtlKind::Prev(_, f)
            | TtlKind::Freeze(_, f)
            | TtlKind::Not(f) => vec![f],
            TtlKind::And(l, r) | TtlKind::Or(l, r) => vec![l, r],
        }
    }

    /// SP, EP, X and Y count as modal; freeze does not.
    pub fn is_modal(&self) -> bool {
        matches!(
            self.kind,
            TtlKind::Sp(_) | TtlKind::Ep(_) | TtlKind::Next(..) | TtlKind::Prev(..)
        )
    }

    /// Pre-order list of all nodes.
    pub fn nodes(&self) -> Vec<&Ttl> {
        let mut out = Vec::new();
        let mut stack = vec![self];
        while let Some(n) = stack.pop() {
            out.push(n);
            for c in n.children().into_iter().rev() {
                stack.push(c);
            }
        }
        out
    }

    /// Guarded events mentioned anywhere (in event leaves and modality subscripts).
    pub fn guarded_events(&self) -> Vec<&GuardedEvent> {
        self.nodes()
            .into_iter()
            .filter_map(|n| match &n.kind {
                TtlKind::Event(t) | TtlKind::Next(t, _) | TtlKind::Prev(t, _) => Some(t),
                _ => None,
            })
            .collect()
    }
}

impl fmt::Display for Ttl {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.kind {
            TtlKind::Top => f.write_str("(top)"),
            TtlKind::Event(t) => write!(f, "{t}"),
            TtlKind::Sp(g) => write!(f, "(sp {g})"),
            TtlKind::Ep(g) => write!(f, "(ep {g})"),
            TtlKind::Next(t, g) => write!(f, "(X {t} {g})"),
            TtlKind::Prev(t, g) => write!(f, "(Y {t} {g})"),
            TtlKind::Freeze(x, g) => write!(f, "(freeze {x} {g})"),
            TtlKind::Not(g) => write!(f, "(not {g})"),
            TtlKind::And(l, r) => write!(f, "(and {l} {r})"),
            TtlKind::Or(l, r) => write!(f, "(or {l} {r})"),
        }
    }
}
