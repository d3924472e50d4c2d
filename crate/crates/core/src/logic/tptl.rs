use std::fmt;

use super::guard::{Guard, Var};
use super::NodeId;
use crate::word::Letter;

/// A TPTL[U,S] formula with untimed strict modalities and freeze quantification.
#[derive(Debug, Clone)]
pub struct Tptl {
    pub id: NodeId,
    pub kind: TptlKind,
}

#[derive(Debug, Clone, PartialEq)]
pub enum TptlKind {
    Top,
    Atom(Letter),
    Constraint(Guard),
    Not(Box<Tptl>),
    And(Box<Tptl>, Box<Tptl>),
    Or(Box<Tptl>, Box<Tptl>),
    Until(Box<Tptl>, Box<Tptl>),
    Since(Box<Tptl>, Box<Tptl>),
    Future(Box<Tptl>),
    Past(Box<Tptl>),
    Freeze(Var, Box<Tptl>),
}

impl PartialEq for Tptl {
    fn eq(&self, other: &Self) -> bool {
        self.kind == other.kind
    }
}

impl Tptl {
    pub fn new(kind: TptlKind) -> Self {
        Tptl {
            id: NodeId::fresh(),
            kind,
        }
    }

    pub fn top() -> Self {
        Self::new(TptlKind::Top)
    }

    pub fn letter(name: &str) -> Self {
        Self::new(TptlKind::Atom(Letter::new(name).expect("valid letter")))
    }

    pub fn constraint(g: Guard) -> Self {
        Self::new(TptlKind::Constraint(g))
    }

    #[allow(clippy::should_implement_trait)]
    pub fn not(f: Tptl) -> Self {
        Self::new(TptlKind::Not(Box::new(f)))
    }

    pub fn and(l: Tptl, r: Tptl) -> Self {
        Self::new(TptlKind::And(Box::new(l), Box::new(r)))
    }

    pub fn or(l: Tptl, r: Tptl) -> Self {
        Self::new(TptlKind::Or(Box::new(l), Box::new(r)))
    }

    pub fn until(l: Tptl, r: Tptl) -> Self {
        Self::new(TptlKind::Until(Box::new(l), Box::new(r)))
    }

    pub fn since(l: Tptl, r: Tptl) -> Self {
        Self::new(TptlKind::Since(Box::new(l), Box::new(r)))
    }

    pub fn future(f: Tptl) -> Self {
        Self::new(TptlKind::Future(Box::new(f)))
    }

    pub fn past(f: Tptl) -> Self {
        Self::new(TptlKind::Past(Box::new(f)))
    }

    pub fn freeze(x: Var, f: Tptl) -> Self {
        Self::new(TptlKind::Freeze(x, Box::new(f)))
    }

    pub fn children(&self) -> Vec<&Tptl> {
        match &self.kind {
            TptlKind::Top | TptlKind::Atom(_) | TptlKind::Constraint(_) => vec![],
            TptlKind::Not(f) | TptlKind::Future(f) | TptlKind::Past(f) | TptlKind::Freeze(_, f) => {
                vec![f]
            }
            TptlKind::And(l, r)
            | TptlKind::Or(l, r)
            | TptlKind::Until(l, r)
            | TptlKind::Since(l, r) => vec![l, r],
        }
    }

    pub fn is_modal(&self) -> bool {
        matches!(
            self.kind,
            TptlKind::Until(..) | TptlKind::Since(..) | TptlKind::Future(_) | TptlKind::Past(_)
        )
    }

    /// Freeze variables bound anywhere in the formula.
    pub fn frozen_vars(&self) -> std::collections::BTreeSet<Var> {
        let mut out = std::collections::BTreeSet::new();
        fn walk(f: &Tptl, out: &mut std::collections::BTreeSet<Var>) {
            if let TptlKind::Freeze(x, _) = &f.kind {
                out.insert(x.clone());
            }
            for c in f.children() {
                walk(c, out);
            }
        }
        walk(self, &mut out);
        out
    }

    /// True iff the only modality used is the untimed future `F`.
    pub fn uses_only_future(&self) -> bool {
        !matches!(
            self.kind,
            TptlKind::Until(..) | TptlKind::Since(..) | TptlKind::Past(_)
        ) && self.children().iter().all(|c| c.uses_only_future())
    }
}

impl fmt::Display for Tptl {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.kind {
            TptlKind::Top => f.write_str("(top)"),
            TptlKind::Atom(a) => write!(f, "{a}"),
            TptlKind::Constraint(g) => write!(f, "{g}"),
            TptlKind::Not(g) => write!(f, "(not {g})"),
            TptlKind::And(l, r) => write!(f, "(and {l} {r})"),
            TptlKind::Or(l, r) => write!(f, "(or {l} {r})"),
            TptlKind::Until(l, r) => write!(f, "(U {l} {r})"),
            TptlKind::Since(l, r) => write!(f, "(S {l} {r})"),
            TptlKind::Future(g) => write!(f, "(F {g})"),
            TptlKind::Past(g) => write!(f, "(P {g})"),
            TptlKind::Freeze(x, g) => write!(f, "(freeze {x} {g})"),
        }
    }
}
