use std::fmt;
use std::sync::Arc;

use super::interval::Interval;
use super::NodeId;
use crate::word::Letter;

/// An Iv-MTL[U,S] formula. Children are reference counted so compiled formulas can share
/// subterms; equality ignores node ids.
#[derive(Debug, Clone)]
pub struct Mtl {
    pub id: NodeId,
    pub kind: MtlKind,
}

#[derive(Debug, Clone, PartialEq)]
pub enum MtlKind {
    Top,
    Atom(Letter),
    Not(Arc<Mtl>),
    And(Arc<Mtl>, Arc<Mtl>),
    Or(Arc<Mtl>, Arc<Mtl>),
    Until(Interval, Arc<Mtl>, Arc<Mtl>),
    Since(Interval, Arc<Mtl>, Arc<Mtl>),
    Future(Interval, Arc<Mtl>),
    Past(Interval, Arc<Mtl>),
}

impl PartialEq for Mtl {
    fn eq(&self, other: &Self) -> bool {
        self.kind == other.kind
    }
}

impl Mtl {
    pub fn new(kind: MtlKind) -> Self {
        Mtl {
            id: NodeId::fresh(),
            kind,
        }
    }

    pub fn top() -> Self {
        Self::new(MtlKind::Top)
    }

    /// `¬⊤`, the canonical false subformula.
    pub fn bottom() -> Self {
        Self::not(Self::top())
    }

    pub fn atom(letter: Letter) -> Self {
        Self::new(MtlKind::Atom(letter))
    }

    /// Panics on an invalid letter; meant for literals in code and tests.
    pub fn letter(name: &str) -> Self {
        Self::atom(Letter::new(name).expect("valid letter"))
    }

    pub fn not(f: impl Into<Arc<Mtl>>) -> Self {
        Self::new(MtlKind::Not(f.into()))
    }

    pub fn and(l: impl Into<Arc<Mtl>>, r: impl Into<Arc<Mtl>>) -> Self {
        Self::new(MtlKind::And(l.into(), r.into()))
    }

    pub fn or(l: impl Into<Arc<Mtl>>, r: impl Into<Arc<Mtl>>) -> Self {
        Self::new(MtlKind::Or(l.into(), r.into()))
    }

    pub fn until(i: Interval, l: impl Into<Arc<Mtl>>, r: impl Into<Arc<Mtl>>) -> Self {
        Self::new(MtlKind::Until(i, l.into(), r.into()))
    }

    pub fn since(i: Interval, l: impl Into<Arc<Mtl>>, r: impl Into<Arc<Mtl>>) -> Self {
        Self::new(MtlKind::Since(i, l.into(), r.into()))
    }

    pub fn future(i: Interval, f: impl Into<Arc<Mtl>>) -> Self {
        Self::new(MtlKind::Future(i, f.into()))
    }

    pub fn past(i: Interval, f: impl Into<Arc<Mtl>>) -> Self {
        Self::new(MtlKind::Past(i, f.into()))
    }

    /// Conjunction of all items; `⊤` when empty.
    pub fn conj<I: IntoIterator<Item = Arc<Mtl>>>(items: I) -> Arc<Mtl> {
        items
            .into_iter()
            .reduce(|a, b| Arc::new(Mtl::and(a, b)))
            .unwrap_or_else(|| Arc::new(Mtl::top()))
    }

    /// Disjunction of all items; `¬⊤` when empty.
    pub fn disj<I: IntoIterator<Item = Arc<Mtl>>>(items: I) -> Arc<Mtl> {
        items
            .into_iter()
            .reduce(|a, b| Arc::new(Mtl::or(a, b)))
            .unwrap_or_else(|| Arc::new(Mtl::bottom()))
    }

    pub fn is_bottom(&self) -> bool {
        matches!(&self.kind, MtlKind::Not(inner) if matches!(inner.kind, MtlKind::Top))
    }

    pub fn children(&self) -> Vec<&Arc<Mtl>> {
        match &self.kind {
            MtlKind::Top | MtlKind::Atom(_) => vec![],
            MtlKind::Not(f) | MtlKind::Future(_, f) | MtlKind::Past(_, f) => vec![f],
            MtlKind::And(l, r)
            | MtlKind::Or(l, r)
            | MtlKind::Until(_, l, r)
            | MtlKind::Since(_, l, r) => vec![l, r],
        }
    }

    pub fn interval(&self) -> Option<&Interval> {
        match &self.kind {
            MtlKind::Until(i, ..)
            | MtlKind::Since(i, ..)
            | MtlKind::Future(i, _)
            | MtlKind::Past(i, _) => Some(i),
            _ => None,
        }
    }

    pub fn is_modal(&self) -> bool {
        self.interval().is_some()
    }

    /// Number of nodes counting shared subterms once per occurrence.
    pub fn tree_size(&self) -> usize {
        1 + self.children().iter().map(|c| c.tree_size()).sum::<usize>()
    }

    /// Number of distinct shared nodes.
    pub fn dag_size(&self) -> usize {
        let mut seen = std::collections::HashSet::new();
        fn walk(f: &Mtl, seen: &mut std::collections::HashSet<usize>) {
            if seen.insert(f as *const Mtl as usize) {
                for c in f.children() {
                    walk(c, seen);
                }
            }
        }
        walk(self, &mut seen);
        seen.len()
    }

    /// All letters mentioned by atoms.
    pub fn letters(&self) -> std::collections::BTreeSet<Letter> {
        let mut out = std::collections::BTreeSet::new();
        fn walk(f: &Mtl, out: &mut std::collections::BTreeSet<Letter>) {
            if let MtlKind::Atom(a) = &f.kind {
                out.insert(a.clone());
            }
            for c in f.children() {
                walk(c, out);
            }
        }
        walk(self, &mut out);
        out
    }
}

impl fmt::Display for Mtl {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.kind {
            MtlKind::Top => f.write_str("(top)"),
            MtlKind::Atom(a) => write!(f, "{a}"),
            MtlKind::Not(g) => write!(f, "(not {g})"),
            MtlKind::And(l, r) => write!(f, "(and {l} {r})"),
            MtlKind::Or(l, r) => write!(f, "(or {l} {r})"),
            MtlKind::Until(i, l, r) => write!(f, "(U {i} {l} {r})"),
            MtlKind::Since(i, l, r) => write!(f, "(S {i} {l} {r})"),
            MtlKind::Future(i, g) => write!(f, "(F {i} {g})"),
            MtlKind::Past(i, g) => write!(f, "(P {i} {g})"),
        }
    }
}
