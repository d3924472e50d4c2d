//! Deterministic evaluation positions and valuations of TTL subformulas.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use crate::logic::{NodeId, Ttl, TtlKind, Valuation, Var};
use crate::semantics::{next_match, prev_match};
use crate::word::{TimedWord, WordError};

/// For every node, the node where each variable was last frozen above it. Variables with no
/// enclosing freeze resolve to the root.
#[derive(Debug, Clone)]
pub struct Ancestry {
    pub root: NodeId,
    binders: HashMap<NodeId, BTreeMap<Var, NodeId>>,
}

impl Ancestry {
    pub fn of(f: &Ttl) -> Self {
        let mut binders = HashMap::new();
        fn walk(
            f: &Ttl,
            scope: &BTreeMap<Var, NodeId>,
            out: &mut HashMap<NodeId, BTreeMap<Var, NodeId>>,
        ) {
            out.insert(f.id, scope.clone());
            if let TtlKind::Freeze(x, g) = &f.kind {
                let mut inner = scope.clone();
                inner.insert(x.clone(), f.id);
                walk(g, &inner, out);
            } else {
                for c in f.children() {
                    walk(c, scope, out);
                }
            }
        }
        walk(f, &BTreeMap::new(), &mut binders);
        Ancestry {
            root: f.id,
            binders,
        }
    }

    /// `anc_x(η)`: the nearest proper ancestor freezing `x`, or the root.
    pub fn anc(&self, node: NodeId, x: &Var) -> NodeId {
        self.binders
            .get(&node)
            .and_then(|m| m.get(x))
            .copied()
            .unwrap_or(self.root)
    }
}

/// `pos` and `val` of every node on one word; nodes that are never reached have no position.
#[derive(Debug, Clone, Default)]
pub struct ParseInfo {
    pos: HashMap<NodeId, Option<usize>>,
    val: HashMap<NodeId, Valuation>,
}

impl ParseInfo {
    pub fn pos(&self, node: NodeId) -> Option<usize> {
        self.pos.get(&node).copied().flatten()
    }

    /// Defined only for nodes with a position.
    pub fn val(&self, node: NodeId) -> Option<&Valuation> {
        self.val.get(&node)
    }
}

pub fn compute_pos_val(w: &TimedWord, f: &Ttl) -> Result<ParseInfo, WordError> {
    w.require_anchored()?;
    Ok(compute_pos_val_with(w, f, &Valuation::initial()))
}

/// Like [`compute_pos_val`] with a caller-chosen starting valuation and no anchoring check.
/// Useful on words that do not start at 0 when every guard reads a frozen variable.
pub fn compute_pos_val_with(w: &TimedWord, f: &Ttl, nu: &Valuation) -> ParseInfo {
    let mut info = ParseInfo::default();
    assign(w, f, Some(1), nu, &mut info);
    info
}

fn assign(w: &TimedWord, f: &Ttl, pos: Option<usize>, nu: &Valuation, info: &mut ParseInfo) {
    info.pos.insert(f.id, pos);
    let Some(i) = pos else {
        for c in f.children() {
            assign(w, c, None, nu, info);
        }
        return;
    };
    info.val.insert(f.id, nu.clone());
    match &f.kind {
        TtlKind::Top | TtlKind::Event(_) => {}
        TtlKind::Sp(g) => assign(w, g, Some(1), nu, info),
        TtlKind::Ep(g) => assign(w, g, Some(w.len()), nu, info),
        TtlKind::Next(theta, g) => assign(w, g, next_match(w, i, nu, theta), nu, info),
        TtlKind::Prev(theta, g) => assign(w, g, prev_match(w, i, nu, theta), nu, info),
        TtlKind::Freeze(x, g) => assign(w, g, pos, &nu.with(x, w.time(i).clone()), info),
        TtlKind::Not(g) => assign(w, g, pos, nu, info),
        TtlKind::And(l, r) | TtlKind::Or(l, r) => {
            assign(w, l, pos, nu, info);
            assign(w, r, pos, nu, info);
        }
    }
}

/// Every position some subformula is evaluated at.
pub fn reach_set(w: &TimedWord, f: &Ttl) -> Result<BTreeSet<usize>, WordError> {
    let info = compute_pos_val(w, f)?;
    Ok(positions_reached(f, &info))
}

/// Reach set over an arbitrary word, starting from `ν₀` without an anchoring check.
pub fn reach_set_unanchored(w: &TimedWord, f: &Ttl) -> BTreeSet<usize> {
    positions_reached(f, &compute_pos_val_with(w, f, &Valuation::initial()))
}

fn positions_reached(f: &Ttl, info: &ParseInfo) -> BTreeSet<usize> {
    f.nodes().iter().filter_map(|n| info.pos(n.id)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::logic::parse_ttl;
    use crate::word::parse_word;

    #[test]
    fn unmatched_next_is_undefined() {
        let f = parse_ttl("(X (ev b (tt)) (top))").unwrap();
        let info = compute_pos_val(&parse_word("a 0\na 1").unwrap(), &f).unwrap();
        assert_eq!(info.pos(f.id), Some(1));
        assert_eq!(info.pos(f.children()[0].id), None);
        assert!(info.val(f.children()[0].id).is_none());
    }

    #[test]
    fn sp_then_next() {
        let f = parse_ttl("(sp (X (ev b (tt)) (top)))").unwrap();
        let w = parse_word("a 0\nb 1\nb 2").unwrap();
        let info = compute_pos_val(&w, &f).unwrap();
        let x = f.children()[0];
        assert_eq!(info.pos(x.id), Some(1));
        assert_eq!(info.pos(x.children()[0].id), Some(2));
    }

    #[test]
    fn reach_examples() {
        let w = parse_word("a 0\nb 1\na 2\nb 3\na 4").unwrap();
        assert_eq!(
            reach_set(&w, &parse_ttl("(top)").unwrap()).unwrap(),
            BTreeSet::from([1])
        );
        assert_eq!(
            reach_set(&w, &parse_ttl("(ep (top))").unwrap()).unwrap(),
            BTreeSet::from([1, 5])
        );
    }

    #[test]
    fn ancestry_is_nearest_binder() {
        let f = parse_ttl("(freeze x (X (ev a (tt)) (freeze x (ev b (cmp T-x < 1)))))").unwrap();
        let anc = Ancestry::of(&f);
        let x = Var::new("x").unwrap();
        let inner_freeze = f.children()[0].children()[0];
        let event = inner_freeze.children()[0];
        assert_eq!(anc.anc(event.id, &x), inner_freeze.id);
        assert_eq!(anc.anc(inner_freeze.id, &x), f.id);
        assert_eq!(anc.anc(f.id, &x), f.id);
        assert_eq!(anc.anc(event.id, &Var::new("y").unwrap()), f.id);
    }
}
