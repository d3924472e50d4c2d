//! Compilation of TTL into unary MTL through position characterizers.
//!
//! `α(η)` holds exactly at the position where `η` is evaluated. Guards are rewritten into
//! timed `F`/`P` tests against `α` of the node that froze the variable, and `β(η)` holds exactly
//! at that position when `η` is true there.

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use thiserror::Error;

use super::posval::Ancestry;
use crate::logic::{
    classify_formula, CmpOp, Fragment, Guard, GuardAtom, GuardedEvent, Interval, Mtl, NodeId,
    Orientation, Ttl, TtlKind,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct TranslateOptions {
    /// Use `¬P_(0,∞)⊤`/`¬F_(0,∞)⊤` for first/last position and translate guards by the one-sided
    /// table only.
    pub literal: bool,
    /// Refuse guards that need a punctual interval.
    pub strict_punctuality: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TranslateError {
    #[error("guard atom `{0}` needs a punctual interval")]
    PunctualGuard(String),
}

/// How often the compiler had to go beyond the one-sided guard table, and how often it emitted
/// a punctual interval.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct PatchStats {
    /// Disjuncts looking at the binder on the other side of the current position.
    pub opposite_side: usize,
    /// Disjuncts for the binder sitting at the current position.
    pub same_position: usize,
    pub punctual_leaks: usize,
}

impl fmt::Display for PatchStats {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "opposite-side patches {}, same-position patches {}, punctuality leaks {}",
            self.opposite_side, self.same_position, self.punctual_leaks
        )
    }
}

fn forever() -> Interval {
    Interval::at_least(0)
}

/// `{e ≥ 0 : e op c}` as an interval; `None` when empty.
fn same_side(op: CmpOp, c: u64) -> Option<Interval> {
    match op {
        CmpOp::Lt => (c > 0).then(|| Interval::closed_open(0, c)),
        CmpOp::Le => Some(Interval::closed(0, c)),
        CmpOp::Gt => Some(Interval::greater_than(c)),
        CmpOp::Ge => Some(Interval::at_least(c)),
        CmpOp::Eq => Some(Interval::point(c)),
    }
}

/// `{e ≥ 0 : −e op c}` as an interval; `None` when empty.
fn other_side(op: CmpOp, c: u64) -> Option<Interval> {
    match op {
        CmpOp::Lt if c == 0 => Some(Interval::greater_than(0)),
        CmpOp::Lt | CmpOp::Le => Some(forever()),
        CmpOp::Gt => None,
        CmpOp::Ge | CmpOp::Eq => (c == 0).then(|| Interval::point(0)),
    }
}

/// A compiled formula together with the per-node characterizers and β's.
pub struct Translator {
    options: TranslateOptions,
    ancestry: Ancestry,
    alpha: HashMap<NodeId, Arc<Mtl>>,
    beta: HashMap<NodeId, Arc<Mtl>>,
    stats: PatchStats,
    first: Arc<Mtl>,
    last: Arc<Mtl>,
}

/// Result of [`translate`].
#[derive(Debug, Clone)]
pub struct Translation {
    pub formula: Arc<Mtl>,
    pub fragment: Fragment,
    pub stats: PatchStats,
}

impl Translator {
    pub fn new(f: &Ttl, options: TranslateOptions) -> Result<Self, TranslateError> {
        let (first, last) = if options.literal {
            (Interval::greater_than(0), Interval::greater_than(0))
        } else {
            (forever(), forever())
        };
        let mut t = Translator {
            options,
            ancestry: Ancestry::of(f),
            alpha: HashMap::new(),
            beta: HashMap::new(),
            stats: PatchStats::default(),
            first: Arc::new(Mtl::not(Mtl::past(first, Mtl::top()))),
            last: Arc::new(Mtl::not(Mtl::future(last, Mtl::top()))),
        };
        if options.strict_punctuality {
            for theta in f.guarded_events() {
                for atom in &theta.guard.atoms {
                    let atom = atom.normalized();
                    if atom.c == 0 && !atom.op.is_strict() {
                        return Err(TranslateError::PunctualGuard(atom.to_string()));
                    }
                }
            }
        }
        let root_alpha = t.first.clone();
        t.assign_alpha(f, root_alpha)?;
        t.build_beta(f);
        Ok(t)
    }

    pub fn stats(&self) -> PatchStats {
        self.stats
    }

    pub fn alpha(&self, node: NodeId) -> Option<&Arc<Mtl>> {
        self.alpha.get(&node)
    }

    pub fn beta(&self, node: NodeId) -> Option<&Arc<Mtl>> {
        self.beta.get(&node)
    }

    fn assign_alpha(&mut self, f: &Ttl, alpha: Arc<Mtl>) -> Result<(), TranslateError> {
        self.alpha.insert(f.id, alpha.clone());
        match &f.kind {
            TtlKind::Top | TtlKind::Event(_) => {}
            TtlKind::Sp(g) | TtlKind::Ep(g) => {
                let sp = matches!(f.kind, TtlKind::Sp(_));
                let end = if sp {
                    self.first.clone()
                } else {
                    self.last.clone()
                };
                let child = if self.options.literal {
                    end
                } else {
                    // Only reached when the parent is: the parent's position must exist.
                    let elsewhere = if sp {
                        Mtl::future(forever(), alpha.clone())
                    } else {
                        Mtl::past(forever(), alpha.clone())
                    };
                    Arc::new(Mtl::and(end, Mtl::or(alpha, elsewhere)))
                };
                self.assign_alpha(g, child)?;
            }
            TtlKind::Next(theta, g) | TtlKind::Prev(theta, g) => {
                let looks_ahead = matches!(f.kind, TtlKind::Prev(..));
                let cf = self.cf(theta, f.id, !self.options.literal);
                let toward = |x: Arc<Mtl>| {
                    Arc::new(if looks_ahead {
                        Mtl::future(forever(), x)
                    } else {
                        Mtl::past(forever(), x)
                    })
                };
                let candidate = Arc::new(Mtl::and(cf, toward(alpha)));
                let child = Arc::new(Mtl::and(candidate.clone(), Mtl::not(toward(candidate))));
                self.assign_alpha(g, child)?;
            }
            TtlKind::Freeze(_, g) | TtlKind::Not(g) => self.assign_alpha(g, alpha)?,
            TtlKind::And(l, r) | TtlKind::Or(l, r) => {
                self.assign_alpha(l, alpha.clone())?;
                self.assign_alpha(r, alpha)?;
            }
        }
        Ok(())
    }

    fn build_beta(&mut self, f: &Ttl) -> Arc<Mtl> {
        let alpha = self.alpha[&f.id].clone();
        let inner: Option<Mtl> = match &f.kind {
            TtlKind::Top => None,
            TtlKind::Event(theta) => {
                let cf = self.cf(theta, f.id, !self.options.literal);
                Some(Mtl::and(alpha.clone(), cf))
            }
            TtlKind::Freeze(_, g) => {
                let b = self.build_beta(g);
                self.beta.insert(f.id, b.clone());
                return b;
            }
            TtlKind::Not(g) => Some(Mtl::and(alpha.clone(), Mtl::not(self.build_beta(g)))),
            TtlKind::And(l, r) => {
                let (bl, br) = (self.build_beta(l), self.build_beta(r));
                Some(Mtl::and(alpha.clone(), Mtl::and(bl, br)))
            }
            TtlKind::Or(l, r) => {
                let (bl, br) = (self.build_beta(l), self.build_beta(r));
                Some(Mtl::and(alpha.clone(), Mtl::or(bl, br)))
            }
            TtlKind::Next(_, g) => {
                let b = self.anchored(g);
                Some(Mtl::and(alpha.clone(), Mtl::future(forever(), b)))
            }
            TtlKind::Prev(_, g) => {
                let b = self.anchored(g);
                Some(Mtl::and(alpha.clone(), Mtl::past(forever(), b)))
            }
            TtlKind::Sp(g) => {
                let b = self.anchored(g);
                Some(Mtl::and(
                    alpha.clone(),
                    Mtl::or(b.clone(), Mtl::past(forever(), b)),
                ))
            }
            TtlKind::Ep(g) => {
                let b = self.anchored(g);
                Some(Mtl::and(
                    alpha.clone(),
                    Mtl::or(b.clone(), Mtl::future(forever(), b)),
                ))
            }
        };
        let b = inner.map_or(alpha, Arc::new);
        self.beta.insert(f.id, b.clone());
        b
    }

    /// `α(η₁) ∧ β(η₁)`
    fn anchored(&mut self, g: &Ttl) -> Arc<Mtl> {
        let b = self.build_beta(g);
        Arc::new(Mtl::and(self.alpha[&g.id].clone(), b))
    }

    /// `CF(θ, η)`: holds at `i` iff `θ` holds at `i` under `val(η)`. With `patched = false`
    /// only the one-sided table is used.
    pub fn cf(&mut self, theta: &GuardedEvent, node: NodeId, patched: bool) -> Arc<Mtl> {
        let letter = Arc::new(Mtl::atom(theta.letter.clone()));
        if theta.guard.is_trivial() {
            return letter;
        }
        let guard = self.translate_guard(&theta.guard, node, patched);
        Arc::new(Mtl::and(letter, guard))
    }

    /// `C(g, η)`
    pub fn translate_guard(&mut self, g: &Guard, node: NodeId, patched: bool) -> Arc<Mtl> {
        let atoms: Vec<Arc<Mtl>> = g
            .atoms
            .iter()
            .flat_map(|a| a.normalized().expand_equality())
            .map(|a| self.translate_atom(&a, node, patched))
            .collect();
        Mtl::conj(atoms)
    }

    fn translate_atom(&mut self, atom: &GuardAtom, node: NodeId, patched: bool) -> Arc<Mtl> {
        let binder = self.alpha[&self.ancestry.anc(node, &atom.var)].clone();
        let c = atom.c as u64;
        let modal = |looks_ahead: bool, iv: Interval| {
            Arc::new(if looks_ahead {
                Mtl::future(iv, binder.clone())
            } else {
                Mtl::past(iv, binder.clone())
            })
        };
        // `x − T op c` looks for the binder in the future; `T − x op c` in the past.
        let ahead = atom.orientation == Orientation::VarMinusTime;
        let mut parts = Vec::new();
        if let Some(iv) = same_side(atom.op, c) {
            self.stats.punctual_leaks += usize::from(iv.is_singular());
            parts.push(modal(ahead, iv));
        }
        if patched {
            if let Some(iv) = other_side(atom.op, c) {
                self.stats.opposite_side += 1;
                self.stats.punctual_leaks += usize::from(iv.is_singular());
                parts.push(modal(!ahead, iv));
            }
            if atom.holds_at_zero_difference() {
                self.stats.same_position += 1;
                parts.push(binder.clone());
            }
        }
        Mtl::disj(parts)
    }
}

/// `β` of the whole formula.
pub fn translate(f: &Ttl, options: TranslateOptions) -> Result<Translation, TranslateError> {
    let t = Translator::new(f, options)?;
    let formula = t.beta[&f.id].clone();
    Ok(Translation {
        fragment: classify_formula(&formula),
        formula,
        stats: t.stats,
    })
}

pub fn beta(f: &Ttl) -> Result<Arc<Mtl>, TranslateError> {
    translate(f, TranslateOptions::default()).map(|t| t.formula)
}

/// Whether some guard of the formula compares against 0 with `≤`, `≥` or `=`.
pub fn has_zero_nonstrict_guard(f: &Ttl) -> bool {
    f.guarded_events().iter().any(|theta| {
        theta.guard.atoms.iter().any(|a| {
            let a = a.normalized();
            a.c == 0 && !a.op.is_strict()
        })
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::logic::parse_ttl;
    use crate::semantics::{eval_mtl, lang_member_ttl};
    use crate::word::parse_word;

    #[test]
    fn guard_table_rows() {
        let f = parse_ttl("(X (ev b (cmp x-T < 2)) (top))").unwrap();
        let mut t = Translator::new(
            &f,
            TranslateOptions {
                literal: true,
                ..Default::default()
            },
        )
        .unwrap();
        let theta = GuardedEvent::new(
            crate::word::Letter::new("b").unwrap(),
            crate::logic::parse_guard("(cmp x-T < 2)").unwrap(),
        );
        let root = t.alpha[&f.id].clone();
        assert_eq!(
            t.translate_guard(&theta.guard, f.id, false).to_string(),
            format!("(F [0,2) {root})")
        );
        let g = crate::logic::parse_guard("(cmp T-x < 1)").unwrap();
        assert_eq!(
            t.translate_guard(&g, f.id, false).to_string(),
            format!("(P [0,1) {root})")
        );
        let both = crate::logic::parse_guard("(and (cmp x-T < 2) (cmp T-x < 1))").unwrap();
        assert_eq!(
            t.translate_guard(&both, f.id, false).to_string(),
            format!("(and (F [0,2) {root}) (P [0,1) {root}))")
        );
        assert_eq!(
            t.cf(&GuardedEvent::plain("a"), f.id, false).to_string(),
            "a"
        );
    }

    #[test]
    fn top_holds_only_first() {
        let f = parse_ttl("(top)").unwrap();
        let b = beta(&f).unwrap();
        let w = parse_word("a 0\nb 0\nb 1").unwrap();
        assert!(eval_mtl(&w, 1, &b).unwrap());
        assert!(!eval_mtl(&w, 2, &b).unwrap());
        assert!(!eval_mtl(&w, 3, &b).unwrap());
    }

    #[test]
    fn freeze_next_example() {
        let f = parse_ttl("(freeze x (X (ev b (cmp T-x < 2)) (top)))").unwrap();
        let w = parse_word("a 0\nb 3/2").unwrap();
        let tr = translate(&f, TranslateOptions::default()).unwrap();
        assert!(lang_member_ttl(&w, &f).unwrap());
        assert!(eval_mtl(&w, 1, &tr.formula).unwrap());
        assert!(tr.fragment.unary);
    }

    #[test]
    fn strict_mode_rejects_zero_equality() {
        let f = parse_ttl("(X (ev b (cmp x-T = 0)) (top))").unwrap();
        let strict = TranslateOptions {
            strict_punctuality: true,
            ..Default::default()
        };
        assert!(matches!(
            translate(&f, strict),
            Err(TranslateError::PunctualGuard(_))
        ));
        let tr = translate(&f, TranslateOptions::default()).unwrap();
        assert!(tr.stats.punctual_leaks > 0);
        assert!(!tr.fragment.non_punctual);
        assert!(has_zero_nonstrict_guard(&f));
    }
}
