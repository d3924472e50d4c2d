//! Recursive TTL evaluation: deterministic next/previous guarded-event jumps.

use crate::logic::{GuardedEvent, Ttl, TtlKind, Valuation};
use crate::word::TimedWord;

use super::EvalError;

/// `ρ, i, ν ⊨ φ`
pub fn eval_ttl(w: &TimedWord, i: usize, nu: &Valuation, f: &Ttl) -> Result<bool, EvalError> {
    w.check_position(i)?;
    Ok(eval_at(w, i, nu, f))
}

/// `ρ, 1, ν₀ ⊨ φ`; the word must start at time 0.
pub fn lang_member_ttl(w: &TimedWord, f: &Ttl) -> Result<bool, EvalError> {
    w.require_anchored()?;
    eval_ttl(w, 1, &Valuation::initial(), f)
}

/// `ρ, i, ν ⊨ θ`
pub fn event_holds(w: &TimedWord, i: usize, nu: &Valuation, theta: &GuardedEvent) -> bool {
    w.letter(i) == &theta.letter && theta.guard.eval(nu, w.time(i))
}

/// First position after `i` satisfying `θ` under `ν`.
pub fn next_match(w: &TimedWord, i: usize, nu: &Valuation, theta: &GuardedEvent) -> Option<usize> {
    (i + 1..=w.len()).find(|&j| event_holds(w, j, nu, theta))
}

/// Last position before `i` satisfying `θ` under `ν`.
pub fn prev_match(w: &TimedWord, i: usize, nu: &Valuation, theta: &GuardedEvent) -> Option<usize> {
    (1..i).rev().find(|&j| event_holds(w, j, nu, theta))
}

fn eval_at(w: &TimedWord, i: usize, nu: &Valuation, f: &Ttl) -> bool {
    // Each subformula is visited at most once per evaluation path, so no memo is needed.
    match &f.kind {
        TtlKind::Top => true,
        TtlKind::Event(theta) => event_holds(w, i, nu, theta),
        TtlKind::Sp(g) => eval_at(w, 1, nu, g),
        TtlKind::Ep(g) => eval_at(w, w.len(), nu, g),
        TtlKind::Next(theta, g) => {
            next_match(w, i, nu, theta).is_some_and(|j| eval_at(w, j, nu, g))
        }
        TtlKind::Prev(theta, g) => {
            prev_match(w, i, nu, theta).is_some_and(|j| eval_at(w, j, nu, g))
        }
        TtlKind::Freeze(x, g) => eval_at(w, i, &nu.with(x, w.time(i).clone()), g),
        TtlKind::Not(g) => !eval_at(w, i, nu, g),
        TtlKind::And(l, r) => eval_at(w, i, nu, l) && eval_at(w, i, nu, r),
        TtlKind::Or(l, r) => eval_at(w, i, nu, l) || eval_at(w, i, nu, r),
    }
}
