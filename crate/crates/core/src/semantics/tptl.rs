//! Recursive TPTL evaluation with explicit valuations.

use std::collections::HashMap;

use crate::logic::{NodeId, Tptl, TptlKind, Valuation};
use crate::word::TimedWord;

use super::EvalError;

/// `ρ, i, ν ⊨ φ`
pub fn eval_tptl(w: &TimedWord, i: usize, nu: &Valuation, f: &Tptl) -> Result<bool, EvalError> {
    w.check_position(i)?;
    Ok(TptlEvaluator::new(w).eval(i, nu, f))
}

/// `ρ, 1, ν₀ ⊨ φ`; the word must start at time 0.
pub fn lang_member_tptl(w: &TimedWord, f: &Tptl) -> Result<bool, EvalError> {
    w.require_anchored()?;
    eval_tptl(w, 1, &Valuation::initial(), f)
}

pub struct TptlEvaluator<'w> {
    word: &'w TimedWord,
    memo: HashMap<(NodeId, usize, Valuation), bool>,
}

impl<'w> TptlEvaluator<'w> {
    pub fn new(word: &'w TimedWord) -> Self {
        TptlEvaluator {
            word,
            memo: HashMap::new(),
        }
    }

    pub fn eval(&mut self, i: usize, nu: &Valuation, f: &Tptl) -> bool {
        let key = (f.id, i, nu.clone());
        if let Some(&v) = self.memo.get(&key) {
            return v;
        }
        let v = match &f.kind {
            TptlKind::Top => true,
            TptlKind::Atom(a) => self.word.letter(i) == a,
            TptlKind::Constraint(g) => g.eval(nu, self.word.time(i)),
            TptlKind::Not(g) => !self.eval(i, nu, g),
            TptlKind::And(l, r) => self.eval(i, nu, l) && self.eval(i, nu, r),
            TptlKind::Or(l, r) => self.eval(i, nu, l) || self.eval(i, nu, r),
            TptlKind::Until(l, r) => self.until(i, nu, Some(l), r),
            TptlKind::Future(r) => self.until(i, nu, None, r),
            TptlKind::Since(l, r) => self.since(i, nu, Some(l), r),
            TptlKind::Past(r) => self.since(i, nu, None, r),
            TptlKind::Freeze(x, g) => {
                let nu2 = nu.with(x, self.word.time(i).clone());
                self.eval(i, &nu2, g)
            }
        };
        self.memo.insert(key, v);
        v
    }

    // F and P are read as ⊤ U φ and ⊤ S φ.
    fn until(&mut self, i: usize, nu: &Valuation, l: Option<&Tptl>, r: &Tptl) -> bool {
        for j in i + 1..=self.word.len() {
            if self.eval(j, nu, r) {
                return true;
            }
            if let Some(l) = l {
                if !self.eval(j, nu, l) {
                    return false;
                }
            }
        }
        false
    }

    fn since(&mut self, i: usize, nu: &Valuation, l: Option<&Tptl>, r: &Tptl) -> bool {
        for j in (1..i).rev() {
            if self.eval(j, nu, r) {
                return true;
            }
            if let Some(l) = l {
                if !self.eval(j, nu, l) {
                    return false;
                }
            }
        }
        false
    }
}
