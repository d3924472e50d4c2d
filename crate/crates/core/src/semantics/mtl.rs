//! Recursive MTL evaluation under the strict pointwise semantics.

use std::collections::HashMap;

use crate::logic::{Interval, Mtl, MtlKind};
use crate::word::TimedWord;

use super::EvalError;

/// `ρ, i ⊨ φ`
pub fn eval_mtl(w: &TimedWord, i: usize, f: &Mtl) -> Result<bool, EvalError> {
    w.check_position(i)?;
    Ok(MtlEvaluator::new(w).eval(i, f))
}

/// `ρ ∈ L(φ)`, i.e. `ρ, 1 ⊨ φ`.
pub fn lang_member_mtl(w: &TimedWord, f: &Mtl) -> bool {
    MtlEvaluator::new(w).eval(1, f)
}

/// Memoizing evaluator bound to one word. Memo entries are keyed by node address, so it is safe
/// to reuse across many queries as long as the queried formulas stay alive.
pub struct MtlEvaluator<'w> {
    word: &'w TimedWord,
    memo: HashMap<(usize, usize), bool>,
}

impl<'w> MtlEvaluator<'w> {
    pub fn new(word: &'w TimedWord) -> Self {
        MtlEvaluator {
            word,
            memo: HashMap::new(),
        }
    }

    /// Truth of `f` at every position, 1-based positions mapped to indices 0..len.
    pub fn sat(&mut self, f: &Mtl) -> Vec<bool> {
        self.word.positions().map(|i| self.eval(i, f)).collect()
    }

    pub fn eval(&mut self, i: usize, f: &Mtl) -> bool {
        let key = (f as *const Mtl as usize, i);
        if let Some(&v) = self.memo.get(&key) {
            return v;
        }
        let v = match &f.kind {
            MtlKind::Top => true,
            MtlKind::Atom(a) => self.word.letter(i) == a,
            MtlKind::Not(g) => !self.eval(i, g),
            MtlKind::And(l, r) => self.eval(i, l) && self.eval(i, r),
            MtlKind::Or(l, r) => self.eval(i, l) || self.eval(i, r),
            MtlKind::Until(iv, l, r) => self.until(i, iv, Some(l), r),
            MtlKind::Future(iv, r) => self.until(i, iv, None, r),
            MtlKind::Since(iv, l, r) => self.since(i, iv, Some(l), r),
            MtlKind::Past(iv, r) => self.since(i, iv, None, r),
        };
        self.memo.insert(key, v);
        v
    }

    /// `∃ j > i. τj − τi ∈ I ∧ ρ,j ⊨ r ∧ ∀ i<k<j. ρ,k ⊨ l` (with `l = ⊤` when absent).
    fn until(&mut self, i: usize, iv: &Interval, l: Option<&std::sync::Arc<Mtl>>, r: &Mtl) -> bool {
        let ti = self.word.time(i).clone();
        for j in i + 1..=self.word.len() {
            let d = self.word.time(j) - &ti;
            if iv.contains(&d) && self.eval(j, r) {
                return true;
            }
            if let Some(l) = l {
                if !self.eval(j, l) {
                    return false;
                }
            }
        }
        false
    }

    fn since(&mut self, i: usize, iv: &Interval, l: Option<&std::sync::Arc<Mtl>>, r: &Mtl) -> bool {
        let ti = self.word.time(i).clone();
        for j in (1..i).rev() {
            let d = &ti - self.word.time(j);
            if iv.contains(&d) && self.eval(j, r) {
                return true;
            }
            if let Some(l) = l {
                if !self.eval(j, l) {
                    return false;
                }
            }
        }
        false
    }
}
