//! Depth-bounded logical equivalence computed semantically, independent of the game solver.
//!
//! Positions of both words are pooled. Level `d` groups positions that satisfy the same formulas
//! of modal depth at most `d` over the menu. Level 0 groups by letter. A group at level `d` is
//! split by what its members can reach: for every interval, direction and target group, the
//! minimal sets of groups that must be crossed on the way (or just reachability for the unary
//! variant). A formula that holds exactly on a group is rebuilt from the refinement history, so
//! every inequivalence comes with a checked witness.

use std::collections::HashMap;
use std::sync::Arc;

use super::menu::IntervalMenu;
use super::solver::{GameError, Variant};
use crate::logic::Mtl;
use crate::semantics::MtlEvaluator;
use crate::word::TimedWord;

pub const MAX_JOINT_POSITIONS: usize = 128;

#[derive(Debug, Clone)]
pub struct SignatureResult {
    pub equivalent: bool,
    /// Smallest depth at which the two positions come apart.
    pub split_depth: Option<usize>,
    /// Formula of depth `split_depth` true at the first position and false at the second.
    pub witness: Option<Arc<Mtl>>,
    /// Truth values of the witness over `w0` followed by `w1`.
    pub distinguishing_vector: Option<Vec<bool>>,
    /// Number of groups at each level that was computed.
    pub groups_per_level: Vec<usize>,
}

/// `(interval, past?, target group)` with the crossing antichain or, for the unary variant, an
/// empty list.
type Entry = (usize, bool, usize, Vec<u128>);

struct Refinement<'a> {
    words: [&'a TimedWord; 2],
    menu: &'a IntervalMenu,
    variant: Variant,
    /// `groups[d][v]`: group of joint position `v` at level `d`.
    groups: Vec<Vec<usize>>,
    /// `keys[d][v]` for `d ≥ 1`: what distinguished `v` at level `d`, in level `d-1` groups.
    keys: Vec<Vec<Vec<Entry>>>,
}

impl<'a> Refinement<'a> {
    fn joint(&self) -> Vec<(usize, usize)> {
        (0..2)
            .flat_map(|w| self.words[w].positions().map(move |p| (w, p)))
            .collect()
    }

    fn index(&self, word: usize, pos: usize) -> usize {
        if word == 0 {
            pos - 1
        } else {
            self.words[0].len() + pos - 1
        }
    }

    fn key(&self, level: &[usize], word: usize, pos: usize) -> Vec<Entry> {
        let w = self.words[word];
        let mut out = Vec::new();
        for (iv_idx, iv) in self.menu.intervals.iter().enumerate() {
            for past in [false, true] {
                let targets: Vec<usize> = if past {
                    (1..pos).rev().collect()
                } else {
                    (pos + 1..=w.len()).collect()
                };
                let mut crossed = 0u128;
                let mut found: HashMap<usize, Vec<u128>> = HashMap::new();
                for j in targets {
                    let diff = if past {
                        w.time(pos) - w.time(j)
                    } else {
                        w.time(j) - w.time(pos)
                    };
                    let g = level[self.index(word, j)];
                    if iv.contains(&diff) {
                        let sets = found.entry(g).or_default();
                        if self.variant == Variant::Us {
                            sets.push(crossed);
                        }
                    }
                    crossed |= 1u128 << g;
                }
                for (g, sets) in found {
                    out.push((iv_idx, past, g, minimal_sets(sets)));
                }
            }
        }
        out.sort();
        out
    }

    /// Computes levels up to `depth`, stopping early once the grouping is stable.
    fn run(&mut self, depth: usize) {
        let joint = self.joint();
        let mut letters = HashMap::new();
        let base: Vec<usize> = joint
            .iter()
            .map(|&(w, p)| {
                let n = letters.len();
                *letters.entry(self.words[w].letter(p).clone()).or_insert(n)
            })
            .collect();
        self.groups.push(base);
        self.keys.push(Vec::new());
        for _ in 0..depth {
            let prev = self.groups.last().expect("base level").clone();
            let keys: Vec<Vec<Entry>> = joint.iter().map(|&(w, p)| self.key(&prev, w, p)).collect();
            let mut ids: HashMap<(usize, &Vec<Entry>), usize> = HashMap::new();
            let next: Vec<usize> = (0..joint.len())
                .map(|v| {
                    let n = ids.len();
                    *ids.entry((prev[v], &keys[v])).or_insert(n)
                })
                .collect();
            let stable = ids.len() == count(&prev);
            self.groups.push(next);
            self.keys.push(keys);
            if stable {
                break;
            }
        }
    }

    fn group_at(&self, depth: usize, v: usize) -> usize {
        let d = depth.min(self.groups.len() - 1);
        self.groups[d][v]
    }

    fn representative(&self, d: usize, g: usize) -> usize {
        self.groups[d]
            .iter()
            .position(|&x| x == g)
            .expect("group is non-empty")
    }

    /// A formula of depth `d` true exactly on group `g` of level `d`.
    fn characteristic(
        &self,
        d: usize,
        g: usize,
        memo: &mut HashMap<(usize, usize), Arc<Mtl>>,
    ) -> Arc<Mtl> {
        if let Some(f) = memo.get(&(d, g)) {
            return f.clone();
        }
        let rep = self.representative(d, g);
        let f = if d == 0 {
            let (w, p) = self.joint()[rep];
            Arc::new(Mtl::atom(self.words[w].letter(p).clone()))
        } else {
            let parent = self.groups[d - 1][rep];
            let parent_f = self.characteristic(d - 1, parent, memo);
            let mut siblings: Vec<usize> = (0..self.groups[d].len())
                .filter(|&v| self.groups[d - 1][v] == parent && self.groups[d][v] != g)
                .map(|v| self.groups[d][v])
                .collect();
            siblings.sort_unstable();
            siblings.dedup();
            let mut parts = vec![parent_f];
            for s in siblings {
                let other = self.representative(d, s);
                parts.push(self.separator(d, rep, other, memo));
            }
            if parts.len() == 1 {
                parts.pop().expect("one part")
            } else {
                Mtl::conj(parts)
            }
        };
        memo.insert((d, g), f.clone());
        f
    }

    /// A formula of depth `d` true at joint position `a` and false at `b`, where both share a
    /// level `d-1` group but have different keys at level `d`.
    fn separator(
        &self,
        d: usize,
        a: usize,
        b: usize,
        memo: &mut HashMap<(usize, usize), Arc<Mtl>>,
    ) -> Arc<Mtl> {
        let (ka, kb) = (&self.keys[d][a], &self.keys[d][b]);
        let lookup = |k: &Vec<Entry>, idx: (usize, bool, usize)| -> Option<Vec<u128>> {
            k.iter()
                .find(|e| (e.0, e.1, e.2) == idx)
                .map(|e| e.3.clone())
        };
        let mut slots: Vec<(usize, bool, usize)> = ka
            .iter()
            .chain(kb.iter())
            .map(|e| (e.0, e.1, e.2))
            .collect();
        slots.sort_unstable();
        slots.dedup();
        for slot in slots {
            let (sa, sb) = (lookup(ka, slot), lookup(kb, slot));
            if sa == sb {
                continue;
            }
            let (iv_idx, past, target) = slot;
            let iv = self.menu.intervals[iv_idx];
            let target_f = self.characteristic(d - 1, target, memo);
            if self.variant == Variant::Fp {
                let f = Arc::new(if past {
                    Mtl::past(iv, target_f)
                } else {
                    Mtl::future(iv, target_f)
                });
                return if sa.is_some() {
                    f
                } else {
                    Arc::new(Mtl::not(f))
                };
            }
            let (sa, sb) = (sa.unwrap_or_default(), sb.unwrap_or_default());
            let uncovered = |xs: &[u128], ys: &[u128]| {
                xs.iter()
                    .copied()
                    .find(|&x| !ys.iter().any(|&y| y & !x == 0))
            };
            let (crossing, positive) = match uncovered(&sa, &sb) {
                Some(s) => (s, true),
                None => (uncovered(&sb, &sa).expect("antichains differ"), false),
            };
            let path = Mtl::disj(
                (0..128)
                    .filter(|&g| crossing & (1u128 << g) != 0)
                    .map(|g| self.characteristic(d - 1, g, memo)),
            );
            let f = Arc::new(if past {
                Mtl::since(iv, path, target_f)
            } else {
                Mtl::until(iv, path, target_f)
            });
            return if positive { f } else { Arc::new(Mtl::not(f)) };
        }
        unreachable!("positions with equal keys share a group")
    }
}

fn count(level: &[usize]) -> usize {
    level.iter().max().map_or(0, |m| m + 1)
}

fn minimal_sets(mut sets: Vec<u128>) -> Vec<u128> {
    sets.sort_by_key(|s| (s.count_ones(), *s));
    sets.dedup();
    let mut kept: Vec<u128> = Vec::new();
    for s in sets {
        if !kept.iter().any(|&k| k & !s == 0) {
            kept.push(s);
        }
    }
    kept.sort_unstable();
    kept
}

/// Whether position `i0` of `w0` and `i1` of `w1` satisfy the same formulas of modal depth at
/// most `depth` whose intervals come from `menu` (only `F`/`P` for the unary variant).
pub fn signature_equivalence(
    w0: &TimedWord,
    w1: &TimedWord,
    i0: usize,
    i1: usize,
    depth: usize,
    menu: &IntervalMenu,
    variant: Variant,
) -> Result<SignatureResult, GameError> {
    let positions = w0.len() + w1.len();
    if positions > MAX_JOINT_POSITIONS {
        return Err(GameError::TooLarge {
            positions,
            cap: MAX_JOINT_POSITIONS,
        });
    }
    for (word, (w, p)) in [(w0, i0), (w1, i1)].into_iter().enumerate() {
        if p == 0 || p > w.len() {
            return Err(GameError::Position {
                word,
                position: p,
                len: w.len(),
            });
        }
    }
    let mut r = Refinement {
        words: [w0, w1],
        menu,
        variant,
        groups: Vec::new(),
        keys: Vec::new(),
    };
    r.run(depth);
    let (a, b) = (r.index(0, i0), r.index(1, i1));
    let groups_per_level = r.groups.iter().map(|l| count(l)).collect();
    if r.group_at(depth, a) == r.group_at(depth, b) {
        return Ok(SignatureResult {
            equivalent: true,
            split_depth: None,
            witness: None,
            distinguishing_vector: None,
            groups_per_level,
        });
    }
    let split = (0..r.groups.len())
        .find(|&d| r.groups[d][a] != r.groups[d][b])
        .expect("positions are split at some level");
    let mut memo = HashMap::new();
    let witness = r.characteristic(split, r.groups[split][a], &mut memo);
    let mut e0 = MtlEvaluator::new(w0);
    let mut e1 = MtlEvaluator::new(w1);
    if !(e0.eval(i0, &witness) && !e1.eval(i1, &witness)) {
        return Err(GameError::WitnessInvalid(witness.to_string()));
    }
    let mut vector = e0.sat(&witness);
    vector.extend(e1.sat(&witness));
    Ok(SignatureResult {
        equivalent: false,
        split_depth: Some(split),
        witness: Some(witness),
        distinguishing_vector: Some(vector),
        groups_per_level,
    })
}
