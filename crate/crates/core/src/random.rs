//! Seeded samplers for words and formulas used by the randomized checks.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::logic::{
    CmpOp, Guard, GuardAtom, GuardedEvent, Interval, Mtl, Orientation, Tptl, TptlKind, Ttl, Var,
};
use crate::rational::ratio;
use crate::word::{Event, Letter, TimedWord};

pub fn letters(names: &[&str]) -> Vec<Letter> {
    names
        .iter()
        .map(|n| Letter::new(n).expect("valid letter"))
        .collect()
}

/// Random words on a grid of `1/denominator` time steps.
#[derive(Debug, Clone)]
pub struct WordSampler {
    pub min_len: usize,
    pub max_len: usize,
    pub alphabet: Vec<Letter>,
    /// Timestamps lie in `[0, max_time]`.
    pub max_time: u64,
    pub denominator: i64,
    pub anchored: bool,
    pub strict: bool,
}

impl WordSampler {
    pub fn new(max_len: usize, alphabet: Vec<Letter>, max_time: u64) -> Self {
        WordSampler {
            min_len: 1,
            max_len,
            alphabet,
            max_time,
            denominator: 2,
            anchored: true,
            strict: false,
        }
    }

    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> TimedWord {
        let len = rng.gen_range(self.min_len..=self.max_len);
        let steps = self.max_time as i64 * self.denominator;
        let mut ticks: Vec<i64> = if self.strict {
            let mut all: Vec<i64> = (0..=steps).collect();
            all.shuffle(rng);
            all.truncate(len);
            all
        } else {
            (0..len).map(|_| rng.gen_range(0..=steps)).collect()
        };
        ticks.sort_unstable();
        if self.anchored && !ticks.is_empty() {
            ticks[0] = 0;
        }
        let events = ticks
            .into_iter()
            .map(|t| Event {
                letter: self
                    .alphabet
                    .choose(rng)
                    .expect("non-empty alphabet")
                    .clone(),
                time: ratio(t, self.denominator),
            })
            .collect();
        TimedWord::new(events).expect("sampled word is monotone")
    }
}

/// Every timestamp 0.
pub fn gen_instantaneous(word: &[Letter]) -> TimedWord {
    let events = word
        .iter()
        .map(|l| Event {
            letter: l.clone(),
            time: ratio(0, 1),
        })
        .collect();
    TimedWord::new(events).expect("non-empty word")
}

/// Timestamps `i/(n+1)`: distinct, increasing and inside `(0,1)`.
pub fn gen_unitary(word: &[Letter]) -> TimedWord {
    let n = word.len() as i64;
    let events = word
        .iter()
        .enumerate()
        .map(|(i, l)| Event {
            letter: l.clone(),
            time: ratio(i as i64 + 1, n + 1),
        })
        .collect();
    TimedWord::new(events).expect("non-empty word")
}

pub fn random_letters<R: Rng + ?Sized>(
    rng: &mut R,
    len: usize,
    alphabet: &[Letter],
) -> Vec<Letter> {
    (0..len)
        .map(|_| alphabet.choose(rng).expect("non-empty alphabet").clone())
        .collect()
}

/// Unitary word with random distinct timestamps in `(0,1)`.
pub fn random_unitary<R: Rng + ?Sized>(rng: &mut R, len: usize, alphabet: &[Letter]) -> TimedWord {
    let den = 4 * len as i64 + 4;
    let mut ticks: Vec<i64> = (1..den).collect();
    ticks.shuffle(rng);
    ticks.truncate(len);
    ticks.sort_unstable();
    let events = ticks
        .into_iter()
        .map(|t| Event {
            letter: alphabet.choose(rng).expect("non-empty alphabet").clone(),
            time: ratio(t, den),
        })
        .collect();
    TimedWord::new(events).expect("non-empty word")
}

pub fn random_interval<R: Rng + ?Sized>(
    rng: &mut R,
    max_const: u64,
    bounded: bool,
    non_punctual: bool,
) -> Interval {
    loop {
        let low = rng.gen_range(0..=max_const);
        let high = if !bounded && rng.gen_bool(0.3) {
            None
        } else {
            Some(rng.gen_range(low..=max_const))
        };
        let lo_open = rng.gen_bool(0.5);
        let hi_open = high.is_none() || rng.gen_bool(0.5);
        if let Ok(i) = Interval::new(low, high, lo_open, hi_open) {
            if !(non_punctual && i.is_singular()) {
                return i;
            }
        }
    }
}

/// Random MTL formulas of bounded modal depth.
#[derive(Debug, Clone)]
pub struct MtlSampler {
    pub alphabet: Vec<Letter>,
    pub max_depth: usize,
    pub max_const: u64,
    /// Only `F`/`P` modalities.
    pub unary: bool,
}

impl MtlSampler {
    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> Mtl {
        self.gen(rng, self.max_depth, 4)
    }

    fn gen<R: Rng + ?Sized>(&self, rng: &mut R, depth: usize, size: usize) -> Mtl {
        let leaf = |rng: &mut R| {
            if rng.gen_bool(0.15) {
                Mtl::top()
            } else {
                Mtl::atom(self.alphabet.choose(rng).expect("letters").clone())
            }
        };
        if size == 0 {
            return leaf(rng);
        }
        let choice = rng.gen_range(0..10);
        match choice {
            0 | 1 => leaf(rng),
            2 => Mtl::not(self.gen(rng, depth, size - 1)),
            3 => Mtl::and(
                self.gen(rng, depth, size / 2),
                self.gen(rng, depth, size / 2),
            ),
            4 => Mtl::or(
                self.gen(rng, depth, size / 2),
                self.gen(rng, depth, size / 2),
            ),
            _ if depth == 0 => leaf(rng),
            _ => {
                let iv = random_interval(rng, self.max_const, false, false);
                let past = rng.gen_bool(0.5);
                let inner = self.gen(rng, depth - 1, size - 1);
                if self.unary || rng.gen_bool(0.4) {
                    if past {
                        Mtl::past(iv, inner)
                    } else {
                        Mtl::future(iv, inner)
                    }
                } else {
                    let left = self.gen(rng, depth - 1, size / 2);
                    if past {
                        Mtl::since(iv, left, inner)
                    } else {
                        Mtl::until(iv, left, inner)
                    }
                }
            }
        }
    }
}

fn random_guard<R: Rng + ?Sized>(rng: &mut R, vars: &[Var], max_const: u64) -> Guard {
    if vars.is_empty() || rng.gen_bool(0.35) {
        return Guard::tt();
    }
    let n = rng.gen_range(1..=2);
    let ops = [CmpOp::Lt, CmpOp::Le, CmpOp::Gt, CmpOp::Ge, CmpOp::Eq];
    let atoms = (0..n)
        .map(|_| {
            let orientation = if rng.gen_bool(0.5) {
                Orientation::TimeMinusVar
            } else {
                Orientation::VarMinusTime
            };
            GuardAtom::new(
                orientation,
                vars.choose(rng).expect("variables").clone(),
                *ops.choose(rng).expect("ops"),
                rng.gen_range(0..=max_const as i64),
            )
        })
        .collect();
    Guard { atoms }
}

/// Random TTL formulas.
#[derive(Debug, Clone)]
pub struct TtlSampler {
    pub alphabet: Vec<Letter>,
    pub max_depth: usize,
    pub max_const: u64,
    pub vars: Vec<Var>,
    /// Each variable is frozen at most once in the whole formula.
    pub no_reuse: bool,
    /// Upper bound on the number of modal nodes.
    pub max_modalities: Option<usize>,
    /// Guards may mention variables that no enclosing freeze binds (read as 0).
    pub free_guards: bool,
}

impl TtlSampler {
    pub fn new(alphabet: Vec<Letter>, max_depth: usize, max_const: u64, var_count: usize) -> Self {
        TtlSampler {
            alphabet,
            max_depth,
            max_const,
            vars: (0..var_count)
                .map(|i| Var::new(["x", "y", "z", "u", "v", "w"][i % 6]).expect("variable name"))
                .collect(),
            no_reuse: false,
            max_modalities: None,
            free_guards: true,
        }
    }

    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> Ttl {
        let mut state = TtlState {
            modalities: self.max_modalities.unwrap_or(usize::MAX),
            unused: self.vars.clone(),
        };
        self.gen(rng, self.max_depth, 5, &[], &mut state)
    }

    fn event<R: Rng + ?Sized>(&self, rng: &mut R, bound: &[Var]) -> GuardedEvent {
        let scope: &[Var] = if self.free_guards { &self.vars } else { bound };
        GuardedEvent::new(
            self.alphabet.choose(rng).expect("letters").clone(),
            random_guard(rng, scope, self.max_const),
        )
    }

    fn gen<R: Rng + ?Sized>(
        &self,
        rng: &mut R,
        depth: usize,
        size: usize,
        bound: &[Var],
        st: &mut TtlState,
    ) -> Ttl {
        let leaf = |rng: &mut R| {
            if rng.gen_bool(0.2) {
                Ttl::top()
            } else {
                Ttl::event(self.event(rng, bound))
            }
        };
        if size == 0 {
            return leaf(rng);
        }
        match rng.gen_range(0..12) {
            0 => leaf(rng),
            1 => Ttl::not(self.gen(rng, depth, size - 1, bound, st)),
            2 => Ttl::and(
                self.gen(rng, depth, size / 2, bound, st),
                self.gen(rng, depth, size / 2, bound, st),
            ),
            3 => Ttl::or(
                self.gen(rng, depth, size / 2, bound, st),
                self.gen(rng, depth, size / 2, bound, st),
            ),
            4 | 5 => {
                let x = if self.no_reuse {
                    if st.unused.is_empty() {
                        return leaf(rng);
                    }
                    let i = rng.gen_range(0..st.unused.len());
                    st.unused.remove(i)
                } else {
                    match self.vars.choose(rng) {
                        Some(x) => x.clone(),
                        None => return leaf(rng),
                    }
                };
                let mut inner_bound = bound.to_vec();
                inner_bound.push(x.clone());
                Ttl::freeze(x, self.gen(rng, depth, size - 1, &inner_bound, st))
            }
            _ if depth == 0 || st.modalities == 0 => leaf(rng),
            k => {
                st.modalities -= 1;
                let inner =
                    |rng: &mut R, st: &mut TtlState| self.gen(rng, depth - 1, size - 1, bound, st);
                match k {
                    6 => Ttl::sp(inner(rng, st)),
                    7 => Ttl::ep(inner(rng, st)),
                    8 | 9 => {
                        let theta = self.event(rng, bound);
                        Ttl::next(theta, inner(rng, st))
                    }
                    _ => {
                        let theta = self.event(rng, bound);
                        Ttl::prev(theta, inner(rng, st))
                    }
                }
            }
        }
    }
}

struct TtlState {
    modalities: usize,
    unused: Vec<Var>,
}

/// Random TPTL formulas with untimed modalities and freeze guards.
#[derive(Debug, Clone)]
pub struct TptlSampler {
    pub alphabet: Vec<Letter>,
    pub max_depth: usize,
    pub max_const: u64,
    pub vars: Vec<Var>,
}

impl TptlSampler {
    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> Tptl {
        self.gen(rng, self.max_depth, 4)
    }

    fn gen<R: Rng + ?Sized>(&self, rng: &mut R, depth: usize, size: usize) -> Tptl {
        let leaf = |rng: &mut R| match rng.gen_range(0..6) {
            0 => Tptl::top(),
            1 => Tptl::constraint(random_guard(rng, &self.vars, self.max_const)),
            _ => Tptl::new(TptlKind::Atom(
                self.alphabet.choose(rng).expect("letters").clone(),
            )),
        };
        if size == 0 {
            return leaf(rng);
        }
        match rng.gen_range(0..11) {
            0 => leaf(rng),
            1 => Tptl::not(self.gen(rng, depth, size - 1)),
            2 => Tptl::and(
                self.gen(rng, depth, size / 2),
                self.gen(rng, depth, size / 2),
            ),
            3 => Tptl::or(
                self.gen(rng, depth, size / 2),
                self.gen(rng, depth, size / 2),
            ),
            4 => match self.vars.choose(rng) {
                Some(x) => Tptl::freeze(x.clone(), self.gen(rng, depth, size - 1)),
                None => leaf(rng),
            },
            _ if depth == 0 => leaf(rng),
            5 => Tptl::future(self.gen(rng, depth - 1, size - 1)),
            6 => Tptl::past(self.gen(rng, depth - 1, size - 1)),
            7 | 8 => Tptl::until(
                self.gen(rng, depth - 1, size / 2),
                self.gen(rng, depth - 1, size / 2),
            ),
            _ => Tptl::since(
                self.gen(rng, depth - 1, size / 2),
                self.gen(rng, depth - 1, size / 2),
            ),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::logic::modal_depth;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn instantaneous_and_unitary_examples() {
        let w = gen_instantaneous(&letters(&["a", "b"]));
        assert_eq!(w.serialize(), "a 0/1\nb 0/1");
        let u = gen_unitary(&letters(&["a", "a", "a"]));
        assert_eq!(u.serialize(), "a 1/4\na 1/2\na 3/4");
    }

    #[test]
    fn samplers_respect_bounds() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let ws = WordSampler::new(6, letters(&["a", "b"]), 3);
        let ms = MtlSampler {
            alphabet: letters(&["a", "b"]),
            max_depth: 2,
            max_const: 2,
            unary: false,
        };
        let mut ts = TtlSampler::new(letters(&["a", "b"]), 3, 3, 2);
        ts.no_reuse = true;
        ts.max_modalities = Some(2);
        for _ in 0..200 {
            let w = ws.sample(&mut rng);
            assert!(w.len() <= 6 && w.anchored_zero());
            assert!(modal_depth(&ms.sample(&mut rng)) <= 2);
            let t = ts.sample(&mut rng);
            assert!(crate::logic::modal_count(&t) <= 2);
            assert!(random_unitary(&mut rng, 4, &letters(&["a"])).len() == 4);
        }
    }
}
