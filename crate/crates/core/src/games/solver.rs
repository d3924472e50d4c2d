//! Exhaustive solver for k-round EF games on pairs of timed words.
//!
//! The value of every configuration is tabulated bottom-up by rounds left. Position sets are
//! `u128` bitmasks (bit `p-1` stands for position `p`), which caps words at 128 events.

use std::collections::HashSet;
use std::fmt;

use rayon::prelude::*;
use thiserror::Error;

use super::menu::IntervalMenu;
use crate::logic::Interval;
use crate::word::TimedWord;

pub const MAX_WORD_LEN: usize = 128;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Variant {
    /// Until/since moves with both Part-II options.
    Us,
    /// Only the F-part and P-part exist.
    Fp,
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Variant::Us => "US",
            Variant::Fp => "FP",
        })
    }
}

impl std::str::FromStr for Variant {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_uppercase().as_str() {
            "US" => Ok(Variant::Us),
            "FP" => Ok(Variant::Fp),
            other => Err(format!("unknown variant `{other}` (expected US or FP)")),
        }
    }
}

/// How the U-part treats a Part-I pick right next to the current position.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum AdjacencyRule {
    /// The spoiler wins when its own pick is adjacent and the duplicator's is not. An adjacent
    /// duplicator pick against a distant spoiler pick leaves nothing to challenge in between.
    #[default]
    OneSided,
    /// Adjacency must match on both sides, otherwise the spoiler wins.
    Symmetric,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Player {
    Spoiler,
    Duplicator,
}

impl fmt::Display for Player {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Player::Spoiler => "spoiler",
            Player::Duplicator => "duplicator",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Direction {
    /// `U_I` move (future).
    Future,
    /// `S_I` move (past).
    Past,
}

impl Direction {
    pub fn move_name(self, variant: Variant) -> &'static str {
        match (self, variant) {
            (Direction::Future, Variant::Us) => "U",
            (Direction::Past, Variant::Us) => "S",
            (Direction::Future, Variant::Fp) => "F",
            (Direction::Past, Variant::Fp) => "P",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Part2 {
    /// F-part (P-part): the round ends at the Part-I positions.
    Reach,
    /// U-part (S-part) with both Part-I picks adjacent to the current positions.
    Adjacent,
    /// U-part (S-part): the spoiler picks a position strictly between in the other word and the
    /// duplicator answers strictly between in the spoiler's word, if it can.
    Between {
        spoiler_pos: usize,
        dup_pos: Option<usize>,
    },
    /// Only under [`AdjacencyRule::Symmetric`]: adjacency differs between the two picks.
    AdjacencyMismatch,
}

/// One round of play.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MoveRecord {
    /// 1-based round number.
    pub round: usize,
    /// The word the spoiler plays in.
    pub delta: usize,
    pub direction: Direction,
    pub interval: Interval,
    /// Part-I pick in word `delta`.
    pub spoiler_pos: usize,
    /// Part-I reply in the other word; `None` when no legal reply exists.
    pub dup_pos: Option<usize>,
    pub part2: Option<Part2>,
    /// Configuration `(i0, i1)` after the round, if the game continues.
    pub config_after: Option<(usize, usize)>,
}

impl fmt::Display for MoveRecord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let dir = match self.direction {
            Direction::Future => "future",
            Direction::Past => "past",
        };
        write!(
            f,
            "round {}: spoiler word {} {} {} -> {}",
            self.round, self.delta, dir, self.interval, self.spoiler_pos
        )?;
        match self.dup_pos {
            None => return write!(f, "; duplicator has no reply"),
            Some(d) => write!(f, "; duplicator -> {d}")?,
        }
        match &self.part2 {
            Some(Part2::Reach) => write!(f, "; reach part")?,
            Some(Part2::Adjacent) => write!(f, "; until part, both adjacent")?,
            Some(Part2::Between {
                spoiler_pos,
                dup_pos,
            }) => {
                write!(f, "; until part, spoiler between -> {spoiler_pos}")?;
                match dup_pos {
                    Some(t) => write!(f, ", duplicator between -> {t}")?,
                    None => write!(f, ", duplicator has no reply")?,
                }
            }
            Some(Part2::AdjacencyMismatch) => write!(f, "; adjacency mismatch")?,
            None => {}
        }
        if let Some((a, b)) = self.config_after {
            write!(f, "; now ({a},{b})")?;
        }
        Ok(())
    }
}

/// Why the recorded play stopped.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Ending {
    /// The configuration's letters differ.
    NotIsomorphic {
        config: (usize, usize),
    },
    /// No legal Part-I reply.
    NoReply,
    AdjacencyMismatch,
    /// No reply to the in-between pick.
    NoBetweenReply,
    /// All rounds played, letters agree.
    RoundsExhausted {
        config: (usize, usize),
    },
    /// The spoiler has no available move; the remaining rounds cannot be played.
    SpoilerStuck {
        config: (usize, usize),
    },
}

impl Ending {
    pub fn winner(&self) -> Player {
        match self {
            Ending::RoundsExhausted { .. } | Ending::SpoilerStuck { .. } => Player::Duplicator,
            _ => Player::Spoiler,
        }
    }
}

impl fmt::Display for Ending {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Ending::NotIsomorphic { config: (a, b) } => {
                write!(f, "letters differ at ({a},{b})")
            }
            Ending::NoReply => f.write_str("duplicator has no legal reply"),
            Ending::AdjacencyMismatch => f.write_str("adjacency mismatch"),
            Ending::NoBetweenReply => f.write_str("duplicator cannot answer the in-between pick"),
            Ending::RoundsExhausted { config: (a, b) } => {
                write!(f, "rounds exhausted at ({a},{b}), letters agree")
            }
            Ending::SpoilerStuck { config: (a, b) } => {
                write!(f, "spoiler has no available move at ({a},{b})")
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GameOutcome {
    pub winner: Player,
    pub start: (usize, usize),
    pub rounds: usize,
    pub principal_variation: Vec<MoveRecord>,
    pub ending: Ending,
    pub warnings: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GameError {
    #[error("word {word} has {len} events; the solver handles at most {MAX_WORD_LEN}")]
    TooLong { word: usize, len: usize },
    #[error("position {position} is outside word {word} (length {len})")]
    Position {
        word: usize,
        position: usize,
        len: usize,
    },
    #[error(
        "the words have {positions} positions together; the signature oracle handles at most {cap}"
    )]
    TooLarge { positions: usize, cap: usize },
    #[error("internal error: the extracted witness {0} does not separate the positions")]
    WitnessInvalid(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GameSettings {
    pub variant: Variant,
    pub adjacency: AdjacencyRule,
}

impl GameSettings {
    pub fn new(variant: Variant) -> Self {
        GameSettings {
            variant,
            adjacency: AdjacencyRule::OneSided,
        }
    }
}

/// The spoiler's full choice of Part I.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
struct SpoilerMove {
    delta: usize,
    direction: Direction,
    interval: usize,
    pos: usize,
}

const DIRECTIONS: [Direction; 2] = [Direction::Future, Direction::Past];

fn bits(mut mask: u128) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if mask == 0 {
            return None;
        }
        let b = mask.trailing_zeros() as usize;
        mask &= mask - 1;
        Some(b + 1)
    })
}

fn bit(p: usize) -> u128 {
    1u128 << (p - 1)
}

/// A solved game table for one pair of words, one menu and one rule set.
pub struct GameSolver<'a> {
    words: [&'a TimedWord; 2],
    menu: &'a IntervalMenu,
    settings: GameSettings,
    /// `legal[word][dir][interval][pos - 1]`: the Part-I targets from `pos`.
    legal: [[Vec<Vec<u128>>; 2]; 2],
    /// `tables[r][i0 - 1]`: the `i1` from which the duplicator wins with `r` rounds left.
    tables: Vec<Vec<u128>>,
}

impl<'a> GameSolver<'a> {
    pub fn new(
        w0: &'a TimedWord,
        w1: &'a TimedWord,
        menu: &'a IntervalMenu,
        settings: GameSettings,
        rounds: usize,
    ) -> Result<Self, GameError> {
        for (word, w) in [w0, w1].into_iter().enumerate() {
            if w.len() > MAX_WORD_LEN {
                return Err(GameError::TooLong { word, len: w.len() });
            }
        }
        let words = [w0, w1];
        let legal = [0, 1].map(|wi| DIRECTIONS.map(|dir| legal_sets(words[wi], menu, dir)));
        let mut solver = GameSolver {
            words,
            menu,
            settings,
            legal,
            tables: Vec::new(),
        };
        let base: Vec<u128> = (1..=w0.len())
            .map(|i0| {
                (1..=w1.len())
                    .filter(|&i1| w0.letter(i0) == w1.letter(i1))
                    .fold(0, |m, i1| m | bit(i1))
            })
            .collect();
        solver.tables.push(base);
        for r in 0..rounds {
            let next: Vec<u128> = (1..=w0.len())
                .into_par_iter()
                .map(|i0| {
                    bits(solver.tables[0][i0 - 1])
                        .filter(|&i1| solver.spoiler_move(r, i0, i1).is_none())
                        .fold(0, |m, i1| m | bit(i1))
                })
                .collect();
            solver.tables.push(next);
        }
        Ok(solver)
    }

    pub fn rounds(&self) -> usize {
        self.tables.len() - 1
    }

    pub fn duplicator_wins_at(&self, i0: usize, i1: usize, rounds: usize) -> bool {
        self.tables[rounds][i0 - 1] & bit(i1) != 0
    }

    fn win(&self, r: usize, delta: usize, s: usize, d: usize) -> bool {
        if delta == 0 {
            self.duplicator_wins_at(s, d, r)
        } else {
            self.duplicator_wins_at(d, s, r)
        }
    }

    /// For a Part-I pick `s` in word `delta`, the duplicator replies `d` that win the round
    /// whichever Part-II option the spoiler then takes.
    fn good_replies(&self, r: usize, cfg: [usize; 2], delta: usize, dir: Direction) -> Vec<u128> {
        let other = 1 - delta;
        let (here, there) = (cfg[delta], cfg[other]);
        let (n_here, n_there) = (self.words[delta].len(), self.words[other].len());
        let unary = self.settings.variant == Variant::Fp;
        // bound[d]: the in-between pick in word `other` hardest to answer, as the extreme
        // position in word `delta` the duplicator would need.
        let mut bound = vec![0usize; n_there + 2];
        if !unary {
            match dir {
                Direction::Future => {
                    let mut worst = 0usize;
                    for d in there + 1..=n_there {
                        bound[d] = worst;
                        let first = (here + 1..=n_here)
                            .find(|&t| self.win(r, delta, t, d))
                            .unwrap_or(usize::MAX);
                        worst = worst.max(first);
                    }
                }
                Direction::Past => {
                    let mut worst = usize::MAX;
                    for d in (1..there).rev() {
                        bound[d] = worst;
                        let last = (1..here)
                            .rev()
                            .find(|&t| self.win(r, delta, t, d))
                            .unwrap_or(0);
                        worst = worst.min(last);
                    }
                }
            }
        }
        (1..=n_here)
            .map(|s| {
                let mut mask = 0u128;
                for d in 1..=n_there {
                    if !self.win(r, delta, s, d) {
                        continue;
                    }
                    if !unary {
                        let between_ok = match dir {
                            Direction::Future => d <= there || bound[d] < s,
                            Direction::Past => d >= there || bound[d] > s,
                        };
                        if !between_ok {
                            continue;
                        }
                        if self.settings.adjacency == AdjacencyRule::Symmetric {
                            let (adj_s, adj_d) = match dir {
                                Direction::Future => (s == here + 1, d == there + 1),
                                Direction::Past => (s + 1 == here, d + 1 == there),
                            };
                            if adj_s != adj_d {
                                continue;
                            }
                        }
                    }
                    mask |= bit(d);
                }
                mask
            })
            .collect()
    }

    fn legal_from(&self, word: usize, dir: Direction, interval: usize, pos: usize) -> u128 {
        self.legal[word][dir as usize][interval][pos - 1]
    }

    /// A winning spoiler Part-I choice from `(i0, i1)` with `r + 1` rounds left.
    fn spoiler_move(&self, r: usize, i0: usize, i1: usize) -> Option<SpoilerMove> {
        let cfg = [i0, i1];
        for delta in 0..2 {
            for dir in DIRECTIONS {
                let mut good: Option<Vec<u128>> = None;
                let mut seen = HashSet::new();
                for interval in 0..self.menu.len() {
                    let picks = self.legal_from(delta, dir, interval, cfg[delta]);
                    if picks == 0 {
                        continue;
                    }
                    let replies = self.legal_from(1 - delta, dir, interval, cfg[1 - delta]);
                    if !seen.insert((picks, replies)) {
                        continue;
                    }
                    let good = good.get_or_insert_with(|| self.good_replies(r, cfg, delta, dir));
                    if let Some(pos) = bits(picks).find(|&s| good[s - 1] & replies == 0) {
                        return Some(SpoilerMove {
                            delta,
                            direction: dir,
                            interval,
                            pos,
                        });
                    }
                }
            }
        }
        None
    }

    /// First available spoiler Part-I choice in enumeration order.
    fn any_spoiler_move(&self, i0: usize, i1: usize) -> Option<SpoilerMove> {
        let cfg = [i0, i1];
        for delta in 0..2 {
            for dir in DIRECTIONS {
                for interval in 0..self.menu.len() {
                    let picks = self.legal_from(delta, dir, interval, cfg[delta]);
                    if let Some(pos) = bits(picks).next() {
                        return Some(SpoilerMove {
                            delta,
                            direction: dir,
                            interval,
                            pos,
                        });
                    }
                }
            }
        }
        None
    }

    fn oriented(delta: usize, s: usize, d: usize) -> (usize, usize) {
        if delta == 0 {
            (s, d)
        } else {
            (d, s)
        }
    }

    /// Plays one principal variation from `(i0, i1)` with `rounds` rounds.
    pub fn outcome(&self, i0: usize, i1: usize, rounds: usize) -> Result<GameOutcome, GameError> {
        self.check_positions(i0, i1)?;
        assert!(rounds <= self.rounds(), "table computed for fewer rounds");
        let mut trace = Vec::new();
        let (mut c0, mut c1) = (i0, i1);
        let mut left = rounds;
        let ending = loop {
            if self.words[0].letter(c0) != self.words[1].letter(c1) {
                break Ending::NotIsomorphic { config: (c0, c1) };
            }
            if left == 0 {
                break Ending::RoundsExhausted { config: (c0, c1) };
            }
            let r = left - 1;
            let round = rounds - left + 1;
            let cfg = [c0, c1];
            let spoiler_wins = !self.duplicator_wins_at(c0, c1, left);
            let mv = if spoiler_wins {
                self.spoiler_move(r, c0, c1)
                    .expect("losing configuration has a winning move")
            } else {
                match self.any_spoiler_move(c0, c1) {
                    Some(mv) => mv,
                    None => break Ending::SpoilerStuck { config: (c0, c1) },
                }
            };
            let other = 1 - mv.delta;
            let good = self.good_replies(r, cfg, mv.delta, mv.direction);
            let replies = self.legal_from(other, mv.direction, mv.interval, cfg[other]);
            let mut record = MoveRecord {
                round,
                delta: mv.delta,
                direction: mv.direction,
                interval: self.menu.intervals[mv.interval],
                spoiler_pos: mv.pos,
                dup_pos: None,
                part2: None,
                config_after: None,
            };
            let s = mv.pos;
            let d = if spoiler_wins {
                bits(replies).next()
            } else {
                bits(good[s - 1] & replies).next()
            };
            let Some(d) = d else {
                trace.push(record);
                break Ending::NoReply;
            };
            record.dup_pos = Some(d);
            if !spoiler_wins || !self.win(r, mv.delta, s, d) {
                let next = Self::oriented(mv.delta, s, d);
                record.part2 = Some(Part2::Reach);
                record.config_after = Some(next);
                trace.push(record);
                (c0, c1) = next;
                left -= 1;
                continue;
            }
            // The reach part would lose, so the reply fails the until part.
            let (here, there) = (cfg[mv.delta], cfg[other]);
            if self.settings.adjacency == AdjacencyRule::Symmetric {
                let (adj_s, adj_d) = match mv.direction {
                    Direction::Future => (s == here + 1, d == there + 1),
                    Direction::Past => (s + 1 == here, d + 1 == there),
                };
                if adj_s != adj_d {
                    record.part2 = Some(Part2::AdjacencyMismatch);
                    trace.push(record);
                    break Ending::AdjacencyMismatch;
                }
            }
            let (between_other, between_here): (Vec<usize>, Vec<usize>) = match mv.direction {
                Direction::Future => ((there + 1..d).collect(), (here + 1..s).collect()),
                Direction::Past => ((d + 1..there).collect(), (s + 1..here).collect()),
            };
            let m = between_other
                .iter()
                .copied()
                .find(|&m| !between_here.iter().any(|&t| self.win(r, mv.delta, t, m)))
                .expect("failing until part has an unanswerable in-between pick");
            let Some(&t) = between_here.first() else {
                record.part2 = Some(Part2::Between {
                    spoiler_pos: m,
                    dup_pos: None,
                });
                trace.push(record);
                break Ending::NoBetweenReply;
            };
            let next = Self::oriented(mv.delta, t, m);
            record.part2 = Some(Part2::Between {
                spoiler_pos: m,
                dup_pos: Some(t),
            });
            record.config_after = Some(next);
            trace.push(record);
            (c0, c1) = next;
            left -= 1;
        };
        let mut warnings = Vec::new();
        if let Some(w) = self
            .menu
            .faithfulness_warning(&[self.words[0], self.words[1]])
        {
            warnings.push(w);
        }
        Ok(GameOutcome {
            winner: ending.winner(),
            start: (i0, i1),
            rounds,
            principal_variation: trace,
            ending,
            warnings,
        })
    }

    fn check_positions(&self, i0: usize, i1: usize) -> Result<(), GameError> {
        for (word, p) in [i0, i1].into_iter().enumerate() {
            let len = self.words[word].len();
            if p == 0 || p > len {
                return Err(GameError::Position {
                    word,
                    position: p,
                    len,
                });
            }
        }
        Ok(())
    }

    /// Strategy tree of the winner from `(i0, i1)`, cut off after `node_cap` nodes.
    pub fn strategy_tree(
        &self,
        i0: usize,
        i1: usize,
        rounds: usize,
        node_cap: usize,
    ) -> StrategyNode {
        let mut budget = node_cap;
        self.tree_node(i0, i1, rounds, rounds, &mut budget)
    }

    fn tree_node(
        &self,
        c0: usize,
        c1: usize,
        left: usize,
        total: usize,
        budget: &mut usize,
    ) -> StrategyNode {
        let mut node = StrategyNode {
            config: (c0, c1),
            rounds_left: left,
            duplicator_wins: self.duplicator_wins_at(c0, c1, left),
            branches: Vec::new(),
            truncated: false,
        };
        *budget = budget.saturating_sub(1);
        if left == 0 || self.words[0].letter(c0) != self.words[1].letter(c1) {
            return node;
        }
        let r = left - 1;
        let cfg = [c0, c1];
        let round = total - left + 1;
        let moves: Vec<SpoilerMove> = if node.duplicator_wins {
            let mut all = Vec::new();
            for delta in 0..2 {
                for direction in DIRECTIONS {
                    for interval in 0..self.menu.len() {
                        for pos in bits(self.legal_from(delta, direction, interval, cfg[delta])) {
                            all.push(SpoilerMove {
                                delta,
                                direction,
                                interval,
                                pos,
                            });
                        }
                    }
                }
            }
            all
        } else {
            self.spoiler_move(r, c0, c1).into_iter().collect()
        };
        for mv in moves {
            if *budget == 0 {
                node.truncated = true;
                break;
            }
            let other = 1 - mv.delta;
            let good = self.good_replies(r, cfg, mv.delta, mv.direction);
            let replies = self.legal_from(other, mv.direction, mv.interval, cfg[other]);
            let chosen: Vec<usize> = if node.duplicator_wins {
                bits(good[mv.pos - 1] & replies).take(1).collect()
            } else {
                bits(replies).collect()
            };
            for d in chosen {
                let next = Self::oriented(mv.delta, mv.pos, d);
                let record = MoveRecord {
                    round,
                    delta: mv.delta,
                    direction: mv.direction,
                    interval: self.menu.intervals[mv.interval],
                    spoiler_pos: mv.pos,
                    dup_pos: Some(d),
                    part2: Some(Part2::Reach),
                    config_after: Some(next),
                };
                let child = self.tree_node(next.0, next.1, r, total, budget);
                node.branches.push((record, child));
                if *budget == 0 {
                    node.truncated = true;
                    break;
                }
            }
        }
        node
    }
}

/// Node of a (possibly truncated) strategy tree. Only reach-part continuations are expanded.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StrategyNode {
    pub config: (usize, usize),
    pub rounds_left: usize,
    pub duplicator_wins: bool,
    pub branches: Vec<(MoveRecord, StrategyNode)>,
    pub truncated: bool,
}

impl StrategyNode {
    pub fn size(&self) -> usize {
        1 + self.branches.iter().map(|(_, c)| c.size()).sum::<usize>()
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        self.render_into(0, &mut out);
        out
    }

    fn render_into(&self, depth: usize, out: &mut String) {
        let pad = "  ".repeat(depth);
        out.push_str(&format!(
            "{pad}({},{}) rounds={} {}{}\n",
            self.config.0,
            self.config.1,
            self.rounds_left,
            if self.duplicator_wins {
                "duplicator"
            } else {
                "spoiler"
            },
            if self.truncated { " [truncated]" } else { "" }
        ));
        for (mv, child) in &self.branches {
            out.push_str(&format!("{pad}- {mv}\n"));
            child.render_into(depth + 1, out);
        }
    }
}

fn legal_sets(w: &TimedWord, menu: &IntervalMenu, dir: Direction) -> Vec<Vec<u128>> {
    menu.intervals
        .iter()
        .map(|iv| {
            w.positions()
                .map(|i| {
                    let targets: Box<dyn Iterator<Item = usize>> = match dir {
                        Direction::Future => Box::new(i + 1..=w.len()),
                        Direction::Past => Box::new(1..i),
                    };
                    targets
                        .filter(|&j| {
                            let d = if j > i {
                                w.time(j) - w.time(i)
                            } else {
                                w.time(i) - w.time(j)
                            };
                            iv.contains(&d)
                        })
                        .fold(0u128, |m, j| m | bit(j))
                })
                .collect()
        })
        .collect()
}

/// Solves the `rounds`-round game from `(i0, i1)` and returns one principal variation.
pub fn duplicator_wins(
    w0: &TimedWord,
    w1: &TimedWord,
    i0: usize,
    i1: usize,
    rounds: usize,
    menu: &IntervalMenu,
    variant: Variant,
) -> Result<GameOutcome, GameError> {
    solve_with(w0, w1, i0, i1, rounds, menu, GameSettings::new(variant))
}

pub fn solve_with(
    w0: &TimedWord,
    w1: &TimedWord,
    i0: usize,
    i1: usize,
    rounds: usize,
    menu: &IntervalMenu,
    settings: GameSettings,
) -> Result<GameOutcome, GameError> {
    let solver = GameSolver::new(w0, w1, menu, settings, rounds)?;
    solver.outcome(i0, i1, rounds)
}

/// Replays a principal variation against the move rules; returns a description of the first
/// illegal step, or of a mismatch between the recorded ending and the final position.
pub fn validate_trace(
    w0: &TimedWord,
    w1: &TimedWord,
    menu: &IntervalMenu,
    settings: GameSettings,
    outcome: &GameOutcome,
) -> Result<(), String> {
    let words = [w0, w1];
    let (mut c0, mut c1) = outcome.start;
    let mut left = outcome.rounds;
    let within = |word: usize, from: usize, to: usize, iv: &Interval, dir: Direction| -> bool {
        let w = words[word];
        let forward = match dir {
            Direction::Future => to > from,
            Direction::Past => to < from,
        };
        if !forward || to == 0 || to > w.len() {
            return false;
        }
        let diff = if to > from {
            w.time(to) - w.time(from)
        } else {
            w.time(from) - w.time(to)
        };
        iv.contains(&diff)
    };
    let n = outcome.principal_variation.len();
    for (idx, mv) in outcome.principal_variation.iter().enumerate() {
        let last = idx + 1 == n;
        if w0.letter(c0) != w1.letter(c1) {
            return Err(format!(
                "round {} starts from a non-isomorphic configuration",
                mv.round
            ));
        }
        if left == 0 {
            return Err("more moves than rounds".into());
        }
        if mv.round != outcome.rounds - left + 1 {
            return Err(format!("round number {} out of sequence", mv.round));
        }
        if !menu.contains(&mv.interval) {
            return Err(format!("interval {} not in the menu", mv.interval));
        }
        let cfg = [c0, c1];
        let (delta, other) = (mv.delta, 1 - mv.delta);
        if delta > 1 {
            return Err("word index out of range".into());
        }
        if !within(
            delta,
            cfg[delta],
            mv.spoiler_pos,
            &mv.interval,
            mv.direction,
        ) {
            return Err(format!(
                "round {}: illegal spoiler pick {}",
                mv.round, mv.spoiler_pos
            ));
        }
        let Some(d) = mv.dup_pos else {
            let exists = (1..=words[other].len())
                .any(|j| within(other, cfg[other], j, &mv.interval, mv.direction));
            if exists {
                return Err(format!("round {}: duplicator had a legal reply", mv.round));
            }
            if !last || outcome.ending != Ending::NoReply {
                return Err("missing reply must end the game".into());
            }
            break;
        };
        if !within(other, cfg[other], d, &mv.interval, mv.direction) {
            return Err(format!("round {}: illegal duplicator reply {d}", mv.round));
        }
        let s = mv.spoiler_pos;
        let (here, there) = (cfg[delta], cfg[other]);
        let adjacent = |from: usize, to: usize| from.abs_diff(to) == 1;
        let next = match &mv.part2 {
            Some(Part2::Reach) => GameSolver::oriented(delta, s, d),
            Some(_) if settings.variant == Variant::Fp => {
                return Err("until/since parts do not exist in the unary game".into())
            }
            Some(Part2::Adjacent) => {
                if !(adjacent(here, s) && adjacent(there, d)) {
                    return Err(format!("round {}: picks are not both adjacent", mv.round));
                }
                GameSolver::oriented(delta, s, d)
            }
            Some(Part2::AdjacencyMismatch) => {
                if settings.adjacency != AdjacencyRule::Symmetric
                    || adjacent(here, s) == adjacent(there, d)
                {
                    return Err(format!("round {}: no adjacency mismatch", mv.round));
                }
                if !last || outcome.ending != Ending::AdjacencyMismatch {
                    return Err("adjacency mismatch must end the game".into());
                }
                break;
            }
            Some(Part2::Between {
                spoiler_pos: m,
                dup_pos,
            }) => {
                let strictly = |a: usize, x: usize, b: usize| a.min(b) < x && x < a.max(b);
                if !strictly(there, *m, d) {
                    return Err(format!(
                        "round {}: in-between pick {m} out of range",
                        mv.round
                    ));
                }
                match dup_pos {
                    None => {
                        if (here.min(s) + 1..here.max(s)).next().is_some() {
                            return Err(format!(
                                "round {}: duplicator had an in-between reply",
                                mv.round
                            ));
                        }
                        if !last || outcome.ending != Ending::NoBetweenReply {
                            return Err("missing in-between reply must end the game".into());
                        }
                        break;
                    }
                    Some(t) => {
                        if !strictly(here, *t, s) {
                            return Err(format!(
                                "round {}: in-between reply {t} out of range",
                                mv.round
                            ));
                        }
                        GameSolver::oriented(delta, *t, *m)
                    }
                }
            }
            None => return Err(format!("round {}: missing part two", mv.round)),
        };
        if mv.config_after != Some(next) {
            return Err(format!(
                "round {}: recorded configuration does not follow",
                mv.round
            ));
        }
        (c0, c1) = next;
        left -= 1;
    }
    let ok = match &outcome.ending {
        Ending::NotIsomorphic { config } => *config == (c0, c1) && w0.letter(c0) != w1.letter(c1),
        Ending::RoundsExhausted { config } => {
            *config == (c0, c1) && left == 0 && w0.letter(c0) == w1.letter(c1)
        }
        Ending::SpoilerStuck { config } => {
            *config == (c0, c1)
                && w0.letter(c0) == w1.letter(c1)
                && [0usize, 1].iter().all(|&delta| {
                    let from = [c0, c1][delta];
                    DIRECTIONS.iter().all(|&dir| {
                        menu.intervals.iter().all(|iv| {
                            (1..=words[delta].len()).all(|j| !within(delta, from, j, iv, dir))
                        })
                    })
                })
        }
        Ending::NoReply | Ending::AdjacencyMismatch | Ending::NoBetweenReply => true,
    };
    if !ok {
        return Err(format!(
            "the recorded ending {:?} does not match the final position",
            outcome.ending
        ));
    }
    if outcome.winner != outcome.ending.winner() {
        return Err("recorded winner disagrees with the ending".into());
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::games::menu::build_menu;
    use crate::logic::IntervalFamily;
    use crate::word::parse_word;

    fn word(s: &str) -> TimedWord {
        parse_word(s).unwrap()
    }

    #[test]
    fn identical_words_copycat() {
        let w = word("a 0\nb 1");
        let menu = build_menu(IntervalFamily::Int, 2);
        for variant in [Variant::Us, Variant::Fp] {
            let out = duplicator_wins(&w, &w, 1, 1, 3, &menu, variant).unwrap();
            assert_eq!(out.winner, Player::Duplicator);
            validate_trace(&w, &w, &menu, GameSettings::new(variant), &out).unwrap();
        }
    }

    #[test]
    fn zero_rounds_letter_test() {
        let menu = build_menu(IntervalFamily::Int, 1);
        let out = duplicator_wins(&word("a 0"), &word("b 0"), 1, 1, 0, &menu, Variant::Us).unwrap();
        assert_eq!(out.winner, Player::Spoiler);
        assert!(out.principal_variation.is_empty());
    }

    #[test]
    fn interval_distinguishes() {
        let (w0, w1) = (word("a 0\nc 5/2"), word("a 0\nc 3/2"));
        let menu = build_menu(IntervalFamily::Int, 2);
        let out = duplicator_wins(&w0, &w1, 1, 1, 1, &menu, Variant::Us).unwrap();
        assert_eq!(out.winner, Player::Spoiler);
        validate_trace(&w0, &w1, &menu, GameSettings::new(Variant::Us), &out).unwrap();
    }

    #[test]
    fn adjacency_rules_differ() {
        // No depth-1 formula separates these; the symmetric rule lets the spoiler win anyway.
        let (w0, w1) = (word("a 0\na 0\na 0"), word("a 0\na 0"));
        let menu = IntervalMenu {
            kind: IntervalFamily::IntK(0),
            k: 0,
            intervals: vec![Interval::point(0)],
        };
        let one = solve_with(&w0, &w1, 1, 1, 1, &menu, GameSettings::new(Variant::Us)).unwrap();
        assert_eq!(one.winner, Player::Duplicator);
        let settings = GameSettings {
            variant: Variant::Us,
            adjacency: AdjacencyRule::Symmetric,
        };
        let sym = solve_with(&w0, &w1, 1, 1, 1, &menu, settings).unwrap();
        assert_eq!(sym.winner, Player::Spoiler);
        validate_trace(&w0, &w1, &menu, settings, &sym).unwrap();
    }

    #[test]
    fn until_part_matters() {
        // a U b holds only in the first word; F-moves alone cannot tell the words apart.
        let (w0, w1) = (
            word("a 0\na 1\nb 2\nc 3\nb 4"),
            word("a 0\nc 1\nb 2\na 3\nb 4"),
        );
        let menu = build_menu(IntervalFamily::IntK(0), 0);
        let us = duplicator_wins(&w0, &w1, 1, 1, 2, &menu, Variant::Us).unwrap();
        assert_eq!(us.winner, Player::Spoiler);
        validate_trace(&w0, &w1, &menu, GameSettings::new(Variant::Us), &us).unwrap();
    }

    #[test]
    fn symmetric_in_word_order() {
        let (w0, w1) = (word("a 0\nb 1\na 3/2"), word("a 0\na 1/2\nb 1"));
        let menu = build_menu(IntervalFamily::Int, 2);
        for r in 0..3 {
            let x = duplicator_wins(&w0, &w1, 1, 1, r, &menu, Variant::Us).unwrap();
            let y = duplicator_wins(&w1, &w0, 1, 1, r, &menu, Variant::Us).unwrap();
            assert_eq!(x.winner, y.winner);
        }
    }

    #[test]
    fn strategy_tree_is_capped() {
        let w = word("a 0\nb 1\na 2");
        let menu = build_menu(IntervalFamily::Int, 2);
        let solver = GameSolver::new(&w, &w, &menu, GameSettings::new(Variant::Us), 2).unwrap();
        let tree = solver.strategy_tree(1, 1, 2, 10);
        assert!(tree.size() <= 10);
        assert!(tree.duplicator_wins);
    }
}
