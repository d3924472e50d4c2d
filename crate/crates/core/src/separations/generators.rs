use std::sync::Arc;

use super::SeparationError;
use crate::games::{build_menu, IntervalMenu, Variant};
use crate::logic::{parse_tptl, Formula, Interval, IntervalFamily, Mtl, Tptl};
use crate::rational::{int, is_integer, ratio, Rational};
use crate::word::{Event, Letter, TimedWord};

/// How the game for a word pair is played.
#[derive(Debug, Clone)]
pub struct GameSpec {
    pub rounds: usize,
    pub menu: IntervalMenu,
    pub variant: Variant,
    pub start: (usize, usize),
}

/// A pair of words told apart by `formula` but, for the stated game, not by any formula of the
/// smaller logic.
#[derive(Debug, Clone)]
pub struct PairCase {
    pub a: TimedWord,
    pub b: TimedWord,
    pub formula: Formula,
    /// Whether `a` is in the language; `b` is expected on the other side.
    pub a_member: bool,
    pub game: GameSpec,
    pub notes: Vec<String>,
}

#[derive(Debug, Clone)]
pub struct TtlICase {
    pub n: u64,
    pub w: TimedWord,
    pub v: TimedWord,
    pub formula: Arc<Mtl>,
}

#[derive(Debug, Clone)]
pub struct TtlIICase {
    pub m: u64,
    pub w: TimedWord,
    pub family: Vec<TimedWord>,
    pub formula: Arc<Mtl>,
}

fn at_least(name: &'static str, value: u64, min: u64) -> Result<(), SeparationError> {
    if value < min {
        return Err(SeparationError::Parameter { name, min, value });
    }
    Ok(())
}

fn letter(name: &str) -> Letter {
    Letter::new(name).expect("fixed letter")
}

fn event(name: &str, time: Rational) -> Event {
    Event {
        letter: letter(name),
        time,
    }
}

/// `F_[0,∞)(a ∧ F_(1,2) c)`.
fn a_then_c_within_one_to_two() -> Arc<Mtl> {
    Arc::new(Mtl::future(
        Interval::at_least(0),
        Mtl::and(
            Mtl::letter("a"),
            Mtl::future(Interval::open(1, 2), Mtl::letter("c")),
        ),
    ))
}

/// `F_(0,1)(a ∧ F_[3,3] c)`.
fn a_then_c_exactly_three() -> Arc<Mtl> {
    Arc::new(Mtl::future(
        Interval::open(0, 1),
        Mtl::and(
            Mtl::letter("a"),
            Mtl::future(Interval::point(3), Mtl::letter("c")),
        ),
    ))
}

/// Words with `a` at every integer `0..=n` and one `c`, `n+5/2` in A and `n+3/2` in B. Played
/// over `m` rounds with bounded constants up to `k`, where `n = m·k`.
pub fn gen_thm2(m: u64, k: u64) -> Result<PairCase, SeparationError> {
    at_least("m", m, 1)?;
    at_least("k", k, 1)?;
    let n = (m * k) as i64;
    let word = |c_at: Rational| {
        let mut events: Vec<Event> = (0..=n).map(|i| event("a", int(i))).collect();
        events.push(event("c", c_at));
        TimedWord::new_strict(events).expect("increasing layout")
    };
    Ok(PairCase {
        a: word(int(n) + ratio(5, 2)),
        b: word(int(n) + ratio(3, 2)),
        formula: Formula::Mtl(a_then_c_within_one_to_two()),
        a_member: false,
        game: GameSpec {
            rounds: m as usize,
            menu: build_menu(IntervalFamily::BIntK(k), k),
            variant: Variant::Us,
            start: (1, 1),
        },
        notes: vec![format!("n = m·k = {n}")],
    })
}

/// `2n+1` a's close to 0 and `2n+1` c's a little after 3. In B the middle c sits exactly 3
/// after the middle a. The game uses `n/2` rounds, so the usual instance is `gen_thm3(2r)`.
pub fn gen_thm3(n: u64) -> Result<PairCase, SeparationError> {
    at_least("n", n, 1)?;
    let side = 2 * n as i64 + 2;
    let delta = ratio(1, side * side);
    let eps = ratio(1, side * side * side * side);
    let count = 2 * n as i64 + 1;
    let word = |shift_middle: bool| {
        let mut events: Vec<Event> = (1..=count).map(|i| event("a", int(i) * &delta)).collect();
        for i in 1..=count {
            let mut t = int(3) + int(i) * &delta + &eps;
            if shift_middle && i == n as i64 + 1 {
                t -= &eps;
            }
            events.push(event("c", t));
        }
        TimedWord::new_strict(events).expect("increasing layout")
    };
    let a = word(false);
    let b = word(true);
    let cap = b.last_time().ceil().to_integer();
    let cap = u64::try_from(cap).expect("positive timestamp") + 1;
    Ok(PairCase {
        a,
        b,
        formula: Formula::Mtl(a_then_c_exactly_three()),
        a_member: false,
        game: GameSpec {
            rounds: (n / 2) as usize,
            menu: build_menu(IntervalFamily::ExtInt, cap),
            variant: Variant::Us,
            start: (1, 1),
        },
        notes: vec![
            format!("interval constants capped at {cap}, one above the last timestamp rounded up"),
            "words start after 0; only relative (MTL) checks are run on them".into(),
        ],
    })
}

/// `F p.[a ∧ F(b ∧ T−p∈(1,2) ∧ F(c ∧ T−p∈(1,2)))]`.
pub fn thm5_formula() -> Tptl {
    parse_tptl(
        "(F (freeze p (and a (F (and b (cmp T-p > 1) (cmp T-p < 2) \
         (F (and c (cmp T-p > 1) (cmp T-p < 2))))))))",
    )
    .expect("fixed formula")
}

/// Pairs of positions (1-based, `i < j`) whose timestamps differ by an integer, zero included.
pub fn integral_collisions(w: &TimedWord) -> Vec<(usize, usize)> {
    let times: Vec<&Rational> = w.events().iter().map(|e| &e.time).collect();
    let mut out = Vec::new();
    for i in 0..times.len() {
        for j in i + 1..times.len() {
            if is_integer(&(times[j] - times[i])) {
                out.push((i + 1, j + 1));
            }
        }
    }
    out
}

/// Overlapping a-b-c segments after a quiet gap. In A the middle segment's c is pulled in
/// before `x+2`, so some b and c both fall within `(1,2)` of the same a.
pub fn gen_thm5(n: u64, k: u64) -> Result<PairCase, SeparationError> {
    at_least("n", n, 1)?;
    at_least("k", k, 1)?;
    let segments = 2 * n * (k + 1) + 1;
    let middle = n * (k + 1) + 1;
    let delta = ratio(1, 2 * segments as i64);
    let eps = &delta / int(8);
    let scale = int((segments + 1).next_power_of_two() as i64);

    // Two offset schedules: small positive dyadic nudges, then negative ones at half the size.
    let schedules = [(int(4), int(8)), (int(-8), int(-16))];
    let mut last_clash = (0, 0);
    for (b_div, c_div) in schedules {
        let build = |shift_middle: bool| {
            let mut events = vec![event("a", int(0))];
            for i in 1..=segments {
                let t = int(k as i64 + 1) + &delta / int(2) + int(i as i64 - 1) * (int(1) - &delta);
                let nudge_b = &eps * int(i as i64) / (&b_div * &scale);
                let nudge_c = &eps * int(i as i64) / (&c_div * &scale);
                let b = &t + int(2) - int(3) * &delta / int(2) + nudge_b;
                let c = if shift_middle && i == middle {
                    &t + int(2) - &eps / int(2) + nudge_c
                } else {
                    &t + int(2) + &eps / int(2) + nudge_c
                };
                events.push(event("a", t));
                events.push(event("b", b));
                events.push(event("c", c));
            }
            events.sort_by(|x, y| x.time.cmp(&y.time));
            TimedWord::new(events).expect("non-negative layout")
        };
        let a = build(true);
        let b = build(false);
        let clash = integral_collisions(&a)
            .into_iter()
            .chain(integral_collisions(&b))
            .next();
        if let Some(c) = clash {
            last_clash = c;
            continue;
        }
        return Ok(PairCase {
            a,
            b,
            formula: Formula::Tptl(thm5_formula()),
            a_member: true,
            game: GameSpec {
                rounds: n as usize,
                menu: build_menu(IntervalFamily::IntK(k), k),
                variant: Variant::Us,
                start: (1, 1),
            },
            notes: vec![format!(
                "{segments} segments, delta = 1/{}, epsilon = delta/8, middle segment {middle}",
                2 * segments
            )],
        });
    }
    Err(SeparationError::IntegralCollision(
        last_clash.0,
        last_clash.1,
    ))
}

/// The A/B words of [`gen_thm3`] one size up, as `w` and `v`.
pub fn gen_ttl_i(n: u64) -> Result<TtlICase, SeparationError> {
    at_least("n", n, 1)?;
    let pair = gen_thm3(n + 1)?;
    Ok(TtlICase {
        n,
        w: pair.a,
        v: pair.b,
        formula: a_then_c_exactly_three(),
    })
}

/// Positions of `gen_ttl_i(n).w` that no formula of modal depth `depth` should reach: the
/// a's `depth+2 ..= 2n+4−depth` and the c's `depth+1 ..= 2n+3−depth` (1-based within each block).
pub fn unreached_band(n: u64, depth: u64) -> Vec<usize> {
    let block = 2 * n + 3;
    let a_band = (depth + 2)..=(2 * n + 4).saturating_sub(depth);
    let c_band = (depth + 1)..=(2 * n + 3).saturating_sub(depth);
    a_band
        .map(|i| i as usize)
        .chain(c_band.map(|i| (block + i) as usize))
        .collect()
}

/// `(a,2x)(c,2x+1/2)` for `x = 1..=4m+1`; `v_j` moves the c of pair `2j` later by 7/10, so it
/// lands within `(1,2)` of its a.
pub fn gen_ttl_ii(m: u64) -> Result<TtlIICase, SeparationError> {
    at_least("m", m, 1)?;
    let pairs = 4 * m as i64 + 1;
    let word = |moved: Option<i64>| {
        let mut events = Vec::new();
        for x in 1..=pairs {
            events.push(event("a", int(2 * x)));
            let mut c = int(2 * x) + ratio(1, 2);
            if moved == Some(x) {
                c += ratio(7, 10);
            }
            events.push(event("c", c));
        }
        TimedWord::new_strict(events).expect("increasing layout")
    };
    Ok(TtlIICase {
        m,
        w: word(None),
        family: (1..=2 * m as i64).map(|j| word(Some(2 * j))).collect(),
        formula: a_then_c_within_one_to_two(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::semantics::{lang_member_mtl, lang_member_tptl};
    use crate::word::parse_word;

    fn mtl(f: &Formula) -> &Mtl {
        match f {
            Formula::Mtl(g) => g,
            _ => panic!("expected an MTL formula"),
        }
    }

    #[test]
    fn smallest_integer_spaced_pair() {
        let case = gen_thm2(1, 1).unwrap();
        assert_eq!(case.a, parse_word("a 0\na 1\nc 7/2").unwrap());
        assert_eq!(case.b, parse_word("a 0\na 1\nc 5/2").unwrap());
    }

    #[test]
    fn integer_spaced_split() {
        for (m, k) in [(1, 1), (2, 1), (4, 1), (2, 2)] {
            let case = gen_thm2(m, k).unwrap();
            let f = mtl(&case.formula);
            assert!(lang_member_mtl(&case.b, f));
            assert!(!lang_member_mtl(&case.a, f));
        }
    }

    #[test]
    fn near_zero_block_layout() {
        let case = gen_thm3(1).unwrap();
        assert_eq!(case.a.untime_string(), "aaaccc");
        assert_eq!(case.a.time(2), &ratio(1, 8));
        assert_eq!(case.a.time(4), &(int(3) + ratio(1, 16) + ratio(1, 256)));
        assert_eq!(case.b.time(5), &(int(3) + ratio(1, 8)));
        assert_eq!(case.game.menu.k, 5);
        for n in [1, 2, 4] {
            let case = gen_thm3(n).unwrap();
            let f = mtl(&case.formula);
            assert!(lang_member_mtl(&case.b, f), "n={n}");
            assert!(!lang_member_mtl(&case.a, f), "n={n}");
        }
    }

    #[test]
    fn segment_layout_passes_audit() {
        let case = gen_thm5(1, 1).unwrap();
        assert_eq!(case.a.len(), 1 + 3 * 5);
        assert!(integral_collisions(&case.a).is_empty());
        assert!(integral_collisions(&case.b).is_empty());
        for (n, k) in [(1, 1), (1, 2), (2, 1)] {
            let case = gen_thm5(n, k).unwrap();
            let Formula::Tptl(f) = &case.formula else {
                panic!()
            };
            assert!(lang_member_tptl(&case.a, f).unwrap(), "({n},{k})");
            assert!(!lang_member_tptl(&case.b, f).unwrap(), "({n},{k})");
        }
    }

    #[test]
    fn audit_reports_equal_and_integral_gaps() {
        let w = parse_word("a 0\nb 1/2\nc 1\nc 1").unwrap();
        assert_eq!(integral_collisions(&w), vec![(1, 3), (1, 4), (3, 4)]);
    }

    #[test]
    fn reach_band_shape() {
        let case = gen_ttl_i(1).unwrap();
        assert_eq!(case.w.untime_string(), "aaaaaccccc");
        assert!(!lang_member_mtl(&case.w, &case.formula));
        assert!(lang_member_mtl(&case.v, &case.formula));
        // five a's then five c's; depth 1 leaves a3..a5 and c2..c4 alone
        assert_eq!(unreached_band(1, 1), vec![3, 4, 5, 7, 8, 9]);
    }

    #[test]
    fn paired_family_layout() {
        let case = gen_ttl_ii(1).unwrap();
        assert_eq!(case.w.len(), 10);
        assert_eq!(case.family.len(), 2);
        assert_eq!(
            case.family[0].time(4),
            &(int(4) + ratio(1, 2) + ratio(7, 10))
        );
        assert!(!lang_member_mtl(&case.w, &case.formula));
        for v in &case.family {
            assert!(lang_member_mtl(v, &case.formula));
        }
    }

    #[test]
    fn rejects_zero_parameters() {
        assert!(gen_thm2(0, 1).is_err());
        assert!(gen_thm5(1, 0).is_err());
        assert!(gen_ttl_ii(0).is_err());
    }
}
