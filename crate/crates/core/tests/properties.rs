use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use timed_logic::games::{
    build_menu, duplicator_wins, solve_with, validate_trace, GameSettings, Player, Variant,
};
use timed_logic::logic::{
    eval_guard, normalize_guard, parse_mtl, parse_tptl, parse_ttl, truncate_constants, CmpOp,
    Guard, GuardAtom, Interval, IntervalFamily, Mtl, Orientation, Valuation, Var,
};
use timed_logic::random::{letters, MtlSampler, TptlSampler, TtlSampler};
use timed_logic::rational::{int, ratio, Rational};
use timed_logic::semantics::{
    eval_mtl, eval_tptl, eval_ttl, next_match, sat_mtl, sat_tptl, sat_ttl, MtlEvaluator,
};
use timed_logic::word::{parse_word, Event, Letter, TimedWord};

/// Words over {a, b} with steps in multiples of 1/2 or 1/3, optionally starting at 0.
fn word(max_len: usize, anchored: bool) -> impl Strategy<Value = TimedWord> {
    (
        prop::collection::vec((0..2usize, 0..=3i64), 1..=max_len),
        prop_oneof![Just(2i64), Just(3i64)],
        0..=2i64,
    )
        .prop_map(move |(steps, den, offset)| {
            let names = letters(&["a", "b"]);
            let mut t = if anchored { int(0) } else { ratio(offset, den) };
            let events = steps
                .iter()
                .enumerate()
                .map(|(i, &(l, step))| {
                    if i > 0 {
                        t += ratio(step, den);
                    }
                    Event {
                        letter: names[l].clone(),
                        time: t.clone(),
                    }
                })
                .collect();
            TimedWord::new(events).unwrap()
        })
}

fn mtl_formula(max_depth: usize, max_const: u64) -> impl Strategy<Value = Mtl> {
    any::<u64>().prop_map(move |seed| {
        MtlSampler {
            alphabet: letters(&["a", "b"]),
            max_depth,
            max_const,
            unary: false,
        }
        .sample(&mut ChaCha8Rng::seed_from_u64(seed))
    })
}

fn small_menu() -> impl Strategy<Value = IntervalFamily> {
    prop_oneof![
        Just(IntervalFamily::Int),
        Just(IntervalFamily::ExtInt),
        Just(IntervalFamily::BInt),
        Just(IntervalFamily::IntK(1)),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn words_survive_serialization(w in word(8, false)) {
        prop_assert_eq!(parse_word(&w.serialize()).unwrap(), w);
    }

    #[test]
    fn mtl_print_parse_round_trip(f in mtl_formula(3, 3)) {
        let printed = f.to_string();
        let back = parse_mtl(&printed).unwrap();
        prop_assert_eq!(&back, &f);
        prop_assert_eq!(back.to_string(), printed);
    }

    #[test]
    fn tptl_print_parse_round_trip(seed in any::<u64>(), w in word(5, true)) {
        let f = TptlSampler {
            alphabet: letters(&["a", "b"]),
            max_depth: 3,
            max_const: 3,
            vars: vec![Var::new("x").unwrap(), Var::new("y").unwrap()],
        }
        .sample(&mut ChaCha8Rng::seed_from_u64(seed));
        // a multi-atom constraint reads back as a conjunction of single atoms,
        // so the text is a fixed point and the meaning is kept
        let back = parse_tptl(&f.to_string()).unwrap();
        prop_assert_eq!(back.to_string(), f.to_string());
        prop_assert_eq!(&parse_tptl(&back.to_string()).unwrap(), &back);
        prop_assert_eq!(sat_tptl(&w, &back), sat_tptl(&w, &f));
    }

    #[test]
    fn ttl_print_parse_round_trip(seed in any::<u64>()) {
        let f = TtlSampler::new(letters(&["a", "b"]), 3, 3, 2)
            .sample(&mut ChaCha8Rng::seed_from_u64(seed));
        let back = parse_ttl(&f.to_string()).unwrap();
        prop_assert_eq!(back.to_string(), f.to_string());
        prop_assert_eq!(back, f);
    }

    #[test]
    fn unary_modalities_are_until_since_with_top(
        w in word(6, false),
        f in mtl_formula(2, 2),
        lo in 0..=2u64,
        span in 0..=2u64,
        unbounded in any::<bool>(),
    ) {
        let iv = if unbounded { Interval::at_least(lo) } else { Interval::closed(lo, lo + span) };
        let pairs = [
            (Mtl::future(iv, f.clone()), Mtl::until(iv, Mtl::top(), f.clone())),
            (Mtl::past(iv, f.clone()), Mtl::since(iv, Mtl::top(), f.clone())),
        ];
        let mut ev = MtlEvaluator::new(&w);
        for (unary, binary) in pairs {
            prop_assert_eq!(ev.sat(&unary), ev.sat(&binary));
        }
    }

    #[test]
    fn normalization_keeps_guard_meaning(
        c in -2..=3i64,
        op in 0..5usize,
        flip in any::<bool>(),
        x_num in 0..=8i64,
        t_num in 0..=8i64,
    ) {
        let ops = [CmpOp::Lt, CmpOp::Le, CmpOp::Eq, CmpOp::Ge, CmpOp::Gt];
        let orientation = if flip { Orientation::VarMinusTime } else { Orientation::TimeMinusVar };
        let x = Var::new("x").unwrap();
        let g = Guard::atom(GuardAtom::new(orientation, x.clone(), ops[op], c));
        let nu = Valuation::initial().with(&x, ratio(x_num, 2));
        let t = ratio(t_num, 2);
        prop_assert_eq!(eval_guard(&nu, &t, &g), eval_guard(&nu, &t, &normalize_guard(&g)));
    }

    #[test]
    fn constants_past_the_last_timestamp_do_not_matter(
        w in word(6, true),
        f in mtl_formula(3, 5),
        extra in 1..=2u64,
    ) {
        let last: u64 = w.last_time().floor().to_integer().try_into().unwrap();
        let k = last + extra;
        let truncated = truncate_constants(&f, k);
        let mut ev = MtlEvaluator::new(&w);
        prop_assert_eq!(ev.sat(&f), ev.sat(&truncated));
    }

    #[test]
    fn recursive_and_table_evaluators_agree(w in word(6, true), seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let nu = Valuation::initial();
        let m = MtlSampler { alphabet: letters(&["a", "b"]), max_depth: 3, max_const: 2, unary: false }
            .sample(&mut rng);
        let table = sat_mtl(&w, &m);
        for i in w.positions() {
            prop_assert_eq!(eval_mtl(&w, i, &m).unwrap(), table[i - 1]);
        }
        let t = TptlSampler {
            alphabet: letters(&["a", "b"]),
            max_depth: 3,
            max_const: 2,
            vars: vec![Var::new("x").unwrap()],
        }
        .sample(&mut rng);
        let table = sat_tptl(&w, &t);
        for i in w.positions() {
            prop_assert_eq!(eval_tptl(&w, i, &nu, &t).unwrap(), table[i - 1], "{} at {}", t, i);
        }
        let g = TtlSampler::new(letters(&["a", "b"]), 3, 2, 2).sample(&mut rng);
        let table = sat_ttl(&w, &g);
        for i in w.positions() {
            prop_assert_eq!(eval_ttl(&w, i, &nu, &g).unwrap(), table[i - 1], "{} at {}", g, i);
        }
    }

    #[test]
    fn until_and_next_are_strict(w in word(6, false), letter in 0..2usize) {
        let name = ["a", "b"][letter];
        let f = Mtl::until(Interval::at_least(0), Mtl::top(), Mtl::letter(name));
        let theta = timed_logic::logic::GuardedEvent::plain(name);
        let nu = Valuation::initial();
        for i in w.positions() {
            let later = (i + 1..=w.len()).any(|j| w.letter(j).as_str() == name);
            prop_assert_eq!(eval_mtl(&w, i, &f).unwrap(), later);
            if let Some(j) = next_match(&w, i, &nu, &theta) {
                prop_assert!(j > i);
            }
        }
    }

    #[test]
    fn intro_formulas_agree(w in word(6, true)) {
        let tptl = parse_tptl("(freeze x (U a (and b (cmp T-x < 2))))").unwrap();
        let mtl = parse_mtl("(U [0,2) a b)").unwrap();
        prop_assert_eq!(
            eval_tptl(&w, 1, &Valuation::initial(), &tptl).unwrap(),
            eval_mtl(&w, 1, &mtl).unwrap()
        );
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(120))]

    #[test]
    fn one_more_round_never_helps_the_duplicator(
        w0 in word(5, false),
        w1 in word(5, false),
        family in small_menu(),
        rounds in 0..=2usize,
        variant in prop_oneof![Just(Variant::Us), Just(Variant::Fp)],
    ) {
        let menu = build_menu(family, 3);
        let more = duplicator_wins(&w0, &w1, 1, 1, rounds + 1, &menu, variant).unwrap();
        let fewer = duplicator_wins(&w0, &w1, 1, 1, rounds, &menu, variant).unwrap();
        if more.winner == Player::Duplicator {
            prop_assert_eq!(fewer.winner, Player::Duplicator);
        }
    }

    #[test]
    fn smaller_menus_never_help_the_spoiler(
        w0 in word(5, false),
        w1 in word(5, false),
        rounds in 1..=2usize,
    ) {
        let pairs = [
            (IntervalFamily::Int, IntervalFamily::ExtInt),
            (IntervalFamily::Int, IntervalFamily::BInt),
            (IntervalFamily::IntK(2), IntervalFamily::IntK(1)),
        ];
        for (big, small) in pairs {
            let wide = duplicator_wins(&w0, &w1, 1, 1, rounds, &build_menu(big, 3), Variant::Us).unwrap();
            let narrow = duplicator_wins(&w0, &w1, 1, 1, rounds, &build_menu(small, 3), Variant::Us).unwrap();
            if wide.winner == Player::Duplicator {
                prop_assert_eq!(narrow.winner, Player::Duplicator, "{} vs {}", big, small);
            }
        }
    }

    #[test]
    fn swapping_the_words_keeps_the_winner(
        w0 in word(5, false),
        w1 in word(5, false),
        family in small_menu(),
        rounds in 0..=2usize,
        variant in prop_oneof![Just(Variant::Us), Just(Variant::Fp)],
    ) {
        let menu = build_menu(family, 3);
        let there = duplicator_wins(&w0, &w1, 1, 1, rounds, &menu, variant).unwrap();
        let back = duplicator_wins(&w1, &w0, 1, 1, rounds, &menu, variant).unwrap();
        prop_assert_eq!(there.winner, back.winner);
    }

    #[test]
    fn principal_variations_replay(
        w0 in word(5, false),
        w1 in word(5, false),
        family in small_menu(),
        rounds in 0..=3usize,
        variant in prop_oneof![Just(Variant::Us), Just(Variant::Fp)],
        start0 in 1..=5usize,
        start1 in 1..=5usize,
    ) {
        let (i0, i1) = (start0.min(w0.len()), start1.min(w1.len()));
        let menu = build_menu(family, 3);
        let settings = GameSettings::new(variant);
        let out = solve_with(&w0, &w1, i0, i1, rounds, &menu, settings).unwrap();
        prop_assert_eq!(out.ending.winner(), out.winner);
        prop_assert!(validate_trace(&w0, &w1, &menu, settings, &out).is_ok());
    }
}

#[test]
fn generated_witness_words_round_trip() {
    use timed_logic::separations::*;
    let mut words: Vec<TimedWord> = Vec::new();
    for (m, k) in [(1, 1), (2, 1), (2, 2), (3, 2)] {
        let c = gen_thm2(m, k).unwrap();
        words.extend([c.a, c.b]);
    }
    for n in 1..=4 {
        let c = gen_thm3(n).unwrap();
        words.extend([c.a, c.b]);
    }
    for (n, k) in [(1, 1), (1, 2), (2, 1)] {
        let c = gen_thm5(n, k).unwrap();
        words.extend([c.a, c.b]);
    }
    for n in 1..=3 {
        let c = gen_ttl_i(n).unwrap();
        words.extend([c.w, c.v]);
    }
    for m in 1..=3 {
        let c = gen_ttl_ii(m).unwrap();
        words.push(c.w);
        words.extend(c.family);
    }
    let ab: Vec<Letter> = letters(&["a", "b", "a"]);
    words.push(gen_instantaneous(&ab));
    words.push(gen_unitary(&ab));
    for w in words {
        assert_eq!(parse_word(&w.serialize()).unwrap(), w);
    }
}

#[test]
fn evaluation_splits_hold_beyond_the_smallest_parameters() {
    use timed_logic::logic::Formula;
    use timed_logic::semantics::{lang_member_mtl, lang_member_tptl};
    use timed_logic::separations::*;
    let holds = |w: &TimedWord, f: &Formula| match f {
        Formula::Mtl(g) => lang_member_mtl(w, g),
        Formula::Tptl(g) => lang_member_tptl(w, g).unwrap(),
        Formula::Ttl(_) => unreachable!(),
    };
    let mut cases = Vec::new();
    for (m, k) in [(1, 1), (2, 1), (2, 2), (3, 3), (5, 1)] {
        cases.push(gen_thm2(m, k).unwrap());
    }
    for n in 1..=6 {
        cases.push(gen_thm3(n).unwrap());
    }
    for (n, k) in [(1, 1), (1, 2), (2, 1), (2, 2), (3, 1)] {
        cases.push(gen_thm5(n, k).unwrap());
    }
    for c in &cases {
        assert_eq!(holds(&c.a, &c.formula), c.a_member, "{}", c.formula);
        assert_eq!(holds(&c.b, &c.formula), !c.a_member, "{}", c.formula);
    }
    for m in 1..=4 {
        let c = gen_ttl_ii(m).unwrap();
        assert!(!lang_member_mtl(&c.w, &c.formula));
        assert!(c.family.iter().all(|v| lang_member_mtl(v, &c.formula)));
    }
}

#[test]
fn rational_differences_against_integer_endpoints_are_exact() {
    // 1/(2n+2)^4 at n = 4 keeps full precision next to an integer boundary
    let eps = ratio(1, 10_000);
    let t: Rational = int(3) + &eps;
    assert!(Interval::open(3, 4).contains(&t));
    assert!(!Interval::open(3, 4).contains(&(t - eps)));
}
