use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use timed_logic::games::{
    build_menu, ef_crosscheck, solve_with, validate_trace, AdjacencyRule, GameSettings, Player,
    Variant,
};
use timed_logic::logic::IntervalFamily;
use timed_logic::random::{letters, TtlSampler, WordSampler};
use timed_logic::ttl2mitl::{
    differential_check, has_zero_nonstrict_guard, node_checks, TranslateOptions,
};

#[test]
fn game_and_signature_agree_on_random_pairs() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let mut sampler = WordSampler::new(5, letters(&["a", "b"]), 2);
    sampler.anchored = false;
    let menu = build_menu(IntervalFamily::Int, 3);
    for _ in 0..150 {
        let (w0, w1) = (sampler.sample(&mut rng), sampler.sample(&mut rng));
        let rounds = rng.gen_range(0..=2);
        for variant in [Variant::Us, Variant::Fp] {
            let r = ef_crosscheck(&w0, &w1, rounds, &menu, variant).unwrap();
            assert!(r.agree(), "{}\n{}\n--\n{}\n{r}", rounds, w0, w1);
            assert!(r.trace_valid.is_ok(), "{r}");
        }
    }
}

#[test]
fn symmetric_rule_only_helps_spoiler() {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    let sampler = WordSampler::new(5, letters(&["a", "b"]), 2);
    let menu = build_menu(IntervalFamily::Int, 3);
    let symmetric = GameSettings {
        variant: Variant::Us,
        adjacency: AdjacencyRule::Symmetric,
    };
    for _ in 0..100 {
        let (w0, w1) = (sampler.sample(&mut rng), sampler.sample(&mut rng));
        let one = solve_with(&w0, &w1, 1, 1, 2, &menu, GameSettings::new(Variant::Us)).unwrap();
        let sym = solve_with(&w0, &w1, 1, 1, 2, &menu, symmetric).unwrap();
        validate_trace(&w0, &w1, &menu, symmetric, &sym).unwrap();
        if sym.winner == Player::Duplicator {
            assert_eq!(one.winner, Player::Duplicator);
        }
    }
}

#[test]
fn compiled_ttl_agrees_with_direct_evaluation() {
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    let words = WordSampler::new(6, letters(&["a", "b"]), 3);
    let formulas = TtlSampler::new(letters(&["a", "b"]), 3, 3, 2);
    for _ in 0..300 {
        let f = formulas.sample(&mut rng);
        let ws: Vec<_> = (0..5).map(|_| words.sample(&mut rng)).collect();
        let report = differential_check(&f, &ws, TranslateOptions::default()).unwrap();
        assert!(report.passed(), "{f}\n{report}");
        assert!(report.fragment.unary);
        if report.stats.punctual_leaks > 0 {
            assert!(has_zero_nonstrict_guard(&f));
        }
        for w in &ws {
            let nc = node_checks(w, &f, TranslateOptions::default()).unwrap();
            assert!(nc.passed(), "{f}\n{w}\n{nc:?}");
        }
    }
}
