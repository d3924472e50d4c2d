//! End-to-end acceptance run. Each criterion prints one PASS/FAIL line with its elapsed time
//! against its limit; the process exits non-zero if any criterion fails.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use timed_logic::games::{build_menu, ef_crosscheck, Variant};
use timed_logic::logic::{
    parse_mtl, parse_tptl, truncate_constants, IntervalFamily, Ttl, Valuation,
};
use timed_logic::random::{letters, MtlSampler, TtlSampler, WordSampler};
use timed_logic::semantics::{eval_mtl, eval_tptl};
use timed_logic::separations::{run_separation, SeparationCase, SeparationReport};
use timed_logic::ttl2mitl::{
    differential_check, has_zero_nonstrict_guard, node_checks, BoundaryKind, TranslateOptions,
};
use timed_logic::word::TimedWord;

struct Verdict {
    passed: bool,
    detail: String,
}

impl Verdict {
    fn new(passed: bool, detail: impl Into<String>) -> Self {
        Verdict {
            passed,
            detail: detail.into(),
        }
    }
}

fn separation_cases(cases: &[SeparationCase]) -> Verdict {
    let reports: Vec<SeparationReport> = cases.iter().map(run_separation).collect();
    let failed: Vec<String> = reports
        .iter()
        .filter(|r| !r.passed())
        .map(|r| r.to_string())
        .collect();
    let names: Vec<String> = reports.iter().map(|r| r.case.to_string()).collect();
    if failed.is_empty() {
        Verdict::new(true, names.join("; "))
    } else {
        Verdict::new(false, failed.join("\n"))
    }
}

fn integer_spaced() -> Verdict {
    separation_cases(&[
        SeparationCase::Thm2 { m: 1, k: 1 },
        SeparationCase::Thm2 { m: 2, k: 1 },
        SeparationCase::Thm2 { m: 2, k: 2 },
    ])
}

fn near_zero_block() -> Verdict {
    separation_cases(&[
        SeparationCase::Thm3 { rounds: 1 },
        SeparationCase::Thm3 { rounds: 2 },
    ])
}

fn segments() -> Verdict {
    separation_cases(&[SeparationCase::Thm5 { n: 1, k: 1 }])
}

fn game_against_signatures() -> Verdict {
    let mut rng = ChaCha8Rng::seed_from_u64(401);
    let mut words = WordSampler::new(6, letters(&["a", "b"]), 2);
    words.anchored = false;
    let menu = build_menu(IntervalFamily::Int, 2);
    let instances: Vec<(TimedWord, TimedWord, usize)> = (0..1000)
        .map(|_| {
            (
                words.sample(&mut rng),
                words.sample(&mut rng),
                rng.gen_range(0..=2),
            )
        })
        .collect();
    let results: Vec<(bool, bool, bool)> = instances
        .par_iter()
        .flat_map_iter(|(w0, w1, rounds)| {
            [Variant::Us, Variant::Fp].into_iter().map(|v| {
                let r = ef_crosscheck(w0, w1, *rounds, &menu, v).expect("crosscheck runs");
                (r.in_cap, r.agree(), r.trace_valid.is_ok())
            })
        })
        .collect();
    // the cap is a property of the pair, so both variants share it
    let in_cap = results.iter().filter(|r| r.0).count() / 2;
    let disagree = results.iter().filter(|r| r.0 && !r.1).count();
    let bad_traces = results.iter().filter(|r| !r.2).count();
    Verdict::new(
        in_cap >= 200 && disagree == 0 && bad_traces == 0,
        format!(
            "{} pairs x 2 variants, {in_cap} pairs in cap, {disagree} disagreements, {bad_traces} invalid traces",
            instances.len()
        ),
    )
}

fn truncation() -> Verdict {
    let mut rng = ChaCha8Rng::seed_from_u64(501);
    let words = WordSampler::new(7, letters(&["a", "b"]), 3);
    let formulas = MtlSampler {
        alphabet: letters(&["a", "b"]),
        max_depth: 3,
        max_const: 6,
        unary: false,
    };
    let mut failures = Vec::new();
    let samples = 1500;
    for _ in 0..samples {
        let w = words.sample(&mut rng);
        let f = formulas.sample(&mut rng);
        let last: u64 = w.last_time().ceil().to_integer().try_into().unwrap();
        let k = last + rng.gen_range(1..=2);
        let i = rng.gen_range(1..=w.len());
        let cut = truncate_constants(&f, k);
        if eval_mtl(&w, i, &f).unwrap() != eval_mtl(&w, i, &cut).unwrap() {
            failures.push(format!("{f} vs {cut} at {i} on\n{w}"));
        }
    }
    Verdict::new(
        failures.is_empty(),
        format!("{samples} triples, {} failures", failures.len()),
    )
}

/// The shared corpus for the compilation criteria: formulas with their words.
fn ttl_corpus() -> Vec<(Ttl, Vec<TimedWord>)> {
    let mut rng = ChaCha8Rng::seed_from_u64(601);
    let words = WordSampler::new(8, letters(&["a", "b"]), 3);
    let formulas = TtlSampler::new(letters(&["a", "b"]), 4, 3, 2);
    (0..1000)
        .map(|_| {
            let f = formulas.sample(&mut rng);
            let ws = (0..3).map(|_| words.sample(&mut rng)).collect();
            (f, ws)
        })
        .collect()
}

fn compilation(corpus: &[(Ttl, Vec<TimedWord>)]) -> Verdict {
    let outcomes: Vec<(usize, bool, bool, usize)> = corpus
        .par_iter()
        .map(|(f, ws)| {
            let r = differential_check(f, ws, TranslateOptions::default()).expect("compiles");
            let leak_ok = r.stats.punctual_leaks == 0 || has_zero_nonstrict_guard(f);
            (
                r.counterexamples.len(),
                r.fragment.unary,
                leak_ok,
                r.checked,
            )
        })
        .collect();
    let counterexamples: usize = outcomes.iter().map(|o| o.0).sum();
    let not_unary = outcomes.iter().filter(|o| !o.1).count();
    let stray_leaks = outcomes.iter().filter(|o| !o.2).count();
    let checked: usize = outcomes.iter().map(|o| o.3).sum();
    Verdict::new(
        counterexamples == 0 && not_unary == 0 && stray_leaks == 0,
        format!(
            "{} formulas, {checked} evaluations, {counterexamples} counterexamples, \
             {not_unary} non-unary, {stray_leaks} leaks without a zero non-strict guard",
            corpus.len()
        ),
    )
}

fn node_level(corpus: &[(Ttl, Vec<TimedWord>)]) -> Verdict {
    let reports: Vec<_> = corpus
        .par_iter()
        .flat_map_iter(|(f, ws)| {
            ws.iter()
                .map(move |w| node_checks(w, f, TranslateOptions::default()).expect("checks run"))
        })
        .collect();
    let failing = reports.iter().filter(|r| !r.passed()).count();
    let cases: Vec<_> = reports
        .iter()
        .flat_map(|r| r.events.boundary_cases.iter())
        .collect();
    let same = cases
        .iter()
        .filter(|c| c.kind == BoundaryKind::SamePosition)
        .count();
    let opposite = cases.len() - same;
    let unrepaired = cases.iter().filter(|c| !c.patched_ok).count();
    let mut detail = format!(
        "{} word/formula pairs, {failing} failing; boundary cases: {same} same-position, \
         {opposite} opposite-side, {unrepaired} not repaired by the patch",
        reports.len()
    );
    for c in cases.iter().take(5) {
        detail.push_str(&format!(
            "\n      {:?} at position {} in {} (patched ok: {})",
            c.kind, c.position, c.node, c.patched_ok
        ));
    }
    if cases.len() > 5 {
        detail.push_str(&format!("\n      ... {} more", cases.len() - 5));
    }
    Verdict::new(failing == 0 && unrepaired == 0, detail)
}

fn ttl_families() -> Verdict {
    separation_cases(&[
        SeparationCase::TtlI {
            n: 1,
            samples: 200,
            seed: 801,
        },
        SeparationCase::TtlI {
            n: 2,
            samples: 200,
            seed: 802,
        },
        SeparationCase::TtlII {
            m: 1,
            samples: 200,
            seed: 803,
        },
        SeparationCase::TtlII {
            m: 2,
            samples: 200,
            seed: 804,
        },
    ])
}

fn reductions() -> Verdict {
    separation_cases(&[
        SeparationCase::Instantaneous {
            samples: 500,
            seed: 901,
        },
        SeparationCase::Unitary {
            samples: 500,
            seed: 902,
        },
    ])
}

fn intro_pair() -> Verdict {
    let mut rng = ChaCha8Rng::seed_from_u64(1001);
    let words = WordSampler::new(7, letters(&["a", "b", "c"]), 4);
    let tptl = parse_tptl("(freeze x (U a (and b (cmp T-x < 2))))").unwrap();
    let mtl = parse_mtl("(U [0,2) a b)").unwrap();
    let nu = Valuation::initial();
    let samples = 600;
    let (mut differ, mut satisfied) = (0, 0);
    for _ in 0..samples {
        let w = words.sample(&mut rng);
        let lhs = eval_tptl(&w, 1, &nu, &tptl).unwrap();
        if lhs != eval_mtl(&w, 1, &mtl).unwrap() {
            differ += 1;
        }
        satisfied += usize::from(lhs);
    }
    Verdict::new(
        differ == 0,
        format!("{samples} words ({satisfied} satisfying), {differ} disagreements"),
    )
}

fn report(number: usize, name: &str, limit_secs: u64, run: impl FnOnce() -> Verdict) -> bool {
    let start = Instant::now();
    let verdict = run();
    let elapsed = start.elapsed();
    let in_time = elapsed <= Duration::from_secs(limit_secs);
    let passed = verdict.passed && in_time;
    println!(
        "{} {number:>2} {name} ({:.2}s of {limit_secs}s{}): {}",
        if passed { "PASS" } else { "FAIL" },
        elapsed.as_secs_f64(),
        if in_time { "" } else { ", over the limit" },
        verdict.detail
    );
    passed
}

fn main() -> ExitCode {
    let corpus = ttl_corpus();
    let results = [
        report(1, "integer-spaced pair", 5, integer_spaced),
        report(2, "near-zero block pair", 60, near_zero_block),
        report(3, "segment pair", 120, segments),
        report(4, "game vs signatures", 120, game_against_signatures),
        report(5, "constant truncation", 30, truncation),
        report(6, "TTL compilation differential", 120, || {
            compilation(&corpus)
        }),
        report(7, "node-level checks", 60, || node_level(&corpus)),
        report(8, "TTL word families", 60, ttl_families),
        report(9, "instantaneous and unitary reductions", 30, reductions),
        report(10, "introductory formula pair", 5, intro_pair),
    ];
    let passed = results.iter().filter(|&&p| p).count();
    println!("{passed}/{} criteria passed", results.len());
    if passed == results.len() {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
