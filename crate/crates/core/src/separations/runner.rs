use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::generators::{
    gen_thm2, gen_thm3, gen_thm5, gen_ttl_i, gen_ttl_ii, integral_collisions, unreached_band,
    PairCase,
};
use super::{CaseId, SeparationCase, SeparationError};
use crate::games::{solve_with, validate_trace, GameSettings, Player};
use crate::logic::{classify_formula, print_formula, Formula, ModalMeasure, Mtl, Valuation};
use crate::random::{
    gen_instantaneous, letters, random_letters, random_unitary, MtlSampler, TptlSampler, TtlSampler,
};
use crate::semantics::{
    eval_ttl, lang_member_mtl, lang_member_tptl, reduce_instantaneous, reduce_instantaneous_tptl,
    reduce_unitary, MtlEvaluator, TptlEvaluator,
};
use crate::ttl2mitl::reach_set_unanchored;
use crate::word::TimedWord;

/// One named sub-check with a short explanation of what was observed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheckLine {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

impl CheckLine {
    fn new(name: &str, passed: bool, detail: impl Into<String>) -> Self {
        CheckLine {
            name: name.into(),
            passed,
            detail: detail.into(),
        }
    }
}

#[derive(Debug, Clone)]
pub struct SeparationReport {
    pub case: SeparationCase,
    pub checks: Vec<CheckLine>,
    pub notes: Vec<String>,
}

impl SeparationReport {
    pub fn passed(&self) -> bool {
        !self.checks.is_empty() && self.checks.iter().all(|c| c.passed)
    }

    /// The lattice edge this case supports, with its status.
    pub fn edge_line(&self) -> String {
        let status = if self.passed() {
            "supported"
        } else {
            "NOT supported"
        };
        format!(
            "edge {}: {} {status}",
            self.case.id(),
            self.case.id().edge()
        )
    }

    /// Tab-separated lines: one per check, then the edge.
    pub fn porcelain(&self) -> String {
        let id = self.case.id();
        let mut out = String::new();
        for c in &self.checks {
            let verdict = if c.passed { "pass" } else { "fail" };
            out.push_str(&format!(
                "check\t{id}\t{}\t{verdict}\t{}\n",
                c.name, c.detail
            ));
        }
        let verdict = if self.passed() { "pass" } else { "fail" };
        out.push_str(&format!("edge\t{id}\t{}\t{verdict}", id.edge()));
        out
    }
}

impl fmt::Display for SeparationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let verdict = if self.passed() { "PASS" } else { "FAIL" };
        writeln!(f, "{verdict} {}", self.case)?;
        for c in &self.checks {
            let v = if c.passed { "PASS" } else { "FAIL" };
            writeln!(f, "  {v} {}: {}", c.name, c.detail)?;
        }
        for n in &self.notes {
            writeln!(f, "  note: {n}")?;
        }
        write!(f, "{}", self.edge_line())
    }
}

pub fn run_separation(case: &SeparationCase) -> SeparationReport {
    let mut report = SeparationReport {
        case: case.clone(),
        checks: Vec::new(),
        notes: Vec::new(),
    };
    let outcome = match *case {
        SeparationCase::Thm2 { m, k } => gen_thm2(m, k).map(|p| run_pair(&p, &mut report)),
        SeparationCase::Thm3 { rounds } => gen_thm3(2 * rounds).map(|p| run_pair(&p, &mut report)),
        SeparationCase::Thm5 { n, k } => gen_thm5(n, k).map(|p| run_pair(&p, &mut report)),
        SeparationCase::TtlI { n, samples, seed } => run_ttl_i(n, samples, seed, &mut report),
        SeparationCase::TtlII { m, samples, seed } => run_ttl_ii(m, samples, seed, &mut report),
        SeparationCase::Instantaneous { samples, seed } => {
            run_instantaneous(samples, seed, &mut report);
            Ok(())
        }
        SeparationCase::Unitary { samples, seed } => {
            run_unitary(samples, seed, &mut report);
            Ok(())
        }
    };
    if let Err(e) = outcome {
        report
            .checks
            .push(CheckLine::new("generate", false, e.to_string()));
    }
    report
}

fn fragment_check(id: CaseId, f: &Formula) -> CheckLine {
    match (id, f) {
        (CaseId::Thm5, Formula::Tptl(g)) => {
            let vars = g.frozen_vars().len();
            let ok = g.uses_only_future() && vars == 1;
            CheckLine::new(
                "fragment",
                ok,
                format!(
                    "TPTL, only F: {}, freeze variables: {vars}",
                    g.uses_only_future()
                ),
            )
        }
        (_, Formula::Mtl(g)) => {
            let frag = classify_formula(g);
            let ok = match id {
                CaseId::Thm3 | CaseId::TtlI => frag.unary && frag.bounded,
                _ => frag.unary && frag.non_punctual,
            };
            CheckLine::new("fragment", ok, format!("{} ({frag})", frag.logic_name()))
        }
        _ => CheckLine::new(
            "fragment",
            false,
            format!("unexpected {} formula", f.logic()),
        ),
    }
}

fn member(w: &TimedWord, f: &Formula) -> Result<bool, String> {
    match f {
        Formula::Mtl(g) => Ok(lang_member_mtl(w, g)),
        Formula::Tptl(g) => lang_member_tptl(w, g).map_err(|e| e.to_string()),
        Formula::Ttl(_) => Err("no TTL formulas in pair cases".into()),
    }
}

fn run_pair(p: &PairCase, report: &mut SeparationReport) {
    let id = report.case.id();
    report.notes.extend(p.notes.iter().cloned());
    report.checks.push(fragment_check(id, &p.formula));

    if id == CaseId::Thm5 {
        let clashes = integral_collisions(&p.a).len() + integral_collisions(&p.b).len();
        report.checks.push(CheckLine::new(
            "integral-audit",
            clashes == 0,
            format!("{clashes} pairs of events an integer apart"),
        ));
    }

    let split = member(&p.a, &p.formula).and_then(|a| Ok((a, member(&p.b, &p.formula)?)));
    report.checks.push(match split {
        Ok((a, b)) => CheckLine::new(
            "eval-split",
            a == p.a_member && b == !p.a_member,
            format!("A ⊨ φ: {a}, B ⊨ φ: {b}"),
        ),
        Err(e) => CheckLine::new("eval-split", false, e),
    });

    let g = &p.game;
    let settings = GameSettings::new(g.variant);
    let (i0, i1) = g.start;
    let game = solve_with(&p.a, &p.b, i0, i1, g.rounds, &g.menu, settings).map(|out| {
        let replay = validate_trace(&p.a, &p.b, &g.menu, settings, &out);
        (out, replay)
    });
    report.checks.push(match game {
        Ok((out, replay)) => {
            let mut detail = format!(
                "{} wins the {}-round {} game over {} from ({i0},{i1})",
                out.winner, g.rounds, g.variant, g.menu
            );
            if let Err(e) = &replay {
                detail.push_str(&format!("; trace replay failed: {e}"));
            }
            report.notes.extend(out.warnings.iter().cloned());
            CheckLine::new(
                "game",
                out.winner == Player::Duplicator && replay.is_ok(),
                detail,
            )
        }
        Err(e) => CheckLine::new("game", false, e.to_string()),
    });
}

fn split_line(w_in: bool, others_in: &[bool]) -> CheckLine {
    let ok = !w_in && others_in.iter().all(|&v| v);
    let shown: Vec<_> = others_in.iter().map(|v| v.to_string()).collect();
    CheckLine::new(
        "eval-split",
        ok,
        format!("w ⊨ φ: {w_in}, altered words ⊨ φ: [{}]", shown.join(", ")),
    )
}

fn run_ttl_i(
    n: u64,
    samples: usize,
    seed: u64,
    report: &mut SeparationReport,
) -> Result<(), SeparationError> {
    let case = gen_ttl_i(n)?;
    report.checks.push(fragment_check(
        CaseId::TtlI,
        &Formula::Mtl(case.formula.clone()),
    ));
    let expect = "a".repeat(2 * n as usize + 3) + &"c".repeat(2 * n as usize + 3);
    let untimed = case.w.untime_string();
    report.checks.push(CheckLine::new(
        "untime",
        untimed == expect && case.v.untime_string() == expect,
        untimed,
    ));
    report.checks.push(split_line(
        lang_member_mtl(&case.w, &case.formula),
        &[lang_member_mtl(&case.v, &case.formula)],
    ));
    report
        .notes
        .push("w starts after 0; every sampled guard reads a variable frozen on the word".into());

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for depth in 1..=n {
        let mut sampler = TtlSampler::new(letters(&["a", "c"]), depth as usize, 4, 2);
        sampler.free_guards = false;
        let band = unreached_band(n, depth);
        let mut failures = Vec::new();
        for _ in 0..samples {
            let f = sampler.sample(&mut rng);
            let reached = reach_set_unanchored(&case.w, &f);
            let hit: Vec<_> = band.iter().filter(|p| reached.contains(p)).collect();
            if f.modal_depth() > depth as usize || !hit.is_empty() {
                failures.push(format!("{f} reaches {hit:?}"));
            }
        }
        let mut detail = format!(
            "{samples} formulas of modal depth ≤ {depth}; a's {}..{} and c's {}..{}; {} reached them",
            depth + 2,
            2 * n + 4 - depth,
            depth + 1,
            2 * n + 3 - depth,
            failures.len()
        );
        if let Some(first) = failures.first() {
            detail.push_str(&format!("; first: {first}"));
        }
        report.checks.push(CheckLine::new(
            &format!("reach-band-m{depth}"),
            failures.is_empty(),
            detail,
        ));
    }
    Ok(())
}

fn run_ttl_ii(
    m: u64,
    samples: usize,
    seed: u64,
    report: &mut SeparationReport,
) -> Result<(), SeparationError> {
    let case = gen_ttl_ii(m)?;
    report.checks.push(fragment_check(
        CaseId::TtlII,
        &Formula::Mtl(case.formula.clone()),
    ));
    let family: Vec<bool> = case
        .family
        .iter()
        .map(|v| lang_member_mtl(v, &case.formula))
        .collect();
    report
        .checks
        .push(split_line(lang_member_mtl(&case.w, &case.formula), &family));

    let mut sampler = TtlSampler::new(letters(&["a", "c"]), m as usize, 3, m as usize);
    sampler.no_reuse = true;
    sampler.max_modalities = Some(m as usize);
    sampler.free_guards = false;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let nu = Valuation::initial();
    let mut failures = Vec::new();
    for _ in 0..samples {
        let psi = sampler.sample(&mut rng);
        let on_w = eval_ttl(&case.w, 1, &nu, &psi).expect("position 1 exists");
        let matched = case
            .family
            .iter()
            .any(|v| eval_ttl(v, 1, &nu, &psi).expect("position 1 exists") == on_w);
        if !matched || psi.modal_count() > m as usize {
            failures.push(psi.to_string());
        }
    }
    let mut detail = format!(
        "{samples} formulas with ≤ {m} modalities, {} separated w from every altered word",
        failures.len()
    );
    if let Some(first) = failures.first() {
        detail.push_str(&format!("; first: {first}"));
    }
    report.checks.push(CheckLine::new(
        "some-altered-word-agrees",
        failures.is_empty(),
        detail,
    ));
    report.notes.push(format!(
        "{} altered words, one per overlapping triple of pairs",
        case.family.len()
    ));
    Ok(())
}

fn mtl_sampler() -> MtlSampler {
    MtlSampler {
        alphabet: letters(&["a", "b"]),
        max_depth: 3,
        max_const: 2,
        unary: false,
    }
}

/// Compares `f` and `reduced` at every position of each word; returns a description of the
/// first disagreement.
fn agree_everywhere(words: &[TimedWord], f: &Mtl, reduced: &Mtl) -> Option<String> {
    for w in words {
        let mut ev = MtlEvaluator::new(w);
        let (lhs, rhs) = (ev.sat(f), ev.sat(reduced));
        if let Some(i) = (0..lhs.len()).find(|&i| lhs[i] != rhs[i]) {
            return Some(format!(
                "{f} vs {reduced} at position {} of {:?}",
                i + 1,
                w.serialize()
            ));
        }
    }
    None
}

fn reduction_checks(
    name: &str,
    samples: usize,
    rng: &mut ChaCha8Rng,
    word: impl Fn(&mut ChaCha8Rng) -> TimedWord,
    reduce: impl Fn(&Mtl) -> std::sync::Arc<Mtl>,
    report: &mut SeparationReport,
) {
    let sampler = mtl_sampler();
    let mut mismatches = Vec::new();
    let mut depth_changes = 0;
    for _ in 0..samples {
        let f = sampler.sample(rng);
        let reduced = reduce(&f);
        if reduced.modal_depth() != f.modal_depth() {
            depth_changes += 1;
        }
        let words: Vec<_> = (0..3).map(|_| word(rng)).collect();
        if let Some(m) = agree_everywhere(&words, &f, &reduced) {
            mismatches.push(m);
        }
    }
    let mut detail = format!(
        "{samples} formulas × 3 {name} words, {} disagreements",
        mismatches.len()
    );
    if let Some(first) = mismatches.first() {
        detail.push_str(&format!("; first: {first}"));
    }
    report.checks.push(CheckLine::new(
        "reduction-agrees",
        mismatches.is_empty(),
        detail,
    ));
    report.checks.push(CheckLine::new(
        "depth-preserved",
        depth_changes == 0,
        format!("{depth_changes} reductions changed modal depth"),
    ));
}

fn instantaneous_word(rng: &mut ChaCha8Rng) -> TimedWord {
    let len = rng.gen_range(1..=6);
    gen_instantaneous(&random_letters(rng, len, &letters(&["a", "b"])))
}

fn run_instantaneous(samples: usize, seed: u64, report: &mut SeparationReport) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    reduction_checks(
        "instantaneous",
        samples,
        &mut rng,
        instantaneous_word,
        reduce_instantaneous,
        report,
    );

    let sampler = TptlSampler {
        alphabet: letters(&["a", "b"]),
        max_depth: 3,
        max_const: 2,
        vars: vec![
            crate::logic::Var::new("x").expect("name"),
            crate::logic::Var::new("y").expect("name"),
        ],
    };
    let nu = Valuation::initial();
    let mut mismatches = Vec::new();
    for _ in 0..samples {
        let f = sampler.sample(&mut rng);
        let reduced = reduce_instantaneous_tptl(&f);
        for _ in 0..3 {
            let w = instantaneous_word(&mut rng);
            let mut tptl = TptlEvaluator::new(&w);
            let mtl = MtlEvaluator::new(&w).sat(&reduced);
            if let Some(i) = w.positions().find(|&i| tptl.eval(i, &nu, &f) != mtl[i - 1]) {
                mismatches.push(format!(
                    "{f} vs {reduced} at position {i} of {:?}",
                    w.serialize()
                ));
            }
        }
    }
    let mut detail = format!(
        "{samples} TPTL formulas × 3 instantaneous words, {} disagreements",
        mismatches.len()
    );
    if let Some(first) = mismatches.first() {
        detail.push_str(&format!("; first: {first}"));
    }
    report.checks.push(CheckLine::new(
        "tptl-reduction-agrees",
        mismatches.is_empty(),
        detail,
    ));
    report
        .notes
        .push("the untimed until/since hierarchy this imports is taken as known".into());
}

fn run_unitary(samples: usize, seed: u64, report: &mut SeparationReport) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let alphabet = letters(&["a", "b"]);
    reduction_checks(
        "unitary",
        samples,
        &mut rng,
        |rng| {
            let len = rng.gen_range(1..=6);
            random_unitary(rng, len, &alphabet)
        },
        reduce_unitary,
        report,
    );
    report
        .notes
        .push("the untimed until/since hierarchy this imports is taken as known".into());
}

/// A file written by `export_case`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExportFile {
    pub name: String,
    pub contents: String,
}

fn file(name: impl Into<String>, contents: String) -> ExportFile {
    ExportFile {
        name: name.into(),
        contents: contents + "\n",
    }
}

fn formula_file(stem: &str, f: &Formula) -> ExportFile {
    file(format!("{stem}.{}", f.logic()), print_formula(f))
}

/// The case's words and formulas in the standard text formats. Sampling cases export a few
/// samples together with their reductions.
pub fn export_case(case: &SeparationCase) -> Result<Vec<ExportFile>, SeparationError> {
    let pair = |p: PairCase| {
        vec![
            file("A.word", p.a.serialize()),
            file("B.word", p.b.serialize()),
            formula_file("phi", &p.formula),
        ]
    };
    Ok(match *case {
        SeparationCase::Thm2 { m, k } => pair(gen_thm2(m, k)?),
        SeparationCase::Thm3 { rounds } => pair(gen_thm3(2 * rounds)?),
        SeparationCase::Thm5 { n, k } => pair(gen_thm5(n, k)?),
        SeparationCase::TtlI { n, .. } => {
            let c = gen_ttl_i(n)?;
            vec![
                file("w.word", c.w.serialize()),
                file("v.word", c.v.serialize()),
                formula_file("phi", &Formula::Mtl(c.formula)),
            ]
        }
        SeparationCase::TtlII { m, .. } => {
            let c = gen_ttl_ii(m)?;
            let mut out = vec![file("w.word", c.w.serialize())];
            for (j, v) in c.family.iter().enumerate() {
                out.push(file(format!("v_{}.word", j + 1), v.serialize()));
            }
            out.push(formula_file("phi", &Formula::Mtl(c.formula)));
            out
        }
        SeparationCase::Instantaneous { samples, seed } => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let sampler = mtl_sampler();
            let mut out = Vec::new();
            for s in 1..=samples.min(5) {
                let f = sampler.sample(&mut rng);
                out.push(file(
                    format!("sample_{s}.word"),
                    instantaneous_word(&mut rng).serialize(),
                ));
                out.push(file(format!("sample_{s}.mtl"), f.to_string()));
                out.push(file(
                    format!("sample_{s}.reduced.mtl"),
                    reduce_instantaneous(&f).to_string(),
                ));
            }
            out
        }
        SeparationCase::Unitary { samples, seed } => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let sampler = mtl_sampler();
            let alphabet = letters(&["a", "b"]);
            let mut out = Vec::new();
            for s in 1..=samples.min(5) {
                let f = sampler.sample(&mut rng);
                let len = rng.gen_range(1..=6);
                out.push(file(
                    format!("sample_{s}.word"),
                    random_unitary(&mut rng, len, &alphabet).serialize(),
                ));
                out.push(file(format!("sample_{s}.mtl"), f.to_string()));
                out.push(file(
                    format!("sample_{s}.reduced.mtl"),
                    reduce_unitary(&f).to_string(),
                ));
            }
            out
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::logic::{parse_formula, Logic};
    use crate::word::parse_word;

    #[test]
    fn integer_spaced_case_passes_three_checks() {
        let r = run_separation(&SeparationCase::Thm2 { m: 2, k: 1 });
        assert_eq!(r.checks.len(), 3, "{r}");
        assert!(r.passed(), "{r}");
        assert!(r.edge_line().ends_with("supported"));
    }

    #[test]
    fn segment_case_passes() {
        let r = run_separation(&SeparationCase::Thm5 { n: 1, k: 1 });
        assert!(r.passed(), "{r}");
    }

    #[test]
    fn paired_family_case_passes() {
        let r = run_separation(&SeparationCase::TtlII {
            m: 1,
            samples: 100,
            seed: 3,
        });
        assert!(r.passed(), "{r}");
    }

    #[test]
    fn bad_parameters_fail_the_report() {
        let r = run_separation(&SeparationCase::Thm2 { m: 0, k: 1 });
        assert!(!r.passed());
        assert_eq!(r.checks[0].name, "generate");
        assert!(r.edge_line().ends_with("NOT supported"));
    }

    #[test]
    fn porcelain_is_tab_separated() {
        let r = run_separation(&SeparationCase::Thm2 { m: 1, k: 1 });
        let lines: Vec<_> = r.porcelain().lines().map(String::from).collect();
        assert_eq!(lines.len(), 4);
        assert!(lines.iter().all(|l| l.split('\t').count() >= 4));
    }

    #[test]
    fn exported_files_parse_back() {
        let files = export_case(&SeparationCase::Thm5 { n: 1, k: 1 }).unwrap();
        let names: Vec<_> = files.iter().map(|f| f.name.as_str()).collect();
        assert_eq!(names, ["A.word", "B.word", "phi.tptl"]);
        parse_word(&files[0].contents).unwrap();
        parse_formula(&files[2].contents, Logic::Tptl).unwrap();
    }
}
