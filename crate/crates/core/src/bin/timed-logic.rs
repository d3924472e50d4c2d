use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;

use timed_logic::games::{
    build_menu, ef_crosscheck, faithful_cap, AdjacencyRule, GameSettings, GameSolver, Variant,
};
use timed_logic::logic::{
    classify_formula, parse_formula, Formula, IntervalFamily, Logic, ModalMeasure, Valuation,
};
use timed_logic::semantics::{eval_mtl, eval_tptl, eval_ttl, lang_member_tptl, lang_member_ttl};
use timed_logic::separations::{export_case, run_separation, CaseId, SeparationCase};
use timed_logic::ttl2mitl::{translate, TranslateOptions};
use timed_logic::word::{parse_word, TimedWord};

#[derive(Parser)]
#[command(
    name = "timed-logic",
    version,
    about = "Pointwise timed temporal logics on finite timed words"
)]
struct Cli {
    /// Seed for the randomized suites.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Tab-separated machine-readable output.
    #[arg(long, global = true)]
    porcelain: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate a formula on a word; exit 0 if it holds, 1 if not, 2 on errors.
    Eval {
        word: PathBuf,
        formula: PathBuf,
        /// mtl, tptl or ttl; taken from the formula file's extension when omitted.
        #[arg(long)]
        logic: Option<Logic>,
        /// 1-based position; defaults to language membership at position 1.
        #[arg(long)]
        position: Option<usize>,
    },
    /// Compile a TTL formula into unary MTL.
    Translate {
        formula: PathBuf,
        /// Keep the one-sided guard translation and the (0,∞) first/last characterizers.
        #[arg(long)]
        literal: bool,
        /// Reject guards that would need the punctual interval [0,0].
        #[arg(long)]
        strict_punctuality: bool,
    },
    /// Solve an EF game and print the winner with a principal variation.
    Game {
        word0: PathBuf,
        word1: PathBuf,
        #[command(flatten)]
        game: GameArgs,
        #[arg(long, value_enum, default_value_t = Adjacency::OneSided)]
        adjacency: Adjacency,
        /// Starting configuration as `i0,i1`.
        #[arg(long, default_value = "1,1")]
        start: String,
        /// Also print the strategy tree.
        #[arg(long)]
        tree: bool,
        #[arg(long, default_value_t = 200)]
        node_cap: usize,
    },
    /// Write a separation case's words and formulas to a directory.
    Gen {
        case: CaseId,
        #[command(flatten)]
        params: CaseParams,
        #[arg(long, default_value = ".")]
        out: PathBuf,
    },
    /// Run a separation experiment, or `all` of them.
    Check {
        case: String,
        #[command(flatten)]
        params: CaseParams,
        /// Smallest parameters for every case.
        #[arg(long)]
        small: bool,
    },
    /// Classify a formula.
    Fragment {
        formula: PathBuf,
        #[arg(long)]
        logic: Option<Logic>,
    },
    /// Compare the game solver with the independent formula oracle on two words.
    Crosscheck {
        word0: PathBuf,
        word1: PathBuf,
        #[command(flatten)]
        game: GameArgs,
    },
}

#[derive(Args)]
struct GameArgs {
    #[arg(long, default_value_t = 1)]
    rounds: usize,
    /// int, extint, bint, bextint, intk or bintk.
    #[arg(long, default_value = "int")]
    menu: String,
    /// Constant cap; defaults to one above the largest timestamp.
    #[arg(long)]
    k: Option<u64>,
    #[arg(long, default_value = "US")]
    variant: Variant,
}

#[derive(Clone, Copy, ValueEnum)]
enum Adjacency {
    OneSided,
    Symmetric,
}

#[derive(Args, Default)]
struct CaseParams {
    #[arg(long)]
    n: Option<u64>,
    #[arg(long)]
    k: Option<u64>,
    #[arg(long)]
    m: Option<u64>,
    /// Rounds for thm3.
    #[arg(long)]
    rounds: Option<u64>,
    #[arg(long)]
    samples: Option<usize>,
}

impl CaseParams {
    fn case(&self, id: CaseId, seed: u64) -> Result<SeparationCase> {
        let mut case = SeparationCase::smallest(id, seed);
        let allowed: &[&str] = match id {
            CaseId::Thm2 => &["m", "k"],
            CaseId::Thm3 => &["rounds"],
            CaseId::Thm5 => &["n", "k"],
            CaseId::TtlI => &["n", "samples"],
            CaseId::TtlII => &["m", "samples"],
            CaseId::Instantaneous | CaseId::Unitary => &["samples"],
        };
        let given = [
            ("n", self.n.is_some()),
            ("k", self.k.is_some()),
            ("m", self.m.is_some()),
            ("rounds", self.rounds.is_some()),
            ("samples", self.samples.is_some()),
        ];
        if let Some((name, _)) = given.iter().find(|(n, g)| *g && !allowed.contains(n)) {
            bail!("--{name} does not apply to {id}");
        }
        match &mut case {
            SeparationCase::Thm2 { m, k } => {
                *m = self.m.unwrap_or(*m);
                *k = self.k.unwrap_or(*k);
            }
            SeparationCase::Thm3 { rounds } => *rounds = self.rounds.unwrap_or(*rounds),
            SeparationCase::Thm5 { n, k } => {
                *n = self.n.unwrap_or(*n);
                *k = self.k.unwrap_or(*k);
            }
            SeparationCase::TtlI { n, samples, .. } => {
                *n = self.n.unwrap_or(*n);
                *samples = self.samples.unwrap_or(*samples);
            }
            SeparationCase::TtlII { m, samples, .. } => {
                *m = self.m.unwrap_or(*m);
                *samples = self.samples.unwrap_or(*samples);
            }
            SeparationCase::Instantaneous { samples, .. }
            | SeparationCase::Unitary { samples, .. } => {
                *samples = self.samples.unwrap_or(*samples);
            }
        }
        Ok(case)
    }

    fn any(&self) -> bool {
        self.n.is_some()
            || self.k.is_some()
            || self.m.is_some()
            || self.rounds.is_some()
            || self.samples.is_some()
    }
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))
}

fn load_word(path: &Path) -> Result<TimedWord> {
    parse_word(&read(path)?).with_context(|| format!("in word file {}", path.display()))
}

fn load_formula(path: &Path, logic: Option<Logic>) -> Result<Formula> {
    let logic = match logic {
        Some(l) => l,
        None => path
            .extension()
            .and_then(|e| e.to_str())
            .and_then(|e| e.parse().ok())
            .ok_or_else(|| {
                anyhow!(
                    "cannot tell the logic of {}; pass --logic or use a .mtl/.tptl/.ttl extension",
                    path.display()
                )
            })?,
    };
    parse_formula(&read(path)?, logic)
        .with_context(|| format!("in formula file {}", path.display()))
}

fn cmd_eval(
    word: &Path,
    formula: &Path,
    logic: Option<Logic>,
    position: Option<usize>,
) -> Result<bool> {
    let w = load_word(word)?;
    let f = load_formula(formula, logic)?;
    let nu = Valuation::initial();
    let verdict = match (&f, position) {
        (Formula::Mtl(g), p) => eval_mtl(&w, p.unwrap_or(1), g)?,
        (Formula::Tptl(g), None) => lang_member_tptl(&w, g).context(
            "TPTL membership reads unbound variables as time 0, so the word must start at 0",
        )?,
        (Formula::Ttl(g), None) => lang_member_ttl(&w, g).context(
            "TTL membership reads unbound variables as time 0, so the word must start at 0",
        )?,
        (Formula::Tptl(g), Some(p)) => eval_tptl(&w, p, &nu, g)?,
        (Formula::Ttl(g), Some(p)) => eval_ttl(&w, p, &nu, g)?,
    };
    println!("{verdict}");
    Ok(verdict)
}

fn cmd_translate(path: &Path, literal: bool, strict: bool, porcelain: bool) -> Result<()> {
    let Formula::Ttl(f) = load_formula(path, Some(Logic::Ttl))? else {
        unreachable!("parsed as TTL")
    };
    let opts = TranslateOptions {
        literal,
        strict_punctuality: strict,
    };
    let t = translate(&f, opts)?;
    let mode = if literal { "literal" } else { "default" };
    let s = &t.stats;
    if porcelain {
        println!("formula\t{}", t.formula);
        println!("mode\t{mode}");
        println!("fragment\t{}", t.fragment.logic_name());
        println!("unary\t{}", t.fragment.unary);
        println!("opposite_side\t{}", s.opposite_side);
        println!("same_position\t{}", s.same_position);
        println!("punctual_leaks\t{}", s.punctual_leaks);
    } else {
        println!("{}", t.formula);
        if literal {
            println!("mode: literal (one-sided guards, (0,∞) first/last characterizers)");
        } else {
            println!("mode: default (two-sided guards, [0,∞) first/last characterizers)");
        }
        println!("fragment: {} ({})", t.fragment.logic_name(), t.fragment);
        println!("patches: {s}");
    }
    Ok(())
}

fn parse_start(s: &str) -> Result<(usize, usize)> {
    let (a, b) = s
        .split_once(',')
        .ok_or_else(|| anyhow!("--start expects `i0,i1`, got `{s}`"))?;
    Ok((a.trim().parse()?, b.trim().parse()?))
}

fn menu_for(args: &GameArgs, words: &[&TimedWord]) -> Result<timed_logic::games::IntervalMenu> {
    let k = args.k.unwrap_or_else(|| faithful_cap(words));
    let kind = IntervalFamily::from_name(&args.menu, k).ok_or_else(|| {
        anyhow!(
            "unknown menu `{}` (expected int, extint, bint, bextint, intk or bintk)",
            args.menu
        )
    })?;
    Ok(build_menu(kind, k))
}

#[allow(clippy::too_many_arguments)]
fn cmd_game(
    word0: &Path,
    word1: &Path,
    args: &GameArgs,
    adjacency: Adjacency,
    start: &str,
    tree: bool,
    node_cap: usize,
    porcelain: bool,
) -> Result<()> {
    let (w0, w1) = (load_word(word0)?, load_word(word1)?);
    let menu = menu_for(args, &[&w0, &w1])?;
    let settings = GameSettings {
        variant: args.variant,
        adjacency: match adjacency {
            Adjacency::OneSided => AdjacencyRule::OneSided,
            Adjacency::Symmetric => AdjacencyRule::Symmetric,
        },
    };
    let (i0, i1) = parse_start(start)?;
    let solver = GameSolver::new(&w0, &w1, &menu, settings, args.rounds)?;
    let out = solver.outcome(i0, i1, args.rounds)?;
    if porcelain {
        println!("winner\t{}", out.winner);
        for mv in &out.principal_variation {
            println!("move\t{}\t{mv}", mv.round);
        }
        println!("ending\t{}", out.ending);
        for w in &out.warnings {
            println!("warning\t{w}");
        }
    } else {
        println!("{}", out.winner);
        for mv in &out.principal_variation {
            println!("{mv}");
        }
        println!("ending: {}", out.ending);
        println!("menu: {menu}");
        for w in &out.warnings {
            println!("warning: {w}");
        }
    }
    if tree {
        let t = solver.strategy_tree(i0, i1, args.rounds, node_cap);
        print!("{}", t.render());
    }
    Ok(())
}

fn cmd_gen(id: CaseId, params: &CaseParams, out: &Path, seed: u64) -> Result<()> {
    let case = params.case(id, seed)?;
    let files = export_case(&case)?;
    fs::create_dir_all(out).with_context(|| format!("cannot create {}", out.display()))?;
    for f in &files {
        let path = out.join(&f.name);
        fs::write(&path, &f.contents)
            .with_context(|| format!("cannot write {}", path.display()))?;
        println!("{}", path.display());
    }
    Ok(())
}

fn cmd_check(
    which: &str,
    params: &CaseParams,
    small: bool,
    seed: u64,
    porcelain: bool,
) -> Result<bool> {
    let cases: Vec<SeparationCase> = if which == "all" {
        if params.any() {
            bail!("`check all` takes no case parameters; use --small or name a case");
        }
        CaseId::ALL
            .iter()
            .map(|&id| SeparationCase::smallest(id, seed))
            .collect()
    } else {
        let id: CaseId = which.parse().map_err(|e: String| anyhow!(e))?;
        if small && params.any() {
            bail!("--small conflicts with explicit case parameters");
        }
        vec![params.case(id, seed)?]
    };
    let reports: Vec<_> = cases.par_iter().map(run_separation).collect();
    let all_pass = reports.iter().all(|r| r.passed());
    for r in &reports {
        if porcelain {
            println!("{}", r.porcelain());
        } else {
            println!("{r}");
        }
    }
    if reports.len() > 1 {
        if !porcelain {
            println!("summary:");
        }
        for r in &reports {
            if porcelain {
                let v = if r.passed() { "pass" } else { "fail" };
                println!("summary\t{}\t{}\t{v}", r.case.id(), r.case.id().edge());
            } else {
                println!("  {}", r.edge_line());
            }
        }
    }
    Ok(all_pass)
}

fn cmd_fragment(path: &Path, logic: Option<Logic>, porcelain: bool) -> Result<()> {
    let f = load_formula(path, logic)?;
    let mut rows: Vec<(&str, String)> = vec![("logic", f.logic().to_string())];
    match &f {
        Formula::Mtl(g) => {
            let frag = classify_formula(g);
            rows.push(("fragment", frag.logic_name()));
            rows.push(("unary", frag.unary.to_string()));
            rows.push(("bounded", frag.bounded.to_string()));
            rows.push(("non_punctual", frag.non_punctual.to_string()));
            rows.push(("max_constant", frag.max_constant.to_string()));
            rows.push(("modal_depth", g.modal_depth().to_string()));
            rows.push(("modal_count", g.modal_count().to_string()));
        }
        Formula::Tptl(g) => {
            rows.push(("only_future", g.uses_only_future().to_string()));
            rows.push(("freeze_variables", g.frozen_vars().len().to_string()));
            rows.push(("modal_depth", g.modal_depth().to_string()));
            rows.push(("modal_count", g.modal_count().to_string()));
        }
        Formula::Ttl(g) => {
            rows.push(("modal_depth", g.modal_depth().to_string()));
            rows.push(("modal_count", g.modal_count().to_string()));
        }
    }
    for (k, v) in rows {
        if porcelain {
            println!("{k}\t{v}");
        } else {
            println!("{k}: {v}");
        }
    }
    Ok(())
}

fn cmd_crosscheck(word0: &Path, word1: &Path, args: &GameArgs, porcelain: bool) -> Result<bool> {
    let (w0, w1) = (load_word(word0)?, load_word(word1)?);
    let menu = menu_for(args, &[&w0, &w1])?;
    let r = ef_crosscheck(&w0, &w1, args.rounds, &menu, args.variant)?;
    if porcelain {
        println!("game\t{}", r.game.winner);
        println!("signature_equivalent\t{}", r.signature_equivalent);
        println!("agree\t{}", r.agree());
    } else {
        println!("{r}");
    }
    Ok(r.agree() && r.trace_valid.is_ok())
}

fn run(cli: Cli) -> Result<bool> {
    let p = cli.porcelain;
    match &cli.command {
        Command::Eval {
            word,
            formula,
            logic,
            position,
        } => cmd_eval(word, formula, *logic, *position),
        Command::Translate {
            formula,
            literal,
            strict_punctuality,
        } => cmd_translate(formula, *literal, *strict_punctuality, p).map(|_| true),
        Command::Game {
            word0,
            word1,
            game,
            adjacency,
            start,
            tree,
            node_cap,
        } => cmd_game(word0, word1, game, *adjacency, start, *tree, *node_cap, p).map(|_| true),
        Command::Gen { case, params, out } => cmd_gen(*case, params, out, cli.seed).map(|_| true),
        Command::Check {
            case,
            params,
            small,
        } => cmd_check(case, params, *small, cli.seed, p),
        Command::Fragment { formula, logic } => cmd_fragment(formula, *logic, p).map(|_| true),
        Command::Crosscheck { word0, word1, game } => cmd_crosscheck(word0, word1, game, p),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
