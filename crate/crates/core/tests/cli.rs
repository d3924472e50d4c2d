use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use tempfile::TempDir;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_timed-logic"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn write(dir: &Path, name: &str, contents: &str) -> PathBuf {
    let p = dir.join(name);
    fs::write(&p, contents).unwrap();
    p
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

struct Files {
    _dir: TempDir,
    a1: PathBuf,
    b1: PathBuf,
    phi: PathBuf,
    dir: PathBuf,
}

fn integer_spaced_files() -> Files {
    let dir = TempDir::new().unwrap();
    let path = dir.path().to_path_buf();
    Files {
        a1: write(&path, "A1.word", "a 0\na 1\nc 7/2\n"),
        b1: write(&path, "B1.word", "a 0\na 1\nc 5/2\n"),
        phi: write(&path, "phi.mtl", "(F [0,inf) (and a (F (1,2) c)))\n"),
        dir: path,
        _dir: dir,
    }
}

#[test]
fn eval_exit_codes_follow_the_verdict() {
    let f = integer_spaced_files();
    let yes = run(&["eval", s(&f.b1), s(&f.phi)]);
    assert_eq!(stdout(&yes).trim(), "true");
    assert_eq!(yes.status.code(), Some(0));
    let no = run(&["eval", s(&f.a1), s(&f.phi)]);
    assert_eq!(stdout(&no).trim(), "false");
    assert_eq!(no.status.code(), Some(1));
}

#[test]
fn eval_rejects_malformed_interval() {
    let f = integer_spaced_files();
    let bad = write(&f.dir, "bad.mtl", "(F [2,1] a)");
    let out = run(&["eval", s(&f.b1), s(&bad)]);
    assert_eq!(out.status.code(), Some(2));
    assert!(!out.stderr.is_empty());
}

#[test]
fn eval_explains_unanchored_membership() {
    let f = integer_spaced_files();
    let late = write(&f.dir, "late.word", "a 1\n");
    let g = write(&f.dir, "g.ttl", "(freeze x (ev a (cmp T-x < 1)))");
    let out = run(&["eval", s(&late), s(&g)]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("start at 0"));
    let at = run(&["eval", s(&late), s(&g), "--position", "1"]);
    assert_eq!(at.status.code(), Some(0));
}

#[test]
fn eval_needs_a_known_logic() {
    let f = integer_spaced_files();
    let g = write(&f.dir, "phi.txt", "a");
    assert_eq!(run(&["eval", s(&f.b1), s(&g)]).status.code(), Some(2));
    let ok = run(&["eval", s(&f.b1), s(&g), "--logic", "mtl"]);
    assert_eq!(ok.status.code(), Some(0));
}

#[test]
fn game_on_identical_and_integer_spaced_words() {
    let f = integer_spaced_files();
    let same = run(&["game", s(&f.a1), s(&f.a1), "--rounds", "2"]);
    assert_eq!(stdout(&same).lines().next(), Some("duplicator"));
    let pair = run(&[
        "game",
        s(&f.a1),
        s(&f.b1),
        "--rounds",
        "2",
        "--menu",
        "bintk",
        "--k",
        "1",
        "--variant",
        "US",
    ]);
    assert_eq!(stdout(&pair).lines().next(), Some("duplicator"));
}

#[test]
fn zero_round_game_on_different_letters() {
    let dir = TempDir::new().unwrap();
    let a = write(dir.path(), "a.word", "a 0");
    let b = write(dir.path(), "b.word", "b 0");
    let out = run(&["game", s(&a), s(&b), "--rounds", "0"]);
    let text = stdout(&out);
    let lines: Vec<_> = text.lines().collect();
    assert_eq!(lines[0], "spoiler");
    assert!(lines[1].starts_with("ending:"), "no moves expected: {text}");
    let porcelain = stdout(&run(&[
        "--porcelain",
        "game",
        s(&a),
        s(&b),
        "--rounds",
        "0",
    ]));
    assert!(porcelain.starts_with("winner\tspoiler"));
    assert!(!porcelain.contains("move\t"));
}

#[test]
fn game_tree_is_printed_on_request() {
    let f = integer_spaced_files();
    let out = run(&[
        "game",
        s(&f.a1),
        s(&f.b1),
        "--rounds",
        "1",
        "--tree",
        "--node-cap",
        "20",
    ]);
    assert!(out.status.success());
    assert!(stdout(&out).lines().count() > 3);
}

#[test]
fn translate_reports_fragment_and_leaks() {
    let dir = TempDir::new().unwrap();
    let f = write(dir.path(), "f.ttl", "(sp (X (ev b (tt)) (top)))");
    let out = stdout(&run(&["--porcelain", "translate", s(&f)]));
    assert!(out.contains("unary\ttrue"), "{out}");
    assert!(out.contains("mode\tdefault"));

    let leak = write(
        dir.path(),
        "leak.ttl",
        "(freeze x (X (ev a (cmp x-T <= 0)) (top)))",
    );
    let out = stdout(&run(&["--porcelain", "translate", s(&leak)]));
    assert!(out.contains("punctual_leaks\t1"), "{out}");
    let strict = run(&["translate", s(&leak), "--strict-punctuality"]);
    assert_eq!(strict.status.code(), Some(2));

    let lit = stdout(&run(&["--porcelain", "translate", s(&f), "--literal"]));
    assert!(lit.contains("mode\tliteral"));
    let default_formula = out_line(&stdout(&run(&["--porcelain", "translate", s(&f)])));
    assert_ne!(out_line(&lit), default_formula);
}

fn out_line(porcelain: &str) -> String {
    porcelain
        .lines()
        .find_map(|l| l.strip_prefix("formula\t"))
        .unwrap()
        .to_string()
}

#[test]
fn gen_writes_two_words_and_one_formula() {
    let dir = TempDir::new().unwrap();
    let out = run(&[
        "gen",
        "thm5",
        "--n",
        "1",
        "--k",
        "1",
        "--out",
        s(dir.path()),
    ]);
    assert!(out.status.success());
    let mut names: Vec<_> = fs::read_dir(dir.path())
        .unwrap()
        .map(|e| e.unwrap().file_name().into_string().unwrap())
        .collect();
    names.sort();
    assert_eq!(names, ["A.word", "B.word", "phi.tptl"]);
    let verdict = run(&[
        "eval",
        s(&dir.path().join("A.word")),
        s(&dir.path().join("phi.tptl")),
    ]);
    assert_eq!(verdict.status.code(), Some(0));
}

#[test]
fn check_integer_spaced_case_has_three_subchecks() {
    let out = run(&["check", "thm2", "--m", "2", "--k", "1"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.starts_with("PASS thm2"));
    assert_eq!(text.lines().filter(|l| l.starts_with("  PASS ")).count(), 3);
}

#[test]
fn check_all_small_prints_every_edge() {
    let out = run(&["check", "all", "--small"]);
    assert_eq!(out.status.code(), Some(0), "{}", stdout(&out));
    let text = stdout(&out);
    let edges: Vec<_> = text
        .lines()
        .filter(|l| l.trim_start().starts_with("edge ") && l.starts_with("  "))
        .collect();
    assert_eq!(edges.len(), 7, "{text}");
    assert!(edges.iter().all(|l| l.ends_with(" supported")));
}

#[test]
fn check_output_is_deterministic_for_a_seed() {
    let a = stdout(&run(&["--seed", "5", "check", "ttl_ii", "--samples", "50"]));
    let b = stdout(&run(&["--seed", "5", "check", "ttl_ii", "--samples", "50"]));
    assert_eq!(a, b);
}

#[test]
fn unknown_case_is_an_error() {
    assert_eq!(run(&["check", "thm9"]).status.code(), Some(2));
    assert_eq!(run(&["check", "thm2", "--n", "3"]).status.code(), Some(2));
}

#[test]
fn fragment_names_the_logic() {
    let f = integer_spaced_files();
    let out = stdout(&run(&["fragment", s(&f.phi)]));
    assert!(out.contains("fragment: MITL[F,P]"), "{out}");
}

#[test]
fn crosscheck_agrees() {
    let f = integer_spaced_files();
    let out = run(&[
        "--porcelain",
        "crosscheck",
        s(&f.a1),
        s(&f.b1),
        "--rounds",
        "2",
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("agree\ttrue"));
}
