//! Differential checks of the compiler against direct TTL evaluation, node by node.

use std::fmt;

use super::posval::{compute_pos_val, Ancestry};
use super::translate::{PatchStats, TranslateError, TranslateOptions, Translator};
use crate::logic::{classify_formula, Fragment, GuardedEvent, Ttl, TtlKind, Valuation};
use crate::semantics::{eval_ttl, event_holds, EvalError, MtlEvaluator};
use crate::word::{TimedWord, WordError};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CheckError {
    #[error(transparent)]
    Word(#[from] WordError),
    #[error(transparent)]
    Translate(#[from] TranslateError),
}

impl From<EvalError> for CheckError {
    fn from(e: EvalError) -> Self {
        match e {
            EvalError::Word(w) => CheckError::Word(w),
        }
    }
}

#[derive(Debug, Clone)]
pub struct Counterexample {
    pub word: TimedWord,
    pub ttl_value: bool,
    pub mtl_value: bool,
    /// Innermost subformula whose compiled form disagrees at its own position.
    pub offending: Option<String>,
}

#[derive(Debug, Clone)]
pub struct DifferentialReport {
    pub checked: usize,
    pub counterexamples: Vec<Counterexample>,
    pub fragment: Fragment,
    pub stats: PatchStats,
}

impl DifferentialReport {
    pub fn passed(&self) -> bool {
        self.counterexamples.is_empty()
    }
}

impl fmt::Display for DifferentialReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} words checked, {} counterexamples; target {}; {}",
            self.checked,
            self.counterexamples.len(),
            self.fragment.logic_name(),
            self.stats
        )?;
        for c in &self.counterexamples {
            write!(
                f,
                "\n  word {:?}: ttl {} mtl {}",
                c.word.serialize().replace('\n', " | "),
                c.ttl_value,
                c.mtl_value
            )?;
            if let Some(o) = &c.offending {
                write!(f, " at {o}")?;
            }
        }
        Ok(())
    }
}

/// Compares `ρ,1,ν₀ ⊨ f` with `ρ,1 ⊨ β(f)` on every word.
pub fn differential_check(
    f: &Ttl,
    words: &[TimedWord],
    options: TranslateOptions,
) -> Result<DifferentialReport, CheckError> {
    let t = Translator::new(f, options)?;
    let beta = t.beta(f.id).expect("root compiled").clone();
    let mut counterexamples = Vec::new();
    for w in words {
        w.require_anchored()?;
        let expected = eval_ttl(w, 1, &Valuation::initial(), f)?;
        let got = MtlEvaluator::new(w).eval(1, &beta);
        if expected != got {
            counterexamples.push(Counterexample {
                word: w.clone(),
                ttl_value: expected,
                mtl_value: got,
                offending: offending_node(w, f, &t)?,
            });
        }
    }
    Ok(DifferentialReport {
        checked: words.len(),
        counterexamples,
        fragment: classify_formula(&beta),
        stats: t.stats(),
    })
}

fn post_order(f: &Ttl) -> Vec<&Ttl> {
    let mut out = Vec::new();
    fn walk<'a>(f: &'a Ttl, out: &mut Vec<&'a Ttl>) {
        for c in f.children() {
            walk(c, out);
        }
        out.push(f);
    }
    walk(f, &mut out);
    out
}

fn offending_node(w: &TimedWord, f: &Ttl, t: &Translator) -> Result<Option<String>, CheckError> {
    let info = compute_pos_val(w, f)?;
    let mut ev = MtlEvaluator::new(w);
    for node in post_order(f) {
        let Some(p) = info.pos(node.id) else { continue };
        let nu = info.val(node.id).expect("valuation at reached node");
        let truth = eval_ttl(w, p, nu, node)?;
        let beta = t.beta(node.id).expect("node compiled");
        if ev.eval(p, beta) != truth {
            return Ok(Some(node.to_string()));
        }
    }
    Ok(None)
}

/// Every reached node's valuation maps each variable to the timestamp at its binder's position.
pub fn check_valuations(w: &TimedWord, f: &Ttl) -> Result<Vec<String>, WordError> {
    let info = compute_pos_val(w, f)?;
    let anc = Ancestry::of(f);
    let mut vars: Vec<_> = f
        .nodes()
        .iter()
        .filter_map(|n| match &n.kind {
            TtlKind::Freeze(x, _) => Some(x.clone()),
            _ => None,
        })
        .chain(
            f.guarded_events()
                .iter()
                .flat_map(|t| t.guard.vars().cloned().collect::<Vec<_>>()),
        )
        .collect();
    vars.sort();
    vars.dedup();
    let mut failures = Vec::new();
    for node in f.nodes() {
        if info.pos(node.id).is_none() {
            continue;
        }
        let nu = info.val(node.id).expect("valuation at reached node");
        for x in &vars {
            let binder = anc.anc(node.id, x);
            let p = info
                .pos(binder)
                .expect("binders of reached nodes are reached");
            if &nu.get(x) != w.time(p) {
                failures.push(format!(
                    "{node}: {x} = {} but binder at position {p}",
                    nu.get(x)
                ));
            }
        }
    }
    Ok(failures)
}

/// Every node's characterizer holds exactly at the node's position (nowhere when unreached).
pub fn check_characterizers(
    w: &TimedWord,
    f: &Ttl,
    t: &Translator,
) -> Result<Vec<String>, WordError> {
    let info = compute_pos_val(w, f)?;
    let mut ev = MtlEvaluator::new(w);
    let mut failures = Vec::new();
    for node in f.nodes() {
        let alpha = t.alpha(node.id).expect("node compiled");
        let holds: Vec<usize> = w.positions().filter(|&j| ev.eval(j, alpha)).collect();
        let expected: Vec<usize> = info.pos(node.id).into_iter().collect();
        if holds != expected {
            failures.push(format!(
                "{node}: characterizer holds at {holds:?}, expected {expected:?}"
            ));
        }
    }
    Ok(failures)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BoundaryKind {
    /// The binder sits at the position being tested.
    SamePosition,
    /// The binder lies on the side the one-sided table does not look at.
    OppositeSide,
}

/// A place where the one-sided guard table alone gives the wrong answer.
#[derive(Debug, Clone)]
pub struct BoundaryCase {
    pub node: String,
    pub position: usize,
    pub kind: BoundaryKind,
    /// The patched translation gives the right answer here.
    pub patched_ok: bool,
}

#[derive(Debug, Clone, Default)]
pub struct EventCheck {
    pub checked: usize,
    pub failures: Vec<String>,
    pub boundary_cases: Vec<BoundaryCase>,
}

/// `ρ,i,val(η) ⊨ θ` against `ρ,i ⊨ CF(θ,η)` for every guarded event of a reached node and every
/// position; mismatches of the unpatched table are itemized separately.
pub fn check_event_formulas(
    w: &TimedWord,
    f: &Ttl,
    t: &mut Translator,
) -> Result<EventCheck, WordError> {
    let info = compute_pos_val(w, f)?;
    let anc = Ancestry::of(f);
    let mut report = EventCheck::default();
    let nodes: Vec<(&Ttl, &GuardedEvent)> = f
        .nodes()
        .into_iter()
        .filter_map(|n| match &n.kind {
            TtlKind::Event(theta) | TtlKind::Next(theta, _) | TtlKind::Prev(theta, _) => {
                Some((n, theta))
            }
            _ => None,
        })
        .collect();
    for (node, theta) in nodes {
        if info.pos(node.id).is_none() {
            continue;
        }
        let nu = info.val(node.id).expect("valuation at reached node");
        let patched = t.cf(theta, node.id, true);
        let literal = t.cf(theta, node.id, false);
        let mut ev = MtlEvaluator::new(w);
        for i in w.positions() {
            report.checked += 1;
            let truth = event_holds(w, i, nu, theta);
            let patched_value = ev.eval(i, &patched);
            if patched_value != truth {
                report
                    .failures
                    .push(format!("{node} at position {i}: expected {truth}"));
            }
            if ev.eval(i, &literal) != truth {
                let same = theta
                    .guard
                    .vars()
                    .any(|x| info.pos(anc.anc(node.id, x)) == Some(i));
                report.boundary_cases.push(BoundaryCase {
                    node: node.to_string(),
                    position: i,
                    kind: if same {
                        BoundaryKind::SamePosition
                    } else {
                        BoundaryKind::OppositeSide
                    },
                    patched_ok: patched_value == truth,
                });
            }
        }
    }
    Ok(report)
}

/// Node-level agreement between each subformula's truth at its position and its compiled form.
pub fn check_beta_nodes(w: &TimedWord, f: &Ttl, t: &Translator) -> Result<Vec<String>, CheckError> {
    let info = compute_pos_val(w, f)?;
    let mut ev = MtlEvaluator::new(w);
    let mut failures = Vec::new();
    for node in f.nodes() {
        let beta = t.beta(node.id).expect("node compiled");
        let holds: Vec<usize> = w.positions().filter(|&j| ev.eval(j, beta)).collect();
        let expected: Vec<usize> = match info.pos(node.id) {
            Some(p) => {
                let nu = info.val(node.id).expect("valuation at reached node");
                if eval_ttl(w, p, nu, node)? {
                    vec![p]
                } else {
                    Vec::new()
                }
            }
            None => Vec::new(),
        };
        if holds != expected {
            failures.push(format!(
                "{node}: compiled form holds at {holds:?}, expected {expected:?}"
            ));
        }
    }
    Ok(failures)
}

/// Helper for callers holding only a formula: compile and run all node-level checks on `w`.
pub fn node_checks(
    w: &TimedWord,
    f: &Ttl,
    options: TranslateOptions,
) -> Result<NodeCheckReport, CheckError> {
    let mut t = Translator::new(f, options)?;
    Ok(NodeCheckReport {
        valuations: check_valuations(w, f)?,
        characterizers: check_characterizers(w, f, &t)?,
        events: check_event_formulas(w, f, &mut t)?,
        beta_nodes: check_beta_nodes(w, f, &t)?,
    })
}

#[derive(Debug, Clone)]
pub struct NodeCheckReport {
    pub valuations: Vec<String>,
    pub characterizers: Vec<String>,
    pub events: EventCheck,
    pub beta_nodes: Vec<String>,
}

impl NodeCheckReport {
    pub fn passed(&self) -> bool {
        self.valuations.is_empty()
            && self.characterizers.is_empty()
            && self.events.failures.is_empty()
            && self.beta_nodes.is_empty()
            && self.events.boundary_cases.iter().all(|c| c.patched_ok)
    }
}
