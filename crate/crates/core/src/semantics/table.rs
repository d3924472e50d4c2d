//! Bottom-up satisfaction tables, written independently of the recursive evaluators so the two
//! can be checked against each other.
//!
//! Every subformula gets a table mapping each assignment of its free variables to a bit per
//! position. Variables only ever hold 0 or an event timestamp, so assignments range over the
//! finite set of those values.

use std::collections::{BTreeSet, HashMap};

use crate::logic::{
    CmpOp, Guard, GuardAtom, Mtl, MtlKind, Orientation, Tptl, TptlKind, Ttl, TtlKind, Var,
};
use crate::rational::Rational;
use crate::word::TimedWord;

/// Satisfaction vector of an MTL formula (index `i - 1` holds position `i`).
pub fn sat_mtl(w: &TimedWord, f: &Mtl) -> Vec<bool> {
    let mut memo = HashMap::new();
    sat_mtl_memo(w, f, &mut memo)
}

fn sat_mtl_memo(w: &TimedWord, f: &Mtl, memo: &mut HashMap<usize, Vec<bool>>) -> Vec<bool> {
    let key = f as *const Mtl as usize;
    if let Some(v) = memo.get(&key) {
        return v.clone();
    }
    let n = w.len();
    let v = match &f.kind {
        MtlKind::Top => vec![true; n],
        MtlKind::Atom(a) => w.events().iter().map(|e| &e.letter == a).collect(),
        MtlKind::Not(g) => sat_mtl_memo(w, g, memo).into_iter().map(|b| !b).collect(),
        MtlKind::And(l, r) => zip(
            &sat_mtl_memo(w, l, memo),
            &sat_mtl_memo(w, r, memo),
            |a, b| a && b,
        ),
        MtlKind::Or(l, r) => zip(
            &sat_mtl_memo(w, l, memo),
            &sat_mtl_memo(w, r, memo),
            |a, b| a || b,
        ),
        MtlKind::Until(iv, l, r) => {
            let (l, r) = (sat_mtl_memo(w, l, memo), sat_mtl_memo(w, r, memo));
            until_vec(&l, &r, |i, j| iv.contains(&(w.time(j + 1) - w.time(i + 1))))
        }
        MtlKind::Future(iv, r) => {
            let r = sat_mtl_memo(w, r, memo);
            until_vec(&vec![true; n], &r, |i, j| {
                iv.contains(&(w.time(j + 1) - w.time(i + 1)))
            })
        }
        MtlKind::Since(iv, l, r) => {
            let (l, r) = (sat_mtl_memo(w, l, memo), sat_mtl_memo(w, r, memo));
            since_vec(&l, &r, |i, j| iv.contains(&(w.time(i + 1) - w.time(j + 1))))
        }
        MtlKind::Past(iv, r) => {
            let r = sat_mtl_memo(w, r, memo);
            since_vec(&vec![true; n], &r, |i, j| {
                iv.contains(&(w.time(i + 1) - w.time(j + 1)))
            })
        }
    };
    memo.insert(key, v.clone());
    v
}

fn zip(a: &[bool], b: &[bool], op: impl Fn(bool, bool) -> bool) -> Vec<bool> {
    a.iter().zip(b).map(|(&x, &y)| op(x, y)).collect()
}

/// 0-based indices. For each `i`, the witness `j` may range up to and including the first index
/// after `i` where `l` fails.
fn until_vec(l: &[bool], r: &[bool], timed: impl Fn(usize, usize) -> bool) -> Vec<bool> {
    let n = l.len();
    let mut first_fail = vec![n; n];
    let mut next = n;
    for i in (0..n).rev() {
        first_fail[i] = next;
        if !l[i] {
            next = i;
        }
    }
    (0..n)
        .map(|i| {
            let stop = first_fail[i].min(n - 1);
            (i + 1..=stop).any(|j| r[j] && timed(i, j))
        })
        .collect()
}

fn since_vec(l: &[bool], r: &[bool], timed: impl Fn(usize, usize) -> bool) -> Vec<bool> {
    let n = l.len();
    let mut last_fail: Vec<Option<usize>> = vec![None; n];
    let mut prev = None;
    for i in 0..n {
        last_fail[i] = prev;
        if !l[i] {
            prev = Some(i);
        }
    }
    (0..n)
        .map(|i| {
            let start = last_fail[i].unwrap_or(0);
            (start..i).any(|j| r[j] && timed(i, j))
        })
        .collect()
}

/// Values a freeze variable can hold on `w`: 0 and the distinct timestamps.
struct Domain {
    values: Vec<Rational>,
}

impl Domain {
    fn new(w: &TimedWord) -> Self {
        let mut values: Vec<Rational> = vec![Rational::from_integer(0.into())];
        for e in w.events() {
            if !values.contains(&e.time) {
                values.push(e.time.clone());
            }
        }
        Domain { values }
    }

    fn index_of(&self, t: &Rational) -> usize {
        self.values
            .iter()
            .position(|v| v == t)
            .expect("timestamp in domain")
    }
}

/// One row per assignment of `vars` (each an index into the domain).
struct Table {
    vars: Vec<Var>,
    rows: HashMap<Vec<usize>, Vec<bool>>,
}

impl Table {
    fn row(&self, assign: impl Fn(&Var) -> usize) -> &Vec<bool> {
        let key: Vec<usize> = self.vars.iter().map(assign).collect();
        &self.rows[&key]
    }
}

fn assignments(nvars: usize, dom: usize) -> Vec<Vec<usize>> {
    let mut out = vec![vec![]];
    for _ in 0..nvars {
        out = out
            .into_iter()
            .flat_map(|a| {
                (0..dom).map(move |d| {
                    let mut b = a.clone();
                    b.push(d);
                    b
                })
            })
            .collect();
    }
    out
}

fn union_vars<'a>(parts: impl IntoIterator<Item = &'a [Var]>) -> Vec<Var> {
    let set: BTreeSet<Var> = parts.into_iter().flatten().cloned().collect();
    set.into_iter().collect()
}

fn lookup<'a>(vars: &'a [Var], key: &'a [usize]) -> impl Fn(&Var) -> usize + 'a {
    move |x| key[vars.iter().position(|v| v == x).expect("variable in scope")]
}

fn atom_holds(a: &GuardAtom, x: &Rational, t: &Rational) -> bool {
    let diff = match a.orientation {
        Orientation::VarMinusTime => x - t,
        Orientation::TimeMinusVar => t - x,
    };
    let c = Rational::from_integer(a.c.into());
    match a.op {
        CmpOp::Lt => diff < c,
        CmpOp::Le => diff <= c,
        CmpOp::Gt => diff > c,
        CmpOp::Ge => diff >= c,
        CmpOp::Eq => diff == c,
    }
}

fn guard_vars(g: &Guard) -> Vec<Var> {
    union_vars([g
        .atoms
        .iter()
        .map(|a| a.var.clone())
        .collect::<Vec<_>>()
        .as_slice()])
}

fn guard_table(
    w: &TimedWord,
    dom: &Domain,
    g: &Guard,
    letter: Option<&crate::word::Letter>,
) -> Table {
    let vars = guard_vars(g);
    let mut rows = HashMap::new();
    for key in assignments(vars.len(), dom.values.len()) {
        let val = lookup(&vars, &key);
        let row = w
            .events()
            .iter()
            .map(|e| {
                letter.is_none_or(|a| &e.letter == a)
                    && g.atoms
                        .iter()
                        .all(|a| atom_holds(a, &dom.values[val(&a.var)], &e.time))
            })
            .collect();
        rows.insert(key.clone(), row);
    }
    Table { vars, rows }
}

/// Combines child tables pointwise over the union of their variables.
fn combine(dom: &Domain, kids: &[&Table], op: impl Fn(&[&Vec<bool>]) -> Vec<bool>) -> Table {
    let vars = union_vars(kids.iter().map(|t| t.vars.as_slice()));
    let mut rows = HashMap::new();
    for key in assignments(vars.len(), dom.values.len()) {
        let val = lookup(&vars, &key);
        let child_rows: Vec<&Vec<bool>> = kids.iter().map(|t| t.row(&val)).collect();
        rows.insert(key.clone(), op(&child_rows));
    }
    Table { vars, rows }
}

fn freeze_table(w: &TimedWord, dom: &Domain, x: &Var, body: &Table) -> Table {
    let vars: Vec<Var> = body.vars.iter().filter(|v| *v != x).cloned().collect();
    let mut rows = HashMap::new();
    for key in assignments(vars.len(), dom.values.len()) {
        let outer = lookup(&vars, &key);
        let row = (0..w.len())
            .map(|i| {
                let here = dom.index_of(w.time(i + 1));
                body.row(|v| if v == x { here } else { outer(v) })[i]
            })
            .collect();
        rows.insert(key.clone(), row);
    }
    Table { vars, rows }
}

fn tptl_table(w: &TimedWord, dom: &Domain, f: &Tptl) -> Table {
    let n = w.len();
    let all = vec![true; n];
    match &f.kind {
        TptlKind::Top => Table {
            vars: vec![],
            rows: HashMap::from([(vec![], all)]),
        },
        TptlKind::Atom(a) => Table {
            vars: vec![],
            rows: HashMap::from([(vec![], w.events().iter().map(|e| &e.letter == a).collect())]),
        },
        TptlKind::Constraint(g) => guard_table(w, dom, g, None),
        TptlKind::Not(g) => {
            let t = tptl_table(w, dom, g);
            combine(dom, &[&t], |r| r[0].iter().map(|b| !b).collect())
        }
        TptlKind::And(l, r) | TptlKind::Or(l, r) => {
            let conj = matches!(f.kind, TptlKind::And(..));
            let (tl, tr) = (tptl_table(w, dom, l), tptl_table(w, dom, r));
            combine(dom, &[&tl, &tr], |r| {
                zip(r[0], r[1], |a, b| if conj { a && b } else { a || b })
            })
        }
        TptlKind::Until(l, r) => {
            let (tl, tr) = (tptl_table(w, dom, l), tptl_table(w, dom, r));
            combine(dom, &[&tl, &tr], |r| until_vec(r[0], r[1], |_, _| true))
        }
        TptlKind::Since(l, r) => {
            let (tl, tr) = (tptl_table(w, dom, l), tptl_table(w, dom, r));
            combine(dom, &[&tl, &tr], |r| since_vec(r[0], r[1], |_, _| true))
        }
        TptlKind::Future(g) => {
            let t = tptl_table(w, dom, g);
            combine(dom, &[&t], |r| until_vec(&all, r[0], |_, _| true))
        }
        TptlKind::Past(g) => {
            let t = tptl_table(w, dom, g);
            combine(dom, &[&t], |r| since_vec(&all, r[0], |_, _| true))
        }
        TptlKind::Freeze(x, g) => {
            let body = tptl_table(w, dom, g);
            freeze_table(w, dom, x, &body)
        }
    }
}

/// Satisfaction vector of a TPTL formula under the initial valuation.
pub fn sat_tptl(w: &TimedWord, f: &Tptl) -> Vec<bool> {
    let dom = Domain::new(w);
    tptl_table(w, &dom, f).row(|_| 0).clone()
}

fn ttl_table(w: &TimedWord, dom: &Domain, f: &Ttl) -> Table {
    let n = w.len();
    match &f.kind {
        TtlKind::Top => Table {
            vars: vec![],
            rows: HashMap::from([(vec![], vec![true; n])]),
        },
        TtlKind::Event(theta) => guard_table(w, dom, &theta.guard, Some(&theta.letter)),
        TtlKind::Sp(g) | TtlKind::Ep(g) => {
            let at = if matches!(f.kind, TtlKind::Sp(_)) {
                0
            } else {
                n - 1
            };
            let t = ttl_table(w, dom, g);
            combine(dom, &[&t], |r| vec![r[0][at]; n])
        }
        TtlKind::Next(theta, g) | TtlKind::Prev(theta, g) => {
            let forward = matches!(f.kind, TtlKind::Next(..));
            let te = guard_table(w, dom, &theta.guard, Some(&theta.letter));
            let tg = ttl_table(w, dom, g);
            combine(dom, &[&te, &tg], |r| {
                let (ev, body) = (r[0], r[1]);
                (0..n)
                    .map(|i| {
                        let hit = if forward {
                            (i + 1..n).find(|&j| ev[j])
                        } else {
                            (0..i).rev().find(|&j| ev[j])
                        };
                        hit.is_some_and(|j| body[j])
                    })
                    .collect()
            })
        }
        TtlKind::Freeze(x, g) => {
            let body = ttl_table(w, dom, g);
            freeze_table(w, dom, x, &body)
        }
        TtlKind::Not(g) => {
            let t = ttl_table(w, dom, g);
            combine(dom, &[&t], |r| r[0].iter().map(|b| !b).collect())
        }
        TtlKind::And(l, r) | TtlKind::Or(l, r) => {
            let conj = matches!(f.kind, TtlKind::And(..));
            let (tl, tr) = (ttl_table(w, dom, l), ttl_table(w, dom, r));
            combine(dom, &[&tl, &tr], |r| {
                zip(r[0], r[1], |a, b| if conj { a && b } else { a || b })
            })
        }
    }
}

/// Satisfaction vector of a TTL formula under the initial valuation.
pub fn sat_ttl(w: &TimedWord, f: &Ttl) -> Vec<bool> {
    let dom = Domain::new(w);
    ttl_table(w, &dom, f).row(|_| 0).clone()
}
