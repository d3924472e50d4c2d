//! Rewritings that are sound over instantaneous words (all timestamps 0) and unitary words (all
//! timestamps distinct and inside (0,1)).
//!
//! A modality that can never fire becomes `M ∧ ¬M`, where `M` is the same modality with the
//! surviving interval. That is false everywhere while keeping the modal depth and the
//! unary/binary shape of the input.

use std::sync::Arc;

use crate::logic::{Interval, Mtl, MtlKind, Tptl, TptlKind};

/// Which interval survives a reduction, and when an interval is replaced by it.
#[derive(Debug, Clone, Copy)]
enum Target {
    /// `[0,0]`, for intervals containing 0.
    Instantaneous,
    /// `(0,1)`, for intervals including `(0,1)`.
    Unitary,
}

impl Target {
    fn interval(self) -> Interval {
        match self {
            Target::Instantaneous => Interval::point(0),
            Target::Unitary => Interval::open(0, 1),
        }
    }

    fn keeps(self, i: &Interval) -> bool {
        match self {
            Target::Instantaneous => i.contains_zero(),
            Target::Unitary => i.includes(&Interval::open(0, 1)),
        }
    }
}

fn contradiction(m: Mtl) -> Mtl {
    let m = Arc::new(m);
    Mtl::and(m.clone(), Mtl::not(m))
}

fn reduce_mtl(f: &Mtl, target: Target) -> Arc<Mtl> {
    let kids: Vec<Arc<Mtl>> = f.children().iter().map(|c| reduce_mtl(c, target)).collect();
    let j = target.interval();
    let modal = |m: Mtl, i: &Interval| if target.keeps(i) { m } else { contradiction(m) };
    Arc::new(match &f.kind {
        MtlKind::Top => Mtl::top(),
        MtlKind::Atom(a) => Mtl::atom(a.clone()),
        MtlKind::Not(_) => Mtl::not(kids[0].clone()),
        MtlKind::And(..) => Mtl::and(kids[0].clone(), kids[1].clone()),
        MtlKind::Or(..) => Mtl::or(kids[0].clone(), kids[1].clone()),
        MtlKind::Until(i, ..) => modal(Mtl::until(j, kids[0].clone(), kids[1].clone()), i),
        MtlKind::Since(i, ..) => modal(Mtl::since(j, kids[0].clone(), kids[1].clone()), i),
        MtlKind::Future(i, _) => modal(Mtl::future(j, kids[0].clone()), i),
        MtlKind::Past(i, _) => modal(Mtl::past(j, kids[0].clone()), i),
    })
}

/// Over instantaneous words: `U_I` with `0 ∈ I` becomes `U_[0,0]`, otherwise false.
pub fn reduce_instantaneous(f: &Mtl) -> Arc<Mtl> {
    reduce_mtl(f, Target::Instantaneous)
}

/// Over unitary words: `U_I` with `(0,1) ⊆ I` becomes `U_(0,1)`, otherwise false.
pub fn reduce_unitary(f: &Mtl) -> Arc<Mtl> {
    reduce_mtl(f, Target::Unitary)
}

/// TPTL over instantaneous words: every guard is decided with all variables and the current
/// time at 0, freeze quantifiers vanish and untimed modalities get the interval `[0,0]`.
pub fn reduce_instantaneous_tptl(f: &Tptl) -> Arc<Mtl> {
    let j = Interval::point(0);
    let kids: Vec<Arc<Mtl>> = f
        .children()
        .iter()
        .map(|c| reduce_instantaneous_tptl(c))
        .collect();
    Arc::new(match &f.kind {
        TptlKind::Top => Mtl::top(),
        TptlKind::Atom(a) => Mtl::atom(a.clone()),
        TptlKind::Constraint(g) => {
            if g.atoms.iter().all(|a| a.holds_at_zero_difference()) {
                Mtl::top()
            } else {
                Mtl::bottom()
            }
        }
        TptlKind::Freeze(..) => return kids[0].clone(),
        TptlKind::Not(_) => Mtl::not(kids[0].clone()),
        TptlKind::And(..) => Mtl::and(kids[0].clone(), kids[1].clone()),
        TptlKind::Or(..) => Mtl::or(kids[0].clone(), kids[1].clone()),
        TptlKind::Until(..) => Mtl::until(j, kids[0].clone(), kids[1].clone()),
        TptlKind::Since(..) => Mtl::since(j, kids[0].clone(), kids[1].clone()),
        TptlKind::Future(_) => Mtl::future(j, kids[0].clone()),
        TptlKind::Past(_) => Mtl::past(j, kids[0].clone()),
    })
}
