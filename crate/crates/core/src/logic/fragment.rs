//! Syntactic measures: fragment classification, modal depth/count, constant truncation.

use std::fmt;
use std::sync::Arc;

use super::mtl::{Mtl, MtlKind};
use super::tptl::Tptl;
use super::ttl::Ttl;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Fragment {
    /// Only `F_I` / `P_I` modalities.
    pub unary: bool,
    /// No interval reaches `∞`.
    pub bounded: bool,
    /// No singular interval `[c,c]`.
    pub non_punctual: bool,
    pub max_constant: u64,
}

impl Fragment {
    /// Name of the smallest named fragment containing the formula.
    pub fn logic_name(&self) -> String {
        let base = match (self.bounded, self.non_punctual) {
            (true, true) => "BMITL",
            (true, false) => "BMTL",
            (false, true) => "MITL",
            (false, false) => "MTL",
        };
        let ops = if self.unary { "[F,P]" } else { "[U,S]" };
        format!("{base}{ops}")
    }
}

impl fmt::Display for Fragment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "unary={} bounded={} non_punctual={} max_constant={}",
            self.unary, self.bounded, self.non_punctual, self.max_constant
        )
    }
}

pub fn classify_formula(f: &Mtl) -> Fragment {
    let mut out = Fragment {
        unary: true,
        bounded: true,
        non_punctual: true,
        max_constant: 0,
    };
    let mut stack = vec![f];
    while let Some(n) = stack.pop() {
        match &n.kind {
            MtlKind::Until(..) | MtlKind::Since(..) => out.unary = false,
            _ => {}
        }
        if let Some(i) = n.interval() {
            out.bounded &= i.is_bounded();
            out.non_punctual &= !i.is_singular();
            out.max_constant = out.max_constant.max(i.max_constant());
        }
        stack.extend(n.children().into_iter().map(|c| c.as_ref()));
    }
    out
}

/// Modal depth and modal count of any of the three logics' formulas.
pub trait ModalMeasure {
    fn modal_depth(&self) -> usize;
    fn modal_count(&self) -> usize;
}

impl ModalMeasure for Mtl {
    fn modal_depth(&self) -> usize {
        let below = self
            .children()
            .iter()
            .map(|c| c.modal_depth())
            .max()
            .unwrap_or(0);
        below + usize::from(self.is_modal())
    }

    fn modal_count(&self) -> usize {
        usize::from(self.is_modal())
            + self
                .children()
                .iter()
                .map(|c| c.modal_count())
                .sum::<usize>()
    }
}

impl ModalMeasure for Tptl {
    fn modal_depth(&self) -> usize {
        let below = self
            .children()
            .iter()
            .map(|c| c.modal_depth())
            .max()
            .unwrap_or(0);
        below + usize::from(self.is_modal())
    }

    fn modal_count(&self) -> usize {
        usize::from(self.is_modal())
            + self
                .children()
                .iter()
                .map(|c| c.modal_count())
                .sum::<usize>()
    }
}

impl ModalMeasure for Ttl {
    fn modal_depth(&self) -> usize {
        let below = self
            .children()
            .iter()
            .map(|c| c.modal_depth())
            .max()
            .unwrap_or(0);
        below + usize::from(self.is_modal())
    }

    fn modal_count(&self) -> usize {
        usize::from(self.is_modal())
            + self
                .children()
                .iter()
                .map(|c| c.modal_count())
                .sum::<usize>()
    }
}

pub fn modal_depth<F: ModalMeasure>(f: &F) -> usize {
    f.modal_depth()
}

pub fn modal_count<F: ModalMeasure>(f: &F) -> usize {
    f.modal_count()
}

/// Replaces every interval constant above `n`, and every `∞`, by `n`. A modality whose interval
/// becomes empty is replaced by `(not (top))`.
pub fn truncate_constants(f: &Mtl, n: u64) -> Arc<Mtl> {
    let kids: Vec<Arc<Mtl>> = f
        .children()
        .iter()
        .map(|c| truncate_constants(c, n))
        .collect();
    let truncated = f.interval().map(|i| i.truncate(n));
    if let Some(None) = truncated {
        return Arc::new(Mtl::bottom());
    }
    let i = truncated.flatten();
    Arc::new(match &f.kind {
        MtlKind::Top => Mtl::top(),
        MtlKind::Atom(a) => Mtl::atom(a.clone()),
        MtlKind::Not(_) => Mtl::not(kids[0].clone()),
        MtlKind::And(..) => Mtl::and(kids[0].clone(), kids[1].clone()),
        MtlKind::Or(..) => Mtl::or(kids[0].clone(), kids[1].clone()),
        MtlKind::Until(..) => Mtl::until(i.unwrap(), kids[0].clone(), kids[1].clone()),
        MtlKind::Since(..) => Mtl::since(i.unwrap(), kids[0].clone(), kids[1].clone()),
        MtlKind::Future(..) => Mtl::future(i.unwrap(), kids[0].clone()),
        MtlKind::Past(..) => Mtl::past(i.unwrap(), kids[0].clone()),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::logic::parse::{parse_mtl, parse_ttl};

    fn classify(s: &str) -> Fragment {
        classify_formula(&parse_mtl(s).unwrap())
    }

    #[test]
    fn classification_examples() {
        assert_eq!(
            classify("(F [0,inf) (and a (F (1,2) c)))"),
            Fragment {
                unary: true,
                bounded: false,
                non_punctual: true,
                max_constant: 2
            }
        );
        assert_eq!(
            classify("(F (0,1) (and a (F [3,3] c)))"),
            Fragment {
                unary: true,
                bounded: true,
                non_punctual: false,
                max_constant: 3
            }
        );
        assert_eq!(
            classify("(U [0,0] a b)"),
            Fragment {
                unary: false,
                bounded: true,
                non_punctual: false,
                max_constant: 0
            }
        );
        assert_eq!(
            classify("(F [0,inf) (and a (F (1,2) c)))").logic_name(),
            "MITL[F,P]"
        );
    }

    #[test]
    fn depth_and_count() {
        let a = parse_mtl("a").unwrap();
        assert_eq!((modal_depth(&a), modal_count(&a)), (0, 0));
        let f = parse_mtl("(F [0,inf) (and a (F [0,inf) c)))").unwrap();
        assert_eq!((modal_depth(&f), modal_count(&f)), (2, 2));
        let t = parse_ttl("(freeze x (X (ev a (cmp x-T < 1)) (Y (ev b (cmp T-x > 0)) (top))))")
            .unwrap();
        assert_eq!((modal_depth(&t), modal_count(&t)), (2, 2));
    }

    #[test]
    fn truncation_examples() {
        let f = parse_mtl("(F (1,3) b)").unwrap();
        assert_eq!(truncate_constants(&f, 2).to_string(), "(F (1,2) b)");
        let f = parse_mtl("(F [0,inf) a)").unwrap();
        assert_eq!(truncate_constants(&f, 2).to_string(), "(F [0,2) a)");
        let f = parse_mtl("(F (2,3) b)").unwrap();
        assert_eq!(truncate_constants(&f, 2).to_string(), "(not (top))");
    }
}
