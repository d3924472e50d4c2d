//! Formula syntax for MTL, TPTL and TTL.

use std::sync::atomic::{AtomicU64, Ordering};

pub mod fragment;
pub mod guard;
pub mod interval;
pub mod mtl;
pub mod parse;
pub mod tptl;
pub mod ttl;

pub use fragment::{
    classify_formula, modal_count, modal_depth, truncate_constants, Fragment, ModalMeasure,
};
pub use guard::{
    eval_guard, normalize_guard, CmpOp, Guard, GuardAtom, Orientation, Valuation, Var,
};
pub use interval::{Interval, IntervalError, IntervalFamily};
pub use mtl::{Mtl, MtlKind};
pub use parse::{
    parse_formula, parse_guard, parse_interval, parse_mtl, parse_tptl, parse_ttl, print_formula,
    Formula, Logic, ParseError,
};
pub use tptl::{Tptl, TptlKind};
pub use ttl::{GuardedEvent, Ttl, TtlKind};

/// Process-wide unique identity of an AST node.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct NodeId(u64);

static NEXT_ID: AtomicU64 = AtomicU64::new(1);

impl NodeId {
    pub fn fresh() -> Self {
        NodeId(NEXT_ID.fetch_add(1, Ordering::Relaxed))
    }

    pub fn raw(self) -> u64 {
        self.0
    }
}

impl std::fmt::Display for NodeId {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "#{}", self.0)
    }
}
