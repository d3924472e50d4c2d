//! TTL to unary MTL compilation and its validation.

pub mod check;
pub mod posval;
pub mod translate;

pub use check::{
    check_beta_nodes, check_characterizers, check_event_formulas, check_valuations,
    differential_check, node_checks, BoundaryCase, BoundaryKind, CheckError, Counterexample,
    DifferentialReport, EventCheck, NodeCheckReport,
};
pub use posval::{
    compute_pos_val, compute_pos_val_with, reach_set, reach_set_unanchored, Ancestry, ParseInfo,
};
pub use translate::{
    beta, has_zero_nonstrict_guard, translate, PatchStats, TranslateError, TranslateOptions,
    Translation, Translator,
};
