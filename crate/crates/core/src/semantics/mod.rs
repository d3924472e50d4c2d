//! Reference evaluators and the instantaneous/unitary reductions.

use thiserror::Error;

use crate::word::WordError;

pub mod mtl;
pub mod reductions;
pub mod table;
pub mod tptl;
pub mod ttl;

pub use mtl::{eval_mtl, lang_member_mtl, MtlEvaluator};
pub use reductions::{reduce_instantaneous, reduce_instantaneous_tptl, reduce_unitary};
pub use table::{sat_mtl, sat_tptl, sat_ttl};
pub use tptl::{eval_tptl, lang_member_tptl, TptlEvaluator};
pub use ttl::{eval_ttl, event_holds, lang_member_ttl, next_match, prev_match};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EvalError {
    #[error(transparent)]
    Word(#[from] WordError),
}
