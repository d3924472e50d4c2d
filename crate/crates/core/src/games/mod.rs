//! Ehrenfeucht–Fraïssé games for timed words and an independent formula oracle.

pub mod crosscheck;
pub mod menu;
pub mod signature;
pub mod solver;

pub use crosscheck::{ef_crosscheck, CrosscheckReport};
pub use menu::{build_menu, faithful_cap, IntervalMenu};
pub use signature::{signature_equivalence, SignatureResult, MAX_JOINT_POSITIONS};
pub use solver::{
    duplicator_wins, solve_with, validate_trace, AdjacencyRule, Direction, Ending, GameError,
    GameOutcome, GameSettings, GameSolver, MoveRecord, Part2, Player, StrategyNode, Variant,
    MAX_WORD_LEN,
};
