//! Pointwise timed temporal logics over finite timed words.

pub mod games;
pub mod logic;
pub mod random;
pub mod rational;
pub mod semantics;
pub mod separations;
pub mod ttl2mitl;
pub mod word;
