//! Witness word families for the separation results and a runner that re-checks their evidence.

mod generators;
mod runner;

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

pub use crate::random::{gen_instantaneous, gen_unitary};
pub use generators::{
    gen_thm2, gen_thm3, gen_thm5, gen_ttl_i, gen_ttl_ii, integral_collisions, thm5_formula,
    unreached_band, GameSpec, PairCase, TtlICase, TtlIICase,
};
pub use runner::{export_case, run_separation, CheckLine, ExportFile, SeparationReport};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SeparationError {
    #[error("parameter {name} must be at least {min}, got {value}")]
    Parameter {
        name: &'static str,
        min: u64,
        value: u64,
    },
    #[error("events {0} and {1} lie an exact integer apart under every offset schedule")]
    IntegralCollision(usize, usize),
}

/// Identifier of a separation experiment, as used on the command line.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CaseId {
    Thm2,
    Thm3,
    Thm5,
    TtlI,
    TtlII,
    Instantaneous,
    Unitary,
}

impl CaseId {
    pub const ALL: [CaseId; 7] = [
        CaseId::Thm2,
        CaseId::Thm3,
        CaseId::Thm5,
        CaseId::TtlI,
        CaseId::TtlII,
        CaseId::Instantaneous,
        CaseId::Unitary,
    ];

    pub fn name(self) -> &'static str {
        match self {
            CaseId::Thm2 => "thm2",
            CaseId::Thm3 => "thm3",
            CaseId::Thm5 => "thm5",
            CaseId::TtlI => "ttl_i",
            CaseId::TtlII => "ttl_ii",
            CaseId::Instantaneous => "instantaneous",
            CaseId::Unitary => "unitary",
        }
    }

    /// The non-inclusion the case provides evidence for.
    pub fn edge(self) -> &'static str {
        match self {
            CaseId::Thm2 => "MITL[F,P] ⊄ BMTL[U,S]",
            CaseId::Thm3 => "BMTL[F,P] ⊄ MITL[U,S]",
            CaseId::Thm5 => "TPTL[F] ⊄ MTL[U,S]",
            CaseId::TtlI => "BMTL[F,P] ⊄ TTL",
            CaseId::TtlII => "MITL[F,P] ⊄ TTL",
            CaseId::Instantaneous => "BMTL[U,S] ⊄ TPTL[F,P] (weakly monotonic words)",
            CaseId::Unitary => "BMTL[U,S] ⊄ MTL[F,P] (strictly monotonic words)",
        }
    }
}

impl fmt::Display for CaseId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for CaseId {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        CaseId::ALL
            .into_iter()
            .find(|c| c.name() == s)
            .ok_or_else(|| {
                let names: Vec<_> = CaseId::ALL.iter().map(|c| c.name()).collect();
                format!("unknown case `{s}` (expected one of {})", names.join(", "))
            })
    }
}

/// One experiment with its parameters. Sampling cases carry their sample count and seed so that
/// every run is reproducible.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SeparationCase {
    /// Rounds `m` and constant bound `k`; the words use `n = m·k`.
    Thm2 {
        m: u64,
        k: u64,
    },
    /// Rounds `r`; the words are the `2r` instance.
    Thm3 {
        rounds: u64,
    },
    Thm5 {
        n: u64,
        k: u64,
    },
    /// Checks every modal depth from 1 to `n`.
    TtlI {
        n: u64,
        samples: usize,
        seed: u64,
    },
    TtlII {
        m: u64,
        samples: usize,
        seed: u64,
    },
    Instantaneous {
        samples: usize,
        seed: u64,
    },
    Unitary {
        samples: usize,
        seed: u64,
    },
}

impl SeparationCase {
    pub fn id(&self) -> CaseId {
        match self {
            SeparationCase::Thm2 { .. } => CaseId::Thm2,
            SeparationCase::Thm3 { .. } => CaseId::Thm3,
            SeparationCase::Thm5 { .. } => CaseId::Thm5,
            SeparationCase::TtlI { .. } => CaseId::TtlI,
            SeparationCase::TtlII { .. } => CaseId::TtlII,
            SeparationCase::Instantaneous { .. } => CaseId::Instantaneous,
            SeparationCase::Unitary { .. } => CaseId::Unitary,
        }
    }

    /// The case at its smallest parameters.
    pub fn smallest(id: CaseId, seed: u64) -> Self {
        match id {
            CaseId::Thm2 => SeparationCase::Thm2 { m: 1, k: 1 },
            CaseId::Thm3 => SeparationCase::Thm3 { rounds: 1 },
            CaseId::Thm5 => SeparationCase::Thm5 { n: 1, k: 1 },
            CaseId::TtlI => SeparationCase::TtlI {
                n: 1,
                samples: 200,
                seed,
            },
            CaseId::TtlII => SeparationCase::TtlII {
                m: 1,
                samples: 200,
                seed,
            },
            CaseId::Instantaneous => SeparationCase::Instantaneous { samples: 200, seed },
            CaseId::Unitary => SeparationCase::Unitary { samples: 200, seed },
        }
    }

    pub fn params(&self) -> String {
        match self {
            SeparationCase::Thm2 { m, k } => format!("m={m} k={k}"),
            SeparationCase::Thm3 { rounds } => format!("r={rounds}"),
            SeparationCase::Thm5 { n, k } => format!("n={n} k={k}"),
            SeparationCase::TtlI { n, samples, seed } => {
                format!("n={n} samples={samples} seed={seed}")
            }
            SeparationCase::TtlII { m, samples, seed } => {
                format!("m={m} samples={samples} seed={seed}")
            }
            SeparationCase::Instantaneous { samples, seed }
            | SeparationCase::Unitary { samples, seed } => {
                format!("samples={samples} seed={seed}")
            }
        }
    }
}

impl fmt::Display for SeparationCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {}", self.id(), self.params())
    }
}
