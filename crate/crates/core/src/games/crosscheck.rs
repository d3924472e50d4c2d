use std::fmt;
use std::sync::Arc;

use super::menu::IntervalMenu;
use super::signature::signature_equivalence;
use super::solver::{
    duplicator_wins, validate_trace, GameError, GameOutcome, GameSettings, Player, Variant,
};
use crate::logic::Mtl;
use crate::word::TimedWord;

/// Both verdicts on one instance, from the game solver and from the signature oracle.
#[derive(Debug, Clone)]
pub struct CrosscheckReport {
    pub rounds: usize,
    pub variant: Variant,
    pub game: GameOutcome,
    pub trace_valid: Result<(), String>,
    pub signature_equivalent: bool,
    pub witness: Option<Arc<Mtl>>,
    /// The menu's cap is large enough for both engines to speak for the whole family.
    pub in_cap: bool,
}

impl CrosscheckReport {
    pub fn agree(&self) -> bool {
        (self.game.winner == Player::Duplicator) == self.signature_equivalent
    }
}

impl fmt::Display for CrosscheckReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "variant {} rounds {}", self.variant, self.rounds)?;
        writeln!(f, "game: {} wins", self.game.winner)?;
        for mv in &self.game.principal_variation {
            writeln!(f, "  {mv}")?;
        }
        writeln!(
            f,
            "signature: {}",
            if self.signature_equivalent {
                "equivalent"
            } else {
                "inequivalent"
            }
        )?;
        if let Some(w) = &self.witness {
            writeln!(f, "witness: {w}")?;
        }
        if let Err(e) = &self.trace_valid {
            writeln!(f, "trace replay failed: {e}")?;
        }
        if !self.in_cap {
            writeln!(f, "note: menu cap below the words' time span")?;
        }
        write!(f, "agree: {}", self.agree())
    }
}

/// Runs both engines from the first positions of the two words.
pub fn ef_crosscheck(
    w0: &TimedWord,
    w1: &TimedWord,
    rounds: usize,
    menu: &IntervalMenu,
    variant: Variant,
) -> Result<CrosscheckReport, GameError> {
    let game = duplicator_wins(w0, w1, 1, 1, rounds, menu, variant)?;
    let trace_valid = validate_trace(w0, w1, menu, GameSettings::new(variant), &game);
    let sig = signature_equivalence(w0, w1, 1, 1, rounds, menu, variant)?;
    Ok(CrosscheckReport {
        rounds,
        variant,
        in_cap: game.warnings.is_empty(),
        game,
        trace_valid,
        signature_equivalent: sig.equivalent,
        witness: sig.witness,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::games::menu::build_menu;
    use crate::logic::IntervalFamily;
    use crate::word::parse_word;

    #[test]
    fn identical_and_distinct() {
        let menu = build_menu(IntervalFamily::Int, 2);
        let w = parse_word("a 0\nb 1").unwrap();
        let same = ef_crosscheck(&w, &w, 2, &menu, Variant::Us).unwrap();
        assert!(same.agree() && same.signature_equivalent);
        let (w0, w1) = (
            parse_word("a 0\nc 5/2").unwrap(),
            parse_word("a 0\nc 3/2").unwrap(),
        );
        let menu3 = build_menu(IntervalFamily::Int, 3);
        let diff = ef_crosscheck(&w0, &w1, 1, &menu3, Variant::Us).unwrap();
        assert!(diff.agree() && !diff.signature_equivalent);
        assert!(diff.trace_valid.is_ok());
    }
}
