//! Freeze variables, valuations and timing guards `x−T ≈ c` / `T−x ≈ c`.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::rational::Rational;

/// A freeze variable name, `[a-z][a-z0-9_]*`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Var(Arc<str>);

impl Var {
    pub fn new(name: &str) -> Option<Self> {
        crate::word::is_identifier(name).then(|| Var(Arc::from(name)))
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

/// Total map from freeze variables to times. Variables never assigned read as 0, so the empty
/// valuation is the initial valuation ν₀.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct Valuation(BTreeMap<Var, Rational>);

impl Valuation {
    pub fn initial() -> Self {
        Valuation::default()
    }

    pub fn get(&self, x: &Var) -> Rational {
        self.0.get(x).cloned().unwrap_or_else(Rational::zero)
    }

    /// `ν(x ← t)`
    pub fn with(&self, x: &Var, t: Rational) -> Self {
        let mut next = self.0.clone();
        if t.is_zero() {
            // keep the representation canonical: unset and 0 are the same valuation
            next.remove(x);
        } else {
            next.insert(x.clone(), t);
        }
        Valuation(next)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Var, &Rational)> {
        self.0.iter()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Orientation {
    /// `x − T`
    VarMinusTime,
    /// `T − x`
    TimeMinusVar,
}

impl Orientation {
    pub fn flipped(self) -> Self {
        match self {
            Orientation::VarMinusTime => Orientation::TimeMinusVar,
            Orientation::TimeMinusVar => Orientation::VarMinusTime,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CmpOp {
    Lt,
    Le,
    Gt,
    Ge,
    Eq,
}

impl CmpOp {
    pub fn symbol(self) -> &'static str {
        match self {
            CmpOp::Lt => "<",
            CmpOp::Le => "<=",
            CmpOp::Gt => ">",
            CmpOp::Ge => ">=",
            CmpOp::Eq => "=",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        Some(match s {
            "<" => CmpOp::Lt,
            "<=" => CmpOp::Le,
            ">" => CmpOp::Gt,
            ">=" => CmpOp::Ge,
            "=" => CmpOp::Eq,
            _ => return None,
        })
    }

    /// The operator obtained by negating both sides.
    pub fn mirrored(self) -> Self {
        match self {
            CmpOp::Lt => CmpOp::Gt,
            CmpOp::Le => CmpOp::Ge,
            CmpOp::Gt => CmpOp::Lt,
            CmpOp::Ge => CmpOp::Le,
            CmpOp::Eq => CmpOp::Eq,
        }
    }

    pub fn holds<T: Ord>(self, lhs: &T, rhs: &T) -> bool {
        match self {
            CmpOp::Lt => lhs < rhs,
            CmpOp::Le => lhs <= rhs,
            CmpOp::Gt => lhs > rhs,
            CmpOp::Ge => lhs >= rhs,
            CmpOp::Eq => lhs == rhs,
        }
    }

    pub fn is_strict(self) -> bool {
        matches!(self, CmpOp::Lt | CmpOp::Gt)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GuardAtom {
    pub orientation: Orientation,
    pub var: Var,
    pub op: CmpOp,
    pub c: i64,
}

impl GuardAtom {
    pub fn new(orientation: Orientation, var: Var, op: CmpOp, c: i64) -> Self {
        GuardAtom {
            orientation,
            var,
            op,
            c,
        }
    }

    pub fn eval(&self, nu: &Valuation, t: &Rational) -> bool {
        let x = nu.get(&self.var);
        let lhs = match self.orientation {
            Orientation::VarMinusTime => x - t,
            Orientation::TimeMinusVar => t - x,
        };
        self.op
            .holds(&lhs, &Rational::from_integer(BigInt::from(self.c)))
    }

    /// Rewrites a negative constant by negating both sides: `x−T < −2` becomes `T−x > 2`.
    pub fn normalized(&self) -> GuardAtom {
        if self.c >= 0 {
            return self.clone();
        }
        GuardAtom {
            orientation: self.orientation.flipped(),
            var: self.var.clone(),
            op: self.op.mirrored(),
            c: -self.c,
        }
    }

    /// `=` atoms become `≤ ∧ ≥`; other atoms are returned unchanged.
    pub fn expand_equality(&self) -> Vec<GuardAtom> {
        if self.op != CmpOp::Eq {
            return vec![self.clone()];
        }
        vec![
            GuardAtom {
                op: CmpOp::Le,
                ..self.clone()
            },
            GuardAtom {
                op: CmpOp::Ge,
                ..self.clone()
            },
        ]
    }

    /// Truth of the atom when the compared difference is 0.
    pub fn holds_at_zero_difference(&self) -> bool {
        self.op.holds(&0i64, &self.c)
    }
}

impl fmt::Display for GuardAtom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let lhs = match self.orientation {
            Orientation::VarMinusTime => format!("{}-T", self.var),
            Orientation::TimeMinusVar => format!("T-{}", self.var),
        };
        write!(f, "(cmp {} {} {})", lhs, self.op.symbol(), self.c)
    }
}

/// Conjunction of atoms; the empty conjunction is `tt`.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct Guard {
    pub atoms: Vec<GuardAtom>,
}

impl Guard {
    pub fn tt() -> Self {
        Guard::default()
    }

    pub fn atom(a: GuardAtom) -> Self {
        Guard { atoms: vec![a] }
    }

    pub fn is_trivial(&self) -> bool {
        self.atoms.is_empty()
    }

    pub fn eval(&self, nu: &Valuation, t: &Rational) -> bool {
        self.atoms.iter().all(|a| a.eval(nu, t))
    }

    pub fn is_normalized(&self) -> bool {
        self.atoms.iter().all(|a| a.c >= 0)
    }

    pub fn vars(&self) -> impl Iterator<Item = &Var> {
        self.atoms.iter().map(|a| &a.var)
    }

    pub fn max_constant(&self) -> u64 {
        self.atoms
            .iter()
            .map(|a| a.c.unsigned_abs())
            .max()
            .unwrap_or(0)
    }
}

/// Rewrites every atom to a non-negative constant. Idempotent; `=` is kept.
pub fn normalize_guard(g: &Guard) -> Guard {
    Guard {
        atoms: g.atoms.iter().map(GuardAtom::normalized).collect(),
    }
}

pub fn eval_guard(nu: &Valuation, t: &Rational, g: &Guard) -> bool {
    g.eval(nu, t)
}

impl fmt::Display for Guard {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.atoms.as_slice() {
            [] => f.write_str("(tt)"),
            [one] => write!(f, "{one}"),
            many => {
                f.write_str("(and")?;
                for a in many {
                    write!(f, " {a}")?;
                }
                f.write_str(")")
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, ratio};

    fn x() -> Var {
        Var::new("x").unwrap()
    }

    fn atom(o: Orientation, op: CmpOp, c: i64) -> GuardAtom {
        GuardAtom::new(o, x(), op, c)
    }

    #[test]
    fn eval_examples() {
        let nu0 = Valuation::initial();
        let g = Guard::atom(atom(Orientation::TimeMinusVar, CmpOp::Lt, 2));
        assert!(eval_guard(&nu0, &ratio(3, 2), &g));
        let g = Guard::atom(atom(Orientation::VarMinusTime, CmpOp::Le, 0));
        assert!(eval_guard(&nu0, &int(0), &g));
        let nu = nu0.with(&x(), int(1));
        assert!(eval_guard(
            &nu,
            &int(0),
            &Guard::atom(atom(Orientation::VarMinusTime, CmpOp::Eq, 1))
        ));
        assert!(!eval_guard(
            &nu,
            &int(0),
            &Guard::atom(atom(Orientation::VarMinusTime, CmpOp::Eq, 2))
        ));
    }

    #[test]
    fn normalize_flips_negative_constants() {
        let g = Guard::atom(atom(Orientation::VarMinusTime, CmpOp::Lt, -2));
        let n = normalize_guard(&g);
        assert_eq!(n.atoms[0], atom(Orientation::TimeMinusVar, CmpOp::Gt, 2));
        let unchanged = Guard::atom(atom(Orientation::VarMinusTime, CmpOp::Le, 0));
        assert_eq!(normalize_guard(&unchanged), unchanged);
        assert_eq!(normalize_guard(&n), n);
    }

    #[test]
    fn normalize_mixed_conjunction() {
        let y = Var::new("y").unwrap();
        let g = Guard {
            atoms: vec![
                atom(Orientation::VarMinusTime, CmpOp::Eq, 1),
                GuardAtom::new(Orientation::TimeMinusVar, y.clone(), CmpOp::Lt, -1),
            ],
        };
        let n = normalize_guard(&g);
        assert_eq!(n.atoms[0], atom(Orientation::VarMinusTime, CmpOp::Eq, 1));
        assert_eq!(
            n.atoms[1],
            GuardAtom::new(Orientation::VarMinusTime, y, CmpOp::Gt, 1)
        );
    }

    #[test]
    fn valuation_canonical_zero() {
        let nu = Valuation::initial().with(&x(), int(0));
        assert_eq!(nu, Valuation::initial());
    }

    #[test]
    fn display() {
        let g = Guard {
            atoms: vec![
                atom(Orientation::VarMinusTime, CmpOp::Lt, 2),
                atom(Orientation::TimeMinusVar, CmpOp::Ge, 1),
            ],
        };
        assert_eq!(g.to_string(), "(and (cmp x-T < 2) (cmp T-x >= 1))");
        assert_eq!(Guard::tt().to_string(), "(tt)");
    }
}
