//! Propositional formulas as abstract syntax trees.

use std::collections::BTreeSet;
use std::fmt;

/// A propositional formula over named atoms.
///
/// Connective precedence for parsing and rendering is
/// `!` > `&` > `|` > `->` > `<->`, with `&` and `|` left-associative and
/// `->` and `<->` right-associative. `Display` emits the minimal
/// parenthesisation that reparses to the same tree.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Formula {
    Atom(String),
    Top,
    Bot,
    Not(Box<Formula>),
    And(Box<Formula>, Box<Formula>),
    Or(Box<Formula>, Box<Formula>),
    Implies(Box<Formula>, Box<Formula>),
    Iff(Box<Formula>, Box<Formula>),
}

impl Formula {
    pub fn atom(name: impl Into<String>) -> Self {
        Formula::Atom(name.into())
    }

    pub fn not(f: Formula) -> Self {
        Formula::Not(Box::new(f))
    }

    pub fn and(left: Formula, right: Formula) -> Self {
        Formula::And(Box::new(left), Box::new(right))
    }

    pub fn or(left: Formula, right: Formula) -> Self {
        Formula::Or(Box::new(left), Box::new(right))
    }

    pub fn implies(left: Formula, right: Formula) -> Self {
        Formula::Implies(Box::new(left), Box::new(right))
    }

    pub fn iff(left: Formula, right: Formula) -> Self {
        Formula::Iff(Box::new(left), Box::new(right))
    }

    /// Adds every atom name occurring in the formula to `out`.
    pub fn collect_atoms(&self, out: &mut BTreeSet<String>) {
        match self {
            Formula::Atom(name) => {
                out.insert(name.clone());
            }
            Formula::Top | Formula::Bot => {}
            Formula::Not(f) => f.collect_atoms(out),
            Formula::And(l, r)
            | Formula::Or(l, r)
            | Formula::Implies(l, r)
            | Formula::Iff(l, r) => {
                l.collect_atoms(out);
                r.collect_atoms(out);
            }
        }
    }

    pub fn atoms(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.collect_atoms(&mut out);
        out
    }

    fn precedence(&self) -> u8 {
        match self {
            Formula::Atom(_) | Formula::Top | Formula::Bot => 6,
            Formula::Not(_) => 5,
            Formula::And(..) => 4,
            Formula::Or(..) => 3,
            Formula::Implies(..) => 2,
            Formula::Iff(..) => 1,
        }
    }

    fn write(&self, f: &mut fmt::Formatter<'_>, parent: u8, right_side: bool) -> fmt::Result {
        let prec = self.precedence();
        // Parens when binding looser than the parent, or at equal
        // precedence on the side the operator does not associate to.
        let needs_parens = prec < parent || (prec == parent && right_side);
        if needs_parens {
            write!(f, "(")?;
        }
        match self {
            Formula::Atom(name) => write!(f, "{name}")?,
            Formula::Top => write!(f, "T")?,
            Formula::Bot => write!(f, "F")?,
            Formula::Not(inner) => {
                write!(f, "!")?;
                inner.write(f, prec, false)?;
            }
            Formula::And(l, r) => {
                l.write(f, prec, false)?;
                write!(f, " & ")?;
                r.write(f, prec, true)?;
            }
            Formula::Or(l, r) => {
                l.write(f, prec, false)?;
                write!(f, " | ")?;
                r.write(f, prec, true)?;
            }
            Formula::Implies(l, r) => {
                // Right-associative: the left child is the guarded side.
                l.write(f, prec, true)?;
                write!(f, " -> ")?;
                r.write(f, prec, false)?;
            }
            Formula::Iff(l, r) => {
                l.write(f, prec, true)?;
                write!(f, " <-> ")?;
                r.write(f, prec, false)?;
            }
        }
        if needs_parens {
            write!(f, ")")?;
        }
        Ok(())
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.write(f, 0, false)
    }
}
