//! Finite, ordered atom alphabets.

use crate::formula::Formula;
use crate::model::Model;
use std::collections::BTreeSet;
use thiserror::Error;

/// Largest supported alphabet; the model universe `2^n` must stay at
/// desk scale.
pub const MAX_ATOMS: usize = 16;

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum AlphabetError {
    #[error("alphabet must contain at least one atom")]
    Empty,
    #[error("alphabet has {0} atoms, the maximum is {MAX_ATOMS}")]
    TooLarge(usize),
    #[error("invalid atom name `{0}`")]
    InvalidName(String),
}

/// An ordered list of distinct atom names, sorted lexicographically and
/// frozen at construction. Atom position fixes the model bit encoding:
/// bit `i` of a [`Model`] index is the truth value of atom `i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Alphabet {
    atoms: Vec<String>,
}

pub(crate) fn valid_atom_name(name: &str) -> bool {
    let mut chars = name.chars();
    matches!(chars.next(), Some('a'..='z'))
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

impl Alphabet {
    /// Builds an alphabet from atom names, sorting and deduplicating.
    pub fn new<I, S>(names: I) -> Result<Self, AlphabetError>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let mut set = BTreeSet::new();
        for name in names {
            let name = name.into();
            if !valid_atom_name(&name) {
                return Err(AlphabetError::InvalidName(name));
            }
            set.insert(name);
        }
        if set.is_empty() {
            return Err(AlphabetError::Empty);
        }
        if set.len() > MAX_ATOMS {
            return Err(AlphabetError::TooLarge(set.len()));
        }
        Ok(Alphabet { atoms: set.into_iter().collect() })
    }

    /// Alphabet covering all atoms of the given formulas (and any extra
    /// names), typically used to freeze an alphabet after parsing.
    pub fn covering<'a, I, J, S>(formulas: I, extra: J) -> Result<Self, AlphabetError>
    where
        I: IntoIterator<Item = &'a Formula>,
        J: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let mut names: BTreeSet<String> = BTreeSet::new();
        for f in formulas {
            f.collect_atoms(&mut names);
        }
        names.extend(extra.into_iter().map(Into::into));
        Self::new(names)
    }

    pub fn len(&self) -> usize {
        self.atoms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.atoms.is_empty()
    }

    /// Number of models over this alphabet, `2^n`.
    pub fn model_count(&self) -> usize {
        1 << self.atoms.len()
    }

    pub fn atoms(&self) -> impl Iterator<Item = &str> {
        self.atoms.iter().map(String::as_str)
    }

    pub fn atom(&self, position: usize) -> &str {
        &self.atoms[position]
    }

    /// Position of `name`, or `None` if the atom is not in the alphabet.
    pub fn position_of(&self, name: &str) -> Option<usize> {
        self.atoms.binary_search_by(|a| a.as_str().cmp(name)).ok()
    }

    pub fn contains(&self, name: &str) -> bool {
        self.position_of(name).is_some()
    }

    /// Renders a model the way the CLI prints it: a bit string (leftmost
    /// character = first atom) followed by the atom list with `!` marking
    /// false atoms, e.g. `110  p q !r`.
    pub fn format_model(&self, m: Model) -> String {
        let mut bits = String::with_capacity(self.len());
        let mut names = Vec::with_capacity(self.len());
        for (i, atom) in self.atoms.iter().enumerate() {
            if m.truth(i) {
                bits.push('1');
                names.push(atom.clone());
            } else {
                bits.push('0');
                names.push(format!("!{atom}"));
            }
        }
        format!("{bits}  {}", names.join(" "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sorts_and_deduplicates() {
        let a = Alphabet::new(["r", "p", "q", "p"]).unwrap();
        assert_eq!(a.atoms().collect::<Vec<_>>(), vec!["p", "q", "r"]);
        assert_eq!(a.position_of("q"), Some(1));
        assert_eq!(a.position_of("s"), None);
        assert_eq!(a.model_count(), 8);
    }

    #[test]
    fn rejects_empty_oversized_and_bad_names() {
        assert_eq!(Alphabet::new(Vec::<String>::new()), Err(AlphabetError::Empty));
        let many: Vec<String> = (0..17).map(|i| format!("a{i}")).collect();
        assert_eq!(Alphabet::new(many), Err(AlphabetError::TooLarge(17)));
        assert_eq!(
            Alphabet::new(["Pascal"]),
            Err(AlphabetError::InvalidName("Pascal".into()))
        );
        assert_eq!(Alphabet::new(["p q"]), Err(AlphabetError::InvalidName("p q".into())));
    }

    #[test]
    fn format_model_marks_false_atoms() {
        let a = Alphabet::new(["p", "q", "r"]).unwrap();
        assert_eq!(a.format_model(Model(7)), "111  p q r");
        assert_eq!(a.format_model(Model(6)), "011  !p q r");
        assert_eq!(a.format_model(Model(0)), "000  !p !q !r");
    }
}
