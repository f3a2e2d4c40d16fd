//! Propositional logic with preferential (minimal-model) semantics.
//!
//! The crate has three layers:
//!
//! * **Classical core**: [`Alphabet`], [`Formula`], [`Model`],
//!   [`ModelSet`], [`Theory`]: a propositional language over up to 16
//!   atoms, bit-encoded models, exact model enumeration, and classical
//!   consequence ([`classical_entails`]).
//! * **Preferential layer**: [`PreferentialStructure`]: model copies
//!   under a strict (possibly cyclic, non-transitive) preference
//!   relation, the minimal-model selection
//!   [`mu`](PreferentialStructure::mu), its tabulation into an explicit
//!   [`SelectionFunction`], and the nonmonotonic consequence relation
//!   [`pref_entails`]. The module [`represent`] decides whether an
//!   arbitrary selection table satisfies the two selection laws and, if
//!   so, synthesizes a structure realizing it exactly.
//! * **Applications**: [`defaults`]: default rules with exceptions,
//!   compiled via abnormality atoms; [`deontic`]: ideal worlds under a
//!   violation ordering.
//!
//! ```
//! use prefmodels::{Alphabet, Theory, classical_entails, parse_formula};
//!
//! let t = Theory::parse_document("p\nq & r\n").unwrap();
//! let alphabet = Alphabet::covering(t.formulas(), ["s"]).unwrap();
//! let q = parse_formula("q").unwrap();
//! assert!(classical_entails(&alphabet, &t, &q));
//! ```

pub mod alphabet;
pub mod defaults;
pub mod deontic;
pub mod formula;
pub mod model;
pub mod parser;
pub mod pref;
pub mod represent;
pub mod selection;
pub mod semantics;

pub use alphabet::{Alphabet, AlphabetError, MAX_ATOMS};
pub use defaults::{
    compile_defaults, default_entails, minimal_default_models, CompiledDefaults, DefaultRule,
    DefaultTheory, DefaultsError,
};
pub use deontic::{ideal_worlds, ought, DeonticError, MinimizationMode, ObligationSet};
pub use formula::Formula;
pub use model::{Model, ModelSet};
pub use parser::{parse_formula, parse_formula_strict, ParseError, ParseErrorKind};
pub use pref::{pref_entails, ModelCopy, PreferentialStructure, StructureError};
pub use represent::{
    check_properties, random_selection, random_structure, synthesize_structure, PropertyCheck,
    RepresentError, SelectionMode, SynthesisOutcome, SynthesisReport, ViolationWitness,
};
pub use selection::SelectionFunction;
pub use semantics::{
    classical_entails, consequence_set, eval, models_of, models_of_formula, Theory,
};

use thiserror::Error;

/// Error reading a line-oriented data file (structures, selection
/// tables, defaults, obligations), with its 1-based line number.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}: {message}")]
pub struct FileError {
    pub line: usize,
    pub message: String,
}

impl FileError {
    pub fn new(line: usize, message: impl Into<String>) -> Self {
        FileError { line, message: message.into() }
    }
}
