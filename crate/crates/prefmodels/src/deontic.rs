//! Deontic ideal worlds: models minimal in the obligation-violation
//! ordering.
//!
//! Given hard facts and a list of obligations ("it ought to be that
//! f"), the ideal worlds are the models of the facts violating as
//! little as possible: either no other candidate violates a strict
//! subset (the default), or none violates strictly fewer (count mode).
//! When some obligation is unsatisfiable alongside the facts, the
//! remaining obligations still discriminate: that is the
//! contrary-to-duty behavior the ordering is for.

use crate::alphabet::Alphabet;
use crate::formula::Formula;
use crate::model::{Model, ModelSet};
use crate::parser::{parse_formula, ParseError};
use crate::semantics::{eval, models_of, models_of_formula, Theory};
use crate::FileError;
use thiserror::Error;

/// Most obligations an [`ObligationSet`] may hold (violation sets are
/// stored as one machine word).
pub const MAX_OBLIGATIONS: usize = 64;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DeonticError {
    #[error("{0} obligations exceed the cap of {MAX_OBLIGATIONS}")]
    TooManyObligations(usize),
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error(transparent)]
    File(#[from] FileError),
}

/// A finite list of obligations, each a plain formula.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ObligationSet {
    obligations: Vec<Formula>,
}

impl ObligationSet {
    pub fn new(
        obligations: impl IntoIterator<Item = Formula>,
    ) -> Result<Self, DeonticError> {
        let obligations: Vec<Formula> = obligations.into_iter().collect();
        if obligations.len() > MAX_OBLIGATIONS {
            return Err(DeonticError::TooManyObligations(obligations.len()));
        }
        Ok(ObligationSet { obligations })
    }

    /// Parses the obligations file format: lines `ought: <formula>`,
    /// `#` comments and blank lines ignored.
    pub fn parse_document(text: &str) -> Result<Self, DeonticError> {
        let mut obligations = Vec::new();
        for (i, raw) in text.split('\n').enumerate() {
            let line_no = i + 1;
            let content = raw.split('#').next().unwrap_or("").trim();
            if content.is_empty() {
                continue;
            }
            let Some(rest) = content.strip_prefix("ought:") else {
                return Err(FileError::new(
                    line_no,
                    format!("expected `ought: <formula>`, found `{content}`"),
                )
                .into());
            };
            let formula = parse_formula(rest).map_err(|mut err| {
                err.line = line_no;
                err
            })?;
            obligations.push(formula);
        }
        ObligationSet::new(obligations)
    }

    pub fn obligations(&self) -> &[Formula] {
        &self.obligations
    }

    pub fn len(&self) -> usize {
        self.obligations.len()
    }

    pub fn is_empty(&self) -> bool {
        self.obligations.is_empty()
    }
}

/// How worlds are compared by their violations.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum MinimizationMode {
    /// m′ beats m when m′'s violated obligations are a strict subset
    /// of m's. Incomparable violation sets coexist among the ideals.
    #[default]
    Subset,
    /// m′ beats m when m′ violates strictly fewer obligations.
    Count,
}

fn violation_mask(alphabet: &Alphabet, m: Model, obs: &ObligationSet) -> u64 {
    obs.obligations
        .iter()
        .enumerate()
        .filter(|(_, o)| !eval(alphabet, m, o))
        .fold(0u64, |mask, (k, _)| mask | (1 << k))
}

/// The models of `facts` minimal in the violation ordering.
pub fn ideal_worlds(
    alphabet: &Alphabet,
    facts: &Theory,
    obs: &ObligationSet,
    mode: MinimizationMode,
) -> ModelSet {
    let candidates = models_of(alphabet, facts);
    if obs.is_empty() {
        return candidates;
    }
    let masks: Vec<(Model, u64)> =
        candidates.iter().map(|m| (m, violation_mask(alphabet, m, obs))).collect();
    let mut ideal = ModelSet::empty(alphabet.model_count());
    match mode {
        MinimizationMode::Subset => {
            for &(m, mask) in &masks {
                let beaten =
                    masks.iter().any(|&(_, other)| other != mask && other & !mask == 0);
                if !beaten {
                    ideal.insert(m);
                }
            }
        }
        MinimizationMode::Count => {
            let Some(best) = masks.iter().map(|&(_, mask)| mask.count_ones()).min() else {
                return ideal;
            };
            for &(m, mask) in &masks {
                if mask.count_ones() == best {
                    ideal.insert(m);
                }
            }
        }
    }
    ideal
}

/// Does `f` hold in every ideal world?
pub fn ought(
    alphabet: &Alphabet,
    facts: &Theory,
    obs: &ObligationSet,
    f: &Formula,
    mode: MinimizationMode,
) -> bool {
    ideal_worlds(alphabet, facts, obs, mode).is_subset(&models_of_formula(alphabet, f))
}
