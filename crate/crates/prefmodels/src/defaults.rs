//! Default rules with exceptions, compiled to preferential structures.
//!
//! A rule "prerequisite ⇒ consequent" is read as "in normal cases, the
//! prerequisite brings the consequent". Each rule k gets an abnormality
//! atom `ab_k`; the rule becomes the hard implication
//! `(prerequisite & !ab_k) -> consequent`, and the preference order
//! favors models whose set of true abnormality atoms is strictly
//! smaller. Exceptions are stated as facts that force an `ab_k`, e.g.
//! `penguin -> ab_0`.

use crate::alphabet::{Alphabet, AlphabetError};
use crate::formula::Formula;
use crate::model::{Model, ModelSet};
use crate::parser::{parse_formula, ParseError};
use crate::pref::{pref_entails, ModelCopy, PreferentialStructure};
use crate::semantics::Theory;
use crate::FileError;
use std::collections::BTreeSet;
use thiserror::Error;

/// Most rules a default theory may hold.
pub const MAX_RULES: usize = 8;

/// Cap on the extended alphabet (user atoms plus abnormality atoms);
/// the compiled structure materializes one copy per extended model.
pub const MAX_DEFAULT_ATOMS: usize = 12;

const AB_PREFIX: &str = "ab_";

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DefaultsError {
    #[error("{0} rules exceed the cap of {MAX_RULES}")]
    TooManyRules(usize),
    #[error("extended alphabet needs {0} atoms, the cap is {MAX_DEFAULT_ATOMS}")]
    AlphabetTooLarge(usize),
    #[error("atom `{0}` is reserved for rule abnormalities")]
    ReservedAtom(String),
    #[error("fact mentions `{0}`, but no rule defines it")]
    UnknownAbnormality(String),
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error(transparent)]
    File(#[from] FileError),
    #[error(transparent)]
    Alphabet(#[from] AlphabetError),
}

/// One default rule plus its generated abnormality atom.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DefaultRule {
    pub prerequisite: Formula,
    pub consequent: Formula,
    pub ab_atom: String,
}

impl DefaultRule {
    /// The hard implication the rule compiles to.
    pub fn encoding(&self) -> Formula {
        Formula::implies(
            Formula::and(self.prerequisite.clone(), Formula::not(Formula::atom(&self.ab_atom))),
            self.consequent.clone(),
        )
    }
}

/// Hard facts plus default rules. Facts may mention the `ab_k` atom of
/// any rule (that is how exceptions are stated); rule bodies may not
/// mention any `ab_`-prefixed atom, and neither may queries.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DefaultTheory {
    facts: Theory,
    rules: Vec<DefaultRule>,
}

fn reserved_atom_in(f: &Formula) -> Option<String> {
    f.atoms().into_iter().find(|a| a.starts_with(AB_PREFIX))
}

impl DefaultTheory {
    /// Builds a default theory, numbering the rules in the given order.
    pub fn new(
        facts: Theory,
        rules: impl IntoIterator<Item = (Formula, Formula)>,
    ) -> Result<Self, DefaultsError> {
        let rules: Vec<DefaultRule> = rules
            .into_iter()
            .enumerate()
            .map(|(k, (prerequisite, consequent))| DefaultRule {
                prerequisite,
                consequent,
                ab_atom: format!("{AB_PREFIX}{k}"),
            })
            .collect();
        if rules.len() > MAX_RULES {
            return Err(DefaultsError::TooManyRules(rules.len()));
        }
        for rule in &rules {
            for f in [&rule.prerequisite, &rule.consequent] {
                if let Some(atom) = reserved_atom_in(f) {
                    return Err(DefaultsError::ReservedAtom(atom));
                }
            }
        }
        let known: BTreeSet<&str> = rules.iter().map(|r| r.ab_atom.as_str()).collect();
        for f in facts.formulas() {
            for atom in f.atoms() {
                if atom.starts_with(AB_PREFIX) && !known.contains(atom.as_str()) {
                    return Err(DefaultsError::UnknownAbnormality(atom));
                }
            }
        }
        Ok(DefaultTheory { facts, rules })
    }

    /// Parses the defaults file format: rule lines
    /// `default: <formula> => <formula>` (numbered top to bottom) mixed
    /// with ordinary fact lines; `#` comments and blank lines ignored.
    pub fn parse_document(text: &str) -> Result<Self, DefaultsError> {
        let mut facts = Theory::empty();
        let mut rules = Vec::new();
        for (i, raw) in text.split('\n').enumerate() {
            let line_no = i + 1;
            let content = raw.split('#').next().unwrap_or("").trim();
            if content.is_empty() {
                continue;
            }
            let rebase = |mut err: ParseError| {
                err.line = line_no;
                err
            };
            if let Some(rest) = content.strip_prefix("default:") {
                let Some((pre, post)) = rest.split_once("=>") else {
                    return Err(FileError::new(
                        line_no,
                        format!("expected `default: <formula> => <formula>`, found `{content}`"),
                    )
                    .into());
                };
                let prerequisite = parse_formula(pre).map_err(rebase)?;
                let consequent = parse_formula(post).map_err(rebase)?;
                rules.push((prerequisite, consequent));
            } else {
                facts.push(parse_formula(content).map_err(rebase)?);
            }
        }
        DefaultTheory::new(facts, rules)
    }

    pub fn facts(&self) -> &Theory {
        &self.facts
    }

    pub fn rules(&self) -> &[DefaultRule] {
        &self.rules
    }
}

/// A default theory lowered to the classical-plus-preference level.
#[derive(Debug, Clone)]
pub struct CompiledDefaults {
    /// User atoms plus one `ab_k` per rule, sorted like any alphabet.
    pub alphabet: Alphabet,
    /// Facts plus one hard implication per rule.
    pub theory: Theory,
    /// One copy per extended model; strictly fewer abnormalities wins.
    pub structure: PreferentialStructure,
}

/// Compiles a default theory over its own atoms. Queries with atoms of
/// their own go through [`default_entails`], which widens the alphabet.
pub fn compile_defaults(dt: &DefaultTheory) -> Result<CompiledDefaults, DefaultsError> {
    compile_with_extras(dt, BTreeSet::new())
}

fn compile_with_extras(
    dt: &DefaultTheory,
    extra_atoms: BTreeSet<String>,
) -> Result<CompiledDefaults, DefaultsError> {
    let mut theory = dt.facts.clone();
    for rule in &dt.rules {
        theory.push(rule.encoding());
    }

    let mut names: BTreeSet<String> = extra_atoms;
    for f in theory.formulas() {
        f.collect_atoms(&mut names);
    }
    for rule in &dt.rules {
        names.insert(rule.ab_atom.clone());
    }
    if names.len() > MAX_DEFAULT_ATOMS {
        return Err(DefaultsError::AlphabetTooLarge(names.len()));
    }
    let alphabet = Alphabet::new(names)?;

    let ab_positions: Vec<usize> = dt
        .rules
        .iter()
        .map(|r| alphabet.position_of(&r.ab_atom).expect("ab atom was inserted"))
        .collect();
    let abnormality_mask = |m: Model| -> u32 {
        ab_positions
            .iter()
            .enumerate()
            .filter(|(_, &pos)| m.truth(pos))
            .fold(0u32, |mask, (k, _)| mask | (1 << k))
    };

    let count = alphabet.model_count();
    let masks: Vec<u32> = (0..count).map(|i| abnormality_mask(Model(i as u16))).collect();
    let copies: Vec<ModelCopy> =
        (0..count).map(|i| ModelCopy::new(Model(i as u16), 0)).collect();
    let mut prefers = Vec::new();
    for i in 0..count {
        for j in 0..count {
            // Strictly smaller abnormality set: subset and not equal.
            if masks[i] != masks[j] && masks[i] & !masks[j] == 0 {
                prefers.push((copies[i], copies[j]));
            }
        }
    }
    let structure = PreferentialStructure::new(count, copies, prefers)
        .expect("one copy per model and strict-subset pairs are irreflexive");

    Ok(CompiledDefaults { alphabet, theory, structure })
}

/// Nonmonotonic consequence from a default theory: does `query` hold in
/// every most-normal model of the facts, rules, and `context`?
///
/// `context` and `query` speak the user language only; `ab_` atoms in
/// them are rejected.
pub fn default_entails(
    dt: &DefaultTheory,
    context: &Theory,
    query: &Formula,
) -> Result<bool, DefaultsError> {
    let mut extra = BTreeSet::new();
    for f in context.formulas().iter().chain([query]) {
        if let Some(atom) = reserved_atom_in(f) {
            return Err(DefaultsError::ReservedAtom(atom));
        }
        f.collect_atoms(&mut extra);
    }
    let compiled = compile_with_extras(dt, extra)?;
    let premises = compiled.theory.union(context);
    Ok(pref_entails(&compiled.alphabet, &compiled.structure, &premises, query))
}

/// The most-normal models of the compiled theory joined with `context`,
/// together with the compilation (for rendering).
pub fn minimal_default_models(
    dt: &DefaultTheory,
    context: &Theory,
) -> Result<(CompiledDefaults, ModelSet), DefaultsError> {
    let mut extra = BTreeSet::new();
    for f in context.formulas() {
        if let Some(atom) = reserved_atom_in(f) {
            return Err(DefaultsError::ReservedAtom(atom));
        }
        f.collect_atoms(&mut extra);
    }
    let compiled = compile_with_extras(dt, extra)?;
    let premises = compiled.theory.union(context);
    let minimal =
        compiled.structure.mu(&crate::semantics::models_of(&compiled.alphabet, &premises));
    Ok((compiled, minimal))
}
