//! Checking the selection laws and synthesizing realizing structures.
//!
//! A selection function μ arising from some preferential structure
//! always satisfies two laws:
//!
//! * inclusion: μ(X) ⊆ X;
//! * preservation: for X′ ⊆ X, μ(X) ∩ X′ ⊆ μ(X′), so an element
//!   minimal in a set stays minimal in any subset it belongs to.
//!
//! Conversely, over the full powerset of a finite universe the two laws
//! are exactly sufficient: [`synthesize_structure`] builds a structure
//! whose tabulated μ reproduces a law-abiding table bit for bit, and
//! [`check_properties`] reports a concrete counterexample otherwise.

use crate::model::{Model, ModelSet};
use crate::pref::{ModelCopy, PreferentialStructure};
use crate::selection::SelectionFunction;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use std::collections::BTreeMap;
use std::fmt;
use thiserror::Error;

/// Largest universe the synthesizer accepts; the full powerset domain
/// has `2^|universe|` keys and stays enumerable at this size.
pub const MAX_SYNTHESIS_UNIVERSE: usize = 8;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RepresentError {
    #[error("domain misses key {0}, required to check a subset of {1}")]
    MissingSubsetKey(ModelSet, ModelSet),
    #[error("universe of {0} models exceeds the synthesis cap of {MAX_SYNTHESIS_UNIVERSE}")]
    UniverseTooLarge(usize),
    #[error("synthesis requires the full powerset of the universe as domain")]
    DomainNotFullPowerset,
}

/// A concrete counterexample to one of the two selection laws. The
/// cited sets and model reproduce the violation when re-checked, see
/// [`ViolationWitness::revalidate`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ViolationWitness {
    /// μ(x) ⊄ x: `m` is selected but not a member.
    Subset { x: ModelSet, m: Model },
    /// x′ ⊆ x and m ∈ μ(x) ∩ x′, yet m ∉ μ(x′).
    Pr { x: ModelSet, x_prime: ModelSet, m: Model },
}

impl ViolationWitness {
    /// Re-evaluates the violated inclusion against `sel`.
    pub fn revalidate(&self, sel: &SelectionFunction) -> bool {
        match self {
            ViolationWitness::Subset { x, m } => match sel.get(x) {
                Some(mu_x) => mu_x.contains(*m) && !x.contains(*m),
                None => false,
            },
            ViolationWitness::Pr { x, x_prime, m } => {
                match (sel.get(x), sel.get(x_prime)) {
                    (Some(mu_x), Some(mu_xp)) => {
                        x_prime.is_subset(x)
                            && mu_x.contains(*m)
                            && x_prime.contains(*m)
                            && !mu_xp.contains(*m)
                    }
                    _ => false,
                }
            }
        }
    }
}

impl fmt::Display for ViolationWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ViolationWitness::Subset { x, m } => {
                write!(f, "SubsetViolation: x = {x}, m = {m}")
            }
            ViolationWitness::Pr { x, x_prime, m } => {
                write!(f, "PRViolation: x = {x}, x' = {x_prime}, m = {m}")
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PropertyCheck {
    Satisfied,
    Violated(ViolationWitness),
}

/// Checks the inclusion law on every key, then the preservation law on
/// every key paired with each of its subsets. The first failing
/// instance in that scan order (keys ascending by bit-set value,
/// subsets likewise, violating models ascending) becomes the witness,
/// so the result is deterministic.
///
/// Checking preservation on a key requires every subset of that key as
/// a key too; a missing one is an error (impossible on full-powerset
/// domains).
pub fn check_properties(sel: &SelectionFunction) -> Result<PropertyCheck, RepresentError> {
    for (x, mu_x) in sel.entries() {
        if !mu_x.is_subset(x) {
            let m = mu_x.difference(x).smallest().expect("nonempty by the failed subset test");
            return Ok(PropertyCheck::Violated(ViolationWitness::Subset { x: x.clone(), m }));
        }
    }
    for (x, mu_x) in sel.entries() {
        for x_prime in x.subsets() {
            let Some(mu_xp) = sel.get(&x_prime) else {
                return Err(RepresentError::MissingSubsetKey(x_prime, x.clone()));
            };
            let escaped = mu_x.intersection(&x_prime).difference(mu_xp);
            if let Some(m) = escaped.smallest() {
                return Ok(PropertyCheck::Violated(ViolationWitness::Pr {
                    x: x.clone(),
                    x_prime,
                    m,
                }));
            }
        }
    }
    Ok(PropertyCheck::Satisfied)
}

/// A synthesized structure together with its audit trail.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SynthesisReport {
    pub structure: PreferentialStructure,
    pub copies_per_model: BTreeMap<Model, usize>,
    /// True iff re-tabulating the structure over the input domain
    /// reproduced the input table exactly.
    pub verified: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SynthesisOutcome {
    Synthesized(SynthesisReport),
    Rejected(ViolationWitness),
}

/// Builds a preferential structure realizing `sel` exactly, or returns
/// the law violation that makes realization impossible.
///
/// The construction gives each model m one copy per witnessing set X
/// (a key with m ∈ μ(X)); that copy is killed, in every key Y where m
/// must not be minimal, by the smallest element of Y \ X, a set the
/// preservation law guarantees nonempty. Models minimal nowhere get two
/// copies killing each other wherever required, so they never survive
/// yet the relation stays irreflexive.
pub fn synthesize_structure(
    sel: &SelectionFunction,
) -> Result<SynthesisOutcome, RepresentError> {
    let universe = sel.universe();
    if universe.len() > MAX_SYNTHESIS_UNIVERSE {
        return Err(RepresentError::UniverseTooLarge(universe.len()));
    }
    if !sel.is_full_powerset() {
        return Err(RepresentError::DomainNotFullPowerset);
    }
    match check_properties(sel)? {
        PropertyCheck::Violated(witness) => return Ok(SynthesisOutcome::Rejected(witness)),
        PropertyCheck::Satisfied => {}
    }

    let capacity = universe.capacity();
    // Kill maps: for each copy, which model silences it in each key
    // where its model must lose.
    let mut copies: Vec<ModelCopy> = Vec::new();
    let mut kill_models: Vec<ModelSet> = Vec::new();
    let mut copies_per_model: BTreeMap<Model, usize> = BTreeMap::new();

    for m in universe.iter() {
        let death_sets: Vec<&ModelSet> = sel
            .entries()
            .filter(|(y, mu_y)| y.contains(m) && !mu_y.contains(m))
            .map(|(y, _)| y)
            .collect();
        let witness_sets: Vec<&ModelSet> = sel
            .entries()
            .filter(|(_, mu_x)| mu_x.contains(m))
            .map(|(x, _)| x)
            .collect();

        if witness_sets.is_empty() {
            // m is minimal nowhere. Two copies with identical kill maps
            // guard each key Y: either min(Y) ≠ m kills both from the
            // outside, or min(Y) = m and the two copies kill each other.
            let mut killers = ModelSet::empty(capacity);
            for &y in &death_sets {
                killers.insert(y.smallest().expect("death set contains m"));
            }
            for tag in 0..2 {
                copies.push(ModelCopy::new(m, tag));
                kill_models.push(killers.clone());
            }
            copies_per_model.insert(m, 2);
        } else {
            for (tag, &x) in witness_sets.iter().enumerate() {
                let mut killers = ModelSet::empty(capacity);
                for &y in &death_sets {
                    let excess = y.difference(x);
                    // Preservation: Y ⊆ X would force m ∈ μ(Y); a bare
                    // miss here means the checker above is wrong.
                    assert!(
                        !excess.is_empty(),
                        "death set {y} inside witnessing set {x} for model {m}"
                    );
                    killers.insert(excess.smallest().expect("checked nonempty"));
                }
                copies.push(ModelCopy::new(m, tag as u16));
                kill_models.push(killers);
            }
            copies_per_model.insert(m, witness_sets.len());
        }
    }

    let mut prefers: Vec<(ModelCopy, ModelCopy)> = Vec::new();
    for (c, killers) in copies.iter().zip(&kill_models) {
        for killer in killers.iter() {
            for c_prime in copies.iter().filter(|cp| cp.model == killer && *cp != c) {
                prefers.push((*c_prime, *c));
            }
        }
    }

    let structure = PreferentialStructure::new(capacity, copies, prefers)
        .expect("constructed copies are unique and self-pairs were skipped");
    let domain: Vec<ModelSet> = sel.domain().cloned().collect();
    let verified = structure.tabulate(&domain) == *sel;

    Ok(SynthesisOutcome::Synthesized(SynthesisReport {
        structure,
        copies_per_model,
        verified,
    }))
}

/// How [`random_selection`] builds its table.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SelectionMode {
    /// Tabulate a random structure; the laws hold by construction.
    FromStructure,
    /// Pick each μ(X) as a uniformly random subset of X; the
    /// preservation law may fail.
    Arbitrary,
}

/// Deterministically generates a random structure over `universe`:
/// one to `max_copies` copies per model and edges drawn independently
/// with a density itself drawn per structure.
pub fn random_structure(
    seed: u64,
    universe: &ModelSet,
    max_copies: u16,
) -> PreferentialStructure {
    assert!(max_copies >= 1, "each model needs at least one copy");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut copies = Vec::new();
    for m in universe.iter() {
        let count = rng.gen_range(1..=max_copies);
        for tag in 0..count {
            copies.push(ModelCopy::new(m, tag));
        }
    }
    let density: f64 = rng.gen_range(0.0..0.6);
    let mut prefers = Vec::new();
    for c1 in &copies {
        for c2 in &copies {
            if c1 != c2 && rng.gen_bool(density) {
                prefers.push((*c1, *c2));
            }
        }
    }
    PreferentialStructure::new(universe.capacity(), copies, prefers)
        .expect("generated copies are unique and pairs are irreflexive")
}

/// Deterministically generates a selection function over the full
/// powerset of `universe` (at most [`MAX_SYNTHESIS_UNIVERSE`] models).
pub fn random_selection(seed: u64, universe: &ModelSet, mode: SelectionMode) -> SelectionFunction {
    assert!(universe.len() <= MAX_SYNTHESIS_UNIVERSE, "universe too large to tabulate");
    let domain: Vec<ModelSet> = universe.subsets().collect();
    match mode {
        SelectionMode::FromStructure => {
            random_structure(seed, universe, 2).tabulate(&domain)
        }
        SelectionMode::Arbitrary => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let table: BTreeMap<ModelSet, ModelSet> = domain
                .into_iter()
                .map(|x| {
                    let value = ModelSet::from_models(
                        universe.capacity(),
                        x.iter().filter(|_| rng.gen_bool(0.5)),
                    );
                    (x, value)
                })
                .collect();
            SelectionFunction::new(universe.clone(), table)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::BTreeMap;

    fn set(capacity: usize, models: &[u16]) -> ModelSet {
        ModelSet::from_models(capacity, models.iter().map(|&m| Model(m)))
    }

    fn table_over_2(values: [&[u16]; 4]) -> SelectionFunction {
        // Keys in ascending order: {}, {0}, {1}, {0,1}.
        let keys = [&[][..], &[0][..], &[1][..], &[0, 1][..]];
        let table: BTreeMap<ModelSet, ModelSet> = keys
            .iter()
            .zip(values.iter())
            .map(|(k, v)| (set(2, k), set(2, v)))
            .collect();
        SelectionFunction::new(set(2, &[0, 1]), table)
    }

    #[test]
    fn identity_table_satisfies_both_laws() {
        let sel = table_over_2([&[], &[0], &[1], &[0, 1]]);
        assert_eq!(check_properties(&sel).unwrap(), PropertyCheck::Satisfied);
    }

    #[test]
    fn preservation_violation_is_the_documented_witness() {
        // Minimal in the pair but not alone: impossible for any
        // structure, and the checker pins it to x' = {0}.
        let sel = table_over_2([&[], &[], &[1], &[0, 1]]);
        let check = check_properties(&sel).unwrap();
        let PropertyCheck::Violated(witness) = check else {
            panic!("expected a violation");
        };
        assert_eq!(
            witness,
            ViolationWitness::Pr { x: set(2, &[0, 1]), x_prime: set(2, &[0]), m: Model(0) }
        );
        assert_eq!(witness.to_string(), "PRViolation: x = {0,1}, x' = {0}, m = 0");
        assert!(witness.revalidate(&sel));
    }

    #[test]
    fn inclusion_violation_reports_the_stray_model() {
        let sel = table_over_2([&[], &[1], &[1], &[0, 1]]);
        let check = check_properties(&sel).unwrap();
        let PropertyCheck::Violated(witness) = check else {
            panic!("expected a violation");
        };
        assert_eq!(witness, ViolationWitness::Subset { x: set(2, &[0]), m: Model(1) });
        assert_eq!(witness.to_string(), "SubsetViolation: x = {0}, m = 1");
        assert!(witness.revalidate(&sel));
    }

    #[test]
    fn missing_subset_keys_are_an_error_on_partial_domains() {
        let text = "universe: 0 1\n{0,1} -> {0}\n{} -> {}\n{0} -> {0}\n";
        let sel = SelectionFunction::parse_document(text).unwrap();
        let err = check_properties(&sel).unwrap_err();
        assert_eq!(
            err,
            RepresentError::MissingSubsetKey(set(2, &[1]), set(2, &[0, 1]))
        );

        // Downward-closed partial domains check fine.
        let text = "universe: 0 1\n{} -> {}\n{0} -> {0}\n";
        let sel = SelectionFunction::parse_document(text).unwrap();
        assert_eq!(check_properties(&sel).unwrap(), PropertyCheck::Satisfied);
    }

    #[test]
    fn synthesis_of_the_identity_needs_no_relation() {
        let sel = table_over_2([&[], &[0], &[1], &[0, 1]]);
        let outcome = synthesize_structure(&sel).unwrap();
        let SynthesisOutcome::Synthesized(report) = outcome else {
            panic!("expected synthesis");
        };
        assert!(report.verified);
        assert!(report.structure.prefers().is_empty());
        // One witnessing copy per singleton plus one for the pair.
        assert_eq!(report.copies_per_model[&Model(0)], 2);
        assert_eq!(report.copies_per_model[&Model(1)], 2);
    }

    #[test]
    fn synthesis_realizes_a_cycle_table() {
        // μ({0,1}) = ∅ with singletons intact: the table of two copies
        // killing each other.
        let sel = table_over_2([&[], &[0], &[1], &[]]);
        let outcome = synthesize_structure(&sel).unwrap();
        let SynthesisOutcome::Synthesized(report) = outcome else {
            panic!("expected synthesis");
        };
        assert!(report.verified);
        let domain: Vec<ModelSet> = sel.domain().cloned().collect();
        assert_eq!(report.structure.tabulate(&domain), sel);
    }

    #[test]
    fn synthesis_handles_models_minimal_nowhere() {
        // μ(X) = X \ {0} everywhere, so model 0 must always lose, even
        // alone: only mutual kills among its own copies can do that.
        let sel = table_over_2([&[], &[], &[1], &[1]]);
        let outcome = synthesize_structure(&sel).unwrap();
        let SynthesisOutcome::Synthesized(report) = outcome else {
            panic!("expected synthesis");
        };
        assert!(report.verified);
        assert_eq!(report.copies_per_model[&Model(0)], 2);
    }

    #[test]
    fn synthesis_rejects_violating_tables_with_the_checker_witness() {
        let sel = table_over_2([&[], &[], &[1], &[0, 1]]);
        let outcome = synthesize_structure(&sel).unwrap();
        assert_eq!(
            outcome,
            SynthesisOutcome::Rejected(ViolationWitness::Pr {
                x: set(2, &[0, 1]),
                x_prime: set(2, &[0]),
                m: Model(0)
            })
        );
    }

    #[test]
    fn synthesis_guards_its_preconditions() {
        let text = "universe: 0 1\n{} -> {}\n{0} -> {0}\n";
        let sel = SelectionFunction::parse_document(text).unwrap();
        assert_eq!(
            synthesize_structure(&sel).unwrap_err(),
            RepresentError::DomainNotFullPowerset
        );
    }

    #[test]
    fn random_generation_is_deterministic_per_seed() {
        let universe = set(4, &[0, 1, 2, 3]);
        assert_eq!(
            random_structure(7, &universe, 2),
            random_structure(7, &universe, 2)
        );
        assert_eq!(
            random_selection(7, &universe, SelectionMode::Arbitrary),
            random_selection(7, &universe, SelectionMode::Arbitrary)
        );
        assert_ne!(
            random_selection(7, &universe, SelectionMode::Arbitrary),
            random_selection(8, &universe, SelectionMode::Arbitrary)
        );
    }

    #[test]
    fn structure_tabulations_always_pass_the_checker() {
        let universe = set(4, &[0, 1, 2, 3]);
        for seed in 0..25 {
            let sel = random_selection(seed, &universe, SelectionMode::FromStructure);
            assert_eq!(
                check_properties(&sel).unwrap(),
                PropertyCheck::Satisfied,
                "seed {seed}"
            );
        }
    }

    #[test]
    fn arbitrary_tables_respect_inclusion_by_construction() {
        let universe = set(4, &[0, 1, 2, 3]);
        for seed in 0..25 {
            let sel = random_selection(seed, &universe, SelectionMode::Arbitrary);
            for (x, mu_x) in sel.entries() {
                assert!(mu_x.is_subset(x), "seed {seed}");
            }
        }
    }
}
