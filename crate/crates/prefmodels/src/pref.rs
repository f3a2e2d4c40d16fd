//! Preferential structures over model copies and the consequence
//! relation they induce.

use crate::alphabet::Alphabet;
use crate::formula::Formula;
use crate::model::{Model, ModelSet};
use crate::selection::SelectionFunction;
use crate::semantics::{models_of, models_of_formula, Theory};
use crate::FileError;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use thiserror::Error;

/// One indexed occurrence of a model inside a structure. Copies let the
/// same model survive in some contexts and be overridden in others.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ModelCopy {
    pub model: Model,
    pub tag: u16,
}

impl ModelCopy {
    pub fn new(model: Model, tag: u16) -> Self {
        ModelCopy { model, tag }
    }
}

impl fmt::Display for ModelCopy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.model, self.tag)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum StructureError {
    #[error("copy {0} declared more than once")]
    DuplicateCopy(ModelCopy),
    #[error("relation endpoint {0} is not a declared copy")]
    UndeclaredCopy(ModelCopy),
    #[error("copy {0} marked preferred to itself")]
    ReflexivePair(ModelCopy),
    #[error("model index {0} outside the universe of {1}")]
    ModelOutOfRange(u16, usize),
}

/// A finite set of model copies with a strict preference relation.
///
/// A pair `(c1, c2)` in the relation means `c1 ≺ c2`: the left copy is
/// strictly preferred (more normal). The relation must be irreflexive
/// but nothing else is required; cycles among distinct copies are legal,
/// so the selected set of a nonempty set may be empty.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PreferentialStructure {
    capacity: usize,
    copies: Vec<ModelCopy>,
    prefers: Vec<(ModelCopy, ModelCopy)>,
    // killer_models[i]: models with some copy strictly preferred to
    // copies[i]. Copy i is minimal inside x iff this set misses x.
    killer_models: Vec<ModelSet>,
}

impl PreferentialStructure {
    /// Validates and indexes a structure over a universe of `capacity`
    /// model slots. Duplicate relation pairs are collapsed.
    pub fn new(
        capacity: usize,
        copies: impl IntoIterator<Item = ModelCopy>,
        prefers: impl IntoIterator<Item = (ModelCopy, ModelCopy)>,
    ) -> Result<Self, StructureError> {
        let mut copy_list: Vec<ModelCopy> = copies.into_iter().collect();
        copy_list.sort();
        for pair in copy_list.windows(2) {
            if pair[0] == pair[1] {
                return Err(StructureError::DuplicateCopy(pair[0]));
            }
        }
        for c in &copy_list {
            if c.model.index() >= capacity {
                return Err(StructureError::ModelOutOfRange(c.model.0, capacity));
            }
        }

        let declared: BTreeSet<ModelCopy> = copy_list.iter().copied().collect();
        let mut relation: BTreeSet<(ModelCopy, ModelCopy)> = BTreeSet::new();
        for (c1, c2) in prefers {
            if c1 == c2 {
                return Err(StructureError::ReflexivePair(c1));
            }
            for c in [c1, c2] {
                if !declared.contains(&c) {
                    return Err(StructureError::UndeclaredCopy(c));
                }
            }
            relation.insert((c1, c2));
        }

        let index_of: BTreeMap<ModelCopy, usize> =
            copy_list.iter().enumerate().map(|(i, c)| (*c, i)).collect();
        let mut killer_models = vec![ModelSet::empty(capacity); copy_list.len()];
        for (c1, c2) in &relation {
            killer_models[index_of[c2]].insert(c1.model);
        }

        Ok(PreferentialStructure {
            capacity,
            copies: copy_list,
            prefers: relation.into_iter().collect(),
            killer_models,
        })
    }

    /// A structure with one tag-0 copy per model of the universe and an
    /// empty relation; its selection function is the identity.
    pub fn discrete(capacity: usize) -> Self {
        let copies = (0..capacity).map(|i| ModelCopy::new(Model(i as u16), 0));
        PreferentialStructure::new(capacity, copies, []).expect("discrete structure is valid")
    }

    pub fn capacity(&self) -> usize {
        self.capacity
    }

    pub fn copies(&self) -> &[ModelCopy] {
        &self.copies
    }

    /// The relation as sorted `(preferred, dispreferred)` pairs.
    pub fn prefers(&self) -> &[(ModelCopy, ModelCopy)] {
        &self.prefers
    }

    /// The minimal models of `x`: those with at least one copy that no
    /// copy of any model inside `x` is preferred to. Models without
    /// copies are never minimal; killers outside `x` do not count.
    pub fn mu(&self, x: &ModelSet) -> ModelSet {
        assert_eq!(x.capacity(), self.capacity, "selection set over a different universe");
        let mut out = ModelSet::empty(self.capacity);
        for (i, c) in self.copies.iter().enumerate() {
            if x.contains(c.model) && self.killer_models[i].is_disjoint(x) {
                out.insert(c.model);
            }
        }
        out
    }

    /// Tabulates [`PreferentialStructure::mu`] over `domain` into an
    /// explicit selection function whose universe is the union of the
    /// domain entries.
    pub fn tabulate(&self, domain: &[ModelSet]) -> SelectionFunction {
        let mut universe = ModelSet::empty(self.capacity);
        for x in domain {
            universe = universe.union(x);
        }
        let table: BTreeMap<ModelSet, ModelSet> =
            domain.iter().map(|x| (x.clone(), self.mu(x))).collect();
        SelectionFunction::new(universe, table)
    }

    /// Parses the structure file format with model indices bounded by
    /// `capacity`:
    ///
    /// ```text
    /// copies: 0:0 1:0 1:1
    /// 0:0 < 1:0
    /// 1:1 < 0:0
    /// ```
    ///
    /// The `copies:` line comes first; each following line `c1 < c2`
    /// declares c1 strictly preferred to c2. `#` comments and blank
    /// lines are ignored.
    pub fn parse_document(text: &str, capacity: usize) -> Result<Self, FileError> {
        let fail = FileError::new;
        let mut copies: Option<Vec<ModelCopy>> = None;
        let mut prefers: Vec<(ModelCopy, ModelCopy)> = Vec::new();
        let mut copies_line = 0usize;

        for (i, raw) in text.split('\n').enumerate() {
            let line_no = i + 1;
            let content = raw.split('#').next().unwrap_or("").trim();
            if content.is_empty() {
                continue;
            }
            if let Some(rest) = content.strip_prefix("copies:") {
                if copies.is_some() {
                    return Err(fail(line_no, "second `copies:` line".into()));
                }
                let mut list = Vec::new();
                for word in rest.split_whitespace() {
                    list.push(
                        parse_copy(word).map_err(|e| fail(line_no, e))?,
                    );
                }
                copies = Some(list);
                copies_line = line_no;
            } else {
                if copies.is_none() {
                    return Err(fail(
                        line_no,
                        "expected a `copies:` line before relation pairs".into(),
                    ));
                }
                let parts: Vec<&str> = content.split('<').collect();
                if parts.len() != 2 {
                    return Err(fail(
                        line_no,
                        format!("expected `copy < copy`, found `{content}`"),
                    ));
                }
                let c1 = parse_copy(parts[0].trim()).map_err(|e| fail(line_no, e))?;
                let c2 = parse_copy(parts[1].trim()).map_err(|e| fail(line_no, e))?;
                prefers.push((c1, c2));
            }
        }

        let copies = copies
            .ok_or_else(|| fail(1, "missing `copies:` line".into()))?;
        PreferentialStructure::new(capacity, copies, prefers)
            .map_err(|e| fail(copies_line, e.to_string()))
    }

    /// Renders the structure in the file format accepted by
    /// [`PreferentialStructure::parse_document`].
    pub fn render_document(&self) -> String {
        let mut out = String::from("copies:");
        for c in &self.copies {
            out.push(' ');
            out.push_str(&c.to_string());
        }
        out.push('\n');
        for (c1, c2) in &self.prefers {
            out.push_str(&format!("{c1} < {c2}\n"));
        }
        out
    }
}

fn parse_copy(word: &str) -> Result<ModelCopy, String> {
    let err = || format!("expected `model:tag`, found `{word}`");
    let (m, t) = word.split_once(':').ok_or_else(err)?;
    let model: u16 = m.trim().parse().map_err(|_| err())?;
    let tag: u16 = t.trim().parse().map_err(|_| err())?;
    Ok(ModelCopy::new(Model(model), tag))
}

/// Preferential consequence: `f` holds in every minimal model of `t`.
pub fn pref_entails(
    alphabet: &Alphabet,
    s: &PreferentialStructure,
    t: &Theory,
    f: &Formula,
) -> bool {
    assert_eq!(s.capacity(), alphabet.model_count(), "structure over a different universe");
    s.mu(&models_of(alphabet, t)).is_subset(&models_of_formula(alphabet, f))
}
