//! Explicit selection functions: finite tables from model sets to
//! model sets.

use crate::model::{Model, ModelSet};
use crate::FileError;
use std::collections::BTreeMap;

/// An abstract selection function given by an explicit table.
///
/// Every key is a subset of the universe and all sets share one
/// capacity. Values are deliberately unconstrained beyond capacity so
/// that tables violating the selection laws are representable and can
/// be reported on.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SelectionFunction {
    universe: ModelSet,
    table: BTreeMap<ModelSet, ModelSet>,
}

impl SelectionFunction {
    /// Wraps a table. Panics if a key is not a subset of the universe or
    /// a capacity disagrees; file input goes through
    /// [`SelectionFunction::parse_document`], which reports errors.
    pub fn new(universe: ModelSet, table: BTreeMap<ModelSet, ModelSet>) -> Self {
        for (key, value) in &table {
            assert!(key.is_subset(&universe), "key {key} not inside universe {universe}");
            assert_eq!(value.capacity(), universe.capacity(), "value capacity mismatch");
        }
        SelectionFunction { universe, table }
    }

    pub fn universe(&self) -> &ModelSet {
        &self.universe
    }

    pub fn get(&self, x: &ModelSet) -> Option<&ModelSet> {
        self.table.get(x)
    }

    pub fn contains_key(&self, x: &ModelSet) -> bool {
        self.table.contains_key(x)
    }

    /// Domain keys in ascending bit-set value order.
    pub fn domain(&self) -> impl Iterator<Item = &ModelSet> {
        self.table.keys()
    }

    /// Table entries in ascending key order.
    pub fn entries(&self) -> impl Iterator<Item = (&ModelSet, &ModelSet)> {
        self.table.iter()
    }

    pub fn len(&self) -> usize {
        self.table.len()
    }

    pub fn is_empty(&self) -> bool {
        self.table.is_empty()
    }

    /// True when the domain is exactly the powerset of the universe.
    pub fn is_full_powerset(&self) -> bool {
        // Keys are distinct subsets of the universe, so counting them
        // settles the question.
        self.table.len() == 1usize << self.universe.len()
    }

    /// Parses the selection-function file format:
    ///
    /// ```text
    /// universe: 0 1
    /// {} -> {}
    /// {0} -> {0}
    /// {1} -> {1}
    /// {0,1} -> {0}
    /// ```
    ///
    /// Model indices are decimal; `#` comments and blank lines are
    /// ignored. The capacity is sized to the largest index mentioned.
    pub fn parse_document(text: &str) -> Result<Self, FileError> {
        let mut universe_raw: Option<Vec<u16>> = None;
        let mut entries_raw: Vec<(usize, Vec<u16>, Vec<u16>)> = Vec::new();

        for (i, raw) in text.split('\n').enumerate() {
            let line_no = i + 1;
            let content = raw.split('#').next().unwrap_or("").trim();
            if content.is_empty() {
                continue;
            }
            if let Some(rest) = content.strip_prefix("universe:") {
                if universe_raw.is_some() {
                    return Err(FileError::new(line_no, "second `universe:` line"));
                }
                let mut indices = Vec::new();
                for word in rest.split_whitespace() {
                    let index: u16 = word.parse().map_err(|_| {
                        FileError::new(line_no, format!("invalid model index `{word}`"))
                    })?;
                    indices.push(index);
                }
                universe_raw = Some(indices);
            } else {
                if universe_raw.is_none() {
                    return Err(FileError::new(
                        line_no,
                        "expected a `universe:` line before table entries",
                    ));
                }
                let Some((lhs, rhs)) = content.split_once("->") else {
                    return Err(FileError::new(
                        line_no,
                        format!("expected `{{...}} -> {{...}}`, found `{content}`"),
                    ));
                };
                let key = parse_braced_set(lhs.trim())
                    .map_err(|e| FileError::new(line_no, e))?;
                let value = parse_braced_set(rhs.trim())
                    .map_err(|e| FileError::new(line_no, e))?;
                entries_raw.push((line_no, key, value));
            }
        }

        let universe_raw =
            universe_raw.ok_or_else(|| FileError::new(1, "missing `universe:` line"))?;

        let max_index = universe_raw
            .iter()
            .chain(entries_raw.iter().flat_map(|(_, k, v)| k.iter().chain(v)))
            .copied()
            .max()
            .unwrap_or(0);
        let capacity = max_index as usize + 1;

        let universe =
            ModelSet::from_models(capacity, universe_raw.into_iter().map(Model));
        let mut table = BTreeMap::new();
        for (line_no, key_raw, value_raw) in entries_raw {
            let key = ModelSet::from_models(capacity, key_raw.into_iter().map(Model));
            let value = ModelSet::from_models(capacity, value_raw.into_iter().map(Model));
            if !key.is_subset(&universe) {
                return Err(FileError::new(
                    line_no,
                    format!("key {key} is not a subset of the universe {universe}"),
                ));
            }
            if table.insert(key.clone(), value).is_some() {
                return Err(FileError::new(line_no, format!("duplicate table entry for {key}")));
            }
        }

        Ok(SelectionFunction { universe, table })
    }

    /// Renders the file format accepted by
    /// [`SelectionFunction::parse_document`].
    pub fn render_document(&self) -> String {
        let mut out = String::from("universe:");
        for m in self.universe.iter() {
            out.push_str(&format!(" {m}"));
        }
        out.push('\n');
        for (key, value) in &self.table {
            out.push_str(&format!("{key} -> {value}\n"));
        }
        out
    }
}

fn parse_braced_set(text: &str) -> Result<Vec<u16>, String> {
    let inner = text
        .strip_prefix('{')
        .and_then(|t| t.strip_suffix('}'))
        .ok_or_else(|| format!("expected a braced set, found `{text}`"))?;
    let mut indices = Vec::new();
    for part in inner.split(',') {
        let part = part.trim();
        if part.is_empty() {
            continue;
        }
        let index: u16 =
            part.parse().map_err(|_| format!("invalid model index `{part}`"))?;
        indices.push(index);
    }
    Ok(indices)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(capacity: usize, models: &[u16]) -> ModelSet {
        ModelSet::from_models(capacity, models.iter().map(|&m| Model(m)))
    }

    fn identity_text() -> &'static str {
        "universe: 0 1\n{} -> {}\n{0} -> {0}\n{1} -> {1}\n{0,1} -> {0,1}\n"
    }

    #[test]
    fn parses_and_rerenders_the_identity_table() {
        let sel = SelectionFunction::parse_document(identity_text()).unwrap();
        assert_eq!(sel.universe(), &set(2, &[0, 1]));
        assert_eq!(sel.len(), 4);
        assert!(sel.is_full_powerset());
        assert_eq!(sel.get(&set(2, &[0, 1])), Some(&set(2, &[0, 1])));
        assert_eq!(sel.render_document(), identity_text());
    }

    #[test]
    fn domain_iterates_by_ascending_bit_value() {
        let sel = SelectionFunction::parse_document(identity_text()).unwrap();
        let keys: Vec<String> = sel.domain().map(|k| k.to_string()).collect();
        assert_eq!(keys, vec!["{}", "{0}", "{1}", "{0,1}"]);
    }

    #[test]
    fn partial_domains_are_representable() {
        let sel =
            SelectionFunction::parse_document("universe: 0 1 2\n{0,2} -> {0}\n").unwrap();
        assert!(!sel.is_full_powerset());
        assert_eq!(sel.len(), 1);
    }

    #[test]
    fn tolerates_comments_spacing_and_value_outside_key() {
        let text = "# a lawless table\nuniverse: 0 1\n{ 0 } -> { 1 }  # not a subset\n";
        let sel = SelectionFunction::parse_document(text).unwrap();
        assert_eq!(sel.get(&set(2, &[0])), Some(&set(2, &[1])));
    }

    #[test]
    fn rejects_malformed_documents() {
        let err = SelectionFunction::parse_document("{} -> {}\n").unwrap_err();
        assert_eq!(err.line, 1);
        assert!(err.message.contains("universe"));

        let err =
            SelectionFunction::parse_document("universe: 0\n{0} = {0}\n").unwrap_err();
        assert_eq!(err.line, 2);

        let err = SelectionFunction::parse_document("universe: 0\n{0} -> {x}\n").unwrap_err();
        assert!(err.message.contains("invalid model index"));

        let err = SelectionFunction::parse_document(
            "universe: 0\n{0} -> {0}\n{0} -> {}\n",
        )
        .unwrap_err();
        assert_eq!(err.line, 3);
        assert!(err.message.contains("duplicate"));

        let err =
            SelectionFunction::parse_document("universe: 0\n{1} -> {}\n").unwrap_err();
        assert!(err.message.contains("not a subset"));
    }
}
