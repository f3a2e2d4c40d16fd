//! Theories, truth evaluation, model enumeration, and classical consequence.

use crate::alphabet::Alphabet;
use crate::formula::Formula;
use crate::model::{Model, ModelSet};
use crate::parser::{parse_formula, ParseError};

/// A finite list of formulas read conjunctively.
///
/// Order and duplicates are preserved for reporting but do not affect
/// the semantics.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Theory {
    formulas: Vec<Formula>,
}

impl Theory {
    pub fn new(formulas: impl IntoIterator<Item = Formula>) -> Self {
        Theory { formulas: formulas.into_iter().collect() }
    }

    pub fn empty() -> Self {
        Theory::default()
    }

    /// Parses a theory document: one formula per line, `#` comments,
    /// blank lines ignored. Error positions refer to the whole document.
    pub fn parse_document(text: &str) -> Result<Self, ParseError> {
        let mut formulas = Vec::new();
        let mut line_start = 0usize;
        for (i, line) in text.split('\n').enumerate() {
            let content = line.split('#').next().unwrap_or("");
            if !content.trim().is_empty() {
                match parse_formula(line) {
                    Ok(f) => formulas.push(f),
                    Err(mut err) => {
                        err.line = i + 1;
                        err.offset += line_start;
                        return Err(err);
                    }
                }
            }
            line_start += line.len() + 1;
        }
        Ok(Theory { formulas })
    }

    pub fn formulas(&self) -> &[Formula] {
        &self.formulas
    }

    pub fn push(&mut self, f: Formula) {
        self.formulas.push(f);
    }

    /// A new theory holding this one's formulas followed by `other`'s.
    pub fn union(&self, other: &Theory) -> Theory {
        let mut formulas = self.formulas.clone();
        formulas.extend(other.formulas.iter().cloned());
        Theory { formulas }
    }
}

impl FromIterator<Formula> for Theory {
    fn from_iter<I: IntoIterator<Item = Formula>>(iter: I) -> Self {
        Theory::new(iter)
    }
}

/// Truth of `f` in model `m` by the usual truth tables.
///
/// Panics if `f` mentions an atom outside `alphabet`; callers freeze an
/// alphabet covering their formulas first (see [`Alphabet::covering`]).
pub fn eval(alphabet: &Alphabet, m: Model, f: &Formula) -> bool {
    match f {
        Formula::Atom(name) => {
            let position = alphabet
                .position_of(name)
                .unwrap_or_else(|| panic!("atom `{name}` not in alphabet"));
            m.truth(position)
        }
        Formula::Top => true,
        Formula::Bot => false,
        Formula::Not(inner) => !eval(alphabet, m, inner),
        Formula::And(l, r) => eval(alphabet, m, l) && eval(alphabet, m, r),
        Formula::Or(l, r) => eval(alphabet, m, l) || eval(alphabet, m, r),
        Formula::Implies(l, r) => !eval(alphabet, m, l) || eval(alphabet, m, r),
        Formula::Iff(l, r) => eval(alphabet, m, l) == eval(alphabet, m, r),
    }
}

/// The set of models satisfying every formula of `t`.
///
/// The empty theory has the full universe as its model set.
pub fn models_of(alphabet: &Alphabet, t: &Theory) -> ModelSet {
    let mut out = ModelSet::empty(alphabet.model_count());
    for index in 0..alphabet.model_count() {
        let m = Model(index as u16);
        if t.formulas.iter().all(|f| eval(alphabet, m, f)) {
            out.insert(m);
        }
    }
    out
}

/// The set of models satisfying `f`.
pub fn models_of_formula(alphabet: &Alphabet, f: &Formula) -> ModelSet {
    let mut out = ModelSet::empty(alphabet.model_count());
    for index in 0..alphabet.model_count() {
        let m = Model(index as u16);
        if eval(alphabet, m, f) {
            out.insert(m);
        }
    }
    out
}

/// Classical semantic consequence: every model of `t` satisfies `f`.
pub fn classical_entails(alphabet: &Alphabet, t: &Theory, f: &Formula) -> bool {
    models_of(alphabet, t).is_subset(&models_of_formula(alphabet, f))
}

/// Canonical form of the deductive closure of `t`.
///
/// Two theories have the same classical consequences exactly when their
/// model sets coincide, so the model set itself serves as the closure.
pub fn consequence_set(alphabet: &Alphabet, t: &Theory) -> ModelSet {
    models_of(alphabet, t)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::BTreeMap;

    fn alpha_pqr() -> Alphabet {
        Alphabet::new(["p", "q", "r"]).unwrap()
    }

    fn theory(lines: &[&str]) -> Theory {
        lines.iter().map(|s| parse_formula(s).unwrap()).collect()
    }

    // Independent truth-table evaluator over a name -> bool map, used to
    // cross-check `eval` without sharing its Model/Alphabet plumbing.
    fn oracle_eval(assign: &BTreeMap<String, bool>, f: &Formula) -> bool {
        match f {
            Formula::Atom(name) => assign[name],
            Formula::Top => true,
            Formula::Bot => false,
            Formula::Not(g) => !oracle_eval(assign, g),
            Formula::And(l, r) => oracle_eval(assign, l) && oracle_eval(assign, r),
            Formula::Or(l, r) => oracle_eval(assign, l) || oracle_eval(assign, r),
            Formula::Implies(l, r) => !oracle_eval(assign, l) || oracle_eval(assign, r),
            Formula::Iff(l, r) => oracle_eval(assign, l) == oracle_eval(assign, r),
        }
    }

    fn assignment(alphabet: &Alphabet, m: Model) -> BTreeMap<String, bool> {
        alphabet.atoms().enumerate().map(|(i, name)| (name.to_string(), m.truth(i))).collect()
    }

    #[test]
    fn eval_matches_truth_tables() {
        let alphabet = alpha_pqr();
        let all_true = Model(0b111);
        assert!(eval(&alphabet, all_true, &parse_formula("q & r").unwrap()));

        // p true, q false (r irrelevant, say false): index 0b001.
        let m = Model(0b001);
        assert!(eval(&alphabet, m, &parse_formula("!(p & q)").unwrap()));

        assert!(eval(&alphabet, Model(0), &Formula::Top));
        assert!(!eval(&alphabet, Model(0), &Formula::Bot));
    }

    #[test]
    fn eval_agrees_with_map_oracle_on_all_models() {
        let alphabet = alpha_pqr();
        let pool = [
            "p -> q -> r",
            "!(p & q) <-> (!p | !q)",
            "p | !p",
            "(p <-> q) & (q <-> r)",
            "F -> p & q & r",
        ];
        for text in pool {
            let f = parse_formula(text).unwrap();
            for index in 0..alphabet.model_count() {
                let m = Model(index as u16);
                assert_eq!(
                    eval(&alphabet, m, &f),
                    oracle_eval(&assignment(&alphabet, m), &f),
                    "mismatch on {text} at model {index}"
                );
            }
        }
    }

    #[test]
    fn models_of_enumerates_satisfying_valuations() {
        let alphabet = alpha_pqr();

        let all = models_of(&alphabet, &Theory::empty());
        assert_eq!(all.len(), 8);

        // p and q&r force every atom true: only model 0b111 = 7.
        let t = theory(&["p", "q & r"]);
        let ms = models_of(&alphabet, &t);
        assert_eq!(ms.iter().collect::<Vec<_>>(), vec![Model(7)]);

        let contradiction = theory(&["p", "!p"]);
        assert!(models_of(&alphabet, &contradiction).is_empty());
    }

    #[test]
    fn classical_entailment_examples() {
        let alphabet = alpha_pqr();
        let t = theory(&["p", "q & r"]);
        assert!(classical_entails(&alphabet, &t, &parse_formula("q & r").unwrap()));
        assert!(classical_entails(&alphabet, &t, &parse_formula("q").unwrap()));

        // Ex falso quodlibet: a contradiction entails anything.
        let efq = theory(&["p", "!p"]);
        assert!(classical_entails(&alphabet, &efq, &parse_formula("q").unwrap()));

        assert!(!classical_entails(&alphabet, &Theory::empty(), &parse_formula("p").unwrap()));
    }

    #[test]
    fn consequence_sets_identify_equivalent_theories() {
        let alphabet = alpha_pqr();
        assert_eq!(
            consequence_set(&alphabet, &theory(&["p & q"])),
            consequence_set(&alphabet, &theory(&["p", "q"]))
        );
        assert_ne!(
            consequence_set(&alphabet, &theory(&["p"])),
            consequence_set(&alphabet, &theory(&["q"]))
        );
        assert_eq!(
            consequence_set(&alphabet, &Theory::empty()),
            consequence_set(&alphabet, &theory(&["p | !p"]))
        );
    }

    #[test]
    fn union_of_theories_intersects_model_sets() {
        let alphabet = alpha_pqr();
        let a = theory(&["p | q"]);
        let b = theory(&["!q", "r -> p"]);
        let joint = models_of(&alphabet, &a.union(&b));
        assert_eq!(joint, models_of(&alphabet, &a).intersection(&models_of(&alphabet, &b)));
    }

    #[test]
    fn parses_documents_with_comments_and_blanks() {
        let text = "# premises\np | q\n\nq & r  # conjunction\n";
        let t = Theory::parse_document(text).unwrap();
        assert_eq!(t.formulas().len(), 2);
        assert_eq!(t.formulas()[1].to_string(), "q & r");

        let err = Theory::parse_document("p\nq &&\nr\n").unwrap_err();
        assert_eq!(err.line, 2);
        assert_eq!(err.column, 4);
        // Offset counts from the start of the document: "p\n" is 2 bytes.
        assert_eq!(err.offset, 2 + 3);
    }
}
