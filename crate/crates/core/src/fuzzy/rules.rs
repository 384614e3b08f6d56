use std::collections::HashSet;

use super::variable::LinguisticVariable;
use crate::error::{Error, Result};

/// `IF var1 = t1 AND ... AND varN = tN THEN output = consequent`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FuzzyRule {
    pub index: usize,
    /// `(input variable, term)` pairs, one per input variable.
    pub antecedent: Vec<(String, String)>,
    pub consequent: String,
}

impl FuzzyRule {
    pub fn new<V, T>(index: usize, antecedent: impl IntoIterator<Item = (V, T)>, consequent: impl Into<String>) -> Self
    where
        V: Into<String>,
        T: Into<String>,
    {
        FuzzyRule {
            index,
            antecedent: antecedent
                .into_iter()
                .map(|(v, t)| (v.into(), t.into()))
                .collect(),
            consequent: consequent.into(),
        }
    }

    pub fn term_for(&self, variable: &str) -> Option<&str> {
        self.antecedent
            .iter()
            .find(|(v, _)| v == variable)
            .map(|(_, t)| t.as_str())
    }
}

/// Rule resolved to term indices, antecedent in input-variable order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) struct CompiledRule {
    pub terms: Vec<usize>,
    pub consequent: usize,
}

/// Input variables, output variable and rules, validated against each other.
#[derive(Debug, Clone, PartialEq)]
pub struct RuleBase {
    inputs: Vec<LinguisticVariable>,
    output: LinguisticVariable,
    rules: Vec<FuzzyRule>,
    compiled: Vec<CompiledRule>,
}

impl RuleBase {
    /// Requires exactly one rule for every combination of input terms.
    pub fn new(
        inputs: Vec<LinguisticVariable>,
        output: LinguisticVariable,
        rules: Vec<FuzzyRule>,
    ) -> Result<Self> {
        let rb = RuleBase::partial(inputs, output, rules)?;
        let expected = rb.permutation_count();
        if rb.rules.len() != expected {
            return Err(Error::config(format!(
                "rule base is incomplete: {} rules for {} antecedent permutations",
                rb.rules.len(),
                expected
            )));
        }
        Ok(rb)
    }

    /// Like [`RuleBase::new`] but allows antecedent combinations without a rule.
    pub fn partial(
        inputs: Vec<LinguisticVariable>,
        output: LinguisticVariable,
        rules: Vec<FuzzyRule>,
    ) -> Result<Self> {
        if inputs.is_empty() {
            return Err(Error::config("rule base needs at least one input variable"));
        }
        for (i, v) in inputs.iter().enumerate() {
            if inputs[..i].iter().any(|u| u.name() == v.name()) || v.name() == output.name() {
                return Err(Error::config(format!("duplicate variable name `{}`", v.name())));
            }
        }

        let mut compiled = Vec::with_capacity(rules.len());
        let mut seen_antecedents = HashSet::new();
        let mut seen_indices = HashSet::new();
        for rule in &rules {
            if !seen_indices.insert(rule.index) {
                return Err(Error::config(format!("rule index {} appears twice", rule.index)));
            }
            let c = compile(rule, &inputs, &output)?;
            if !seen_antecedents.insert(c.terms.clone()) {
                return Err(Error::config(format!(
                    "rule {} repeats the antecedent of an earlier rule",
                    rule.index
                )));
            }
            compiled.push(c);
        }

        Ok(RuleBase {
            inputs,
            output,
            rules,
            compiled,
        })
    }

    pub fn inputs(&self) -> &[LinguisticVariable] {
        &self.inputs
    }

    pub fn output(&self) -> &LinguisticVariable {
        &self.output
    }

    pub fn rules(&self) -> &[FuzzyRule] {
        &self.rules
    }

    pub fn rule(&self, index: usize) -> Option<&FuzzyRule> {
        self.rules.iter().find(|r| r.index == index)
    }

    pub(crate) fn compiled(&self) -> &[CompiledRule] {
        &self.compiled
    }

    pub fn permutation_count(&self) -> usize {
        self.inputs.iter().map(|v| v.terms().len()).product()
    }

    pub fn is_complete(&self) -> bool {
        self.rules.len() == self.permutation_count()
    }

    /// Rule whose antecedent is exactly `terms` (given in input order).
    pub fn find_by_antecedent(&self, terms: &[&str]) -> Option<&FuzzyRule> {
        if terms.len() != self.inputs.len() {
            return None;
        }
        let idx: Option<Vec<usize>> = self
            .inputs
            .iter()
            .zip(terms)
            .map(|(v, t)| v.term_index(t))
            .collect();
        let idx = idx?;
        self.compiled
            .iter()
            .position(|c| c.terms == idx)
            .map(|i| &self.rules[i])
    }
}

fn compile(
    rule: &FuzzyRule,
    inputs: &[LinguisticVariable],
    output: &LinguisticVariable,
) -> Result<CompiledRule> {
    if rule.antecedent.len() != inputs.len() {
        return Err(Error::config(format!(
            "rule {}: antecedent names {} variables, expected {}",
            rule.index,
            rule.antecedent.len(),
            inputs.len()
        )));
    }
    let mut terms = Vec::with_capacity(inputs.len());
    for var in inputs {
        let mut matches = rule.antecedent.iter().filter(|(v, _)| v == var.name());
        let term = match (matches.next(), matches.next()) {
            (Some((_, t)), None) => t,
            (None, _) => {
                return Err(Error::config(format!(
                    "rule {}: no term given for variable `{}`",
                    rule.index,
                    var.name()
                )))
            }
            (Some(_), Some(_)) => {
                return Err(Error::config(format!(
                    "rule {}: variable `{}` appears twice",
                    rule.index,
                    var.name()
                )))
            }
        };
        let idx = var.term_index(term).ok_or_else(|| {
            Error::config(format!(
                "rule {}: unknown term `{term}` for variable `{}`",
                rule.index,
                var.name()
            ))
        })?;
        terms.push(idx);
    }
    let consequent = output.term_index(&rule.consequent).ok_or_else(|| {
        Error::config(format!(
            "rule {}: unknown term `{}` for output variable `{}`",
            rule.index,
            rule.consequent,
            output.name()
        ))
    })?;
    Ok(CompiledRule { terms, consequent })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fuzzy::{LinguisticTerm, Trapezoid};

    fn two_term(name: &str) -> LinguisticVariable {
        LinguisticVariable::new(
            name,
            (0.0, 10.0),
            vec![
                LinguisticTerm::new("LO", Trapezoid::new(0.0, 0.0, 4.0, 6.0).unwrap()),
                LinguisticTerm::new("H", Trapezoid::new(4.0, 6.0, 10.0, 10.0).unwrap()),
            ],
        )
        .unwrap()
    }

    fn out() -> LinguisticVariable {
        LinguisticVariable::new(
            "y",
            (0.0, 1.0),
            vec![
                LinguisticTerm::new("N", Trapezoid::new(0.0, 0.0, 0.4, 0.6).unwrap()),
                LinguisticTerm::new("P", Trapezoid::new(0.4, 0.6, 1.0, 1.0).unwrap()),
            ],
        )
        .unwrap()
    }

    fn full_rules() -> Vec<FuzzyRule> {
        let mut rules = Vec::new();
        for (i, (a, b)) in [("LO", "LO"), ("LO", "H"), ("H", "LO"), ("H", "H")].into_iter().enumerate() {
            let c = if a == "H" && b == "H" { "P" } else { "N" };
            rules.push(FuzzyRule::new(i + 1, [("a", a), ("b", b)], c));
        }
        rules
    }

    #[test]
    fn complete_rule_base() {
        let rb = RuleBase::new(vec![two_term("a"), two_term("b")], out(), full_rules()).unwrap();
        assert!(rb.is_complete());
        assert_eq!(rb.find_by_antecedent(&["H", "H"]).unwrap().consequent, "P");
        assert_eq!(rb.rule(2).unwrap().term_for("b"), Some("H"));
    }

    #[test]
    fn missing_rule_is_rejected_unless_partial() {
        let mut rules = full_rules();
        rules.pop();
        let err = RuleBase::new(vec![two_term("a"), two_term("b")], out(), rules.clone()).unwrap_err();
        assert!(err.to_string().contains("incomplete"));
        assert!(RuleBase::partial(vec![two_term("a"), two_term("b")], out(), rules).is_ok());
    }

    #[test]
    fn unknown_term_names_rule_and_term() {
        let mut rules = full_rules();
        rules[2].antecedent[0].1 = "XL".into();
        let err = RuleBase::new(vec![two_term("a"), two_term("b")], out(), rules).unwrap_err();
        let msg = err.to_string();
        assert!(msg.contains("rule 3") && msg.contains("XL"), "{msg}");
    }

    #[test]
    fn duplicate_antecedent_is_rejected() {
        let mut rules = full_rules();
        rules[3].antecedent = rules[0].antecedent.clone();
        assert!(RuleBase::partial(vec![two_term("a"), two_term("b")], out(), rules).is_err());
    }

    #[test]
    fn missing_variable_is_rejected() {
        let rules = vec![FuzzyRule::new(1, [("a", "LO"), ("c", "LO")], "N")];
        assert!(RuleBase::partial(vec![two_term("a"), two_term("b")], out(), rules).is_err());
    }
}
