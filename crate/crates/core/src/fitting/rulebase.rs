use crate::dataset::Feature;
use crate::error::{Error, Result};
use crate::fuzzy::{FuzzyRule, LinguisticVariable, RuleBase};

use super::sets::{term_structure, FALSE_ATTACK, HIGH_ATTACK, LOW_ATTACK, MEDIUM_ATTACK};

/// One row of the permutation tables.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RuleRow {
    pub index: usize,
    pub pkt_size: &'static str,
    pub byte_rate: &'static str,
    pub pkt_rate: &'static str,
    pub pkt_avg_size: &'static str,
    pub attack: &'static str,
}

const fn row(
    index: usize,
    pkt_size: &'static str,
    byte_rate: &'static str,
    pkt_rate: &'static str,
    pkt_avg_size: &'static str,
    attack: &'static str,
) -> RuleRow {
    RuleRow {
        index,
        pkt_size,
        byte_rate,
        pkt_rate,
        pkt_avg_size,
        attack,
    }
}

/// All 36 antecedent permutations in three clusters of 12, with the attack
/// level each one implies. Columns: packet size, byte rate, packet rate,
/// average packet size.
#[rustfmt::skip]
pub const RULE_TABLE: [RuleRow; 36] = [
    // cluster 1
    row(1,  "S", "LO", "LO", "S", "FA"),
    row(2,  "S", "LO", "LO", "M", "FA"),
    row(3,  "S", "LO", "LO", "L", "LA"),
    row(4,  "S", "H",  "H",  "S", "LA"),
    row(5,  "M", "LO", "LO", "S", "FA"),
    row(6,  "M", "LO", "LO", "M", "FA"),
    row(7,  "M", "LO", "LO", "L", "LA"),
    row(8,  "M", "H",  "H",  "S", "MA"),
    row(9,  "L", "LO", "LO", "S", "FA"),
    row(10, "L", "LO", "LO", "M", "LA"),
    row(11, "L", "LO", "LO", "L", "MA"),
    row(12, "L", "H",  "H",  "S", "MA"),
    // cluster 2
    row(13, "S", "H",  "H",  "M", "MA"),
    row(14, "S", "H",  "H",  "L", "HA"),
    row(15, "S", "LO", "H",  "S", "FA"),
    row(16, "S", "LO", "H",  "M", "LA"),
    row(17, "M", "H",  "H",  "M", "MA"),
    row(18, "M", "H",  "H",  "L", "HA"),
    row(19, "M", "LO", "H",  "S", "LA"),
    row(20, "M", "LO", "H",  "M", "MA"),
    row(21, "L", "H",  "H",  "M", "MA"),
    row(22, "L", "H",  "H",  "L", "HA"),
    row(23, "L", "LO", "H",  "S", "LA"),
    row(24, "L", "LO", "H",  "M", "MA"),
    // cluster 3
    row(25, "S", "LO", "H",  "L", "MA"),
    row(26, "S", "H",  "LO", "S", "FA"),
    row(27, "S", "H",  "LO", "M", "LA"),
    row(28, "S", "H",  "LO", "L", "MA"),
    row(29, "M", "LO", "H",  "L", "HA"),
    row(30, "M", "H",  "LO", "S", "LA"),
    row(31, "M", "H",  "LO", "M", "MA"),
    row(32, "M", "H",  "LO", "L", "HA"),
    row(33, "L", "LO", "H",  "L", "HA"),
    row(34, "L", "H",  "LO", "S", "LA"),
    row(35, "L", "H",  "LO", "M", "MA"),
    row(36, "L", "H",  "LO", "L", "HA"),
];

impl RuleRow {
    pub fn to_rule(&self) -> FuzzyRule {
        FuzzyRule::new(
            self.index,
            [
                (Feature::PktSize.name(), self.pkt_size),
                (Feature::PktRate.name(), self.pkt_rate),
                (Feature::ByteRate.name(), self.byte_rate),
                (Feature::PktAvgSize.name(), self.pkt_avg_size),
            ],
            self.attack,
        )
    }
}

/// Checks that `inputs` are the four features in column order with their
/// expected term names, and that `output` carries the four attack levels.
pub fn check_term_structure(inputs: &[LinguisticVariable], output: &LinguisticVariable) -> Result<()> {
    if inputs.len() != Feature::ALL.len() {
        return Err(Error::config(format!(
            "expected {} input variables, got {}",
            Feature::ALL.len(),
            inputs.len()
        )));
    }
    for (var, f) in inputs.iter().zip(Feature::ALL) {
        if var.name() != f.name() {
            return Err(Error::config(format!(
                "input variable `{}` found where `{f}` was expected",
                var.name()
            )));
        }
        let names: Vec<&str> = var.term_names().collect();
        if names != term_structure(f) {
            return Err(Error::config(format!(
                "variable `{f}` has terms {names:?}, expected {:?}",
                term_structure(f)
            )));
        }
    }
    let names: Vec<&str> = output.term_names().collect();
    let expected = [FALSE_ATTACK, LOW_ATTACK, MEDIUM_ATTACK, HIGH_ATTACK];
    if names != expected {
        return Err(Error::config(format!(
            "output variable `{}` has terms {names:?}, expected {expected:?}",
            output.name()
        )));
    }
    Ok(())
}

pub fn build_rule_base(inputs: Vec<LinguisticVariable>, output: LinguisticVariable) -> Result<RuleBase> {
    check_term_structure(&inputs, &output)?;
    RuleBase::new(inputs, output, RULE_TABLE.iter().map(RuleRow::to_rule).collect())
}
