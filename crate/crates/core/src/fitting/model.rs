use std::collections::BTreeMap;
use std::io::{Read, Write};

use serde::{Deserialize, Serialize};

use super::rulebase::check_term_structure;
use super::FitConfig;
use crate::dataset::FeatureStats;
use crate::error::{Error, Result};
use crate::fuzzy::{FuzzyRule, InferenceConfig, LinguisticTerm, LinguisticVariable, RuleBase, Trapezoid};

pub const SCHEMA_VERSION: u32 = 1;

/// Where a fitted model came from.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Provenance {
    pub fit_config: FitConfig,
    pub normal_stats: FeatureStats,
    pub intrusion_stats: FeatureStats,
    pub combined_stats: FeatureStats,
    /// `(normal, intrusion)` record counts the sets were fitted on.
    pub training_records: (usize, usize),
    /// Seconds since the Unix epoch, when the caller chose to stamp the fit.
    #[serde(default)]
    pub created_unix: Option<u64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct FisModel {
    pub rule_base: RuleBase,
    pub inference: InferenceConfig,
    pub provenance: Provenance,
}

impl FisModel {
    pub fn to_json(&self) -> Result<String> {
        let mut buf = Vec::new();
        save_model(self, &mut buf)?;
        Ok(String::from_utf8(buf).expect("serde_json emits UTF-8"))
    }

    pub fn from_json(s: &str) -> Result<Self> {
        load_model(s.as_bytes())
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ModelDocument {
    schema_version: u32,
    inputs: Vec<VariableDoc>,
    output: VariableDoc,
    rules: Vec<RuleDoc>,
    inference: InferenceConfig,
    provenance: Provenance,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct VariableDoc {
    name: String,
    universe: [f64; 2],
    terms: Vec<TermDoc>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct TermDoc {
    name: String,
    corners: [f64; 4],
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RuleDoc {
    index: usize,
    antecedent: BTreeMap<String, String>,
    consequent: String,
}

impl VariableDoc {
    fn from_variable(v: &LinguisticVariable) -> Self {
        let (lo, hi) = v.universe();
        VariableDoc {
            name: v.name().to_owned(),
            universe: [lo, hi],
            terms: v
                .terms()
                .iter()
                .map(|t| TermDoc {
                    name: t.name.clone(),
                    corners: t.mf.corners(),
                })
                .collect(),
        }
    }

    fn into_variable(self, field: &str) -> Result<LinguisticVariable> {
        let terms = self
            .terms
            .into_iter()
            .enumerate()
            .map(|(i, t)| {
                let [a, b, c, d] = t.corners;
                let mf = Trapezoid::new(a, b, c, d)
                    .map_err(|e| Error::model(format!("{field}.terms[{i}].corners"), strip(e)))?;
                Ok(LinguisticTerm::new(t.name, mf))
            })
            .collect::<Result<Vec<_>>>()?;
        let [lo, hi] = self.universe;
        LinguisticVariable::new(self.name, (lo, hi), terms).map_err(|e| Error::model(field, strip(e)))
    }
}

fn strip(e: Error) -> String {
    match e {
        Error::Config(m) | Error::Usage(m) => m,
        other => other.to_string(),
    }
}

/// Writes the model as one pretty-printed JSON document.
pub fn save_model<W: Write>(model: &FisModel, mut sink: W) -> Result<()> {
    let rb = &model.rule_base;
    let doc = ModelDocument {
        schema_version: SCHEMA_VERSION,
        inputs: rb.inputs().iter().map(VariableDoc::from_variable).collect(),
        output: VariableDoc::from_variable(rb.output()),
        rules: rb
            .rules()
            .iter()
            .map(|r| RuleDoc {
                index: r.index,
                antecedent: r.antecedent.iter().cloned().collect(),
                consequent: r.consequent.clone(),
            })
            .collect(),
        inference: model.inference.clone(),
        provenance: model.provenance.clone(),
    };
    serde_json::to_writer_pretty(&mut sink, &doc)?;
    sink.write_all(b"\n")?;
    sink.flush()?;
    Ok(())
}

/// Reads and validates a model document.
pub fn load_model<R: Read>(source: R) -> Result<FisModel> {
    let value: serde_json::Value =
        serde_json::from_reader(source).map_err(|e| Error::model("document", format!("malformed JSON: {e}")))?;
    match value.get("schema_version").and_then(|v| v.as_u64()) {
        Some(v) if v == SCHEMA_VERSION as u64 => {}
        Some(v) => {
            return Err(Error::model(
                "schema_version",
                format!("unsupported version {v}, this build reads version {SCHEMA_VERSION}"),
            ))
        }
        None => return Err(Error::model("schema_version", "missing or not an unsigned integer")),
    }
    let doc: ModelDocument =
        serde_json::from_value(value).map_err(|e| Error::model("document", e.to_string()))?;

    let inputs = doc
        .inputs
        .into_iter()
        .enumerate()
        .map(|(i, v)| v.into_variable(&format!("inputs[{i}]")))
        .collect::<Result<Vec<_>>>()?;
    let output = doc.output.into_variable("output")?;
    check_term_structure(&inputs, &output).map_err(|e| Error::model("inputs", strip(e)))?;
    for (i, v) in inputs.iter().chain(std::iter::once(&output)).enumerate() {
        let cov = v.min_coverage(super::COVERAGE_GRID);
        if cov < 0.5 - super::COVERAGE_TOLERANCE {
            let field = if i < inputs.len() { format!("inputs[{i}]") } else { "output".into() };
            return Err(Error::model(
                field,
                format!("terms of `{}` leave gaps: coverage drops to {cov}", v.name()),
            ));
        }
    }

    let rules = doc
        .rules
        .into_iter()
        .map(|r| {
            let mut antecedent: Vec<(String, String)> = r.antecedent.into_iter().collect();
            antecedent.sort_by_key(|(var, _)| inputs.iter().position(|v| v.name() == var).unwrap_or(usize::MAX));
            FuzzyRule {
                index: r.index,
                antecedent,
                consequent: r.consequent,
            }
        })
        .collect();
    let rule_base = RuleBase::new(inputs, output, rules).map_err(|e| Error::model("rules", strip(e)))?;

    doc.inference
        .validate()
        .map_err(|e| Error::model("inference", strip(e)))?;
    if let Some(idx) = doc.inference.disabled_rules.iter().find(|&&i| rule_base.rule(i).is_none()) {
        return Err(Error::model(
            "inference.disabled_rules",
            format!("rule {idx} does not exist"),
        ));
    }
    doc.provenance
        .fit_config
        .validate()
        .map_err(|e| Error::model("provenance.fit_config", strip(e)))?;

    Ok(FisModel {
        rule_base,
        inference: doc.inference,
        provenance: doc.provenance,
    })
}
