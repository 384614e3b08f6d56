use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use super::rules::{FuzzyRule, RuleBase};
use super::variable::{uniform_grid, LinguisticVariable};
use crate::error::{Error, Result};

pub const DEFAULT_GRID_POINTS: usize = 1001;
pub const DEFAULT_THRESHOLD: f64 = 0.5;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct InferenceConfig {
    /// Samples of the output universe used for aggregation and the centroid.
    pub grid_points: usize,
    /// Crisp scores at or above this value raise an intrusion alarm.
    pub threshold: f64,
    /// Rules (by index) that never fire.
    #[serde(default)]
    pub disabled_rules: BTreeSet<usize>,
}

impl Default for InferenceConfig {
    fn default() -> Self {
        InferenceConfig {
            grid_points: DEFAULT_GRID_POINTS,
            threshold: DEFAULT_THRESHOLD,
            disabled_rules: BTreeSet::new(),
        }
    }
}

impl InferenceConfig {
    pub fn with_threshold(mut self, threshold: f64) -> Self {
        self.threshold = threshold;
        self
    }

    pub fn with_grid_points(mut self, grid_points: usize) -> Self {
        self.grid_points = grid_points;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if self.grid_points < 3 {
            return Err(Error::config(format!(
                "grid_points must be at least 3, got {}",
                self.grid_points
            )));
        }
        if !(0.0..=1.0).contains(&self.threshold) {
            return Err(Error::config(format!(
                "threshold must lie in [0, 1], got {}",
                self.threshold
            )));
        }
        Ok(())
    }
}

/// Degrees of one crisp value in every term of a variable.
#[derive(Debug, Clone, PartialEq)]
pub struct Fuzzified {
    pub variable: String,
    pub degrees: Vec<(String, f64)>,
}

impl Fuzzified {
    pub fn degree(&self, term: &str) -> Option<f64> {
        self.degrees.iter().find(|(t, _)| t == term).map(|(_, d)| *d)
    }
}

/// Pointwise samples `(y, mu(y))` of the aggregated output fuzzy set.
#[derive(Debug, Clone, PartialEq)]
pub struct Envelope {
    pub ys: Vec<f64>,
    pub mu: Vec<f64>,
}

impl Envelope {
    pub fn len(&self) -> usize {
        self.ys.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ys.is_empty()
    }

    pub fn points(&self) -> impl Iterator<Item = (f64, f64)> + '_ {
        self.ys.iter().copied().zip(self.mu.iter().copied())
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Centroid {
    pub value: f64,
    /// False when the envelope has zero mass; `value` is then 0.
    pub activated: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AlertScore {
    pub score: f64,
    pub alert_class: String,
    pub is_intrusion: bool,
    pub activated: bool,
}

/// Every intermediate of one inference, mainly for inspection and plotting.
#[derive(Debug, Clone, PartialEq)]
pub struct InferenceTrace {
    pub fuzzified: Vec<Fuzzified>,
    pub strengths: Vec<f64>,
    pub envelope: Envelope,
    pub alert: AlertScore,
}

/// Membership of `x` (clamped into the universe) in each term.
pub fn fuzzify(var: &LinguisticVariable, x: f64) -> Fuzzified {
    let degrees = degrees(var, x);
    Fuzzified {
        variable: var.name().to_owned(),
        degrees: var.term_names().map(str::to_owned).zip(degrees).collect(),
    }
}

fn degrees(var: &LinguisticVariable, x: f64) -> Vec<f64> {
    let x = var.clamp(x);
    var.terms().iter().map(|t| t.mf.membership(x)).collect()
}

/// Firing strength of `rule` under min-AND.
pub fn rule_strength(rule: &FuzzyRule, fuzzified: &[Fuzzified]) -> Result<f64> {
    let mut strength = 1.0f64;
    for (var, term) in &rule.antecedent {
        let f = fuzzified.iter().find(|f| &f.variable == var).ok_or_else(|| {
            Error::config(format!("rule {}: no fuzzified input for variable `{var}`", rule.index))
        })?;
        let d = f.degree(term).ok_or_else(|| {
            Error::config(format!("rule {}: variable `{var}` has no term `{term}`", rule.index))
        })?;
        strength = strength.min(d);
    }
    Ok(strength)
}

/// Clip each rule's consequent at its strength and take the pointwise max.
pub fn aggregate(rb: &RuleBase, strengths: &[f64], grid_points: usize) -> Result<Envelope> {
    if strengths.len() != rb.rules().len() {
        return Err(Error::config(format!(
            "expected {} rule strengths, got {}",
            rb.rules().len(),
            strengths.len()
        )));
    }
    let output = rb.output();
    // max_r min(s_r, mu_c(r)(y)) == max_c min(max_{r: c(r) = c} s_r, mu_c(y))
    let mut clip = vec![0.0f64; output.terms().len()];
    for (rule, &s) in rb.compiled().iter().zip(strengths) {
        clip[rule.consequent] = clip[rule.consequent].max(s);
    }
    let (lo, hi) = output.universe();
    let ys = uniform_grid(lo, hi, grid_points);
    let mu = ys
        .iter()
        .map(|&y| {
            output
                .terms()
                .iter()
                .zip(&clip)
                .filter(|(_, &h)| h > 0.0)
                .map(|(t, &h)| h.min(t.mf.membership(y)))
                .fold(0.0, f64::max)
        })
        .collect();
    Ok(Envelope { ys, mu })
}

/// Discrete centroid `sum(y * mu) / sum(mu)` over the envelope samples.
pub fn defuzzify_centroid(envelope: &Envelope) -> Result<Centroid> {
    if envelope.is_empty() {
        return Err(Error::usage("cannot defuzzify an empty envelope"));
    }
    if envelope.ys.len() != envelope.mu.len() {
        return Err(Error::usage("envelope abscissae and memberships differ in length"));
    }
    let (mut moment, mut mass) = (0.0, 0.0);
    for (y, m) in envelope.points() {
        moment += y * m;
        mass += m;
    }
    if mass > 0.0 {
        Ok(Centroid {
            value: moment / mass,
            activated: true,
        })
    } else {
        Ok(Centroid {
            value: 0.0,
            activated: false,
        })
    }
}

/// Output term with the highest membership at `score`; ties go to the
/// earlier term.
pub fn classify(output: &LinguisticVariable, score: f64) -> &str {
    let mut best = 0;
    let mut best_mu = f64::NEG_INFINITY;
    for (i, t) in output.terms().iter().enumerate() {
        let m = t.mf.membership(score);
        if m > best_mu {
            best = i;
            best_mu = m;
        }
    }
    &output.terms()[best].name
}

pub fn infer(rb: &RuleBase, cfg: &InferenceConfig, inputs: &[f64]) -> Result<AlertScore> {
    let strengths = strengths(rb, cfg, inputs)?;
    let envelope = aggregate(rb, &strengths, cfg.grid_points)?;
    alert(rb, cfg, &envelope)
}

pub fn infer_traced(rb: &RuleBase, cfg: &InferenceConfig, inputs: &[f64]) -> Result<InferenceTrace> {
    let strengths = strengths(rb, cfg, inputs)?;
    let envelope = aggregate(rb, &strengths, cfg.grid_points)?;
    let alert = alert(rb, cfg, &envelope)?;
    let fuzzified = rb
        .inputs()
        .iter()
        .zip(inputs)
        .map(|(v, &x)| fuzzify(v, x))
        .collect();
    Ok(InferenceTrace {
        fuzzified,
        strengths,
        envelope,
        alert,
    })
}

fn strengths(rb: &RuleBase, cfg: &InferenceConfig, inputs: &[f64]) -> Result<Vec<f64>> {
    cfg.validate()?;
    if inputs.len() != rb.inputs().len() {
        return Err(Error::config(format!(
            "rule base takes {} inputs, got {}",
            rb.inputs().len(),
            inputs.len()
        )));
    }
    if let Some(x) = inputs.iter().find(|x| !x.is_finite()) {
        return Err(Error::usage(format!("inference input must be finite, got {x}")));
    }
    let degrees: Vec<Vec<f64>> = rb
        .inputs()
        .iter()
        .zip(inputs)
        .map(|(v, &x)| degrees(v, x))
        .collect();
    Ok(rb
        .compiled()
        .iter()
        .zip(rb.rules())
        .map(|(c, rule)| {
            if cfg.disabled_rules.contains(&rule.index) {
                return 0.0;
            }
            c.terms
                .iter()
                .zip(&degrees)
                .map(|(&t, d)| d[t])
                .fold(1.0, f64::min)
        })
        .collect())
}

fn alert(rb: &RuleBase, cfg: &InferenceConfig, envelope: &Envelope) -> Result<AlertScore> {
    let centroid = defuzzify_centroid(envelope)?;
    Ok(AlertScore {
        score: centroid.value,
        alert_class: classify(rb.output(), centroid.value).to_owned(),
        is_intrusion: centroid.value >= cfg.threshold,
        activated: centroid.activated,
    })
}
