//! Mamdani fuzzy inference over trapezoidal linguistic variables.
//!
//! Rules combine antecedent degrees with `min`, clip their consequent at the
//! firing strength and the clipped sets are joined with `max`. The crisp
//! output is the centroid of the joined set sampled on a uniform grid.

mod inference;
mod membership;
mod rules;
mod variable;

pub use inference::{
    aggregate, classify, defuzzify_centroid, fuzzify, infer, infer_traced, rule_strength, AlertScore, Centroid,
    Envelope, Fuzzified, InferenceConfig, InferenceTrace, DEFAULT_GRID_POINTS, DEFAULT_THRESHOLD,
};
pub use membership::Trapezoid;
pub use rules::{FuzzyRule, RuleBase};
pub use variable::{LinguisticTerm, LinguisticVariable};
