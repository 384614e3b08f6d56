//! Fuzzy set placement from pool statistics, the 36-rule base and the
//! model file.

mod model;
mod rulebase;
mod sets;

use serde::{Deserialize, Serialize};

use crate::dataset::{Label, Pools};
use crate::error::{Error, Result};
use crate::fuzzy::InferenceConfig;

pub use model::{load_model, save_model, FisModel, Provenance, SCHEMA_VERSION};
pub use rulebase::{build_rule_base, check_term_structure, RuleRow, RULE_TABLE};
pub use sets::{
    estimate_fuzzy_sets, output_variable, term_structure, FALSE_ATTACK, HIGH, HIGH_ATTACK, LARGE, LOW,
    LOW_ATTACK, MEDIUM, MEDIUM_ATTACK, OUTPUT_NAME, SMALL,
};

pub const DEFAULT_OVERLAP: f64 = 0.10;

/// Grid used when checking that a variable's terms leave no gaps.
pub(crate) const COVERAGE_GRID: usize = 1001;
pub(crate) const COVERAGE_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FitConfig {
    /// Half-width of each crossover ramp as a fraction of the universe span.
    pub overlap: f64,
}

impl Default for FitConfig {
    fn default() -> Self {
        FitConfig {
            overlap: DEFAULT_OVERLAP,
        }
    }
}

impl FitConfig {
    pub fn new(overlap: f64) -> Result<Self> {
        let cfg = FitConfig { overlap };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<()> {
        if self.overlap > 0.0 && self.overlap < 0.5 {
            Ok(())
        } else {
            Err(Error::usage(format!(
                "overlap must lie strictly between 0 and 0.5, got {}",
                self.overlap
            )))
        }
    }
}

/// Fits input sets, attaches the full rule base and records provenance.
pub fn fit(pools: &Pools, cfg: &FitConfig) -> Result<FisModel> {
    let inputs = estimate_fuzzy_sets(pools, cfg)?;
    let rule_base = build_rule_base(inputs.into(), output_variable())?;
    Ok(FisModel {
        rule_base,
        inference: InferenceConfig::default(),
        provenance: Provenance {
            fit_config: *cfg,
            normal_stats: pools.normal_stats,
            intrusion_stats: pools.intrusion_stats,
            combined_stats: pools.combined_stats,
            training_records: (pools.normal.count(Label::Normal), pools.intrusion.count(Label::Intrusion)),
            created_unix: None,
        },
    })
}
