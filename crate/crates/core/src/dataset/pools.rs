use serde::{Deserialize, Serialize};

use super::{Feature, Label, LabeledDataset};
use crate::error::{Error, Result};

/// Range statistics of one feature.
///
/// `lower_mean` averages the values at or below `mean`, `upper_mean` the
/// values above it; `min <= lower_mean <= mean <= upper_mean <= max`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RangeStats {
    pub min: f64,
    pub max: f64,
    pub mean: f64,
    pub lower_mean: f64,
    pub upper_mean: f64,
}

impl RangeStats {
    pub fn from_values(values: &[f64]) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::usage("range statistics need at least one value"));
        }
        let min = values.iter().copied().fold(f64::INFINITY, f64::min);
        let max = values.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        if min == max {
            return Ok(RangeStats {
                min,
                max,
                mean: min,
                lower_mean: min,
                upper_mean: min,
            });
        }
        // rounding in the sums can push a mean a few ulps past its bounds
        let mean = (values.iter().sum::<f64>() / values.len() as f64).clamp(min, max);
        let half_mean = |pick: &dyn Fn(f64) -> bool| {
            let (sum, n) = values
                .iter()
                .filter(|&&v| pick(v))
                .fold((0.0, 0usize), |(s, n), &v| (s + v, n + 1));
            (n > 0).then(|| sum / n as f64)
        };
        let lower_mean = half_mean(&|v| v <= mean).unwrap_or(mean).clamp(min, mean);
        let upper_mean = half_mean(&|v| v > mean).unwrap_or(mean).clamp(mean, max);
        Ok(RangeStats {
            min,
            max,
            mean,
            lower_mean,
            upper_mean,
        })
    }

    pub fn span(&self) -> f64 {
        self.max - self.min
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FeatureStats {
    /// Indexed by [`Feature::index`].
    pub features: [RangeStats; 4],
}

impl FeatureStats {
    pub fn compute(ds: &LabeledDataset) -> Result<Self> {
        let stats = |f: Feature| RangeStats::from_values(&ds.column(f));
        Ok(FeatureStats {
            features: [
                stats(Feature::PktSize)?,
                stats(Feature::PktRate)?,
                stats(Feature::ByteRate)?,
                stats(Feature::PktAvgSize)?,
            ],
        })
    }

    pub fn get(&self, feature: Feature) -> &RangeStats {
        &self.features[feature.index()]
    }
}

/// Class-homogeneous partitions of a labeled dataset with their statistics.
#[derive(Debug, Clone, PartialEq)]
pub struct Pools {
    pub normal: LabeledDataset,
    pub intrusion: LabeledDataset,
    pub normal_stats: FeatureStats,
    pub intrusion_stats: FeatureStats,
    pub combined_stats: FeatureStats,
}

/// Splits `ds` into normal and intrusion pools and records range statistics
/// of each pool and of their union.
pub fn sort_and_extract(ds: &LabeledDataset) -> Result<Pools> {
    if !ds.is_labeled() {
        return Err(Error::usage("sorting into pools requires a labeled dataset"));
    }
    let (normal, intrusion): (Vec<_>, Vec<_>) = ds
        .records()
        .iter()
        .cloned()
        .partition(|r| r.label == Some(Label::Normal));
    if normal.is_empty() || intrusion.is_empty() {
        let missing = if normal.is_empty() { Label::Normal } else { Label::Intrusion };
        return Err(Error::usage(format!("dataset has no {missing} records")));
    }
    let normal = LabeledDataset::new(normal)?;
    let intrusion = LabeledDataset::new(intrusion)?;
    Ok(Pools {
        normal_stats: FeatureStats::compute(&normal)?,
        intrusion_stats: FeatureStats::compute(&intrusion)?,
        combined_stats: FeatureStats::compute(ds)?,
        normal,
        intrusion,
    })
}
