use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use serde::{Deserialize, Serialize};

use super::{Feature, FlowRecord, Label, LabeledDataset};
use crate::error::{Error, Result};

/// Gaussian-shaped draw around `mean` with standard deviation `spread`,
/// truncated at zero.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FeatureProfile {
    pub mean: f64,
    pub spread: f64,
}

impl FeatureProfile {
    pub const fn new(mean: f64, spread: f64) -> Self {
        FeatureProfile { mean, spread }
    }

    fn sample<R: Rng>(&self, rng: &mut R) -> f64 {
        if self.spread == 0.0 {
            return self.mean;
        }
        // mean >= 0 keeps the acceptance rate at 1/2 or better
        loop {
            let z: f64 = StandardNormal.sample(rng);
            let v = self.mean + self.spread * z;
            if v >= 0.0 {
                return v;
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ClassProfile {
    /// Indexed by [`Feature::index`].
    pub features: [FeatureProfile; 4],
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SynthProfile {
    pub normal: ClassProfile,
    pub intrusion: ClassProfile,
}

impl SynthProfile {
    /// Flood-style traffic: intrusions send larger packets at higher rates.
    /// Class means sit 6 to 40 spreads apart on every feature.
    pub fn flood() -> Self {
        SynthProfile {
            normal: ClassProfile {
                features: [
                    FeatureProfile::new(300.0, 50.0),
                    FeatureProfile::new(200.0, 30.0),
                    FeatureProfile::new(60_000.0, 8_000.0),
                    FeatureProfile::new(250.0, 40.0),
                ],
            },
            intrusion: ClassProfile {
                features: [
                    FeatureProfile::new(1_000.0, 50.0),
                    FeatureProfile::new(800.0, 30.0),
                    FeatureProfile::new(400_000.0, 8_000.0),
                    FeatureProfile::new(700.0, 40.0),
                ],
            },
        }
    }

    pub fn class(&self, label: Label) -> &ClassProfile {
        match label {
            Label::Normal => &self.normal,
            Label::Intrusion => &self.intrusion,
        }
    }

    pub fn validate(&self) -> Result<()> {
        for label in [Label::Normal, Label::Intrusion] {
            for (f, p) in Feature::ALL.iter().zip(&self.class(label).features) {
                if !(p.mean.is_finite() && p.mean >= 0.0) {
                    return Err(Error::usage(format!(
                        "{label} `{f}` mean must be finite and non-negative, got {}",
                        p.mean
                    )));
                }
                if !(p.spread.is_finite() && p.spread >= 0.0) {
                    return Err(Error::usage(format!(
                        "{label} `{f}` spread must be finite and non-negative, got {}",
                        p.spread
                    )));
                }
            }
        }
        Ok(())
    }

    /// Smallest distance between class means over all features, in units
    /// of the larger of the two spreads.
    pub fn min_separation(&self) -> f64 {
        Feature::ALL
            .iter()
            .map(|f| {
                let n = self.normal.features[f.index()];
                let i = self.intrusion.features[f.index()];
                (n.mean - i.mean).abs() / n.spread.max(i.spread)
            })
            .fold(f64::INFINITY, f64::min)
    }
}

impl Default for SynthProfile {
    fn default() -> Self {
        SynthProfile::flood()
    }
}

/// `counts.0` normal records followed by `counts.1` intrusion records.
pub fn synth_generate(profile: &SynthProfile, counts: (usize, usize), seed: u64) -> Result<LabeledDataset> {
    profile.validate()?;
    if counts.0 == 0 || counts.1 == 0 {
        return Err(Error::usage(format!(
            "each class needs at least one record, got {},{}",
            counts.0, counts.1
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut records = Vec::with_capacity(counts.0 + counts.1);
    for (label, n) in [(Label::Normal, counts.0), (Label::Intrusion, counts.1)] {
        let class = profile.class(label);
        for _ in 0..n {
            let features = class.features.map(|p| p.sample(&mut rng));
            records.push(FlowRecord {
                features,
                label: Some(label),
                source_row: records.len(),
            });
        }
    }
    LabeledDataset::new(records)
}
