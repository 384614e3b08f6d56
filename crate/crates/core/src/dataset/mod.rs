//! Labeled flow records: CSV ingestion, stratified sampling, class pools
//! with range statistics, information-gain ranking and a synthetic
//! generator.

mod csv_io;
mod info_gain;
mod pools;
mod sampling;
mod synth;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use csv_io::{parse_csv, write_csv, CsvSchema, LabelMapping, ParseMode, ParseOutcome};
pub use info_gain::{entropy_bits, info_gain, info_gain_rank, FeatureRanking, DEFAULT_BINS};
pub use pools::{sort_and_extract, FeatureStats, Pools, RangeStats};
pub use sampling::subsample;
pub use synth::{synth_generate, ClassProfile, FeatureProfile, SynthProfile};

/// The four flow features retained for detection, in column order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Feature {
    /// Total packet size, bytes.
    PktSize,
    /// Packets per second.
    PktRate,
    /// Bytes per second.
    ByteRate,
    /// Average packet size, bytes.
    PktAvgSize,
}

impl Feature {
    pub const ALL: [Feature; 4] = [
        Feature::PktSize,
        Feature::PktRate,
        Feature::ByteRate,
        Feature::PktAvgSize,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Feature::PktSize => "pkt_size",
            Feature::PktRate => "pkt_rate",
            Feature::ByteRate => "byte_rate",
            Feature::PktAvgSize => "pkt_avg_size",
        }
    }

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn from_name(name: &str) -> Option<Feature> {
        Feature::ALL.into_iter().find(|f| f.name() == name)
    }
}

impl fmt::Display for Feature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Label {
    Normal,
    Intrusion,
}

impl Label {
    pub fn as_str(self) -> &'static str {
        match self {
            Label::Normal => "Normal",
            Label::Intrusion => "Intrusion",
        }
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Label {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "Normal" => Ok(Label::Normal),
            "Intrusion" => Ok(Label::Intrusion),
            other => Err(Error::usage(format!("unknown label `{other}`"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FlowRecord {
    /// Indexed by [`Feature::index`].
    pub features: [f64; 4],
    pub label: Option<Label>,
    /// 0-based position of the record in its source.
    pub source_row: usize,
}

impl FlowRecord {
    pub fn new(features: [f64; 4], label: Option<Label>, source_row: usize) -> Result<Self> {
        for (f, v) in Feature::ALL.iter().zip(features) {
            if !(v.is_finite() && v >= 0.0) {
                return Err(Error::usage(format!(
                    "feature `{f}` must be finite and non-negative, got {v}"
                )));
            }
        }
        Ok(FlowRecord {
            features,
            label,
            source_row,
        })
    }

    pub fn get(&self, feature: Feature) -> f64 {
        self.features[feature.index()]
    }

    pub fn pkt_size(&self) -> f64 {
        self.get(Feature::PktSize)
    }

    pub fn pkt_rate(&self) -> f64 {
        self.get(Feature::PktRate)
    }

    pub fn byte_rate(&self) -> f64 {
        self.get(Feature::ByteRate)
    }

    pub fn pkt_avg_size(&self) -> f64 {
        self.get(Feature::PktAvgSize)
    }
}

/// Ordered records; either every record carries a label or none does.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct LabeledDataset {
    records: Vec<FlowRecord>,
}

impl LabeledDataset {
    pub fn new(records: Vec<FlowRecord>) -> Result<Self> {
        if let Some(first) = records.first() {
            let labeled = first.label.is_some();
            if let Some(r) = records.iter().find(|r| r.label.is_some() != labeled) {
                return Err(Error::usage(format!(
                    "dataset mixes labeled and unlabeled records (source row {})",
                    r.source_row
                )));
            }
        }
        Ok(LabeledDataset { records })
    }

    pub fn records(&self) -> &[FlowRecord] {
        &self.records
    }

    pub fn into_records(self) -> Vec<FlowRecord> {
        self.records
    }

    pub fn len(&self) -> usize {
        self.records.len()
    }

    pub fn is_empty(&self) -> bool {
        self.records.is_empty()
    }

    pub fn is_labeled(&self) -> bool {
        self.records.first().is_some_and(|r| r.label.is_some())
    }

    /// Labels of every record, or `None` for an unlabeled dataset.
    pub fn labels(&self) -> Option<Vec<Label>> {
        self.records.iter().map(|r| r.label).collect()
    }

    pub fn count(&self, label: Label) -> usize {
        self.records.iter().filter(|r| r.label == Some(label)).count()
    }

    pub fn column(&self, feature: Feature) -> Vec<f64> {
        self.records.iter().map(|r| r.get(feature)).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn record_rejects_negative_and_nan() {
        assert!(FlowRecord::new([1.0, 2.0, 3.0, 4.0], None, 0).is_ok());
        assert!(FlowRecord::new([1.0, -2.0, 3.0, 4.0], None, 0).is_err());
        assert!(FlowRecord::new([1.0, 2.0, f64::NAN, 4.0], None, 0).is_err());
    }

    #[test]
    fn dataset_label_homogeneity() {
        let a = FlowRecord::new([1.0; 4], Some(Label::Normal), 0).unwrap();
        let b = FlowRecord::new([1.0; 4], None, 1).unwrap();
        assert!(LabeledDataset::new(vec![a.clone(), b]).is_err());
        let ds = LabeledDataset::new(vec![a]).unwrap();
        assert!(ds.is_labeled());
        assert_eq!(ds.labels(), Some(vec![Label::Normal]));
    }

    #[test]
    fn feature_names_round_trip() {
        for f in Feature::ALL {
            assert_eq!(Feature::from_name(f.name()), Some(f));
        }
    }
}
