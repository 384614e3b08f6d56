//! Scoring flows with a fitted model and measuring detection quality.

mod metrics;
mod report;

use serde::{Deserialize, Serialize};

use crate::dataset::{FlowRecord, Label, LabeledDataset};
use crate::error::{Error, Result};
use crate::fitting::FisModel;
use crate::fuzzy::{infer, AlertScore};

pub use metrics::{metrics, MetricsReport};
pub use report::{report, OutputFormat};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DetectionResult {
    pub source_row: usize,
    pub inputs: [f64; 4],
    pub alert: AlertScore,
}

/// Scores every record, in input order. Labels are ignored.
pub fn detect(model: &FisModel, ds: &LabeledDataset) -> Result<Vec<DetectionResult>> {
    detect_records(model, ds.records())
}

pub fn detect_records(model: &FisModel, records: &[FlowRecord]) -> Result<Vec<DetectionResult>> {
    model.inference.validate()?;
    let score = |r: &FlowRecord| {
        Ok(DetectionResult {
            source_row: r.source_row,
            inputs: r.features,
            alert: infer(&model.rule_base, &model.inference, &r.features)?,
        })
    };
    #[cfg(feature = "parallel")]
    {
        use rayon::prelude::*;
        records.par_iter().map(score).collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        records.iter().map(score).collect()
    }
}

/// Binary confusion counts with Intrusion as the positive class.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct ConfusionMatrix {
    pub tp: usize,
    pub tn: usize,
    pub fp: usize,
    pub fn_: usize,
}

impl ConfusionMatrix {
    pub fn new(tp: usize, tn: usize, fp: usize, fn_: usize) -> Self {
        ConfusionMatrix { tp, tn, fp, fn_ }
    }

    pub fn total(&self) -> usize {
        self.tp + self.tn + self.fp + self.fn_
    }

    pub fn record(&mut self, actual: Label, flagged: bool) {
        match (actual, flagged) {
            (Label::Intrusion, true) => self.tp += 1,
            (Label::Intrusion, false) => self.fn_ += 1,
            (Label::Normal, true) => self.fp += 1,
            (Label::Normal, false) => self.tn += 1,
        }
    }

    /// Counts with actual and predicted classes exchanged.
    pub fn transposed(&self) -> Self {
        ConfusionMatrix {
            fp: self.fn_,
            fn_: self.fp,
            ..*self
        }
    }

    /// Counts with Normal and Intrusion exchanged in both labels and alarms.
    pub fn swap_classes(&self) -> Self {
        ConfusionMatrix {
            tp: self.tn,
            tn: self.tp,
            fp: self.fn_,
            fn_: self.fp,
        }
    }
}

pub fn evaluate(results: &[DetectionResult], labels: &[Label]) -> Result<ConfusionMatrix> {
    if results.len() != labels.len() {
        return Err(Error::usage(format!(
            "{} detection results but {} labels",
            results.len(),
            labels.len()
        )));
    }
    let mut cm = ConfusionMatrix::default();
    for (r, &l) in results.iter().zip(labels) {
        cm.record(l, r.alert.is_intrusion);
    }
    Ok(cm)
}

/// Confusion counts when alarms are raised at `threshold` instead of the
/// threshold the results were produced with.
pub fn evaluate_at(results: &[DetectionResult], labels: &[Label], threshold: f64) -> Result<ConfusionMatrix> {
    if !(0.0..=1.0).contains(&threshold) {
        return Err(Error::usage(format!("threshold must lie in [0, 1], got {threshold}")));
    }
    if results.len() != labels.len() {
        return Err(Error::usage(format!(
            "{} detection results but {} labels",
            results.len(),
            labels.len()
        )));
    }
    let mut cm = ConfusionMatrix::default();
    for (r, &l) in results.iter().zip(labels) {
        cm.record(l, r.alert.score >= threshold);
    }
    Ok(cm)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn result(flagged: bool) -> DetectionResult {
        DetectionResult {
            source_row: 0,
            inputs: [0.0; 4],
            alert: AlertScore {
                score: if flagged { 0.9 } else { 0.1 },
                alert_class: String::new(),
                is_intrusion: flagged,
                activated: true,
            },
        }
    }

    fn reference_counts() -> (Vec<DetectionResult>, Vec<Label>) {
        let mut results = Vec::new();
        let mut labels = Vec::new();
        for i in 0..5000 {
            results.push(result(i < 4555));
            labels.push(Label::Intrusion);
        }
        for i in 0..5000 {
            results.push(result(i < 30));
            labels.push(Label::Normal);
        }
        (results, labels)
    }

    #[test]
    fn table_counts() {
        let (results, labels) = reference_counts();
        let cm = evaluate(&results, &labels).unwrap();
        assert_eq!(cm, ConfusionMatrix::new(4555, 4970, 30, 445));
        assert_eq!(cm.total(), 10_000);
    }

    #[test]
    fn all_correct() {
        let labels = [Label::Normal, Label::Intrusion, Label::Intrusion];
        let results = [result(false), result(true), result(true)];
        let cm = evaluate(&results, &labels).unwrap();
        assert_eq!((cm.fp, cm.fn_), (0, 0));
    }

    fn flip(l: Label) -> Label {
        match l {
            Label::Normal => Label::Intrusion,
            Label::Intrusion => Label::Normal,
        }
    }

    #[test]
    fn swapping_class_roles_exchanges_tp_tn_and_fp_fn() {
        let (results, labels) = reference_counts();
        let flipped_results: Vec<_> = results.iter().map(|r| result(!r.alert.is_intrusion)).collect();
        let flipped_labels: Vec<_> = labels.iter().map(|&l| flip(l)).collect();
        let a = evaluate(&results, &labels).unwrap();
        let b = evaluate(&flipped_results, &flipped_labels).unwrap();
        assert_eq!(b, ConfusionMatrix::new(4970, 4555, 445, 30));
        assert_eq!(b, a.swap_classes());
    }

    #[test]
    fn exchanging_labels_with_alarms_transposes() {
        let (results, labels) = reference_counts();
        let as_results: Vec<_> = labels.iter().map(|&l| result(l == Label::Intrusion)).collect();
        let as_labels: Vec<_> = results
            .iter()
            .map(|r| if r.alert.is_intrusion { Label::Intrusion } else { Label::Normal })
            .collect();
        let a = evaluate(&results, &labels).unwrap();
        let b = evaluate(&as_results, &as_labels).unwrap();
        assert_eq!(b, a.transposed());
        assert_eq!(b, ConfusionMatrix::new(4555, 4970, 445, 30));
    }

    #[test]
    fn length_mismatch() {
        assert!(matches!(evaluate(&[result(true)], &[]), Err(Error::Usage(_))));
        assert!(evaluate_at(&[result(true)], &[], 0.5).is_err());
    }
}
