use serde::{Deserialize, Serialize};

use super::ConfusionMatrix;
use crate::error::{Error, Result};

/// Detection rates. A rate is `None` when its denominator is zero.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MetricsReport {
    pub tpr: Option<f64>,
    pub fpr: Option<f64>,
    pub tnr: Option<f64>,
    pub fnr: Option<f64>,
    /// `(tp + tn) / total`.
    pub detection_rate: f64,
    pub counts: ConfusionMatrix,
}

fn ratio(num: usize, den: usize) -> Option<f64> {
    (den > 0).then(|| num as f64 / den as f64)
}

pub fn metrics(cm: &ConfusionMatrix) -> Result<MetricsReport> {
    let total = cm.total();
    if total == 0 {
        return Err(Error::usage("confusion matrix is empty"));
    }
    let positives = cm.tp + cm.fn_;
    let negatives = cm.fp + cm.tn;
    Ok(MetricsReport {
        tpr: ratio(cm.tp, positives),
        fnr: ratio(cm.fn_, positives),
        fpr: ratio(cm.fp, negatives),
        tnr: ratio(cm.tn, negatives),
        detection_rate: (cm.tp + cm.tn) as f64 / total as f64,
        counts: *cm,
    })
}
