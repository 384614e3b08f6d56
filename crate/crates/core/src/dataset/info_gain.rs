use serde::Serialize;

use super::{Feature, Label, LabeledDataset};
use crate::error::{Error, Result};

pub const DEFAULT_BINS: usize = 10;

/// Shannon entropy in bits of a distribution given by counts.
pub fn entropy_bits(counts: &[usize]) -> f64 {
    let total: usize = counts.iter().sum();
    if total == 0 {
        return 0.0;
    }
    let n = total as f64;
    counts
        .iter()
        .filter(|&&c| c > 0)
        .map(|&c| {
            let p = c as f64 / n;
            -p * p.log2()
        })
        .sum()
}

/// Information gain in bits of the label given `values` discretized into
/// `bins` equal-width intervals over their observed range.
///
/// The top edge belongs to the last bin. A constant column has gain 0.
pub fn info_gain(values: &[f64], labels: &[Label], bins: usize) -> Result<f64> {
    if bins < 2 {
        return Err(Error::usage(format!("at least 2 bins are required, got {bins}")));
    }
    if values.len() != labels.len() {
        return Err(Error::usage(format!(
            "{} values but {} labels",
            values.len(),
            labels.len()
        )));
    }
    if values.is_empty() {
        return Err(Error::usage("information gain needs at least one record"));
    }
    let class_counts = count_labels(labels.iter());
    let h_label = entropy_bits(&class_counts);

    let min = values.iter().copied().fold(f64::INFINITY, f64::min);
    let max = values.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    if !(min.is_finite() && max.is_finite()) {
        return Err(Error::usage("information gain needs finite values"));
    }
    if min == max {
        return Ok(0.0);
    }

    let width = max - min;
    let mut table = vec![[0usize; 2]; bins];
    for (&v, &l) in values.iter().zip(labels) {
        let b = ((v - min) * bins as f64 / width).floor() as usize;
        table[b.min(bins - 1)][label_slot(l)] += 1;
    }
    let n = values.len() as f64;
    let conditional: f64 = table
        .iter()
        .map(|cell| {
            let size = cell[0] + cell[1];
            size as f64 / n * entropy_bits(cell)
        })
        .sum();
    // conditional entropy never exceeds h_label, rounding aside
    Ok((h_label - conditional).clamp(0.0, h_label))
}

fn label_slot(l: Label) -> usize {
    match l {
        Label::Normal => 0,
        Label::Intrusion => 1,
    }
}

fn count_labels<'a>(labels: impl Iterator<Item = &'a Label>) -> [usize; 2] {
    let mut c = [0usize; 2];
    for &l in labels {
        c[label_slot(l)] += 1;
    }
    c
}

/// Columns ordered by descending information gain.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FeatureRanking {
    pub entries: Vec<(String, f64)>,
}

impl FeatureRanking {
    /// Ranks arbitrary named columns; ties keep the given order.
    pub fn from_columns(columns: Vec<(String, Vec<f64>)>, labels: &[Label], bins: usize) -> Result<Self> {
        let mut entries = columns
            .into_iter()
            .map(|(name, values)| Ok((name, info_gain(&values, labels, bins)?)))
            .collect::<Result<Vec<_>>>()?;
        // stable sort
        entries.sort_by(|a, b| b.1.total_cmp(&a.1));
        Ok(FeatureRanking { entries })
    }

    pub fn gain(&self, name: &str) -> Option<f64> {
        self.entries.iter().find(|(n, _)| n == name).map(|(_, g)| *g)
    }
}

pub fn info_gain_rank(ds: &LabeledDataset, bins: usize) -> Result<FeatureRanking> {
    let labels = ds
        .labels()
        .filter(|_| !ds.is_empty())
        .ok_or_else(|| Error::usage("feature ranking requires a non-empty labeled dataset"))?;
    let columns = Feature::ALL
        .iter()
        .map(|&f| (f.name().to_owned(), ds.column(f)))
        .collect();
    FeatureRanking::from_columns(columns, &labels, bins)
}
