use rand::seq::index;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::{Label, LabeledDataset};
use crate::error::{Error, Result};

/// Stratified sample keeping `round(fraction * n)` records of each class,
/// in their original order.
///
/// An unlabeled dataset is treated as a single class.
pub fn subsample(ds: &LabeledDataset, fraction: f64, seed: u64) -> Result<LabeledDataset> {
    if !(fraction > 0.0 && fraction <= 1.0) {
        return Err(Error::usage(format!("sample fraction must lie in (0, 1], got {fraction}")));
    }
    let strata: Vec<Option<Label>> = if ds.is_labeled() {
        vec![Some(Label::Normal), Some(Label::Intrusion)]
    } else {
        vec![None]
    };

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut keep = vec![false; ds.len()];
    for label in strata {
        let members: Vec<usize> = ds
            .records()
            .iter()
            .enumerate()
            .filter(|(_, r)| r.label == label)
            .map(|(i, _)| i)
            .collect();
        if members.is_empty() {
            continue;
        }
        let k = (fraction * members.len() as f64).round() as usize;
        if k == 0 {
            let class = label.map_or("unlabeled", Label::as_str);
            return Err(Error::usage(format!(
                "sampling {fraction} of {} {class} records keeps none",
                members.len()
            )));
        }
        for i in index::sample(&mut rng, members.len(), k) {
            keep[members[i]] = true;
        }
    }
    let records = ds
        .records()
        .iter()
        .zip(keep)
        .filter(|(_, k)| *k)
        .map(|(r, _)| r.clone())
        .collect();
    LabeledDataset::new(records)
}
