use fisids::dataset::{sort_and_extract, synth_generate, FlowRecord, Label, LabeledDataset, SynthProfile};
use fisids::detect::{detect, evaluate, evaluate_at, metrics, report, ConfusionMatrix, OutputFormat};
use fisids::fitting::{fit, FisModel, FitConfig};
use fisids::fuzzy::classify;
use proptest::prelude::*;
use std::sync::OnceLock;

fn model() -> &'static FisModel {
    static MODEL: OnceLock<FisModel> = OnceLock::new();
    MODEL.get_or_init(|| {
        let ds = synth_generate(&SynthProfile::flood(), (500, 500), 10).unwrap();
        fit(&sort_and_extract(&ds).unwrap(), &FitConfig::default()).unwrap()
    })
}

#[test]
fn one_result_per_record_in_order() {
    let ds = synth_generate(&SynthProfile::flood(), (5000, 5000), 11).unwrap();
    let results = detect(model(), &ds).unwrap();
    assert_eq!(results.len(), 10_000);
    assert!(results.iter().enumerate().all(|(i, r)| r.source_row == i));
    assert!(results.iter().all(|r| (0.0..=1.0).contains(&r.alert.score)));
}

#[test]
fn empty_and_unlabeled_inputs() {
    assert!(detect(model(), &LabeledDataset::default()).unwrap().is_empty());
    let unlabeled = LabeledDataset::new(vec![FlowRecord::new([300.0, 200.0, 6e4, 250.0], None, 0).unwrap()]).unwrap();
    assert_eq!(detect(model(), &unlabeled).unwrap().len(), 1);
}

#[test]
fn duplicates_score_identically() {
    let r = FlowRecord::new([640.0, 510.0, 2.1e5, 470.0], Some(Label::Normal), 0).unwrap();
    let mut r2 = r.clone();
    r2.source_row = 1;
    let results = detect(model(), &LabeledDataset::new(vec![r, r2]).unwrap()).unwrap();
    assert_eq!(results[0].alert, results[1].alert);
}

#[test]
fn every_result_satisfies_argmax_and_threshold() {
    let ds = synth_generate(&SynthProfile::flood(), (300, 300), 12).unwrap();
    let m = model();
    for r in detect(m, &ds).unwrap() {
        assert_eq!(r.alert.alert_class, classify(m.rule_base.output(), r.alert.score));
        assert_eq!(r.alert.is_intrusion, r.alert.score >= m.inference.threshold);
    }
}

#[test]
fn report_for_a_scored_run() {
    let ds = synth_generate(&SynthProfile::flood(), (20, 20), 13).unwrap();
    let results = detect(model(), &ds).unwrap();
    let cm = evaluate(&results, &ds.labels().unwrap()).unwrap();
    let m = metrics(&cm).unwrap();
    let mut buf = Vec::new();
    report(&results, Some(&m), OutputFormat::Csv, &mut buf).unwrap();
    let doc = String::from_utf8(buf).unwrap();
    assert_eq!(doc.lines().filter(|l| !l.starts_with('#')).count(), 41);
    let mut buf = Vec::new();
    report(&[], Some(&m), OutputFormat::Text, &mut buf).unwrap();
    assert!(String::from_utf8(buf).unwrap().contains("TPR"));
}

fn scored() -> impl Strategy<Value = Vec<(f64, bool)>> {
    prop::collection::vec((0.0f64..=1.0, any::<bool>()), 1..100)
}

fn to_results(rows: &[(f64, bool)], tau: f64) -> (Vec<fisids::detect::DetectionResult>, Vec<Label>) {
    let results = rows
        .iter()
        .enumerate()
        .map(|(i, &(s, _))| fisids::detect::DetectionResult {
            source_row: i,
            inputs: [0.0; 4],
            alert: fisids::fuzzy::AlertScore {
                score: s,
                alert_class: String::new(),
                is_intrusion: s >= tau,
                activated: true,
            },
        })
        .collect();
    let labels = rows
        .iter()
        .map(|&(_, b)| if b { Label::Intrusion } else { Label::Normal })
        .collect();
    (results, labels)
}

proptest! {
    #[test]
    fn counts_match_direct_recount(rows in scored(), tau in 0.0f64..=1.0) {
        let (results, labels) = to_results(&rows, tau);
        let cm = evaluate(&results, &labels).unwrap();
        prop_assert_eq!(cm.total(), rows.len());
        let tp = rows.iter().filter(|r| r.1 && r.0 >= tau).count();
        let fn_ = rows.iter().filter(|r| r.1 && r.0 < tau).count();
        let fp = rows.iter().filter(|r| !r.1 && r.0 >= tau).count();
        let tn = rows.iter().filter(|r| !r.1 && r.0 < tau).count();
        prop_assert_eq!(cm, ConfusionMatrix::new(tp, tn, fp, fn_));
        prop_assert_eq!(evaluate_at(&results, &labels, tau).unwrap(), cm);
    }

    #[test]
    fn raising_threshold_is_monotone(rows in scored(), t1 in 0.0f64..=1.0, t2 in 0.0f64..=1.0) {
        let (lo, hi) = if t1 <= t2 { (t1, t2) } else { (t2, t1) };
        let (results, labels) = to_results(&rows, 0.5);
        let a = evaluate_at(&results, &labels, lo).unwrap();
        let b = evaluate_at(&results, &labels, hi).unwrap();
        prop_assert!(b.tp <= a.tp && b.fp <= a.fp && b.tn >= a.tn && b.fn_ >= a.fn_);
    }

    #[test]
    fn complementary_rates_sum_to_one(tp in 0usize..10_000, tn in 0usize..10_000, fp in 0usize..10_000, fn_ in 0usize..10_000) {
        let cm = ConfusionMatrix::new(tp, tn, fp, fn_);
        prop_assume!(cm.total() > 0);
        let m = metrics(&cm).unwrap();
        if let (Some(a), Some(b)) = (m.tpr, m.fnr) {
            prop_assert!((a + b - 1.0).abs() < 1e-12);
        } else {
            prop_assert_eq!(tp + fn_, 0);
        }
        if let (Some(a), Some(b)) = (m.tnr, m.fpr) {
            prop_assert!((a + b - 1.0).abs() < 1e-12);
        } else {
            prop_assert_eq!(tn + fp, 0);
        }
        prop_assert!((0.0..=1.0).contains(&m.detection_rate));
    }
}
