//! Browser demo: fit a model on synthetic traffic, probe single inferences
//! and sweep the alert threshold.
//!
//! Each operation returns a JSON string. The functions are plain Rust so
//! they can be tested natively; on `wasm32` they are exported through
//! `wasm-bindgen` with errors surfaced as JS exceptions.

use std::cell::RefCell;

use fisids::dataset::{
    sort_and_extract, synth_generate, ClassProfile, FeatureProfile, Label, LabeledDataset, SynthProfile,
};
use fisids::detect::{detect, evaluate_at, metrics, DetectionResult};
use fisids::fitting::{fit, FisModel, FitConfig};
use fisids::fuzzy::infer_traced;
use serde::Serialize;

/// Normal-class means and spreads for the four features.
const BASE: [(f64, f64); 4] = [(300.0, 50.0), (200.0, 30.0), (60_000.0, 8_000.0), (250.0, 40.0)];
const ENVELOPE_POINTS: usize = 201;
const SWEEP_STEPS: usize = 50;

struct Session {
    model: FisModel,
    results: Vec<DetectionResult>,
    labels: Vec<Label>,
}

thread_local! {
    static SESSION: RefCell<Option<Session>> = const { RefCell::new(None) };
}

#[derive(Serialize)]
struct TermView<'a> {
    name: &'a str,
    corners: [f64; 4],
}

#[derive(Serialize)]
struct VariableView<'a> {
    name: &'a str,
    universe: [f64; 2],
    terms: Vec<TermView<'a>>,
}

#[derive(Serialize)]
struct FitView<'a> {
    variables: Vec<VariableView<'a>>,
    output: VariableView<'a>,
    normal_means: [f64; 4],
    intrusion_means: [f64; 4],
    test_records: usize,
}

#[derive(Serialize)]
struct RuleView<'a> {
    index: usize,
    consequent: &'a str,
    strength: f64,
}

#[derive(Serialize)]
struct InferView<'a> {
    fuzzified: Vec<Vec<(String, f64)>>,
    rules: Vec<RuleView<'a>>,
    envelope: Vec<[f64; 2]>,
    score: f64,
    alert_class: String,
    is_intrusion: bool,
    activated: bool,
}

#[derive(Serialize)]
struct SweepPoint {
    threshold: f64,
    tpr: Option<f64>,
    fpr: Option<f64>,
}

#[derive(Serialize)]
struct SweepView {
    threshold: f64,
    tp: usize,
    tn: usize,
    fp: usize,
    fn_: usize,
    tpr: Option<f64>,
    fpr: Option<f64>,
    tnr: Option<f64>,
    fnr: Option<f64>,
    curve: Vec<SweepPoint>,
}

fn view(var: &fisids::fuzzy::LinguisticVariable) -> VariableView<'_> {
    let (lo, hi) = var.universe();
    VariableView {
        name: var.name(),
        universe: [lo, hi],
        terms: var
            .terms()
            .iter()
            .map(|t| TermView {
                name: &t.name,
                corners: t.mf.corners(),
            })
            .collect(),
    }
}

fn to_json<T: Serialize>(value: &T) -> Result<String, String> {
    serde_json::to_string(value).map_err(|e| e.to_string())
}

/// Intrusion means sit `separation` spreads above the normal means.
fn profile(separation: f64) -> SynthProfile {
    SynthProfile {
        normal: ClassProfile {
            features: BASE.map(|(m, s)| FeatureProfile::new(m, s)),
        },
        intrusion: ClassProfile {
            features: BASE.map(|(m, s)| FeatureProfile::new(m + separation * s, s)),
        },
    }
}

/// Fits on `per_class` synthetic records of each class and scores a fresh
/// test set drawn with the next seed. Returns the fitted sets.
pub fn fit_demo(separation: f64, overlap: f64, per_class: usize, seed: u32) -> Result<String, String> {
    if !(0.0..=50.0).contains(&separation) {
        return Err(format!("separation must lie in [0, 50] spreads, got {separation}"));
    }
    let run = || -> fisids::Result<(Session, SynthProfile, usize)> {
        let profile = profile(separation);
        let cfg = FitConfig::new(overlap)?;
        let train = synth_generate(&profile, (per_class, per_class), u64::from(seed))?;
        let test: LabeledDataset = synth_generate(&profile, (per_class, per_class), u64::from(seed) + 1)?;
        let model = fit(&sort_and_extract(&train)?, &cfg)?;
        let results = detect(&model, &test)?;
        let labels = test.labels().expect("synthetic data is labeled");
        Ok((Session { model, results, labels }, profile, test.len()))
    };
    let (session, profile, test_records) = run().map_err(|e| e.to_string())?;
    let json = to_json(&FitView {
        variables: session.model.rule_base.inputs().iter().map(view).collect(),
        output: view(session.model.rule_base.output()),
        normal_means: profile.normal.features.map(|f| f.mean),
        intrusion_means: profile.intrusion.features.map(|f| f.mean),
        test_records,
    })?;
    SESSION.with(|s| *s.borrow_mut() = Some(session));
    Ok(json)
}

fn with_session<T>(f: impl FnOnce(&Session) -> Result<T, String>) -> Result<T, String> {
    SESSION.with(|s| match s.borrow().as_ref() {
        Some(session) => f(session),
        None => Err("fit a model first".to_owned()),
    })
}

/// Full trace of one inference on the current model.
pub fn infer_demo(pkt_size: f64, pkt_rate: f64, byte_rate: f64, pkt_avg_size: f64) -> Result<String, String> {
    with_session(|s| {
        let rb = &s.model.rule_base;
        let trace = infer_traced(rb, &s.model.inference, &[pkt_size, pkt_rate, byte_rate, pkt_avg_size])
            .map_err(|e| e.to_string())?;
        let step = (trace.envelope.len() - 1) / (ENVELOPE_POINTS - 1);
        let envelope = trace.envelope.points().step_by(step.max(1)).map(|(y, m)| [y, m]).collect();
        to_json(&InferView {
            fuzzified: trace.fuzzified.into_iter().map(|f| f.degrees).collect(),
            rules: rb
                .rules()
                .iter()
                .zip(&trace.strengths)
                .map(|(r, &strength)| RuleView {
                    index: r.index,
                    consequent: &r.consequent,
                    strength,
                })
                .collect(),
            envelope,
            score: trace.alert.score,
            alert_class: trace.alert.alert_class,
            is_intrusion: trace.alert.is_intrusion,
            activated: trace.alert.activated,
        })
    })
}

/// Confusion matrix on the held-out set at `threshold`, plus the whole
/// threshold curve.
pub fn sweep_demo(threshold: f64) -> Result<String, String> {
    with_session(|s| {
        let at = |t: f64| {
            evaluate_at(&s.results, &s.labels, t)
                .and_then(|cm| metrics(&cm).map(|m| (cm, m)))
                .map_err(|e| e.to_string())
        };
        let (cm, m) = at(threshold)?;
        let curve = (0..=SWEEP_STEPS)
            .map(|i| {
                let t = i as f64 / SWEEP_STEPS as f64;
                at(t).map(|(_, m)| SweepPoint {
                    threshold: t,
                    tpr: m.tpr,
                    fpr: m.fpr,
                })
            })
            .collect::<Result<_, _>>()?;
        to_json(&SweepView {
            threshold,
            tp: cm.tp,
            tn: cm.tn,
            fp: cm.fp,
            fn_: cm.fn_,
            tpr: m.tpr,
            fpr: m.fpr,
            tnr: m.tnr,
            fnr: m.fnr,
            curve,
        })
    })
}

#[cfg(target_arch = "wasm32")]
mod bindings {
    use wasm_bindgen::prelude::*;

    fn js(r: Result<String, String>) -> Result<String, JsValue> {
        r.map_err(|e| JsValue::from_str(&e))
    }

    #[wasm_bindgen(js_name = fitDemo)]
    pub fn fit_demo(separation: f64, overlap: f64, per_class: usize, seed: u32) -> Result<String, JsValue> {
        js(super::fit_demo(separation, overlap, per_class, seed))
    }

    #[wasm_bindgen(js_name = inferDemo)]
    pub fn infer_demo(pkt_size: f64, pkt_rate: f64, byte_rate: f64, pkt_avg_size: f64) -> Result<String, JsValue> {
        js(super::infer_demo(pkt_size, pkt_rate, byte_rate, pkt_avg_size))
    }

    #[wasm_bindgen(js_name = sweepDemo)]
    pub fn sweep_demo(threshold: f64) -> Result<String, JsValue> {
        js(super::sweep_demo(threshold))
    }
}
