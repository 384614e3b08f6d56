mod common;

use common::*;
use fisids::fitting::{output_variable, FALSE_ATTACK, HIGH_ATTACK};
use fisids::fuzzy::{
    aggregate, defuzzify_centroid, infer, infer_traced, Envelope, FuzzyRule, InferenceConfig, LinguisticTerm,
    LinguisticVariable, RuleBase, Trapezoid,
};
use proptest::prelude::*;

/// One input with three plateau terms, each mapped to a chosen output term.
fn single_input(consequents: [&str; 3]) -> RuleBase {
    let t = |a, b, c, d| Trapezoid::new(a, b, c, d).unwrap();
    let x = LinguisticVariable::new(
        "x",
        (0.0, 30.0),
        vec![
            LinguisticTerm::new("A", t(0.0, 0.0, 8.0, 12.0)),
            LinguisticTerm::new("B", t(8.0, 12.0, 18.0, 22.0)),
            LinguisticTerm::new("C", t(18.0, 22.0, 30.0, 30.0)),
        ],
    )
    .unwrap();
    let rules = ["A", "B", "C"]
        .iter()
        .zip(consequents)
        .enumerate()
        .map(|(i, (a, c))| FuzzyRule::new(i + 1, [("x", *a)], c))
        .collect();
    RuleBase::new(vec![x], output_variable(), rules).unwrap()
}

#[test]
fn fa_only_activation_scores_fa_centroid() {
    let rb = single_input([FALSE_ATTACK, "LA", HIGH_ATTACK]);
    let fa = output_variable().terms()[0].mf.corners();
    let expected = trapezoid_centroid(fa);
    assert!((expected - 0.116_667).abs() < 1e-6);
    let a = infer(&rb, &InferenceConfig::default(), &[2.0]).unwrap();
    assert!((a.score - expected).abs() < 1e-3, "{}", a.score);
    assert_eq!(a.alert_class, FALSE_ATTACK);
    assert!(!a.is_intrusion);
    assert!(a.activated);
}

#[test]
fn ha_only_activation_mirrors_fa() {
    let rb = single_input([FALSE_ATTACK, "LA", HIGH_ATTACK]);
    let ha = output_variable().terms()[3].mf.corners();
    assert!((trapezoid_centroid(ha) - (1.0 - 0.116_667)).abs() < 1e-6);
    let a = infer(&rb, &InferenceConfig::default(), &[29.0]).unwrap();
    assert!((a.score - 0.883_333).abs() < 1e-3, "{}", a.score);
    assert_eq!(a.alert_class, HIGH_ATTACK);
    assert!(a.is_intrusion);
}

#[test]
fn gapped_variable_yields_no_activation() {
    let t = |a, b, c, d| Trapezoid::new(a, b, c, d).unwrap();
    let x = LinguisticVariable::new(
        "x",
        (0.0, 10.0),
        vec![
            LinguisticTerm::new("A", t(0.0, 0.0, 2.0, 3.0)),
            LinguisticTerm::new("B", t(7.0, 8.0, 10.0, 10.0)),
        ],
    )
    .unwrap();
    assert_eq!(x.min_coverage(101), 0.0);
    let rules = vec![FuzzyRule::new(1, [("x", "A")], "FA"), FuzzyRule::new(2, [("x", "B")], "HA")];
    let rb = RuleBase::new(vec![x], output_variable(), rules).unwrap();
    let a = infer(&rb, &InferenceConfig::default(), &[5.0]).unwrap();
    assert_eq!(a.score, 0.0);
    assert!(!a.activated);
}

#[test]
fn aggregate_examples() {
    let rb = single_input([FALSE_ATTACK, "MA", HIGH_ATTACK]);
    let out = output_variable();
    let n = 1001;

    let zero = aggregate(&rb, &[0.0, 0.0, 0.0], n).unwrap();
    assert!(zero.mu.iter().all(|&m| m == 0.0));

    let fa_only = aggregate(&rb, &[1.0, 0.0, 0.0], n).unwrap();
    for (y, m) in fa_only.points() {
        assert_eq!(m, mu(out.terms()[0].mf.corners(), y));
    }

    let both = aggregate(&rb, &[0.5, 0.0, 0.5], n).unwrap();
    for (y, m) in both.points() {
        let expected = mu(out.terms()[0].mf.corners(), y)
            .min(0.5)
            .max(mu(out.terms()[3].mf.corners(), y).min(0.5));
        assert_eq!(m, expected);
    }

    assert!(aggregate(&rb, &[1.0], n).is_err());
}

#[test]
fn symmetric_envelopes_centre_on_half() {
    let out = output_variable();
    for height in [0.1, 0.37, 0.5, 1.0] {
        for c in [[0.3, 0.4, 0.6, 0.7], [0.0, 0.0, 1.0, 1.0], [0.1, 0.5, 0.5, 0.9]] {
            let ys = grid(0.0, 1.0, 1001);
            let m: Vec<f64> = ys.iter().map(|&y| mu(c, y).min(height)).collect();
            let centroid = defuzzify_centroid(&Envelope { ys, mu: m }).unwrap();
            assert!((centroid.value - 0.5).abs() < 1e-9, "{c:?} at {height}: {}", centroid.value);
        }
    }
    // LA and MA mirror each other
    let rb = single_input(["LA", "MA", HIGH_ATTACK]);
    let env = aggregate(&rb, &[0.8, 0.8, 0.0], 1001).unwrap();
    assert!((defuzzify_centroid(&env).unwrap().value - 0.5).abs() < 1e-9);
    assert_eq!(out.terms().len(), 4);
}

fn reflected(rb: &RuleBase) -> RuleBase {
    let out = rb.output();
    let mut terms: Vec<LinguisticTerm> = out
        .terms()
        .iter()
        .map(|t| LinguisticTerm::new(t.name.clone(), t.mf.reflect(0.5)))
        .collect();
    terms.sort_by(|a, b| a.mf.support().0.total_cmp(&b.mf.support().0));
    let out = LinguisticVariable::new(out.name(), out.universe(), terms).unwrap();
    RuleBase::partial(rb.inputs().to_vec(), out, rb.rules().to_vec()).unwrap()
}

#[test]
fn oracle_equivalence_on_random_rule_bases() {
    let cfg = InferenceConfig::default();
    for seed in 0..300 {
        let rb = random_rule_base(seed);
        let inputs = random_inputs(seed, rb.inputs().len());
        let trace = infer_traced(&rb, &cfg, &inputs).unwrap();
        let strengths = brute_strengths(&rb, &inputs);
        for (a, b) in trace.strengths.iter().zip(&strengths) {
            assert!((a - b).abs() <= 1e-12, "seed {seed}");
        }
        let ys = grid(0.0, 1.0, cfg.grid_points);
        let env = brute_envelope(&rb, &strengths, &ys);
        for ((y, m), (y2, m2)) in trace.envelope.points().zip(ys.iter().zip(&env)) {
            assert!((y - y2).abs() <= 1e-12 && (m - m2).abs() <= 1e-12, "seed {seed} at y={y}");
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn raising_one_strength_never_lowers_envelope(seed in 0u64..10_000, bump in 0.0f64..1.0, which in 0usize..4) {
        let rb = random_rule_base(seed);
        let inputs = random_inputs(seed, rb.inputs().len());
        let s = brute_strengths(&rb, &inputs);
        let mut raised = s.clone();
        let i = which % raised.len();
        raised[i] = (raised[i] + bump).min(1.0);
        let a = aggregate(&rb, &s, 201).unwrap();
        let b = aggregate(&rb, &raised, 201).unwrap();
        for (x, y) in a.mu.iter().zip(&b.mu) {
            prop_assert!(y >= x);
        }
    }

    #[test]
    fn centroid_lies_within_nonzero_support(seed in 0u64..10_000) {
        let rb = random_rule_base(seed);
        let inputs = random_inputs(seed, rb.inputs().len());
        let trace = infer_traced(&rb, &InferenceConfig::default(), &inputs).unwrap();
        let nz: Vec<f64> = trace.envelope.points().filter(|p| p.1 > 0.0).map(|p| p.0).collect();
        if let (Some(lo), Some(hi)) = (nz.first(), nz.last()) {
            prop_assert!(trace.alert.score >= *lo - 1e-12 && trace.alert.score <= *hi + 1e-12);
        } else {
            prop_assert!(!trace.alert.activated);
        }
    }

    #[test]
    fn reflecting_consequents_reflects_centroid(seed in 0u64..10_000) {
        let rb = random_rule_base(seed);
        let inputs = random_inputs(seed, rb.inputs().len());
        let cfg = InferenceConfig::default();
        let a = infer(&rb, &cfg, &inputs).unwrap();
        let b = infer(&reflected(&rb), &cfg, &inputs).unwrap();
        if a.activated {
            prop_assert!((a.score - (1.0 - b.score)).abs() < 1e-9, "{} vs {}", a.score, b.score);
        }
    }

    #[test]
    fn doubling_the_grid_moves_centroid_little(seed in 0u64..10_000, n in 51usize..1500) {
        let rb = random_rule_base(seed);
        let inputs = random_inputs(seed, rb.inputs().len());
        let coarse = infer(&rb, &InferenceConfig::default().with_grid_points(n), &inputs).unwrap();
        let fine = infer(&rb, &InferenceConfig::default().with_grid_points(2 * n), &inputs).unwrap();
        prop_assert!((coarse.score - fine.score).abs() < 2.0 / n as f64);
    }

    #[test]
    fn repeated_inference_is_bit_identical(seed in 0u64..10_000) {
        let rb = random_rule_base(seed);
        let inputs = random_inputs(seed, rb.inputs().len());
        let cfg = InferenceConfig::default();
        let a = infer(&rb, &cfg, &inputs).unwrap();
        let b = infer(&rb, &cfg, &inputs).unwrap();
        prop_assert_eq!(a.score.to_bits(), b.score.to_bits());
        prop_assert_eq!(a, b);
    }
}

#[test]
fn disabled_rule_never_fires() {
    let rb = single_input([FALSE_ATTACK, "LA", HIGH_ATTACK]);
    let mut cfg = InferenceConfig::default();
    cfg.disabled_rules.insert(1);
    let trace = infer_traced(&rb, &cfg, &[2.0]).unwrap();
    assert_eq!(trace.strengths, vec![0.0, 0.0, 0.0]);
    assert!(!trace.alert.activated);
}

#[test]
fn wrong_input_arity_is_config_error() {
    let rb = single_input([FALSE_ATTACK, "LA", HIGH_ATTACK]);
    assert!(infer(&rb, &InferenceConfig::default(), &[1.0, 2.0]).is_err());
    assert!(infer(&rb, &InferenceConfig::default(), &[f64::NAN]).is_err());
}
