#![allow(dead_code)]

//! Reference computations that do not go through the library's inference
//! path, plus generators for random rule bases.

use fisids::fuzzy::{FuzzyRule, LinguisticTerm, LinguisticVariable, RuleBase, Trapezoid};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Trapezoid membership written out directly from its corners.
pub fn mu(c: [f64; 4], x: f64) -> f64 {
    let [a, b, cc, d] = c;
    if x < a || x > d {
        0.0
    } else if x >= b && x <= cc {
        1.0
    } else if x < b {
        (x - a) / (b - a)
    } else {
        (d - x) / (d - cc)
    }
}

/// Centroid of a full-height trapezoid from its triangle/rectangle/triangle
/// decomposition.
pub fn trapezoid_centroid(c: [f64; 4]) -> f64 {
    let [a, b, cc, d] = c;
    let parts = [
        ((b - a) / 2.0, a + 2.0 * (b - a) / 3.0),
        (cc - b, (b + cc) / 2.0),
        ((d - cc) / 2.0, cc + (d - cc) / 3.0),
    ];
    let area: f64 = parts.iter().map(|p| p.0).sum();
    parts.iter().map(|p| p.0 * p.1).sum::<f64>() / area
}

pub fn grid(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    (0..n).map(|i| lo + (hi - lo) * i as f64 / (n - 1) as f64).collect()
}

/// Firing strength of every rule, evaluated term by term from the corners.
pub fn brute_strengths(rb: &RuleBase, inputs: &[f64]) -> Vec<f64> {
    rb.rules()
        .iter()
        .map(|rule| {
            let mut s = 1.0f64;
            for (var, term) in &rule.antecedent {
                let v = rb.inputs().iter().find(|v| v.name() == var).unwrap();
                let (lo, hi) = v.universe();
                let x = inputs[rb.inputs().iter().position(|u| u.name() == var).unwrap()].clamp(lo, hi);
                let t = v.terms().iter().find(|t| &t.name == term).unwrap();
                s = s.min(mu(t.mf.corners(), x));
            }
            s
        })
        .collect()
}

/// `max_r min(s_r, mu_r(y))` at each `y`, one rule at a time.
pub fn brute_envelope(rb: &RuleBase, strengths: &[f64], ys: &[f64]) -> Vec<f64> {
    ys.iter()
        .map(|&y| {
            rb.rules()
                .iter()
                .zip(strengths)
                .map(|(rule, &s)| {
                    let t = rb.output().terms().iter().find(|t| t.name == rule.consequent).unwrap();
                    s.min(mu(t.mf.corners(), y))
                })
                .fold(0.0, f64::max)
        })
        .collect()
}

/// Centroid by composite trapezoidal integration of `y * mu(y)` and `mu(y)`.
pub fn integrated_centroid(ys: &[f64], m: &[f64]) -> f64 {
    let (mut moment, mut mass) = (0.0, 0.0);
    for i in 1..ys.len() {
        let h = ys[i] - ys[i - 1];
        moment += h * (ys[i] * m[i] + ys[i - 1] * m[i - 1]) / 2.0;
        mass += h * (m[i] + m[i - 1]) / 2.0;
    }
    moment / mass
}

fn random_corners(rng: &mut ChaCha8Rng, lo: f64, hi: f64) -> [f64; 4] {
    let mut c = [0.0; 4];
    for v in c.iter_mut() {
        *v = rng.random_range(lo..=hi);
    }
    c.sort_by(f64::total_cmp);
    c
}

pub fn random_variable(rng: &mut ChaCha8Rng, name: &str, lo: f64, hi: f64, terms: usize) -> LinguisticVariable {
    let mut corners: Vec<[f64; 4]> = (0..terms).map(|_| random_corners(rng, lo, hi)).collect();
    corners.sort_by(|a, b| a[0].total_cmp(&b[0]));
    let terms = corners
        .into_iter()
        .enumerate()
        .map(|(i, c)| LinguisticTerm::new(format!("t{i}"), Trapezoid::sorted(c).unwrap()))
        .collect();
    LinguisticVariable::new(name, (lo, hi), terms).unwrap()
}

/// 1 to 4 input variables, 1 to 3 terms each, up to 4 rules with distinct
/// antecedents, output over [0, 1].
pub fn random_rule_base(seed: u64) -> RuleBase {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n_inputs = rng.random_range(1..=4);
    let inputs: Vec<LinguisticVariable> = (0..n_inputs)
        .map(|i| {
            let n = rng.random_range(1..=3);
            random_variable(&mut rng, &format!("x{i}"), 0.0, 10.0, n)
        })
        .collect();
    let n_out = rng.random_range(1..=4);
    let output = random_variable(&mut rng, "y", 0.0, 1.0, n_out);

    let mut combos: Vec<Vec<usize>> = vec![vec![]];
    for v in &inputs {
        combos = combos
            .into_iter()
            .flat_map(|c| {
                (0..v.terms().len()).map(move |t| {
                    let mut c = c.clone();
                    c.push(t);
                    c
                })
            })
            .collect();
    }
    combos.shuffle(&mut rng);
    let n_rules = rng.random_range(1..=4).min(combos.len());
    let rules = combos
        .into_iter()
        .take(n_rules)
        .enumerate()
        .map(|(i, combo)| {
            let antecedent: Vec<(String, String)> = inputs
                .iter()
                .zip(combo)
                .map(|(v, t)| (v.name().to_owned(), v.terms()[t].name.clone()))
                .collect();
            let consequent = output.terms()[rng.random_range(0..n_out)].name.clone();
            FuzzyRule {
                index: i + 1,
                antecedent,
                consequent,
            }
        })
        .collect();
    RuleBase::partial(inputs, output, rules).unwrap()
}

pub fn random_inputs(seed: u64, n: usize) -> Vec<f64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x9e37_79b9_7f4a_7c15);
    (0..n).map(|_| rng.random_range(-1.0..11.0)).collect()
}
