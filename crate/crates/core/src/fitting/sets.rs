use crate::dataset::{Feature, Pools, RangeStats};
use crate::error::{Error, Result};
use crate::fuzzy::{LinguisticTerm, LinguisticVariable, Trapezoid};

use super::FitConfig;

pub const SMALL: &str = "S";
pub const MEDIUM: &str = "M";
pub const LARGE: &str = "L";
pub const LOW: &str = "LO";
pub const HIGH: &str = "H";

pub const FALSE_ATTACK: &str = "FA";
pub const LOW_ATTACK: &str = "LA";
pub const MEDIUM_ATTACK: &str = "MA";
pub const HIGH_ATTACK: &str = "HA";

pub const OUTPUT_NAME: &str = "attack_possibility";

/// Term names each input feature is divided into.
pub fn term_structure(feature: Feature) -> &'static [&'static str] {
    match feature {
        Feature::PktSize | Feature::PktAvgSize => &[SMALL, MEDIUM, LARGE],
        Feature::PktRate | Feature::ByteRate => &[LOW, HIGH],
    }
}

/// Attack possibility over `[0, 1]`: four terms with 0.15-wide crossover
/// ramps, symmetric about 0.5.
pub fn output_variable() -> LinguisticVariable {
    let term = |name: &str, c: [f64; 4]| LinguisticTerm::new(name, Trapezoid::sorted(c).expect("static corners"));
    LinguisticVariable::new(
        OUTPUT_NAME,
        (0.0, 1.0),
        vec![
            term(FALSE_ATTACK, [0.0, 0.0, 0.15, 0.30]),
            term(LOW_ATTACK, [0.15, 0.30, 0.425, 0.575]),
            term(MEDIUM_ATTACK, [0.425, 0.575, 0.70, 0.85]),
            term(HIGH_ATTACK, [0.70, 0.85, 1.0, 1.0]),
        ],
    )
    .expect("static output variable")
}

/// Places the input fuzzy sets from the combined pool statistics.
///
/// Each universe is the observed `[min, max]`. Neighbouring terms cross at
/// an anchor (the mean for Low/High, the lower and upper half means for
/// Small/Medium/Large) with ramps `2 * overlap * span` wide, so their
/// memberships are 0.5 each at the anchor and sum to at least 1 in between.
pub fn estimate_fuzzy_sets(pools: &Pools, cfg: &FitConfig) -> Result<[LinguisticVariable; 4]> {
    cfg.validate()?;
    let stats = &pools.combined_stats;
    let var = |f: Feature| fit_variable(f, stats.get(f), cfg.overlap);
    Ok([
        var(Feature::PktSize)?,
        var(Feature::PktRate)?,
        var(Feature::ByteRate)?,
        var(Feature::PktAvgSize)?,
    ])
}

fn fit_variable(feature: Feature, s: &RangeStats, overlap: f64) -> Result<LinguisticVariable> {
    let (lo, hi) = (s.min, s.max);
    if lo >= hi {
        return Err(Error::Fit {
            feature: feature.name().into(),
            message: format!("feature is constant ({lo}); no universe to partition"),
        });
    }
    let h = overlap * (hi - lo);
    let trap = |c: [f64; 4]| Trapezoid::sorted(c.map(|v| v.clamp(lo, hi)));
    let anchors: Vec<f64> = match term_structure(feature).len() {
        3 => vec![s.lower_mean, s.upper_mean],
        _ => vec![s.mean],
    };

    // terms are separated by ramps centred on the anchors
    let mut edges = vec![(lo, lo)];
    edges.extend(anchors.iter().map(|&b| (b - h, b + h)));
    edges.push((hi, hi));

    let terms = term_structure(feature)
        .iter()
        .zip(edges.windows(2))
        .map(|(name, w)| {
            let ((a, b), (c, d)) = (w[0], w[1]);
            Ok(LinguisticTerm::new(*name, trap([a, b, c, d])?))
        })
        .collect::<Result<Vec<_>>>()?;
    LinguisticVariable::new(feature.name(), (lo, hi), terms)
}
