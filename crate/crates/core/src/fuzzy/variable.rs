use serde::{Deserialize, Serialize};

use super::membership::Trapezoid;
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LinguisticTerm {
    pub name: String,
    pub mf: Trapezoid,
}

impl LinguisticTerm {
    pub fn new(name: impl Into<String>, mf: Trapezoid) -> Self {
        LinguisticTerm {
            name: name.into(),
            mf,
        }
    }
}

/// A named input or output dimension with a closed universe and an ordered
/// term set.
///
/// Construction checks the structural invariants: `lo < hi`, unique
/// non-empty term names, supports inside the universe and terms ordered by
/// their left corner. Coverage is a property of how the terms were placed
/// and is checked separately with [`LinguisticVariable::min_coverage`].
#[derive(Debug, Clone, PartialEq)]
pub struct LinguisticVariable {
    name: String,
    lo: f64,
    hi: f64,
    terms: Vec<LinguisticTerm>,
}

impl LinguisticVariable {
    pub fn new(
        name: impl Into<String>,
        universe: (f64, f64),
        terms: Vec<LinguisticTerm>,
    ) -> Result<Self> {
        let name = name.into();
        let (lo, hi) = universe;
        if name.is_empty() {
            return Err(Error::config("variable name must not be empty"));
        }
        if !(lo.is_finite() && hi.is_finite() && lo < hi) {
            return Err(Error::config(format!(
                "variable `{name}`: universe must satisfy lo < hi, got [{lo}, {hi}]"
            )));
        }
        if terms.is_empty() {
            return Err(Error::config(format!("variable `{name}` has no terms")));
        }
        for (i, term) in terms.iter().enumerate() {
            if term.name.is_empty() {
                return Err(Error::config(format!(
                    "variable `{name}`: term {i} has an empty name"
                )));
            }
            if terms[..i].iter().any(|t| t.name == term.name) {
                return Err(Error::config(format!(
                    "variable `{name}`: duplicate term `{}`",
                    term.name
                )));
            }
            let (a, d) = term.mf.support();
            if a < lo || d > hi {
                return Err(Error::config(format!(
                    "variable `{name}`: support [{a}, {d}] of term `{}` leaves universe [{lo}, {hi}]",
                    term.name
                )));
            }
            if i > 0 && terms[i - 1].mf.support().0 > a {
                return Err(Error::config(format!(
                    "variable `{name}`: terms must be ordered by ascending left corner (`{}` precedes `{}`)",
                    terms[i - 1].name, term.name
                )));
            }
        }
        Ok(LinguisticVariable {
            name,
            lo,
            hi,
            terms,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn universe(&self) -> (f64, f64) {
        (self.lo, self.hi)
    }

    pub fn terms(&self) -> &[LinguisticTerm] {
        &self.terms
    }

    pub fn term_index(&self, name: &str) -> Option<usize> {
        self.terms.iter().position(|t| t.name == name)
    }

    pub fn term_names(&self) -> impl Iterator<Item = &str> {
        self.terms.iter().map(|t| t.name.as_str())
    }

    pub fn clamp(&self, x: f64) -> f64 {
        x.clamp(self.lo, self.hi)
    }

    /// `points` evenly spaced values spanning the universe, both ends included.
    pub fn grid(&self, points: usize) -> Vec<f64> {
        uniform_grid(self.lo, self.hi, points)
    }

    /// Smallest value over a `points` grid of the largest term membership.
    pub fn min_coverage(&self, points: usize) -> f64 {
        self.grid(points)
            .into_iter()
            .map(|x| {
                self.terms
                    .iter()
                    .map(|t| t.mf.membership(x))
                    .fold(0.0, f64::max)
            })
            .fold(f64::INFINITY, f64::min)
    }
}

pub(crate) fn uniform_grid(lo: f64, hi: f64, points: usize) -> Vec<f64> {
    match points {
        0 => Vec::new(),
        1 => vec![lo],
        _ => {
            let last = (points - 1) as f64;
            (0..points)
                .map(|i| {
                    if i == points - 1 {
                        hi
                    } else {
                        lo + (hi - lo) * (i as f64 / last)
                    }
                })
                .collect()
        }
    }
}
