//! Fuzzy-logic anomaly detection for network flows.
//!
//! The pipeline sorts labeled flow records into normal and intrusion pools,
//! places trapezoidal fuzzy sets on four flow features from the pool
//! statistics, scores each flow with a 36-rule Mamdani system and evaluates
//! the resulting alarms with a confusion matrix.
//!
//! ```
//! use fisids::dataset::{sort_and_extract, synth_generate, SynthProfile};
//! use fisids::fitting::{fit, FitConfig};
//! use fisids::detect::{detect, evaluate, metrics};
//!
//! let train = synth_generate(&SynthProfile::flood(), (500, 500), 1).unwrap();
//! let model = fit(&sort_and_extract(&train).unwrap(), &FitConfig::default()).unwrap();
//!
//! let test = synth_generate(&SynthProfile::flood(), (500, 500), 2).unwrap();
//! let results = detect(&model, &test).unwrap();
//! let cm = evaluate(&results, &test.labels().unwrap()).unwrap();
//! assert!(metrics(&cm).unwrap().tpr.unwrap() > 0.9);
//! ```

pub mod dataset;
pub mod detect;
mod error;
pub mod fitting;
pub mod fuzzy;

pub use error::{Error, ErrorKind, Result};
