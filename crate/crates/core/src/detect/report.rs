use std::fmt::Write as _;
use std::io::Write;
use std::str::FromStr;

use super::{DetectionResult, MetricsReport};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum OutputFormat {
    #[default]
    Text,
    Csv,
}

impl FromStr for OutputFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "text" => Ok(OutputFormat::Text),
            "csv" => Ok(OutputFormat::Csv),
            other => Err(Error::usage(format!("unknown format `{other}` (expected text or csv)"))),
        }
    }
}

fn rate(v: Option<f64>) -> String {
    v.map_or_else(|| "undefined".to_owned(), |v| format!("{v:.3}"))
}

/// Writes a text summary or a per-record CSV with a `#` metrics footer.
pub fn report<W: Write>(
    results: &[DetectionResult],
    metrics: Option<&MetricsReport>,
    format: OutputFormat,
    mut sink: W,
) -> Result<()> {
    let doc = match format {
        OutputFormat::Text => text(results, metrics),
        OutputFormat::Csv => csv(results, metrics)?,
    };
    sink.write_all(doc.as_bytes())?;
    sink.flush()?;
    Ok(())
}

fn text(results: &[DetectionResult], metrics: Option<&MetricsReport>) -> String {
    let mut out = String::new();
    if !results.is_empty() {
        let flagged = results.iter().filter(|r| r.alert.is_intrusion).count();
        let _ = writeln!(out, "Records scored: {}", results.len());
        let _ = writeln!(out, "Flagged as intrusion: {flagged}");
        let mut classes: Vec<(&str, usize)> = Vec::new();
        for r in results {
            match classes.iter_mut().find(|(c, _)| *c == r.alert.alert_class) {
                Some((_, n)) => *n += 1,
                None => classes.push((&r.alert.alert_class, 1)),
            }
        }
        classes.sort();
        let _ = writeln!(
            out,
            "Alert classes: {}",
            classes
                .iter()
                .map(|(c, n)| format!("{c}={n}"))
                .collect::<Vec<_>>()
                .join(" ")
        );
        let silent = results.iter().filter(|r| !r.alert.activated).count();
        if silent > 0 {
            let _ = writeln!(out, "Records with no rule activation: {silent}");
        }
    }
    if let Some(m) = metrics {
        let c = &m.counts;
        if !out.is_empty() {
            out.push('\n');
        }
        let _ = writeln!(out, "Tested records");
        let _ = writeln!(out, "{:<12}{:>10}{:>11}{:>8}", "", "Normal", "Intrusion", "Total");
        let _ = writeln!(out, "{:<12}{:>10}{:>11}{:>8}", "Normal", c.tn, c.fp, c.tn + c.fp);
        let _ = writeln!(out, "{:<12}{:>10}{:>11}{:>8}", "Intrusion", c.fn_, c.tp, c.fn_ + c.tp);
        let _ = writeln!(
            out,
            "{:<12}{:>10}{:>11}{:>8}",
            "Total",
            c.tn + c.fn_,
            c.fp + c.tp,
            c.total()
        );
        out.push('\n');
        let _ = writeln!(out, "Confusion matrix (positive class: Intrusion)");
        let _ = writeln!(out, "TPR {}    FPR {}", rate(m.tpr), rate(m.fpr));
        let _ = writeln!(out, "FNR {}    TNR {}", rate(m.fnr), rate(m.tnr));
        let _ = writeln!(out, "DR  {:.3}", m.detection_rate);
    }
    out
}

fn csv(results: &[DetectionResult], metrics: Option<&MetricsReport>) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["source_row", "score", "alert_class", "is_intrusion"])?;
    for r in results {
        w.write_record([
            r.source_row.to_string(),
            r.alert.score.to_string(),
            r.alert.alert_class.clone(),
            r.alert.is_intrusion.to_string(),
        ])?;
    }
    let mut out = String::from_utf8(w.into_inner().map_err(|e| e.into_error())?).expect("csv output is UTF-8");
    if let Some(m) = metrics {
        let c = &m.counts;
        for (k, v) in [("tp", c.tp), ("tn", c.tn), ("fp", c.fp), ("fn", c.fn_), ("total", c.total())] {
            let _ = writeln!(out, "# {k},{v}");
        }
        for (k, v) in [("tpr", m.tpr), ("fpr", m.fpr), ("tnr", m.tnr), ("fnr", m.fnr)] {
            let _ = writeln!(out, "# {k},{}", rate(v));
        }
        let _ = writeln!(out, "# dr,{:.3}", m.detection_rate);
    }
    Ok(out)
}
