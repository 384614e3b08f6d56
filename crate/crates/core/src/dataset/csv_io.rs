use std::io::{Read, Write};

use serde::{Deserialize, Serialize};

use super::{Feature, FlowRecord, Label, LabeledDataset};
use crate::error::{Error, Result};

/// Which header names carry the four features and, optionally, the label.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CsvSchema {
    pub pkt_size: String,
    pub pkt_rate: String,
    pub byte_rate: String,
    pub pkt_avg_size: String,
    #[serde(default)]
    pub label: Option<LabelMapping>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LabelMapping {
    pub column: String,
    /// Cell values read as [`Label::Normal`].
    pub normal: Vec<String>,
    /// Cell values read as [`Label::Intrusion`]. Empty means every value not
    /// listed in `normal`.
    #[serde(default)]
    pub intrusion: Vec<String>,
}

impl LabelMapping {
    pub fn resolve(&self, cell: &str) -> Option<Label> {
        if self.normal.iter().any(|v| v == cell) {
            Some(Label::Normal)
        } else if self.intrusion.is_empty() || self.intrusion.iter().any(|v| v == cell) {
            Some(Label::Intrusion)
        } else {
            None
        }
    }
}

impl CsvSchema {
    /// Columns written by [`write_csv`]: `pkt_size,pkt_rate,byte_rate,pkt_avg_size[,label]`.
    pub fn native(labeled: bool) -> Self {
        CsvSchema {
            pkt_size: Feature::PktSize.name().into(),
            pkt_rate: Feature::PktRate.name().into(),
            byte_rate: Feature::ByteRate.name().into(),
            pkt_avg_size: Feature::PktAvgSize.name().into(),
            label: labeled.then(|| LabelMapping {
                column: "label".into(),
                normal: vec![Label::Normal.as_str().into()],
                intrusion: vec![Label::Intrusion.as_str().into()],
            }),
        }
    }

    pub fn column(&self, feature: Feature) -> &str {
        match feature {
            Feature::PktSize => &self.pkt_size,
            Feature::PktRate => &self.pkt_rate,
            Feature::ByteRate => &self.byte_rate,
            Feature::PktAvgSize => &self.pkt_avg_size,
        }
    }

    pub fn from_json(s: &str) -> Result<Self> {
        serde_json::from_str(s).map_err(|e| Error::Schema(format!("invalid schema file: {e}")))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ParseMode {
    /// The first bad row aborts the parse.
    #[default]
    Strict,
    /// Bad rows are skipped and reported in [`ParseOutcome::rejected`].
    Lenient,
}

#[derive(Debug)]
pub struct ParseOutcome {
    pub dataset: LabeledDataset,
    /// Row errors skipped in lenient mode.
    pub rejected: Vec<Error>,
}

pub fn parse_csv<R: Read>(reader: R, schema: &CsvSchema, mode: ParseMode) -> Result<ParseOutcome> {
    let mut rdr = csv::ReaderBuilder::new()
        .has_headers(true)
        .trim(csv::Trim::All)
        .from_reader(reader);

    let headers = rdr.headers()?.clone();
    if headers.is_empty() {
        return Err(Error::usage("input is empty: a header row is required"));
    }
    let position = |name: &str| {
        headers
            .iter()
            .position(|h| h == name)
            .ok_or_else(|| Error::MissingColumn {
                column: name.to_owned(),
            })
    };
    let mut feature_cols = [0usize; 4];
    for f in Feature::ALL {
        feature_cols[f.index()] = position(schema.column(f))?;
    }
    let label_col = match &schema.label {
        Some(m) => Some((position(&m.column)?, m)),
        None => None,
    };

    let mut records = Vec::new();
    let mut rejected = Vec::new();
    for (row, result) in rdr.records().enumerate() {
        let parsed = result.map_err(Error::from).and_then(|rec| {
            // header occupies line 1
            let line = rec.position().map_or(row as u64 + 2, |p| p.line());
            read_row(&rec, line, row, &feature_cols, label_col)
        });
        match (parsed, mode) {
            (Ok(r), _) => records.push(r),
            (Err(e), ParseMode::Lenient) if matches!(e, Error::Row { .. }) => rejected.push(e),
            (Err(e), _) => return Err(e),
        }
    }
    Ok(ParseOutcome {
        dataset: LabeledDataset::new(records)?,
        rejected,
    })
}

fn read_row(
    rec: &csv::StringRecord,
    line: u64,
    row: usize,
    feature_cols: &[usize; 4],
    label_col: Option<(usize, &LabelMapping)>,
) -> Result<FlowRecord> {
    let row_err = |message: String| Error::Row { line, message };
    let cell = |col: usize| rec.get(col).ok_or_else(|| row_err(format!("missing field {}", col + 1)));

    let mut features = [0.0f64; 4];
    for f in Feature::ALL {
        let raw = cell(feature_cols[f.index()])?;
        let v: f64 = raw
            .parse()
            .map_err(|_| row_err(format!("`{f}` value `{raw}` is not a number")))?;
        if !(v.is_finite() && v >= 0.0) {
            return Err(row_err(format!("`{f}` value `{raw}` must be finite and non-negative")));
        }
        features[f.index()] = v;
    }
    let label = match label_col {
        Some((col, mapping)) => {
            let raw = cell(col)?;
            Some(
                mapping
                    .resolve(raw)
                    .ok_or_else(|| row_err(format!("label `{raw}` is neither a normal nor an intrusion value")))?,
            )
        }
        None => None,
    };
    Ok(FlowRecord {
        features,
        label,
        source_row: row,
    })
}

/// Writes the native dialect. Numbers use the shortest representation that
/// parses back to the same `f64`.
pub fn write_csv<W: Write>(ds: &LabeledDataset, writer: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(writer);
    let labeled = ds.is_labeled();
    let mut header: Vec<&str> = Feature::ALL.iter().map(|f| f.name()).collect();
    if labeled {
        header.push("label");
    }
    w.write_record(&header)?;
    for r in ds.records() {
        let mut fields: Vec<String> = r.features.iter().map(|v| v.to_string()).collect();
        if let Some(l) = r.label {
            fields.push(l.as_str().to_owned());
        }
        w.write_record(&fields)?;
    }
    w.flush()?;
    Ok(())
}
