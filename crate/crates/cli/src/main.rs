use std::fs::File;
use std::io::{self, BufReader, Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use fisids::dataset::{
    info_gain_rank, parse_csv, sort_and_extract, subsample, synth_generate, ClassProfile, CsvSchema, FeatureProfile,
    LabelMapping, LabeledDataset, ParseMode, SynthProfile, DEFAULT_BINS,
};
use fisids::detect::{detect, evaluate, metrics, report, OutputFormat};
use fisids::fitting::{fit, load_model, save_model, FisModel, FitConfig, DEFAULT_OVERLAP, RULE_TABLE};
use fisids::{Error, ErrorKind};

const EXIT_USAGE: u8 = 1;
const EXIT_INPUT: u8 = 2;
const EXIT_MODEL: u8 = 3;

/// Fuzzy-logic anomaly detector for flow records.
#[derive(Parser, Debug)]
#[command(name = "fisids", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Rank the four features by information gain against the label.
    Rank {
        /// Labeled CSV dataset.
        input: PathBuf,
        #[command(flatten)]
        schema: SchemaArgs,
        #[arg(long, default_value_t = DEFAULT_BINS)]
        bins: usize,
        #[command(flatten)]
        sampling: SamplingArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Fit membership functions on labeled data and write a model file.
    Fit {
        /// Labeled CSV training set.
        input: PathBuf,
        #[command(flatten)]
        schema: SchemaArgs,
        /// Half-width of each term crossover, as a fraction of the feature range.
        #[arg(long, default_value_t = DEFAULT_OVERLAP)]
        overlap: f64,
        /// Alert threshold stored in the model.
        #[arg(long, default_value_t = 0.5)]
        threshold: f64,
        /// Rules stored as disabled, e.g. `3,17`.
        #[arg(long, value_name = "IDX[,IDX...]", value_delimiter = ',')]
        rules_disable: Vec<usize>,
        /// Record the fit time in the model (makes output time-dependent).
        #[arg(long)]
        stamp: bool,
        #[command(flatten)]
        sampling: SamplingArgs,
        /// Model file to write.
        #[arg(long)]
        out: PathBuf,
    },
    /// Score every record and report alerts.
    Detect {
        #[command(flatten)]
        run: RunArgs,
    },
    /// Score a labeled dataset and report the confusion matrix and rates.
    Eval {
        #[command(flatten)]
        run: RunArgs,
    },
    /// Generate a synthetic labeled dataset.
    Synth {
        /// Normal and intrusion record counts.
        #[arg(long, value_name = "N,N", value_delimiter = ',', num_args = 1, default_value = "5000,5000")]
        counts: Vec<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Per-feature means for normal records (pkt_size,pkt_rate,byte_rate,pkt_avg_size).
        #[arg(long, value_name = "F,F,F,F", value_delimiter = ',')]
        normal_mean: Option<Vec<f64>>,
        #[arg(long, value_name = "F,F,F,F", value_delimiter = ',')]
        normal_spread: Option<Vec<f64>>,
        #[arg(long, value_name = "F,F,F,F", value_delimiter = ',')]
        intrusion_mean: Option<Vec<f64>>,
        #[arg(long, value_name = "F,F,F,F", value_delimiter = ',')]
        intrusion_spread: Option<Vec<f64>>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

/// Column mapping. Defaults to the columns written by `synth`.
#[derive(Args, Debug)]
struct SchemaArgs {
    /// JSON mapping file; `--col-*` flags override its entries.
    #[arg(long)]
    schema_file: Option<PathBuf>,
    #[arg(long)]
    col_pkt_size: Option<String>,
    #[arg(long)]
    col_pkt_rate: Option<String>,
    #[arg(long)]
    col_byte_rate: Option<String>,
    #[arg(long)]
    col_pkt_avg_size: Option<String>,
    #[arg(long)]
    col_label: Option<String>,
    /// Label cell values meaning normal traffic.
    #[arg(long, value_delimiter = ',')]
    label_normal: Option<Vec<String>>,
    /// Label cell values meaning intrusion; omitted means any other value.
    #[arg(long, value_delimiter = ',')]
    label_intrusion: Option<Vec<String>>,
    /// Skip malformed rows instead of failing.
    #[arg(long)]
    lenient: bool,
}

#[derive(Args, Debug)]
struct SamplingArgs {
    /// Stratified fraction of the records to keep, in (0, 1].
    #[arg(long)]
    sample_frac: Option<f64>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Args, Debug)]
struct OutputArgs {
    #[arg(long, default_value = "text", value_parser = ["text", "csv"])]
    format: String,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct RunArgs {
    /// Model file written by `fit`.
    #[arg(long)]
    model: PathBuf,
    /// CSV dataset to score.
    input: PathBuf,
    #[command(flatten)]
    schema: SchemaArgs,
    /// Overrides the threshold stored in the model.
    #[arg(long)]
    threshold: Option<f64>,
    /// Rules to disable in addition to any stored in the model.
    #[arg(long, value_name = "IDX[,IDX...]", value_delimiter = ',')]
    rules_disable: Vec<usize>,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Debug)]
struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Self {
        Failure {
            code: EXIT_USAGE,
            message: message.into(),
        }
    }

    fn from_error(e: Error, fallback: u8) -> Self {
        let code = match e.kind() {
            ErrorKind::Usage => EXIT_USAGE,
            ErrorKind::Input => EXIT_INPUT,
            ErrorKind::Model => EXIT_MODEL,
            ErrorKind::Output => fallback,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::from_error(e, EXIT_USAGE)
    }
}

type CliResult<T> = Result<T, Failure>;

fn open(path: &Path, code: u8) -> CliResult<BufReader<File>> {
    File::open(path).map(BufReader::new).map_err(|e| Failure {
        code,
        message: format!("cannot open {}: {e}", path.display()),
    })
}

fn emit(out: Option<&Path>, bytes: &[u8]) -> CliResult<()> {
    let written = match out {
        Some(path) => std::fs::write(path, bytes),
        None => {
            let mut stdout = io::stdout().lock();
            stdout.write_all(bytes).and_then(|()| stdout.flush())
        }
    };
    written.map_err(|e| {
        let target = out.map_or_else(|| "standard output".to_owned(), |p| p.display().to_string());
        Failure::usage(format!("cannot write {target}: {e}"))
    })
}

impl SchemaArgs {
    fn resolve(&self, need_label: bool) -> CliResult<CsvSchema> {
        let mut schema = match &self.schema_file {
            Some(path) => {
                let mut text = String::new();
                open(path, EXIT_INPUT)?
                    .read_to_string(&mut text)
                    .map_err(|e| Failure::from_error(Error::Io(e), EXIT_INPUT))?;
                CsvSchema::from_json(&text)?
            }
            None => CsvSchema::native(true),
        };
        let overrides = [
            (&mut schema.pkt_size, &self.col_pkt_size),
            (&mut schema.pkt_rate, &self.col_pkt_rate),
            (&mut schema.byte_rate, &self.col_byte_rate),
            (&mut schema.pkt_avg_size, &self.col_pkt_avg_size),
        ];
        for (slot, value) in overrides {
            if let Some(v) = value {
                slot.clone_from(v);
            }
        }
        if let Some(column) = &self.col_label {
            // value lists carry over from a schema file, never from the native defaults
            let inherited = schema.label.take().filter(|_| self.schema_file.is_some());
            let normal = match (&self.label_normal, &inherited) {
                (Some(n), _) => n.clone(),
                (None, Some(l)) => l.normal.clone(),
                (None, None) => {
                    return Err(Failure::usage("--col-label needs --label-normal to say which values are normal"))
                }
            };
            schema.label = Some(LabelMapping {
                column: column.clone(),
                normal,
                intrusion: inherited.map(|l| l.intrusion).unwrap_or_default(),
            });
        }
        if let Some(label) = schema.label.as_mut() {
            if let Some(n) = &self.label_normal {
                label.normal.clone_from(n);
            }
            if let Some(i) = &self.label_intrusion {
                label.intrusion.clone_from(i);
            }
        }
        if need_label {
            if schema.label.is_none() {
                return Err(Failure::usage("this command needs a label column (--col-label)"));
            }
        } else {
            schema.label = None;
        }
        Ok(schema)
    }

    fn load(&self, path: &Path, need_label: bool) -> CliResult<(LabeledDataset, usize)> {
        let schema = self.resolve(need_label)?;
        let mode = if self.lenient { ParseMode::Lenient } else { ParseMode::Strict };
        let outcome = parse_csv(open(path, EXIT_INPUT)?, &schema, mode)
            .map_err(|e| Failure::from_error(e, EXIT_INPUT))?;
        Ok((outcome.dataset, outcome.rejected.len()))
    }
}

impl SamplingArgs {
    fn apply(&self, ds: LabeledDataset) -> CliResult<LabeledDataset> {
        match self.sample_frac {
            Some(frac) => Ok(subsample(&ds, frac, self.seed)?),
            None => Ok(ds),
        }
    }
}

impl OutputArgs {
    fn format(&self) -> CliResult<OutputFormat> {
        Ok(self.format.parse()?)
    }
}

fn check_rule_indices(indices: &[usize]) -> CliResult<()> {
    match indices.iter().find(|&&i| i == 0 || i > RULE_TABLE.len()) {
        Some(bad) => Err(Failure::usage(format!(
            "--rules-disable: rule {bad} does not exist (rules are 1..={})",
            RULE_TABLE.len()
        ))),
        None => Ok(()),
    }
}

fn check_threshold(t: f64) -> CliResult<()> {
    if (0.0..=1.0).contains(&t) {
        Ok(())
    } else {
        Err(Failure::usage(format!("--threshold must lie in [0, 1], got {t}")))
    }
}

fn skipped_line(out: &mut String, skipped: usize) {
    if skipped > 0 {
        out.push_str(&format!("Rows skipped: {skipped}\n"));
    }
}

fn run_rank(
    input: &Path,
    schema: &SchemaArgs,
    bins: usize,
    sampling: &SamplingArgs,
    output: &OutputArgs,
) -> CliResult<()> {
    let format = output.format()?;
    let (ds, skipped) = schema.load(input, true)?;
    let ds = sampling.apply(ds)?;
    let ranking = info_gain_rank(&ds, bins)?;
    let mut out = String::new();
    match format {
        OutputFormat::Text => {
            skipped_line(&mut out, skipped);
            out.push_str(&format!("{:<14} {}\n", "feature", "info_gain"));
            for (name, gain) in &ranking.entries {
                out.push_str(&format!("{name:<14} {gain:.3}\n"));
            }
        }
        OutputFormat::Csv => {
            out.push_str("feature,info_gain\n");
            for (name, gain) in &ranking.entries {
                out.push_str(&format!("{name},{gain}\n"));
            }
        }
    }
    emit(output.out.as_deref(), out.as_bytes())
}

fn stamp() -> Option<u64> {
    std::time::SystemTime::now()
        .duration_since(std::time::UNIX_EPOCH)
        .ok()
        .map(|d| d.as_secs())
}

#[allow(clippy::too_many_arguments)]
fn run_fit(
    input: &Path,
    schema: &SchemaArgs,
    overlap: f64,
    threshold: f64,
    rules_disable: &[usize],
    with_stamp: bool,
    sampling: &SamplingArgs,
    out: &Path,
) -> CliResult<()> {
    let cfg = FitConfig::new(overlap).map_err(|e| Failure::usage(format!("--overlap: {e}")))?;
    check_threshold(threshold)?;
    check_rule_indices(rules_disable)?;
    let (ds, skipped) = schema.load(input, true)?;
    let ds = sampling.apply(ds)?;
    let mut model = fit(&sort_and_extract(&ds)?, &cfg)?;
    model.inference.threshold = threshold;
    model.inference.disabled_rules.extend(rules_disable);
    if with_stamp {
        model.provenance.created_unix = stamp();
    }

    let mut doc = Vec::new();
    save_model(&model, &mut doc)?;
    emit(Some(out), &doc)?;

    let mut summary = String::new();
    skipped_line(&mut summary, skipped);
    let (n, i) = model.provenance.training_records;
    summary.push_str(&format!(
        "Fitted on {} records ({n} normal, {i} intrusion), {} rules -> {}\n",
        n + i,
        model.rule_base.rules().len(),
        out.display()
    ));
    for var in model.rule_base.inputs() {
        let (lo, hi) = var.universe();
        summary.push_str(&format!("{} [{lo}, {hi}]\n", var.name()));
        for term in var.terms() {
            let [a, b, c, d] = term.mf.corners();
            summary.push_str(&format!("  {:<3} {a} {b} {c} {d}\n", term.name));
        }
    }
    emit(None, summary.as_bytes())
}

fn load_run_model(run: &RunArgs) -> CliResult<FisModel> {
    if let Some(t) = run.threshold {
        check_threshold(t)?;
    }
    check_rule_indices(&run.rules_disable)?;
    let mut model = load_model(open(&run.model, EXIT_MODEL)?).map_err(|e| match e {
        Error::Io(io) => Failure {
            code: EXIT_MODEL,
            message: format!("cannot read {}: {io}", run.model.display()),
        },
        other => Failure::from_error(other, EXIT_MODEL),
    })?;
    if let Some(t) = run.threshold {
        model.inference.threshold = t;
    }
    model.inference.disabled_rules.extend(&run.rules_disable);
    Ok(model)
}

fn run_scoring(run: &RunArgs, with_metrics: bool) -> CliResult<()> {
    let format = run.output.format()?;
    let model = load_run_model(run)?;
    let (ds, skipped) = run.schema.load(&run.input, with_metrics)?;
    let results = detect(&model, &ds)?;
    let report_metrics = match ds.labels() {
        Some(labels) if with_metrics => Some(metrics(&evaluate(&results, &labels)?)?),
        _ => None,
    };
    let mut out = Vec::new();
    if format == OutputFormat::Text {
        let mut head = String::new();
        skipped_line(&mut head, skipped);
        out.extend_from_slice(head.as_bytes());
    }
    report(&results, report_metrics.as_ref(), format, &mut out)?;
    emit(run.output.out.as_deref(), &out)
}

fn four(flag: &str, values: &Option<Vec<f64>>, base: [FeatureProfile; 4], spread: bool) -> CliResult<[FeatureProfile; 4]> {
    let Some(values) = values else { return Ok(base) };
    let values: [f64; 4] = values
        .as_slice()
        .try_into()
        .map_err(|_| Failure::usage(format!("--{flag} needs exactly 4 comma-separated values")))?;
    let mut out = base;
    for (p, v) in out.iter_mut().zip(values) {
        if spread {
            p.spread = v;
        } else {
            p.mean = v;
        }
    }
    Ok(out)
}

fn run_synth(
    counts: &[usize],
    seed: u64,
    means: [&Option<Vec<f64>>; 2],
    spreads: [&Option<Vec<f64>>; 2],
    out: Option<&Path>,
) -> CliResult<()> {
    let &[n_normal, n_intrusion] = counts else {
        return Err(Failure::usage("--counts needs two values: NORMAL,INTRUSION"));
    };
    let base = SynthProfile::flood();
    let normal = four("normal-mean", means[0], base.normal.features, false)?;
    let normal = four("normal-spread", spreads[0], normal, true)?;
    let intrusion = four("intrusion-mean", means[1], base.intrusion.features, false)?;
    let intrusion = four("intrusion-spread", spreads[1], intrusion, true)?;
    let profile = SynthProfile {
        normal: ClassProfile { features: normal },
        intrusion: ClassProfile { features: intrusion },
    };
    let ds = synth_generate(&profile, (n_normal, n_intrusion), seed)?;
    let mut buf = Vec::new();
    fisids::dataset::write_csv(&ds, &mut buf)?;
    emit(out, &buf)
}

fn run(cli: Cli) -> CliResult<()> {
    match &cli.command {
        Command::Rank {
            input,
            schema,
            bins,
            sampling,
            output,
        } => run_rank(input, schema, *bins, sampling, output),
        Command::Fit {
            input,
            schema,
            overlap,
            threshold,
            rules_disable,
            stamp,
            sampling,
            out,
        } => run_fit(input, schema, *overlap, *threshold, rules_disable, *stamp, sampling, out),
        Command::Detect { run } => run_scoring(run, false),
        Command::Eval { run } => run_scoring(run, true),
        Command::Synth {
            counts,
            seed,
            normal_mean,
            normal_spread,
            intrusion_mean,
            intrusion_spread,
            out,
        } => run_synth(
            counts,
            *seed,
            [normal_mean, intrusion_mean],
            [normal_spread, intrusion_spread],
            out.as_deref(),
        ),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("fisids: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
