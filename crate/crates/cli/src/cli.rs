//! Argument parsing and command dispatch.
//!
//! Exit codes: 0 on success (including help/version), 2 for usage
//! errors, 1 for data and I/O errors.

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use lacuna::{resample, ClassLabel, Method, NanStrategy, SamplingSpec, SynthesisConfig};

use crate::error::Result;
use crate::io::{read_csv, write_csv, CsvOptions, LabelSelector};
use crate::report::Report;

#[derive(Debug, Parser)]
#[command(
    name = "lacuna",
    version,
    about = "Synthetic oversampling for imbalanced CSV datasets with missing values"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Oversample minority classes and write the extended dataset.
    Resample(ResampleArgs),
    /// Summarize class balance and missingness.
    Report(ReportArgs),
}

#[derive(Debug, Args)]
struct ResampleArgs {
    /// Input CSV file.
    #[arg(long)]
    input: PathBuf,
    /// Output CSV file.
    #[arg(long)]
    output: PathBuf,
    /// Label column: a header name, or an integer position (negative
    /// counts from the end).
    #[arg(long, allow_hyphen_values = true)]
    label: String,
    /// Sampling method.
    #[arg(long, value_enum)]
    method: MethodArg,
    /// auto, minority, not-majority, a ratio in (0,1], or an explicit
    /// map like "0=100,1=80".
    #[arg(long, default_value = "auto", value_parser = parse_strategy)]
    strategy: SamplingSpec,
    /// How missing cells propagate into synthetic rows.
    #[arg(long = "nan-strategy", value_enum, default_value_t = NanStrategyArg::Preserve)]
    nan_strategy: NanStrategyArg,
    /// Neighbour count for the pair-based methods.
    #[arg(long, default_value_t = 5)]
    k: usize,
    /// Kernel bandwidth multiplier for the rose method.
    #[arg(long, default_value_t = 1.0)]
    shrinkage: f64,
    /// Random seed; equal seeds reproduce output byte-for-byte.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Worker threads; any value produces the same output as --jobs 1.
    #[arg(long, default_value_t = 1)]
    jobs: usize,
    /// Synthetic rows generated per batch.
    #[arg(long = "batch-size", default_value_t = 64)]
    batch_size: usize,
}

#[derive(Debug, Args)]
struct ReportArgs {
    /// Input CSV file.
    #[arg(long)]
    input: PathBuf,
    /// Label column: a header name or an integer position.
    #[arg(long, allow_hyphen_values = true)]
    label: String,
    /// Emit the report as a single JSON object instead of text.
    #[arg(long)]
    json: bool,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum MethodArg {
    Smote,
    Adasyn,
    Rose,
}

impl From<MethodArg> for Method {
    fn from(value: MethodArg) -> Self {
        match value {
            MethodArg::Smote => Method::SmoteNan,
            MethodArg::Adasyn => Method::AdasynNan,
            MethodArg::Rose => Method::RoseNan,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum NanStrategyArg {
    Preserve,
    Interpolate,
    Random,
}

impl From<NanStrategyArg> for NanStrategy {
    fn from(value: NanStrategyArg) -> Self {
        match value {
            NanStrategyArg::Preserve => NanStrategy::PreservePattern,
            NanStrategyArg::Interpolate => NanStrategy::Interpolate,
            NanStrategyArg::Random => NanStrategy::RandomPattern,
        }
    }
}

fn parse_strategy(token: &str) -> std::result::Result<SamplingSpec, String> {
    match token {
        "auto" => return Ok(SamplingSpec::Auto),
        "minority" => return Ok(SamplingSpec::Minority),
        "not-majority" => return Ok(SamplingSpec::NotMajority),
        _ => {}
    }
    if token.contains('=') {
        let mut targets = BTreeMap::new();
        for entry in token.split(',') {
            let (class, count) = entry
                .split_once('=')
                .ok_or_else(|| format!("malformed map entry {entry:?}: expected class=target"))?;
            let count: usize = count
                .parse()
                .map_err(|_| format!("malformed target count {count:?} in entry {entry:?}"))?;
            targets.insert(ClassLabel::parse(class), count);
        }
        return Ok(SamplingSpec::Explicit(targets));
    }
    match token.parse::<f64>() {
        Ok(ratio) if ratio > 0.0 && ratio <= 1.0 => Ok(SamplingSpec::Ratio(ratio)),
        Ok(ratio) => Err(format!("ratio {ratio} outside (0, 1]")),
        Err(_) => Err(format!(
            "unknown strategy {token:?}: expected auto, minority, not-majority, a ratio like 0.5, or a map like 0=100,1=80"
        )),
    }
}

fn execute(cli: Cli) -> Result<()> {
    let options = CsvOptions::default();
    match cli.command {
        Command::Resample(args) => {
            let selector = LabelSelector::parse(&args.label);
            let dataset = read_csv(&args.input, &selector, &options)?;
            let config = SynthesisConfig::new(args.method.into())
                .strategy(args.strategy)
                .nan_strategy(args.nan_strategy.into())
                .k(args.k)
                .shrinkage(args.shrinkage)
                .seed(args.seed)
                .jobs(args.jobs)
                .batch_size(args.batch_size);
            let result = resample(&dataset, &config)?;
            write_csv(&result.dataset, &args.output, &options)?;
            Ok(())
        }
        Command::Report(args) => {
            let selector = LabelSelector::parse(&args.label);
            let dataset = read_csv(&args.input, &selector, &options)?;
            let report = Report::from_dataset(&dataset);
            if args.json {
                println!("{}", serde_json::to_string_pretty(&report.to_json())?);
            } else {
                print!("{}", report.text());
            }
            Ok(())
        }
    }
}

/// Parses `argv` and runs the requested command, returning the process
/// exit code.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(err) => {
            let code = if err.use_stderr() { 2 } else { 0 };
            let _ = err.print();
            return code;
        }
    };
    match execute(cli) {
        Ok(()) => 0,
        Err(err) => {
            eprintln!("error: {err}");
            1
        }
    }
}
