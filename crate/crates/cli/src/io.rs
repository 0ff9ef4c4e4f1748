//! CSV ingestion and emission with configurable missing-value tokens.

use std::path::Path;

use csv::{ReaderBuilder, WriterBuilder};
use lacuna::{ClassLabel, LabeledDataset, MatrixBuilder};

use crate::error::{CliError, Result};

/// Parsing and formatting knobs for CSV files.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CsvOptions {
    /// Tokens read as missing cells; matched exactly, no trimming.
    pub missing_tokens_in: Vec<String>,
    /// Token written for missing cells. Must not read back as a finite
    /// number, or a round trip would silently invent data.
    pub missing_token_out: String,
    pub delimiter: u8,
    pub has_header: bool,
}

impl Default for CsvOptions {
    fn default() -> Self {
        CsvOptions {
            missing_tokens_in: ["", "NaN", "nan", "NA"].map(String::from).to_vec(),
            missing_token_out: String::new(),
            delimiter: b',',
            has_header: true,
        }
    }
}

/// Which column holds the class label.
///
/// Integer tokens (including negatives, counted from the end) select by
/// position; anything else selects by header name. A header column
/// whose name is itself an integer is therefore only reachable by
/// position.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LabelSelector {
    Name(String),
    Index(isize),
}

impl LabelSelector {
    pub fn parse(token: &str) -> Self {
        match token.parse::<isize>() {
            Ok(i) => LabelSelector::Index(i),
            Err(_) => LabelSelector::Name(token.to_string()),
        }
    }
}

fn resolve_label(
    selector: &LabelSelector,
    header: Option<&[String]>,
    width: usize,
) -> Result<usize> {
    match selector {
        LabelSelector::Name(name) => match header {
            Some(columns) => columns
                .iter()
                .position(|c| c == name)
                .ok_or_else(|| CliError::LabelNotFound(name.clone())),
            None => Err(CliError::LabelNameWithoutHeader(name.clone())),
        },
        LabelSelector::Index(raw) => {
            let index = if *raw < 0 { width as isize + raw } else { *raw };
            if (0..width as isize).contains(&index) {
                Ok(index as usize)
            } else {
                Err(CliError::LabelIndexOutOfRange {
                    index: *raw,
                    columns: width,
                })
            }
        }
    }
}

/// Reads a labelled dataset from CSV.
///
/// Every non-label cell must parse as a finite decimal or match one of
/// the missing tokens; anything else is reported with its file line and
/// column. The label column is removed from the feature block and its
/// original position retained so writers can restore it.
pub fn read_csv(
    path: &Path,
    label: &LabelSelector,
    options: &CsvOptions,
) -> Result<LabeledDataset> {
    let mut reader = ReaderBuilder::new()
        .has_headers(options.has_header)
        .delimiter(options.delimiter)
        .from_path(path)?;

    let header: Option<Vec<String>> = if options.has_header {
        Some(reader.headers()?.iter().map(str::to_string).collect())
    } else {
        None
    };
    let mut label_index = match &header {
        Some(h) => Some(resolve_label(label, Some(h), h.len())?),
        None => None,
    };

    let is_missing = |field: &str| options.missing_tokens_in.iter().any(|t| t == field);
    let mut builder: Option<MatrixBuilder> = None;
    let mut labels: Vec<ClassLabel> = Vec::new();
    let mut row = Vec::new();

    for record in reader.records() {
        let record = record?;
        let line = record.position().map_or(0, |p| p.line());
        let label_at = match label_index {
            Some(i) => i,
            None => {
                let resolved = resolve_label(label, None, record.len())?;
                label_index = Some(resolved);
                resolved
            }
        };

        row.clear();
        let mut class = None;
        for (col, field) in record.iter().enumerate() {
            if col == label_at {
                if is_missing(field) {
                    return Err(CliError::MissingLabel { line });
                }
                class = Some(ClassLabel::parse(field));
            } else if is_missing(field) {
                row.push(None);
            } else {
                match field.parse::<f64>() {
                    Ok(v) if v.is_finite() => row.push(Some(v)),
                    _ => {
                        return Err(CliError::CellParse {
                            line,
                            column: col + 1,
                            token: field.to_string(),
                        })
                    }
                }
            }
        }

        builder
            .get_or_insert_with(|| MatrixBuilder::new(row.len()))
            .push_row(&row)?;
        labels.push(class.expect("label column lies within the record"));
    }

    let features = builder.ok_or(CliError::EmptyInput)?.finish()?;
    let label_index = label_index.expect("resolved alongside the first record");
    let mut dataset = LabeledDataset::new(features, labels)?;
    if let Some(columns) = header {
        let names = columns
            .iter()
            .enumerate()
            .filter(|(i, _)| *i != label_index)
            .map(|(_, name)| name.clone())
            .collect();
        dataset = dataset
            .with_column_names(names)?
            .with_label_name(columns[label_index].clone());
    }
    Ok(dataset.with_label_index(label_index)?)
}

/// Writes a labelled dataset to CSV.
///
/// The label column returns to its recorded original position (or the
/// end when none was recorded), observed cells print in shortest
/// round-trip decimal form, and missing cells print as the configured
/// token.
pub fn write_csv(dataset: &LabeledDataset, path: &Path, options: &CsvOptions) -> Result<()> {
    if let Ok(v) = options.missing_token_out.parse::<f64>() {
        if v.is_finite() {
            return Err(CliError::AmbiguousMissingToken(
                options.missing_token_out.clone(),
            ));
        }
    }

    let mut writer = WriterBuilder::new()
        .delimiter(options.delimiter)
        .from_path(path)?;
    let d = dataset.n_cols();
    let label_at = dataset.label_index.unwrap_or(d).min(d);

    if options.has_header {
        let mut header: Vec<String> = match &dataset.column_names {
            Some(names) => names.clone(),
            None => (0..d).map(|i| format!("feature_{i}")).collect(),
        };
        let label_name = dataset.label_name.clone().unwrap_or_else(|| "label".into());
        header.insert(label_at, label_name);
        writer.write_record(&header)?;
    }

    let mut fields: Vec<String> = Vec::with_capacity(d + 1);
    for (row, label) in dataset.features.rows_iter().zip(&dataset.labels) {
        fields.clear();
        fields.extend(row.iter().map(|cell| match cell {
            Some(v) => v.to_string(),
            None => options.missing_token_out.clone(),
        }));
        fields.insert(label_at, label.to_string());
        writer.write_record(fields.iter())?;
    }
    writer.flush()?;
    Ok(())
}
