//! Dataset representation: feature matrix with first-class missing cells,
//! class labels, class partitions, and per-class missingness statistics.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};

/// A class identifier parsed from input data.
///
/// Integer tokens order numerically, everything else lexicographically,
/// with all integers ordering before all text labels. Every deterministic
/// ordering in the library is ascending over this type.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ClassLabel {
    Int(i64),
    Text(String),
}

impl ClassLabel {
    /// Parses a raw token: integers become `Int`, anything else `Text`.
    pub fn parse(token: &str) -> Self {
        match token.parse::<i64>() {
            Ok(v) => ClassLabel::Int(v),
            Err(_) => ClassLabel::Text(token.to_string()),
        }
    }
}

impl fmt::Display for ClassLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ClassLabel::Int(v) => write!(f, "{v}"),
            ClassLabel::Text(s) => write!(f, "{s}"),
        }
    }
}

impl From<i64> for ClassLabel {
    fn from(v: i64) -> Self {
        ClassLabel::Int(v)
    }
}

impl From<&str> for ClassLabel {
    fn from(s: &str) -> Self {
        ClassLabel::parse(s)
    }
}

/// A rectangular grid of optional real values.
///
/// `None` is the missing marker; observed cells are always finite.
#[derive(Debug, Clone, PartialEq)]
pub struct FeatureMatrix {
    rows: usize,
    cols: usize,
    cells: Vec<Option<f64>>,
}

impl FeatureMatrix {
    /// Builds a matrix from row vectors, validating shape and finiteness.
    pub fn from_rows(rows: Vec<Vec<Option<f64>>>) -> Result<Self> {
        let n_rows = rows.len();
        let n_cols = rows.first().map_or(0, Vec::len);
        let mut builder = MatrixBuilder::with_capacity(n_cols, n_rows);
        for row in &rows {
            builder.push_row(row)?;
        }
        builder.finish()
    }

    pub fn n_rows(&self) -> usize {
        self.rows
    }

    pub fn n_cols(&self) -> usize {
        self.cols
    }

    /// Cell value at (row, col); `None` means missing.
    pub fn get(&self, row: usize, col: usize) -> Option<f64> {
        self.cells[row * self.cols + col]
    }

    pub fn row(&self, row: usize) -> &[Option<f64>] {
        &self.cells[row * self.cols..(row + 1) * self.cols]
    }

    pub fn rows_iter(&self) -> impl Iterator<Item = &[Option<f64>]> {
        self.cells.chunks_exact(self.cols)
    }

    /// Fraction of missing cells over the whole grid.
    pub fn nan_rate(&self) -> f64 {
        let missing = self.cells.iter().filter(|c| c.is_none()).count();
        missing as f64 / (self.rows * self.cols) as f64
    }
}

/// Incremental row-wise matrix construction without intermediate copies.
#[derive(Debug)]
pub struct MatrixBuilder {
    cols: usize,
    cells: Vec<Option<f64>>,
    rows: usize,
}

impl MatrixBuilder {
    pub fn new(cols: usize) -> Self {
        Self::with_capacity(cols, 0)
    }

    pub fn with_capacity(cols: usize, rows: usize) -> Self {
        MatrixBuilder {
            cols,
            cells: Vec::with_capacity(cols * rows),
            rows: 0,
        }
    }

    /// Appends one row, rejecting ragged lengths and non-finite values.
    pub fn push_row(&mut self, row: &[Option<f64>]) -> Result<()> {
        if row.len() != self.cols {
            return Err(Error::RaggedRow {
                row: self.rows,
                found: row.len(),
                expected: self.cols,
            });
        }
        for (col, cell) in row.iter().enumerate() {
            if let Some(v) = cell {
                if !v.is_finite() {
                    return Err(Error::NonFinite {
                        row: self.rows,
                        col,
                        value: *v,
                    });
                }
            }
        }
        self.cells.extend_from_slice(row);
        self.rows += 1;
        Ok(())
    }

    pub fn finish(self) -> Result<FeatureMatrix> {
        if self.rows == 0 || self.cols == 0 {
            return Err(Error::EmptyMatrix);
        }
        Ok(FeatureMatrix {
            rows: self.rows,
            cols: self.cols,
            cells: self.cells,
        })
    }
}

/// A feature matrix with class labels and optional naming metadata.
///
/// `label_index` records where the label column sat in the original file
/// so writers can restore it; `None` for programmatic datasets.
#[derive(Debug, Clone, PartialEq)]
pub struct LabeledDataset {
    pub features: FeatureMatrix,
    pub labels: Vec<ClassLabel>,
    pub column_names: Option<Vec<String>>,
    pub label_name: Option<String>,
    pub label_index: Option<usize>,
}

impl LabeledDataset {
    pub fn new(features: FeatureMatrix, labels: Vec<ClassLabel>) -> Result<Self> {
        if labels.len() != features.n_rows() {
            return Err(Error::LabelCountMismatch {
                labels: labels.len(),
                rows: features.n_rows(),
            });
        }
        Ok(LabeledDataset {
            features,
            labels,
            column_names: None,
            label_name: None,
            label_index: None,
        })
    }

    pub fn with_column_names(mut self, names: Vec<String>) -> Result<Self> {
        if names.len() != self.features.n_cols() {
            return Err(Error::ColumnNameCountMismatch {
                expected: self.features.n_cols(),
                found: names.len(),
            });
        }
        for (i, name) in names.iter().enumerate() {
            if names[..i].contains(name) {
                return Err(Error::DuplicateColumnName(name.clone()));
            }
        }
        self.column_names = Some(names);
        Ok(self)
    }

    pub fn with_label_name(mut self, name: String) -> Self {
        self.label_name = Some(name);
        self
    }

    /// Position of the label column in the original file (label included in
    /// the count, so valid positions are `0..=n_cols`).
    pub fn with_label_index(mut self, index: usize) -> Result<Self> {
        if index > self.features.n_cols() {
            return Err(Error::LabelIndexOutOfRange {
                index,
                columns: self.features.n_cols() + 1,
            });
        }
        self.label_index = Some(index);
        Ok(self)
    }

    pub fn n_rows(&self) -> usize {
        self.features.n_rows()
    }

    pub fn n_cols(&self) -> usize {
        self.features.n_cols()
    }
}

/// Row indices grouped by class, ascending within each group.
#[derive(Debug, Clone, PartialEq)]
pub struct ClassPartition {
    groups: BTreeMap<ClassLabel, Vec<usize>>,
}

impl ClassPartition {
    /// Iterates classes in ascending label order.
    pub fn iter(&self) -> impl Iterator<Item = (&ClassLabel, &[usize])> {
        self.groups.iter().map(|(c, rows)| (c, rows.as_slice()))
    }

    pub fn classes(&self) -> impl Iterator<Item = &ClassLabel> {
        self.groups.keys()
    }

    pub fn rows(&self, class: &ClassLabel) -> Option<&[usize]> {
        self.groups.get(class).map(Vec::as_slice)
    }

    pub fn n_classes(&self) -> usize {
        self.groups.len()
    }

    /// Per-class row counts, ascending by class label.
    pub fn counts(&self) -> BTreeMap<ClassLabel, usize> {
        self.groups
            .iter()
            .map(|(c, rows)| (c.clone(), rows.len()))
            .collect()
    }
}

/// Groups row indices by class label.
pub fn partition_by_class(dataset: &LabeledDataset) -> ClassPartition {
    let mut groups: BTreeMap<ClassLabel, Vec<usize>> = BTreeMap::new();
    for (i, label) in dataset.labels.iter().enumerate() {
        groups.entry(label.clone()).or_default().push(i);
    }
    ClassPartition { groups }
}

/// Empirical per-class, per-feature missing probabilities.
#[derive(Debug, Clone, PartialEq)]
pub struct MissingnessProfile {
    rates: BTreeMap<ClassLabel, Vec<f64>>,
}

impl MissingnessProfile {
    /// Builds a profile from explicit per-class rate vectors. Rates are
    /// expected to lie in [0, 1]; `missingness_profile` guarantees that
    /// for profiles derived from data.
    pub fn from_rates(rates: BTreeMap<ClassLabel, Vec<f64>>) -> Self {
        MissingnessProfile { rates }
    }

    pub fn rates(&self, class: &ClassLabel) -> Option<&[f64]> {
        self.rates.get(class).map(Vec::as_slice)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&ClassLabel, &[f64])> {
        self.rates.iter().map(|(c, r)| (c, r.as_slice()))
    }
}

/// Computes exact empirical missing rates per class and feature.
pub fn missingness_profile(
    dataset: &LabeledDataset,
    partition: &ClassPartition,
) -> MissingnessProfile {
    let d = dataset.features.n_cols();
    let mut rates = BTreeMap::new();
    for (class, rows) in partition.iter() {
        let mut missing = vec![0usize; d];
        for &r in rows {
            for (k, cell) in dataset.features.row(r).iter().enumerate() {
                if cell.is_none() {
                    missing[k] += 1;
                }
            }
        }
        let n = rows.len() as f64;
        rates.insert(
            class.clone(),
            missing.into_iter().map(|m| m as f64 / n).collect(),
        );
    }
    MissingnessProfile { rates }
}
