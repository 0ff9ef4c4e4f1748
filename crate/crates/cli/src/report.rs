//! Dataset profiling: class balance and missingness summaries.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use lacuna::{missingness_profile, partition_by_class, ClassLabel, LabeledDataset};
use serde_json::{json, Value};

/// Class-balance and missingness summary of one dataset.
#[derive(Debug, Clone, PartialEq)]
pub struct Report {
    pub classes: BTreeMap<ClassLabel, usize>,
    /// Majority count over minority count; 1.0 when balanced.
    pub imbalance_ratio: f64,
    pub nan_rate: f64,
    pub per_feature_nan_rate: Vec<f64>,
    pub per_class_rates: BTreeMap<ClassLabel, Vec<f64>>,
}

impl Report {
    pub fn from_dataset(dataset: &LabeledDataset) -> Self {
        let partition = partition_by_class(dataset);
        let classes = partition.counts();
        let majority = classes.values().max().copied().unwrap_or(0);
        let minority = classes.values().min().copied().unwrap_or(0);
        let imbalance_ratio = if minority == 0 {
            1.0
        } else {
            majority as f64 / minority as f64
        };

        let n = dataset.n_rows();
        let d = dataset.n_cols();
        let mut per_feature_missing = vec![0usize; d];
        for row in dataset.features.rows_iter() {
            for (k, cell) in row.iter().enumerate() {
                if cell.is_none() {
                    per_feature_missing[k] += 1;
                }
            }
        }
        let per_feature_nan_rate = per_feature_missing
            .into_iter()
            .map(|m| m as f64 / n as f64)
            .collect();

        let profile = missingness_profile(dataset, &partition);
        let per_class_rates = profile
            .iter()
            .map(|(class, rates)| (class.clone(), rates.to_vec()))
            .collect();

        Report {
            classes,
            imbalance_ratio,
            nan_rate: dataset.features.nan_rate(),
            per_feature_nan_rate,
            per_class_rates,
        }
    }

    /// Human-readable multi-line rendering.
    pub fn text(&self) -> String {
        let mut out = String::new();
        let rows: usize = self.classes.values().sum();
        let _ = writeln!(out, "rows: {rows}");
        let _ = writeln!(out, "features: {}", self.per_feature_nan_rate.len());
        let _ = writeln!(out, "classes:");
        for (class, count) in &self.classes {
            let _ = writeln!(out, "  {class}: {count}");
        }
        let _ = writeln!(out, "imbalance ratio: {:.4}", self.imbalance_ratio);
        let _ = writeln!(out, "nan rate: {:.4}", self.nan_rate);
        let _ = writeln!(
            out,
            "per-feature nan rate: {}",
            join_rates(&self.per_feature_nan_rate)
        );
        let _ = writeln!(out, "per-class nan rates:");
        for (class, rates) in &self.per_class_rates {
            let _ = writeln!(out, "  {class}: {}", join_rates(rates));
        }
        out
    }

    /// JSON rendering with full numeric precision.
    pub fn to_json(&self) -> Value {
        let classes: serde_json::Map<String, Value> = self
            .classes
            .iter()
            .map(|(class, count)| (class.to_string(), json!(count)))
            .collect();
        let per_class: serde_json::Map<String, Value> = self
            .per_class_rates
            .iter()
            .map(|(class, rates)| (class.to_string(), json!(rates)))
            .collect();
        json!({
            "classes": classes,
            "imbalance_ratio": self.imbalance_ratio,
            "nan_rate": self.nan_rate,
            "per_feature_nan_rate": self.per_feature_nan_rate,
            "per_class_rates": per_class,
        })
    }
}

fn join_rates(rates: &[f64]) -> String {
    rates
        .iter()
        .map(|r| format!("{r:.4}"))
        .collect::<Vec<_>>()
        .join(", ")
}
