//! End-to-end resampling orchestration.
//!
//! Synthetic work is cut into per-class batches, each owning a random
//! substream keyed by (seed, method, class, batch). Batches run on up
//! to `jobs` workers, at most one wave of `jobs` batches in flight at a
//! time, and results are appended in (class, batch) order, so parallel
//! and sequential runs assemble identical outputs and transient memory
//! stays bounded by roughly one batch per worker.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::samplers::{build_contexts, SynthesisConfig};
use crate::strategy::resolve;
use crate::stream::StreamSource;
use crate::tabular::{
    missingness_profile, partition_by_class, ClassLabel, LabeledDataset, MatrixBuilder,
};

/// Where one synthetic row came from.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SyntheticProvenance {
    pub class: ClassLabel,
    pub batch_index: u64,
    pub within_batch: usize,
}

/// Resampled dataset: originals first, then synthetic rows grouped by
/// ascending class, batch, and within-batch position.
#[derive(Debug, Clone, PartialEq)]
pub struct ResampleResult {
    pub dataset: LabeledDataset,
    pub provenance: Vec<SyntheticProvenance>,
}

impl ResampleResult {
    /// Number of synthetic rows appended after the originals.
    pub fn synthetic_count(&self) -> usize {
        self.provenance.len()
    }
}

/// Oversamples `dataset` according to `config`.
///
/// The missingness profile driving the random-pattern strategy is
/// computed on the original rows before any synthesis. Identical
/// (dataset, config) pairs produce identical results for any job count.
pub fn resample(dataset: &LabeledDataset, config: &SynthesisConfig) -> Result<ResampleResult> {
    config.validate()?;
    let partition = partition_by_class(dataset);
    if partition.n_classes() < 2 {
        return Err(Error::SingleClass);
    }
    let plan = resolve(&config.strategy_spec, &partition.counts())?;
    let profile = missingness_profile(dataset, &partition);
    let contexts = build_contexts(dataset, &partition, &profile, &plan, config)?;

    let total_synthetic: usize = contexts.iter().map(|c| c.emit_count()).sum();
    let specs: Vec<(usize, u64)> = contexts
        .iter()
        .enumerate()
        .flat_map(|(i, ctx)| (0..ctx.batch_count()).map(move |b| (i, b)))
        .collect();

    let mut builder =
        MatrixBuilder::with_capacity(dataset.n_cols(), dataset.n_rows() + total_synthetic);
    let mut labels = Vec::with_capacity(dataset.n_rows() + total_synthetic);
    for (row, label) in dataset.features.rows_iter().zip(&dataset.labels) {
        builder.push_row(row)?;
        labels.push(label.clone());
    }

    let mut provenance = Vec::with_capacity(total_synthetic);
    let source = StreamSource::new(config.seed);
    let append = |ctx_index: usize,
                  batch_index: u64,
                  rows: Vec<Vec<Option<f64>>>,
                  builder: &mut MatrixBuilder,
                  labels: &mut Vec<ClassLabel>,
                  provenance: &mut Vec<SyntheticProvenance>|
     -> Result<()> {
        let class = contexts[ctx_index].class();
        for (within_batch, row) in rows.into_iter().enumerate() {
            builder.push_row(&row)?;
            labels.push(class.clone());
            provenance.push(SyntheticProvenance {
                class: class.clone(),
                batch_index,
                within_batch,
            });
        }
        Ok(())
    };

    if config.jobs == 1 {
        for &(i, b) in &specs {
            let rows = contexts[i].generate_batch(b, &source)?;
            append(i, b, rows, &mut builder, &mut labels, &mut provenance)?;
        }
    } else {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(config.jobs)
            .build()
            .map_err(|e| Error::InvalidConfig(format!("cannot build worker pool: {e}")))?;
        for wave in specs.chunks(config.jobs) {
            let results: Vec<Result<Vec<Vec<Option<f64>>>>> = pool.install(|| {
                wave.par_iter()
                    .map(|&(i, b)| contexts[i].generate_batch(b, &source))
                    .collect()
            });
            for (&(i, b), rows) in wave.iter().zip(results) {
                append(i, b, rows?, &mut builder, &mut labels, &mut provenance)?;
            }
        }
    }

    let mut result = LabeledDataset::new(builder.finish()?, labels)?;
    result.column_names = dataset.column_names.clone();
    result.label_name = dataset.label_name.clone();
    result.label_index = dataset.label_index;

    Ok(ResampleResult {
        dataset: result,
        provenance,
    })
}
