//! The three synthetic samplers: pair interpolation with uniform seed
//! cycling, difficulty-weighted pair interpolation, and Gaussian kernel
//! perturbation of bootstrap seeds.

use crate::error::{Error, Result};
use crate::geometry::k_nearest;
use crate::nan_policy::{combine_pair, combine_single, InterpolationDraw, NanStrategy};
use crate::strategy::{SamplingPlan, SamplingSpec};
use crate::stream::{unit_to_index, StreamSource, Substream};
use crate::tabular::{
    missingness_profile, partition_by_class, ClassLabel, ClassPartition, FeatureMatrix,
    LabeledDataset, MissingnessProfile,
};

/// Which sampler generates the synthetic rows.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    SmoteNan,
    AdasynNan,
    RoseNan,
}

impl Method {
    /// Stable tag separating per-method random substreams.
    pub fn stream_tag(self) -> u64 {
        match self {
            Method::SmoteNan => 1,
            Method::AdasynNan => 2,
            Method::RoseNan => 3,
        }
    }
}

/// Everything a resampling run needs besides the data.
#[derive(Debug, Clone)]
pub struct SynthesisConfig {
    pub method: Method,
    pub k: usize,
    pub strategy_spec: SamplingSpec,
    pub nan_strategy: NanStrategy,
    pub shrinkage: f64,
    pub seed: u64,
    pub batch_size: usize,
    pub jobs: usize,
}

impl SynthesisConfig {
    pub fn new(method: Method) -> Self {
        SynthesisConfig {
            method,
            k: 5,
            strategy_spec: SamplingSpec::Auto,
            nan_strategy: NanStrategy::default(),
            shrinkage: 1.0,
            seed: 0,
            batch_size: 64,
            jobs: 1,
        }
    }

    pub fn k(mut self, k: usize) -> Self {
        self.k = k;
        self
    }

    pub fn strategy(mut self, spec: SamplingSpec) -> Self {
        self.strategy_spec = spec;
        self
    }

    pub fn nan_strategy(mut self, strategy: NanStrategy) -> Self {
        self.nan_strategy = strategy;
        self
    }

    pub fn shrinkage(mut self, shrinkage: f64) -> Self {
        self.shrinkage = shrinkage;
        self
    }

    pub fn seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn batch_size(mut self, batch_size: usize) -> Self {
        self.batch_size = batch_size;
        self
    }

    pub fn jobs(mut self, jobs: usize) -> Self {
        self.jobs = jobs;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if self.k < 1 {
            return Err(Error::InvalidConfig("k must be at least 1".into()));
        }
        if !(self.shrinkage >= 0.0 && self.shrinkage.is_finite()) {
            return Err(Error::InvalidConfig(
                "shrinkage must be a finite nonnegative number".into(),
            ));
        }
        if self.batch_size < 1 {
            return Err(Error::InvalidConfig("batch_size must be at least 1".into()));
        }
        if self.jobs < 1 {
            return Err(Error::InvalidConfig("jobs must be at least 1".into()));
        }
        Ok(())
    }
}

/// Per-seed difficulty scores and the integer quotas they induce.
#[derive(Debug, Clone, PartialEq)]
pub struct AdasynAllocation {
    difficulties: Vec<f64>,
    normalized: Vec<f64>,
    quotas: Vec<usize>,
}

impl AdasynAllocation {
    /// Normalizes difficulty scores and rounds per-seed quotas against a
    /// total budget. All-zero difficulties fall back to a uniform split.
    pub fn from_difficulties(difficulties: &[f64], budget: usize) -> Self {
        let total: f64 = difficulties.iter().sum();
        let n = difficulties.len();
        let (normalized, quotas) = if total > 0.0 {
            let normalized: Vec<f64> = difficulties.iter().map(|r| r / total).collect();
            let quotas = normalized
                .iter()
                .map(|r| (r * budget as f64).round() as usize)
                .collect();
            (normalized, quotas)
        } else {
            log::warn!(
                "all difficulty scores are zero; allocating the budget of {budget} uniformly across {n} seeds"
            );
            let share = if n == 0 {
                0
            } else {
                (budget as f64 / n as f64).round() as usize
            };
            (vec![0.0; n], vec![share; n])
        };
        AdasynAllocation {
            difficulties: difficulties.to_vec(),
            normalized,
            quotas,
        }
    }

    /// Scores every class row by the share of majority-class rows among
    /// its k nearest neighbours over the whole dataset, then allocates.
    pub fn compute(
        dataset: &LabeledDataset,
        class_rows: &[usize],
        majority: &ClassLabel,
        k: usize,
        budget: usize,
    ) -> Self {
        let all_rows: Vec<usize> = (0..dataset.n_rows()).collect();
        let difficulties: Vec<f64> = class_rows
            .iter()
            .map(|&r| {
                let neighbors = k_nearest(&dataset.features, r, &all_rows, k);
                let majority_count = neighbors
                    .iter()
                    .filter(|n| &dataset.labels[n.row] == majority)
                    .count();
                majority_count as f64 / k as f64
            })
            .collect();
        Self::from_difficulties(&difficulties, budget)
    }

    pub fn difficulties(&self) -> &[f64] {
        &self.difficulties
    }

    pub fn normalized(&self) -> &[f64] {
        &self.normalized
    }

    pub fn quotas(&self) -> &[usize] {
        &self.quotas
    }

    /// Rows this allocation will actually emit; may deviate from the
    /// nominal budget by rounding.
    pub fn total(&self) -> usize {
        self.quotas.iter().sum()
    }
}

/// Per-feature Gaussian perturbation scales for one class.
#[derive(Debug, Clone, PartialEq)]
pub struct RoseBandwidth {
    factors: Vec<f64>,
}

impl RoseBandwidth {
    /// Silverman-style bandwidth per feature: shrinkage times
    /// `(4 / ((d+2) n))^(1/(d+4))` times the sample standard deviation
    /// of the feature's observed values within the class. Features with
    /// fewer than two observed values get zero bandwidth.
    pub fn compute(features: &FeatureMatrix, class_rows: &[usize], shrinkage: f64) -> Self {
        let d = features.n_cols();
        let n = class_rows.len();
        let silverman = (4.0 / ((d as f64 + 2.0) * n as f64)).powf(1.0 / (d as f64 + 4.0));
        let factors = (0..d)
            .map(|k| {
                let observed: Vec<f64> = class_rows
                    .iter()
                    .filter_map(|&r| features.get(r, k))
                    .collect();
                if observed.len() < 2 {
                    return 0.0;
                }
                let mean = observed.iter().sum::<f64>() / observed.len() as f64;
                let variance = observed.iter().map(|x| (x - mean).powi(2)).sum::<f64>()
                    / (observed.len() - 1) as f64;
                shrinkage * silverman * variance.sqrt()
            })
            .collect();
        RoseBandwidth { factors }
    }

    pub fn per_feature(&self) -> &[f64] {
        &self.factors
    }
}

/// How a class maps global synthetic indices onto seed rows.
#[derive(Debug, Clone)]
enum SeedSchedule {
    /// Ascending row order, repeating: index g uses class row g mod n.
    Cycle,
    /// Prefix sums over per-seed quotas: seed i covers indices
    /// [prefix[i], prefix[i+1]).
    Quota { prefix: Vec<usize> },
    /// One uniform draw per synthetic row (bootstrap with replacement).
    Uniform,
}

impl SeedSchedule {
    /// Position of index `g`'s seed within the class row list. Only the
    /// Uniform schedule consumes a draw.
    fn position(&self, g: usize, n_rows: usize, stream: &mut Substream) -> usize {
        match self {
            SeedSchedule::Cycle => g % n_rows,
            SeedSchedule::Quota { prefix } => prefix.partition_point(|&p| p <= g) - 1,
            SeedSchedule::Uniform => stream.next_index(n_rows),
        }
    }
}

/// Precomputed per-class state shared by every batch of that class.
#[derive(Debug)]
pub(crate) struct ClassContext<'a> {
    dataset: &'a LabeledDataset,
    profile: &'a MissingnessProfile,
    config: &'a SynthesisConfig,
    class: &'a ClassLabel,
    class_ordinal: u64,
    rows: &'a [usize],
    emit: usize,
    schedule: SeedSchedule,
    /// Same-class k-nearest rows per seed position (pair methods).
    neighbors: Vec<Vec<usize>>,
    /// Per-feature perturbation scale (kernel method).
    bandwidth: Vec<f64>,
    /// Per-feature pools of class rows observing that feature, for
    /// donor fill in the kernel method.
    donor_pools: Vec<Vec<usize>>,
}

impl<'a> ClassContext<'a> {
    pub(crate) fn class(&self) -> &ClassLabel {
        self.class
    }

    /// Synthetic rows this class will emit in total.
    pub(crate) fn emit_count(&self) -> usize {
        self.emit
    }

    pub(crate) fn batch_count(&self) -> u64 {
        self.emit.div_ceil(self.config.batch_size) as u64
    }

    /// Generates one batch's rows from that batch's own substream.
    pub(crate) fn generate_batch(
        &self,
        batch_index: u64,
        source: &StreamSource,
    ) -> Result<Vec<Vec<Option<f64>>>> {
        let start = batch_index as usize * self.config.batch_size;
        let end = (start + self.config.batch_size).min(self.emit);
        let mut stream = source.stream(
            self.config.method.stream_tag(),
            self.class_ordinal,
            batch_index,
        );
        let mut out = Vec::with_capacity(end - start);
        for g in start..end {
            out.push(self.synthesize(g, &mut stream)?);
        }
        Ok(out)
    }

    /// Draws one synthetic row. The draw schedule is fixed per row so
    /// that batch boundaries never shift consumption:
    /// pair methods consume (neighbour, lambda, [d bernoullis]); the
    /// kernel method consumes (seed, d normals, [d bernoullis], then one
    /// uniform per donor-filled feature).
    fn synthesize(&self, g: usize, stream: &mut Substream) -> Result<Vec<Option<f64>>> {
        let features = &self.dataset.features;
        let seed_pos = self.schedule.position(g, self.rows.len(), stream);
        let seed_row = self.rows[seed_pos];

        match self.config.method {
            Method::SmoteNan | Method::AdasynNan => {
                let u_neighbor = stream.next_f64();
                let pool = &self.neighbors[seed_pos];
                let partner_row = if pool.is_empty() {
                    seed_row
                } else {
                    pool[unit_to_index(u_neighbor, pool.len())]
                };
                let lambda = InterpolationDraw::new(stream.next_f64())?;
                let bernoullis = self.bernoulli_draws(stream);
                combine_pair(
                    features.row(seed_row),
                    features.row(partner_row),
                    lambda,
                    self.config.nan_strategy,
                    self.profile,
                    self.class,
                    &bernoullis,
                )
            }
            Method::RoseNan => {
                let offsets: Vec<f64> = self
                    .bandwidth
                    .iter()
                    .map(|&h| h * stream.next_normal())
                    .collect();
                let bernoullis = self.bernoulli_draws(stream);
                combine_single(
                    features.row(seed_row),
                    &offsets,
                    self.config.nan_strategy,
                    |k| {
                        let pool = &self.donor_pools[k];
                        if pool.is_empty() {
                            return None;
                        }
                        let donor = pool[stream.next_index(pool.len())];
                        features.get(donor, k)
                    },
                    self.profile,
                    self.class,
                    &bernoullis,
                )
            }
        }
    }

    fn bernoulli_draws(&self, stream: &mut Substream) -> Vec<f64> {
        match self.config.nan_strategy {
            NanStrategy::RandomPattern => (0..self.dataset.n_cols())
                .map(|_| stream.next_f64())
                .collect(),
            _ => Vec::new(),
        }
    }
}

/// Builds one context per dataset class, ordinals assigned in ascending
/// class order over the whole dataset. Classes with no synthetic quota
/// still occupy an ordinal so stream keys stay stable across plans.
pub(crate) fn build_contexts<'a>(
    dataset: &'a LabeledDataset,
    partition: &'a ClassPartition,
    profile: &'a MissingnessProfile,
    plan: &'a SamplingPlan,
    config: &'a SynthesisConfig,
) -> Result<Vec<ClassContext<'a>>> {
    for (class, &count) in plan.counts() {
        if count > 0 && partition.rows(class).is_none() {
            return Err(Error::EmptyClass(class.clone()));
        }
    }

    let mut contexts = Vec::with_capacity(partition.n_classes());
    for (ordinal, (class, rows)) in partition.iter().enumerate() {
        let quota = plan.synthetic_for(class);
        let (emit, schedule) = match config.method {
            Method::SmoteNan => (quota, SeedSchedule::Cycle),
            Method::RoseNan => (quota, SeedSchedule::Uniform),
            Method::AdasynNan => {
                if quota == 0 {
                    (0, SeedSchedule::Cycle)
                } else {
                    let allocation =
                        AdasynAllocation::compute(dataset, rows, plan.majority(), config.k, quota);
                    let mut prefix = Vec::with_capacity(rows.len() + 1);
                    let mut acc = 0usize;
                    prefix.push(0);
                    for &q in allocation.quotas() {
                        acc += q;
                        prefix.push(acc);
                    }
                    (allocation.total(), SeedSchedule::Quota { prefix })
                }
            }
        };

        let needs_pairs = emit > 0 && matches!(config.method, Method::SmoteNan | Method::AdasynNan);
        let neighbors = if needs_pairs {
            rows.iter()
                .map(|&r| {
                    k_nearest(&dataset.features, r, rows, config.k)
                        .into_iter()
                        .map(|n| n.row)
                        .collect()
                })
                .collect()
        } else {
            Vec::new()
        };

        let (bandwidth, donor_pools) = if emit > 0 && config.method == Method::RoseNan {
            let bw = RoseBandwidth::compute(&dataset.features, rows, config.shrinkage);
            let pools = (0..dataset.n_cols())
                .map(|k| {
                    rows.iter()
                        .copied()
                        .filter(|&r| dataset.features.get(r, k).is_some())
                        .collect()
                })
                .collect();
            (bw.per_feature().to_vec(), pools)
        } else {
            (Vec::new(), Vec::new())
        };

        contexts.push(ClassContext {
            dataset,
            profile,
            config,
            class,
            class_ordinal: ordinal as u64,
            rows,
            emit,
            schedule,
            neighbors,
            bandwidth,
            donor_pools,
        });
    }
    Ok(contexts)
}

fn run_sequential(
    dataset: &LabeledDataset,
    plan: &SamplingPlan,
    config: &SynthesisConfig,
    source: &StreamSource,
) -> Result<Vec<(Vec<Option<f64>>, ClassLabel)>> {
    config.validate()?;
    let partition = partition_by_class(dataset);
    let profile = missingness_profile(dataset, &partition);
    let contexts = build_contexts(dataset, &partition, &profile, plan, config)?;
    let mut out = Vec::new();
    for ctx in &contexts {
        for batch in 0..ctx.batch_count() {
            for row in ctx.generate_batch(batch, source)? {
                out.push((row, ctx.class().clone()));
            }
        }
    }
    Ok(out)
}

fn expect_method(config: &SynthesisConfig, method: Method) -> Result<()> {
    if config.method == method {
        Ok(())
    } else {
        Err(Error::InvalidConfig(format!(
            "config method {:?} does not match the invoked sampler",
            config.method
        )))
    }
}

/// Pair interpolation with seeds cycled in ascending row order.
pub fn smote_nan(
    dataset: &LabeledDataset,
    plan: &SamplingPlan,
    config: &SynthesisConfig,
    source: &StreamSource,
) -> Result<Vec<(Vec<Option<f64>>, ClassLabel)>> {
    expect_method(config, Method::SmoteNan)?;
    run_sequential(dataset, plan, config, source)
}

/// Pair interpolation with per-seed quotas weighted by how many
/// majority-class rows sit among each seed's nearest neighbours.
pub fn adasyn_nan(
    dataset: &LabeledDataset,
    plan: &SamplingPlan,
    config: &SynthesisConfig,
    source: &StreamSource,
) -> Result<Vec<(Vec<Option<f64>>, ClassLabel)>> {
    expect_method(config, Method::AdasynNan)?;
    run_sequential(dataset, plan, config, source)
}

/// Gaussian perturbation of bootstrap-resampled seed rows.
pub fn rose_nan(
    dataset: &LabeledDataset,
    plan: &SamplingPlan,
    config: &SynthesisConfig,
    source: &StreamSource,
) -> Result<Vec<(Vec<Option<f64>>, ClassLabel)>> {
    expect_method(config, Method::RoseNan)?;
    run_sequential(dataset, plan, config, source)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::strategy::resolve;
    use std::collections::BTreeMap;

    fn dataset(rows: Vec<Vec<Option<f64>>>, labels: Vec<i64>) -> LabeledDataset {
        LabeledDataset::new(
            FeatureMatrix::from_rows(rows).unwrap(),
            labels.into_iter().map(ClassLabel::Int).collect(),
        )
        .unwrap()
    }

    /// Two well-separated clusters: class 0 near the origin, class 1
    /// shifted by 10, with optional missing cells injected by the caller.
    fn two_cluster_dataset(n0: usize, n1: usize) -> LabeledDataset {
        let mut rows = Vec::new();
        let mut labels = Vec::new();
        for i in 0..n0 {
            rows.push(vec![Some(i as f64 * 0.1), Some(1.0 + i as f64 * 0.05)]);
            labels.push(0);
        }
        for i in 0..n1 {
            rows.push(vec![
                Some(10.0 + i as f64 * 0.1),
                Some(11.0 + i as f64 * 0.05),
            ]);
            labels.push(1);
        }
        dataset(rows, labels)
    }

    fn auto_plan(ds: &LabeledDataset) -> SamplingPlan {
        resolve(&SamplingSpec::Auto, &partition_by_class(ds).counts()).unwrap()
    }

    #[test]
    fn cycle_schedule_visits_rows_in_order() {
        let mut stream = StreamSource::new(0).stream(9, 9, 9);
        let s = SeedSchedule::Cycle;
        let positions: Vec<usize> = (0..7).map(|g| s.position(g, 3, &mut stream)).collect();
        assert_eq!(positions, vec![0, 1, 2, 0, 1, 2, 0]);
    }

    #[test]
    fn cycle_schedule_spreads_evenly() {
        let mut stream = StreamSource::new(0).stream(9, 9, 9);
        let s = SeedSchedule::Cycle;
        let mut uses = [0usize; 20];
        for g in 0..80 {
            uses[s.position(g, 20, &mut stream)] += 1;
        }
        assert!(uses.iter().all(|&u| u == 4));
    }

    #[test]
    fn quota_schedule_follows_prefix_sums() {
        let mut stream = StreamSource::new(0).stream(9, 9, 9);
        let s = SeedSchedule::Quota {
            prefix: vec![0, 6, 8],
        };
        let positions: Vec<usize> = (0..8).map(|g| s.position(g, 2, &mut stream)).collect();
        assert_eq!(positions, vec![0, 0, 0, 0, 0, 0, 1, 1]);
    }

    #[test]
    fn quota_schedule_skips_zero_quota_seeds() {
        let mut stream = StreamSource::new(0).stream(9, 9, 9);
        let s = SeedSchedule::Quota {
            prefix: vec![0, 0, 3, 3, 5],
        };
        let positions: Vec<usize> = (0..5).map(|g| s.position(g, 4, &mut stream)).collect();
        assert_eq!(positions, vec![1, 1, 1, 3, 3]);
    }

    #[test]
    fn allocation_normalizes_and_rounds() {
        let alloc = AdasynAllocation::from_difficulties(&[0.6, 0.2], 8);
        assert!((alloc.normalized()[0] - 0.75).abs() < 1e-12);
        assert!((alloc.normalized()[1] - 0.25).abs() < 1e-12);
        assert_eq!(alloc.quotas(), &[6, 2]);
        assert_eq!(alloc.total(), 8);
    }

    #[test]
    fn allocation_zero_difficulties_fall_back_to_uniform() {
        let alloc = AdasynAllocation::from_difficulties(&[0.0, 0.0, 0.0, 0.0], 80);
        assert_eq!(alloc.quotas(), &[20, 20, 20, 20]);
    }

    #[test]
    fn allocation_matches_brute_force_recomputation() {
        let difficulties = [0.4, 0.0, 1.0, 0.2, 0.6];
        let budget = 37usize;
        let alloc = AdasynAllocation::from_difficulties(&difficulties, budget);
        let sum: f64 = difficulties.iter().sum();
        for (i, &r) in difficulties.iter().enumerate() {
            let expected = ((r / sum) * budget as f64).round() as usize;
            assert_eq!(alloc.quotas()[i], expected, "seed {i}");
            assert!((alloc.normalized()[i] - r / sum).abs() < 1e-15);
        }
    }

    #[test]
    fn difficulty_counts_majority_neighbours() {
        // class 1 row at index 4 sits between majority rows; with k=5
        // its neighbourhood over the full dataset is hand-countable
        let ds = dataset(
            vec![
                vec![Some(0.0)],
                vec![Some(1.0)],
                vec![Some(2.0)],
                vec![Some(3.0)],
                vec![Some(4.0)], // minority seed
                vec![Some(5.0)],
                vec![Some(6.0)],
                vec![Some(40.0)], // second minority row, isolated
            ],
            vec![0, 0, 0, 0, 1, 0, 0, 1],
        );
        let partition = partition_by_class(&ds);
        let rows = partition.rows(&ClassLabel::Int(1)).unwrap();
        let alloc = AdasynAllocation::compute(&ds, rows, &ClassLabel::Int(0), 5, 10);
        // seed at 4.0: nearest five are 3,5,2,6,1 -> all majority -> 1.0
        // seed at 40.0: nearest five are 6,5,3(tie with 4? no: dists 34,35,37,36,38)
        //   rows by distance: 6(34),5(35),4(36),3(37),2(38) -> four majority, one minority
        assert_eq!(alloc.difficulties(), &[1.0, 0.8]);
    }

    #[test]
    fn bandwidth_matches_hand_computation() {
        let features = FeatureMatrix::from_rows(vec![
            vec![Some(1.0)],
            vec![Some(2.0)],
            vec![Some(3.0)],
            vec![Some(4.0)],
        ])
        .unwrap();
        let bw = RoseBandwidth::compute(&features, &[0, 1, 2, 3], 1.0);
        let mean = 2.5;
        let var = ((1.0f64 - mean).powi(2)
            + (2.0 - mean).powi(2)
            + (3.0 - mean).powi(2)
            + (4.0 - mean).powi(2))
            / 3.0;
        let expected = (4.0f64 / (3.0 * 4.0)).powf(0.2) * var.sqrt();
        assert!((bw.per_feature()[0] - expected).abs() < 1e-12);
    }

    #[test]
    fn bandwidth_zero_for_sparse_or_constant_features() {
        let features = FeatureMatrix::from_rows(vec![
            vec![Some(1.0), Some(5.0), None],
            vec![Some(1.0), None, None],
            vec![Some(1.0), None, Some(2.0)],
        ])
        .unwrap();
        let bw = RoseBandwidth::compute(&features, &[0, 1, 2], 1.0);
        // constant feature: std 0 -> bandwidth 0
        assert_eq!(bw.per_feature()[0], 0.0);
        // single observation -> undefined std -> bandwidth 0
        assert_eq!(bw.per_feature()[1], 0.0);
        assert_eq!(bw.per_feature()[2], 0.0);
    }

    #[test]
    fn bandwidth_scales_linearly_with_shrinkage() {
        let features =
            FeatureMatrix::from_rows(vec![vec![Some(1.0)], vec![Some(3.0)], vec![Some(8.0)]])
                .unwrap();
        let one = RoseBandwidth::compute(&features, &[0, 1, 2], 1.0);
        let half = RoseBandwidth::compute(&features, &[0, 1, 2], 0.5);
        let zero = RoseBandwidth::compute(&features, &[0, 1, 2], 0.0);
        assert!((half.per_feature()[0] - one.per_feature()[0] * 0.5).abs() < 1e-12);
        assert_eq!(zero.per_feature()[0], 0.0);
    }

    #[test]
    fn smote_emits_exact_counts() {
        let ds = two_cluster_dataset(25, 7);
        let plan = auto_plan(&ds);
        let config = SynthesisConfig::new(Method::SmoteNan).seed(11);
        let out = smote_nan(&ds, &plan, &config, &StreamSource::new(11)).unwrap();
        assert_eq!(out.len(), 18);
        assert!(out.iter().all(|(_, c)| c == &ClassLabel::Int(1)));
    }

    #[test]
    fn rose_emits_exact_counts_per_class() {
        let mut rows = Vec::new();
        let mut labels = Vec::new();
        for i in 0..30 {
            rows.push(vec![Some(i as f64)]);
            labels.push(0);
        }
        for i in 0..5 {
            rows.push(vec![Some(100.0 + i as f64)]);
            labels.push(1);
        }
        for i in 0..12 {
            rows.push(vec![Some(200.0 + i as f64)]);
            labels.push(2);
        }
        let ds = dataset(rows, labels);
        let plan = auto_plan(&ds);
        let config = SynthesisConfig::new(Method::RoseNan).seed(5);
        let out = rose_nan(&ds, &plan, &config, &StreamSource::new(5)).unwrap();
        let mut per_class: BTreeMap<ClassLabel, usize> = BTreeMap::new();
        for (_, c) in &out {
            *per_class.entry(c.clone()).or_default() += 1;
        }
        assert_eq!(per_class[&ClassLabel::Int(1)], 25);
        assert_eq!(per_class[&ClassLabel::Int(2)], 18);
        assert_eq!(per_class.get(&ClassLabel::Int(0)), None);
    }

    #[test]
    fn adasyn_total_within_rounding_of_budget() {
        let ds = two_cluster_dataset(40, 9);
        let plan = auto_plan(&ds);
        let config = SynthesisConfig::new(Method::AdasynNan).seed(3);
        let out = adasyn_nan(&ds, &plan, &config, &StreamSource::new(3)).unwrap();
        let budget = plan.total() as isize;
        let emitted = out.len() as isize;
        assert!(
            (emitted - budget).unsigned_abs() <= 9,
            "emitted {emitted} vs budget {budget}"
        );
    }

    #[test]
    fn lone_minority_row_yields_copies() {
        let ds = dataset(
            vec![
                vec![Some(0.0), Some(1.0)],
                vec![Some(0.5), Some(1.5)],
                vec![Some(1.0), Some(2.0)],
                vec![Some(9.0), None],
            ],
            vec![0, 0, 0, 1],
        );
        let plan = auto_plan(&ds);
        let config = SynthesisConfig::new(Method::SmoteNan).seed(7);
        let out = smote_nan(&ds, &plan, &config, &StreamSource::new(7)).unwrap();
        assert_eq!(out.len(), 2);
        for (row, class) in out {
            assert_eq!(class, ClassLabel::Int(1));
            assert_eq!(row, vec![Some(9.0), None]);
        }
    }

    #[test]
    fn rose_shrinkage_zero_bootstraps_originals() {
        let ds = dataset(
            vec![
                vec![Some(1.0), None],
                vec![Some(2.0), Some(5.0)],
                vec![Some(3.0), Some(6.0)],
                vec![Some(-1.0), Some(0.0)],
                vec![Some(-2.0), Some(0.5)],
                vec![Some(-3.0), Some(1.0)],
                vec![Some(-4.0), Some(1.5)],
            ],
            vec![1, 1, 1, 0, 0, 0, 0],
        );
        let plan = auto_plan(&ds);
        let config = SynthesisConfig::new(Method::RoseNan)
            .shrinkage(0.0)
            .seed(21);
        let out = rose_nan(&ds, &plan, &config, &StreamSource::new(21)).unwrap();
        assert_eq!(out.len(), 1);
        let originals: Vec<&[Option<f64>]> =
            [0usize, 1, 2].iter().map(|&r| ds.features.row(r)).collect();
        assert!(originals.contains(&out[0].0.as_slice()));
    }

    #[test]
    fn rose_interpolate_fills_from_class_donors() {
        let mut rows = vec![vec![None, Some(1.0)]];
        for i in 0..6 {
            rows.push(vec![Some(i as f64), Some(1.0 + i as f64)]);
        }
        rows.push(vec![Some(50.0), Some(50.0)]);
        rows.push(vec![Some(51.0), Some(51.0)]);
        rows.push(vec![Some(52.0), Some(52.0)]);
        rows.push(vec![Some(53.0), Some(53.0)]);
        rows.push(vec![Some(54.0), Some(54.0)]);
        rows.push(vec![Some(55.0), Some(55.0)]);
        rows.push(vec![Some(56.0), Some(56.0)]);
        rows.push(vec![Some(57.0), Some(57.0)]);
        let labels = vec![1, 1, 1, 1, 1, 1, 1, 0, 0, 0, 0, 0, 0, 0, 0];
        let ds = dataset(rows, labels);
        let plan = auto_plan(&ds);
        let config = SynthesisConfig::new(Method::RoseNan)
            .nan_strategy(NanStrategy::Interpolate)
            .seed(2);
        let out = rose_nan(&ds, &plan, &config, &StreamSource::new(2)).unwrap();
        assert_eq!(out.len(), 1);
        // every feature has same-class donors, so nothing stays missing
        assert!(out.iter().all(|(row, _)| row.iter().all(Option::is_some)));
    }

    #[test]
    fn pair_values_stay_between_parent_extremes() {
        let ds = two_cluster_dataset(30, 8);
        let plan = auto_plan(&ds);
        let config = SynthesisConfig::new(Method::SmoteNan).seed(13);
        let out = smote_nan(&ds, &plan, &config, &StreamSource::new(13)).unwrap();
        // minority cluster occupies [10.0, 10.7] x [11.0, 11.35]
        for (row, _) in out {
            let x = row[0].unwrap();
            let y = row[1].unwrap();
            assert!((10.0..=10.7).contains(&x));
            assert!((11.0..=11.35).contains(&y));
        }
    }

    #[test]
    fn sampler_rejects_mismatched_method() {
        let ds = two_cluster_dataset(10, 4);
        let plan = auto_plan(&ds);
        let config = SynthesisConfig::new(Method::RoseNan);
        assert!(matches!(
            smote_nan(&ds, &plan, &config, &StreamSource::new(0)),
            Err(Error::InvalidConfig(_))
        ));
    }

    #[test]
    fn config_validation_rejects_bad_fields() {
        let base = SynthesisConfig::new(Method::SmoteNan);
        assert!(base.clone().k(0).validate().is_err());
        assert!(base.clone().shrinkage(-1.0).validate().is_err());
        assert!(base.clone().shrinkage(f64::NAN).validate().is_err());
        assert!(base.clone().batch_size(0).validate().is_err());
        assert!(base.clone().jobs(0).validate().is_err());
        assert!(base.validate().is_ok());
    }

    #[test]
    fn input_dataset_is_never_mutated() {
        let ds = two_cluster_dataset(12, 5);
        let before = ds.clone();
        let plan = auto_plan(&ds);
        for (method, config) in [
            (Method::SmoteNan, SynthesisConfig::new(Method::SmoteNan)),
            (Method::AdasynNan, SynthesisConfig::new(Method::AdasynNan)),
            (Method::RoseNan, SynthesisConfig::new(Method::RoseNan)),
        ] {
            let _ = method;
            let _ = run_sequential(&ds, &plan, &config, &StreamSource::new(1)).unwrap();
            assert_eq!(ds, before);
        }
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn small_dataset() -> impl Strategy<Value = LabeledDataset> {
            (4usize..12, 2usize..6, 0u64..1000).prop_map(|(n0, n1, salt)| {
                let mut rows = Vec::new();
                let mut labels = Vec::new();
                let mut stream = StreamSource::new(salt).stream(7, 0, 0);
                for _ in 0..n0 {
                    let miss = stream.next_f64() < 0.2;
                    rows.push(vec![
                        Some(stream.next_f64() * 4.0),
                        if miss { None } else { Some(stream.next_f64()) },
                    ]);
                    labels.push(0);
                }
                for _ in 0..n1 {
                    let miss = stream.next_f64() < 0.2;
                    rows.push(vec![
                        Some(10.0 + stream.next_f64() * 4.0),
                        if miss {
                            None
                        } else {
                            Some(10.0 + stream.next_f64())
                        },
                    ]);
                    labels.push(1);
                }
                dataset(rows, labels)
            })
        }

        proptest! {
            #[test]
            fn exact_count_contract_smote_rose(ds in small_dataset(), seed in 0u64..500) {
                let plan = auto_plan(&ds);
                for method in [Method::SmoteNan, Method::RoseNan] {
                    let config = SynthesisConfig::new(method).seed(seed);
                    let out = run_sequential(&ds, &plan, &config, &StreamSource::new(seed)).unwrap();
                    prop_assert_eq!(out.len(), plan.total());
                }
            }

            #[test]
            fn adasyn_deviation_bounded_by_seed_count(ds in small_dataset(), seed in 0u64..500) {
                let plan = auto_plan(&ds);
                let config = SynthesisConfig::new(Method::AdasynNan).seed(seed);
                let out = run_sequential(&ds, &plan, &config, &StreamSource::new(seed)).unwrap();
                let partition = partition_by_class(&ds);
                let seeds = partition.rows(&ClassLabel::Int(1)).unwrap().len();
                let budget = plan.total() as isize;
                prop_assert!((out.len() as isize - budget).unsigned_abs() <= seeds);
            }

            #[test]
            fn preserve_pattern_never_invents_values(ds in small_dataset(), seed in 0u64..500) {
                let plan = auto_plan(&ds);
                let config = SynthesisConfig::new(Method::SmoteNan).seed(seed);
                let out = run_sequential(&ds, &plan, &config, &StreamSource::new(seed)).unwrap();
                // feature 1 is the only one ever missing; a synthetic row may
                // observe it only if some original row does
                let class1_has_observed = ds
                    .features
                    .rows_iter()
                    .zip(&ds.labels)
                    .filter(|(_, l)| **l == ClassLabel::Int(1))
                    .any(|(r, _)| r[1].is_some());
                if !class1_has_observed {
                    for (row, _) in &out {
                        prop_assert!(row[1].is_none());
                    }
                }
            }
        }
    }
}
