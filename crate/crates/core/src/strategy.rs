//! Resolution of user-facing sampling strategies into exact per-class
//! synthetic-sample quotas.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::tabular::ClassLabel;

/// How many synthetic samples each class should receive.
#[derive(Debug, Clone, PartialEq)]
pub enum SamplingSpec {
    /// Raise every non-majority class to the majority count.
    Auto,
    /// Raise only the smallest class(es) to the majority count.
    Minority,
    /// Same as `Auto`; kept as a distinct spelling for CLI parity.
    NotMajority,
    /// Binary only: minority target total = round(ratio x majority count).
    Ratio(f64),
    /// Explicit target total per listed class; unlisted classes get none.
    Explicit(BTreeMap<ClassLabel, usize>),
}

/// Resolved per-class synthetic quotas.
#[derive(Debug, Clone, PartialEq)]
pub struct SamplingPlan {
    synth_counts: BTreeMap<ClassLabel, usize>,
    majority: ClassLabel,
}

impl SamplingPlan {
    /// Synthetic rows to generate for `class` (0 for unknown classes).
    pub fn synthetic_for(&self, class: &ClassLabel) -> usize {
        self.synth_counts.get(class).copied().unwrap_or(0)
    }

    /// All quotas, ascending by class label, zeros included.
    pub fn counts(&self) -> &BTreeMap<ClassLabel, usize> {
        &self.synth_counts
    }

    pub fn majority(&self) -> &ClassLabel {
        &self.majority
    }

    /// Total synthetic budget across classes.
    pub fn total(&self) -> usize {
        self.synth_counts.values().sum()
    }
}

/// Class with the largest count; ties go to the smallest label.
pub fn majority_class(counts: &BTreeMap<ClassLabel, usize>) -> ClassLabel {
    let mut best: Option<(&ClassLabel, usize)> = None;
    for (class, &count) in counts {
        // ascending label iteration, so strict inequality keeps the
        // smallest label among tied maxima
        if best.is_none_or(|(_, c)| count > c) {
            best = Some((class, count));
        }
    }
    best.expect("majority_class requires a nonempty count map")
        .0
        .clone()
}

/// Turns a strategy into per-class quotas against observed class counts.
pub fn resolve(
    spec: &SamplingSpec,
    class_counts: &BTreeMap<ClassLabel, usize>,
) -> Result<SamplingPlan> {
    if class_counts.len() < 2 {
        return Err(Error::SingleClass);
    }
    let majority = majority_class(class_counts);
    let majority_count = class_counts[&majority];
    let mut synth: BTreeMap<ClassLabel, usize> =
        class_counts.keys().map(|c| (c.clone(), 0)).collect();

    match spec {
        SamplingSpec::Auto | SamplingSpec::NotMajority => {
            for (class, &count) in class_counts {
                if *class != majority {
                    synth.insert(class.clone(), majority_count - count);
                }
            }
        }
        SamplingSpec::Minority => {
            let min_count = *class_counts.values().min().expect("nonempty");
            for (class, &count) in class_counts {
                if *class != majority && count == min_count {
                    synth.insert(class.clone(), majority_count - count);
                }
            }
        }
        SamplingSpec::Ratio(alpha) => {
            if class_counts.len() != 2 {
                return Err(Error::RatioRequiresBinary(class_counts.len()));
            }
            if !(*alpha > 0.0 && *alpha <= 1.0) {
                return Err(Error::InvalidRatio(*alpha));
            }
            let (minority, minority_count) = class_counts
                .iter()
                .find(|(c, _)| **c != majority)
                .expect("binary dataset has one non-majority class");
            let target = (alpha * majority_count as f64).round() as usize;
            synth.insert(minority.clone(), target.saturating_sub(*minority_count));
        }
        SamplingSpec::Explicit(targets) => {
            for (class, &target) in targets {
                let Some(&current) = class_counts.get(class) else {
                    return Err(Error::UnknownClassInStrategy(class.clone()));
                };
                if target < current {
                    return Err(Error::UndersamplingNotSupported {
                        class: class.clone(),
                        current,
                        target,
                    });
                }
                synth.insert(class.clone(), target - current);
            }
        }
    }

    Ok(SamplingPlan {
        synth_counts: synth,
        majority,
    })
}
