//! Feature-wise missingness handling for synthetic rows: how missing
//! cells in parent rows propagate, fill, or get re-masked.

use crate::error::{Error, Result};
use crate::tabular::{ClassLabel, MissingnessProfile};

/// How synthetic rows treat missing cells in their parents.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum NanStrategy {
    /// A feature is missing whenever any parent misses it.
    #[default]
    PreservePattern,
    /// A feature is missing only when no parent observes it.
    Interpolate,
    /// Re-mask features by the class's empirical missing rates, then
    /// fill the rest like `Interpolate`.
    RandomPattern,
}

/// Validated interpolation coefficient.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InterpolationDraw(f64);

impl InterpolationDraw {
    pub fn new(lambda: f64) -> Result<Self> {
        if (0.0..=1.0).contains(&lambda) {
            Ok(InterpolationDraw(lambda))
        } else {
            Err(Error::InvalidLambda(lambda))
        }
    }

    pub fn lambda(&self) -> f64 {
        self.0
    }
}

/// Convex combination of two observed values, clamped to the closed
/// interval between them so rounding can never push the result outside.
fn interpolate_cell(a: f64, b: f64, lambda: f64) -> f64 {
    (a + lambda * (b - a)).clamp(a.min(b), a.max(b))
}

fn class_rates<'a>(profile: &'a MissingnessProfile, cls: &ClassLabel) -> Result<&'a [f64]> {
    profile
        .rates(cls)
        .ok_or_else(|| Error::UnknownClassInProfile(cls.clone()))
}

/// Combines two parent rows into one synthetic row, feature by feature.
///
/// `bernoulli_draws` must hold one value per feature when the strategy
/// is `RandomPattern`; the mask fires on the strict comparison
/// `draw < rate`, so a rate of 0 never masks and a rate of 1 always
/// does (draws live in [0, 1)).
pub fn combine_pair(
    a: &[Option<f64>],
    b: &[Option<f64>],
    draw: InterpolationDraw,
    strategy: NanStrategy,
    profile: &MissingnessProfile,
    cls: &ClassLabel,
    bernoulli_draws: &[f64],
) -> Result<Vec<Option<f64>>> {
    debug_assert_eq!(a.len(), b.len());
    let rates = match strategy {
        NanStrategy::RandomPattern => Some(class_rates(profile, cls)?),
        _ => None,
    };
    let lambda = draw.lambda();
    let mut out = Vec::with_capacity(a.len());
    for (k, (&av, &bv)) in a.iter().zip(b).enumerate() {
        if let Some(rates) = rates {
            if bernoulli_draws[k] < rates[k] {
                out.push(None);
                continue;
            }
        }
        let cell = match strategy {
            NanStrategy::PreservePattern => match (av, bv) {
                (Some(x), Some(y)) => Some(interpolate_cell(x, y, lambda)),
                _ => None,
            },
            NanStrategy::Interpolate | NanStrategy::RandomPattern => match (av, bv) {
                (Some(x), Some(y)) => Some(interpolate_cell(x, y, lambda)),
                (Some(x), None) => Some(x),
                (None, Some(y)) => Some(y),
                (None, None) => None,
            },
        };
        out.push(cell);
    }
    Ok(out)
}

/// Perturbs a single seed row into a synthetic row.
///
/// `noise_offsets[k]` is the ready-made additive perturbation for
/// feature k. When the seed misses a feature and the strategy wants a
/// value there, `donor_lookup` is consulted; it may draw from the
/// caller's stream, and it is only ever invoked for features that
/// actually need a donor.
pub fn combine_single(
    seed: &[Option<f64>],
    noise_offsets: &[f64],
    strategy: NanStrategy,
    mut donor_lookup: impl FnMut(usize) -> Option<f64>,
    profile: &MissingnessProfile,
    cls: &ClassLabel,
    bernoulli_draws: &[f64],
) -> Result<Vec<Option<f64>>> {
    debug_assert_eq!(seed.len(), noise_offsets.len());
    let rates = match strategy {
        NanStrategy::RandomPattern => Some(class_rates(profile, cls)?),
        _ => None,
    };
    let mut out = Vec::with_capacity(seed.len());
    for (k, &cell) in seed.iter().enumerate() {
        if let Some(rates) = rates {
            if bernoulli_draws[k] < rates[k] {
                out.push(None);
                continue;
            }
        }
        let value = match (cell, strategy) {
            (Some(v), _) => Some(v + noise_offsets[k]),
            (None, NanStrategy::PreservePattern) => None,
            (None, _) => donor_lookup(k).map(|d| d + noise_offsets[k]),
        };
        out.push(value);
    }
    Ok(out)
}
