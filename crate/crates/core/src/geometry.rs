//! Distance geometry over partially observed rows: pairwise masked
//! distances and exhaustive k-nearest-neighbour search.

use crate::tabular::FeatureMatrix;

/// Outcome of comparing two partially observed rows.
///
/// Two rows with no feature observed in common have no meaningful
/// distance; they are incomparable rather than infinitely far apart.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum MaskedDistance {
    Incomparable,
    Finite { value: f64, shared: usize },
}

impl MaskedDistance {
    pub fn value(&self) -> Option<f64> {
        match self {
            MaskedDistance::Incomparable => None,
            MaskedDistance::Finite { value, .. } => Some(*value),
        }
    }
}

/// Indices of features observed in both rows.
pub fn shared_observed_dims(a: &[Option<f64>], b: &[Option<f64>]) -> Vec<usize> {
    a.iter()
        .zip(b)
        .enumerate()
        .filter(|(_, (x, y))| x.is_some() && y.is_some())
        .map(|(i, _)| i)
        .collect()
}

/// Euclidean distance restricted to mutually observed features.
///
/// The sum of squared differences is not rescaled by the number of
/// shared features, so rows sharing more observed structure are not
/// penalised for it.
pub fn masked_distance(a: &[Option<f64>], b: &[Option<f64>]) -> MaskedDistance {
    let mut sum = 0.0;
    let mut shared = 0usize;
    for (x, y) in a.iter().zip(b) {
        if let (Some(x), Some(y)) = (x, y) {
            let diff = x - y;
            sum += diff * diff;
            shared += 1;
        }
    }
    if shared == 0 {
        MaskedDistance::Incomparable
    } else {
        MaskedDistance::Finite {
            value: sum.sqrt(),
            shared,
        }
    }
}

/// One entry in a neighbour list.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Neighbor {
    pub row: usize,
    pub distance: f64,
}

pub type NeighborList = Vec<Neighbor>;

/// Exhaustive scan for the `k` nearest comparable candidates.
///
/// The query row itself is skipped, incomparable candidates are dropped
/// entirely, and ties on distance resolve toward the smaller row index,
/// so the result is a deterministic function of its inputs. Fewer than
/// `k` entries come back when the comparable pool is smaller than `k`.
pub fn k_nearest(
    matrix: &FeatureMatrix,
    query: usize,
    candidates: &[usize],
    k: usize,
) -> NeighborList {
    let query_row = matrix.row(query);
    let mut found: Vec<Neighbor> = Vec::with_capacity(candidates.len());
    for &c in candidates {
        if c == query {
            continue;
        }
        if let MaskedDistance::Finite { value, .. } = masked_distance(query_row, matrix.row(c)) {
            found.push(Neighbor {
                row: c,
                distance: value,
            });
        }
    }
    found.sort_unstable_by(|a, b| a.distance.total_cmp(&b.distance).then(a.row.cmp(&b.row)));
    found.truncate(k);
    found
}
