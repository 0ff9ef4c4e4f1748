//! Counter-keyed deterministic random substreams.
//!
//! Every batch of synthetic work owns a substream derived purely from
//! (seed, method, class, batch), so draw sequences never depend on
//! which worker runs a batch or in what order.

use statrs::distribution::{ContinuousCDF, Normal};

/// Identity of one batch's random substream.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct StreamKey {
    pub global_seed: u64,
    pub method_tag: u64,
    pub class_ordinal: u64,
    pub batch_index: u64,
}

const GOLDEN_GAMMA: u64 = 0x9e37_79b9_7f4a_7c15;

/// splitmix64 finalizer: a bijective avalanche mix on 64 bits.
fn mix(mut z: u64) -> u64 {
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// A splitmix64 generator seeded from a [`StreamKey`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Substream {
    state: u64,
}

/// Pure function from key to generator state.
pub fn derive_stream(key: StreamKey) -> Substream {
    let mut state = mix(key.global_seed.wrapping_add(GOLDEN_GAMMA));
    for field in [key.method_tag, key.class_ordinal, key.batch_index] {
        state = mix(state ^ mix(field.wrapping_add(GOLDEN_GAMMA)));
    }
    Substream { state }
}

/// Maps a unit-interval draw onto an index in `0..bound`.
pub fn unit_to_index(u: f64, bound: usize) -> usize {
    debug_assert!(bound > 0);
    ((u * bound as f64) as usize).min(bound - 1)
}

/// Factory handing out the substream for any (method, class, batch)
/// coordinate under one global seed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct StreamSource {
    global_seed: u64,
}

impl StreamSource {
    pub fn new(global_seed: u64) -> Self {
        StreamSource { global_seed }
    }

    pub fn stream(&self, method_tag: u64, class_ordinal: u64, batch_index: u64) -> Substream {
        derive_stream(StreamKey {
            global_seed: self.global_seed,
            method_tag,
            class_ordinal,
            batch_index,
        })
    }
}

impl Substream {
    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(GOLDEN_GAMMA);
        mix(self.state)
    }

    /// Uniform draw in the half-open interval [0, 1).
    pub fn next_f64(&mut self) -> f64 {
        ((self.next_u64() >> 11) as f64) / (1u64 << 53) as f64
    }

    /// Uniform draw in the open interval (0, 1), safe to feed into
    /// quantile functions that diverge at the endpoints.
    pub fn next_open01(&mut self) -> f64 {
        ((self.next_u64() >> 11) as f64 + 0.5) / (1u64 << 53) as f64
    }

    /// Standard normal deviate by inverse-CDF transform. One uniform is
    /// consumed per deviate, keeping stream consumption fixed-length.
    pub fn next_normal(&mut self) -> f64 {
        let normal = Normal::new(0.0, 1.0).expect("standard normal parameters are valid");
        normal.inverse_cdf(self.next_open01())
    }

    /// Uniform index in `0..bound`.
    pub fn next_index(&mut self, bound: usize) -> usize {
        unit_to_index(self.next_f64(), bound)
    }
}
