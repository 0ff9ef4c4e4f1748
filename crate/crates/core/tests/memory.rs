//! Checks that generation appends batches incrementally instead of
//! materializing all synthetic rows in a side buffer: peak live memory
//! beyond the final output must stay near one batch, not near the total
//! synthetic volume.

use std::alloc::{GlobalAlloc, Layout, System};
use std::sync::atomic::{AtomicUsize, Ordering::Relaxed};

use lacuna::{resample, ClassLabel, FeatureMatrix, LabeledDataset, Method, SynthesisConfig};

struct CountingAllocator;

static LIVE: AtomicUsize = AtomicUsize::new(0);
static PEAK: AtomicUsize = AtomicUsize::new(0);

unsafe impl GlobalAlloc for CountingAllocator {
    unsafe fn alloc(&self, layout: Layout) -> *mut u8 {
        let ptr = unsafe { System.alloc(layout) };
        if !ptr.is_null() {
            let live = LIVE.fetch_add(layout.size(), Relaxed) + layout.size();
            PEAK.fetch_max(live, Relaxed);
        }
        ptr
    }

    unsafe fn dealloc(&self, ptr: *mut u8, layout: Layout) {
        unsafe { System.dealloc(ptr, layout) };
        LIVE.fetch_sub(layout.size(), Relaxed);
    }
}

#[global_allocator]
static ALLOCATOR: CountingAllocator = CountingAllocator;

#[test]
fn transient_memory_stays_near_one_batch() {
    let d = 40;
    let batch_size = 32;
    let majority = 2_100usize;
    let minority = 100usize;

    let mut rows = Vec::with_capacity(majority + minority);
    let mut labels = Vec::with_capacity(majority + minority);
    for i in 0..majority {
        rows.push((0..d).map(|j| Some((i * 7 + j) as f64 * 0.01)).collect());
        labels.push(ClassLabel::Int(0));
    }
    for i in 0..minority {
        rows.push(
            (0..d)
                .map(|j| Some(100.0 + (i * 3 + j) as f64 * 0.01))
                .collect(),
        );
        labels.push(ClassLabel::Int(1));
    }
    let dataset = LabeledDataset::new(FeatureMatrix::from_rows(rows).unwrap(), labels).unwrap();

    // bootstrap sampler: no neighbour precomputation, so the measured
    // transients are the batching machinery itself
    let config = SynthesisConfig::new(Method::RoseNan)
        .seed(17)
        .batch_size(batch_size);

    let before = LIVE.load(Relaxed);
    PEAK.store(before, Relaxed);
    let result = resample(&dataset, &config).unwrap();
    let peak = PEAK.load(Relaxed);
    let after = LIVE.load(Relaxed);

    assert_eq!(result.synthetic_count(), majority - minority);

    let final_bytes = after - before;
    let transient_bytes = peak.saturating_sub(after);
    let cell = std::mem::size_of::<Option<f64>>();
    let row_bytes = d * cell + 64;
    let batch_bytes = batch_size * row_bytes;
    let synthetic_bytes = (majority - minority) * row_bytes;

    // a generous constant plus a handful of batches: far below the full
    // synthetic volume an all-at-once implementation would hold
    let bound = 96 * 1024 + 8 * batch_bytes;
    assert!(
        transient_bytes <= bound,
        "transient {transient_bytes} bytes exceeds bound {bound} (batch {batch_bytes}, final {final_bytes})"
    );
    assert!(
        bound < synthetic_bytes / 2,
        "test workload too small to discriminate: bound {bound} vs synthetic {synthetic_bytes}"
    );

    drop(result);
}
