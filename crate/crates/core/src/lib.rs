//! Order statistics in place and in worst-case linear time, using binary
//! heap construction as the engine.
//!
//! The [`select`] entry point implements median of heaps: heapify, pick a
//! pivot by recursively selecting inside one middle level of the heap,
//! partition, repeat. Sort-based selection, random-pivot quickselect and
//! median of medians are provided as baselines, [`analysis`] evaluates the
//! worst-case decay constants in closed form, and [`trace`] instruments live
//! runs.

pub mod analysis;
pub mod error;
pub mod heap;
pub mod patterns;
pub mod select;
pub mod trace;

pub use error::{Error, Result};
pub use heap::{
    deepest_perfect_depth, heapify, heapify_by, imperfect_count, is_min_heap, level_bounds,
    HeapGeometry,
};
pub use select::{
    compute_k_prime_basic, compute_k_prime_revised, median_of_medians_select, partition_three_way,
    quickselect, select, select_by, sort_select, PartitionSplit, SelectConfig, Variant,
};
pub use trace::{summarized_select, traced_select, TraceEvent, WorkSummary};
