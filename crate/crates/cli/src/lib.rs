//! Benchmark harness for the selection algorithms in `heapselect`.
//!
//! Inputs are `n` uniform integers in `[0, 32n)`. Each replicate derives its
//! seed from the base seed, and every algorithm in a replicate times the
//! allocation and fill of its own copy of that input plus the selection.
//! Results are written as CSV, one row per trial.

pub mod harness;
pub mod report;

pub use harness::{
    generate_input, run_benchmark, Algorithm, BenchConfig, BenchError, BenchRecord, BenchRun,
    KRule, TrialFailure,
};
pub use report::{
    read_csv, render_decay_table, render_summary, summarize, write_csv, write_csv_to,
    write_decay_table_csv, write_summary_csv, SummaryRow,
};
