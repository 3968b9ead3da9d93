//! Shared inputs for the criterion benchmarks.

use heapselect_cli::generate_input;

/// Sizes benchmarked by default: small enough for criterion's repeated
/// sampling, large enough to leave the base cases.
pub const SIZES: [usize; 3] = [1 << 12, 1 << 16, 1 << 20];

/// Harness input of length `n` with a fixed seed.
pub fn input(n: usize) -> Vec<u64> {
    generate_input(n, 0x5e1ec7)
}
