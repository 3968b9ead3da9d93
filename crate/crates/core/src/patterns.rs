//! Input shapes used to exercise the selection algorithms.

use rand::seq::SliceRandom;
use rand::Rng;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Pattern {
    /// A random permutation of `0..n`.
    Distinct,
    /// Uniform values from a range of about `n / 8`, so most values repeat.
    Duplicates,
    AllEqual,
    Sorted,
    Reverse,
    /// Ascending to the middle, then descending.
    OrganPipe,
    /// Repeated ascending runs of length about `sqrt(n)`.
    Sawtooth,
}

impl Pattern {
    pub const ALL: [Pattern; 7] = [
        Pattern::Distinct,
        Pattern::Duplicates,
        Pattern::AllEqual,
        Pattern::Sorted,
        Pattern::Reverse,
        Pattern::OrganPipe,
        Pattern::Sawtooth,
    ];

    /// Whether every generated value is unique (for `n` of any size).
    pub fn is_distinct(self) -> bool {
        matches!(self, Pattern::Distinct | Pattern::Sorted | Pattern::Reverse)
    }

    pub fn generate<R: Rng + ?Sized>(self, n: usize, rng: &mut R) -> Vec<u64> {
        let n64 = n as u64;
        match self {
            Pattern::Distinct => {
                let mut v: Vec<u64> = (0..n64).collect();
                v.shuffle(rng);
                v
            }
            Pattern::Duplicates => {
                let range = (n64 / 8).max(2);
                (0..n).map(|_| rng.random_range(0..range)).collect()
            }
            Pattern::AllEqual => vec![rng.random(); n],
            Pattern::Sorted => (0..n64).collect(),
            Pattern::Reverse => (0..n64).rev().collect(),
            Pattern::OrganPipe => {
                let half = n64.div_ceil(2);
                (0..n64)
                    .map(|i| if i < half { i } else { n64 - 1 - i })
                    .collect()
            }
            Pattern::Sawtooth => {
                let run = (n as f64).sqrt().ceil().max(1.0) as u64;
                (0..n64).map(|i| i % run).collect()
            }
        }
    }
}
