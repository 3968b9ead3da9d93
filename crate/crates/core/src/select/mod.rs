//! Median-of-heaps selection and the baseline algorithms it is measured
//! against.
//!
//! One median-of-heaps step heapifies the current range, recursively selects a
//! pivot from a middle level `ell` of the heap, then three-way partitions the
//! range around it. Heap order guarantees that the pivot's ancestors and
//! descendants fall on known sides, so each step discards a constant fraction
//! of the range.

mod baselines;
mod partition;

use std::cmp::Ordering;

pub use baselines::{
    median_of_medians_pivot, median_of_medians_select, median_of_medians_select_by, quickselect,
    quickselect_by, sort_select, sort_select_by,
};
pub use partition::{partition_three_way, partition_three_way_by, PartitionSplit};

use crate::error::{Error, Result};
use crate::heap::{heapify_by, imperfect_count, HeapGeometry};
use crate::trace::{NoTrace, Phase, TraceEvent, Tracer};
use baselines::{narrow, small_sort_select, Narrowed};

/// Below this size the baselines sort instead of recursing.
pub const SMALL_SORT_THRESHOLD: usize = 16;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Variant {
    /// Pivot rank balanced for a perfect heap.
    Basic,
    /// Pivot rank that also accounts for the nodes of the imperfect last
    /// level, falling back to [`Variant::Basic`] when that level is sparse.
    Revised,
}

impl Variant {
    pub fn default_base_case_threshold(self) -> usize {
        match self {
            Variant::Basic => 16,
            Variant::Revised => 32,
        }
    }

    /// 0-based index within level `geom.ell` at which the pivot is selected.
    pub fn target_index(self, geom: &HeapGeometry) -> usize {
        match self {
            Variant::Basic => compute_k_prime_basic(geom.d, geom.ell),
            Variant::Revised => compute_k_prime_revised(geom.n, geom.d, geom.ell).0,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SelectConfig {
    pub variant: Variant,
    /// Pivot level is `d - ell_offset`.
    pub ell_offset: u32,
    /// Ranges shorter than this are sorted directly.
    pub base_case_threshold: usize,
}

impl SelectConfig {
    pub fn basic() -> Self {
        Self::new(Variant::Basic)
    }

    pub fn revised() -> Self {
        Self::new(Variant::Revised)
    }

    pub fn new(variant: Variant) -> Self {
        Self {
            variant,
            ell_offset: 1,
            base_case_threshold: variant.default_base_case_threshold(),
        }
    }

    /// Sets the level offset, raising the base case threshold if the new
    /// offset needs a larger one.
    pub fn with_ell_offset(mut self, ell_offset: u32) -> Self {
        self.ell_offset = ell_offset;
        if let Some(min) = Self::min_threshold(ell_offset) {
            self.base_case_threshold = self.base_case_threshold.max(min);
        }
        self
    }

    pub fn with_base_case_threshold(mut self, threshold: usize) -> Self {
        self.base_case_threshold = threshold;
        self
    }

    /// `2^(ell_offset + 2)`: the smallest range in which level
    /// `d - ell_offset` exists and is not the root.
    fn min_threshold(ell_offset: u32) -> Option<usize> {
        1usize.checked_shl(ell_offset.checked_add(2)?)
    }

    pub fn validate(&self) -> Result<()> {
        if self.ell_offset == 0 {
            return Err(Error::InvalidConfig("ell_offset must be at least 1".into()));
        }
        match Self::min_threshold(self.ell_offset) {
            Some(min) if self.base_case_threshold >= min => Ok(()),
            _ => Err(Error::InvalidConfig(format!(
                "base case threshold {} is below 2^(ell_offset + 2) for ell_offset {}",
                self.base_case_threshold, self.ell_offset
            ))),
        }
    }
}

impl Default for SelectConfig {
    fn default() -> Self {
        Self::basic()
    }
}

pub(crate) fn check_rank(len: usize, k: usize) -> Result<()> {
    if k < len {
        Ok(())
    } else {
        Err(Error::RankOutOfBounds { k, len })
    }
}

/// Pivot index within level `ell` balancing the elements provably below and
/// provably at-or-above the pivot in a perfect heap of depth `d`:
/// `floor((f - 1) * 2^ell / (f + 1))` with `f = 2^(d - ell + 1)`.
pub fn compute_k_prime_basic(d: u32, ell: u32) -> usize {
    debug_assert!(ell <= d);
    let len = 1u128 << ell;
    let fold = 1u128 << (d - ell + 1);
    let k = (fold - 1) * len / (fold + 1);
    k.min(len - 1) as usize
}

/// Pivot index for the revised variant, plus whether it fell back to
/// [`compute_k_prime_basic`].
///
/// Counts the `t` nodes of the imperfect last level toward the `>= pivot`
/// side: `floor((n - 2^ell) / 2^(d - ell + 2))`. When fewer than
/// `k * (2^(d - ell + 1) - 1)` such nodes exist the estimate is unsound and
/// the basic index is used instead.
pub fn compute_k_prime_revised(n: usize, d: u32, ell: u32) -> (usize, bool) {
    debug_assert!(ell <= d);
    let len = 1u128 << ell;
    let t = imperfect_count(n, d) as i128;
    let k = (n as u128 - len) >> (d - ell + 2);
    let subtree = (1i128 << (d - ell + 1)) - 1;
    if t - k as i128 * subtree < 0 {
        (compute_k_prime_basic(d, ell), true)
    } else {
        (k.min(len - 1) as usize, false)
    }
}

/// Returns the `k`-th smallest element (0-based) of `v` using median of
/// heaps. `v` is left permuted.
///
/// ```
/// use heapselect::{select, SelectConfig};
///
/// let mut v: Vec<u32> = (0..100).rev().collect();
/// assert_eq!(select(&mut v, 10, &SelectConfig::basic()), Ok(10));
/// ```
pub fn select<T: Ord + Clone>(v: &mut [T], k: usize, config: &SelectConfig) -> Result<T> {
    select_by(v, k, config, &mut T::cmp)
}

pub fn select_by<T, F>(v: &mut [T], k: usize, config: &SelectConfig, cmp: &mut F) -> Result<T>
where
    T: Clone,
    F: FnMut(&T, &T) -> Ordering,
{
    check_rank(v.len(), k)?;
    config.validate()?;
    Ok(median_of_heaps(v, k, config, cmp, &mut NoTrace, 1))
}

pub(crate) fn median_of_heaps<T, F, R>(
    v: &mut [T],
    k: usize,
    config: &SelectConfig,
    cmp: &mut F,
    tracer: &mut R,
    depth: u32,
) -> T
where
    T: Clone,
    F: FnMut(&T, &T) -> Ordering,
    R: Tracer,
{
    let chain = tracer.open_chain();
    let mut v = v;
    let mut k = k;
    let mut depth = depth;
    loop {
        let n = v.len();
        let event = |phase| TraceEvent {
            phase,
            subproblem_size: n,
            rank: k,
            level: None,
            target_index: None,
            split: None,
            depth,
            chain,
        };

        if n < config.base_case_threshold {
            tracer.record(|| event(Phase::BaseCase));
            return small_sort_select(v, k, cmp);
        }

        heapify_by(v, cmp);
        tracer.record(|| event(Phase::Heapify));

        let geom = HeapGeometry::for_step(n, config.ell_offset)
            .expect("base case threshold guarantees the pivot level exists");
        let j = config.variant.target_index(&geom);
        let tau = median_of_heaps(
            &mut v[geom.level_range()],
            j,
            config,
            cmp,
            tracer,
            depth + 1,
        );
        tracer.record(|| TraceEvent {
            level: Some(geom.ell),
            target_index: Some(j),
            ..event(Phase::LevelSelect)
        });

        let split = partition_three_way_by(v, &tau, cmp);
        tracer.record(|| TraceEvent {
            split: Some(split),
            ..event(Phase::Partition)
        });

        match narrow(std::mem::take(&mut v), k, split) {
            Narrowed::Found => return tau,
            Narrowed::Recurse(rest, k_rest) => {
                v = rest;
                k = k_rest;
                depth += 1;
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn k_prime_basic_values() {
        // d - ell = 1: 3 * len / 5
        assert_eq!(compute_k_prime_basic(3, 2), 2);
        assert_eq!(compute_k_prime_basic(2, 1), 1);
        // d - ell = 2: 7 * len / 9
        assert_eq!(compute_k_prime_basic(11, 9), 398);
        // never past the end of the level
        assert_eq!(compute_k_prime_basic(0, 0), 0);
        assert_eq!(compute_k_prime_basic(5, 5), 10);
    }

    #[test]
    fn k_prime_revised_values() {
        assert_eq!(compute_k_prime_revised(20, 3, 2), (2, true));
        assert_eq!(compute_k_prime_revised(31, 4, 3), (4, true));
        assert_eq!(compute_k_prime_revised(47, 4, 3), (4, false));
    }

    #[test]
    fn k_prime_always_inside_level() {
        for n in 16..5000usize {
            let g = HeapGeometry::for_step(n, 1).unwrap();
            assert!(compute_k_prime_basic(g.d, g.ell) < g.level_len);
            assert!(compute_k_prime_revised(n, g.d, g.ell).0 < g.level_len);
        }
    }

    #[test]
    fn small_selects() {
        let cfg = SelectConfig::basic();
        assert_eq!(select(&mut [42], 0, &cfg), Ok(42));
        assert_eq!(select(&mut [3, 1, 2], 1, &cfg), Ok(2));
        assert_eq!(
            select(&mut [3, 1, 2], 3, &cfg),
            Err(Error::RankOutOfBounds { k: 3, len: 3 })
        );
        assert!(select::<u8>(&mut [], 0, &cfg).is_err());
    }

    #[test]
    fn config_validation() {
        assert!(SelectConfig::basic().validate().is_ok());
        assert!(SelectConfig::revised().validate().is_ok());
        assert!(SelectConfig::basic().with_ell_offset(2).validate().is_ok());
        assert_eq!(
            SelectConfig::basic().with_ell_offset(3).base_case_threshold,
            32
        );
        assert!(SelectConfig::basic()
            .with_base_case_threshold(7)
            .validate()
            .is_err());
        assert!(SelectConfig::basic()
            .with_base_case_threshold(8)
            .validate()
            .is_ok());
        let zero = SelectConfig {
            ell_offset: 0,
            ..SelectConfig::basic()
        };
        assert!(zero.validate().is_err());
        let huge = SelectConfig {
            ell_offset: 200,
            ..SelectConfig::basic()
        };
        assert!(huge.validate().is_err());
    }

    #[test]
    fn all_equal_terminates() {
        for cfg in [SelectConfig::basic(), SelectConfig::revised()] {
            let mut v = vec![5u8; 100_000];
            assert_eq!(select(&mut v, 31_337, &cfg), Ok(5));
        }
    }
}
