//! Binary min-heap construction and level geometry.
//!
//! The heap lives in a plain slice with the children of index `i` at
//! `2i + 1` and `2i + 2`. Level `ell` of the tree is the contiguous run
//! `[2^ell - 1, 2^(ell+1) - 1)`.

use std::cmp::Ordering;

use crate::error::{Error, Result};

/// Rearranges `v` into a min-heap in O(n) using bottom-up sift-down.
pub fn heapify<T: Ord>(v: &mut [T]) {
    heapify_by(v, &mut T::cmp);
}

/// [`heapify`] with a caller-supplied ordering.
pub fn heapify_by<T, F>(v: &mut [T], cmp: &mut F)
where
    F: FnMut(&T, &T) -> Ordering,
{
    let len = v.len();
    for node in (0..len / 2).rev() {
        sift_down(v, node, cmp);
    }
}

fn sift_down<T, F>(v: &mut [T], mut node: usize, cmp: &mut F)
where
    F: FnMut(&T, &T) -> Ordering,
{
    let len = v.len();
    loop {
        let mut child = 2 * node + 1;
        if child >= len {
            break;
        }
        if child + 1 < len && cmp(&v[child + 1], &v[child]) == Ordering::Less {
            child += 1;
        }
        if cmp(&v[child], &v[node]) != Ordering::Less {
            break;
        }
        v.swap(node, child);
        node = child;
    }
}

/// Returns `true` iff every parent is `<=` its children.
pub fn is_min_heap<T: Ord>(v: &[T]) -> bool {
    first_heap_violation(v).is_none()
}

/// Index of the first child that is smaller than its parent, if any.
pub fn first_heap_violation<T: Ord>(v: &[T]) -> Option<usize> {
    (1..v.len()).find(|&i| v[(i - 1) / 2] > v[i])
}

/// Deepest level `d` of a heap of `n` elements that is completely filled,
/// i.e. the largest `d` with `2^(d+1) - 1 <= n`.
pub fn deepest_perfect_depth(n: usize) -> Result<u32> {
    if n == 0 {
        return Err(Error::EmptyHeap);
    }
    Ok((n as u128 + 1).ilog2() - 1)
}

/// Number of nodes below the deepest perfect level `d`.
pub fn imperfect_count(n: usize, d: u32) -> usize {
    n - perfect_size(d)
}

/// Element count of a perfect tree with levels `0..=d`.
pub(crate) fn perfect_size(d: u32) -> usize {
    (1usize << (d + 1)) - 1
}

/// 0-based `(start, len)` of level `ell`.
pub fn level_bounds(ell: u32) -> (usize, usize) {
    let len = 1usize << ell;
    (len - 1, len)
}

/// Level geometry of one heap of `n` elements with a chosen level `ell`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct HeapGeometry {
    pub n: usize,
    /// Deepest perfect level (root is level 0).
    pub d: u32,
    /// Level the pivot is drawn from.
    pub ell: u32,
    /// Nodes in the final, imperfect level.
    pub t: usize,
    pub level_start: usize,
    pub level_len: usize,
}

impl HeapGeometry {
    /// Geometry for an explicit level. Any fully populated level `ell <= d`
    /// is accepted.
    pub fn with_level(n: usize, ell: u32) -> Result<Self> {
        let d = deepest_perfect_depth(n)?;
        if ell > d {
            return Err(Error::LevelOutOfRange { ell, d });
        }
        let (level_start, level_len) = level_bounds(ell);
        Ok(Self {
            n,
            d,
            ell,
            t: imperfect_count(n, d),
            level_start,
            level_len,
        })
    }

    /// Geometry for a selection step at `ell = d - ell_offset`. The level must
    /// sit strictly between the root and the deepest perfect level.
    pub fn for_step(n: usize, ell_offset: u32) -> Result<Self> {
        let d = deepest_perfect_depth(n)?;
        if ell_offset == 0 || d < ell_offset + 1 {
            return Err(Error::LevelOutOfRange {
                ell: d.saturating_sub(ell_offset),
                d,
            });
        }
        Self::with_level(n, d - ell_offset)
    }

    /// Index range of the chosen level within the heap.
    pub fn level_range(&self) -> std::ops::Range<usize> {
        self.level_start..self.level_start + self.level_len
    }

    /// Subtree size below (and including) one node of level `ell`, counting
    /// only perfect levels: `2^(d - ell + 1) - 1`.
    pub fn perfect_subtree_size(&self) -> usize {
        perfect_size(self.d - self.ell)
    }
}
