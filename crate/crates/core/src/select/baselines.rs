//! Reference selection algorithms: full sort, random-pivot quickselect and an
//! in-place median of medians that recurses on strided views.

use std::cmp::Ordering;

use rand::Rng;

use super::partition::{partition_three_way_by, PartitionSplit};
use super::{check_rank, SMALL_SORT_THRESHOLD};
use crate::error::Result;

/// Sorts `v` in place and returns `v[k]`.
pub fn sort_select<T: Ord + Clone>(v: &mut [T], k: usize) -> Result<T> {
    sort_select_by(v, k, &mut T::cmp)
}

pub fn sort_select_by<T, F>(v: &mut [T], k: usize, cmp: &mut F) -> Result<T>
where
    T: Clone,
    F: FnMut(&T, &T) -> Ordering,
{
    check_rank(v.len(), k)?;
    Ok(sort_select_unchecked(v, k, cmp))
}

fn sort_select_unchecked<T, F>(v: &mut [T], k: usize, cmp: &mut F) -> T
where
    T: Clone,
    F: FnMut(&T, &T) -> Ordering,
{
    v.sort_unstable_by(|a, b| cmp(a, b));
    v[k].clone()
}

/// Base case of the recursive algorithms: sorts `v` and returns `v[k]`,
/// using at most `n log2 n + n` comparisons.
pub(crate) fn small_sort_select<T, F>(v: &mut [T], k: usize, cmp: &mut F) -> T
where
    T: Clone,
    F: FnMut(&T, &T) -> Ordering,
{
    if v.len() <= BINARY_INSERTION_MAX {
        binary_insertion_sort(v, cmp);
        v[k].clone()
    } else {
        sort_select_unchecked(v, k, cmp)
    }
}

const BINARY_INSERTION_MAX: usize = 64;

fn binary_insertion_sort<T, F>(v: &mut [T], cmp: &mut F)
where
    F: FnMut(&T, &T) -> Ordering,
{
    for i in 1..v.len() {
        let (mut lo, mut hi) = (0, i);
        while lo < hi {
            let mid = lo + (hi - lo) / 2;
            if cmp(&v[i], &v[mid]) == Ordering::Less {
                hi = mid;
            } else {
                lo = mid + 1;
            }
        }
        v[lo..=i].rotate_right(1);
    }
}

/// Hoare's quickselect with a uniformly random pivot drawn from `rng`.
///
/// Expected O(n); the quadratic worst case is kept.
pub fn quickselect<T, R>(v: &mut [T], k: usize, rng: &mut R) -> Result<T>
where
    T: Ord + Clone,
    R: Rng + ?Sized,
{
    quickselect_by(v, k, rng, &mut T::cmp)
}

pub fn quickselect_by<T, R, F>(v: &mut [T], mut k: usize, rng: &mut R, cmp: &mut F) -> Result<T>
where
    T: Clone,
    R: Rng + ?Sized,
    F: FnMut(&T, &T) -> Ordering,
{
    check_rank(v.len(), k)?;
    let mut v = v;
    loop {
        let n = v.len();
        if n < SMALL_SORT_THRESHOLD {
            return Ok(small_sort_select(v, k, cmp));
        }
        let tau = v[rng.random_range(0..n)].clone();
        let split = partition_three_way_by(v, &tau, cmp);
        match narrow(std::mem::take(&mut v), k, split) {
            Narrowed::Found => return Ok(tau),
            Narrowed::Recurse(rest, k_rest) => {
                v = rest;
                k = k_rest;
            }
        }
    }
}

pub(crate) enum Narrowed<'a, T> {
    Found,
    Recurse(&'a mut [T], usize),
}

/// Picks the band of a partitioned slice that holds rank `k`.
pub(crate) fn narrow<T>(v: &mut [T], k: usize, split: PartitionSplit) -> Narrowed<'_, T> {
    if k < split.lt {
        Narrowed::Recurse(&mut v[..split.lt], k)
    } else if k < split.lt + split.eq {
        Narrowed::Found
    } else {
        let skip = split.lt + split.eq;
        Narrowed::Recurse(&mut v[skip..], k - skip)
    }
}

/// Blum-Floyd-Pratt-Rivest-Tarjan selection, worst-case O(n), in place.
pub fn median_of_medians_select<T: Ord + Clone>(v: &mut [T], k: usize) -> Result<T> {
    median_of_medians_select_by(v, k, &mut T::cmp)
}

pub fn median_of_medians_select_by<T, F>(v: &mut [T], k: usize, cmp: &mut F) -> Result<T>
where
    T: Clone,
    F: FnMut(&T, &T) -> Ordering,
{
    check_rank(v.len(), k)?;
    Ok(mom_select(v, Strided::contiguous(v.len()), k, cmp))
}

/// Median of the group medians of `v` (groups of 5, trailing remainder
/// ignored), or `None` when `v` has fewer than 5 elements.
pub fn median_of_medians_pivot<T: Ord + Clone>(v: &mut [T]) -> Option<T> {
    let view = Strided::contiguous(v.len());
    (view.len >= 5).then(|| mom_pivot(v, view, &mut T::cmp))
}

/// A view of `len` elements at `offset, offset + stride, ...` of a base slice.
#[derive(Debug, Clone, Copy)]
struct Strided {
    offset: usize,
    stride: usize,
    len: usize,
}

impl Strided {
    fn contiguous(len: usize) -> Self {
        Self {
            offset: 0,
            stride: 1,
            len,
        }
    }

    #[inline]
    fn at(&self, i: usize) -> usize {
        self.offset + i * self.stride
    }

    fn sub(&self, start: usize, len: usize) -> Self {
        Self {
            offset: self.at(start),
            stride: self.stride,
            len,
        }
    }

    /// Every fifth element starting at position 2 of this view: the medians
    /// once each group of five has been sorted.
    fn group_medians(&self) -> Self {
        Self {
            offset: self.at(2),
            stride: self.stride * 5,
            len: self.len / 5,
        }
    }
}

fn mom_select<T, F>(v: &mut [T], mut view: Strided, mut k: usize, cmp: &mut F) -> T
where
    T: Clone,
    F: FnMut(&T, &T) -> Ordering,
{
    loop {
        if view.len < SMALL_SORT_THRESHOLD {
            insertion_sort_strided(v, view, cmp);
            return v[view.at(k)].clone();
        }
        let tau = mom_pivot(v, view, cmp);
        let split = partition_strided(v, view, &tau, cmp);
        if k < split.lt {
            view = view.sub(0, split.lt);
        } else if k < split.lt + split.eq {
            return tau;
        } else {
            let skip = split.lt + split.eq;
            view = view.sub(skip, split.gt);
            k -= skip;
        }
    }
}

fn mom_pivot<T, F>(v: &mut [T], view: Strided, cmp: &mut F) -> T
where
    T: Clone,
    F: FnMut(&T, &T) -> Ordering,
{
    let groups = view.len / 5;
    for g in 0..groups {
        insertion_sort_strided(v, view.sub(5 * g, 5), cmp);
    }
    let medians = view.group_medians();
    mom_select(v, medians, medians.len / 2, cmp)
}

fn insertion_sort_strided<T, F>(v: &mut [T], view: Strided, cmp: &mut F)
where
    F: FnMut(&T, &T) -> Ordering,
{
    for i in 1..view.len {
        let mut j = i;
        while j > 0 && cmp(&v[view.at(j)], &v[view.at(j - 1)]) == Ordering::Less {
            v.swap(view.at(j), view.at(j - 1));
            j -= 1;
        }
    }
}

fn partition_strided<T, F>(v: &mut [T], view: Strided, tau: &T, cmp: &mut F) -> PartitionSplit
where
    F: FnMut(&T, &T) -> Ordering,
{
    if view.stride == 1 {
        return partition_three_way_by(&mut v[view.offset..view.offset + view.len], tau, cmp);
    }
    let mut lt = 0;
    let mut i = 0;
    let mut gt = view.len;
    while i < gt {
        match cmp(&v[view.at(i)], tau) {
            Ordering::Less => {
                v.swap(view.at(lt), view.at(i));
                lt += 1;
                i += 1;
            }
            Ordering::Equal => i += 1,
            Ordering::Greater => {
                gt -= 1;
                v.swap(view.at(i), view.at(gt));
            }
        }
    }
    PartitionSplit {
        lt,
        eq: gt - lt,
        gt: view.len - gt,
    }
}
