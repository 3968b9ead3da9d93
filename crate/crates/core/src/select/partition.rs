use std::cmp::Ordering;

/// Band sizes produced by a three-way partition around a pivot.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct PartitionSplit {
    /// Elements strictly less than the pivot.
    pub lt: usize,
    /// Elements equal to the pivot.
    pub eq: usize,
    /// Elements strictly greater than the pivot.
    pub gt: usize,
}

impl PartitionSplit {
    pub fn len(&self) -> usize {
        self.lt + self.eq + self.gt
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Elements `>= pivot`.
    pub fn ge(&self) -> usize {
        self.eq + self.gt
    }

    /// Size of the side that still contains rank `k`, or 0 if `k` falls in
    /// the equal band.
    pub fn surviving_len(&self, k: usize) -> usize {
        if k < self.lt {
            self.lt
        } else if k < self.lt + self.eq {
            0
        } else {
            self.gt
        }
    }
}

/// Reorders `v` into `< tau`, `== tau`, `> tau` bands in a single pass.
pub fn partition_three_way<T: Ord>(v: &mut [T], tau: &T) -> PartitionSplit {
    partition_three_way_by(v, tau, &mut T::cmp)
}

/// [`partition_three_way`] with a caller-supplied ordering. Makes exactly one
/// comparison per element.
pub fn partition_three_way_by<T, F>(v: &mut [T], tau: &T, cmp: &mut F) -> PartitionSplit
where
    F: FnMut(&T, &T) -> Ordering,
{
    let n = v.len();
    let mut lt = 0;
    let mut i = 0;
    let mut gt = n;
    while i < gt {
        match cmp(&v[i], tau) {
            Ordering::Less => {
                v.swap(lt, i);
                lt += 1;
                i += 1;
            }
            Ordering::Equal => i += 1,
            Ordering::Greater => {
                gt -= 1;
                v.swap(i, gt);
            }
        }
    }
    PartitionSplit {
        lt,
        eq: gt - lt,
        gt: n - gt,
    }
}
