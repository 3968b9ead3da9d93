//! Closed-form worst-case decay constants.
//!
//! A median-of-heaps step recurses on `2^ell` elements to find the pivot and
//! on at most `(1 - 2k'/n) n` elements afterwards, so the algorithm is linear
//! whenever `c = (2^ell + n - 2k') / n < 1`. Everything here is a function of
//! the level offset `m = d - ell` alone and is evaluated in `f64`.

use crate::error::{Error, Result};

/// `2^(m + 1)`: how much larger a level-`ell` subtree's perfect part is than
/// the node at its root.
fn fold(m: u32) -> f64 {
    2f64.powi(m as i32 + 1)
}

/// Fraction `(f - 1) / (f + 1)` of the level that lies below the balanced
/// pivot.
fn balanced_fraction(m: u32) -> f64 {
    let f = fold(m);
    (f - 1.0) / (f + 1.0)
}

/// Worst-case decay on a perfect heap.
pub fn c_perfect(m: u32) -> f64 {
    1.0 + (1.0 - 2.0 * balanced_fraction(m)) / fold(m)
}

/// Worst-case decay of the basic variant on an imperfect heap, attained when
/// the heap holds twice as many elements as its perfect part.
pub fn c_imperfect_basic(m: u32) -> f64 {
    1.0 + (1.0 - 2.0 * balanced_fraction(m)) / (2.0 * fold(m))
}

/// Worst-case decay of the revised variant on an imperfect heap, attained at
/// the fallback boundary where the last level holds exactly
/// `k' (2^(m+1) - 1)` nodes.
pub fn c_imperfect_revised(m: u32) -> f64 {
    let f = fold(m);
    let rho = balanced_fraction(m);
    1.0 + (1.0 - 2.0 * rho) / (f + rho * (f - 1.0))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DecayRow {
    pub d_minus_ell: u32,
    pub c_perfect: f64,
    pub c_imperfect_basic: f64,
    pub c_imperfect_revised: f64,
}

impl DecayRow {
    pub fn new(m: u32) -> Self {
        Self {
            d_minus_ell: m,
            c_perfect: c_perfect(m),
            c_imperfect_basic: c_imperfect_basic(m),
            c_imperfect_revised: c_imperfect_revised(m),
        }
    }

    pub fn columns(&self) -> [f64; 3] {
        [
            self.c_perfect,
            self.c_imperfect_basic,
            self.c_imperfect_revised,
        ]
    }
}

/// Rows for `m = 0..=max_offset`.
pub fn decay_table(max_offset: u32) -> Vec<DecayRow> {
    (0..=max_offset).map(DecayRow::new).collect()
}

/// Level offset in `0..=max_offset` with the smallest worst-case decay.
///
/// Fails if the three columns disagree on the minimizer.
pub fn optimal_offset(max_offset: u32) -> Result<u32> {
    if max_offset < 2 {
        return Err(Error::InvalidArgument(format!(
            "max_offset must be at least 2, got {max_offset}"
        )));
    }
    let table = decay_table(max_offset);
    let argmin = |col: usize| {
        table
            .iter()
            .min_by(|a, b| a.columns()[col].total_cmp(&b.columns()[col]))
            .map(|row| row.d_minus_ell)
            .expect("table is non-empty")
    };
    let best = argmin(0);
    for col in 1..3 {
        if argmin(col) != best {
            return Err(Error::InvalidArgument(format!(
                "columns disagree on the optimal offset: {best} vs {}",
                argmin(col)
            )));
        }
    }
    Ok(best)
}

/// Real-valued pivot rank `k'` solving `2k' - 3 = (2^ell - k')(2^(d-ell+1) - 1)`.
pub fn balanced_k_prime_exact(d: u32, ell: u32) -> f64 {
    let level = 2f64.powi(ell as i32);
    (2f64.powi(d as i32 + 1) - level + 3.0) / (fold(d - ell) + 1.0)
}

/// Both sides of the balance equation at rank `k`: the elements provably
/// below the pivot and the elements provably at or above it.
pub fn balance_sides(d: u32, ell: u32, k: f64) -> (f64, f64) {
    let level = 2f64.powi(ell as i32);
    (2.0 * k - 3.0, (level - k) * (fold(d - ell) - 1.0))
}
