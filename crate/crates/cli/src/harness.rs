use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use heapselect::select::{median_of_medians_select_by, quickselect_by, sort_select_by};
use heapselect::{select, summarized_select, SelectConfig};
use rand::{Rng, SeedableRng};
use rand_xoshiro::Xoshiro256PlusPlus;
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum BenchError {
    #[error("invalid benchmark configuration: {0}")]
    InvalidConfig(String),

    #[error(
        "{algorithm} selected {got} but {reference} selected {expected} \
         (n = {n}, replicate {replicate}, seed {seed})"
    )]
    Mismatch {
        n: usize,
        replicate: u32,
        seed: u64,
        algorithm: Algorithm,
        got: u64,
        reference: Algorithm,
        expected: u64,
    },

    #[error(transparent)]
    Select(#[from] heapselect::Error),

    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },

    #[error("{path}: {source}")]
    Csv {
        path: String,
        #[source]
        source: csv::Error,
    },

    #[error("no records to summarize")]
    NoRecords,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Algorithm {
    Sort,
    Quickselect,
    Mom,
    MohBasic,
    MohRevised,
}

impl Algorithm {
    pub const ALL: [Algorithm; 5] = [
        Algorithm::Sort,
        Algorithm::Quickselect,
        Algorithm::Mom,
        Algorithm::MohBasic,
        Algorithm::MohRevised,
    ];

    /// The four algorithms of the reference protocol; the revised median of
    /// heaps is opt-in.
    pub const DEFAULT: [Algorithm; 4] = [
        Algorithm::Sort,
        Algorithm::Quickselect,
        Algorithm::Mom,
        Algorithm::MohBasic,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Algorithm::Sort => "sort",
            Algorithm::Quickselect => "quickselect",
            Algorithm::Mom => "mom",
            Algorithm::MohBasic => "moh_basic",
            Algorithm::MohRevised => "moh_revised",
        }
    }

    /// Parses a comma separated list of `sort`, `quickselect`, `mom`, `moh`,
    /// `moh-revised` or `all`. Duplicates are dropped; order is canonical.
    pub fn parse_list(list: &str) -> Result<Vec<Algorithm>, BenchError> {
        let mut out = Vec::new();
        for item in list.split(',').map(str::trim).filter(|s| !s.is_empty()) {
            match item {
                "all" => out.extend(Algorithm::ALL),
                other => out.push(other.parse()?),
            }
        }
        out.sort();
        out.dedup();
        if out.is_empty() {
            return Err(BenchError::InvalidConfig("no algorithms selected".into()));
        }
        Ok(out)
    }

    fn config(self) -> Option<SelectConfig> {
        match self {
            Algorithm::MohBasic => Some(SelectConfig::basic()),
            Algorithm::MohRevised => Some(SelectConfig::revised()),
            _ => None,
        }
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Algorithm {
    type Err = BenchError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Ok(match s {
            "sort" => Algorithm::Sort,
            "quickselect" => Algorithm::Quickselect,
            "mom" => Algorithm::Mom,
            "moh" | "moh_basic" => Algorithm::MohBasic,
            "moh-revised" | "moh_revised" => Algorithm::MohRevised,
            other => {
                return Err(BenchError::InvalidConfig(format!(
                    "unknown algorithm {other:?} (expected sort, quickselect, mom, moh, moh-revised or all)"
                )))
            }
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum KRule {
    /// `k = n / 2`.
    Median,
    Fixed(usize),
}

impl KRule {
    pub fn rank(self, n: usize) -> Result<usize, BenchError> {
        match self {
            KRule::Median => Ok(n / 2),
            KRule::Fixed(k) if k < n => Ok(k),
            KRule::Fixed(k) => Err(BenchError::InvalidConfig(format!(
                "rank {k} is out of range for n = {n}"
            ))),
        }
    }
}

impl FromStr for KRule {
    type Err = BenchError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        if s == "median" {
            return Ok(KRule::Median);
        }
        s.parse().map(KRule::Fixed).map_err(|_| {
            BenchError::InvalidConfig(format!("--k expects an integer or `median`, got {s:?}"))
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BenchConfig {
    pub algorithms: Vec<Algorithm>,
    /// Smallest `p` in `n = 2^p`.
    pub n_min_pow: u32,
    pub n_max_pow: u32,
    pub replicates: u32,
    pub base_seed: u64,
    pub k_rule: KRule,
    /// Count comparisons and recursion depth. Slows down the timed region.
    pub trace: bool,
}

impl Default for BenchConfig {
    fn default() -> Self {
        Self {
            algorithms: Algorithm::DEFAULT.to_vec(),
            n_min_pow: 19,
            n_max_pow: 24,
            replicates: 5,
            base_seed: 0,
            k_rule: KRule::Median,
            trace: false,
        }
    }
}

impl BenchConfig {
    pub fn validate(&self) -> Result<(), BenchError> {
        let invalid = |msg: String| Err(BenchError::InvalidConfig(msg));
        if !(10..=32).contains(&self.n_min_pow)
            || !(10..=32).contains(&self.n_max_pow)
            || self.n_min_pow > self.n_max_pow
        {
            return invalid(format!(
                "need 10 <= n_min_pow <= n_max_pow <= 32, got {}..{}",
                self.n_min_pow, self.n_max_pow
            ));
        }
        if self.replicates == 0 {
            return invalid("replicates must be at least 1".into());
        }
        if self.algorithms.is_empty() {
            return invalid("no algorithms selected".into());
        }
        for p in self.n_min_pow..=self.n_max_pow {
            self.k_rule.rank(1usize << p)?;
        }
        Ok(())
    }

    pub fn sizes(&self) -> impl Iterator<Item = usize> {
        (self.n_min_pow..=self.n_max_pow).map(|p| 1usize << p)
    }

    pub fn seed(&self, replicate: u32) -> u64 {
        self.base_seed.wrapping_add(replicate as u64)
    }
}

/// One timed trial.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BenchRecord {
    pub n: usize,
    pub algorithm: Algorithm,
    pub replicate: u32,
    pub seed: u64,
    pub k: usize,
    /// Wall clock for allocating and filling the input plus the selection.
    pub elapsed_ns: u64,
    pub per_element_ns: f64,
    pub comparisons: Option<u64>,
    pub max_depth: Option<u32>,
}

/// A trial that could not run, typically because the input did not fit in
/// memory.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TrialFailure {
    pub n: usize,
    pub algorithm: Algorithm,
    pub replicate: u32,
    pub message: String,
}

#[derive(Debug, Clone, Default)]
pub struct BenchRun {
    /// Ordered by `(n, algorithm, replicate)`.
    pub records: Vec<BenchRecord>,
    pub failures: Vec<TrialFailure>,
}

/// `n` values drawn uniformly from `[0, 32n)` by xoshiro256++ seeded through
/// SplitMix64. The stream depends only on `(n, seed)`.
pub fn generate_input(n: usize, seed: u64) -> Vec<u64> {
    let mut v = Vec::with_capacity(n);
    fill_input(&mut v, n, seed);
    v
}

fn try_generate_input(n: usize, seed: u64) -> Result<Vec<u64>, std::collections::TryReserveError> {
    let mut v = Vec::new();
    v.try_reserve_exact(n)?;
    fill_input(&mut v, n, seed);
    Ok(v)
}

fn fill_input(v: &mut Vec<u64>, n: usize, seed: u64) {
    let mut rng = Xoshiro256PlusPlus::seed_from_u64(seed);
    let bound = 32 * n as u64;
    v.extend((0..n).map(|_| rng.random_range(0..bound)));
}

struct Outcome {
    value: u64,
    comparisons: Option<u64>,
    max_depth: Option<u32>,
}

fn select_with(
    algorithm: Algorithm,
    v: &mut [u64],
    k: usize,
    seed: u64,
    trace: bool,
) -> Result<Outcome, BenchError> {
    if let Some(config) = algorithm.config() {
        if trace {
            let (value, summary) = summarized_select(v, k, &config)?;
            return Ok(Outcome {
                value,
                comparisons: Some(summary.comparisons),
                max_depth: Some(summary.max_depth),
            });
        }
        return Ok(Outcome {
            value: select(v, k, &config)?,
            comparisons: None,
            max_depth: None,
        });
    }

    if !trace {
        return Ok(Outcome {
            value: baseline(algorithm, v, k, seed, &mut u64::cmp)?,
            comparisons: None,
            max_depth: None,
        });
    }
    let mut comparisons = 0u64;
    let value = baseline(algorithm, v, k, seed, &mut |a: &u64, b: &u64| {
        comparisons += 1;
        a.cmp(b)
    })?;
    Ok(Outcome {
        value,
        comparisons: Some(comparisons),
        max_depth: None,
    })
}

fn baseline<F>(
    algorithm: Algorithm,
    v: &mut [u64],
    k: usize,
    seed: u64,
    cmp: &mut F,
) -> Result<u64, BenchError>
where
    F: FnMut(&u64, &u64) -> std::cmp::Ordering,
{
    Ok(match algorithm {
        Algorithm::Sort => sort_select_by(v, k, cmp)?,
        Algorithm::Quickselect => {
            let mut rng = Xoshiro256PlusPlus::seed_from_u64(seed);
            quickselect_by(v, k, &mut rng, cmp)?
        }
        Algorithm::Mom => median_of_medians_select_by(v, k, cmp)?,
        Algorithm::MohBasic | Algorithm::MohRevised => {
            unreachable!("median of heaps is dispatched by select_with")
        }
    })
}

/// Runs every configured trial sequentially on the calling thread.
///
/// Trials whose input cannot be allocated are reported in
/// [`BenchRun::failures`]; algorithms disagreeing on a selected value abort
/// the run.
pub fn run_benchmark(config: &BenchConfig) -> Result<BenchRun, BenchError> {
    config.validate()?;
    let mut run = BenchRun::default();
    for n in config.sizes() {
        let k = config.k_rule.rank(n)?;
        for replicate in 0..config.replicates {
            let seed = config.seed(replicate);
            let mut reference: Option<(Algorithm, u64)> = None;
            for &algorithm in &config.algorithms {
                let start = Instant::now();
                let mut v = match try_generate_input(n, seed) {
                    Ok(v) => v,
                    Err(e) => {
                        run.failures.push(TrialFailure {
                            n,
                            algorithm,
                            replicate,
                            message: e.to_string(),
                        });
                        continue;
                    }
                };
                let outcome = select_with(algorithm, &mut v, k, seed, config.trace)?;
                let elapsed_ns = (start.elapsed().as_nanos() as u64).max(1);
                drop(v);

                match reference {
                    None => reference = Some((algorithm, outcome.value)),
                    Some((first, expected)) if expected != outcome.value => {
                        return Err(BenchError::Mismatch {
                            n,
                            replicate,
                            seed,
                            algorithm,
                            got: outcome.value,
                            reference: first,
                            expected,
                        })
                    }
                    Some(_) => {}
                }

                run.records.push(BenchRecord {
                    n,
                    algorithm,
                    replicate,
                    seed,
                    k,
                    elapsed_ns,
                    per_element_ns: elapsed_ns as f64 / n as f64,
                    comparisons: outcome.comparisons,
                    max_depth: outcome.max_depth,
                });
            }
        }
    }
    run.records.sort_by_key(|r| (r.n, r.algorithm, r.replicate));
    Ok(run)
}
