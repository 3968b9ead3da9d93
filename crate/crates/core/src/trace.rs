//! Instrumented median-of-heaps runs.
//!
//! [`traced_select`] records one [`TraceEvent`] per phase of every recursive
//! step and counts comparisons by wrapping the element ordering. The checkers
//! here replay a trace against the rank guarantees heap order provides.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt::{Display, Write as _};

use crate::error::{Error, Result};
use crate::heap::{deepest_perfect_depth, first_heap_violation, HeapGeometry};
use crate::select::{check_rank, median_of_heaps, PartitionSplit, SelectConfig};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Phase {
    Heapify,
    LevelSelect,
    Partition,
    BaseCase,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TraceEvent {
    pub phase: Phase,
    pub subproblem_size: usize,
    /// Rank sought within the subproblem.
    pub rank: usize,
    pub level: Option<u32>,
    pub target_index: Option<usize>,
    pub split: Option<PartitionSplit>,
    /// Recursion depth; the top-level call is depth 1.
    pub depth: u32,
    /// Identifies one selection call and the partition steps that narrow it.
    /// The top-level call is chain 0; each pivot search opens a new chain.
    pub chain: u32,
}

pub(crate) trait Tracer {
    fn open_chain(&mut self) -> u32;
    fn record(&mut self, event: impl FnOnce() -> TraceEvent);
}

pub(crate) struct NoTrace;

impl Tracer for NoTrace {
    #[inline(always)]
    fn open_chain(&mut self) -> u32 {
        0
    }

    #[inline(always)]
    fn record(&mut self, _: impl FnOnce() -> TraceEvent) {}
}

/// Accumulates a [`WorkSummary`] as events arrive, optionally keeping the
/// events themselves.
#[derive(Default)]
struct Recorder {
    events: Option<Vec<TraceEvent>>,
    chains: u32,
    total: u64,
    max_depth: u32,
    bounds: Vec<RankBound>,
    pending: Option<TraceEvent>,
}

impl Recorder {
    fn keeping_events() -> Self {
        Self {
            events: Some(Vec::new()),
            ..Self::default()
        }
    }
}

impl Tracer for Recorder {
    fn open_chain(&mut self) -> u32 {
        self.chains += 1;
        self.chains - 1
    }

    fn record(&mut self, event: impl FnOnce() -> TraceEvent) {
        let e = event();
        self.max_depth = self.max_depth.max(e.depth);
        match e.phase {
            Phase::BaseCase | Phase::Heapify => self.total += e.subproblem_size as u64,
            Phase::LevelSelect => self.pending = Some(e),
            Phase::Partition => {
                if let Some(step) = self.pending.take().and_then(|sel| Step::pair(&sel, &e)) {
                    self.bounds.push(step.bound);
                }
            }
        }
        if let Some(events) = &mut self.events {
            events.push(e);
        }
    }
}

/// Required and observed pivot ranks for one median-of-heaps step.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RankBound {
    pub required_lt: i64,
    pub observed_lt: usize,
    pub required_ge: i64,
    pub observed_ge: usize,
}

impl RankBound {
    /// Bounds for a pivot drawn at 0-based index `j` of level `ell` in a heap
    /// of `n` elements. The `j` level entries below the pivot pull in at
    /// least `j - 1` ancestors; the `2^ell - j - 1` above it each bring a
    /// perfect subtree of `2^(d - ell + 1) - 1` descendants.
    pub fn required(n: usize, ell: u32, j: usize) -> Result<(i64, i64)> {
        let geom = HeapGeometry::with_level(n, ell)?;
        let required_lt = 2 * j as i64 - 1;
        let above = geom.level_len as i64 - (j as i64 + 1);
        let required_ge = above * geom.perfect_subtree_size() as i64 + 1;
        Ok((required_lt, required_ge))
    }

    pub fn holds(&self) -> bool {
        self.observed_lt as i64 >= self.required_lt && self.observed_ge as i64 >= self.required_ge
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct WorkSummary {
    pub comparisons: u64,
    /// Sum of the sizes of every recursive call, pivot searches included.
    /// Each call either sorts or heapifies exactly once, so this is the sum
    /// over those events.
    pub total_subproblem_elements: u64,
    pub max_depth: u32,
    /// One entry per heapify-select-partition step, in execution order.
    pub per_step_rank_bounds: Vec<RankBound>,
}

#[derive(Debug, Clone)]
pub struct Traced<T> {
    pub value: T,
    pub summary: WorkSummary,
    pub events: Vec<TraceEvent>,
}

/// [`select`](crate::select()) with full tracing and comparison counting.
pub fn traced_select<T: Ord + Clone>(
    v: &mut [T],
    k: usize,
    config: &SelectConfig,
) -> Result<Traced<T>> {
    let (value, summary, recorder) = run_recorded(v, k, config, Recorder::keeping_events())?;
    Ok(Traced {
        value,
        summary,
        events: recorder.events.unwrap_or_default(),
    })
}

/// Like [`traced_select`] but keeps only the [`WorkSummary`], so memory stays
/// proportional to the number of steps rather than the number of events.
pub fn summarized_select<T: Ord + Clone>(
    v: &mut [T],
    k: usize,
    config: &SelectConfig,
) -> Result<(T, WorkSummary)> {
    let (value, summary, _) = run_recorded(v, k, config, Recorder::default())?;
    Ok((value, summary))
}

fn run_recorded<T: Ord + Clone>(
    v: &mut [T],
    k: usize,
    config: &SelectConfig,
    mut recorder: Recorder,
) -> Result<(T, WorkSummary, Recorder)> {
    check_rank(v.len(), k)?;
    config.validate()?;
    let mut comparisons = 0u64;
    let value = median_of_heaps(
        v,
        k,
        config,
        &mut |a: &T, b: &T| {
            comparisons += 1;
            a.cmp(b)
        },
        &mut recorder,
        1,
    );
    let summary = WorkSummary {
        comparisons,
        total_subproblem_elements: recorder.total,
        max_depth: recorder.max_depth,
        per_step_rank_bounds: std::mem::take(&mut recorder.bounds),
    };
    Ok((value, summary, recorder))
}

#[derive(Debug, Clone, Copy)]
struct Step {
    n: usize,
    rank: usize,
    ell: u32,
    split: PartitionSplit,
    bound: RankBound,
}

impl Step {
    fn pair(sel: &TraceEvent, part: &TraceEvent) -> Option<Step> {
        if sel.phase != Phase::LevelSelect || part.phase != Phase::Partition {
            return None;
        }
        let ell = sel.level?;
        let j = sel.target_index?;
        let split = part.split?;
        let (required_lt, required_ge) = RankBound::required(sel.subproblem_size, ell, j).ok()?;
        Some(Step {
            n: sel.subproblem_size,
            rank: sel.rank,
            ell,
            split,
            bound: RankBound {
                required_lt,
                observed_lt: split.lt,
                required_ge,
                observed_ge: split.ge(),
            },
        })
    }
}

/// Pairs each level selection with the partition that immediately follows it.
fn steps(events: &[TraceEvent]) -> impl Iterator<Item = Step> + '_ {
    events.windows(2).filter_map(|w| Step::pair(&w[0], &w[1]))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RankBoundReport {
    /// The input had repeated values, for which the bounds are not claimed.
    Skipped,
    Checked(Vec<RankBound>),
}

impl RankBoundReport {
    pub fn violations(&self) -> usize {
        match self {
            RankBoundReport::Skipped => 0,
            RankBoundReport::Checked(steps) => steps.iter().filter(|b| !b.holds()).count(),
        }
    }

    pub fn steps_checked(&self) -> usize {
        match self {
            RankBoundReport::Skipped => 0,
            RankBoundReport::Checked(steps) => steps.len(),
        }
    }
}

/// Checks every step of `events` against the pivot rank guarantees. `input`
/// is a snapshot of the sequence before selection; the check only applies
/// to distinct values.
pub fn check_rank_bounds<T: Ord + Clone>(events: &[TraceEvent], input: &[T]) -> RankBoundReport {
    let mut sorted = input.to_vec();
    sorted.sort_unstable();
    if sorted.windows(2).any(|w| w[0] == w[1]) {
        return RankBoundReport::Skipped;
    }
    RankBoundReport::Checked(steps(events).map(|s| s.bound).collect())
}

/// Largest per-step decay `(2^ell + surviving) / n` over a trace, where
/// `surviving` is the partition side still holding the sought rank. A run
/// that never leaves the base case yields 0.
pub fn empirical_c(events: &[TraceEvent]) -> f64 {
    steps(events)
        .map(|s| ((1usize << s.ell) + s.split.surviving_len(s.rank)) as f64 / s.n as f64)
        .fold(0.0, f64::max)
}

/// For every chain, the elements eliminated by partitioning plus the final
/// base case must add up to the size the chain started with.
pub fn trace_is_complete(events: &[TraceEvent]) -> bool {
    // chain -> (initial size, accounted)
    let mut chains: BTreeMap<u32, (usize, usize)> = BTreeMap::new();
    for e in events {
        let entry = chains.entry(e.chain).or_insert((e.subproblem_size, 0));
        match e.phase {
            Phase::BaseCase => entry.1 += e.subproblem_size,
            Phase::Partition => {
                if let Some(split) = e.split {
                    entry.1 += e.subproblem_size - split.surviving_len(e.rank);
                }
            }
            Phase::Heapify | Phase::LevelSelect => {}
        }
    }
    !chains.is_empty()
        && chains
            .values()
            .all(|(initial, accounted)| initial == accounted)
}

/// Renders a heap as a directed graph of parent-to-child inequalities.
///
/// ```text
/// <n> <d> <ell> <tau>
/// node <index> <value> <level> <lt|eq|gt>
/// edge <parent> <child>
/// ```
///
/// Nodes and edges are listed by ascending index.
pub fn emit_inequality_graph<T: Ord + Display>(
    heap: &[T],
    geom: &HeapGeometry,
    tau: &T,
) -> Result<String> {
    if heap.len() != geom.n {
        return Err(Error::InvalidArgument(format!(
            "geometry is for {} elements but the heap has {}",
            geom.n,
            heap.len()
        )));
    }
    if let Some(index) = first_heap_violation(heap) {
        return Err(Error::NotAHeap { index });
    }
    let mut out = String::new();
    let _ = writeln!(out, "{} {} {} {}", geom.n, geom.d, geom.ell, tau);
    for (i, value) in heap.iter().enumerate() {
        let class = match value.cmp(tau) {
            Ordering::Less => "lt",
            Ordering::Equal => "eq",
            Ordering::Greater => "gt",
        };
        let level = (i as u128 + 1).ilog2();
        let _ = writeln!(out, "node {i} {value} {level} {class}");
    }
    for child in 1..heap.len() {
        let _ = writeln!(out, "edge {} {}", (child - 1) / 2, child);
    }
    Ok(out)
}

/// Geometry drawn in inequality graphs: the level just above the deepest
/// perfect one, or the root for heaps with fewer than two perfect levels.
pub fn graph_geometry(n: usize) -> Result<HeapGeometry> {
    let d = deepest_perfect_depth(n)?;
    HeapGeometry::with_level(n, d.saturating_sub(1))
}
