use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::Parser;
use heapselect::analysis::{decay_table, optimal_offset};
use heapselect::heap::heapify;
use heapselect::select::compute_k_prime_basic;
use heapselect::trace::{emit_inequality_graph, graph_geometry};
use heapselect_cli::{
    generate_input, render_decay_table, render_summary, run_benchmark, summarize, write_csv,
    write_csv_to, write_decay_table_csv, write_summary_csv, Algorithm, BenchConfig, KRule,
};

/// Benchmarks median-of-heaps selection against sort, quickselect and median
/// of medians on n = 2^p uniform random integers.
#[derive(Debug, Parser)]
#[command(name = "heapselect", version)]
struct Cli {
    /// Comma separated list of sort, quickselect, mom, moh, moh-revised, all.
    #[arg(long, default_value = "sort,quickselect,mom,moh")]
    algo: String,

    #[arg(long, default_value_t = 19)]
    n_min_pow: u32,

    #[arg(long, default_value_t = 24)]
    n_max_pow: u32,

    #[arg(long, default_value_t = 5)]
    replicates: u32,

    /// Replicate r uses seed + r.
    #[arg(long, default_value_t = 0)]
    seed: u64,

    /// Rank to select: an integer or `median` (n / 2).
    #[arg(long, default_value = "median")]
    k: String,

    /// Per-trial CSV; stdout when omitted.
    #[arg(long)]
    out: Option<PathBuf>,

    /// Per-(n, algorithm) mean/min/max CSV. The same table is printed to
    /// stderr as text.
    #[arg(long)]
    summary: Option<PathBuf>,

    /// Record comparison counts and recursion depth.
    #[arg(long)]
    trace: bool,

    /// Print the worst-case decay constant table and exit. With --out, also
    /// write it as CSV.
    #[arg(long)]
    table1: bool,

    /// Heapify n random values from the given seed and write the heap's
    /// inequality graph to PATH (`-` for stdout), then exit.
    #[arg(long, num_args = 3, value_names = ["N", "SEED", "PATH"])]
    graph: Option<Vec<String>>,
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}

fn run(cli: Cli) -> Result<()> {
    if cli.table1 {
        return table1(cli.out.as_deref());
    }
    if let Some(args) = &cli.graph {
        return graph(args);
    }

    let config = BenchConfig {
        algorithms: Algorithm::parse_list(&cli.algo)?,
        n_min_pow: cli.n_min_pow,
        n_max_pow: cli.n_max_pow,
        replicates: cli.replicates,
        base_seed: cli.seed,
        k_rule: cli.k.parse::<KRule>()?,
        trace: cli.trace,
    };
    let run = run_benchmark(&config)?;
    for f in &run.failures {
        eprintln!(
            "trial failed: n = {}, {} replicate {}: {}",
            f.n, f.algorithm, f.replicate, f.message
        );
    }

    match &cli.out {
        Some(path) => write_csv(&run.records, path)?,
        None => write_csv_to(&run.records, io::stdout().lock())?,
    }
    if let Some(path) = &cli.summary {
        let rows = summarize(&run.records)?;
        write_summary_csv(&rows, path)?;
        eprint!("{}", render_summary(&rows));
    }
    Ok(())
}

fn table1(csv_path: Option<&Path>) -> Result<()> {
    let rows = decay_table(5);
    let mut stdout = io::stdout().lock();
    stdout.write_all(render_decay_table(&rows).as_bytes())?;
    writeln!(stdout, "optimal d-ell: {}", optimal_offset(5)?)?;
    if let Some(path) = csv_path {
        let file = fs::File::create(path).with_context(|| path.display().to_string())?;
        write_decay_table_csv(&rows, file).with_context(|| path.display().to_string())?;
    }
    Ok(())
}

fn graph(args: &[String]) -> Result<()> {
    let [n, seed, path] = args else {
        bail!("--graph takes N SEED PATH");
    };
    let n: usize = n.parse().context("--graph N")?;
    let seed: u64 = seed.parse().context("--graph SEED")?;
    if n == 0 {
        bail!("--graph N must be at least 1");
    }

    let mut heap = generate_input(n, seed);
    heapify(&mut heap);
    let geom = graph_geometry(n)?;
    let j = compute_k_prime_basic(geom.d, geom.ell);
    let mut level = heap[geom.level_range()].to_vec();
    level.sort_unstable();
    let text = emit_inequality_graph(&heap, &geom, &level[j])?;

    if path == "-" {
        io::stdout().lock().write_all(text.as_bytes())?;
    } else {
        fs::write(path, text).with_context(|| path.clone())?;
    }
    Ok(())
}
