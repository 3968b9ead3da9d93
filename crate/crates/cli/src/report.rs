use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::fs::File;
use std::io::{self, BufWriter, Read, Write};
use std::path::Path;

use heapselect::analysis::DecayRow;
use serde::{Deserialize, Serialize};

use crate::harness::{Algorithm, BenchError, BenchRecord};

pub const CSV_HEADER: [&str; 9] = [
    "n",
    "algorithm",
    "replicate",
    "seed",
    "k",
    "elapsed_ns",
    "per_element_ns",
    "comparisons",
    "max_depth",
];

fn csv_writer<W: Write>(w: W) -> csv::Writer<W> {
    csv::WriterBuilder::new()
        .has_headers(false)
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(w)
}

/// Writes the header and one row per record. Missing counters are left
/// blank.
pub fn write_csv_to<W: Write>(records: &[BenchRecord], w: W) -> Result<(), csv::Error> {
    let mut out = csv_writer(w);
    out.write_record(CSV_HEADER)?;
    for r in records {
        out.serialize(r)?;
    }
    out.flush()?;
    Ok(())
}

pub fn write_csv(records: &[BenchRecord], path: &Path) -> Result<(), BenchError> {
    let file = create(path)?;
    write_csv_to(records, BufWriter::new(file)).map_err(|source| BenchError::Csv {
        path: path.display().to_string(),
        source,
    })
}

pub fn read_csv<R: Read>(r: R) -> Result<Vec<BenchRecord>, csv::Error> {
    csv::Reader::from_reader(r).deserialize().collect()
}

fn create(path: &Path) -> Result<File, BenchError> {
    File::create(path).map_err(|source| BenchError::Io {
        path: path.display().to_string(),
        source,
    })
}

/// Mean, min and max over the replicates of one `(n, algorithm)` cell.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SummaryRow {
    pub n: usize,
    pub algorithm: Algorithm,
    pub replicates: usize,
    pub mean_elapsed_ns: f64,
    pub min_elapsed_ns: u64,
    pub max_elapsed_ns: u64,
    pub mean_per_element_ns: f64,
    pub min_per_element_ns: f64,
    pub max_per_element_ns: f64,
}

pub fn summarize(records: &[BenchRecord]) -> Result<Vec<SummaryRow>, BenchError> {
    if records.is_empty() {
        return Err(BenchError::NoRecords);
    }
    let mut cells: BTreeMap<(usize, Algorithm), Vec<&BenchRecord>> = BTreeMap::new();
    for r in records {
        cells.entry((r.n, r.algorithm)).or_default().push(r);
    }
    Ok(cells
        .into_iter()
        .map(|((n, algorithm), rs)| {
            let count = rs.len() as f64;
            let per_element = rs.iter().map(|r| r.per_element_ns);
            SummaryRow {
                n,
                algorithm,
                replicates: rs.len(),
                mean_elapsed_ns: rs.iter().map(|r| r.elapsed_ns as f64).sum::<f64>() / count,
                min_elapsed_ns: rs.iter().map(|r| r.elapsed_ns).min().unwrap_or(0),
                max_elapsed_ns: rs.iter().map(|r| r.elapsed_ns).max().unwrap_or(0),
                mean_per_element_ns: per_element.clone().sum::<f64>() / count,
                min_per_element_ns: per_element.clone().fold(f64::INFINITY, f64::min),
                max_per_element_ns: per_element.fold(f64::NEG_INFINITY, f64::max),
            }
        })
        .collect())
}

pub fn write_summary_csv(rows: &[SummaryRow], path: &Path) -> Result<(), BenchError> {
    let wrap = |source| BenchError::Csv {
        path: path.display().to_string(),
        source,
    };
    let mut out = csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(BufWriter::new(create(path)?));
    for row in rows {
        out.serialize(row).map_err(wrap)?;
    }
    out.flush().map_err(|e| wrap(e.into()))
}

/// Aligned text table of mean runtimes in seconds, plus per-element
/// nanoseconds.
pub fn render_summary(rows: &[SummaryRow]) -> String {
    let mut out = String::new();
    let _ = writeln!(
        out,
        "{:>12} {:>12} {:>12} {:>12} {:>12} {:>10} {:>10} {:>10}",
        "n", "algorithm", "mean_s", "min_s", "max_s", "mean_ns/el", "min_ns/el", "max_ns/el"
    );
    for r in rows {
        let _ = writeln!(
            out,
            "{:>12} {:>12} {:>12.3} {:>12.3} {:>12.3} {:>10.3} {:>10.3} {:>10.3}",
            r.n,
            r.algorithm.name(),
            r.mean_elapsed_ns / 1e9,
            r.min_elapsed_ns as f64 / 1e9,
            r.max_elapsed_ns as f64 / 1e9,
            r.mean_per_element_ns,
            r.min_per_element_ns,
            r.max_per_element_ns,
        );
    }
    out
}

/// Fixed-width decay table, six decimals.
pub fn render_decay_table(rows: &[DecayRow]) -> String {
    let mut out = String::new();
    let _ = writeln!(
        out,
        "{:>7} {:>10} {:>18} {:>20}",
        "d-ell", "c_perfect", "c_imperfect_basic", "c_imperfect_revised"
    );
    for r in rows {
        let _ = writeln!(
            out,
            "{:>7} {:>10.6} {:>18.6} {:>20.6}",
            r.d_minus_ell, r.c_perfect, r.c_imperfect_basic, r.c_imperfect_revised
        );
    }
    out
}

pub fn write_decay_table_csv<W: Write>(rows: &[DecayRow], w: W) -> io::Result<()> {
    let mut out = csv_writer(w);
    out.write_record([
        "d_minus_ell",
        "c_perfect",
        "c_imperfect_basic",
        "c_imperfect_revised",
    ])?;
    for r in rows {
        out.write_record([
            r.d_minus_ell.to_string(),
            r.c_perfect.to_string(),
            r.c_imperfect_basic.to_string(),
            r.c_imperfect_revised.to_string(),
        ])?;
    }
    out.flush()
}
