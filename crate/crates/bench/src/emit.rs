use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use crate::error::{BenchError, Result};
use crate::row::BenchmarkRow;
use crate::runner::MethodRun;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OutputFormat {
    Csv,
    Json,
}

/// Header row first, then one record per row, fields in declaration order.
pub fn write_csv<W: Write>(rows: &[BenchmarkRow], out: W) -> Result<()> {
    let mut w = csv::WriterBuilder::new().has_headers(false).from_writer(out);
    w.write_record(CSV_HEADER)?;
    for row in rows {
        w.serialize(row)?;
    }
    w.flush().map_err(|e| BenchError::Io {
        path: PathBuf::from("<output>"),
        source: e,
    })?;
    Ok(())
}

pub const CSV_HEADER: [&str; 13] = [
    "method",
    "problem",
    "n",
    "outer_iterations",
    "total_inner_iterations",
    "wall_time_mean_seconds",
    "wall_time_rel_std_percent",
    "true_residual_norm",
    "rhs_norm",
    "error_vs_oracle",
    "preconditioned_residual_norm",
    "converged",
    "stop_reason",
];

pub fn write_json<W: Write>(rows: &[BenchmarkRow], mut out: W) -> Result<()> {
    serde_json::to_writer_pretty(&mut out, rows)?;
    writeln!(out).map_err(|e| BenchError::Io {
        path: PathBuf::from("<output>"),
        source: e,
    })?;
    Ok(())
}

pub fn write_rows<W: Write>(rows: &[BenchmarkRow], format: OutputFormat, out: W) -> Result<()> {
    match format {
        OutputFormat::Csv => write_csv(rows, out),
        OutputFormat::Json => write_json(rows, out),
    }
}

pub fn history_path(dir: &Path, row: &BenchmarkRow) -> PathBuf {
    dir.join(format!("{}_n{}_{}.txt", row.problem, row.n, row.method))
}

pub fn inner_history_path(dir: &Path, row: &BenchmarkRow) -> PathBuf {
    dir.join(format!("{}_n{}_{}_inner.txt", row.problem, row.n, row.method))
}

/// Writes the relative residual history (one value per line) and, for
/// methods with an inner solver, the inner iterations of each outer step.
/// Returns the paths written.
pub fn write_histories(dir: &Path, runs: &[MethodRun]) -> Result<Vec<PathBuf>> {
    fs::create_dir_all(dir).map_err(|e| io_err(dir, e))?;
    let mut written = Vec::new();
    for run in runs {
        let path = history_path(dir, &run.row);
        write_lines(&path, run.residual_history.iter())?;
        written.push(path);
        if !run.inner_iterations_per_outer.is_empty() {
            let path = inner_history_path(dir, &run.row);
            write_lines(&path, run.inner_iterations_per_outer.iter())?;
            written.push(path);
        }
    }
    Ok(written)
}

fn write_lines<I: Iterator<Item = V>, V: std::fmt::Display>(path: &Path, values: I) -> Result<()> {
    let mut text = String::new();
    for v in values {
        text.push_str(&v.to_string());
        text.push('\n');
    }
    fs::write(path, text).map_err(|e| io_err(path, e))
}

fn io_err(path: &Path, source: std::io::Error) -> BenchError {
    BenchError::Io {
        path: path.to_path_buf(),
        source,
    }
}
