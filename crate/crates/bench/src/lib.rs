//! Benchmark harness for the `hssolve` solvers: runs methods on generated or
//! file-based problems and emits table rows and residual histories.

pub mod cli;
pub mod emit;
pub mod error;
pub mod method;
pub mod row;
pub mod runner;

pub use emit::{write_csv, write_histories, write_json, write_rows, OutputFormat, CSV_HEADER};
pub use error::{BenchError, Result};
pub use method::{parse_methods, Method};
pub use row::BenchmarkRow;
pub use runner::{run_benchmark, run_configurations, run_on_system, BenchOptions, MethodRun};
