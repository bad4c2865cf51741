use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;

use clap::{Parser, ValueEnum};
use hssolve::{InnerSolverConfig, ProblemKind, ProblemSpec, RhsSource, SolverConfig};

use crate::emit::{write_histories, write_rows, OutputFormat};
use crate::error::{BenchError, Result};
use crate::method::Method;
use crate::runner::{run_configurations, BenchOptions, MethodRun};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ProblemArg {
    Pade,
    ShiftedOmega,
    EqMotion,
    File,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum RhsArg {
    Random,
    File,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum InnerArg {
    Cg,
    Direct,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FormatArg {
    Csv,
    Json,
}

/// Benchmark PMHSS, Anderson-accelerated PMHSS and preconditioned GMRES on
/// complex symmetric test problems.
#[derive(Debug, Parser)]
#[command(name = "hssolve-bench", version)]
pub struct Args {
    #[arg(long, value_enum, default_value = "pade")]
    pub problem: ProblemArg,

    /// Interior grid points per side (N = m^2); comma separated for a sweep.
    #[arg(long, value_delimiter = ',', default_value = "100")]
    pub m: Vec<usize>,

    /// Matrix Market file for A (real) or for A + iB (complex).
    #[arg(long)]
    pub matrix_a: Option<PathBuf>,

    /// Matrix Market file for B when A was given as a real file.
    #[arg(long)]
    pub matrix_b: Option<PathBuf>,

    #[arg(long, value_enum, default_value = "random")]
    pub rhs: RhsArg,

    /// Right-hand side file, one "re [im]" entry per line.
    #[arg(long)]
    pub rhs_path: Option<PathBuf>,

    #[arg(long, default_value_t = hssolve::problems::DEFAULT_SEED)]
    pub seed: u64,

    /// Methods to run, comma separated.
    #[arg(
        long,
        value_delimiter = ',',
        default_value = "pmhss,aa_pmhss,gmres,pmhss_gmres,presb_gmres"
    )]
    pub method: Vec<Method>,

    #[arg(long, default_value_t = 1e-8)]
    pub outer_tol: f64,

    #[arg(long, default_value_t = 200)]
    pub max_outer: usize,

    /// Outer cap for unpreconditioned GMRES.
    #[arg(long, default_value_t = 1000)]
    pub gmres_max_outer: usize,

    #[arg(long, value_enum, default_value = "cg")]
    pub inner: InnerArg,

    #[arg(long, default_value_t = 1e-12)]
    pub inner_tol: f64,

    /// CG iteration cap per inner solve (default: N).
    #[arg(long)]
    pub max_inner: Option<usize>,

    /// Anderson window (default: unbounded).
    #[arg(long)]
    pub aa_window: Option<usize>,

    /// Timed repetitions after one untimed run.
    #[arg(long, default_value_t = 10)]
    pub reps: usize,

    #[arg(long, value_enum, default_value = "csv")]
    pub format: FormatArg,

    /// Write rows here instead of stdout.
    #[arg(long, short)]
    pub output: Option<PathBuf>,

    /// Directory for per-run residual histories.
    #[arg(long)]
    pub history_dir: Option<PathBuf>,

    /// Largest N for the dense reference solution.
    #[arg(long, default_value_t = 2000)]
    pub oracle_cap: usize,

    /// Run distinct (problem size, method) configurations concurrently.
    /// Timings then include contention.
    #[arg(long)]
    pub parallel: bool,

    /// Shifted-omega problem: damping mu.
    #[arg(long, default_value_t = 0.0)]
    pub shift_mu: f64,

    /// Shifted-omega problem: frequency omega.
    #[arg(long, default_value_t = 0.01)]
    pub shift_omega: f64,

    /// Equation-of-motion problem: frequency omega.
    #[arg(long, default_value_t = std::f64::consts::PI)]
    pub motion_omega: f64,

    /// Equation-of-motion problem: damping mu.
    #[arg(long, default_value_t = 0.02)]
    pub motion_mu: f64,
}

impl Args {
    pub fn problem_specs(&self) -> Result<Vec<ProblemSpec>> {
        let rhs = match self.rhs {
            RhsArg::Random => RhsSource::Random { seed: self.seed },
            RhsArg::File => RhsSource::File(self.rhs_path.clone().ok_or_else(|| {
                BenchError::Usage("--rhs file requires --rhs-path".into())
            })?),
        };
        let kind = match self.problem {
            ProblemArg::Pade => ProblemKind::Pade,
            ProblemArg::ShiftedOmega => ProblemKind::ShiftedOmega {
                mu: self.shift_mu,
                omega: self.shift_omega,
            },
            ProblemArg::EqMotion => ProblemKind::EqMotion {
                omega: self.motion_omega,
                mu: self.motion_mu,
            },
            ProblemArg::File => ProblemKind::File {
                a: self.matrix_a.clone().ok_or_else(|| {
                    BenchError::Usage("--problem file requires --matrix-a".into())
                })?,
                b: self.matrix_b.clone(),
            },
        };
        if self.problem == ProblemArg::File {
            return Ok(vec![ProblemSpec { kind, m: 0, rhs }]);
        }
        if self.m.is_empty() || self.m.contains(&0) {
            return Err(BenchError::Usage("--m values must be positive".into()));
        }
        Ok(self
            .m
            .iter()
            .map(|&m| ProblemSpec {
                kind: kind.clone(),
                m,
                rhs: rhs.clone(),
            })
            .collect())
    }

    pub fn solver_config(&self) -> SolverConfig {
        let inner = match self.inner {
            InnerArg::Cg => InnerSolverConfig::cg(self.inner_tol, self.max_inner),
            InnerArg::Direct => InnerSolverConfig::direct(),
        };
        SolverConfig {
            outer_tol: self.outer_tol,
            max_outer: self.max_outer,
            inner,
            aa_window: self.aa_window,
            track_true_residual: true,
        }
    }

    pub fn bench_options(&self) -> BenchOptions {
        BenchOptions {
            repetitions: self.reps,
            oracle_cap: self.oracle_cap,
            gmres_max_outer: self.gmres_max_outer,
            parallel: self.parallel,
        }
    }

    pub fn output_format(&self) -> OutputFormat {
        match self.format {
            FormatArg::Csv => OutputFormat::Csv,
            FormatArg::Json => OutputFormat::Json,
        }
    }
}

/// Runs the benchmark described by `args` and writes rows and histories.
pub fn run(args: &Args) -> Result<Vec<MethodRun>> {
    let specs = args.problem_specs()?;
    let cfg = args.solver_config();
    cfg.validate()?;
    let runs = run_configurations(&specs, &args.method, &cfg, &args.bench_options())?;
    let rows: Vec<_> = runs.iter().map(|r| r.row.clone()).collect();

    match &args.output {
        Some(path) => {
            let file = File::create(path).map_err(|e| BenchError::Io {
                path: path.clone(),
                source: e,
            })?;
            write_rows(&rows, args.output_format(), BufWriter::new(file))?;
        }
        None => {
            let stdout = io::stdout();
            let mut lock = stdout.lock();
            write_rows(&rows, args.output_format(), &mut lock)?;
            let _ = lock.flush();
        }
    }
    if let Some(dir) = &args.history_dir {
        write_histories(dir, &runs)?;
    }
    Ok(runs)
}
