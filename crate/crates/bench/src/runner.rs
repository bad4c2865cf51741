use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;
use std::time::Instant;

use hssolve::linalg::vector;
use hssolve::{
    complex_direct_solve, Complex64, InnerSolver, InnerSolverConfig, ProblemSpec, Report,
    SolverConfig, System,
};

use crate::error::{BenchError, Result};
use crate::method::Method;
use crate::row::BenchmarkRow;

/// Tolerance of the CG solve behind `||(A + B)^{-1} r||`.
const PRECOND_RESIDUAL_TOL: f64 = 1e-10;

#[derive(Debug, Clone, PartialEq)]
pub struct BenchOptions {
    /// Timed runs after the untimed warm run. With zero, the warm run's time
    /// is reported.
    pub repetitions: usize,
    /// Largest `N` for which the dense reference solution is computed.
    pub oracle_cap: usize,
    /// Outer cap for unpreconditioned GMRES, which replaces the configured
    /// `max_outer` for that method only.
    pub gmres_max_outer: usize,
    /// Run distinct configurations on worker threads. Repetitions of one
    /// configuration stay sequential.
    pub parallel: bool,
}

impl Default for BenchOptions {
    fn default() -> Self {
        Self {
            repetitions: 10,
            oracle_cap: 2000,
            gmres_max_outer: 1000,
            parallel: false,
        }
    }
}

/// A finished row plus the per-iteration data of its warm run.
#[derive(Debug, Clone)]
pub struct MethodRun {
    pub row: BenchmarkRow,
    pub residual_history: Vec<f64>,
    pub inner_iterations_per_outer: Vec<usize>,
}

/// Benchmarks `methods` on the problem described by `spec`.
pub fn run_benchmark(
    spec: &ProblemSpec,
    methods: &[Method],
    cfg: &SolverConfig,
    opts: &BenchOptions,
) -> Result<Vec<MethodRun>> {
    run_configurations(std::slice::from_ref(spec), methods, cfg, opts)
}

/// Every method on every problem, ordered problem-major.
pub fn run_configurations(
    specs: &[ProblemSpec],
    methods: &[Method],
    cfg: &SolverConfig,
    opts: &BenchOptions,
) -> Result<Vec<MethodRun>> {
    cfg.validate()?;
    if methods.is_empty() {
        return Err(BenchError::Usage("no methods selected".into()));
    }
    let prepared = pool_map(specs, opts.parallel, |spec| -> Result<Prepared> {
        let system = spec.build::<f64>()?;
        let oracle = oracle_solution(&system, opts.oracle_cap)?;
        Ok(Prepared {
            problem: spec.kind.name(),
            system,
            oracle,
        })
    })
    .into_iter()
    .collect::<Result<Vec<_>>>()?;

    let jobs: Vec<(&Prepared, Method)> = prepared
        .iter()
        .flat_map(|p| methods.iter().map(move |&m| (p, m)))
        .collect();
    pool_map(&jobs, opts.parallel, |(p, m)| {
        run_method(&p.system, p.problem, *m, cfg, opts, p.oracle.as_deref())
    })
    .into_iter()
    .collect()
}

/// Benchmarks `methods` on an already assembled system.
pub fn run_on_system(
    sys: &System,
    problem: &str,
    methods: &[Method],
    cfg: &SolverConfig,
    opts: &BenchOptions,
) -> Result<Vec<MethodRun>> {
    cfg.validate()?;
    let oracle = oracle_solution(sys, opts.oracle_cap)?;
    methods
        .iter()
        .map(|&m| run_method(sys, problem, m, cfg, opts, oracle.as_deref()))
        .collect()
}

struct Prepared {
    problem: &'static str,
    system: System,
    oracle: Option<Vec<Complex64>>,
}

fn oracle_solution(sys: &System, cap: usize) -> Result<Option<Vec<Complex64>>> {
    if sys.n() > cap {
        return Ok(None);
    }
    Ok(Some(complex_direct_solve(sys.a(), sys.b(), sys.rhs(), cap)?))
}

fn method_config(method: Method, cfg: &SolverConfig, opts: &BenchOptions) -> SolverConfig {
    let mut c = cfg.clone();
    if method == Method::Gmres {
        c.max_outer = opts.gmres_max_outer;
    }
    c
}

fn run_method(
    sys: &System,
    problem: &str,
    method: Method,
    cfg: &SolverConfig,
    opts: &BenchOptions,
    oracle: Option<&[Complex64]>,
) -> Result<MethodRun> {
    let cfg = method_config(method, cfg, opts);

    let start = Instant::now();
    let warm = method.solve(sys, &cfg)?;
    let warm_time = start.elapsed().as_secs_f64();

    let mut times = Vec::with_capacity(opts.repetitions);
    for _ in 0..opts.repetitions {
        let start = Instant::now();
        let rep = method.solve(sys, &cfg)?;
        times.push(start.elapsed().as_secs_f64());
        if rep.outer_iterations != warm.outer_iterations {
            return Err(BenchError::Nondeterministic {
                method: method.name(),
                first: warm.outer_iterations,
                later: rep.outer_iterations,
            });
        }
    }
    let (mean, rel_std) = if times.is_empty() {
        (warm_time, None)
    } else {
        time_stats(&times)
    };

    let row = build_row(sys, problem, method, &warm, mean, rel_std, oracle)?;
    Ok(MethodRun {
        row,
        residual_history: warm.residual_history,
        inner_iterations_per_outer: warm.inner_iterations_per_outer,
    })
}

fn build_row(
    sys: &System,
    problem: &str,
    method: Method,
    report: &Report,
    mean: f64,
    rel_std: Option<f64>,
    oracle: Option<&[Complex64]>,
) -> Result<BenchmarkRow> {
    let r = sys.residual(&report.solution);
    let preconditioned_residual_norm = if method.uses_inner_solver() {
        Some(preconditioned_norm(sys, &r)?)
    } else {
        None
    };
    Ok(BenchmarkRow {
        method: method.name().to_string(),
        problem: problem.to_string(),
        n: sys.n(),
        outer_iterations: report.outer_iterations,
        total_inner_iterations: report.total_inner_iterations,
        wall_time_mean_seconds: mean,
        wall_time_rel_std_percent: rel_std,
        true_residual_norm: vector::norm(&r),
        rhs_norm: sys.rhs_norm(),
        error_vs_oracle: oracle.map(|x| vector::dist(x, &report.solution)),
        preconditioned_residual_norm,
        converged: report.converged,
        stop_reason: report.stop_reason.as_str().to_string(),
    })
}

/// `||(A + B)^{-1} r||`; the real and imaginary parts share the real
/// operator, so they reuse one CG configuration.
fn preconditioned_norm(sys: &System, r: &[Complex64]) -> Result<f64> {
    let n = sys.n();
    let solver = InnerSolver::new(
        sys.sum_matrix(),
        InnerSolverConfig::cg(PRECOND_RESIDUAL_TOL, Some(2 * n.max(1))),
    )?;
    Ok(vector::norm(&solver.solve(r, None)?.solution))
}

/// Mean and sample relative standard deviation (percent, two or more
/// samples).
pub fn time_stats(times: &[f64]) -> (f64, Option<f64>) {
    let k = times.len();
    if k == 0 {
        return (0.0, None);
    }
    let mean = times.iter().sum::<f64>() / k as f64;
    if k < 2 {
        return (mean, None);
    }
    let var = times.iter().map(|t| (t - mean).powi(2)).sum::<f64>() / (k - 1) as f64;
    let rel = if mean > 0.0 { 100.0 * var.sqrt() / mean } else { 0.0 };
    (mean, Some(rel))
}

/// Maps `f` over `items`, on scoped worker threads when `parallel` is set.
/// Output order matches input order either way.
fn pool_map<T: Sync, R: Send>(items: &[T], parallel: bool, f: impl Fn(&T) -> R + Sync) -> Vec<R> {
    let threads = std::thread::available_parallelism()
        .map(|n| n.get())
        .unwrap_or(1)
        .min(items.len());
    if !parallel || threads <= 1 {
        return items.iter().map(f).collect();
    }
    let next = AtomicUsize::new(0);
    let slots: Mutex<Vec<Option<R>>> = Mutex::new((0..items.len()).map(|_| None).collect());
    std::thread::scope(|s| {
        for _ in 0..threads {
            s.spawn(|| loop {
                let i = next.fetch_add(1, Ordering::Relaxed);
                if i >= items.len() {
                    break;
                }
                let out = f(&items[i]);
                slots.lock().expect("result slots poisoned")[i] = Some(out);
            });
        }
    });
    slots
        .into_inner()
        .expect("result slots poisoned")
        .into_iter()
        .map(|r| r.expect("every job ran"))
        .collect()
}
