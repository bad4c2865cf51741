//! Benchmark problem generators, seeded right-hand sides and Matrix Market
//! I/O.

pub mod mtx;
pub mod rhs;
pub mod stencil;

use std::path::PathBuf;

pub use mtx::{
    format_matrix_market, load_matrix_market, load_vector, parse_matrix_market,
    write_matrix_market, write_matrix_market_complex, MatrixMarket,
};
pub use rhs::{gen_rhs, splitmix64, uniform_pm1};
pub use stencil::{
    eq_motion_matrices, laplacian_5pt, laplacian_min_eigenvalue, mesh_width, pade_matrices,
    shifted_omega_matrices,
};

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::linalg::CsrMatrix;
use crate::scalar::Real;
use crate::system::SplitSystem;

pub const DEFAULT_SEED: u64 = 1;

pub fn gen_pade<T: Real>(m: usize, seed: u64) -> Result<SplitSystem<T>> {
    let (a, b) = pade_matrices(m)?;
    SplitSystem::new(a, b, gen_rhs(m * m, seed)?)
}

pub fn gen_shifted_omega<T: Real>(m: usize, mu: f64, omega: f64, seed: u64) -> Result<SplitSystem<T>> {
    let (a, b) = shifted_omega_matrices(m, mu, omega)?;
    SplitSystem::new(a, b, gen_rhs(m * m, seed)?)
}

pub fn gen_eq_motion<T: Real>(m: usize, omega: f64, mu: f64, seed: u64) -> Result<SplitSystem<T>> {
    let (a, b) = eq_motion_matrices(m, omega, mu)?;
    SplitSystem::new(a, b, gen_rhs(m * m, seed)?)
}

/// Where the right-hand side of a problem comes from.
#[derive(Debug, Clone, PartialEq)]
pub enum RhsSource {
    Random { seed: u64 },
    File(PathBuf),
}

#[derive(Debug, Clone, PartialEq)]
pub enum ProblemKind {
    Pade,
    ShiftedOmega { mu: f64, omega: f64 },
    EqMotion { omega: f64, mu: f64 },
    /// `A` from a real file and `B` from a second one, or both from a single
    /// complex file when `b` is `None`.
    File { a: PathBuf, b: Option<PathBuf> },
}

impl ProblemKind {
    pub fn shifted_omega() -> Self {
        Self::ShiftedOmega { mu: 0.0, omega: 0.01 }
    }

    pub fn eq_motion() -> Self {
        Self::EqMotion {
            omega: std::f64::consts::PI,
            mu: 0.02,
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Self::Pade => "pade",
            Self::ShiftedOmega { .. } => "shifted_omega",
            Self::EqMotion { .. } => "eq_motion",
            Self::File { .. } => "file",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ProblemSpec {
    pub kind: ProblemKind,
    /// Interior grid points per side; ignored for file problems.
    pub m: usize,
    pub rhs: RhsSource,
}

impl ProblemSpec {
    pub fn new(kind: ProblemKind, m: usize) -> Self {
        Self {
            kind,
            m,
            rhs: RhsSource::Random { seed: DEFAULT_SEED },
        }
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.rhs = RhsSource::Random { seed };
        self
    }

    pub fn build<T: Real>(&self) -> Result<SplitSystem<T>> {
        let (a, b) = match &self.kind {
            ProblemKind::Pade => pade_matrices(self.m)?,
            ProblemKind::ShiftedOmega { mu, omega } => shifted_omega_matrices(self.m, *mu, *omega)?,
            ProblemKind::EqMotion { omega, mu } => eq_motion_matrices(self.m, *omega, *mu)?,
            ProblemKind::File { a, b } => load_pair(a, b.as_ref())?,
        };
        let n = a.n_rows();
        let rhs: Vec<Complex<T>> = match &self.rhs {
            RhsSource::Random { seed } => gen_rhs(n, *seed)?,
            RhsSource::File(p) => load_vector(p)?,
        };
        SplitSystem::new(a, b, rhs)
    }
}

fn load_pair<T: Real>(a: &PathBuf, b: Option<&PathBuf>) -> Result<(CsrMatrix<T>, CsrMatrix<T>)> {
    let (ra, ia) = load_matrix_market::<T>(a)?.into_parts();
    match (b, ia) {
        (None, Some(ia)) => Ok((ra, ia)),
        (None, None) => Err(Error::InvalidConfig(format!(
            "{} is real; supply the imaginary part B as a second file",
            a.display()
        ))),
        (Some(pb), None) => match load_matrix_market::<T>(pb)?.into_parts() {
            (rb, None) => Ok((ra, rb)),
            _ => Err(Error::InvalidConfig(format!("{} must be a real matrix", pb.display()))),
        },
        (Some(_), Some(_)) => Err(Error::InvalidConfig(format!(
            "{} is complex; give A and B either as one complex file or two real files",
            a.display()
        ))),
    }
}
