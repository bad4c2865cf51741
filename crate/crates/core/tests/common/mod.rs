#![allow(dead_code)]

use hssolve::linalg::{DenseMatrix, Lu};
use hssolve::problems::uniform_pm1;
use hssolve::{Complex64 as C, CsrMatrix, SplitSystem};

pub struct Rng {
    seed: u64,
    counter: u64,
}

impl Rng {
    pub fn new(seed: u64) -> Self {
        Self { seed, counter: 0 }
    }

    pub fn next(&mut self) -> f64 {
        self.counter += 1;
        uniform_pm1(self.seed ^ 0xA5A5_5A5A_DEAD_BEEF, self.counter)
    }

    pub fn complex(&mut self) -> C {
        C::new(self.next(), self.next())
    }

    pub fn vector(&mut self, n: usize) -> Vec<C> {
        (0..n).map(|_| self.complex()).collect()
    }

    pub fn real_vector(&mut self, n: usize) -> Vec<f64> {
        (0..n).map(|_| self.next()).collect()
    }

    pub fn dense(&mut self, rows: usize, cols: usize) -> DenseMatrix<f64> {
        DenseMatrix::from_fn(rows, cols, |_, _| self.next())
    }
}

/// `R^T R + shift I`.
pub fn random_spd(rng: &mut Rng, n: usize, shift: f64) -> DenseMatrix<f64> {
    let r = rng.dense(n, n);
    let g = r.transpose().matmul(&r);
    DenseMatrix::from_fn(n, n, |i, j| g[(i, j)] + if i == j { shift } else { 0.0 })
}

/// `S^T S` with `S` of shape `rank x n`, scaled.
pub fn random_spsd(rng: &mut Rng, n: usize, rank: usize, scale: f64) -> DenseMatrix<f64> {
    let s = rng.dense(rank, n);
    let g = s.transpose().matmul(&s);
    DenseMatrix::from_fn(n, n, |i, j| scale * g[(i, j)])
}

pub fn symmetrize(m: &DenseMatrix<f64>) -> DenseMatrix<f64> {
    DenseMatrix::from_fn(m.n_rows(), m.n_cols(), |i, j| 0.5 * (m[(i, j)] + m[(j, i)]))
}

pub fn random_system(rng: &mut Rng, n: usize) -> SplitSystem<f64> {
    let a = symmetrize(&random_spd(rng, n, 0.5));
    let rank = 1 + n / 2;
    let b = symmetrize(&random_spsd(rng, n, rank, 2.0));
    SplitSystem::new(
        CsrMatrix::from_dense(&a),
        CsrMatrix::from_dense(&b),
        rng.vector(n),
    )
    .unwrap()
}

pub fn complex_dense(a: &CsrMatrix<f64>, b: &CsrMatrix<f64>, sign: f64) -> DenseMatrix<C> {
    let (ad, bd) = (a.to_dense(), b.to_dense());
    DenseMatrix::from_fn(a.n_rows(), a.n_cols(), |i, j| C::new(ad[(i, j)], sign * bd[(i, j)]))
}

/// Dense `Psi = (1+i)/2 (A+B)^{-1} (A - iB)` and `c = (1-i)/2 (A+B)^{-1} b`.
pub fn psi_and_c(sys: &SplitSystem<f64>) -> (DenseMatrix<C>, Vec<C>) {
    let n = sys.n();
    let h = sys.sum_matrix().to_dense().map(|v| C::new(v, 0.0));
    let hinv = Lu::factor(&h).unwrap().inverse();
    let m = hinv.matmul(&complex_dense(sys.a(), sys.b(), -1.0));
    let psi = m.scaled(C::new(0.5, 0.5));
    let c: Vec<C> = hinv
        .mul_vec(sys.rhs())
        .into_iter()
        .map(|z| z * C::new(0.5, -0.5))
        .collect();
    assert_eq!(c.len(), n);
    (psi, c)
}

pub fn rel_err(x: &[C], y: &[C]) -> f64 {
    let num: f64 = x.iter().zip(y).map(|(a, b)| (a - b).norm_sqr()).sum::<f64>().sqrt();
    let den: f64 = y.iter().map(|b| b.norm_sqr()).sum::<f64>().sqrt();
    num / den.max(f64::MIN_POSITIVE)
}
