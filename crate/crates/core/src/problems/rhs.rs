//! Seeded uniform right-hand sides.
//!
//! Entry `k` of the vector draws two words from the SplitMix64 output
//! function applied to the counter `2k` (real part) and `2k + 1`
//! (imaginary part), offset by the seed. The top 53 bits give a uniform
//! double in `[0, 1)`, mapped affinely to `[-1, 1)`. The sequence depends
//! only on integer arithmetic, so it is bit-identical across platforms.

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::scalar::Real;

const GOLDEN_GAMMA: u64 = 0x9E37_79B9_7F4A_7C15;

/// SplitMix64 output for counter `index` under `seed`.
pub fn splitmix64(seed: u64, index: u64) -> u64 {
    let mut z = seed.wrapping_add(index.wrapping_add(1).wrapping_mul(GOLDEN_GAMMA));
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Uniform value in `[-1, 1)` for counter `index`.
pub fn uniform_pm1(seed: u64, index: u64) -> f64 {
    let unit = (splitmix64(seed, index) >> 11) as f64 * (1.0 / (1u64 << 53) as f64);
    2.0 * unit - 1.0
}

pub fn gen_rhs<T: Real>(n: usize, seed: u64) -> Result<Vec<Complex<T>>> {
    if n == 0 {
        return Err(Error::InvalidConfig("right-hand side length must be at least 1".into()));
    }
    Ok((0..n as u64)
        .map(|k| {
            Complex::new(
                T::lit(uniform_pm1(seed, 2 * k)),
                T::lit(uniform_pm1(seed, 2 * k + 1)),
            )
        })
        .collect())
}
