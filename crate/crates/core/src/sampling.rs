//! Seeded direction sampling for the Monte Carlo estimators.
//!
//! Samples are drawn in fixed-size batches. Batch `b` of a given estimator
//! gets its own ChaCha stream keyed by `(seed, domain, item, b)`, so totals do
//! not depend on how batches are scheduled across threads.

use alloc::vec::Vec;
use core::ops::{Add, Mul};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

/// Directions per batch.
pub const BATCH_SIZE: u64 = 4096;

/// A floating-point result with a one-sigma error bound (zero when exact).
#[derive(Copy, Clone, Debug, Default, PartialEq)]
pub struct Estimate {
    pub value: f64,
    pub stderr: f64,
}

impl Estimate {
    pub fn exact(value: f64) -> Self {
        Estimate { value, stderr: 0.0 }
    }

    pub fn new(value: f64, stderr: f64) -> Self {
        Estimate { value, stderr }
    }

    /// Binomial proportion `hits / n` with its standard error.
    pub fn proportion(hits: u64, n: u64) -> Self {
        let p = hits as f64 / n as f64;
        Estimate { value: p, stderr: libm::sqrt(p * (1.0 - p) / n as f64) }
    }

    /// Sample mean with the standard error of the mean, from running sums.
    pub fn from_moments(sum: f64, sum_sq: f64, n: u64) -> Self {
        let nf = n as f64;
        let mean = sum / nf;
        let var = if n > 1 { ((sum_sq - nf * mean * mean) / (nf - 1.0)).max(0.0) } else { 0.0 };
        Estimate { value: mean, stderr: libm::sqrt(var / nf) }
    }

    /// Whether `|self - target| <= k·stderr + abs_tol`.
    pub fn agrees_with(&self, target: f64, k: f64, abs_tol: f64) -> bool {
        (self.value - target).abs() <= k * self.stderr + abs_tol
    }
}

impl Add for Estimate {
    type Output = Estimate;
    /// Bounds add linearly.
    fn add(self, rhs: Estimate) -> Estimate {
        Estimate { value: self.value + rhs.value, stderr: self.stderr + rhs.stderr }
    }
}

impl Mul<f64> for Estimate {
    type Output = Estimate;
    fn mul(self, k: f64) -> Estimate {
        Estimate { value: self.value * k, stderr: self.stderr * k.abs() }
    }
}

impl core::iter::Sum for Estimate {
    fn sum<I: Iterator<Item = Estimate>>(iter: I) -> Estimate {
        iter.fold(Estimate::default(), Add::add)
    }
}

/// How many directions to draw and from which seed.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub struct SampleConfig {
    pub samples: u64,
    pub seed: u64,
}

impl SampleConfig {
    pub fn new(samples: u64, seed: u64) -> Self {
        SampleConfig { samples, seed }
    }
}

impl Default for SampleConfig {
    fn default() -> Self {
        SampleConfig { samples: 100_000, seed: 0 }
    }
}

/// Stream domains, one per estimator.
#[derive(Copy, Clone, Debug)]
#[repr(u64)]
pub enum Domain {
    ExcessAngle = 1,
    Banchoff = 2,
    Morse = 3,
    Product = 4,
}

fn splitmix64(state: &mut u64) -> u64 {
    *state = state.wrapping_add(0x9E37_79B9_7F4A_7C15);
    let mut z = *state;
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Generator for one batch.
pub fn batch_rng(seed: u64, domain: Domain, item: u64, batch: u64) -> ChaCha8Rng {
    let mut state = seed;
    let mut key = [0u8; 32];
    let words = [
        splitmix64(&mut state),
        splitmix64(&mut state) ^ (domain as u64).wrapping_mul(0xD6E8_FEB8_6659_FD93),
        splitmix64(&mut state) ^ item.wrapping_mul(0xA076_1D64_78BD_642F),
        splitmix64(&mut state) ^ batch.wrapping_mul(0xE703_7ED1_A0B4_28DB),
    ];
    let mut mix = words[0] ^ words[1] ^ words[2] ^ words[3];
    for (chunk, w) in key.chunks_exact_mut(8).zip(words) {
        let v = w ^ splitmix64(&mut mix);
        chunk.copy_from_slice(&v.to_le_bytes());
    }
    ChaCha8Rng::from_seed(key)
}

/// Fills `out` with a standard Gaussian vector (not normalized; only the
/// direction matters to the sign tests that consume it).
pub fn gaussian(rng: &mut ChaCha8Rng, out: &mut [f64]) {
    for x in out.iter_mut() {
        *x = StandardNormal.sample(rng);
    }
}

/// A uniformly distributed unit vector.
pub fn unit_direction(rng: &mut ChaCha8Rng, dim: usize) -> Vec<f64> {
    let mut v = alloc::vec![0.0; dim];
    loop {
        gaussian(rng, &mut v);
        let n = crate::embedding::norm(&v);
        if n > 0.0 {
            v.iter_mut().for_each(|x| *x /= n);
            return v;
        }
    }
}

/// Runs `f(batch_index, batch_len)` over every batch and returns the results
/// in batch order.
pub fn run_batches<T, F>(samples: u64, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(u64, u64) -> T + Sync + Send,
{
    let batches = samples.div_ceil(BATCH_SIZE);
    let len = move |b: u64| BATCH_SIZE.min(samples - b * BATCH_SIZE);
    #[cfg(feature = "parallel")]
    {
        use rayon::prelude::*;
        (0..batches).into_par_iter().map(|b| f(b, len(b))).collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        (0..batches).map(|b| f(b, len(b))).collect()
    }
}
