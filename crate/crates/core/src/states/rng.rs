//! Seeded randomness for the test ensembles.
//!
//! The generator is ChaCha8, which has a fixed, portable stream for a given
//! seed. Independent trials never share a stream: each derives its own
//! child seed by hashing (master seed, trial index), so trials can run in
//! any order, or concurrently, and still reproduce bit-identically.

use rand::{Rng, RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// SplitMix64 finalizer, used as the seed-derivation hash.
fn mix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Child seed for trial `index` under `master`.
pub fn derive_seed(master: u64, index: u64) -> u64 {
    mix64(master ^ mix64(index.wrapping_add(0x9E37_79B9_7F4A_7C15)))
}

/// Deterministic random stream for one trial or one generator call.
pub struct SeededRng {
    inner: ChaCha8Rng,
}

impl SeededRng {
    pub fn new(seed: u64) -> Self {
        Self { inner: ChaCha8Rng::seed_from_u64(seed) }
    }

    /// Uniform draw in [0, 1).
    pub fn uniform(&mut self) -> f64 {
        self.inner.gen::<f64>()
    }

    /// Uniform draw in [lo, hi).
    pub fn uniform_in(&mut self, lo: f64, hi: f64) -> f64 {
        lo + (hi - lo) * self.uniform()
    }

    pub fn next_u64(&mut self) -> u64 {
        self.inner.next_u64()
    }

    /// Pair of independent standard normals via Box-Muller. The open-interval
    /// uniform keeps `ln` finite.
    pub fn normal_pair(&mut self) -> (f64, f64) {
        let u1 = (self.inner.next_u64() as f64 + 0.5) * (1.0 / 18446744073709551616.0);
        let u2 = (self.inner.next_u64() as f64 + 0.5) * (1.0 / 18446744073709551616.0);
        let r = (-2.0 * u1.ln()).sqrt();
        let theta = std::f64::consts::TAU * u2;
        (r * theta.cos(), r * theta.sin())
    }
}
