//! Labeled, seeded random streams.
//!
//! Every source of randomness in a run draws from its own stream, derived
//! from the run seed plus a short label ("catalog", "policy", ...). The same
//! (seed, label) pair always yields the same draw sequence, so toggling one
//! noise source never shifts the draws seen by another.

use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Normal};

/// A deterministic random stream identified by (seed, label).
#[derive(Debug, Clone)]
pub struct RngStream {
    seed: u64,
    label: String,
    rng: ChaCha8Rng,
}

impl RngStream {
    pub fn new(seed: u64, label: &str) -> Self {
        let mut key = [0u8; 32];
        key[..8].copy_from_slice(&seed.to_le_bytes());
        key[8..16].copy_from_slice(&fnv1a(label.as_bytes()).to_le_bytes());
        Self {
            seed,
            label: label.to_owned(),
            rng: ChaCha8Rng::from_seed(key),
        }
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    /// Uniform draw in [0, 1).
    pub fn uniform(&mut self) -> f64 {
        rand::Rng::random(&mut self.rng)
    }

    /// Uniform index in [0, n). Panics if n = 0.
    pub fn index(&mut self, n: usize) -> usize {
        assert!(n > 0, "cannot draw an index from an empty range");
        rand::Rng::random_range(&mut self.rng, 0..n)
    }

    /// Gaussian draw with the given mean and standard deviation.
    pub fn normal(&mut self, mean: f64, std: f64) -> f64 {
        Normal::new(mean, std)
            .expect("normal parameters validated by caller")
            .sample(&mut self.rng)
    }

    /// Fill `out` with i.i.d. Gaussian draws of the given standard deviation.
    pub fn fill_normal(&mut self, std: f64, out: &mut [f64]) {
        let dist = Normal::new(0.0, std).expect("normal parameters validated by caller");
        for slot in out.iter_mut() {
            *slot = dist.sample(&mut self.rng);
        }
    }
}

impl RngCore for RngStream {
    fn next_u32(&mut self) -> u32 {
        self.rng.next_u32()
    }

    fn next_u64(&mut self) -> u64 {
        self.rng.next_u64()
    }

    fn fill_bytes(&mut self, dest: &mut [u8]) {
        self.rng.fill_bytes(dest)
    }
}

fn fnv1a(bytes: &[u8]) -> u64 {
    let mut hash = 0xcbf2_9ce4_8422_2325u64;
    for &b in bytes {
        hash ^= u64::from(b);
        hash = hash.wrapping_mul(0x0000_0100_0000_01b3);
    }
    hash
}
