//! Seeded randomness for Monte Carlo rank checks.
//!
//! Every random instance is drawn from a ChaCha stream keyed by the run seed
//! and a tuple of integers naming the instance (table cell, trial index, ...),
//! so a single cell can be regenerated without replaying the whole run.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::ffla::PrimeField;

fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// A generator determined by `seed` and the instance tags.
pub fn rng_for(seed: u64, tags: &[u64]) -> ChaCha8Rng {
    let mut h = splitmix64(seed);
    for &t in tags {
        h = splitmix64(h ^ t);
    }
    ChaCha8Rng::seed_from_u64(h)
}

/// Field, seed and repetition count shared by all sampled checks.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct MonteCarlo {
    pub field: PrimeField,
    pub seed: u64,
    pub trials: usize,
}

impl Default for MonteCarlo {
    fn default() -> Self {
        MonteCarlo { field: PrimeField::default(), seed: 0, trials: 3 }
    }
}

impl MonteCarlo {
    pub fn new(field: PrimeField, seed: u64, trials: usize) -> Self {
        MonteCarlo { field, seed, trials: trials.max(1) }
    }

    pub fn rng(&self, tags: &[u64]) -> ChaCha8Rng {
        rng_for(self.seed, tags)
    }
}
