//! Run engines behind the CLI subcommands. Each takes the resolved config
//! and an output directory and emits CSV files; the acceptance suite drives
//! the same entry points directly.

pub mod benchmark;
pub mod boundary;
pub mod ground;
pub mod spectra;
pub mod spectrum;
pub mod sweep;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha12Rng;

/// Random parameter draw: i.i.d. uniform on [-pi, pi], seeded.
pub fn random_params(count: usize, seed: u64) -> Vec<f64> {
    let mut rng = ChaCha12Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| rng.gen_range(-std::f64::consts::PI..std::f64::consts::PI))
        .collect()
}
