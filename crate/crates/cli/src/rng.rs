//! Seeded random signals.
//!
//! Draws come from SplitMix64 started at `state = seed`:
//!
//! ```text
//! state = state + 0x9E3779B97F4A7C15            (wrapping)
//! z = state
//! z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9      (wrapping)
//! z = (z ^ (z >> 27)) * 0x94D049BB133111EB      (wrapping)
//! x = z ^ (z >> 31)
//! ```
//!
//! and each `x` maps to `(x >> 11)·2⁻⁵³·2 − 1 ∈ [−1, 1)`. The support box is
//! filled in row-major order (first index outer), real part first.

use lctds::{Complex64, IndexBox, Sequence};
use rand_core::{RngCore, SeedableRng};
use rand_xoshiro::SplitMix64;

pub fn unit_interval(x: u64) -> f64 {
    (x >> 11) as f64 * (1.0 / (1u64 << 53) as f64) * 2.0 - 1.0
}

pub struct SignalRng(SplitMix64);

impl SignalRng {
    pub fn new(seed: u64) -> Self {
        Self(SplitMix64::seed_from_u64(seed))
    }

    pub fn next_f64(&mut self) -> f64 {
        unit_interval(self.0.next_u64())
    }
}

pub fn random_sequence(seed: u64, support: IndexBox) -> Sequence {
    let mut rng = SignalRng::new(seed);
    Sequence::from_fn(support, |_| {
        let re = rng.next_f64();
        Complex64::new(re, rng.next_f64())
    })
}
