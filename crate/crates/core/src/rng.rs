//! Seeded deterministic generator.
//!
//! All randomized constructions draw from the SplitMix64 sequence started at
//! the user seed (state initialised to the seed itself, increment
//! `0x9e3779b97f4a7c15`, output mixers `0xbf58476d1ce4e5b9` and
//! `0x94d049bb133111eb`). Field coefficients are the raw outputs reduced mod p,
//! one output per GF(p) digit, so identical seeds reproduce identical objects
//! on every platform.

use rand_core::{RngCore, SeedableRng};
use rand_xoshiro::SplitMix64;

pub struct SeededRng(SplitMix64);

impl SeededRng {
    pub fn new(seed: u64) -> Self {
        SeededRng(SplitMix64::from_seed(seed.to_le_bytes()))
    }

    pub fn next_u64(&mut self) -> u64 {
        self.0.next_u64()
    }

    /// Uniform-ish value in `0..n` by plain reduction (the documented convention).
    pub fn below(&mut self, n: u64) -> u64 {
        assert!(n > 0);
        self.next_u64() % n
    }

    /// Derives an independent stream for a labelled sub-task.
    pub fn fork(&mut self, label: u64) -> SeededRng {
        let s = self.next_u64() ^ label.wrapping_mul(0x9e37_79b9_7f4a_7c15);
        SeededRng::new(s)
    }
}
