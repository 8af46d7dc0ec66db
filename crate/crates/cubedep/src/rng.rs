//! Deterministic pseudo-random numbers for seeded generators and sampling.
//!
//! Every seeded output of this crate (random tables, sampled scans, greedy
//! tie-breaking) must stay byte-identical across platforms, thread counts and
//! dependency upgrades, so the generator is pinned here rather than borrowed
//! from a crate whose stream may change between versions.
//!
//! The generator is SplitMix64 (Steele, Lea & Flood): state advances by the
//! additive constant `0x9E3779B97F4A7C15` and each output is finalized with
//! the two xor-shift-multiply rounds `0xBF58476D1CE4E5B9` and
//! `0x94D049BB133111EB`. Bounded draws use the multiply-shift reduction
//! `(x * n) >> 64`, whose bias is below `n / 2^64` and therefore irrelevant
//! for the domain sizes used here.

/// SplitMix64 stream.
#[derive(Debug, Clone)]
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    pub fn new(seed: u64) -> Self {
        SplitMix64 { state: seed }
    }

    /// Next raw 64-bit output.
    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9E37_79B9_7F4A_7C15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    }

    /// Uniform draw from `0..n` via multiply-shift. `n` must be nonzero.
    pub fn next_below(&mut self, n: usize) -> usize {
        debug_assert!(n > 0);
        ((self.next_u64() as u128 * n as u128) >> 64) as usize
    }
}
