//! Portable seeded subsets.
//!
//! The generator is PCG32 (`Lcg64Xsh32`: a 64-bit linear congruential state
//! with XSH-RR output) initialised as `Pcg32::new(seed, STREAM)`. A random
//! subset of size `k` of `[1, N]` is the sorted first `k` entries of a
//! Fisher–Yates shuffle of `1..=N` that walks `i` from `N − 1` down to `1` and
//! swaps position `i` with `next_u64() % (i + 1)`. Any implementation of those
//! steps reproduces the same subsets for the same seed.

use rand_core::Rng;
use rand_pcg::Pcg32;

/// PCG32 reference stream constant.
pub const STREAM: u64 = 0x0a02_bdbf_7bb3_c0a7;

pub fn generator(seed: u64) -> Pcg32 {
    Pcg32::new(seed, STREAM)
}

/// Shuffles `items` in place with the documented Fisher–Yates walk.
pub fn shuffle<T>(items: &mut [T], rng: &mut Pcg32) {
    for i in (1..items.len()).rev() {
        let j = (rng.next_u64() % (i as u64 + 1)) as usize;
        items.swap(i, j);
    }
}

/// Sorted `k`-subset of `[1, n]` drawn by shuffle-prefix.
pub fn random_subset(n: u64, k: usize, seed: u64) -> Vec<u64> {
    let mut items: Vec<u64> = (1..=n).collect();
    let mut rng = generator(seed);
    shuffle(&mut items, &mut rng);
    items.truncate(k);
    items.sort_unstable();
    items
}
