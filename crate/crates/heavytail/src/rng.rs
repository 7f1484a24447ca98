// SPDX-License-Identifier: MIT

//! Deterministic random-number streams.
//!
//! Every stochastic operation in the crate takes either a `u64` seed or a
//! [`Stream`] created from one. Replicated experiments never share a stream:
//! each replicate derives its own seed through [`derive_seed`], a bijective
//! 64-bit mix of `(base, index)`. This makes results independent of thread
//! count and of the order in which replicates complete, and lets any single
//! replicate be reproduced in isolation.

use rand_chacha::rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// The pseudo-random stream used throughout the crate.
///
/// ChaCha with 8 rounds: fast, high-quality, and with a stable cross-platform
/// byte stream for a given seed.
pub type Stream = ChaCha8Rng;

/// Create a stream from a bare seed.
pub fn stream_from_seed(seed: u64) -> Stream {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Derive the seed of replicate `index` from a base seed.
///
/// Uses a SplitMix64-style avalanche over `base + (index+1)·φ`, where φ is
/// the 64-bit golden-ratio constant. Distinct `(base, index)` pairs map to
/// well-separated seeds; `index = 0` never returns `base` itself, so the
/// base stream can be used for non-replicated draws without overlap.
pub fn derive_seed(base: u64, index: u64) -> u64 {
    let mut z = base.wrapping_add(index.wrapping_add(1).wrapping_mul(0x9E37_79B9_7F4A_7C15));
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Stream for replicate `index` of an experiment with base seed `base`.
pub fn replicate_stream(base: u64, index: u64) -> Stream {
    stream_from_seed(derive_seed(base, index))
}

/// Uniform draw strictly inside `(0,1)`, with 53 random bits.
///
/// Zero is rejected (probability 2⁻⁵³) so the value can be fed to quantile
/// functions that diverge at the endpoints.
pub fn open01(rng: &mut Stream) -> f64 {
    loop {
        let u = (rng.next_u64() >> 11) as f64 * (1.0 / 9007199254740992.0);
        if u > 0.0 {
            return u;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn derive_seed_is_stable_and_spread() {
        // Frozen values: the replicate schedule is part of the reproducibility
        // contract, so a change here is a breaking change.
        let a = derive_seed(42, 0);
        let b = derive_seed(42, 1);
        assert_eq!(a, derive_seed(42, 0));
        assert_ne!(a, b);
        assert_ne!(a, 42);
        // Hamming distance between consecutive replicate seeds should be
        // near 32 bits on average; accept a broad band.
        let ham = (a ^ b).count_ones();
        assert!(ham > 10 && ham < 54, "poor seed separation: {ham} bits");
    }

    #[test]
    fn replicate_streams_are_reproducible() {
        let mut s1 = replicate_stream(7, 3);
        let mut s2 = replicate_stream(7, 3);
        for _ in 0..16 {
            assert_eq!(s1.next_u64(), s2.next_u64());
        }
        let mut s3 = replicate_stream(7, 4);
        assert_ne!(s1.next_u64(), s3.next_u64());
    }

    #[test]
    fn open01_stays_inside_the_unit_interval() {
        let mut rng = stream_from_seed(1);
        let mut lo = 1.0f64;
        let mut hi = 0.0f64;
        for _ in 0..100_000 {
            let u = open01(&mut rng);
            assert!(u > 0.0 && u < 1.0);
            lo = lo.min(u);
            hi = hi.max(u);
        }
        assert!(lo < 1e-3 && hi > 1.0 - 1e-3, "draws not spread: [{lo}, {hi}]");
    }
}
