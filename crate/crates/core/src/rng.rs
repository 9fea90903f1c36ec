//! Reproducible random streams.
//!
//! Every random quantity is drawn from a ChaCha8 keystream. A run is keyed by
//! a 64-bit `seed` (expanded with `SeedableRng::seed_from_u64`) and each
//! logical stream uses its own ChaCha stream id, so the `i`-th `u64` of stream
//! `s` is a pure function of `(seed, s, i)`:
//!
//! * replica `r` of a simulation reads its past letters `ξ_0, ξ_{-1}, …` from
//!   stream `2r` and its future letters `ξ_1, ξ_2, …` from stream `2r + 1`;
//! * graph replicas use stream `GRAPH_STREAM_BASE + r`.
//!
//! Uniform variates are `((x >> 11) + 1) * 2^-53`, i.e. they lie in `(0, 1]`,
//! which keeps inversion sampling of unbounded laws finite.

use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};

pub const GRAPH_STREAM_BASE: u64 = 1 << 62;

/// Stream carrying the past letters of replica `replica`.
pub fn past_stream(seed: u64, replica: u64) -> ChaCha8Rng {
    stream(seed, 2 * replica)
}

/// Stream carrying the future letters of replica `replica`.
pub fn future_stream(seed: u64, replica: u64) -> ChaCha8Rng {
    stream(seed, 2 * replica + 1)
}

pub fn graph_stream(seed: u64, replica: u64) -> ChaCha8Rng {
    stream(seed, GRAPH_STREAM_BASE + replica)
}

pub fn stream(seed: u64, stream_id: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream_id);
    rng
}

/// Uniform variate in `(0, 1]` built from the top 53 bits of `x`.
#[inline]
pub fn unit_from_bits(x: u64) -> f64 {
    ((x >> 11) + 1) as f64 * (1.0 / (1u64 << 53) as f64)
}

#[inline]
pub fn unit<R: RngCore + ?Sized>(rng: &mut R) -> f64 {
    unit_from_bits(rng.next_u64())
}

/// SplitMix64 finaliser.
#[inline]
pub fn mix64(mut z: u64) -> u64 {
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Uniform in `(0, 1]` attached to the ordered pair `(i, j)`; used where the
/// same randomness must be re-read for a pair regardless of visiting order.
#[inline]
pub fn pair_unit(seed: u64, i: u64, j: u64) -> f64 {
    let key = mix64(seed ^ 0x9e37_79b9_7f4a_7c15);
    let h = mix64(key ^ mix64(i.wrapping_mul(0xd6e8_feb8_6659_fd93) ^ j));
    unit_from_bits(h)
}
