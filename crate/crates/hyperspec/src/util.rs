//! Seed derivation shared by every randomized component.
//!
//! All RNG streams in the crate are derived from a base seed plus a list of
//! stream tags via SplitMix64 mixing. Streams are therefore independent of
//! scheduling: a tree, fold or classifier always sees the same RNG no matter
//! which thread runs it.

use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn splitmix64(state: &mut u64) -> u64 {
    *state = state.wrapping_add(0x9E37_79B9_7F4A_7C15);
    let mut z = *state;
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Mix a base seed with stream tags into a new 64-bit seed.
pub fn derive_seed(base: u64, tags: &[u64]) -> u64 {
    let mut state = base;
    let mut out = splitmix64(&mut state);
    for &tag in tags {
        state ^= tag.wrapping_mul(0xA24B_AED4_963E_E407);
        out ^= splitmix64(&mut state);
    }
    out
}

/// Seeded RNG for the stream identified by `tags` under `base`.
pub fn rng_stream(base: u64, tags: &[u64]) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(derive_seed(base, tags))
}
