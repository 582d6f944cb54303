//! Named deterministic random streams.
//!
//! All randomness in a run flows from one root seed. Each consumer opens its
//! own named stream, so adding a new consumer never shifts the draws seen by
//! existing ones.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// SplitMix64 finalizer; good avalanche for seed derivation.
pub fn splitmix(mut x: u64) -> u64 {
    x = x.wrapping_add(0x9e37_79b9_7f4a_7c15);
    x = (x ^ (x >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    x = (x ^ (x >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    x ^ (x >> 31)
}

/// Derive a child seed from a parent seed and a salt.
pub fn mix(seed: u64, salt: u64) -> u64 {
    splitmix(seed ^ splitmix(salt))
}

/// Stable hash of a feature id list, used to give every evaluated subset its
/// own training seed independent of evaluation order.
pub fn hash_ids(ids: &[usize]) -> u64 {
    let mut h = splitmix(ids.len() as u64);
    for &id in ids {
        h = splitmix(h ^ id as u64);
    }
    h
}

/// Open the named stream rooted at `seed`.
pub fn stream(seed: u64, name: &str) -> ChaCha8Rng {
    let mut h = splitmix(seed);
    for &b in name.as_bytes() {
        h = splitmix(h ^ u64::from(b));
    }
    let mut key = [0u8; 32];
    for chunk in key.chunks_mut(8) {
        h = splitmix(h);
        chunk.copy_from_slice(&h.to_le_bytes());
    }
    ChaCha8Rng::from_seed(key)
}
