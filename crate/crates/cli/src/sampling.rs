//! Deterministic per-sample seeding for batch commands.

use cliffinv::{Error, Multivector, Signature};

/// Seed of sample `index` in a batch seeded with `seed` (splitmix64 finalizer).
pub fn sample_seed(seed: u64, index: u64) -> u64 {
    let mut z = seed.wrapping_add(index.wrapping_add(1).wrapping_mul(0x9E37_79B9_7F4A_7C15));
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// `count` random elements of `sig` with integer coefficients in `[-bound, bound]`.
pub fn batch(sig: Signature, seed: u64, bound: u32, count: usize) -> Result<Vec<Multivector>, Error> {
    (0..count as u64)
        .map(|i| Multivector::random(sig, sample_seed(seed, i), bound))
        .collect()
}
