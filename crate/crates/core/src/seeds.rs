//! Deterministic expansion of one global seed into per-case seeds.

/// SplitMix64 finalizer.
fn mix(mut x: u64) -> u64 {
    x = x.wrapping_add(0x9E37_79B9_7F4A_7C15);
    x = (x ^ (x >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    x = (x ^ (x >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    x ^ (x >> 31)
}

/// Seed for case `index` of the stream labelled `salt` under `global`.
pub fn case_seed(global: u64, salt: u64, index: u64) -> u64 {
    mix(mix(global ^ mix(salt)).wrapping_add(index))
}

/// Default global seed for every suite.
pub const DEFAULT_SEED: u64 = 42;
