//! Seeding conventions.
//!
//! Every randomized routine draws from [`ChaCha8Rng`], whose output stream is
//! fixed by its specification and independent of platform and word size.
//! Sub-streams (per trial, per evaluation) are derived with a SplitMix64 mix
//! of the parent seed and a stream index so that results do not depend on the
//! order in which independent jobs run.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub type Rng = ChaCha8Rng;

/// Seeded generator for a top-level seed.
pub fn seeded(seed: u64) -> Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Generator for sub-stream `stream` of `seed`.
pub fn substream(seed: u64, stream: u64) -> Rng {
    seeded(derive_seed(seed, stream))
}

/// SplitMix64 finaliser applied to `seed ^ mix(stream)`.
pub fn derive_seed(seed: u64, stream: u64) -> u64 {
    splitmix(seed ^ splitmix(stream.wrapping_add(0x9E37_79B9_7F4A_7C15)))
}

fn splitmix(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}
