//! Deterministic per-trial random streams.
//!
//! Every trial owns a ChaCha8 stream keyed by `(master_seed, grid_index, trial_index)`,
//! so results do not depend on how trials are scheduled across workers.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub type TrialRng = ChaCha8Rng;

#[inline]
pub fn splitmix64(mut x: u64) -> u64 {
    x = x.wrapping_add(0x9E37_79B9_7F4A_7C15);
    x = (x ^ (x >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    x = (x ^ (x >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    x ^ (x >> 31)
}

pub fn trial_seed(master: u64, grid_index: u64, trial_index: u64) -> u64 {
    splitmix64(splitmix64(splitmix64(master) ^ grid_index) ^ trial_index.rotate_left(17))
}

pub fn trial_rng(master: u64, grid_index: u64, trial_index: u64) -> TrialRng {
    ChaCha8Rng::seed_from_u64(trial_seed(master, grid_index, trial_index))
}
