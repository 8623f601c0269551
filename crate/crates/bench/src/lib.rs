//! Shared inputs for the kernel benchmarks.

use horismos_core::event_sampling::{grid_sample, poisson_sprinkle, Region, Sample};
use horismos_core::Scalar;

/// The 3⁴ integer grid (81 events, null-rich).
pub fn grid_3_4() -> Sample {
    let region = Region::from_ints([0, 0, 0, 0], [2, 2, 2, 2]).expect("valid region");
    grid_sample(&region, &Scalar::one(), 4096).expect("within cap")
}

/// A 64-event sprinkle in the unit box.
pub fn sprinkle_64(seed: u64) -> Sample {
    let region = Region::from_ints([0, 0, 0, 0], [1, 1, 1, 1]).expect("valid region");
    poisson_sprinkle(&region, 64, seed).expect("sprinkle succeeds")
}
