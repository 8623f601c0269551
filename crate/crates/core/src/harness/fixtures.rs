//! Built-in samples and grid batteries used by the experiments.

use crate::causal_geometry::Event4;
use crate::error::Error;
use crate::event_sampling::{grid_sample, Region, Sample};
use crate::scalar::Scalar;

/// The default four-point fixture: the origin with a future-null, a
/// future-timelike and a spacelike partner. Exercises every relation class
/// minimally; note the null chain `0 → 1 → 2` whose endpoints are timelike.
pub fn four_point_fixture() -> Sample {
    Sample::from_events(vec![
        Event4::from_ints([0, 0, 0, 0]),
        Event4::from_ints([1, 1, 0, 0]),
        Event4::from_ints([2, 0, 0, 0]),
        Event4::from_ints([0, 3, 0, 0]),
    ])
    .expect("fixture events are distinct")
}

/// The origin and one future-null partner.
pub fn two_point_null() -> Sample {
    Sample::from_events(vec![
        Event4::from_ints([0, 0, 0, 0]),
        Event4::from_ints([1, 1, 0, 0]),
    ])
    .expect("fixture events are distinct")
}

/// A single event.
pub fn single_point() -> Sample {
    Sample::from_events(vec![Event4::origin()]).expect("one event")
}

/// `k+1` events on the time axis — a null-free sample.
pub fn time_line(k: usize) -> Sample {
    let region = Region::from_ints([0, 0, 0, 0], [k as i64, 0, 0, 0]).expect("valid region");
    grid_sample(&region, &Scalar::one(), k + 1).expect("within cap")
}

/// The integer hypercube grid with `side` points per axis (`side⁴` events).
pub fn hypercube_grid(side: usize) -> Sample {
    box_grid([side, side, side, side]).expect("hypercube within cap")
}

/// Integer box grid with the given number of points per axis.
pub fn box_grid(shape: [usize; 4]) -> Result<Sample, Error> {
    for s in shape {
        if s == 0 {
            return Err(Error::BadConfig("box shape extents must be >= 1".into()));
        }
    }
    let hi: [i64; 4] = [
        shape[0] as i64 - 1,
        shape[1] as i64 - 1,
        shape[2] as i64 - 1,
        shape[3] as i64 - 1,
    ];
    let region = Region::from_ints([0, 0, 0, 0], hi)?;
    grid_sample(&region, &Scalar::one(), shape.iter().product())
}

/// All box shapes with `lo < n ≤ hi` points, deduplicated up to permutation
/// of the three space axes (the quadratic form is symmetric in them),
/// sorted for determinism.
pub fn box_shapes(lo: usize, hi: usize) -> Vec<[usize; 4]> {
    let mut shapes = Vec::new();
    for t in 1..=hi {
        for a in 1..=hi {
            for b in 1..=a {
                for c in 1..=b {
                    let n = t * a * b * c;
                    if n > lo && n <= hi {
                        shapes.push([t, a, b, c]);
                    }
                }
            }
        }
    }
    shapes.sort();
    shapes
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::continuum_traces::horismos_matrix;

    #[test]
    fn fixture_relations() {
        let rel = horismos_matrix(&four_point_fixture(), false);
        assert_eq!(rel.pair_count(), 2);
    }

    #[test]
    fn grids() {
        assert_eq!(hypercube_grid(2).len(), 16);
        assert_eq!(hypercube_grid(3).len(), 81);
        assert_eq!(time_line(2).len(), 3);
        assert_eq!(box_grid([3, 2, 1, 1]).unwrap().len(), 6);
    }

    #[test]
    fn shapes_dedup_space_axes() {
        let shapes = box_shapes(0, 16);
        assert!(shapes.contains(&[2, 2, 2, 2]));
        assert!(shapes.contains(&[3, 2, 1, 1]));
        // space-permuted duplicates are not enumerated
        assert!(!shapes.contains(&[3, 1, 2, 1]));
        for w in shapes.windows(2) {
            assert!(w[0] < w[1]);
        }
    }
}
