//! Deterministic generation of finite event sets.
//!
//! Grids enumerate lattice points of a box in lexicographic coordinate
//! order. Sprinkles draw coordinates as `k/2^53` rationals from a ChaCha8
//! stream keyed by a SplitMix64 expansion of the seed, so equal
//! `(seed, region, count)` triples reproduce bit-identical samples on any
//! platform. Axis samples place evenly spaced points along a time or space
//! axis.

use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};
use serde::{Deserialize, Serialize};
use std::collections::HashSet;

use crate::causal_geometry::{Axis, Event4};
use crate::error::Error;
use crate::scalar::Scalar;

/// Default event cap for topology-trace experiments.
pub const DEFAULT_TRACE_CAP: usize = 64;
/// Default event cap for pure relation statistics.
pub const DEFAULT_RELATION_CAP: usize = 4096;

/// Denominator exponent for sprinkle coordinates: draws are `k / 2^53`.
pub const SPRINKLE_FRACTION_BITS: u32 = 53;

/// An axis-aligned box `[lo, hi]` in flat spacetime.
///
/// Degenerate axes (`lo_i = hi_i`) are allowed so that lower-dimensional
/// grids such as a pure time line can be described.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Region {
    lo: Event4,
    hi: Event4,
}

impl Region {
    pub fn new(lo: Event4, hi: Event4) -> Result<Self, Error> {
        for i in 0..4 {
            if lo.coord(i) > hi.coord(i) {
                return Err(Error::BadConfig(format!(
                    "region lo > hi on coordinate {i}: {} > {}",
                    lo.coord(i),
                    hi.coord(i)
                )));
            }
        }
        Ok(Region { lo, hi })
    }

    pub fn from_ints(lo: [i64; 4], hi: [i64; 4]) -> Result<Self, Error> {
        Region::new(Event4::from_ints(lo), Event4::from_ints(hi))
    }

    pub fn lo(&self) -> &Event4 {
        &self.lo
    }

    pub fn hi(&self) -> &Event4 {
        &self.hi
    }
}

/// A finite ordered set of distinct events; ids are positions `0..n`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Sample {
    events: Vec<Event4>,
}

impl Sample {
    /// Fails on duplicate events.
    pub fn from_events(events: Vec<Event4>) -> Result<Self, Error> {
        let mut seen = HashSet::new();
        for (i, e) in events.iter().enumerate() {
            if !seen.insert(e.clone()) {
                return Err(Error::InvalidSample(format!(
                    "duplicate event at id {i}: ({})",
                    e.canonical_text()
                )));
            }
        }
        Ok(Sample { events })
    }

    pub fn len(&self) -> usize {
        self.events.len()
    }

    pub fn is_empty(&self) -> bool {
        self.events.is_empty()
    }

    pub fn event(&self, id: usize) -> &Event4 {
        &self.events[id]
    }

    pub fn events(&self) -> &[Event4] {
        &self.events
    }

    pub fn iter(&self) -> impl Iterator<Item = &Event4> {
        self.events.iter()
    }

    pub fn position_of(&self, e: &Event4) -> Option<usize> {
        self.events.iter().position(|x| x == e)
    }

    /// FNV-1a hash of the canonical event list, as fixed-width hex.
    pub fn content_hash(&self) -> String {
        let mut h: u64 = 0xcbf2_9ce4_8422_2325;
        for e in &self.events {
            for byte in e.canonical_text().bytes().chain([b';']) {
                h ^= byte as u64;
                h = h.wrapping_mul(0x1000_0000_01b3);
            }
        }
        format!("{h:016x}")
    }
}

/// All lattice points `lo + spacing·k` inside the region, in lexicographic
/// coordinate order. Errs with `CapExceeded` before materializing an
/// oversized lattice.
pub fn grid_sample(region: &Region, spacing: &Scalar, cap: usize) -> Result<Sample, Error> {
    if !spacing.is_positive() {
        return Err(Error::BadConfig(format!(
            "grid spacing must be > 0, got {spacing}"
        )));
    }
    let mut counts = [0usize; 4];
    for i in 0..4 {
        let extent = region.hi.coord(i) - region.lo.coord(i);
        let steps = (&extent / spacing)
            .floor_to_usize()
            .ok_or_else(|| Error::BadConfig("grid extent overflow".into()))?;
        counts[i] = steps + 1;
    }
    let total = counts
        .iter()
        .try_fold(1usize, |acc, &c| acc.checked_mul(c))
        .ok_or(Error::CapExceeded {
            what: "grid lattice",
            cap,
            actual: usize::MAX,
        })?;
    if total > cap {
        return Err(Error::CapExceeded {
            what: "grid lattice",
            cap,
            actual: total,
        });
    }

    let coord = |i: usize, k: usize| region.lo.coord(i) + &(spacing * &Scalar::from_int(k as i64));
    let mut events = Vec::with_capacity(total);
    for k0 in 0..counts[0] {
        for k1 in 0..counts[1] {
            for k2 in 0..counts[2] {
                for k3 in 0..counts[3] {
                    events.push(Event4::new(
                        coord(0, k0),
                        coord(1, k1),
                        coord(2, k2),
                        coord(3, k3),
                    ));
                }
            }
        }
    }
    Ok(Sample { events })
}

fn splitmix64(state: &mut u64) -> u64 {
    *state = state.wrapping_add(0x9e37_79b9_7f4a_7c15);
    let mut z = *state;
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// ChaCha8 keyed by a SplitMix64 expansion of the seed. The whole generator
/// pipeline is pinned so reports are reproducible across platforms.
pub(crate) fn seeded_rng(seed: u64) -> ChaCha8Rng {
    let mut state = seed;
    let mut key = [0u8; 32];
    for chunk in key.chunks_exact_mut(8) {
        chunk.copy_from_slice(&splitmix64(&mut state).to_le_bytes());
    }
    ChaCha8Rng::from_seed(key)
}

/// `count` events uniform in the region, coordinates `lo + (hi−lo)·k/2^53`
/// with `k` the top 53 bits of one `u64` draw per coordinate.
///
/// Duplicate events are redrawn so the sample is distinct; a bounded number
/// of attempts guards degenerate regions.
pub fn poisson_sprinkle(region: &Region, count: usize, seed: u64) -> Result<Sample, Error> {
    if count == 0 {
        return Err(Error::BadConfig("sprinkle count must be >= 1".into()));
    }
    let mut rng = seeded_rng(seed);
    let extent: Vec<Scalar> = (0..4)
        .map(|i| region.hi.coord(i) - region.lo.coord(i))
        .collect();
    let max_attempts = 64 * count + 1024;
    let mut attempts = 0;
    let mut seen = HashSet::new();
    let mut events = Vec::with_capacity(count);
    while events.len() < count {
        if attempts >= max_attempts {
            return Err(Error::SamplingExhausted { attempts });
        }
        attempts += 1;
        let mut coords = Vec::with_capacity(4);
        for ext in &extent {
            let k = rng.next_u64() >> (64 - SPRINKLE_FRACTION_BITS);
            let t = Scalar::pow2_fraction(k, SPRINKLE_FRACTION_BITS);
            coords.push(ext * &t);
        }
        let e = Event4::new(
            region.lo.coord(0) + &coords[0],
            region.lo.coord(1) + &coords[1],
            region.lo.coord(2) + &coords[2],
            region.lo.coord(3) + &coords[3],
        );
        if seen.insert(e.clone()) {
            events.push(e);
        }
    }
    Ok(Sample { events })
}

/// `count` evenly spaced points `base + t·direction`, `t` from `−span` to
/// `+span` inclusive.
pub fn axis_sample(axis: &Axis, count: usize, span: &Scalar) -> Result<Sample, Error> {
    if count < 2 {
        return Err(Error::BadConfig("axis sample needs count >= 2".into()));
    }
    if !span.is_positive() {
        return Err(Error::BadConfig(format!(
            "axis span must be > 0, got {span}"
        )));
    }
    let steps = Scalar::from_int((count - 1) as i64);
    let mut events = Vec::with_capacity(count);
    for j in 0..count {
        // t = −span + 2·span·j/(count−1)
        let t = -span + &(&(&(span + span) * &Scalar::from_int(j as i64)) / &steps);
        events.push(axis.at(&t));
    }
    Sample::from_events(events)
}

/// Versioned event-set JSON: `{"schema":1,"events":[[[n,d];4],...]}` with
/// ids implicit by order.
#[derive(Serialize, Deserialize, Debug)]
struct EventSetJson {
    schema: u32,
    events: Vec<[[i64; 2]; 4]>,
}

pub const EVENT_SET_SCHEMA: u32 = 1;

/// Serialize a sample to canonical event-set JSON.
///
/// Coordinates must fit `i64` numerator/denominator pairs; every sample the
/// crate generates does.
pub fn sample_to_json(sample: &Sample) -> Result<String, Error> {
    let mut events = Vec::with_capacity(sample.len());
    for e in sample.iter() {
        let mut quad = [[0i64; 2]; 4];
        for i in 0..4 {
            quad[i] = match e.coord(i).to_i64_pair() {
                Some((n, d)) => [n, d],
                None => {
                    return Err(Error::BadConfig(format!(
                        "coordinate {} does not fit the i64 pair encoding",
                        e.coord(i)
                    )))
                }
            };
        }
        events.push(quad);
    }
    Ok(serde_json::to_string(&EventSetJson {
        schema: EVENT_SET_SCHEMA,
        events,
    })?)
}

/// Parse event-set JSON, validating the schema version and distinctness.
pub fn sample_from_json(text: &str) -> Result<Sample, Error> {
    let parsed: EventSetJson = serde_json::from_str(text)?;
    if parsed.schema != EVENT_SET_SCHEMA {
        return Err(Error::BadConfig(format!(
            "unsupported event-set schema {}, expected {EVENT_SET_SCHEMA}",
            parsed.schema
        )));
    }
    let mut events = Vec::with_capacity(parsed.events.len());
    for quad in parsed.events {
        let mut coords = Vec::with_capacity(4);
        for [n, d] in quad {
            coords.push(Scalar::new(n, d)?);
        }
        events.push(Event4::new(
            coords[0].clone(),
            coords[1].clone(),
            coords[2].clone(),
            coords[3].clone(),
        ));
    }
    Sample::from_events(events)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::causal_geometry::{q_form, AxisKind, Displacement};

    fn unit_region() -> Region {
        Region::from_ints([0, 0, 0, 0], [1, 1, 1, 1]).unwrap()
    }

    #[test]
    fn grid_counts() {
        let s = grid_sample(&unit_region(), &Scalar::one(), 4096).unwrap();
        assert_eq!(s.len(), 16);

        let line = Region::from_ints([0, 0, 0, 0], [2, 0, 0, 0]).unwrap();
        let s = grid_sample(&line, &Scalar::one(), 4096).unwrap();
        assert_eq!(s.len(), 3);
        assert_eq!(s.event(1), &Event4::from_ints([1, 0, 0, 0]));

        let s = grid_sample(&unit_region(), &Scalar::from_int(2), 4096).unwrap();
        assert_eq!(s.len(), 1);
    }

    #[test]
    fn grid_cap_and_order() {
        assert!(matches!(
            grid_sample(&unit_region(), &Scalar::one(), 15),
            Err(Error::CapExceeded { actual: 16, .. })
        ));
        let s = grid_sample(&unit_region(), &Scalar::one(), 16).unwrap();
        let mut sorted = s.events().to_vec();
        sorted.sort();
        assert_eq!(s.events(), &sorted[..], "lexicographic enumeration");
    }

    #[test]
    fn grid_contains_null_pair() {
        // a box of side ≥ 2·spacing always contains the offset (s,s,0,0)
        let region = Region::from_ints([0, 0, 0, 0], [2, 2, 0, 0]).unwrap();
        let s = grid_sample(&region, &Scalar::one(), 4096).unwrap();
        let has_null = s.iter().any(|x| {
            s.iter()
                .any(|y| x != y && q_form(&Displacement::between(x, y)).is_zero())
        });
        assert!(has_null);
    }

    #[test]
    fn sprinkle_determinism() {
        let r = unit_region();
        let a = poisson_sprinkle(&r, 5, 42).unwrap();
        let b = poisson_sprinkle(&r, 5, 42).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.len(), 5);
        for e in a.iter() {
            for i in 0..4 {
                assert!(e.coord(i) >= r.lo().coord(i) && e.coord(i) <= r.hi().coord(i));
            }
        }
        let single = poisson_sprinkle(&r, 1, 7).unwrap();
        assert_eq!(single.len(), 1);
    }

    #[test]
    fn sprinkle_degenerate_region_exhausts() {
        let r = Region::from_ints([0, 0, 0, 0], [0, 0, 0, 0]).unwrap();
        assert_eq!(poisson_sprinkle(&r, 1, 3).unwrap().len(), 1);
        assert!(matches!(
            poisson_sprinkle(&r, 2, 3),
            Err(Error::SamplingExhausted { .. })
        ));
    }

    #[test]
    fn axis_samples() {
        let time = Axis::new(
            Event4::origin(),
            Displacement::from_ints([1, 0, 0, 0]),
            AxisKind::Time,
        )
        .unwrap();
        let s = axis_sample(&time, 3, &Scalar::one()).unwrap();
        assert_eq!(
            s.events(),
            &[
                Event4::from_ints([-1, 0, 0, 0]),
                Event4::from_ints([0, 0, 0, 0]),
                Event4::from_ints([1, 0, 0, 0]),
            ]
        );

        let space = Axis::new(
            Event4::origin(),
            Displacement::from_ints([0, 1, 0, 0]),
            AxisKind::Space,
        )
        .unwrap();
        let s = axis_sample(&space, 2, &Scalar::one()).unwrap();
        assert_eq!(
            s.events(),
            &[
                Event4::from_ints([0, -1, 0, 0]),
                Event4::from_ints([0, 1, 0, 0])
            ]
        );
    }

    #[test]
    fn sample_rejects_duplicates() {
        let o = Event4::origin();
        assert!(matches!(
            Sample::from_events(vec![o.clone(), o]),
            Err(Error::InvalidSample(_))
        ));
    }

    #[test]
    fn json_roundtrip_canonical() {
        let s = poisson_sprinkle(&unit_region(), 4, 11).unwrap();
        let json = sample_to_json(&s).unwrap();
        let back = sample_from_json(&json).unwrap();
        assert_eq!(s, back);
        assert_eq!(sample_to_json(&back).unwrap(), json);

        assert!(sample_from_json("{\"schema\":2,\"events\":[]}").is_err());
    }

    #[test]
    fn content_hash_stable() {
        let s = grid_sample(&unit_region(), &Scalar::one(), 16).unwrap();
        assert_eq!(
            s.content_hash(),
            grid_sample(&unit_region(), &Scalar::one(), 16)
                .unwrap()
                .content_hash()
        );
        let t = poisson_sprinkle(&unit_region(), 3, 1).unwrap();
        assert_ne!(s.content_hash(), t.content_hash());
    }
}
