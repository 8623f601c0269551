//! Property tests: relation algebra on random events, the finite-topology
//! engine against brute-force oracles on small ground sets, and
//! serialization round trips.

use proptest::prelude::*;

use horismos_core::causal_geometry::{
    causal, chron, classify, euclidean_dist2, horismos, in_ball, in_horismos_ball, in_zeeman_nbhd,
    q_form, ConeClass, Displacement, Event4,
};
use horismos_core::event_sampling::{
    axis_sample, poisson_sprinkle, sample_from_json, sample_to_json, Region, Sample,
};
use horismos_core::finite_topology::{
    base_from_subbase, coarser_eq, equal, generate_full, generated_equal, intersection_base,
    interval_subbase, is_open, subspace_trace, PointSet, RelationMatrix, Role, TopologyBase,
};
use horismos_core::Scalar;

fn scalar() -> impl Strategy<Value = Scalar> {
    (-12i64..=12, 1i64..=4).prop_map(|(n, d)| Scalar::new(n, d).unwrap())
}

/// Integer-lattice events: small coordinates so null pairs are common.
fn lattice_event() -> impl Strategy<Value = Event4> {
    [-3i64..=3, -3i64..=3, -3i64..=3, -3i64..=3].prop_map(Event4::from_ints)
}

fn rational_event() -> impl Strategy<Value = Event4> {
    [scalar(), scalar(), scalar(), scalar()].prop_map(|[a, b, c, d]| Event4::new(a, b, c, d))
}

fn event() -> impl Strategy<Value = Event4> {
    prop_oneof![3 => lattice_event(), 1 => rational_event()]
}

proptest! {
    #[test]
    fn classify_is_total_and_dual(x in event(), y in event()) {
        let fwd = classify(&x, &y);
        let bwd = classify(&y, &x);
        prop_assert_eq!(fwd == ConeClass::Zero, x == y);
        let expected_bwd = match fwd {
            ConeClass::Zero => ConeClass::Zero,
            ConeClass::FutureTimelike => ConeClass::PastTimelike,
            ConeClass::PastTimelike => ConeClass::FutureTimelike,
            ConeClass::FutureNull => ConeClass::PastNull,
            ConeClass::PastNull => ConeClass::FutureNull,
            ConeClass::Spacelike => ConeClass::Spacelike,
        };
        prop_assert_eq!(bwd, expected_bwd);
    }

    #[test]
    fn q_form_is_symmetric(x in event(), y in event()) {
        let q_xy = q_form(&Displacement::between(&x, &y));
        let q_yx = q_form(&Displacement::between(&y, &x));
        prop_assert_eq!(q_xy, q_yx);
    }

    #[test]
    fn order_containments(x in event(), y in event()) {
        let c = chron(&x, &y);
        let h = horismos(&x, &y, false);
        let k = causal(&x, &y);
        prop_assert!(!c || k, "chron must imply causal");
        prop_assert!(!h || k, "horismos must imply causal");
        prop_assert!(!(c && h), "chron and horismos are disjoint");
        prop_assert_eq!(k, x == y || c || h, "causal decomposes");
    }

    /// The engine behind the Z-identity experiments, at predicate level.
    #[test]
    fn pointwise_z_identity(x in event(), y in event(), eps2 in (1i64..=40, 1i64..=4)) {
        let eps2 = Scalar::new(eps2.0, eps2.1).unwrap();
        let direct = in_zeeman_nbhd(&y, &x, &eps2);
        let composed = in_ball(&y, &x, &eps2) && in_horismos_ball(&y, &x);
        prop_assert_eq!(direct, composed);
    }

    /// Chronology composes along constructed timelike steps.
    #[test]
    fn chron_is_transitive_on_timelike_chains(
        x in lattice_event(),
        step1 in [1i64..=4, -2i64..=2, -2i64..=2, -2i64..=2],
        step2 in [1i64..=4, -2i64..=2, -2i64..=2, -2i64..=2],
    ) {
        // force each step strictly inside the future cone:
        // dt = |dx|+|dy|+|dz|+extra dominates the euclidean norm
        let make_step = |s: [i64; 4]| {
            let dt = s[1].abs() + s[2].abs() + s[3].abs() + s[0];
            [dt, s[1], s[2], s[3]]
        };
        let s1 = make_step(step1);
        let s2 = make_step(step2);
        let add = |e: &Event4, s: [i64; 4]| {
            Event4::new(
                e.coord(0) + &Scalar::from_int(s[0]),
                e.coord(1) + &Scalar::from_int(s[1]),
                e.coord(2) + &Scalar::from_int(s[2]),
                e.coord(3) + &Scalar::from_int(s[3]),
            )
        };
        let y = add(&x, s1);
        let z = add(&y, s2);
        prop_assert!(chron(&x, &y));
        prop_assert!(chron(&y, &z));
        prop_assert!(chron(&x, &z));
    }

    #[test]
    fn ball_membership_is_monotone_in_radius(
        x in event(),
        y in event(),
        eps2 in (1i64..=30, 1i64..=3),
        bump in 1i64..=10,
    ) {
        let small = Scalar::new(eps2.0, eps2.1).unwrap();
        let large = &small + &Scalar::from_int(bump);
        if in_ball(&y, &x, &small) {
            prop_assert!(in_ball(&y, &x, &large));
        }
        if in_zeeman_nbhd(&y, &x, &small) {
            prop_assert!(in_zeeman_nbhd(&y, &x, &large));
        }
        let _ = euclidean_dist2(&x, &y);
    }
}

// ---------------------------------------------------------------------------
// finite-topology engine vs brute-force oracles
// ---------------------------------------------------------------------------

/// A random family of subsets on a ground set of 1..=6 points.
fn small_family() -> impl Strategy<Value = (usize, Vec<Vec<bool>>)> {
    (1usize..=6).prop_flat_map(|n| {
        let sets = prop::collection::vec(prop::collection::vec(any::<bool>(), n), 1..=2 * n);
        (Just(n), sets)
    })
}

fn family_to_sets(n: usize, bits: &[Vec<bool>]) -> Vec<PointSet> {
    bits.iter()
        .map(|row| {
            let ids: Vec<usize> = row
                .iter()
                .enumerate()
                .filter_map(|(i, &b)| b.then_some(i))
                .collect();
            PointSet::from_ids(n, &ids)
        })
        .collect()
}

/// Union closure by definition: a candidate `g ⊆ X` is a union of family
/// members iff the union of all members contained in `g` is exactly `g`.
/// Checks every one of the `2^n` candidates.
fn brute_union_closure(n: usize, family: &[PointSet]) -> Vec<PointSet> {
    let mut opens = Vec::new();
    for mask in 0u64..(1 << n) {
        let ids: Vec<usize> = (0..n).filter(|i| mask >> i & 1 == 1).collect();
        let g = PointSet::from_ids(n, &ids);
        let mut u = PointSet::empty(n);
        for s in family {
            if s.is_subset(&g) {
                u.union_with(s);
            }
        }
        if u == g {
            opens.push(g);
        }
    }
    opens.sort();
    opens
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn base_from_subbase_is_idempotent((n, bits) in small_family()) {
        let sb = TopologyBase::new(n, Role::Subbase, family_to_sets(n, &bits));
        let once = base_from_subbase(&sb);
        let twice = base_from_subbase(&once.as_subbase());
        prop_assert_eq!(once, twice);
    }

    /// `is_open` agrees with full enumeration, and `generate_full` agrees
    /// with the power-set union closure.
    #[test]
    fn is_open_matches_generate_full((n, bits) in small_family(), probe in prop::collection::vec(any::<bool>(), 6)) {
        let family = family_to_sets(n, &bits);
        let base = TopologyBase::new(n, Role::Base, family.clone());
        let opens = generate_full(&base, 6).unwrap();
        let brute = brute_union_closure(n, base.family());
        prop_assert_eq!(&opens, &brute);

        let ids: Vec<usize> = probe.iter().take(n).enumerate().filter_map(|(i, &b)| b.then_some(i)).collect();
        let g = PointSet::from_ids(n, &ids);
        prop_assert_eq!(is_open(&g, &base), opens.contains(&g));
    }

    /// coarser_eq is a preorder and detects exactly containment of the
    /// generated open families.
    #[test]
    fn coarser_eq_is_containment_of_opens((n, b1) in small_family(), b2 in prop::collection::vec(prop::collection::vec(any::<bool>(), 6), 1..=8)) {
        let t1 = base_from_subbase(&TopologyBase::new(n, Role::Subbase, family_to_sets(n, &b1)));
        let sets2: Vec<PointSet> = b2
            .iter()
            .map(|row| {
                let ids: Vec<usize> = row.iter().take(n).enumerate().filter_map(|(i, &b)| b.then_some(i)).collect();
                PointSet::from_ids(n, &ids)
            })
            .collect();
        let t2 = base_from_subbase(&TopologyBase::new(n, Role::Subbase, sets2));

        prop_assert!(coarser_eq(&t1, &t1).unwrap());
        let o1 = generate_full(&t1, 6).unwrap();
        let o2 = generate_full(&t2, 6).unwrap();
        let contained = o1.iter().all(|u| o2.contains(u));
        prop_assert_eq!(coarser_eq(&t1, &t2).unwrap(), contained);
        prop_assert_eq!(equal(&t1, &t2).unwrap(), o1 == o2);
        // minimal-neighborhood comparison agrees with the closed-base route
        prop_assert_eq!(
            generated_equal(&t1.as_subbase(), &t2.as_subbase()).unwrap(),
            o1 == o2
        );
    }

    /// The intersection-topology base generates exactly the union closure of
    /// `{U1 ∩ U2}` (the defining property).
    #[test]
    fn intersection_base_matches_definition((n, b1) in small_family(), b2 in prop::collection::vec(prop::collection::vec(any::<bool>(), 6), 1..=8)) {
        let t1 = base_from_subbase(&TopologyBase::new(n, Role::Subbase, family_to_sets(n, &b1)));
        let sets2: Vec<PointSet> = b2
            .iter()
            .map(|row| {
                let ids: Vec<usize> = row.iter().take(n).enumerate().filter_map(|(i, &b)| b.then_some(i)).collect();
                PointSet::from_ids(n, &ids)
            })
            .collect();
        let t2 = base_from_subbase(&TopologyBase::new(n, Role::Subbase, sets2));

        let o1 = generate_full(&t1, 6).unwrap();
        let o2 = generate_full(&t2, 6).unwrap();
        let mut pairwise = Vec::new();
        for u1 in &o1 {
            for u2 in &o2 {
                pairwise.push(u1.intersect(u2));
            }
        }
        let oracle = brute_union_closure(n, &pairwise);

        let bint = intersection_base(&t1, &t2).unwrap();
        let implementation = generate_full(&bint, 6).unwrap();
        prop_assert_eq!(implementation, oracle);
    }

    /// Perturbing an intersection base by a non-open set changes the
    /// generated topology and equal() detects it; adding an open set does
    /// not.
    #[test]
    fn equal_detects_perturbation((n, b1) in small_family(), probe in prop::collection::vec(any::<bool>(), 6)) {
        let t1 = base_from_subbase(&TopologyBase::new(n, Role::Subbase, family_to_sets(n, &b1)));
        let bint = intersection_base(&t1, &t1).unwrap();
        let ids: Vec<usize> = probe.iter().take(n).enumerate().filter_map(|(i, &b)| b.then_some(i)).collect();
        let g = PointSet::from_ids(n, &ids);
        let mut fam = bint.family().to_vec();
        fam.push(g.clone());
        let perturbed = TopologyBase::new(n, Role::Base, fam);
        prop_assert_eq!(equal(&bint, &perturbed).unwrap(), is_open(&g, &bint));
    }

    /// Traces commute with full generation: opens of the subspace are
    /// exactly the restricted opens.
    #[test]
    fn subspace_trace_matches_restricted_opens((n, bits) in small_family(), sub in prop::collection::vec(any::<bool>(), 6)) {
        let base = TopologyBase::new(n, Role::Base, family_to_sets(n, &bits));
        let ids: Vec<usize> = sub.iter().take(n).enumerate().filter_map(|(i, &b)| b.then_some(i)).collect();
        let s = PointSet::from_ids(n, &ids);
        let traced = subspace_trace(&base, &s);
        if s.is_empty() {
            return Ok(());
        }
        let m = s.count();
        let rank: std::collections::HashMap<usize, usize> =
            s.iter().enumerate().map(|(r, id)| (id, r)).collect();
        let restrict = |u: &PointSet| {
            let mut t = PointSet::empty(m);
            for p in u.intersect(&s).iter() {
                t.insert(rank[&p]);
            }
            t
        };
        let opens_full = generate_full(&base, 6).unwrap();
        let mut expected: Vec<PointSet> = opens_full.iter().map(restrict).collect();
        expected.sort();
        expected.dedup();
        let mut got = generate_full(&traced, 6).unwrap();
        got.sort();
        prop_assert_eq!(got, expected);
    }

    /// The interval topology of an irreflexive total order is discrete.
    #[test]
    fn chain_interval_topology_is_discrete(n in 1usize..=10) {
        let rel = RelationMatrix::from_fn(n, |i, j| i < j);
        let base = base_from_subbase(&interval_subbase(&rel));
        for p in 0..n {
            prop_assert!(base.family().contains(&PointSet::singleton(n, p)));
        }
    }
}

// ---------------------------------------------------------------------------
// sampling and serialization
// ---------------------------------------------------------------------------

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn sprinkle_is_deterministic(seed in any::<u64>(), count in 1usize..=24) {
        let region = Region::from_ints([0, 0, 0, 0], [1, 1, 1, 1]).unwrap();
        let a = poisson_sprinkle(&region, count, seed).unwrap();
        let b = poisson_sprinkle(&region, count, seed).unwrap();
        prop_assert_eq!(&a, &b);
        prop_assert_eq!(a.len(), count);
    }

    #[test]
    fn event_set_json_roundtrip(seed in any::<u64>(), count in 1usize..=16) {
        let region = Region::from_ints([-2, -2, -2, -2], [3, 3, 3, 3]).unwrap();
        let sample = poisson_sprinkle(&region, count, seed).unwrap();
        let json = sample_to_json(&sample).unwrap();
        let back = sample_from_json(&json).unwrap();
        prop_assert_eq!(&sample, &back);
        prop_assert_eq!(sample_to_json(&back).unwrap(), json);
    }

    #[test]
    fn axis_samples_are_deterministic_and_distinct(count in 2usize..=9, span in 1i64..=5) {
        use horismos_core::causal_geometry::{Axis, AxisKind};
        let axis = Axis::new(
            Event4::from_ints([1, 2, 0, 0]),
            Displacement::from_ints([3, 1, 0, 0]),
            AxisKind::Time,
        )
        .unwrap();
        let span = Scalar::from_int(span);
        let a = axis_sample(&axis, count, &span).unwrap();
        let b = axis_sample(&axis, count, &span).unwrap();
        prop_assert_eq!(&a, &b);
        prop_assert_eq!(a.len(), count);
    }
}

/// The grid null-pair guarantee: boxes of side ≥ 2·spacing contain the
/// offset (spacing, spacing, 0, 0).
#[test]
fn grid_null_pair_richness() {
    use horismos_core::event_sampling::grid_sample;
    for side in 2i64..=4 {
        let region = Region::from_ints([0, 0, 0, 0], [side, side, 0, 0]).unwrap();
        let s = grid_sample(&region, &Scalar::one(), 4096).unwrap();
        let has_null = s.iter().any(|x| s.iter().any(|y| horismos(x, y, false)));
        assert!(has_null, "side {side}");
    }
}

/// Distinct samples hash differently, equal samples identically.
#[test]
fn sample_hash_separates() {
    let region = Region::from_ints([0, 0, 0, 0], [1, 1, 1, 1]).unwrap();
    let a = poisson_sprinkle(&region, 8, 1).unwrap();
    let b = poisson_sprinkle(&region, 8, 2).unwrap();
    assert_ne!(a.content_hash(), b.content_hash());
    assert_eq!(
        a.content_hash(),
        poisson_sprinkle(&region, 8, 1).unwrap().content_hash()
    );
}

/// Sample equality is order-sensitive (ids are positions).
#[test]
fn sample_ids_are_positions() {
    let e0 = Event4::from_ints([0, 0, 0, 0]);
    let e1 = Event4::from_ints([1, 0, 0, 0]);
    let a = Sample::from_events(vec![e0.clone(), e1.clone()]).unwrap();
    let b = Sample::from_events(vec![e1, e0]).unwrap();
    assert_ne!(a, b);
    assert_eq!(a.position_of(a.event(1)), Some(1));
}
