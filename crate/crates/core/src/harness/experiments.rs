//! The named experiments and the run dispatcher.
//!
//! Each experiment aggregates a battery of samples into one verdict; a
//! config-supplied sample source replaces the battery where that makes
//! sense. Assertive experiments fail with a re-checkable counterexample;
//! report-only experiments never fail.

use rand_core::RngCore;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::causal_geometry::{
    causal, chron, classify, horismos, in_ball, in_horismos_ball, in_zeeman_nbhd, q_form, Axis,
    AxisKind, ConeClass, Displacement, Event4,
};
use crate::continuum_traces::{
    axis_probe, for_each_ball_scaled, horismos_ball_trace_with, horismos_matrix, zeeman_trace_with,
    RadiusPolicy, SampleGeometry, ScaledPolicy,
};
use crate::error::Error;
use crate::event_sampling::{poisson_sprinkle, seeded_rng, Region, Sample};
use crate::finite_topology::{
    base_from_subbase, coarser_eq, coarser_eq_witness, equal, generate_full, generated_equal,
    intersection_base, interval_subbase, is_open, minimal_neighborhoods, PointSet, RelationMatrix,
    Role, TopologyBase,
};
use crate::harness::config::{ExperimentConfig, ExperimentId};
use crate::harness::fixtures;
use crate::harness::verdict::{Counterexample, Status, Verdict};
use crate::scalar::Scalar;

/// Upper bound for topology-comparison inputs; beyond this the closed
/// interval base can explode combinatorially.
pub const TOPOLOGY_COMPARE_MAX_POINTS: usize = 32;
/// Ground-set tier on which full open families are enumerated and compared.
pub const FULL_ENUMERATION_TIER: usize = 16;

// ---------------------------------------------------------------------------
// per-sample checks
// ---------------------------------------------------------------------------

/// One sample's result inside an experiment battery.
pub struct SampleOutcome {
    pub label: String,
    pub hash: String,
    pub n: usize,
    pub ok: bool,
    pub info: Value,
    pub counterexample: Option<Counterexample>,
}

impl SampleOutcome {
    fn entry(&self) -> Value {
        json!({
            "label": self.label,
            "hash": self.hash,
            "n": self.n,
            "ok": self.ok,
            "info": self.info,
        })
    }
}

fn aggregate(experiment: ExperimentId, outcomes: Vec<SampleOutcome>) -> Verdict {
    let all_ok = outcomes.iter().all(|o| o.ok);
    let first_cx = outcomes.iter().find_map(|o| o.counterexample.clone());
    let details =
        json!({ "samples": outcomes.iter().map(SampleOutcome::entry).collect::<Vec<_>>() });
    match (all_ok, first_cx) {
        (true, _) => Verdict::pass(experiment.name(), details),
        (false, Some(cx)) => Verdict::fail(experiment.name(), details, cx),
        (false, None) => Verdict::fail(
            experiment.name(),
            details,
            Counterexample {
                kind: "unspecified".into(),
                sample_hash: String::new(),
                claim: "a sample failed without a pointwise counterexample".into(),
                center: None,
                eps2: None,
                point: None,
                set: None,
            },
        ),
    }
}

/// Cone partition: for every `x` the three cones meet pairwise exactly in
/// `{x}` and cover the sample. Generic over the classifier so tests can
/// inject a faulty one.
pub fn check_cone_partition(
    sample: &Sample,
    label: &str,
    classifier: &dyn Fn(&Event4, &Event4) -> ConeClass,
) -> SampleOutcome {
    let n = sample.len();
    let hash = sample.content_hash();
    let mut counterexample = None;
    'outer: for i in 0..n {
        for j in 0..n {
            let cls = classifier(sample.event(i), sample.event(j));
            let violation = if i == j {
                // the apex must land in all three cones, i.e. classify as Zero
                cls != ConeClass::Zero
            } else {
                // any other point must land in exactly one cone class
                cls == ConeClass::Zero
            };
            if violation {
                counterexample = Some(Counterexample {
                    kind: "cone-partition".into(),
                    sample_hash: hash.clone(),
                    claim: format!(
                        "cones C^T, C^L, C^S of event {i} must intersect pairwise in {{{i}}} and cover the sample; event {j} breaks the partition"
                    ),
                    center: Some(i),
                    eps2: None,
                    point: Some(j),
                    set: None,
                });
                break 'outer;
            }
        }
    }
    SampleOutcome {
        label: label.to_string(),
        hash,
        n,
        ok: counterexample.is_none(),
        info: json!({ "ordered_pairs": n * n.saturating_sub(1) }),
        counterexample,
    }
}

/// The three relations an order-containment check runs on; injectable for
/// fault-injection self-tests.
pub struct OrderPredicates<'a> {
    pub chron: &'a dyn Fn(&Event4, &Event4) -> bool,
    pub causal: &'a dyn Fn(&Event4, &Event4) -> bool,
    pub horismos: &'a dyn Fn(&Event4, &Event4, bool) -> bool,
}

impl Default for OrderPredicates<'_> {
    fn default() -> Self {
        OrderPredicates {
            chron: &chron,
            causal: &causal,
            horismos: &horismos,
        }
    }
}

/// Containment, disjointness, decomposition and (ir)reflexivity of the three
/// causal relations, over all ordered pairs.
pub fn check_order_containments(
    sample: &Sample,
    label: &str,
    rels: &OrderPredicates,
) -> SampleOutcome {
    let n = sample.len();
    let hash = sample.content_hash();
    let mut counterexample = None;
    let fail = |i: usize, j: usize, claim: String, hash: &str| Counterexample {
        kind: "order-containment".into(),
        sample_hash: hash.to_string(),
        claim,
        center: Some(i),
        eps2: None,
        point: Some(j),
        set: None,
    };
    'outer: for i in 0..n {
        for j in 0..n {
            let x = sample.event(i);
            let y = sample.event(j);
            let c = (rels.chron)(x, y);
            let h = (rels.horismos)(x, y, false);
            let hr = (rels.horismos)(x, y, true);
            let k = (rels.causal)(x, y);
            let claim = if i == j {
                if c {
                    Some("chronological order must be irreflexive")
                } else if !k {
                    Some("causal order must be reflexive")
                } else if h {
                    Some("irreflexive horismos must not relate an event to itself")
                } else if !hr {
                    Some("reflexive horismos must relate an event to itself")
                } else {
                    None
                }
            } else if c && !k {
                Some("chron(x,y) must imply causal(x,y)")
            } else if h && !k {
                Some("horismos(x,y) must imply causal(x,y)")
            } else if c && h {
                Some("chron(x,y) and horismos(x,y) are mutually exclusive")
            } else if k != (c || h) {
                Some("causal(x,y) must decompose as y=x or chron or horismos")
            } else if h != hr {
                Some("the two horismos conventions may differ only on the diagonal")
            } else if k && (rels.causal)(y, x) {
                Some("the causal order must be antisymmetric")
            } else {
                None
            };
            if let Some(claim) = claim {
                counterexample = Some(fail(i, j, claim.to_string(), &hash));
                break 'outer;
            }
            // Q symmetry, checked once per unordered pair
            if i < j {
                let q_xy = q_form(&Displacement::between(x, y));
                let q_yx = q_form(&Displacement::between(y, x));
                if q_xy != q_yx {
                    counterexample =
                        Some(fail(i, j, "Q(y−x) must equal Q(x−y)".to_string(), &hash));
                    break 'outer;
                }
            }
        }
    }
    SampleOutcome {
        label: label.to_string(),
        hash,
        n,
        ok: counterexample.is_none(),
        info: json!({ "ordered_pairs": n * n.saturating_sub(1) }),
        counterexample,
    }
}

/// Z-identity on one sample: pointwise `Z_ε(x)∩s = (B_ε(x)∩s) ∩ (A(x)∩s)`
/// for every center and policy radius, plus base-level equality of the
/// Zeeman trace with the intersection base of the Euclidean and
/// horismos-ball traces.
pub fn check_z_identity(sample: &Sample, label: &str) -> Result<SampleOutcome, Error> {
    let n = sample.len();
    let hash = sample.content_hash();
    let geom = SampleGeometry::new(sample);
    let policy = ScaledPolicy::from_geometry(&geom);
    let a_rows: Vec<PointSet> = (0..n).map(|i| geom.horismos_ball_row(i)).collect();

    // Pointwise identity. The Zeeman side applies the combined membership
    // test (inside the ball, off the null cone) to each point as it enters
    // the ball; the other side intersects the ball mask with the
    // horismos-ball row.
    let mut counterexample: Option<Counterexample> = None;
    let mut z_family: Vec<PointSet> = Vec::new();
    let mut e_family: Vec<PointSet> = Vec::new();
    let mut z_current = PointSet::empty(n);
    let mut last_center = usize::MAX;
    let mut checked = 0usize;
    for_each_ball_scaled(&geom, &policy, |center, idx, ball, added| {
        if center != last_center {
            z_current = PointSet::empty(n);
            last_center = center;
        }
        for &y in added {
            if y == center || geom.qsign(center, y) != 0 {
                z_current.insert(y);
            }
        }
        let decomposed = ball.intersect(&a_rows[center]);
        checked += 1;
        if counterexample.is_none() && z_current != decomposed {
            let eps2 = policy.value_scalar(&geom, idx);
            let diff = z_current
                .union(&decomposed)
                .difference(&z_current.intersect(&decomposed));
            let point = diff.iter().next();
            counterexample = Some(Counterexample {
                kind: "z-identity".into(),
                sample_hash: hash.clone(),
                claim: format!(
                    "Z_ε(x)∩s must equal (B_ε(x)∩s) ∩ (A(x)∩s) at center {center}, ε² = {eps2}"
                ),
                center: Some(center),
                eps2: Some(eps2.to_string()),
                point,
                set: Some(z_current.ids()),
            });
        }
        if e_family.last() != Some(ball) {
            e_family.push(ball.clone());
        }
        let z = decomposed;
        if z_family.last() != Some(&z) {
            z_family.push(z);
        }
    });

    // Small samples additionally re-derive every membership through the
    // public predicates, so the mask routes cannot drift from the semantics.
    let mut predicate_checked = false;
    if n <= FULL_ENUMERATION_TIER && counterexample.is_none() {
        predicate_checked = true;
        let scalar_policy = RadiusPolicy::from_geometry(&geom);
        'outer: for i in 0..n {
            for eps2 in scalar_policy.values() {
                for j in 0..n {
                    let x = sample.event(i);
                    let y = sample.event(j);
                    let direct = in_zeeman_nbhd(y, x, eps2);
                    let composed = in_ball(y, x, eps2) && in_horismos_ball(y, x);
                    if direct != composed {
                        counterexample = Some(Counterexample {
                            kind: "z-identity".into(),
                            sample_hash: hash.clone(),
                            claim: format!(
                                "in_zeeman_nbhd must agree with in_ball ∧ in_horismos_ball at ε² = {eps2}"
                            ),
                            center: Some(i),
                            eps2: Some(eps2.to_string()),
                            point: Some(j),
                            set: None,
                        });
                        break 'outer;
                    }
                }
            }
        }
    }

    // Base level: the Zeeman trace generates exactly the intersection
    // topology of the Euclidean and horismos-ball traces.
    let z_tr = TopologyBase::new(n, Role::Base, z_family);
    let e_tr = TopologyBase::new(n, Role::Base, e_family);
    let a_tr = TopologyBase::new(n, Role::Base, a_rows);
    let inter = intersection_base(&e_tr, &a_tr)?;
    let base_equal = equal(&z_tr, &inter)?;
    if counterexample.is_none() && !base_equal {
        let w = coarser_eq_witness(&z_tr, &inter)?
            .or(coarser_eq_witness(&inter, &z_tr)?)
            .expect("unequal topologies must yield a witness");
        counterexample = Some(Counterexample {
            kind: "z-identity-base".into(),
            sample_hash: hash.clone(),
            claim: "zeeman trace must generate the intersection topology of the euclidean and horismos-ball traces".into(),
            center: None,
            eps2: None,
            point: Some(w.point),
            set: Some(w.set.ids()),
        });
    }

    Ok(SampleOutcome {
        label: label.to_string(),
        hash,
        n,
        ok: counterexample.is_none(),
        info: json!({
            "policy_len": policy.len(),
            "pointwise_checks": checked,
            "predicate_tier": predicate_checked,
            "base_equal": base_equal,
            "zeeman_family": z_tr.len(),
            "euclidean_family": e_tr.len(),
            "intersection_family": inter.len(),
        }),
        counterexample,
    })
}

/// Horismos-ball-base claim on one sample: the interval topology of the
/// irreflexive horismos equals the topology generated by the horismos
/// balls `A(x)`.
///
/// Compared via minimal neighborhoods (exact for finite topologies); on
/// small samples the closed bases and the full open families are compared
/// as well. The claim is a theorem of the continuum but not of finite
/// samples — it fails on box grids with time extent ≥ 3, and the
/// counterexample then names a point whose minimal interval-neighborhood
/// the `A(x)` family cannot generate.
pub fn check_horismos_ball_base(sample: &Sample, label: &str) -> Result<SampleOutcome, Error> {
    let n = sample.len();
    if n > TOPOLOGY_COMPARE_MAX_POINTS {
        return Err(Error::CapExceeded {
            what: "horismos-ball-base sample",
            cap: TOPOLOGY_COMPARE_MAX_POINTS,
            actual: n,
        });
    }
    let hash = sample.content_hash();
    let rel = horismos_matrix(sample, false);
    let sb_in = interval_subbase(&rel);
    let a_fam = horismos_ball_trace_with(&SampleGeometry::new(sample));
    let sb_a = a_fam.as_subbase();

    let eq_min = generated_equal(&sb_in, &sb_a)?;
    let mut full_compared = false;
    let mut counterexample = None;

    if n <= FULL_ENUMERATION_TIER {
        full_compared = true;
        let t_in = base_from_subbase(&sb_in);
        let t_a = base_from_subbase(&sb_a);
        let eq_base = equal(&t_in, &t_a)?;
        let full_in = generate_full(&t_in, FULL_ENUMERATION_TIER)?;
        let full_a = generate_full(&t_a, FULL_ENUMERATION_TIER)?;
        let eq_full = full_in == full_a;
        if eq_base != eq_min || eq_full != eq_min {
            return Err(Error::BadConfig(format!(
                "internal inconsistency comparing topologies on {label}: min={eq_min} base={eq_base} full={eq_full}"
            )));
        }
        if !eq_min {
            let w = coarser_eq_witness(&t_in, &t_a)?
                .or(coarser_eq_witness(&t_a, &t_in)?)
                .expect("unequal topologies must yield a witness");
            counterexample = Some(Counterexample {
                kind: "horismos-ball-base".into(),
                sample_hash: hash.clone(),
                claim: "the interval topology of irreflexive horismos must equal the topology generated by the horismos balls A(x)".into(),
                center: None,
                eps2: None,
                point: Some(w.point),
                set: Some(w.set.ids()),
            });
        }
    } else if !eq_min {
        let u_in = minimal_neighborhoods(&sb_in);
        let u_a = minimal_neighborhoods(&sb_a);
        let p = (0..n)
            .find(|&p| u_in[p] != u_a[p])
            .expect("some neighborhood differs");
        counterexample = Some(Counterexample {
            kind: "horismos-ball-base".into(),
            sample_hash: hash.clone(),
            claim: format!(
                "minimal T_in-neighborhood of point {p} is {:?} but the A(x) family generates {:?}",
                u_in[p].ids(),
                u_a[p].ids()
            ),
            center: None,
            eps2: None,
            point: Some(p),
            set: Some(u_in[p].ids()),
        });
    }

    Ok(SampleOutcome {
        label: label.to_string(),
        hash,
        n,
        ok: eq_min,
        info: json!({
            "null_pairs": rel.pair_count(),
            "subbase_len": sb_in.len(),
            "a_family_len": a_fam.len(),
            "full_topology_compared": full_compared,
        }),
        counterexample,
    })
}

/// E coarser than Z on one sample, with constructive witnesses: for every
/// Euclidean base element `g` and point `p ∈ g`, the policy radius
/// `δ² = min{d²(p,y) : y ∉ g}` gives `p ∈ Z_δ(p)∩s ⊆ g`. Cross-checked with
/// the generic base-criterion comparison.
pub fn check_e_coarser_z(sample: &Sample, label: &str) -> Result<SampleOutcome, Error> {
    let n = sample.len();
    let hash = sample.content_hash();
    let geom = SampleGeometry::new(sample);
    let policy = ScaledPolicy::from_geometry(&geom);
    let a_rows: Vec<PointSet> = (0..n).map(|i| geom.horismos_ball_row(i)).collect();
    let (e_tr, z_tr) = {
        let mut e_family: Vec<PointSet> = Vec::new();
        let mut z_family: Vec<PointSet> = Vec::new();
        for_each_ball_scaled(&geom, &policy, |center, _, ball, _| {
            if e_family.last() != Some(ball) {
                e_family.push(ball.clone());
            }
            let z = ball.intersect(&a_rows[center]);
            if z_family.last() != Some(&z) {
                z_family.push(z);
            }
        });
        (
            TopologyBase::new(n, Role::Base, e_family),
            TopologyBase::new(n, Role::Base, z_family),
        )
    };

    let mut counterexample = None;
    let mut witnesses = 0usize;
    'outer: for g in e_tr.family() {
        for p in g.iter() {
            // δ² = the distance to the nearest point outside g: a policy
            // member (it is a pairwise squared distance), and the ball it
            // cuts at p stays inside g by construction of the minimum.
            // In policy scale (ε²·2L²) the distance d²·L² maps to 2·d²·L².
            let delta2_policy_num = match geom.min_outside(p, g) {
                Some((_, d)) => d * 2,
                // g is the whole sample; the largest policy radius works
                None => policy.max_num().clone(),
            };
            let z_witness = geom
                .ball_mask_policy_num(p, &delta2_policy_num)
                .intersect(&a_rows[p]);
            witnesses += 1;
            if !(z_witness.contains(p) && z_witness.is_subset(g)) {
                let delta2 = geom
                    .min_dist2_outside(p, g)
                    .map(|d| d.to_string())
                    .unwrap_or_else(|| "max".into());
                counterexample = Some(Counterexample {
                    kind: "e-coarser-z".into(),
                    sample_hash: hash.clone(),
                    claim: format!(
                        "Z_δ(p)∩s with δ² = {delta2} must witness openness of the euclidean base element at point {p}"
                    ),
                    center: Some(p),
                    eps2: Some(delta2),
                    point: Some(p),
                    set: Some(g.ids()),
                });
                break 'outer;
            }
        }
    }

    // independent generic route
    let generic = coarser_eq(&e_tr, &z_tr)?;
    if counterexample.is_none() && !generic {
        let w = coarser_eq_witness(&e_tr, &z_tr)?.expect("failure implies witness");
        counterexample = Some(Counterexample {
            kind: "e-coarser-z".into(),
            sample_hash: hash.clone(),
            claim: "every euclidean base element must be open in the zeeman trace".into(),
            center: None,
            eps2: None,
            point: Some(w.point),
            set: Some(w.set.ids()),
        });
    }

    Ok(SampleOutcome {
        label: label.to_string(),
        hash,
        n,
        ok: counterexample.is_none(),
        info: json!({
            "euclidean_family": e_tr.len(),
            "zeeman_family": z_tr.len(),
            "constructive_witnesses": witnesses,
            "generic_route": generic,
        }),
        counterexample,
    })
}

// ---------------------------------------------------------------------------
// experiments
// ---------------------------------------------------------------------------

fn battery(
    config: &ExperimentConfig,
    default: Vec<(String, Sample)>,
) -> Result<Vec<(String, Sample)>, Error> {
    match &config.source {
        Some(source) => {
            let sample = source.load(config.relation_cap)?;
            Ok(vec![(source.describe(), sample)])
        }
        None => Ok(default),
    }
}

fn sprinkle_battery(
    config: &ExperimentConfig,
    count: usize,
) -> Result<Vec<(String, Sample)>, Error> {
    let region = Region::from_ints([0, 0, 0, 0], [1, 1, 1, 1])?;
    let mut out = Vec::with_capacity(count);
    for t in 0..count {
        let seed = config.seed.wrapping_add(t as u64);
        out.push((
            format!("sprinkle n=64 seed={seed}"),
            poisson_sprinkle(&region, 64, seed)?,
        ));
    }
    Ok(out)
}

pub fn exp_cone_partition(config: &ExperimentConfig) -> Result<Verdict, Error> {
    let samples = battery(
        config,
        vec![
            ("fixture4".into(), fixtures::four_point_fixture()),
            ("single-point".into(), fixtures::single_point()),
            ("grid 3^4".into(), fixtures::hypercube_grid(3)),
        ],
    )?;
    let outcomes = samples
        .iter()
        .map(|(label, s)| check_cone_partition(s, label, &classify))
        .collect();
    Ok(aggregate(ExperimentId::ConePartition, outcomes))
}

pub fn exp_order_containments(config: &ExperimentConfig) -> Result<Verdict, Error> {
    let samples = battery(
        config,
        vec![
            ("fixture4".into(), fixtures::four_point_fixture()),
            ("single-point".into(), fixtures::single_point()),
            ("grid 3^4".into(), fixtures::hypercube_grid(3)),
        ],
    )?;
    let rels = OrderPredicates::default();
    let outcomes = samples
        .iter()
        .map(|(label, s)| check_order_containments(s, label, &rels))
        .collect();
    Ok(aggregate(ExperimentId::OrderContainments, outcomes))
}

pub fn exp_z_identity(config: &ExperimentConfig) -> Result<Verdict, Error> {
    let mut samples = battery(
        config,
        vec![
            ("fixture4".into(), fixtures::four_point_fixture()),
            ("two-point-null".into(), fixtures::two_point_null()),
            ("grid 2^4".into(), fixtures::hypercube_grid(2)),
            ("grid 3^4".into(), fixtures::hypercube_grid(3)),
        ],
    )?;
    if config.source.is_none() {
        samples.extend(sprinkle_battery(config, config.z_identity_sprinkles)?);
    }
    let outcomes = samples
        .iter()
        .map(|(label, s)| check_z_identity(s, label))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(aggregate(ExperimentId::ZIdentity, outcomes))
}

pub fn exp_horismos_ball_base(config: &ExperimentConfig) -> Result<Verdict, Error> {
    let samples = battery(
        config,
        vec![
            ("two-point-null".into(), fixtures::two_point_null()),
            ("grid 2^4".into(), fixtures::hypercube_grid(2)),
            ("time-line (null-free)".into(), fixtures::time_line(2)),
            ("single-point".into(), fixtures::single_point()),
        ],
    )?;
    let outcomes = samples
        .iter()
        .map(|(label, s)| check_horismos_ball_base(s, label))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(aggregate(ExperimentId::HorismosBallBase, outcomes))
}

pub fn exp_e_coarser_z(config: &ExperimentConfig) -> Result<Verdict, Error> {
    let mut samples = battery(
        config,
        vec![
            ("fixture4".into(), fixtures::four_point_fixture()),
            ("two-point-null".into(), fixtures::two_point_null()),
            ("grid 2^4".into(), fixtures::hypercube_grid(2)),
            ("grid 3^4".into(), fixtures::hypercube_grid(3)),
            ("single-point".into(), fixtures::single_point()),
        ],
    )?;
    if config.source.is_none() {
        samples.extend(sprinkle_battery(config, config.e_coarser_sprinkles)?);
    }
    let outcomes = samples
        .iter()
        .map(|(label, s)| check_e_coarser_z(s, label))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(aggregate(ExperimentId::ECoarserZ, outcomes))
}

/// Random bases on small ground sets, their intersection base, and the
/// brute-force union-closure oracle from the definition of the intersection
/// topology.
pub fn exp_intersection_base(config: &ExperimentConfig) -> Result<Verdict, Error> {
    let mut rng = seeded_rng(config.seed.wrapping_mul(0x9e37_79b9).wrapping_add(32));
    let mut counterexample = None;
    let trials = config.intersection_trials;
    for trial in 0..trials {
        let n = 1 + (rng.next_u64() % 6) as usize;
        let b1 = random_base(&mut rng, n);
        let b2 = random_base(&mut rng, n);

        let t1 = generate_full(&b1, 6)?;
        let t2 = generate_full(&b2, 6)?;
        let mut pairwise = Vec::with_capacity(t1.len() * t2.len());
        for u1 in &t1 {
            for u2 in &t2 {
                pairwise.push(u1.intersect(u2));
            }
        }
        let oracle_base = TopologyBase::new(n, Role::Base, pairwise);
        let oracle_topology = generate_full(&oracle_base, 6)?;

        let bint = intersection_base(&b1, &b2)?;
        let implementation = generate_full(&bint, 6)?;

        if implementation != oracle_topology || !equal(&bint, &oracle_base)? {
            let impl_set: std::collections::BTreeSet<_> =
                implementation.iter().map(|s| s.ids()).collect();
            let oracle_set: std::collections::BTreeSet<_> =
                oracle_topology.iter().map(|s| s.ids()).collect();
            let diff = impl_set.symmetric_difference(&oracle_set).next().cloned();
            counterexample = Some(Counterexample {
                kind: "intersection-base".into(),
                sample_hash: format!("trial-{trial}-seed-{}", config.seed),
                claim: "the pairwise-intersection base must generate exactly the union closure of {U1 ∩ U2}".into(),
                center: None,
                eps2: None,
                point: None,
                set: diff,
            });
            break;
        }
    }
    let details = json!({
        "trials": trials,
        "max_ground": 6,
        "seed": config.seed,
    });
    Ok(match counterexample {
        None => Verdict::pass(ExperimentId::IntersectionBase.name(), details),
        Some(cx) => Verdict::fail(ExperimentId::IntersectionBase.name(), details, cx),
    })
}

/// A valid base: the intersection closure of `k ∈ [1, 2n]` random subsets,
/// each point included with probability ½.
fn random_base(rng: &mut impl RngCore, n: usize) -> TopologyBase {
    let k = 1 + (rng.next_u64() % (2 * n as u64)) as usize;
    let mut family = Vec::with_capacity(k);
    for _ in 0..k {
        let bits = rng.next_u64();
        let mut s = PointSet::empty(n);
        for p in 0..n {
            if bits >> p & 1 == 1 {
                s.insert(p);
            }
        }
        family.push(s);
    }
    base_from_subbase(&TopologyBase::new(n, Role::Subbase, family))
}

/// Interval topology of the irreflexive total order on `1..=10` points must
/// be discrete.
pub fn exp_finite_chain(_config: &ExperimentConfig) -> Result<Verdict, Error> {
    let mut counterexample = None;
    let mut entries = Vec::new();
    for n in 1..=10usize {
        let rel = RelationMatrix::from_fn(n, |i, j| i < j);
        let base = base_from_subbase(&interval_subbase(&rel));
        let discrete = (0..n).all(|p| base.family().contains(&PointSet::singleton(n, p)));
        let opens = generate_full(&base, 10)?;
        let full_count_ok = opens.len() == 1 << n;
        entries.push(json!({ "n": n, "discrete": discrete, "opens": opens.len() }));
        if !(discrete && full_count_ok) && counterexample.is_none() {
            let p = (0..n)
                .find(|&p| !base.family().contains(&PointSet::singleton(n, p)))
                .unwrap_or(0);
            counterexample = Some(Counterexample {
                kind: "finite-chain".into(),
                sample_hash: format!("chain-{n}"),
                claim: format!("interval topology of the {n}-chain must be discrete"),
                center: None,
                eps2: None,
                point: Some(p),
                set: None,
            });
        }
    }
    let details = json!({ "chains": entries });
    Ok(match counterexample {
        None => Verdict::pass(ExperimentId::FiniteChain.name(), details),
        Some(cx) => Verdict::fail(ExperimentId::FiniteChain.name(), details, cx),
    })
}

/// Report how the reflexive horismos degenerates the interval construction:
/// subbasic complements exclude their own center, single points produce
/// empty subbasic sets, and the generated topology differs from the
/// irreflexive one whenever null pairs exist.
pub fn exp_reflexive_degeneracy(config: &ExperimentConfig) -> Result<Verdict, Error> {
    let samples = battery(
        config,
        vec![
            ("fixture4".into(), fixtures::four_point_fixture()),
            ("time-line (null-free)".into(), fixtures::time_line(2)),
            ("single-point".into(), fixtures::single_point()),
        ],
    )?;
    let mut entries = Vec::new();
    for (label, s) in &samples {
        let n = s.len();
        let sb_refl = interval_subbase(&horismos_matrix(s, true));
        let sb_irr = interval_subbase(&horismos_matrix(s, false));
        let same_topology = generated_equal(&sb_refl, &sb_irr)?;
        let empty_subbasics = sb_refl.family().iter().filter(|f| f.is_empty()).count();
        // under the reflexive relation, x ∈ N±(x), so x never lies in the
        // complements centered at x
        let rel = horismos_matrix(s, true);
        let centers_excluded = (0..n)
            .filter(|&x| {
                let fut_c = crate::finite_topology::future_set(&rel, x).complement();
                let past_c = crate::finite_topology::past_set(&rel, x).complement();
                !fut_c.contains(x) && !past_c.contains(x)
            })
            .count();
        let difference_example = if same_topology {
            None
        } else {
            let u_r = minimal_neighborhoods(&sb_refl);
            let u_i = minimal_neighborhoods(&sb_irr);
            (0..n).find(|&p| u_r[p] != u_i[p]).map(|p| {
                json!({
                    "point": p,
                    "reflexive_min_nbhd": u_r[p].ids(),
                    "irreflexive_min_nbhd": u_i[p].ids(),
                })
            })
        };
        // on small samples, count the full open families of both conventions
        let open_counts = if n <= FULL_ENUMERATION_TIER {
            let opens_r = generate_full(&base_from_subbase(&sb_refl), FULL_ENUMERATION_TIER)?;
            let opens_i = generate_full(&base_from_subbase(&sb_irr), FULL_ENUMERATION_TIER)?;
            Some(json!({ "reflexive": opens_r.len(), "irreflexive": opens_i.len() }))
        } else {
            None
        };
        entries.push(json!({
            "label": label,
            "hash": s.content_hash(),
            "n": n,
            "same_topology_as_irreflexive": same_topology,
            "empty_subbasic_sets": empty_subbasics,
            "centers_excluded_from_own_complements": centers_excluded,
            "open_set_counts": open_counts,
            "difference": difference_example,
        }));
    }
    Ok(Verdict::report(
        ExperimentId::ReflexiveDegeneracy.name(),
        json!({ "samples": entries }),
    ))
}

/// Probe the interval-topology trace and the Zeeman trace against the
/// Euclidean reference on a time axis and a space axis embedded in the
/// null-rich 3⁴ grid. Reported, never asserted.
pub fn exp_axis_probe(_config: &ExperimentConfig) -> Result<Verdict, Error> {
    let sample = fixtures::hypercube_grid(3);
    let n = sample.len();
    let geom = SampleGeometry::new(&sample);
    let policy = RadiusPolicy::from_geometry(&geom);
    let z_tr = zeeman_trace_with(&geom, &policy);
    // minimal neighborhoods form a valid (and small) base of the interval
    // topology; the closed base would be combinatorially large here
    let t_in = TopologyBase::new(
        n,
        Role::Base,
        minimal_neighborhoods(&interval_subbase(&horismos_matrix(&sample, false))),
    );

    let center = Event4::from_ints([1, 1, 1, 1]);
    let time_axis = Axis::new(
        center.clone(),
        Displacement::from_ints([1, 0, 0, 0]),
        AxisKind::Time,
    )?;
    let space_axis = Axis::new(
        center,
        Displacement::from_ints([0, 1, 0, 0]),
        AxisKind::Space,
    )?;

    let mut reports = Vec::new();
    for (topology, name) in [(&t_in, "interval-horismos"), (&z_tr, "zeeman")] {
        for axis in [&time_axis, &space_axis] {
            let first = axis_probe(&sample, axis, topology, name)?;
            let second = axis_probe(&sample, axis, topology, name)?;
            let stable = first == second;
            reports.push(json!({
                "topology": name,
                "report": first,
                "stable_across_runs": stable,
            }));
        }
    }
    Ok(Verdict::report(
        ExperimentId::AxisProbe.name(),
        json!({ "sample_hash": sample.content_hash(), "probes": reports }),
    ))
}

/// The topology-gap witness emitted by [`exp_zeeman_interval_gap`].
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct TopologyGapWitness {
    /// Which family the non-open set comes from.
    pub family: String,
    /// The set, as sorted sample ids.
    pub set: Vec<usize>,
    /// Trace provenance of the set: center and squared radius.
    pub center: usize,
    pub eps2: String,
    /// The point with no covering base element in the other topology.
    pub uncovered_point: usize,
    /// Human-readable direction of the failure.
    pub direction: String,
}

impl TopologyGapWitness {
    /// Rebuild both sides from the sample and confirm the witness.
    ///
    /// For a `zeeman` witness: the set really is the Zeeman basic
    /// `Z_ε(center) ∩ s` (checked through the membership predicate) and
    /// really is not open in the interval topology of the irreflexive
    /// horismos. For an `interval-horismos` witness: the set really is a
    /// minimal interval-neighborhood and is not open in the Zeeman trace.
    pub fn recheck(&self, sample: &Sample) -> Result<bool, Error> {
        let n = sample.len();
        let nbhds = minimal_neighborhoods(&interval_subbase(&horismos_matrix(sample, false)));
        match self.family.as_str() {
            "zeeman" => {
                let eps2: Scalar = self.eps2.parse()?;
                let mut z_set = PointSet::empty(n);
                for (j, y) in sample.iter().enumerate() {
                    if in_zeeman_nbhd(y, sample.event(self.center), &eps2) {
                        z_set.insert(j);
                    }
                }
                if z_set.ids() != self.set {
                    return Ok(false);
                }
                let t_in = TopologyBase::new(n, Role::Base, nbhds);
                Ok(!is_open(&z_set, &t_in))
            }
            "interval-horismos" => {
                let set = PointSet::from_ids(n, &self.set);
                if !nbhds.contains(&set) {
                    return Ok(false);
                }
                let geom = SampleGeometry::new(sample);
                let policy = RadiusPolicy::from_geometry(&geom);
                Ok(!is_open(&set, &zeeman_trace_with(&geom, &policy)))
            }
            _ => Ok(false),
        }
    }
}

/// Exhibit, on the built-in four-point fixture, a Zeeman-trace base element
/// that is not open in the interval topology of the irreflexive horismos
/// (or vice versa) — concrete evidence that horismos does not induce the
/// Zeeman topology: Zeeman basics are ball-bounded while the horismos
/// neighborhoods are not.
pub fn exp_zeeman_interval_gap(_config: &ExperimentConfig) -> Result<Verdict, Error> {
    let sample = fixtures::four_point_fixture();
    let n = sample.len();
    let hash = sample.content_hash();
    let geom = SampleGeometry::new(&sample);
    let policy = RadiusPolicy::from_geometry(&geom);
    let z_tr = zeeman_trace_with(&geom, &policy);
    let t_in = TopologyBase::new(
        n,
        Role::Base,
        minimal_neighborhoods(&interval_subbase(&horismos_matrix(&sample, false))),
    );

    let witness = if let Some(w) = coarser_eq_witness(&z_tr, &t_in)? {
        // find the provenance of the failing set: a center and the smallest
        // policy radius whose Zeeman basic equals it
        let mut provenance = None;
        'search: for center in 0..n {
            let a_row = geom.horismos_ball_row(center);
            for eps2 in policy.values() {
                if geom.ball_mask(center, eps2).intersect(&a_row) == w.set {
                    provenance = Some((center, eps2.clone()));
                    break 'search;
                }
            }
        }
        let (center, eps2) = provenance.expect("zeeman family member has a provenance");
        Some(TopologyGapWitness {
            family: "zeeman".into(),
            set: w.set.ids(),
            center,
            eps2: eps2.to_string(),
            uncovered_point: w.point,
            direction: "zeeman basic set is not open in the horismos interval topology".into(),
        })
    } else {
        coarser_eq_witness(&t_in, &z_tr)?.map(|w| TopologyGapWitness {
            family: "interval-horismos".into(),
            set: w.set.ids(),
            // minimal neighborhoods have no radius; the center is the point
            // whose neighborhood the set is
            center: w.point,
            eps2: "0".into(),
            uncovered_point: w.point,
            direction: "interval basic set is not open in the zeeman trace".into(),
        })
    };

    match witness {
        Some(w) => {
            let reproduced = w.recheck(&sample)?;
            let details = json!({
                "sample_hash": hash,
                "witness": w,
                "recheck_reproduces": reproduced,
            });
            if reproduced {
                Ok(Verdict::pass(
                    ExperimentId::ZeemanIntervalGap.name(),
                    details,
                ))
            } else {
                Ok(Verdict::fail(
                    ExperimentId::ZeemanIntervalGap.name(),
                    details,
                    Counterexample {
                        kind: "zeeman-interval-gap".into(),
                        sample_hash: hash,
                        claim: "the emitted witness must re-check".into(),
                        center: Some(w.center),
                        eps2: Some(w.eps2),
                        point: Some(w.uncovered_point),
                        set: Some(w.set),
                    },
                ))
            }
        }
        None => Ok(Verdict::fail(
            ExperimentId::ZeemanIntervalGap.name(),
            json!({ "sample_hash": hash }),
            Counterexample {
                kind: "zeeman-interval-gap".into(),
                sample_hash: hash,
                claim:
                    "the zeeman trace and the horismos interval topology must differ on the fixture"
                        .into(),
                center: None,
                eps2: None,
                point: None,
                set: None,
            },
        )),
    }
}

// ---------------------------------------------------------------------------
// dispatcher
// ---------------------------------------------------------------------------

/// Run one experiment under the config.
pub fn run(id: ExperimentId, config: &ExperimentConfig) -> Result<Verdict, Error> {
    config.validate()?;
    match id {
        ExperimentId::AxisProbe => exp_axis_probe(config),
        ExperimentId::ConePartition => exp_cone_partition(config),
        ExperimentId::ECoarserZ => exp_e_coarser_z(config),
        ExperimentId::FiniteChain => exp_finite_chain(config),
        ExperimentId::IntersectionBase => exp_intersection_base(config),
        ExperimentId::OrderContainments => exp_order_containments(config),
        ExperimentId::HorismosBallBase => exp_horismos_ball_base(config),
        ExperimentId::ReflexiveDegeneracy => exp_reflexive_degeneracy(config),
        ExperimentId::ZeemanIntervalGap => exp_zeeman_interval_gap(config),
        ExperimentId::ZIdentity => exp_z_identity(config),
    }
}

/// Run every experiment, in report (name) order.
pub fn run_all(config: &ExperimentConfig) -> Result<Vec<Verdict>, Error> {
    ExperimentId::ALL
        .iter()
        .map(|id| run(*id, config))
        .collect()
}

/// Exit-status contract: 0 when no assertive experiment failed.
pub fn all_passed(verdicts: &[Verdict]) -> bool {
    verdicts.iter().all(|v| v.status != Status::Fail)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::harness::fixtures::{four_point_fixture, hypercube_grid, single_point};

    #[test]
    fn cone_partition_passes_on_real_classifier() {
        for sample in [four_point_fixture(), single_point(), hypercube_grid(2)] {
            let out = check_cone_partition(&sample, "t", &classify);
            assert!(out.ok);
        }
    }

    #[test]
    fn cone_partition_detects_injected_fault() {
        let sample = four_point_fixture();
        // a double that collapses one off-apex pair onto the apex class
        let faulty = |x: &Event4, y: &Event4| -> ConeClass {
            if x == &Event4::from_ints([0, 0, 0, 0]) && y == &Event4::from_ints([1, 1, 0, 0]) {
                ConeClass::Zero
            } else {
                classify(x, y)
            }
        };
        let out = check_cone_partition(&sample, "t", &faulty);
        assert!(!out.ok);
        let cx = out.counterexample.unwrap();
        assert_eq!(cx.center, Some(0));
        assert_eq!(cx.point, Some(1));
        // the real predicates do not reproduce the injected violation
        assert!(!cx.recheck(&sample));
    }

    #[test]
    fn order_containments_detect_injected_fault() {
        let sample = four_point_fixture();
        let ok = check_order_containments(&sample, "t", &OrderPredicates::default());
        assert!(ok.ok);

        let bad_causal = |x: &Event4, y: &Event4| -> bool {
            // drop one genuine causal pair
            !(x == &Event4::from_ints([0, 0, 0, 0]) && y == &Event4::from_ints([1, 1, 0, 0]))
                && causal(x, y)
        };
        let rels = OrderPredicates {
            chron: &chron,
            causal: &bad_causal,
            horismos: &horismos,
        };
        let out = check_order_containments(&sample, "t", &rels);
        assert!(!out.ok);
        assert!(!out.counterexample.unwrap().recheck(&sample));
    }

    #[test]
    fn z_identity_fixture_example() {
        // worked example: ε² = 9 at the origin of the fixture
        let s = four_point_fixture();
        let nine = Scalar::from_int(9);
        let geom = SampleGeometry::new(&s);
        let ball = geom.ball_mask(0, &nine);
        let z = ball.intersect(&geom.horismos_ball_row(0));
        assert_eq!(ball.ids(), vec![0, 1, 2]);
        assert_eq!(geom.horismos_ball_row(0).ids(), vec![0, 2, 3]);
        assert_eq!(z.ids(), vec![0, 2]);
        let out = check_z_identity(&s, "fixture").unwrap();
        assert!(out.ok);
    }

    #[test]
    fn gap_witness_is_the_isolated_origin() {
        let v = exp_zeeman_interval_gap(&ExperimentConfig::default()).unwrap();
        assert_eq!(v.status, Status::Pass);
        let w = &v.details["witness"];
        assert_eq!(w["family"], "zeeman");
        assert_eq!(w["set"], serde_json::json!([0]));
        assert_eq!(w["uncovered_point"], 0);
    }
}
