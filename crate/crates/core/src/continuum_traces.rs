//! Finite traces of the continuum topologies on a sample.
//!
//! The continuum statements quantify over all radii; on a finite sample only
//! distances to sample points matter, so the radius policy is derived from
//! the sample's squared-distance multiset (all pairwise squared distances
//! plus their halves — halves guarantee separating radii exist). Radii are
//! carried squared throughout, so every ball membership test is an exact
//! rational comparison.
//!
//! Internally a sample's coordinates are brought to a common denominator
//! once, which turns every distance comparison into a big-integer
//! comparison; squared radii become integer thresholds via an exact ceiling.
//! The per-point predicates in [`crate::causal_geometry`] stay the semantic
//! reference and the tests here check the two routes against each other on
//! every (center, radius, point) triple.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::One;
use serde::Serialize;
use std::collections::BTreeMap;

use crate::causal_geometry::{horismos, Axis, Displacement, Event4};
use crate::error::Error;
use crate::event_sampling::Sample;
use crate::finite_topology::{
    coarser_eq, subspace_trace, PointSet, RelationMatrix, Role, TopologyBase,
};
use crate::scalar::Scalar;

/// Exact pairwise geometry of a sample: squared Euclidean distances, signs
/// of the quadratic form, and per-center distance orderings.
///
/// Coordinates are scaled to integers by the least common denominator `L`;
/// stored squared distances are the integers `d²·L²`.
pub struct SampleGeometry {
    n: usize,
    /// L² — the scale of the stored squared distances
    scale2: BigInt,
    dist2_num: Vec<Vec<BigInt>>,
    qsign: Vec<Vec<i8>>,
    /// ids sorted by distance from each center, the center itself first
    by_dist: Vec<Vec<usize>>,
}

impl SampleGeometry {
    pub fn new(sample: &Sample) -> Self {
        let n = sample.len();
        let mut scale = BigInt::one();
        for e in sample.iter() {
            for i in 0..4 {
                scale = scale.lcm(e.coord(i).as_ratio().denom());
            }
        }
        let coords: Vec<[BigInt; 4]> = sample
            .iter()
            .map(|e| {
                std::array::from_fn(|i| {
                    let r = e.coord(i).as_ratio() * &scale;
                    debug_assert!(r.is_integer());
                    r.to_integer()
                })
            })
            .collect();

        let zero = BigInt::from(0);
        let mut dist2_num: Vec<Vec<BigInt>> = vec![Vec::with_capacity(n); n];
        let mut qsign = vec![vec![0i8; n]; n];
        for i in 0..n {
            for j in 0..n {
                if j < i {
                    let d = dist2_num[j][i].clone();
                    dist2_num[i].push(d);
                    // Q(y−x) = Q(x−y): the form is even in the displacement
                    qsign[i][j] = qsign[j][i];
                    continue;
                }
                if j == i {
                    dist2_num[i].push(zero.clone());
                    continue;
                }
                let d: [BigInt; 4] = std::array::from_fn(|k| &coords[j][k] - &coords[i][k]);
                let sq: [BigInt; 4] = std::array::from_fn(|k| &d[k] * &d[k]);
                dist2_num[i].push(&sq[0] + &sq[1] + &sq[2] + &sq[3]);
                let q = &sq[0] - &sq[1] - &sq[2] - &sq[3];
                qsign[i][j] = match q.sign() {
                    num_bigint::Sign::Plus => 1,
                    num_bigint::Sign::NoSign => 0,
                    num_bigint::Sign::Minus => -1,
                };
            }
        }

        let mut by_dist = Vec::with_capacity(n);
        for i in 0..n {
            let mut order: Vec<usize> = (0..n).collect();
            order.sort_by(|&a, &b| dist2_num[i][a].cmp(&dist2_num[i][b]).then(a.cmp(&b)));
            by_dist.push(order);
        }
        SampleGeometry {
            n,
            scale2: &scale * &scale,
            dist2_num,
            qsign,
            by_dist,
        }
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    /// Squared Euclidean distance between events `i` and `j`.
    pub fn dist2(&self, i: usize, j: usize) -> Scalar {
        Scalar::from_ratio(BigRational::new(
            self.dist2_num[i][j].clone(),
            self.scale2.clone(),
        ))
    }

    /// Sign of `Q(e_j − e_i)`; 0 on the diagonal.
    pub fn qsign(&self, i: usize, j: usize) -> i8 {
        self.qsign[i][j]
    }

    /// ids ordered by squared distance from `i`, ascending (ties by id);
    /// `i` itself comes first.
    pub fn by_dist(&self, i: usize) -> &[usize] {
        &self.by_dist[i]
    }

    /// `A(e_i) ∩ s`: everything off the null cone of `e_i`, apex retained.
    pub fn horismos_ball_row(&self, i: usize) -> PointSet {
        let mut s = PointSet::empty(self.n);
        for j in 0..self.n {
            if j == i || self.qsign[i][j] != 0 {
                s.insert(j);
            }
        }
        s
    }

    /// The integer `t` with `d² < eps2 ⟺ d²·L² < t` for integer `d²·L²`.
    fn threshold(&self, eps2: &Scalar) -> BigInt {
        let scaled = eps2.as_ratio() * &self.scale2;
        if scaled.is_integer() {
            scaled.to_integer()
        } else {
            scaled.ceil().to_integer()
        }
    }

    /// `B_ε(e_i) ∩ s` for a squared radius.
    pub fn ball_mask(&self, i: usize, eps2: &Scalar) -> PointSet {
        let t = self.threshold(eps2);
        let mut mask = PointSet::empty(self.n);
        for &j in &self.by_dist[i] {
            if self.dist2_num[i][j] < t {
                mask.insert(j);
            } else {
                break;
            }
        }
        mask
    }

    /// Smallest positive squared distance from `i` to a point outside
    /// `allowed`, if any. This is the exact separating radius used by the
    /// constructive coarseness witnesses.
    pub fn min_dist2_outside(&self, i: usize, allowed: &PointSet) -> Option<Scalar> {
        self.min_outside(i, allowed)
            .map(|(_, d)| Scalar::from_ratio(BigRational::new(d.clone(), self.scale2.clone())))
    }

    /// Scaled form of [`Self::min_dist2_outside`]: the first outside point in
    /// distance order and its `d²·L²`.
    pub(crate) fn min_outside(&self, i: usize, allowed: &PointSet) -> Option<(usize, &BigInt)> {
        self.by_dist[i]
            .iter()
            .find(|&&j| !allowed.contains(j))
            .map(|&j| (j, &self.dist2_num[i][j]))
    }

    /// `{y : d²(i,y) < num/(2L²)}` — an open ball given a policy-scaled
    /// squared radius (`num = ε²·2L²`).
    pub(crate) fn ball_mask_policy_num(&self, i: usize, num: &BigInt) -> PointSet {
        let mut mask = PointSet::empty(self.n);
        for &j in &self.by_dist[i] {
            if &(&self.dist2_num[i][j] * 2) < num {
                mask.insert(j);
            } else {
                break;
            }
        }
        mask
    }
}

/// The radius policy in scaled-integer form: each squared radius as the
/// integer `ε²·2L²`, ascending and distinct. Comparisons against stored
/// squared distances need only doubled-integer comparisons, which keeps the
/// sprinkle batteries fast.
pub(crate) struct ScaledPolicy {
    /// `ε²·2L²` per policy value
    nums: Vec<BigInt>,
}

impl ScaledPolicy {
    pub(crate) fn from_geometry(geom: &SampleGeometry) -> Self {
        let n = geom.len();
        let mut nums = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in (i + 1)..n {
                let d2 = &geom.dist2_num[i][j];
                nums.push(d2.clone()); // ε² = d²/2
                nums.push(d2 * 2); // ε² = d²
            }
        }
        if nums.is_empty() {
            nums.push(&geom.scale2 * 2); // ε² = 1
        }
        nums.sort();
        nums.dedup();
        ScaledPolicy { nums }
    }

    pub(crate) fn len(&self) -> usize {
        self.nums.len()
    }

    pub(crate) fn max_num(&self) -> &BigInt {
        self.nums.last().expect("policy is never empty")
    }

    /// Materialize one policy value as an exact rational.
    pub(crate) fn value_scalar(&self, geom: &SampleGeometry, idx: usize) -> Scalar {
        Scalar::from_ratio(BigRational::new(self.nums[idx].clone(), &geom.scale2 * 2))
    }
}

/// Like [`for_each_ball`] but driven by a scaled policy; all comparisons are
/// integer. `added` holds the ids that entered the ball at this radius step.
pub(crate) fn for_each_ball_scaled(
    geom: &SampleGeometry,
    policy: &ScaledPolicy,
    mut visit: impl FnMut(usize, usize, &PointSet, &[usize]),
) {
    let n = geom.len();
    for center in 0..n {
        let order = geom.by_dist(center);
        // 2·d²·L² per point, so the strict test d² < ε² is dbl < num
        let doubled: Vec<BigInt> = order
            .iter()
            .map(|&j| &geom.dist2_num[center][j] * 2)
            .collect();
        let mut ball = PointSet::empty(n);
        let mut next = 0;
        for (idx, num) in policy.nums.iter().enumerate() {
            let start = next;
            while next < n && &doubled[next] < num {
                ball.insert(order[next]);
                next += 1;
            }
            visit(center, idx, &ball, &order[start..next]);
        }
    }
}

/// Squared radii used for every trace center, derived from the sample's
/// squared-distance multiset: all pairwise squared distances plus their
/// halves, deduplicated and ascending. Falls back to `{1}` when the sample
/// has fewer than two points.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct RadiusPolicy {
    values: Vec<Scalar>,
}

impl RadiusPolicy {
    pub fn from_sample(sample: &Sample) -> Self {
        RadiusPolicy::from_geometry(&SampleGeometry::new(sample))
    }

    pub fn from_geometry(geom: &SampleGeometry) -> Self {
        let scaled = ScaledPolicy::from_geometry(geom);
        let values = (0..scaled.len())
            .map(|i| scaled.value_scalar(geom, i))
            .collect();
        RadiusPolicy { values }
    }

    /// A policy with explicit squared radii (all must be positive).
    pub fn from_values(mut values: Vec<Scalar>) -> Result<Self, Error> {
        if values.is_empty() {
            return Err(Error::BadConfig(
                "radius policy needs at least one value".into(),
            ));
        }
        if let Some(bad) = values.iter().find(|v| !v.is_positive()) {
            return Err(Error::BadConfig(format!(
                "squared radius must be > 0, got {bad}"
            )));
        }
        values.sort();
        values.dedup();
        Ok(RadiusPolicy { values })
    }

    /// Ascending, distinct, all positive.
    pub fn values(&self) -> &[Scalar] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }
}

/// Horismos as a relation matrix on the sample.
pub fn horismos_matrix(sample: &Sample, reflexive: bool) -> RelationMatrix {
    RelationMatrix::from_fn(sample.len(), |i, j| {
        horismos(sample.event(i), sample.event(j), reflexive)
    })
}

/// Visit the ball `B_ε(center) ∩ s` for every center and policy radius,
/// radii ascending, each ball built incrementally from the previous one.
/// `added` holds the ids that entered the ball at this radius step.
pub(crate) fn for_each_ball(
    geom: &SampleGeometry,
    policy: &RadiusPolicy,
    mut visit: impl FnMut(usize, usize, &PointSet, &[usize]),
) {
    let n = geom.len();
    let thresholds: Vec<BigInt> = policy.values().iter().map(|e| geom.threshold(e)).collect();
    for center in 0..n {
        let order = geom.by_dist(center);
        let mut ball = PointSet::empty(n);
        let mut next = 0;
        for (idx, t) in thresholds.iter().enumerate() {
            let start = next;
            while next < n && &geom.dist2_num[center][order[next]] < t {
                ball.insert(order[next]);
                next += 1;
            }
            visit(center, idx, &ball, &order[start..next]);
        }
    }
}

/// Base `{B_ε(x) ∩ s}` over all centers and policy radii.
pub fn euclidean_trace(sample: &Sample, policy: &RadiusPolicy) -> TopologyBase {
    euclidean_trace_with(&SampleGeometry::new(sample), policy)
}

pub fn euclidean_trace_with(geom: &SampleGeometry, policy: &RadiusPolicy) -> TopologyBase {
    let mut family = Vec::new();
    for_each_ball(geom, policy, |_, _, ball, _| {
        if family.last() != Some(ball) {
            family.push(ball.clone());
        }
    });
    TopologyBase::new(geom.len(), Role::Base, family)
}

/// Base `{Z_ε(x) ∩ s}`: balls with the null cone removed, apex retained.
pub fn zeeman_trace(sample: &Sample, policy: &RadiusPolicy) -> TopologyBase {
    zeeman_trace_with(&SampleGeometry::new(sample), policy)
}

pub fn zeeman_trace_with(geom: &SampleGeometry, policy: &RadiusPolicy) -> TopologyBase {
    let rows: Vec<PointSet> = (0..geom.len()).map(|i| geom.horismos_ball_row(i)).collect();
    let mut family = Vec::new();
    for_each_ball(geom, policy, |center, _, ball, _| {
        let z = ball.intersect(&rows[center]);
        if family.last() != Some(&z) {
            family.push(z);
        }
    });
    TopologyBase::new(geom.len(), Role::Base, family)
}

/// Base `{A(x) ∩ s}` over all centers.
pub fn horismos_ball_trace(sample: &Sample) -> TopologyBase {
    horismos_ball_trace_with(&SampleGeometry::new(sample))
}

pub fn horismos_ball_trace_with(geom: &SampleGeometry) -> TopologyBase {
    let family: Vec<PointSet> = (0..geom.len()).map(|i| geom.horismos_ball_row(i)).collect();
    TopologyBase::new(geom.len(), Role::Base, family)
}

/// Outcome of probing one topology against the Euclidean reference on the
/// points of an axis. Reported, never asserted.
#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct TraceReport {
    pub sample_hash: String,
    pub axis_kind: String,
    pub axis_point_ids: Vec<usize>,
    pub family_sizes: BTreeMap<String, usize>,
    pub trace_family: String,
    pub euclidean_family: String,
    pub trace_coarser_eq_euclidean: bool,
    pub euclidean_coarser_eq_trace: bool,
    pub equal: bool,
}

/// Restrict `topology` and the Euclidean trace to the sample points lying on
/// the axis line, and compare the two restrictions both ways.
///
/// The axis base must be an event of the sample and the line must meet the
/// sample in at least two points.
pub fn axis_probe(
    sample: &Sample,
    axis: &Axis,
    topology: &TopologyBase,
    topology_name: &str,
) -> Result<TraceReport, Error> {
    let n = sample.len();
    if topology.ground_size() != n {
        return Err(Error::GroundMismatch {
            left: topology.ground_size(),
            right: n,
        });
    }
    let base_id = sample
        .position_of(axis.base())
        .ok_or(Error::AxisNotInSample { index: usize::MAX })?;
    let mut on_axis = PointSet::empty(n);
    for (id, e) in sample.iter().enumerate() {
        if lies_on_axis(axis, e) {
            on_axis.insert(id);
        }
    }
    debug_assert!(on_axis.contains(base_id));
    if on_axis.count() < 2 {
        return Err(Error::AxisNotInSample { index: base_id });
    }

    let geom = SampleGeometry::new(sample);
    let policy = RadiusPolicy::from_geometry(&geom);
    let euclidean = euclidean_trace_with(&geom, &policy);

    let traced = subspace_trace(topology, &on_axis);
    let euclidean_traced = subspace_trace(&euclidean, &on_axis);

    let t_le_e = coarser_eq(&traced, &euclidean_traced)?;
    let e_le_t = coarser_eq(&euclidean_traced, &traced)?;

    let mut family_sizes = BTreeMap::new();
    family_sizes.insert(topology_name.to_string(), topology.len());
    family_sizes.insert("euclidean".to_string(), euclidean.len());
    family_sizes.insert(format!("{topology_name}|axis"), traced.len());
    family_sizes.insert("euclidean|axis".to_string(), euclidean_traced.len());

    Ok(TraceReport {
        sample_hash: sample.content_hash(),
        axis_kind: format!("{:?}", axis.kind()).to_lowercase(),
        axis_point_ids: on_axis.ids(),
        family_sizes,
        trace_family: traced.canonical_text(),
        euclidean_family: euclidean_traced.canonical_text(),
        trace_coarser_eq_euclidean: t_le_e,
        euclidean_coarser_eq_trace: e_le_t,
        equal: t_le_e && e_le_t,
    })
}

/// Whether `e = base + t·direction` for some rational `t`.
fn lies_on_axis(axis: &Axis, e: &Event4) -> bool {
    let delta = Displacement::between(axis.base(), e);
    let dir = axis.direction();
    let mut t: Option<Scalar> = None;
    for i in 0..4 {
        let di = dir.component(i);
        if di.is_zero() {
            if !delta.component(i).is_zero() {
                return false;
            }
        } else {
            let ti = delta.component(i) / di;
            match &t {
                None => t = Some(ti),
                Some(prev) if *prev != ti => return false,
                _ => {}
            }
        }
    }
    true
}

/// Graphviz DOT form of a relation digraph, nodes labelled by coordinates.
pub fn relation_dot(sample: &Sample, rel: &RelationMatrix, name: &str) -> String {
    let mut out = String::new();
    out.push_str(&format!("digraph {name} {{\n"));
    for (id, e) in sample.iter().enumerate() {
        out.push_str(&format!(
            "  n{id} [label=\"{id}: ({})\"];\n",
            e.canonical_text()
        ));
    }
    for i in 0..rel.ground_size() {
        for j in 0..rel.ground_size() {
            if rel.get(i, j) {
                out.push_str(&format!("  n{i} -> n{j};\n"));
            }
        }
    }
    out.push_str("}\n");
    out
}
