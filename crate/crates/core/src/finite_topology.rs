//! Finite topologies presented by subbases and bases.
//!
//! Ground sets are `0..n`; subsets are bit sets. Topologies are carried
//! around as generating families (bases), never as full open-set families —
//! the one exception is [`generate_full`], the brute-force oracle for small
//! ground sets. Openness of a set `g` with respect to a base is the usual
//! criterion: every point of `g` has a base element around it inside `g`.
//!
//! Conventions: the whole ground set `X` is a member of every closed base
//! (the nullary intersection); the empty set is open vacuously and never
//! stored in a base.

use std::cmp::Ordering;
use std::collections::HashSet;

use crate::error::Error;

const WORD_BITS: usize = 64;

/// A subset of a ground set `0..n`, as a bit set.
///
/// Invariant: bits at positions `>= n` are clear, so equal sets have equal
/// words and hashing is structural.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct PointSet {
    n: usize,
    words: Vec<u64>,
}

impl PointSet {
    pub fn empty(n: usize) -> Self {
        PointSet {
            n,
            words: vec![0; n.div_ceil(WORD_BITS)],
        }
    }

    pub fn full(n: usize) -> Self {
        let mut s = PointSet::empty(n);
        for i in 0..s.words.len() {
            s.words[i] = !0;
        }
        s.clear_tail();
        s
    }

    pub fn singleton(n: usize, id: usize) -> Self {
        let mut s = PointSet::empty(n);
        s.insert(id);
        s
    }

    pub fn from_ids(n: usize, ids: &[usize]) -> Self {
        let mut s = PointSet::empty(n);
        for &id in ids {
            s.insert(id);
        }
        s
    }

    fn clear_tail(&mut self) {
        let used = self.n % WORD_BITS;
        if used != 0 {
            if let Some(last) = self.words.last_mut() {
                *last &= (1u64 << used) - 1;
            }
        }
        if self.n == 0 {
            self.words.clear();
        }
    }

    pub fn ground_size(&self) -> usize {
        self.n
    }

    pub fn insert(&mut self, id: usize) {
        assert!(id < self.n, "id {id} out of ground 0..{}", self.n);
        self.words[id / WORD_BITS] |= 1 << (id % WORD_BITS);
    }

    pub fn remove(&mut self, id: usize) {
        assert!(id < self.n);
        self.words[id / WORD_BITS] &= !(1 << (id % WORD_BITS));
    }

    pub fn contains(&self, id: usize) -> bool {
        id < self.n && self.words[id / WORD_BITS] >> (id % WORD_BITS) & 1 == 1
    }

    pub fn count(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn is_full(&self) -> bool {
        self.count() == self.n
    }

    pub fn union(&self, other: &Self) -> Self {
        debug_assert_eq!(self.n, other.n);
        let words = self
            .words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| a | b)
            .collect();
        PointSet { n: self.n, words }
    }

    pub fn intersect(&self, other: &Self) -> Self {
        debug_assert_eq!(self.n, other.n);
        let words = self
            .words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| a & b)
            .collect();
        PointSet { n: self.n, words }
    }

    pub fn difference(&self, other: &Self) -> Self {
        debug_assert_eq!(self.n, other.n);
        let words = self
            .words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| a & !b)
            .collect();
        PointSet { n: self.n, words }
    }

    pub fn complement(&self) -> Self {
        let mut s = PointSet {
            n: self.n,
            words: self.words.iter().map(|w| !w).collect(),
        };
        s.clear_tail();
        s
    }

    pub fn union_with(&mut self, other: &Self) {
        debug_assert_eq!(self.n, other.n);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a |= b;
        }
    }

    pub fn intersect_with(&mut self, other: &Self) {
        debug_assert_eq!(self.n, other.n);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a &= b;
        }
    }

    pub fn is_subset(&self, other: &Self) -> bool {
        debug_assert_eq!(self.n, other.n);
        self.words
            .iter()
            .zip(&other.words)
            .all(|(a, b)| a & !b == 0)
    }

    pub fn is_disjoint(&self, other: &Self) -> bool {
        debug_assert_eq!(self.n, other.n);
        self.words.iter().zip(&other.words).all(|(a, b)| a & b == 0)
    }

    /// Member ids, ascending.
    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    None
                } else {
                    let b = w.trailing_zeros() as usize;
                    w &= w - 1;
                    Some(wi * WORD_BITS + b)
                }
            })
        })
    }

    pub fn ids(&self) -> Vec<usize> {
        self.iter().collect()
    }
}

impl Ord for PointSet {
    /// Canonical order: lexicographic on the ascending id list, with a
    /// proper prefix ordered first.
    fn cmp(&self, other: &Self) -> Ordering {
        self.iter().cmp(other.iter())
    }
}

impl PartialOrd for PointSet {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// How a family of sets is meant to generate a topology.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Role {
    Subbase,
    Base,
}

/// A family of subsets of `0..n` used as a subbase or base.
///
/// The family is kept canonically sorted and deduplicated. A base never
/// stores the empty set (it is open vacuously); a subbase may contain it —
/// degenerate reflexive interval subbases do.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct TopologyBase {
    n: usize,
    role: Role,
    family: Vec<PointSet>,
}

impl TopologyBase {
    pub fn new(n: usize, role: Role, family: Vec<PointSet>) -> Self {
        for s in &family {
            assert_eq!(s.ground_size(), n, "family member on wrong ground set");
        }
        let mut family = family;
        if role == Role::Base && n > 0 {
            family.retain(|s| !s.is_empty());
        }
        family.sort();
        family.dedup();
        TopologyBase { n, role, family }
    }

    pub fn ground_size(&self) -> usize {
        self.n
    }

    pub fn role(&self) -> Role {
        self.role
    }

    pub fn family(&self) -> &[PointSet] {
        &self.family
    }

    pub fn len(&self) -> usize {
        self.family.len()
    }

    pub fn is_empty(&self) -> bool {
        self.family.is_empty()
    }

    /// The same family retagged as a subbase.
    pub fn as_subbase(&self) -> TopologyBase {
        TopologyBase::new(self.n, Role::Subbase, self.family.clone())
    }

    /// Canonical text form: one sorted id list per set, e.g. `{0 2} {1}`.
    pub fn canonical_text(&self) -> String {
        self.family
            .iter()
            .map(|s| {
                let ids: Vec<String> = s.iter().map(|i| i.to_string()).collect();
                format!("{{{}}}", ids.join(" "))
            })
            .collect::<Vec<_>>()
            .join(" ")
    }
}

/// A boolean relation `r[i][j]` ("i related to j") on `0..n`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct RelationMatrix {
    n: usize,
    rows: Vec<PointSet>,
}

impl RelationMatrix {
    pub fn new_empty(n: usize) -> Self {
        RelationMatrix {
            n,
            rows: vec![PointSet::empty(n); n],
        }
    }

    pub fn from_fn(n: usize, mut rel: impl FnMut(usize, usize) -> bool) -> Self {
        let mut m = RelationMatrix::new_empty(n);
        for i in 0..n {
            for j in 0..n {
                if rel(i, j) {
                    m.set(i, j);
                }
            }
        }
        m
    }

    pub fn ground_size(&self) -> usize {
        self.n
    }

    pub fn set(&mut self, i: usize, j: usize) {
        self.rows[i].insert(j);
    }

    pub fn get(&self, i: usize, j: usize) -> bool {
        self.rows[i].contains(j)
    }

    pub fn is_reflexive(&self) -> bool {
        (0..self.n).all(|i| self.get(i, i))
    }

    pub fn is_irreflexive(&self) -> bool {
        (0..self.n).all(|i| !self.get(i, i))
    }

    pub fn pair_count(&self) -> usize {
        self.rows.iter().map(PointSet::count).sum()
    }

    pub fn row(&self, i: usize) -> &PointSet {
        &self.rows[i]
    }
}

/// `{j : i related-to j}` — the future of `i` under the relation.
pub fn future_set(rel: &RelationMatrix, i: usize) -> PointSet {
    rel.rows[i].clone()
}

/// `{j : j related-to i}` — the past of `i` under the relation.
pub fn past_set(rel: &RelationMatrix, i: usize) -> PointSet {
    let mut s = PointSet::empty(rel.n);
    for j in 0..rel.n {
        if rel.get(j, i) {
            s.insert(j);
        }
    }
    s
}

/// Subbase of the interval topology of a relation: complements of all
/// futures and all pasts, `{X∖I⁻(x)} ∪ {X∖I⁺(x)}`, deduplicated.
pub fn interval_subbase(rel: &RelationMatrix) -> TopologyBase {
    let n = rel.ground_size();
    let mut family = Vec::with_capacity(2 * n);
    for i in 0..n {
        family.push(past_set(rel, i).complement());
        family.push(future_set(rel, i).complement());
    }
    TopologyBase::new(n, Role::Subbase, family)
}

/// Subbase whose generators are full cones: `future ∪ past ∪ {x}` per point.
///
/// The apex is included so the family covers the ground set even for
/// irreflexive relations.
pub fn cone_topology_subbase(rel: &RelationMatrix) -> TopologyBase {
    let n = rel.ground_size();
    let mut family = Vec::with_capacity(n);
    for i in 0..n {
        let mut cone = future_set(rel, i);
        cone.union_with(&past_set(rel, i));
        cone.insert(i);
        family.push(cone);
    }
    TopologyBase::new(n, Role::Subbase, family)
}

/// Close a subbase under pairwise (hence all finite) intersections.
///
/// `X` is included as the empty intersection; the empty set is dropped from
/// the result. Worklist closure against the original generators only, so the
/// cost is `O(|closure| · |subbase|)` set operations.
pub fn base_from_subbase(sb: &TopologyBase) -> TopologyBase {
    debug_assert_eq!(sb.role(), Role::Subbase);
    let n = sb.ground_size();
    let full = PointSet::full(n);
    let mut seen: HashSet<PointSet> = HashSet::new();
    let mut queue: Vec<PointSet> = Vec::new();
    seen.insert(full.clone());
    queue.push(full);
    while let Some(u) = queue.pop() {
        for g in sb.family() {
            let v = u.intersect(g);
            if !seen.contains(&v) {
                seen.insert(v.clone());
                queue.push(v);
            }
        }
    }
    TopologyBase::new(n, Role::Base, seen.into_iter().collect())
}

/// Per-point lists of base elements containing the point, smallest first.
struct CoverIndex<'a> {
    per_point: Vec<Vec<&'a PointSet>>,
}

impl<'a> CoverIndex<'a> {
    fn build(base: &'a TopologyBase) -> Self {
        let n = base.ground_size();
        let mut per_point: Vec<Vec<&PointSet>> = vec![Vec::new(); n];
        for s in base.family() {
            for p in s.iter() {
                per_point[p].push(s);
            }
        }
        for lists in &mut per_point {
            lists.sort_by_key(|s| s.count());
        }
        CoverIndex { per_point }
    }

    /// First point of `g` with no base element `B`, `p ∈ B ⊆ g`.
    fn uncovered_point(&self, g: &PointSet) -> Option<usize> {
        g.iter()
            .find(|&p| !self.per_point[p].iter().any(|b| b.is_subset(g)))
    }
}

/// Base criterion for openness: every point of `g` lies in some base element
/// contained in `g`. The empty set is open vacuously.
pub fn is_open(g: &PointSet, base: &TopologyBase) -> bool {
    debug_assert_eq!(base.role(), Role::Base);
    debug_assert_eq!(g.ground_size(), base.ground_size());
    CoverIndex::build(base).uncovered_point(g).is_none()
}

/// A set from one family that fails the openness criterion in another,
/// together with the point that has no covering base element.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NotOpenWitness {
    pub set: PointSet,
    pub point: usize,
}

/// True iff the topology generated by `t1` is coarser than or equal to the
/// one generated by `t2`, i.e. every `t1` base element is `t2`-open.
pub fn coarser_eq(t1: &TopologyBase, t2: &TopologyBase) -> Result<bool, Error> {
    Ok(coarser_eq_witness(t1, t2)?.is_none())
}

/// Like [`coarser_eq`] but returns the first failing base element.
pub fn coarser_eq_witness(
    t1: &TopologyBase,
    t2: &TopologyBase,
) -> Result<Option<NotOpenWitness>, Error> {
    debug_assert_eq!(t1.role(), Role::Base);
    debug_assert_eq!(t2.role(), Role::Base);
    if t1.ground_size() != t2.ground_size() {
        return Err(Error::GroundMismatch {
            left: t1.ground_size(),
            right: t2.ground_size(),
        });
    }
    let index = CoverIndex::build(t2);
    for s in t1.family() {
        if let Some(point) = index.uncovered_point(s) {
            return Ok(Some(NotOpenWitness {
                set: s.clone(),
                point,
            }));
        }
    }
    Ok(None)
}

/// `coarser_eq` in both directions: the two bases generate the same topology.
pub fn equal(t1: &TopologyBase, t2: &TopologyBase) -> Result<bool, Error> {
    Ok(coarser_eq(t1, t2)? && coarser_eq(t2, t1)?)
}

/// Default ground-size cap for [`generate_full`].
pub const GENERATE_FULL_DEFAULT_CAP: usize = 16;

/// Enumerate every open set (all unions of base members, plus the empty
/// set), canonically sorted. Brute-force oracle: the output can have up to
/// `2^n` members, hence the ground-size cap.
pub fn generate_full(base: &TopologyBase, cap: usize) -> Result<Vec<PointSet>, Error> {
    debug_assert_eq!(base.role(), Role::Base);
    let n = base.ground_size();
    if n > cap {
        return Err(Error::CapExceeded {
            what: "generate_full ground set",
            cap,
            actual: n,
        });
    }

    // When every minimal cover ∩{B ∋ p} is itself open, those covers generate
    // the same unions and there are at most n of them; otherwise fall back to
    // the base family as generators.
    let index = CoverIndex::build(base);
    let mut minimal: Vec<PointSet> = Vec::new();
    let mut minimal_ok = true;
    'outer: for p in 0..n {
        let covers = &index.per_point[p];
        if covers.is_empty() {
            continue; // p lies in no base element, hence in no open set
        }
        let mut u = covers[0].clone();
        for b in &covers[1..] {
            u.intersect_with(b);
        }
        if index.uncovered_point(&u).is_some() {
            minimal_ok = false;
            break 'outer;
        }
        minimal.push(u);
    }
    let generators: Vec<PointSet> = if minimal_ok {
        minimal.sort();
        minimal.dedup();
        minimal
    } else {
        base.family().to_vec()
    };

    let empty = PointSet::empty(n);
    let mut seen: HashSet<PointSet> = HashSet::new();
    let mut queue: Vec<PointSet> = Vec::new();
    seen.insert(empty.clone());
    queue.push(empty);
    while let Some(u) = queue.pop() {
        for g in &generators {
            let v = u.union(g);
            if !seen.contains(&v) {
                seen.insert(v.clone());
                queue.push(v);
            }
        }
    }
    let mut opens: Vec<PointSet> = seen.into_iter().collect();
    opens.sort();
    Ok(opens)
}

/// Restriction of a base to a subset `s`, re-indexed to ground `0..|s|`
/// (dense ranks in ascending original id order).
pub fn subspace_trace(base: &TopologyBase, s: &PointSet) -> TopologyBase {
    debug_assert_eq!(base.ground_size(), s.ground_size());
    let member_ids = s.ids();
    let m = member_ids.len();
    let mut rank = vec![usize::MAX; base.ground_size().max(1)];
    for (r, &id) in member_ids.iter().enumerate() {
        rank[id] = r;
    }
    let mut family = Vec::with_capacity(base.len());
    for b in base.family() {
        let mut t = PointSet::empty(m);
        for p in b.intersect(s).iter() {
            t.insert(rank[p]);
        }
        family.push(t);
    }
    if m == 0 {
        // the intersection with the empty subspace is X of the empty ground
        return TopologyBase::new(0, base.role(), vec![PointSet::empty(0)]);
    }
    TopologyBase::new(m, base.role(), family)
}

/// Base of the intersection topology: all pairwise intersections
/// `{B1 ∩ B2 : B1 ∈ b1, B2 ∈ b2}`, deduplicated.
pub fn intersection_base(b1: &TopologyBase, b2: &TopologyBase) -> Result<TopologyBase, Error> {
    debug_assert_eq!(b1.role(), Role::Base);
    debug_assert_eq!(b2.role(), Role::Base);
    if b1.ground_size() != b2.ground_size() {
        return Err(Error::GroundMismatch {
            left: b1.ground_size(),
            right: b2.ground_size(),
        });
    }
    let mut seen: HashSet<PointSet> = HashSet::new();
    for a in b1.family() {
        for b in b2.family() {
            seen.insert(a.intersect(b));
        }
    }
    Ok(TopologyBase::new(
        b1.ground_size(),
        Role::Base,
        seen.into_iter().collect(),
    ))
}

/// Minimal neighborhoods `U_p = ∩{S ∈ subbase : p ∈ S}` of the topology a
/// subbase generates (`X` where no subbasic set contains `p`).
///
/// A finite topology is determined by these: two subbases generate the same
/// topology iff their minimal-neighborhood maps agree pointwise. This gives
/// a comparison that never materializes the (possibly exponential) closed
/// base.
pub fn minimal_neighborhoods(sb: &TopologyBase) -> Vec<PointSet> {
    let n = sb.ground_size();
    let mut nbhds = vec![PointSet::full(n); n];
    for s in sb.family() {
        for p in s.iter() {
            nbhds[p].intersect_with(s);
        }
    }
    nbhds
}

/// Whether two subbases generate the same topology, via minimal
/// neighborhoods.
pub fn generated_equal(sb1: &TopologyBase, sb2: &TopologyBase) -> Result<bool, Error> {
    if sb1.ground_size() != sb2.ground_size() {
        return Err(Error::GroundMismatch {
            left: sb1.ground_size(),
            right: sb2.ground_size(),
        });
    }
    Ok(minimal_neighborhoods(sb1) == minimal_neighborhoods(sb2))
}
