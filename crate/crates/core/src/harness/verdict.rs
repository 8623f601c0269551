//! Verdict and counterexample shapes shared by all experiments.

use serde::Serialize;
use serde_json::Value;

use crate::causal_geometry::{in_ball, in_horismos_ball, in_zeeman_nbhd};
use crate::event_sampling::Sample;
use crate::scalar::Scalar;

pub const VERDICT_SCHEMA: u32 = 1;

/// Outcome class of an experiment.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Pass,
    Fail,
    ReportOnly,
}

/// A failing instance, with enough context to re-check it in isolation.
#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct Counterexample {
    /// Which identity the instance violates.
    pub kind: String,
    pub sample_hash: String,
    /// Human-readable statement of the violated claim.
    pub claim: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub center: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub eps2: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub point: Option<usize>,
    /// The offending set, as sorted ids, when the violation is set-valued.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub set: Option<Vec<usize>>,
}

impl Counterexample {
    /// Re-evaluate the violated pointwise identity directly through the
    /// causal-geometry predicates. Returns `true` when the violation is
    /// reproduced (a genuine counterexample), `false` when the predicates
    /// are consistent and the original failure must have been injected
    /// upstream.
    pub fn recheck(&self, sample: &Sample) -> bool {
        if sample.content_hash() != self.sample_hash {
            return false;
        }
        let (Some(center), Some(point)) = (self.center, self.point) else {
            return false;
        };
        if center >= sample.len() || point >= sample.len() {
            return false;
        }
        let x = sample.event(center);
        let y = sample.event(point);
        match self.kind.as_str() {
            // Z_ε(x) membership must differ from ball ∧ horismos-ball membership
            "z-identity" => {
                let Some(eps2) = &self.eps2 else { return false };
                let Ok(eps2) = eps2.parse::<Scalar>() else {
                    return false;
                };
                in_zeeman_nbhd(y, x, &eps2) != (in_ball(y, x, &eps2) && in_horismos_ball(y, x))
            }
            // a pair claimed to break the cone partition: y in two classes
            // or in none — impossible for the exact classifier, so the
            // recheck reproduces a violation only for y = x claims
            "cone-partition" => {
                use crate::causal_geometry::{classify, ConeClass};
                center != point && matches!(classify(x, y), ConeClass::Zero)
            }
            // chron ⊆ causal, horismos ⊆ causal, chron ∩ horismos = ∅
            "order-containment" => {
                use crate::causal_geometry::{causal, chron, horismos};
                let c = chron(x, y);
                let h = horismos(x, y, false);
                let k = causal(x, y);
                (c && !k) || (h && !k) || (c && h)
            }
            // the claimed separating radius must fail to cut a Zeeman
            // neighborhood of `point` inside the recorded set
            "e-coarser-z" => {
                let (Some(eps2), Some(set)) = (&self.eps2, &self.set) else {
                    return false;
                };
                let Ok(eps2) = eps2.parse::<Scalar>() else {
                    return false;
                };
                let inside: std::collections::BTreeSet<usize> = set.iter().copied().collect();
                let mut contains_point = false;
                for (j, e) in sample.iter().enumerate() {
                    if in_zeeman_nbhd(e, y, &eps2) {
                        if j == point {
                            contains_point = true;
                        }
                        if !inside.contains(&j) {
                            return true; // witness escapes the set: violation reproduced
                        }
                    }
                }
                !contains_point
            }
            _ => false,
        }
    }
}

/// Result of one experiment run.
#[derive(Clone, Debug, Serialize)]
pub struct Verdict {
    pub schema: u32,
    pub experiment: String,
    pub status: Status,
    pub details: Value,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<Counterexample>,
}

impl Verdict {
    pub fn pass(experiment: &str, details: Value) -> Self {
        Verdict {
            schema: VERDICT_SCHEMA,
            experiment: experiment.to_string(),
            status: Status::Pass,
            details,
            counterexample: None,
        }
    }

    pub fn fail(experiment: &str, details: Value, counterexample: Counterexample) -> Self {
        Verdict {
            schema: VERDICT_SCHEMA,
            experiment: experiment.to_string(),
            status: Status::Fail,
            details,
            counterexample: Some(counterexample),
        }
    }

    pub fn report(experiment: &str, details: Value) -> Self {
        Verdict {
            schema: VERDICT_SCHEMA,
            experiment: experiment.to_string(),
            status: Status::ReportOnly,
            details,
            counterexample: None,
        }
    }

    pub fn passed(&self) -> bool {
        self.status != Status::Fail
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::harness::fixtures::four_point_fixture;

    fn cx(
        kind: &str,
        center: usize,
        point: usize,
        eps2: Option<&str>,
        set: Option<Vec<usize>>,
    ) -> Counterexample {
        let s = four_point_fixture();
        Counterexample {
            kind: kind.into(),
            sample_hash: s.content_hash(),
            claim: "test".into(),
            center: Some(center),
            eps2: eps2.map(str::to_string),
            point: Some(point),
            set,
        }
    }

    #[test]
    fn recheck_rejects_wrong_hash() {
        let s = four_point_fixture();
        let mut c = cx("z-identity", 0, 1, Some("9"), None);
        c.sample_hash = "0000000000000000".into();
        assert!(!c.recheck(&s));
    }

    /// The pointwise identity is exact, so a z-identity counterexample can
    /// never reproduce against the real predicates.
    #[test]
    fn recheck_exonerates_consistent_predicates() {
        let s = four_point_fixture();
        for center in 0..4 {
            for point in 0..4 {
                assert!(!cx("z-identity", center, point, Some("9"), None).recheck(&s));
            }
        }
        assert!(!cx("order-containment", 0, 1, None, None).recheck(&s));
        assert!(!cx("cone-partition", 0, 1, None, None).recheck(&s));
    }

    /// A fabricated coarseness witness that misses a genuine member of
    /// Z_ε(p)∩s is reproduced as a violation.
    #[test]
    fn recheck_reproduces_escaping_zeeman_member() {
        let s = four_point_fixture();
        // Z_9(O)∩s = {0, 2}: claiming the witness stays inside {0} is false
        let broken = cx("e-coarser-z", 0, 0, Some("9"), Some(vec![0]));
        assert!(broken.recheck(&s));
        let honest = cx("e-coarser-z", 0, 0, Some("9"), Some(vec![0, 2]));
        assert!(!honest.recheck(&s));
    }
}
