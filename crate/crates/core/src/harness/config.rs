//! Experiment identifiers, sample sources and run configuration.

use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use serde::Serialize;

use crate::error::Error;
use crate::event_sampling::{
    grid_sample, poisson_sprinkle, sample_from_json, Region, Sample, DEFAULT_RELATION_CAP,
    DEFAULT_TRACE_CAP,
};
use crate::scalar::Scalar;

/// The named experiments, in report order.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub enum ExperimentId {
    AxisProbe,
    ConePartition,
    ECoarserZ,
    FiniteChain,
    HorismosBallBase,
    IntersectionBase,
    OrderContainments,
    ReflexiveDegeneracy,
    ZIdentity,
    ZeemanIntervalGap,
}

impl ExperimentId {
    pub const ALL: [ExperimentId; 10] = [
        ExperimentId::AxisProbe,
        ExperimentId::ConePartition,
        ExperimentId::ECoarserZ,
        ExperimentId::FiniteChain,
        ExperimentId::HorismosBallBase,
        ExperimentId::IntersectionBase,
        ExperimentId::OrderContainments,
        ExperimentId::ReflexiveDegeneracy,
        ExperimentId::ZIdentity,
        ExperimentId::ZeemanIntervalGap,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            ExperimentId::AxisProbe => "axis-probe",
            ExperimentId::ConePartition => "cone-partition",
            ExperimentId::ECoarserZ => "e-coarser-z",
            ExperimentId::FiniteChain => "finite-chain",
            ExperimentId::HorismosBallBase => "horismos-ball-base",
            ExperimentId::IntersectionBase => "intersection-base",
            ExperimentId::OrderContainments => "order-containments",
            ExperimentId::ReflexiveDegeneracy => "reflexive-degeneracy",
            ExperimentId::ZIdentity => "z-identity",
            ExperimentId::ZeemanIntervalGap => "zeeman-interval-gap",
        }
    }

    /// Report-only experiments never fail a run.
    pub fn report_only(&self) -> bool {
        matches!(
            self,
            ExperimentId::AxisProbe | ExperimentId::ReflexiveDegeneracy
        )
    }
}

impl fmt::Display for ExperimentId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ExperimentId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        ExperimentId::ALL
            .iter()
            .find(|id| id.name() == s)
            .copied()
            .ok_or_else(|| {
                let known: Vec<&str> = ExperimentId::ALL.iter().map(|id| id.name()).collect();
                Error::BadConfig(format!(
                    "unknown experiment {s:?}; known: {} (or \"all\")",
                    known.join(", ")
                ))
            })
    }
}

/// Where a sample comes from.
#[derive(Clone, Debug)]
pub enum SampleSource {
    Grid {
        region: Region,
        spacing: Scalar,
    },
    Sprinkle {
        region: Region,
        count: usize,
        seed: u64,
    },
    File {
        path: PathBuf,
    },
}

impl SampleSource {
    pub fn load(&self, cap: usize) -> Result<Sample, Error> {
        match self {
            SampleSource::Grid { region, spacing } => grid_sample(region, spacing, cap),
            SampleSource::Sprinkle {
                region,
                count,
                seed,
            } => {
                if *count > cap {
                    return Err(Error::CapExceeded {
                        what: "sprinkle count",
                        cap,
                        actual: *count,
                    });
                }
                poisson_sprinkle(region, *count, *seed)
            }
            SampleSource::File { path } => {
                let text = std::fs::read_to_string(path)?;
                let sample = sample_from_json(&text)?;
                if sample.len() > cap {
                    return Err(Error::CapExceeded {
                        what: "file-sourced sample",
                        cap,
                        actual: sample.len(),
                    });
                }
                Ok(sample)
            }
        }
    }

    /// Deterministic description for report echoes.
    pub fn describe(&self) -> String {
        match self {
            SampleSource::Grid { region, spacing } => format!(
                "grid region=[{}]..[{}] spacing={spacing}",
                region.lo().canonical_text(),
                region.hi().canonical_text()
            ),
            SampleSource::Sprinkle {
                region,
                count,
                seed,
            } => format!(
                "sprinkle region=[{}]..[{}] count={count} seed={seed}",
                region.lo().canonical_text(),
                region.hi().canonical_text()
            ),
            SampleSource::File { path } => format!("file {}", path.display()),
        }
    }
}

/// Knobs shared by every experiment run.
///
/// The horismos convention is not a run-level knob: the topology experiments
/// use the irreflexive relation by contract, and the reflexive variant is
/// exercised by the degeneracy report and exposed on the relation/topology
/// CLI surfaces.
#[derive(Clone, Debug)]
pub struct ExperimentConfig {
    /// Base seed for seeded batteries (sprinkles, random base pairs).
    pub seed: u64,
    /// Event cap for topology-trace experiments.
    pub trace_cap: usize,
    /// Event cap for pure relation scans.
    pub relation_cap: usize,
    /// Sprinkled samples in the z-identity battery.
    pub z_identity_sprinkles: usize,
    /// Sprinkled samples in the E-coarser-Z battery.
    pub e_coarser_sprinkles: usize,
    /// Random base pairs checked by the intersection-topology experiment.
    pub intersection_trials: usize,
    /// When set, sample-driven experiments run on this sample instead of
    /// their built-in battery.
    pub source: Option<SampleSource>,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        ExperimentConfig {
            seed: 7,
            trace_cap: DEFAULT_TRACE_CAP,
            relation_cap: DEFAULT_RELATION_CAP,
            z_identity_sprinkles: 16,
            e_coarser_sprinkles: 8,
            intersection_trials: 1000,
            source: None,
        }
    }
}

impl ExperimentConfig {
    pub fn validate(&self) -> Result<(), Error> {
        if self.trace_cap == 0 || self.relation_cap == 0 {
            return Err(Error::BadConfig("caps must be >= 1".into()));
        }
        Ok(())
    }

    /// Deterministic echo of the knobs for report headers.
    pub fn echo(&self) -> ConfigEcho {
        ConfigEcho {
            seed: self.seed,
            trace_cap: self.trace_cap,
            relation_cap: self.relation_cap,
            z_identity_sprinkles: self.z_identity_sprinkles,
            e_coarser_sprinkles: self.e_coarser_sprinkles,
            intersection_trials: self.intersection_trials,
            source: self.source.as_ref().map(SampleSource::describe),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ConfigEcho {
    pub seed: u64,
    pub trace_cap: usize,
    pub relation_cap: usize,
    pub z_identity_sprinkles: usize,
    pub e_coarser_sprinkles: usize,
    pub intersection_trials: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub source: Option<String>,
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn experiment_names_roundtrip() {
        for id in ExperimentId::ALL {
            assert_eq!(id.name().parse::<ExperimentId>().unwrap(), id);
        }
        assert!("no-such-exp".parse::<ExperimentId>().is_err());
    }

    #[test]
    fn names_are_sorted_for_reporting() {
        let names: Vec<&str> = ExperimentId::ALL.iter().map(|id| id.name()).collect();
        let mut sorted = names.clone();
        sorted.sort();
        assert_eq!(names, sorted);
    }

    #[test]
    fn source_load_respects_caps() {
        let region = Region::from_ints([0; 4], [1, 1, 1, 1]).unwrap();
        let src = SampleSource::Sprinkle {
            region,
            count: 10,
            seed: 1,
        };
        assert!(src.load(4).is_err());
        assert_eq!(src.load(64).unwrap().len(), 10);
    }
}
