//! Causal relations on flat spacetime and the finite topologies they induce.
//!
//! The crate is organized around five pieces:
//!
//! - [`causal_geometry`]: exact predicates for the quadratic form
//!   `Q = d0² − d1² − d2² − d3²`, cone classification, the chronological,
//!   causal and horismos relations, and membership in Euclidean balls,
//!   Zeeman neighborhoods `Z_ε(x)` and horismos balls `A(x)`.
//! - [`event_sampling`]: deterministic grids, seeded sprinkles and axis
//!   samples of events, plus the event-set JSON schema.
//! - [`finite_topology`]: a generic engine for finite topologies given by
//!   subbases and bases — closure, openness, comparison, subspace traces,
//!   interval topologies of relations and intersection topologies.
//! - [`continuum_traces`]: finite traces of the Euclidean, Zeeman and
//!   horismos-interval topologies on a sample, with a radius policy derived
//!   from the sample's squared-distance multiset.
//! - [`harness`]: named, reproducible experiments over all of the above,
//!   with JSON verdicts and re-checkable counterexamples.
//!
//! All coordinate arithmetic is exact rational ([`Scalar`] wraps a
//! big-integer ratio); no floating point is used anywhere, so null-cone
//! membership (`Q = 0`) is decided exactly.

pub mod causal_geometry;
pub mod continuum_traces;
pub mod error;
pub mod event_sampling;
pub mod finite_topology;
pub mod harness;
pub mod scalar;

pub use causal_geometry::{Axis, AxisKind, ConeClass, Displacement, Event4};
pub use error::Error;
pub use event_sampling::{Region, Sample};
pub use finite_topology::{PointSet, RelationMatrix, Role, TopologyBase};
pub use scalar::Scalar;

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;
