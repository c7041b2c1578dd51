//! Certifiers for proper, immersive and 2-transversal projections of
//! parametric curves, double-point extraction and direction search.

mod badlocus;
mod certificate;
mod certify;
mod double_points;
mod search;

use thiserror::Error;

use crate::curve::CurveError;

pub use badlocus::{bad_locus_membership, BadLocusMembership};
pub use certificate::{Certificate, CertificateKind, Status, TraceEntry, Verdict, Witness};
pub use certify::{
    certify_2transversal, certify_good, certify_good_projection, certify_immersive, certify_proper,
    certify_transversal, critical_locus, describe_projection, transversal_of, two_transversal_of, witness_precision,
    ComponentLocus, CriticalLocus, LocusDim,
};
pub use double_points::{
    double_point_system, double_points, pair_generators, solve_pair, DoublePointSystem, PairRecord,
};
pub use search::{search_direction, search_with, DirectionSampler, SearchOutcome};

pub(crate) use certificate::trace;

#[derive(Debug, Error)]
pub enum AnalysisError {
    #[error(transparent)]
    Curve(#[from] CurveError),
    #[error("component {component} maps to a point")]
    Collapse { component: usize },
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("constraint subspace is empty")]
    EmptyConstraint,
}
