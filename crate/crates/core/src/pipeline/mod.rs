//! Interpolation between two embeddings of the same curve in ℂ³ through a
//! chain of embeddings whose consecutive members differ by one coordinate,
//! recorded in a ledger that can be re-checked from its serialized form.

mod flag;
mod ledger;
mod step;

use thiserror::Error;

use crate::algebra::UniPoly;
use crate::analysis::{double_point_system, trace, AnalysisError, Certificate, CertificateKind as K, Witness};
use crate::automorphism::AutomorphismError;
use crate::curve::{CurveError, ParametricCurve};

pub use flag::{certify_flag, choose_flag, FlagCertificate, FlagSearch};
pub use ledger::{check_ledger, closing_certificate, run_pipeline, Budgets, EquivalenceLedger};
pub use step::{
    complement_row, keep_last_projection, reduction_step, separating_functional, separation_certificate, HoloNote,
    PipelineStep, Separation, StepChoices,
};

#[derive(Debug, Error)]
pub enum PipelineError {
    #[error(transparent)]
    Curve(#[from] CurveError),
    #[error(transparent)]
    Analysis(#[from] AnalysisError),
    #[error(transparent)]
    Automorphism(#[from] AutomorphismError),
    #[error("input is not an embedding: {0}")]
    NotAnEmbedding(String),
    #[error("the two curves have different shapes: {0}")]
    Incompatible(String),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("step rejected: {} certificate did not pass", .0.kind.label())]
    Rejected(Box<Certificate>),
}

/// Injective, immersive and proper, with disjoint component images.
pub fn verify_embedding(curve: &ParametricCurve) -> Certificate {
    let subject = "embedding";
    let mut proper = Certificate::pass(K::Proper, subject);
    let mut imm = Certificate::pass(K::Immersive, subject);
    for k in 0..curve.num_components() {
        let deg = curve.component(k).iter().map(UniPoly::deg0).max().unwrap_or(0);
        proper.push(format!("component {k}: degree"), deg.to_string());
        if deg == 0 && proper.passed() {
            proper = Certificate::fail(K::Proper, subject, Witness::new("collapse", vec![format!("component {k}")]))
                .with_trace(proper.trace);
        }
        let g = curve.derivative(k).iter().fold(UniPoly::zero(), |g, d| g.gcd(d));
        imm.push(format!("component {k}: gcd of derivatives"), g.display("t"));
        if imm.passed() && !(g.is_constant() && !g.is_zero()) {
            let w = Witness::new(
                "critical-parameter",
                vec![format!("component {k}"), format!("t: {} = 0", g.display("t"))],
            );
            imm = Certificate::fail(K::Immersive, subject, w).with_trace(imm.trace);
        }
    }
    if !proper.passed() {
        let inj = Certificate::inconclusive(K::Transversal, subject, "a component is constant");
        return Certificate::all_of(K::Embedding, subject, vec![proper, imm, inj]);
    }
    let dps = double_point_system(curve, None);
    let mut inj = Certificate::pass(K::Transversal, subject);
    for rec in dps.pairs.iter().filter(|p| p.a <= p.b) {
        let label = format!("components ({}, {}): coincident points", rec.a, rec.b);
        match &rec.solutions {
            crate::algebra::SolutionSet::Finite(br) if br.is_empty() => inj.trace.push(trace(label, "none")),
            crate::algebra::SolutionSet::Finite(br) => {
                let b = &br[0];
                let w = Witness::new(
                    "double-point",
                    vec![
                        format!("components ({}, {})", rec.a, rec.b),
                        format!("s: {} = 0", b.modulus.display("s")),
                        format!("t: {} = 0", b.fiber.display("s", "t")),
                    ],
                );
                inj = Certificate::fail(K::Transversal, subject, w).with_trace(inj.trace);
                break;
            }
            crate::algebra::SolutionSet::Infinite(r) => {
                let w = Witness::new("non-injective", vec![format!("components ({}, {})", rec.a, rec.b), r.clone()]);
                inj = Certificate::fail(K::Transversal, subject, w).with_trace(inj.trace);
                break;
            }
            crate::algebra::SolutionSet::Unresolved(r) => {
                inj = Certificate::inconclusive(K::Transversal, subject, r.clone());
                break;
            }
        }
    }
    let mut c = Certificate::all_of(K::Embedding, subject, vec![proper, imm, inj]);
    c.push("ambient dimension", curve.ambient_dim().to_string());
    c
}
