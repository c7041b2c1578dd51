use serde::{Deserialize, Serialize};

use crate::algebra::{parse_constant, GaussianRational as Gq};
use crate::analysis::{
    certify_proper, critical_locus, describe_projection, transversal_of, two_transversal_of, Certificate,
    CertificateKind as K, DirectionSampler,
};
use crate::curve::{CurveError, Flag, ParametricCurve};

use super::PipelineError;

/// The four flag properties for a curve `g` in ℂ³ and a flag `W₁ ⊂ W₂`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FlagCertificate {
    pub flag: Vec<Vec<String>>,
    /// Quotients by `W₁` and by `W₂` are transversal.
    pub prop_trans: Certificate,
    /// Quotient by `W₁` is 2-transversal.
    pub prop_2trans: Certificate,
    /// Quotient by `W₂` is proper.
    pub prop_proper: Certificate,
    /// Rank-0 locus of the quotient by `W_k` has dimension at most `k − 2`.
    pub prop_imm: Certificate,
}

impl FlagCertificate {
    pub fn certificate(&self) -> Certificate {
        Certificate::all_of(
            K::FlagProperty,
            "flag",
            vec![self.prop_trans.clone(), self.prop_2trans.clone(), self.prop_proper.clone(), self.prop_imm.clone()],
        )
    }

    pub fn passed(&self) -> bool {
        self.certificate().passed()
    }

    pub fn to_flag(&self) -> Result<Flag, CurveError> {
        parse_flag(&self.flag)
    }
}

pub(crate) fn parse_flag(rows: &[Vec<String>]) -> Result<Flag, CurveError> {
    let vectors = rows
        .iter()
        .map(|r| {
            r.iter()
                .enumerate()
                .map(|(j, s)| {
                    parse_constant(s).map_err(|source| CurveError::Parse { component: 0, coordinate: j, source })
                })
                .collect::<Result<Vec<Gq>, _>>()
        })
        .collect::<Result<Vec<_>, _>>()?;
    Flag::new(vectors)
}

pub fn certify_flag(g: &ParametricCurve, flag: &Flag) -> Result<FlagCertificate, PipelineError> {
    if flag.ambient_dim() != 3 || g.ambient_dim() != 3 {
        return Err(PipelineError::Precondition("flags are supported in ℂ³ only".into()));
    }
    let p1 = flag.quotient(1);
    let p2 = flag.quotient(2);
    let h1 = g.project(&p1)?;
    let h2 = g.project(&p2)?;
    let s1 = describe_projection(&p1);
    let s2 = describe_projection(&p2);
    let prop_trans = Certificate::all_of(
        K::Transversal,
        "quotients by W1 and W2",
        vec![transversal_of(&h1, None, &s1), transversal_of(&h2, None, &s2)],
    );
    let prop_2trans = two_transversal_of(&h1, &s1);
    let prop_proper = certify_proper(g, &p2)?;
    let prop_imm = Certificate::all_of(
        K::Immersive,
        "rank-0 loci of quotients by W1 and W2",
        vec![critical_locus(g, &p1)?.certify_bound(-1, s1), critical_locus(g, &p2)?.certify_bound(0, s2)],
    );
    Ok(FlagCertificate { flag: flag.to_strings(), prop_trans, prop_2trans, prop_proper, prop_imm })
}

/// Result of a seeded flag search with per-property failure counts.
#[derive(Clone, Debug)]
pub struct FlagSearch {
    pub found: Option<(Flag, FlagCertificate)>,
    pub attempts: usize,
    /// Failures of (transversal, 2-transversal, proper, immersion) in that order.
    pub failures: [usize; 4],
}

impl FlagSearch {
    pub fn diagnosis(&self) -> String {
        let [t, t2, p, i] = self.failures;
        format!(
            "no flag found in {} attempts; failures: transversal {t}, 2-transversal {t2}, proper {p}, immersion {i}",
            self.attempts
        )
    }
}

fn search<F, A>(g: &ParametricCurve, budget: usize, mut next: F, mut accept: A) -> Result<FlagSearch, PipelineError>
where
    F: FnMut() -> Option<Flag>,
    A: FnMut(&Flag, &FlagCertificate) -> bool,
{
    let mut out = FlagSearch { found: None, attempts: 0, failures: [0; 4] };
    while out.attempts < budget {
        out.attempts += 1;
        let Some(flag) = next() else { continue };
        let cert = certify_flag(g, &flag)?;
        if cert.passed() {
            if accept(&flag, &cert) {
                out.found = Some((flag, cert));
                break;
            }
            continue;
        }
        for (k, c) in [&cert.prop_trans, &cert.prop_2trans, &cert.prop_proper, &cert.prop_imm].into_iter().enumerate() {
            if !c.passed() {
                out.failures[k] += 1;
            }
        }
    }
    Ok(out)
}

/// Seeded random full flags, certified until all four properties pass.
pub fn choose_flag(g: &ParametricCurve, seed: u64, budget: usize) -> Result<FlagSearch, PipelineError> {
    choose_flag_where(g, seed, budget, |_, _| true)
}

/// Like [`choose_flag`], also requiring `accept` of the certified flag.
pub(crate) fn choose_flag_where(
    g: &ParametricCurve,
    seed: u64,
    budget: usize,
    accept: impl FnMut(&Flag, &FlagCertificate) -> bool,
) -> Result<FlagSearch, PipelineError> {
    let mut sampler = DirectionSampler::full(3, seed, budget)?;
    search(
        g,
        budget,
        || {
            let w1 = sampler.next_direction().coords().to_vec();
            let w2 = sampler.next_direction().coords().to_vec();
            Flag::new(vec![w1, w2]).ok()
        },
        accept,
    )
}

/// Resamples `W₁` inside the fixed `W₂`.
pub(crate) fn perturb_first(
    g: &ParametricCurve,
    flag: &Flag,
    seed: u64,
    budget: usize,
    accept: impl FnMut(&Flag, &FlagCertificate) -> bool,
) -> Result<FlagSearch, PipelineError> {
    let mut sampler = DirectionSampler::new(flag.vectors().to_vec(), seed, budget)?;
    search(g, budget, || flag.with_vector(1, sampler.next_direction().coords().to_vec()).ok(), accept)
}
