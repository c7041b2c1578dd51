use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::algebra::GaussianRational as Gq;
use crate::analysis::{
    bad_locus_membership, certify_2transversal, certify_immersive, certify_proper, certify_transversal,
    BadLocusMembership, Certificate, DirectionSampler, Status, Witness,
};
use crate::curve::{LinearProjection, ParametricCurve};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum LemmaId {
    #[serde(rename = "immersion")]
    Immersion,
    #[serde(rename = "properness")]
    Properness,
    #[serde(rename = "transversality")]
    Transversality,
    #[serde(rename = "2-transversality")]
    TwoTransversality,
}

impl LemmaId {
    pub const ALL: [LemmaId; 4] =
        [LemmaId::Immersion, LemmaId::Properness, LemmaId::Transversality, LemmaId::TwoTransversality];

    pub fn name(&self) -> &'static str {
        match self {
            LemmaId::Immersion => "immersion",
            LemmaId::Properness => "properness",
            LemmaId::Transversality => "transversality",
            LemmaId::TwoTransversality => "2-transversality",
        }
    }

    fn certify(&self, f: &ParametricCurve, p: &LinearProjection) -> Certificate {
        let r = match self {
            LemmaId::Immersion => certify_immersive(f, p),
            LemmaId::Properness => certify_proper(f, p),
            LemmaId::Transversality => certify_transversal(f, p),
            LemmaId::TwoTransversality => certify_2transversal(f, p),
        };
        r.expect("sampled directions have the curve's dimension")
    }
}

impl fmt::Display for LemmaId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for LemmaId {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "immersion" => Ok(LemmaId::Immersion),
            "properness" | "proper" => Ok(LemmaId::Properness),
            "transversality" | "transversal" => Ok(LemmaId::Transversality),
            "2-transversality" | "two-transversality" | "2-transversal" => Ok(LemmaId::TwoTransversality),
            _ => Err(format!(
                "unknown lemma id {s:?} (expected immersion, properness, transversality or 2-transversality)"
            )),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FailureRecord {
    pub sample: usize,
    pub direction: Vec<String>,
    /// Inconclusive certificates get a synthesized `inconclusive` witness.
    pub witness: Witness,
    pub status: Status,
    pub on_collapse_locus: bool,
    pub on_tangent_locus: bool,
    pub on_nontransversal_secant_locus: bool,
    pub on_trisecant_locus: bool,
    pub explained: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LemmaExperimentReport {
    pub lemma: LemmaId,
    pub curve: String,
    /// Number of trailing coordinates the sampled directions leave at zero.
    pub fixed_last: usize,
    pub samples: usize,
    pub passes: usize,
    pub failures: Vec<FailureRecord>,
}

impl LemmaExperimentReport {
    pub fn unexplained(&self) -> usize {
        self.failures.iter().filter(|f| !f.explained).count()
    }

    pub fn is_consistent(&self) -> bool {
        self.passes + self.failures.len() == self.samples
    }
}

/// Certifies the lemma's conclusion along `samples` seeded directions in
/// the span of the first `m − fixed_last` coordinates and checks every
/// failure against the bad loci computed in the ambient space.
pub fn run_lemma_test(
    lemma: LemmaId,
    curve: &ParametricCurve,
    curve_name: &str,
    samples: usize,
    seed: u64,
    fixed_last: usize,
) -> Result<LemmaExperimentReport, String> {
    let m = curve.ambient_dim();
    if fixed_last + 1 >= m {
        return Err(format!("fixed_last = {fixed_last} leaves no projective space in dimension {m}"));
    }
    let basis: Vec<Vec<Gq>> =
        (0..m - fixed_last).map(|i| (0..m).map(|j| if i == j { Gq::one() } else { Gq::zero() }).collect()).collect();
    let mut sampler = DirectionSampler::new(basis, seed, samples).map_err(|e| e.to_string())?;
    let mut passes = 0;
    let mut failures = Vec::new();
    for i in 0..samples {
        let v = sampler.next_direction();
        let cert = lemma.certify(curve, &LinearProjection::along(&v));
        if cert.passed() {
            passes += 1;
            continue;
        }
        let loci: BadLocusMembership = bad_locus_membership(curve, &v);
        let witness = cert
            .witness
            .clone()
            .unwrap_or_else(|| Witness::new("inconclusive", vec![cert.reason.clone().unwrap_or_default()]));
        failures.push(FailureRecord {
            sample: i,
            direction: v.to_strings(),
            witness,
            status: cert.status,
            on_collapse_locus: loci.collapse,
            on_tangent_locus: loci.tangent,
            on_nontransversal_secant_locus: loci.nontransversal_secant,
            on_trisecant_locus: loci.trisecant,
            explained: loci.explains(&cert),
        });
    }
    Ok(LemmaExperimentReport { lemma, curve: curve_name.into(), fixed_last, samples, passes, failures })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curve::fixtures;

    #[test]
    fn lemma_ids_round_trip() {
        for l in LemmaId::ALL {
            assert_eq!(l.name().parse::<LemmaId>().unwrap(), l);
            let json = serde_json::to_string(&l).unwrap();
            assert_eq!(json, format!("\"{}\"", l.name()));
        }
        assert!("smoothness".parse::<LemmaId>().is_err());
    }

    #[test]
    fn properness_always_holds_for_the_cubic() {
        let r = run_lemma_test(LemmaId::Properness, &fixtures::twisted_cubic(), "twisted-cubic", 30, 1, 0).unwrap();
        assert_eq!(r.passes, 30);
        assert!(r.is_consistent());
    }

    #[test]
    fn three_lines_in_the_plane_mostly_fail_and_are_explained() {
        let r = run_lemma_test(LemmaId::TwoTransversality, &fixtures::three_lines(), "three-lines", 20, 5, 1).unwrap();
        assert!(r.is_consistent());
        assert!(r.failures.len() >= 18);
        assert_eq!(r.unexplained(), 0);
        assert!(r.failures.iter().all(|f| f.witness.kind == "triple-point" || f.witness.kind == "non-transversal"));
    }

    #[test]
    fn constraint_must_leave_a_line() {
        assert!(run_lemma_test(LemmaId::Immersion, &fixtures::twisted_cubic(), "c", 1, 0, 2).is_err());
    }
}
