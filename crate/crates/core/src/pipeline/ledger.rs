use serde::{Deserialize, Serialize};

use crate::algebra::{parse_constant, GaussianRational as Gq, Matrix};
use crate::analysis::{
    certify_good_projection, trace, Certificate, CertificateKind as K, DirectionSampler, Status, Witness,
};
use crate::automorphism::{random_repair_shear, PolynomialAutomorphism};
use crate::curve::{CurveDocument, Direction, Flag, LinearProjection, ParametricCurve};

use super::flag::{choose_flag, parse_flag, FlagCertificate};
use super::step::{complement_row, reduction_step, separating_functional, separation_certificate, step_projection};
use super::{verify_embedding, PipelineError, PipelineStep, StepChoices};

/// Sample budgets per stage.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Budgets {
    pub direction: usize,
    pub flag: usize,
    pub repair: usize,
    /// Degree of the random polynomial in repair shears.
    pub repair_degree: u32,
}

impl Default for Budgets {
    fn default() -> Self {
        Self { direction: 64, flag: 64, repair: 16, repair_degree: 2 }
    }
}

/// The certified chain `f = f₀ → f₁ → f₂` and the closing comparison with `g`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EquivalenceLedger {
    pub f: CurveDocument,
    pub g: CurveDocument,
    pub seed: u64,
    pub budgets: Budgets,
    /// Embedding certificates of `f` and `g`.
    pub input_certs: Vec<Certificate>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub flag_certificate: Option<FlagCertificate>,
    pub steps: Vec<PipelineStep>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub final_cert: Option<Certificate>,
    pub status: Status,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub diagnosis: Option<String>,
}

impl EquivalenceLedger {
    pub fn is_complete(&self) -> bool {
        self.status == Status::Pass
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("serializable")
    }

    pub fn from_json(text: &str) -> Result<Self, serde_json::Error> {
        serde_json::from_str(text)
    }
}

/// Independent seed streams per stage.
fn sub_seed(seed: u64, stage: u64, attempt: u64) -> u64 {
    let mut z = seed ^ stage.wrapping_mul(0x9E37_79B9_7F4A_7C15) ^ attempt.wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

fn standard_basis(m: usize, count: usize) -> Vec<Vec<Gq>> {
    (0..count).map(|i| (0..m).map(|j| if i == j { Gq::one() } else { Gq::zero() }).collect()).collect()
}

fn apply_rows(rows: &[Vec<Gq>], g: &ParametricCurve) -> Result<ParametricCurve, PipelineError> {
    Ok(g.project(&LinearProjection::from_rows(rows.to_vec())?)?)
}

/// `(p ∘ f₂, …)`: the last two coordinates of `f₂` are `r₂ ∘ g`, which must be a
/// good projection of `g`; the first coordinate of `f₂` and a complementary
/// coordinate of `g` must both separate its double points.
pub fn closing_certificate(
    f_last: &ParametricCurve,
    g: &ParametricCurve,
    rows: &[Vec<Gq>],
) -> Result<Certificate, PipelineError> {
    let proj = LinearProjection::from_rows(rows.to_vec())?;
    let good = certify_good_projection(g, &proj)?;
    let h = g.project(&proj)?;
    let k = rows.len();
    let m = f_last.ambient_dim();
    let head = f_last.select(&(0..m - k).collect::<Vec<_>>());
    let tail = f_last.select(&(m - k..m).collect::<Vec<_>>());
    let c = complement_row(rows, m);
    let cg = g.project(&LinearProjection::from_rows(vec![c])?)?;
    let sep_f = separation_certificate(&h, &head, "first coordinate of the last embedding");
    let sep_g = separation_certificate(&h, &cg, "complementary coordinate of g");
    let mut cert = Certificate::all_of(K::Good, "closing comparison", vec![good, sep_f, sep_g]);
    let same = tail.components() == h.components();
    cert.trace.push(trace("last coordinates equal the quotient of g", if same { "yes" } else { "no" }));
    if !same {
        cert = Certificate::fail(
            K::Good,
            "closing comparison",
            Witness::new("coordinate-mismatch", vec!["last coordinates differ from the quotient of g".into()]),
        );
    }
    Ok(cert)
}

struct Found {
    choices: StepChoices,
}

/// Good direction and separating flag for step `l`, with repairs when `l ≥ 1`.
fn plan_step(
    l: usize,
    f_l: &ParametricCurve,
    g: &ParametricCurve,
    flag: &Flag,
    prev_rows: &[Vec<Gq>],
    seed: u64,
    budgets: &Budgets,
) -> Result<Result<Found, String>, PipelineError> {
    let m = f_l.ambient_dim();
    let basis = standard_basis(m, m - l);
    let repairs = if l == 0 { 0 } else { budgets.repair };
    let mut good_seen = 0usize;
    for attempt in 0..=repairs {
        let repair = if attempt == 0 {
            None
        } else {
            Some(random_repair_shear(m, l, sub_seed(seed, 10 + l as u64, attempt as u64), budgets.repair_degree)?)
        };
        let curve = match &repair {
            Some(phi) => f_l.apply_automorphism(phi)?,
            None => f_l.clone(),
        };
        let mut sampler =
            DirectionSampler::new(basis.clone(), sub_seed(seed, 20 + l as u64, attempt as u64), budgets.direction)?;
        for _ in 0..budgets.direction {
            let v = sampler.next_direction();
            let proj = step_projection(&v, l)?;
            if !certify_good_projection(&curve, &proj)?.passed() {
                continue;
            }
            good_seen += 1;
            let h = curve.project(&proj)?;
            let sep = separating_functional(
                &h,
                g,
                flag,
                l,
                prev_rows,
                sub_seed(seed, 30 + l as u64, good_seen as u64),
                budgets.flag,
            )?;
            if let Some(sep) = sep {
                let choices = StepChoices { repair, direction: v, flag: sep.flag, functional: sep.functional };
                return Ok(Ok(Found { choices }));
            }
        }
    }
    Ok(Err(format!(
        "step {l}: no good direction with a separating flag ({good_seen} good directions, {repairs} repair shears tried)"
    )))
}

/// Runs the chain for two embeddings of the same curve in ℂ³.
pub fn run_pipeline(
    f: &ParametricCurve,
    g: &ParametricCurve,
    seed: u64,
    budgets: Budgets,
) -> Result<EquivalenceLedger, PipelineError> {
    if f.ambient_dim() != 3 || g.ambient_dim() != 3 {
        return Err(PipelineError::Incompatible("both curves must lie in ℂ³".into()));
    }
    if f.num_components() != g.num_components() {
        return Err(PipelineError::Incompatible(format!(
            "{} components against {}",
            f.num_components(),
            g.num_components()
        )));
    }
    let input_certs = vec![verify_embedding(f), verify_embedding(g)];
    for (name, c) in ["f", "g"].iter().zip(&input_certs) {
        if !c.passed() {
            let w = c.witness.as_ref().map(|w| format!("{}: {}", w.kind, w.exact.join("; "))).unwrap_or_default();
            return Err(PipelineError::NotAnEmbedding(format!("{name}: {w}")));
        }
    }
    let mut ledger = EquivalenceLedger {
        f: f.to_document(),
        g: g.to_document(),
        seed,
        budgets,
        input_certs,
        flag_certificate: None,
        steps: Vec::new(),
        final_cert: None,
        status: Status::Inconclusive,
        diagnosis: None,
    };
    let search = choose_flag(g, sub_seed(seed, 1, 0), budgets.flag)?;
    let Some((mut flag, flag_cert)) = search.found else {
        ledger.diagnosis = Some(search.diagnosis());
        return Ok(ledger);
    };
    ledger.flag_certificate = Some(flag_cert);
    let mut current = f.clone();
    let mut rows: Vec<Vec<Gq>> = Vec::new();
    for l in 0..2 {
        let found = match plan_step(l, &current, g, &flag, &rows, seed, &budgets)? {
            Ok(found) => found,
            Err(diagnosis) => {
                ledger.diagnosis = Some(diagnosis);
                return Ok(ledger);
            }
        };
        let step = reduction_step(l, &current, g, &rows, &found.choices)?;
        flag = found.choices.flag.clone();
        rows.push(found.choices.functional.clone());
        current = ParametricCurve::from_document(&step.output)?;
        ledger.steps.push(step);
    }
    let fin = closing_certificate(&current, g, &rows)?;
    ledger.status = fin.status;
    if !fin.passed() {
        ledger.diagnosis = Some(fin.reason.clone().unwrap_or_else(|| "closing comparison did not pass".into()));
    }
    ledger.final_cert = Some(fin);
    Ok(ledger)
}

fn parse_row(row: &[String]) -> Result<Vec<Gq>, String> {
    row.iter().map(|s| parse_constant(s).map_err(|e| e.to_string())).collect()
}

fn parse_rows(rows: &[Vec<String>]) -> Result<Vec<Vec<Gq>>, String> {
    rows.iter().map(|r| parse_row(r)).collect()
}

/// First differing field between a stored step and its recomputation.
fn step_difference(stored: &PipelineStep, fresh: &PipelineStep) -> Option<&'static str> {
    let checks: [(&'static str, bool); 16] = [
        ("index", stored.index == fresh.index),
        ("input", stored.input == fresh.input),
        ("repair", stored.repair == fresh.repair),
        ("direction", stored.direction == fresh.direction),
        ("projection", stored.projection == fresh.projection),
        ("good_cert", stored.good_cert == fresh.good_cert),
        ("flag", stored.flag == fresh.flag),
        ("functional", stored.functional == fresh.functional),
        ("quotient_rows", stored.quotient_rows == fresh.quotient_rows),
        ("separation_cert", stored.separation_cert == fresh.separation_cert),
        ("output", stored.output == fresh.output),
        ("embedding_cert", stored.embedding_cert == fresh.embedding_cert),
        ("holo_notes", stored.holo_notes == fresh.holo_notes),
        ("extension_note", stored.extension_note == fresh.extension_note),
        ("degree_in", stored.degree_in == fresh.degree_in),
        ("degree_out", stored.degree_out == fresh.degree_out),
    ];
    checks.into_iter().find(|(_, ok)| !ok).map(|(name, _)| name)
}

/// Re-derives every certificate of the ledger from its raw data.
///
/// Each step is recomputed from its recorded choices (repair, direction,
/// flag, functional) and compared field by field; the coordinate
/// bookkeeping is checked as exact polynomial identities.
pub fn check_ledger(ledger: &EquivalenceLedger) -> Certificate {
    match check_inner(ledger) {
        Ok(tr) => Certificate::pass(K::Ledger, "ledger").with_trace(tr),
        Err((location, detail)) => {
            Certificate::fail(K::Ledger, "ledger", Witness::new("mismatch", vec![location, detail]))
        }
    }
}

type Located = (String, String);

fn at(location: impl Into<String>) -> impl FnOnce(String) -> Located {
    let location = location.into();
    move |detail| (location, detail)
}

fn check_inner(ledger: &EquivalenceLedger) -> Result<Vec<crate::analysis::TraceEntry>, Located> {
    let mut tr = Vec::new();
    if ledger.steps.is_empty() || ledger.final_cert.is_none() || ledger.flag_certificate.is_none() {
        return Err(("chain".into(), "missing steps, flag or closing certificate".into()));
    }
    if ledger.steps.len() != 2 {
        return Err(("chain".into(), format!("expected 2 steps, found {}", ledger.steps.len())));
    }
    let f = ParametricCurve::from_document(&ledger.f).map_err(|e| at("f")(e.to_string()))?;
    let g = ParametricCurve::from_document(&ledger.g).map_err(|e| at("g")(e.to_string()))?;
    if ledger.input_certs != vec![verify_embedding(&f), verify_embedding(&g)] {
        return Err(("input_certs".into(), "embedding certificates do not reproduce".into()));
    }
    if !ledger.input_certs.iter().all(Certificate::passed) {
        return Err(("input_certs".into(), "an input is not an embedding".into()));
    }
    let flag_cert = ledger.flag_certificate.as_ref().expect("checked");
    let flag0 = parse_flag(&flag_cert.flag).map_err(|e| at("flag_certificate")(e.to_string()))?;
    let fresh = super::certify_flag(&g, &flag0).map_err(|e| at("flag_certificate")(e.to_string()))?;
    if &fresh != flag_cert || !fresh.passed() {
        return Err(("flag_certificate".into(), "flag certificate does not reproduce or does not pass".into()));
    }
    tr.push(trace("inputs and initial flag", "reproduced"));

    let mut current = f;
    let mut rows: Vec<Vec<Gq>> = Vec::new();
    let mut last_flag: Flag = flag0;
    for (i, step) in ledger.steps.iter().enumerate() {
        let loc = |field: &str| format!("step {i}: {field}");
        if step.index != i {
            return Err((loc("index"), format!("expected {i}")));
        }
        if step.input != current.to_document() {
            return Err((loc("input"), "does not equal the previous output".into()));
        }
        let repair = match &step.repair {
            Some(doc) => {
                Some(PolynomialAutomorphism::from_document(doc).map_err(|e| at(loc("repair"))(e.to_string()))?)
            }
            None => None,
        };
        let direction = parse_row(&step.direction)
            .and_then(|v| Direction::new(v).map_err(|e| e.to_string()))
            .map_err(at(loc("direction")))?;
        let flag = parse_flag(&step.flag.flag).map_err(|e| at(loc("flag"))(e.to_string()))?;
        let functional = parse_row(&step.functional).map_err(at(loc("functional")))?;
        // earlier quotient rows are frozen and every new row kills the current subspace
        if i > 0 && flag.quotient(2) != last_flag.quotient(2) {
            return Err((loc("flag"), "second subspace changed".into()));
        }
        let w = flag.subspace(2 - i);
        if w.iter().any(|v| !functional.iter().zip(v).fold(Gq::zero(), |acc, (a, b)| &acc + &(a * b)).is_zero()) {
            return Err((loc("functional"), "does not vanish on the flag subspace".into()));
        }
        let mut next_rows = rows.clone();
        next_rows.push(functional.clone());
        if Matrix::from_rows(next_rows.clone()).rank() != next_rows.len() {
            return Err((loc("functional"), "dependent on earlier quotient rows".into()));
        }
        if parse_rows(&step.quotient_rows).map_err(at(loc("quotient_rows")))? != next_rows {
            return Err((loc("quotient_rows"), "do not extend the previous rows by the functional".into()));
        }
        let choices = StepChoices { repair, direction, flag: flag.clone(), functional };
        let recomputed =
            reduction_step(i, &current, &g, &rows, &choices).map_err(|e| at(loc("recomputation"))(e.to_string()))?;
        if let Some(field) = step_difference(step, &recomputed) {
            return Err((loc(field), "does not reproduce".into()));
        }
        let out = ParametricCurve::from_document(&step.output).map_err(|e| at(loc("output"))(e.to_string()))?;
        let k = next_rows.len();
        let tail = out.select(&(3 - k..3).collect::<Vec<_>>());
        let expected = apply_rows(&next_rows, &g).map_err(|e| at(loc("quotient_rows"))(e.to_string()))?;
        if tail.components() != expected.components() {
            return Err((loc("output"), format!("last {k} coordinates differ from the quotient of g")));
        }
        tr.push(trace(format!("step {i}: last {k} coordinates equal the quotient of g"), "yes"));
        tr.push(trace(format!("step {i}: certificates"), "reproduced"));
        current = out;
        rows = next_rows;
        last_flag = flag;
    }
    let fin = closing_certificate(&current, &g, &rows).map_err(|e| at("final_cert")(e.to_string()))?;
    if Some(&fin) != ledger.final_cert.as_ref() {
        return Err(("final_cert".into(), "does not reproduce".into()));
    }
    if !fin.passed() || ledger.status != Status::Pass {
        return Err(("status".into(), "closing comparison does not pass".into()));
    }
    tr.push(trace("closing comparison", "reproduced"));
    Ok(tr)
}
