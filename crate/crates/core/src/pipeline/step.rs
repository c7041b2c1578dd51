use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::algebra::{format_c64, BiPoly, GaussianRational as Gq, Matrix, UniPoly};
use crate::analysis::{
    certify_good_projection, double_point_system, trace, witness_precision, Certificate, CertificateKind as K, Witness,
};
use crate::automorphism::{AutomorphismDocument, PolynomialAutomorphism};
use crate::curve::{CurveDocument, Direction, Flag, LinearProjection, ParametricCurve};

use super::flag::{certify_flag, choose_flag_where, perturb_first, FlagCertificate};
use super::{verify_embedding, PipelineError};

/// Numeric data for the holomorphic part of one coordinate swap at a double point.
///
/// `ratio` is `(d(x) − d(y)) / (h(x) − h(y))` for the new coordinate `d` and
/// the dropped coordinate `h`; `log_ratio` is its principal logarithm, one of
/// many valid choices. Decimals are advisory.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HoloNote {
    pub components: (usize, usize),
    pub s: String,
    pub t: String,
    pub ratio: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ratio_exact: Option<String>,
    pub log_ratio: String,
    pub branch: String,
}

/// One step `f_l → f_{l+1}` of the chain, in serialized form.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PipelineStep {
    pub index: usize,
    pub input: CurveDocument,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub repair: Option<AutomorphismDocument>,
    pub direction: Vec<String>,
    pub projection: Vec<Vec<String>>,
    pub good_cert: Certificate,
    pub flag: FlagCertificate,
    pub functional: Vec<String>,
    /// Rows of the quotient map whose values fill the last `l + 1` coordinates.
    pub quotient_rows: Vec<Vec<String>>,
    pub separation_cert: Certificate,
    pub output: CurveDocument,
    pub embedding_cert: Certificate,
    pub holo_notes: Vec<HoloNote>,
    pub extension_note: String,
    pub degree_in: usize,
    pub degree_out: usize,
}

impl PipelineStep {
    pub fn is_complete(&self) -> bool {
        self.good_cert.passed() && self.flag.passed() && self.separation_cert.passed() && self.embedding_cert.passed()
    }
}

/// Free choices of a step; everything else is computed from them.
#[derive(Clone, Debug)]
pub struct StepChoices {
    pub repair: Option<PolynomialAutomorphism>,
    pub direction: Direction,
    pub flag: Flag,
    pub functional: Vec<Gq>,
}

/// Quotient along `v` that keeps the last `l` coordinates as its last `l` outputs.
pub fn keep_last_projection(v: &Direction, l: usize) -> Result<LinearProjection, PipelineError> {
    let m = v.dim();
    if l >= m || v.coords()[m - l..].iter().any(|c| !c.is_zero()) {
        return Err(PipelineError::Precondition(format!("direction {v} moves the last {l} coordinates")));
    }
    let head = Direction::new(v.coords()[..m - l].to_vec())?;
    let q = LinearProjection::along(&head);
    let mut rows: Vec<Vec<Gq>> = q
        .matrix()
        .to_rows()
        .into_iter()
        .map(|mut r| {
            r.extend(std::iter::repeat_n(Gq::zero(), l));
            r
        })
        .collect();
    for i in m - l..m {
        rows.push((0..m).map(|j| if i == j { Gq::one() } else { Gq::zero() }).collect());
    }
    Ok(LinearProjection::from_rows(rows)?)
}

/// First standard basis functional independent of the given rows.
pub fn complement_row(rows: &[Vec<Gq>], m: usize) -> Vec<Gq> {
    let rank = if rows.is_empty() { 0 } else { Matrix::from_rows(rows.to_vec()).rank() };
    (0..m)
        .map(|i| (0..m).map(|j| if i == j { Gq::one() } else { Gq::zero() }).collect::<Vec<_>>())
        .find(|e| {
            let mut all = rows.to_vec();
            all.push(e.clone());
            Matrix::from_rows(all).rank() > rank
        })
        .expect("rows do not span")
}

fn apply_row(row: &[Gq], x: &[UniPoly]) -> UniPoly {
    row.iter().zip(x).fold(UniPoly::zero(), |acc, (a, p)| if a.is_zero() { acc } else { &acc + &p.scale(a) })
}

fn functional_curve(row: &[Gq], c: &ParametricCurve) -> ParametricCurve {
    let comps = c.components().iter().map(|x| vec![apply_row(row, x)]).collect();
    ParametricCurve::from_components(comps).expect("same shape")
}

/// Certifies that `d` takes different values at the two points of every double point of `h`.
pub fn separation_certificate(h: &ParametricCurve, d: &ParametricCurve, subject: &str) -> Certificate {
    let dps = double_point_system(h, None);
    if let Some((a, b, r)) = dps.infinite_pairs().into_iter().next() {
        return Certificate::inconclusive(K::Separation, subject, format!("components ({a}, {b}): {r}"));
    }
    let mut tr = Vec::new();
    for rec in dps.pairs.iter().filter(|p| p.a <= p.b) {
        let diff = BiPoly::difference(&d.component(rec.a)[0], &d.component(rec.b)[0]);
        if rec.branches().is_empty() {
            tr.push(trace(format!("components ({}, {}): double points", rec.a, rec.b), "none"));
        }
        for br in rec.branches() {
            let label = format!(
                "components ({}, {}), branch [{}; {}]: difference mod branch",
                rec.a,
                rec.b,
                br.modulus.display("s"),
                br.fiber.display("s", "t")
            );
            tr.push(trace(label, br.normal_form(&diff).display("s", "t")));
            if let Some(hit) = br.restrict(&diff).into_iter().next() {
                let w = Witness::new(
                    "unseparated-double-point",
                    vec![
                        format!("components ({}, {})", rec.a, rec.b),
                        format!("s: {} = 0", hit.modulus.display("s")),
                        format!("t: {} = 0", hit.fiber.display("s", "t")),
                    ],
                );
                return Certificate::fail(K::Separation, subject, w).with_trace(tr);
            }
        }
    }
    Certificate::pass(K::Separation, subject).with_trace(tr)
}

fn holo_notes(h: &ParametricCurve, dropped: &ParametricCurve, d: &ParametricCurve) -> Vec<HoloNote> {
    let prec = witness_precision();
    let dps = double_point_system(h, Some(&prec));
    let mut notes = Vec::new();
    for rec in dps.pairs.iter().filter(|p| p.a <= p.b) {
        for (sb, tb) in &rec.isolates {
            let (s, t) = (sb.center_c64(), tb.center_c64());
            if rec.a == rec.b && (s.re, s.im) > (t.re, t.im) {
                continue;
            }
            let num = d.component(rec.a)[0].eval_c64(s) - d.component(rec.b)[0].eval_c64(t);
            let den = dropped.component(rec.a)[0].eval_c64(s) - dropped.component(rec.b)[0].eval_c64(t);
            let ratio: Complex64 = num / den;
            let ratio_exact = (sb.is_exact() && tb.is_exact()).then(|| {
                let e = |c: &ParametricCurve, k: usize, x: &Gq| c.component(k)[0].eval(x);
                let n = &e(d, rec.a, sb.center()) - &e(d, rec.b, tb.center());
                let dd = &e(dropped, rec.a, sb.center()) - &e(dropped, rec.b, tb.center());
                (&n / &dd).to_grammar()
            });
            notes.push(HoloNote {
                components: (rec.a, rec.b),
                s: sb.decimal(),
                t: tb.decimal(),
                ratio: format_c64(ratio),
                ratio_exact,
                log_ratio: format_c64(ratio.ln()),
                branch: "principal".into(),
            });
        }
    }
    notes
}

pub(crate) const EXTENSION_NOTE: &str =
    "the additive correction on the image is a holomorphic extension from a closed analytic subvariety; it exists and is not constructed";

fn rows_to_strings(rows: &[Vec<Gq>]) -> Vec<Vec<String>> {
    rows.iter().map(|r| r.iter().map(Gq::to_grammar).collect()).collect()
}

/// The projection used at step `l`.
pub(crate) fn step_projection(v: &Direction, l: usize) -> Result<LinearProjection, PipelineError> {
    if l == 0 {
        Ok(LinearProjection::along(v))
    } else {
        keep_last_projection(v, l)
    }
}

/// Replaces `f_l` by `(p_v ∘ f_l, e ∘ g)` after an optional repair automorphism.
///
/// Fails with the offending certificate when the projection is not good,
/// the flag or the separation does not certify, or the output is not an
/// embedding.
pub fn reduction_step(
    l: usize,
    f_l: &ParametricCurve,
    g: &ParametricCurve,
    prev_rows: &[Vec<Gq>],
    choices: &StepChoices,
) -> Result<PipelineStep, PipelineError> {
    let m = f_l.ambient_dim();
    let repaired = match &choices.repair {
        Some(phi) => {
            if !phi.fixes_last(l) {
                return Err(PipelineError::Precondition(format!("repair automorphism moves the last {l} coordinates")));
            }
            f_l.apply_automorphism(phi)?
        }
        None => f_l.clone(),
    };
    let proj = step_projection(&choices.direction, l)?;
    let good_cert = certify_good_projection(&repaired, &proj)?;
    let flag = certify_flag(g, &choices.flag)?;
    let h = repaired.project(&proj)?;
    let d = functional_curve(&choices.functional, g);
    let separation_cert = separation_certificate(&h, &d, "new coordinate");
    let mut quotient_rows = prev_rows.to_vec();
    quotient_rows.push(choices.functional.clone());
    let mut comps = h.components().to_vec();
    for (k, c) in comps.iter_mut().enumerate() {
        c.push(d.component(k)[0].clone());
    }
    let output = ParametricCurve::new(comps)?;
    let embedding_cert = verify_embedding(&output);
    let dropped = functional_curve(&complement_row(&proj.matrix().to_rows(), m), &repaired);
    let holo = if good_cert.passed() { holo_notes(&h, &dropped, &d) } else { Vec::new() };
    let step = PipelineStep {
        index: l,
        input: f_l.to_document(),
        repair: choices.repair.as_ref().map(PolynomialAutomorphism::to_document),
        direction: choices.direction.to_strings(),
        projection: proj.rows_as_strings(),
        good_cert,
        flag,
        functional: choices.functional.iter().map(Gq::to_grammar).collect(),
        quotient_rows: rows_to_strings(&quotient_rows),
        separation_cert,
        output: output.to_document(),
        embedding_cert,
        holo_notes: holo,
        extension_note: EXTENSION_NOTE.into(),
        degree_in: f_l.degree(),
        degree_out: output.degree(),
    };
    for c in [&step.good_cert, &step.flag.certificate(), &step.separation_cert, &step.embedding_cert] {
        if !c.passed() {
            return Err(PipelineError::Rejected(Box::new(c.clone())));
        }
    }
    Ok(step)
}

/// The functional completing `prev_rows` to the quotient by `W_{2−l}`.
pub(crate) fn functional_for(flag: &Flag, l: usize, prev_rows: &[Vec<Gq>]) -> Option<Vec<Gq>> {
    let q = flag.quotient(flag.ambient_dim() - 1 - l);
    let rank = if prev_rows.is_empty() { 0 } else { Matrix::from_rows(prev_rows.to_vec()).rank() };
    q.matrix().to_rows().into_iter().find(|r| {
        let mut all = prev_rows.to_vec();
        all.push(r.clone());
        Matrix::from_rows(all).rank() > rank
    })
}

/// A separating functional together with the certified flag it comes from.
#[derive(Clone, Debug)]
pub struct Separation {
    pub flag: Flag,
    pub flag_cert: FlagCertificate,
    pub functional: Vec<Gq>,
    pub cert: Certificate,
    pub attempts: usize,
}

/// Finds a flag whose next quotient coordinate separates the double points of `h`.
///
/// The current flag is tried first. At level 0 the whole flag is resampled;
/// at higher levels only `W₁` moves inside `W₂`, so earlier quotients stay fixed.
pub fn separating_functional(
    h: &ParametricCurve,
    g: &ParametricCurve,
    flag: &Flag,
    l: usize,
    prev_rows: &[Vec<Gq>],
    seed: u64,
    budget: usize,
) -> Result<Option<Separation>, PipelineError> {
    let try_flag = |f: &Flag| -> Option<(Vec<Gq>, Certificate)> {
        let e = functional_for(f, l, prev_rows)?;
        let cert = separation_certificate(h, &functional_curve(&e, g), "new coordinate");
        cert.passed().then_some((e, cert))
    };
    let current = certify_flag(g, flag)?;
    if current.passed() {
        if let Some((functional, cert)) = try_flag(flag) {
            return Ok(Some(Separation { flag: flag.clone(), flag_cert: current, functional, cert, attempts: 0 }));
        }
    }
    let mut found = None;
    let accept = |f: &Flag, _: &FlagCertificate| match try_flag(f) {
        Some(x) => {
            found = Some(x);
            true
        }
        None => false,
    };
    let search = if l == 0 {
        choose_flag_where(g, seed, budget, accept)?
    } else {
        perturb_first(g, flag, seed, budget, accept)?
    };
    Ok(search.found.zip(found).map(|((flag, flag_cert), (functional, cert))| Separation {
        flag,
        flag_cert,
        functional,
        cert,
        attempts: search.attempts,
    }))
}
