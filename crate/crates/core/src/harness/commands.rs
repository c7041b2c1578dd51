use std::path::Path;

use num_rational::BigRational;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::algebra::{format_c64, parse_constant, ComplexBox, GaussianRational as Gq, Matrix};
use crate::analysis::{
    certify_good, certify_immersive, certify_proper, describe_projection, double_points, transversal_of, AnalysisError,
    Certificate, Status,
};
use crate::automorphism::{prescribed_jet, PolynomialAutomorphism};
use crate::curve::{Direction, LinearProjection, ParametricCurve};
use crate::pipeline::{check_ledger, run_pipeline, verify_embedding, EquivalenceLedger, PipelineError};

use super::{
    resolve_curve, run_lemma_test, write_atomic, LemmaId, Report, RunConfig, EXIT_BUDGET, EXIT_FAIL, EXIT_INVALID,
    EXIT_PASS,
};

/// Exit code and rendered report of one command.
#[derive(Clone, Debug)]
pub struct Outcome {
    pub exit_code: i32,
    pub report: Value,
}

impl Outcome {
    fn new<T: Serialize>(config: &RunConfig, exit_code: i32, result: T) -> Self {
        let report = serde_json::to_value(Report { config: config.clone(), exit_code, result }).expect("serializable");
        Self { exit_code, report }
    }

    fn invalid(config: &RunConfig, error: impl std::fmt::Display) -> Self {
        Self::new(config, EXIT_INVALID, json!({ "error": error.to_string() }))
    }

    pub fn render(&self) -> String {
        let mut s = serde_json::to_string_pretty(&self.report).expect("serializable");
        s.push('\n');
        s
    }

    /// Writes the report to `config.output` (atomically) or stdout.
    pub fn emit(&self) -> std::io::Result<()> {
        let out = self.report["config"]["output"].as_str().map(str::to_owned);
        match out {
            Some(path) => write_atomic(Path::new(&path), &self.render()),
            None => {
                print!("{}", self.render());
                Ok(())
            }
        }
    }
}

fn status_code(status: Status) -> i32 {
    match status {
        Status::Pass => EXIT_PASS,
        Status::Fail | Status::Inconclusive => EXIT_FAIL,
    }
}

fn precision(config: &RunConfig) -> Result<BigRational, Outcome> {
    config.precision_value().map_err(|e| Outcome::invalid(config, e))
}

fn load(config: &RunConfig, spec: &str) -> Result<ParametricCurve, Outcome> {
    resolve_curve(spec).map_err(|e| Outcome::invalid(config, e))
}

macro_rules! try_outcome {
    ($e:expr) => {
        match $e {
            Ok(v) => v,
            Err(o) => return o,
        }
    };
}

fn box_json(b: &ComplexBox) -> Value {
    json!({
        "exact": b.is_exact().then(|| b.center().to_grammar()),
        "center": b.center().to_grammar(),
        "radius": b.radius().to_string(),
        "decimal": b.decimal(),
    })
}

/// Image of a parameter box under one component, exact when the box is a point.
fn image_json(h: &ParametricCurve, k: usize, b: &ComplexBox) -> Value {
    if b.is_exact() {
        json!({ "exact": h.eval(k, b.center()).iter().map(Gq::to_grammar).collect::<Vec<_>>() })
    } else {
        let z = b.center_c64();
        json!({ "decimal": h.component(k).iter().map(|p| format_c64(p.eval_c64(z))).collect::<Vec<_>>() })
    }
}

/// Unordered double points of `h` with isolating boxes and images.
fn double_point_list(
    curve: &ParametricCurve,
    proj: &LinearProjection,
    prec: &BigRational,
) -> Result<(Vec<Value>, Option<crate::analysis::DoublePointSystem>), AnalysisError> {
    let h = curve.project(proj)?;
    let dps = match double_points(curve, proj, Some(prec)) {
        Ok(d) => d,
        Err(AnalysisError::Collapse { .. }) => return Ok((Vec::new(), None)),
        Err(e) => return Err(e),
    };
    let mut out = Vec::new();
    for rec in &dps.pairs {
        for (s, t) in &rec.isolates {
            // each unordered point appears as (s, t) and (t, s); keep one
            let keep = match rec.a.cmp(&rec.b) {
                std::cmp::Ordering::Less => true,
                std::cmp::Ordering::Greater => false,
                std::cmp::Ordering::Equal => {
                    let (x, y) = (s.center_c64(), t.center_c64());
                    (x.re, x.im) < (y.re, y.im)
                }
            };
            if keep {
                out.push(json!({
                    "components": [rec.a, rec.b],
                    "s": box_json(s),
                    "t": box_json(t),
                    "image": image_json(&h, rec.a, s),
                }));
            }
        }
    }
    Ok((out, Some(dps)))
}

pub fn cmd_verify(config: &RunConfig, curve: &str) -> Outcome {
    let f = try_outcome!(load(config, curve));
    let cert = verify_embedding(&f);
    Outcome::new(config, status_code(cert.status), json!({ "curve": f.to_document(), "certificate": cert }))
}

pub fn cmd_analyze(config: &RunConfig, curve: &str, direction: &str) -> Outcome {
    let f = try_outcome!(load(config, curve));
    let prec = try_outcome!(precision(config));
    let v = match Direction::parse(direction) {
        Ok(v) => v,
        Err(e) => return Outcome::invalid(config, e),
    };
    let cert = match certify_good(&f, &v) {
        Ok(c) => c,
        Err(e) => return Outcome::invalid(config, e),
    };
    let proj = LinearProjection::along(&v);
    let (dp, _) = match double_point_list(&f, &proj, &prec) {
        Ok(x) => x,
        Err(e) => return Outcome::invalid(config, e),
    };
    let result = json!({
        "curve": f.to_document(),
        "direction": v.to_strings(),
        "projection_rows": proj.rows_as_strings(),
        "certificate": cert,
        "double_points": dp,
    });
    Outcome::new(config, status_code(cert.status), result)
}

pub fn cmd_double_points(config: &RunConfig, curve: &str, kernel: &str) -> Outcome {
    let f = try_outcome!(load(config, curve));
    let prec = try_outcome!(precision(config));
    let v = match Direction::parse(kernel) {
        Ok(v) if v.dim() == f.ambient_dim() => v,
        Ok(v) => {
            return Outcome::invalid(
                config,
                format!("kernel has {} coordinates, curve has {}", v.dim(), f.ambient_dim()),
            )
        }
        Err(e) => return Outcome::invalid(config, e),
    };
    let proj = LinearProjection::along(&v);
    let subject = describe_projection(&proj);
    let run = || -> Result<(Certificate, Certificate, Certificate, Vec<Value>), AnalysisError> {
        let proper = certify_proper(&f, &proj)?;
        let imm = certify_immersive(&f, &proj)?;
        let (list, dps) = double_point_list(&f, &proj, &prec)?;
        let h = f.project(&proj)?;
        let trans = transversal_of(&h, dps.as_ref(), &subject);
        Ok((proper, imm, trans, list))
    };
    let (proper, imm, trans, list) = match run() {
        Ok(x) => x,
        Err(e) => return Outcome::invalid(config, e),
    };
    let status = [&proper, &imm, &trans].iter().map(|c| c.status).find(|s| *s != Status::Pass).unwrap_or(Status::Pass);
    let result = json!({
        "curve": f.to_document(),
        "kernel": v.to_strings(),
        "projection_rows": proj.rows_as_strings(),
        "pair_count": list.len(),
        "double_points": list,
        "proper": proper,
        "immersive": imm,
        "transversal": trans,
    });
    Outcome::new(config, status_code(status), result)
}

#[derive(Serialize)]
struct PipelineResult {
    ledger: EquivalenceLedger,
    ledger_check: Certificate,
}

pub fn cmd_pipeline(config: &RunConfig, f: &str, g: &str) -> Outcome {
    let fc = try_outcome!(load(config, f));
    let gc = try_outcome!(load(config, g));
    match run_pipeline(&fc, &gc, config.seed, config.budgets) {
        Ok(ledger) => {
            let check = check_ledger(&ledger);
            let code = if !ledger.is_complete() {
                EXIT_BUDGET
            } else if check.passed() {
                EXIT_PASS
            } else {
                EXIT_FAIL
            };
            Outcome::new(config, code, PipelineResult { ledger, ledger_check: check })
        }
        Err(PipelineError::NotAnEmbedding(which)) => {
            let certs =
                [("f", &fc), ("g", &gc)].map(|(n, c)| json!({ "input": n, "certificate": verify_embedding(c) }));
            Outcome::new(
                config,
                EXIT_INVALID,
                json!({ "error": format!("input is not an embedding: {which}"), "inputs": certs }),
            )
        }
        Err(e @ (PipelineError::Incompatible(_) | PipelineError::Precondition(_) | PipelineError::Curve(_))) => {
            Outcome::invalid(config, e)
        }
        Err(e) => Outcome::new(config, EXIT_FAIL, json!({ "error": e.to_string() })),
    }
}

/// Accepts a bare ledger or a `pipeline` report containing one.
pub fn cmd_check_ledger(config: &RunConfig, path: &str) -> Outcome {
    let text = match std::fs::read_to_string(path) {
        Ok(t) => t,
        Err(e) => return Outcome::invalid(config, format!("{path}: {e}")),
    };
    let value: Value = match serde_json::from_str(&text) {
        Ok(v) => v,
        Err(e) => return Outcome::invalid(config, format!("{path}: {e}")),
    };
    let doc = value.pointer("/result/ledger").cloned().unwrap_or(value);
    let ledger: EquivalenceLedger = match serde_json::from_value(doc) {
        Ok(l) => l,
        Err(e) => return Outcome::invalid(config, format!("{path}: not a ledger: {e}")),
    };
    let cert = check_ledger(&ledger);
    Outcome::new(config, status_code(cert.status), json!({ "ledger": path, "certificate": cert }))
}

/// Two points and two unimodular matrices, entries in the constant grammar.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct JetInput {
    pub p1: Vec<String>,
    pub p2: Vec<String>,
    pub a1: Vec<Vec<String>>,
    pub a2: Vec<Vec<String>>,
}

impl JetInput {
    fn parse(&self) -> Result<(Vec<Gq>, Vec<Gq>, Matrix, Matrix), String> {
        let vector = |v: &[String]| -> Result<Vec<Gq>, String> {
            v.iter().map(|s| parse_constant(s).map_err(|e| format!("{s:?}: {e}"))).collect()
        };
        let matrix = |rows: &[Vec<String>]| -> Result<Matrix, String> {
            let rows = rows.iter().map(|r| vector(r)).collect::<Result<Vec<_>, _>>()?;
            if rows.iter().any(|r| r.len() != rows.len()) {
                return Err("matrices must be square".into());
            }
            Ok(Matrix::from_rows(rows))
        };
        Ok((vector(&self.p1)?, vector(&self.p2)?, matrix(&self.a1)?, matrix(&self.a2)?))
    }
}

/// Checks `φ(pᵢ) = pᵢ` and `Dφ(pᵢ) = Aᵢ` exactly, on `φ` rebuilt from its document.
fn jet_checks(phi: &PolynomialAutomorphism, jets: &[(&[Gq], &Matrix)]) -> Vec<Value> {
    jets.iter()
        .enumerate()
        .map(|(i, (p, a))| {
            let fixed = phi.evaluate(p).map(|q| q == *p).unwrap_or(false);
            let jet = phi.jacobian_at(p).map(|j| &j == *a).unwrap_or(false);
            json!({ "point": i + 1, "fixed": fixed, "jacobian": jet })
        })
        .collect()
}

pub fn cmd_jet(config: &RunConfig, input: &JetInput) -> Outcome {
    let (p1, p2, a1, a2) = match input.parse() {
        Ok(x) => x,
        Err(e) => return Outcome::invalid(config, e),
    };
    let phi = match prescribed_jet(&p1, &p2, &a1, &a2) {
        Ok(phi) => phi,
        Err(e) => return Outcome::invalid(config, e),
    };
    let doc = phi.to_document();
    let rebuilt = match PolynomialAutomorphism::from_document(&doc) {
        Ok(r) => r,
        Err(e) => {
            return Outcome::new(config, EXIT_FAIL, json!({ "error": format!("document does not round-trip: {e}") }))
        }
    };
    let checks = jet_checks(&rebuilt, &[(&p1, &a1), (&p2, &a2)]);
    // compositions of cubic shears have exponential degree, so the round
    // trip is checked pointwise through the inverse instead of by expansion
    let probes: Vec<Vec<Gq>> =
        (1..=3i64).map(|k| (0..p1.len() as i64).map(|j| Gq::from_ratio(k + j, 2)).collect()).collect();
    let inverse = rebuilt.invert();
    let round_trip =
        probes.iter().all(|x| phi.evaluate(x).and_then(|y| inverse.evaluate(&y)).map(|z| &z == x).unwrap_or(false));
    let ok = round_trip && checks.iter().all(|c| c["fixed"] == true && c["jacobian"] == true);
    let result = json!({
        "input": input,
        "automorphism": doc,
        "factor_count": phi.factors().len(),
        "jacobian_determinant": phi.jacobian_determinant().to_grammar(),
        "checks": checks,
        "round_trip": round_trip,
    });
    Outcome::new(config, if ok { EXIT_PASS } else { EXIT_FAIL }, result)
}

pub fn cmd_lemma_test(config: &RunConfig, lemma: &str, curve: &str, samples: usize, fixed_last: usize) -> Outcome {
    let id: LemmaId = match lemma.parse() {
        Ok(id) => id,
        Err(e) => return Outcome::invalid(config, e),
    };
    let f = try_outcome!(load(config, curve));
    match run_lemma_test(id, &f, curve, samples, config.seed, fixed_last) {
        Ok(r) => {
            let code = if r.unexplained() == 0 { EXIT_PASS } else { EXIT_FAIL };
            Outcome::new(config, code, r)
        }
        Err(e) => Outcome::invalid(config, e),
    }
}

pub fn cmd_jet_file(config: &RunConfig, path: &str) -> Outcome {
    let parsed = std::fs::read_to_string(path)
        .map_err(|e| e.to_string())
        .and_then(|t| serde_json::from_str::<JetInput>(&t).map_err(|e| e.to_string()));
    match parsed {
        Ok(input) => cmd_jet(config, &input),
        Err(e) => Outcome::invalid(config, format!("{path}: {e}")),
    }
}
