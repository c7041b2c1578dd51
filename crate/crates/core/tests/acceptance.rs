//! The acceptance suite: one PASS/FAIL line per criterion, each with its
//! time limit. Exits nonzero if any criterion fails.

mod common;

use std::process::ExitCode;
use std::time::{Duration, Instant};

use num_rational::BigRational;
use rand::Rng;

use common::*;
use curvecert::algebra::{divided_difference, isolate_roots, parse_constant, BiPoly, GaussianRational as Gq, UniPoly};
use curvecert::analysis::{
    certify_2transversal, certify_good, certify_good_projection, certify_proper, certify_transversal, DirectionSampler,
    Status,
};
use curvecert::automorphism::prescribed_jet;
use curvecert::curve::{fixtures, Direction, LinearProjection, ParametricCurve};
use curvecert::harness::{cmd_double_points, run_lemma_test, seeded_quintic, LemmaId, RunConfig};
use curvecert::pipeline::{check_ledger, run_pipeline, verify_embedding, Budgets, EquivalenceLedger};

type Check = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn three_lines_scan() -> Check {
    let lines = fixtures::three_lines();
    let p1 = LinearProjection::from_int_rows(&[&[0, 0, 1]]).unwrap();
    ensure(certify_proper(&lines, &p1).unwrap().passed(), || "p1 not proper".into())?;
    ensure(certify_transversal(&lines, &p1).unwrap().passed(), || "p1 not transversal".into())?;
    let plane = vec![vec![g(1), g(0), g(0)], vec![g(0), g(1), g(0)]];
    let mut sampler = DirectionSampler::new(plane, 2024, 50).unwrap();
    let mut dirs: Vec<Direction> = (0..50).map(|_| sampler.next_direction()).collect();
    let special = Direction::from_ints(&[0, 1, 0]).unwrap();
    dirs.push(special.clone());
    let mut failures = 0;
    for v in &dirs {
        let c = certify_2transversal(&lines, &LinearProjection::along(v)).unwrap();
        if *v == special {
            ensure(c.passed(), || format!("{v} should pass, got {:?}", c.status))?;
        } else {
            let kind = c.witness.as_ref().map(|w| w.kind.as_str()).unwrap_or("none");
            ensure(c.status == Status::Fail && (kind == "triple-point" || kind == "non-transversal"), || {
                format!("{v}: {:?} with witness {kind}", c.status)
            })?;
            failures += 1;
        }
    }
    Ok(format!("{failures} planar directions fail with witnesses, (0:1:0) passes"))
}

fn cubic_node() -> Check {
    let cfg = RunConfig::new("double-points");
    let out = cmd_double_points(&cfg, "twisted-cubic", "1,0,1");
    let r = &out.report["result"];
    ensure(out.exit_code == 0, || format!("exit code {}", out.exit_code))?;
    ensure(r["pair_count"] == 1, || format!("pair count {}", r["pair_count"]))?;
    let node = &r["double_points"][0];
    let s = parse_constant(node["s"]["center"].as_str().unwrap()).unwrap().to_complex64();
    let t = parse_constant(node["t"]["center"].as_str().unwrap()).unwrap().to_complex64();
    let close = |z: num_complex::Complex64, w: f64| (z.re - w).abs() < 1e-12 && z.im.abs() < 1e-12;
    ensure((close(s, -1.0) && close(t, 1.0)) || (close(s, 1.0) && close(t, -1.0)), || format!("node at {s}, {t}"))?;
    let dets: Vec<&str> = r["transversal"]["trace"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|e| e["label"].as_str().unwrap().contains("det at"))
        .map(|e| e["value"].as_str().unwrap())
        .collect();
    ensure(!dets.is_empty() && dets.iter().all(|d| *d == "8" || *d == "-8"), || format!("determinants {dets:?}"))?;

    let out = cmd_double_points(&cfg, "twisted-cubic", "1,0,0");
    let w = &out.report["result"]["immersive"]["witness"];
    ensure(out.exit_code == 1 && w["exact"].as_array().unwrap().iter().any(|l| l == "t = 0"), || {
        format!("cusp witness {w}")
    })?;
    Ok(format!("node at s, t = {}, {}; determinants {dets:?}; cusp witness t = 0", s.re, t.re))
}

fn prescribed_jets() -> Check {
    let mut r = rng(77);
    let bound = BigRational::from_integer(100.into());
    for m in [2, 3] {
        for case in 0..100 {
            let p1 = random_point(&mut r, m);
            let mut p2 = random_point(&mut r, m);
            while p2 == p1 {
                p2 = random_point(&mut r, m);
            }
            let (a1, a2) = (random_sl(&mut r, m), random_sl(&mut r, m));
            ensure(matrix_height(&a1) <= bound && matrix_height(&a2) <= bound, || "height bound".into())?;
            let phi = prescribed_jet(&p1, &p2, &a1, &a2).map_err(|e| format!("m = {m}, case {case}: {e}"))?;
            for (p, a) in [(&p1, &a1), (&p2, &a2)] {
                let (value, jac) = jet_oracle(&phi, p);
                ensure(&value == p && jac == *a, || format!("m = {m}, case {case}: oracle mismatch"))?;
                ensure(phi.evaluate(p).unwrap() == *p && phi.jacobian_at(p).unwrap() == *a, || {
                    format!("m = {m}, case {case}: evaluation mismatch")
                })?;
            }
        }
    }
    Ok("200 jets exact".into())
}

fn pipeline_end_to_end() -> Check {
    let g = fixtures::standard_line();
    let ledger = run_pipeline(&fixtures::twisted_cubic(), &g, 7, Budgets::default()).map_err(|e| e.to_string())?;
    ensure(ledger.is_complete(), || format!("incomplete: {:?}", ledger.diagnosis))?;
    let reread = EquivalenceLedger::from_json(&ledger.to_json()).map_err(|e| e.to_string())?;
    ensure(check_ledger(&reread).passed(), || "check_ledger failed".into())?;
    for step in &ledger.steps {
        let out = ParametricCurve::from_document(&step.output).unwrap();
        let k = step.quotient_rows.len();
        ensure(k == step.index + 1, || format!("step {}: {k} rows", step.index))?;
        // r ∘ g by hand
        for (j, row) in step.quotient_rows.iter().enumerate() {
            let coeffs: Vec<Gq> = row.iter().map(|s| parse_constant(s).unwrap()).collect();
            for c in 0..g.num_components() {
                let expected =
                    g.component(c).iter().zip(&coeffs).fold(UniPoly::zero(), |acc, (p, a)| &acc + &p.scale(a));
                ensure(out.component(c)[3 - k + j] == expected, || {
                    format!("step {}: coordinate {}", step.index, 3 - k + j)
                })?;
            }
        }
        ensure(verify_embedding(&out).passed(), || format!("step {}: output is not an embedding", step.index))?;
    }
    Ok(format!("{} steps, ledger re-checked from JSON", ledger.steps.len()))
}

fn genericity_suite() -> Check {
    let curves = [("twisted-cubic", fixtures::twisted_cubic()), ("seeded-quintic:5", seeded_quintic(5))];
    let mut total_fail = 0;
    for (name, curve) in &curves {
        for lemma in LemmaId::ALL {
            let r = run_lemma_test(lemma, curve, name, 100, 11, 0)?;
            ensure(r.is_consistent(), || format!("{lemma} on {name}: counts"))?;
            ensure(r.unexplained() == 0, || format!("{lemma} on {name}: {} unexplained failures", r.unexplained()))?;
            total_fail += r.failures.len();
        }
    }
    // failures do occur on the bad locus itself and must be classified there
    let tangent = Direction::from_ints(&[1, 2, 3]).unwrap();
    let m = curvecert::analysis::bad_locus_membership(&fixtures::twisted_cubic(), &tangent);
    let c =
        curvecert::analysis::certify_immersive(&fixtures::twisted_cubic(), &LinearProjection::along(&tangent)).unwrap();
    ensure(c.failed() && m.explains(&c), || "tangent direction not explained".into())?;
    Ok(format!("800 samples, {total_fail} failures, none unexplained"))
}

fn algebra_properties() -> Check {
    let mut r = rng(6);
    for case in 0..200 {
        let (f, g2, h) = (poly_in(&mut r, 1, 4, 3), poly_in(&mut r, 1, 4, 3), poly_in(&mut r, 1, 4, 3));
        let lhs = (&f * &g2).resultant(&h).unwrap();
        let rhs = &f.resultant(&h).unwrap() * &g2.resultant(&h).unwrap();
        ensure(lhs == rhs, || format!("resultant case {case}"))?;

        let c = poly_in(&mut r, 0, 3, 3);
        let (a, b) = (&c * &poly_in(&mut r, 0, 4, 3), &c * &poly_in(&mut r, 0, 4, 3));
        let d = a.gcd(&b);
        ensure(d.divides(&a) && d.divides(&b) && (c.is_constant() || c.monic().divides(&d)), || {
            format!("gcd case {case}")
        })?;

        let p = poly_in(&mut r, 0, 6, 5);
        let secant = BiPoly::difference(&UniPoly::var(), &UniPoly::var());
        ensure(&divided_difference(&p) * &secant == BiPoly::difference(&p, &p), || {
            format!("divided difference case {case}")
        })?;

        let q = &(&c * &c) * &poly_in(&mut r, 1, 3, 3);
        let sf = q.squarefree_part().unwrap();
        ensure(sf.squarefree_part().unwrap() == sf, || format!("square-free case {case}"))?;
    }
    let prec = BigRational::new(1.into(), 1_000_000_000_000i64.into());
    for case in 0..100 {
        let deg: usize = r.gen_range(1..=12);
        // repeated factors make the square-free degree differ from the degree
        let base = random_poly(&mut r, deg.div_ceil(2), 4);
        let p = if r.gen_bool(0.5) && 2 * base.deg0() <= 12 { &base * &base } else { random_poly(&mut r, deg, 4) };
        let iso = isolate_roots(&p, &prec).map_err(|e| e.to_string())?;
        let want = p.squarefree_part().unwrap().deg0();
        ensure(iso.boxes.len() == want && iso.all_certified(), || {
            format!("roots case {case}: {} boxes for square-free degree {want}", iso.boxes.len())
        })?;
    }
    Ok("4 × 200 identities, 100 root counts".into())
}

fn projective_invariance() -> Check {
    let mut r = rng(50);
    let mut failing = 0;
    for case in 0..50 {
        let curve = match case % 3 {
            0 => fixtures::three_lines(),
            1 => fixtures::twisted_cubic(),
            _ => random_graph_curve(&mut r, 3),
        };
        let raw: Vec<Gq> = loop {
            let v: Vec<Gq> = if case % 3 == 0 {
                vec![small_gaussian(&mut r, 2), small_gaussian(&mut r, 2), g(0)]
            } else {
                (0..3).map(|_| Gq::from_int(r.gen_range(-2..=2))).collect()
            };
            if v.iter().any(|c| !c.is_zero()) {
                break v;
            }
        };
        let lambda = loop {
            let l = small_gaussian(&mut r, 3);
            if !l.is_zero() {
                break l;
            }
        };
        let v = Direction::new(raw.clone()).unwrap();
        let w = Direction::new(raw.iter().map(|c| c * &lambda).collect()).unwrap();
        let a = certify_good(&curve, &v).unwrap();
        let b = certify_good(&curve, &w).unwrap();
        // the same quotient written in other target coordinates
        let moved =
            LinearProjection::from_rows(random_sl(&mut r, 2).mul(LinearProjection::along(&w).matrix()).to_rows())
                .unwrap();
        let c = certify_good_projection(&curve, &moved).unwrap();
        ensure(
            a.verdict_signature() == b.verdict_signature() && b.verdict_signature() == c.verdict_signature(),
            || format!("case {case}: {curve:?} along {v}"),
        )?;
        failing += usize::from(!a.passed());
    }
    Ok(format!("50 triples identical ({failing} failing verdicts among them)"))
}

fn main() -> ExitCode {
    type Criterion = (&'static str, u64, fn() -> Check);
    let criteria: [Criterion; 7] = [
        ("three-lines 2-transversality scan", 5, three_lines_scan),
        ("twisted-cubic node and cusp", 2, cubic_node),
        ("prescribed jets", 30, prescribed_jets),
        ("pipeline end to end", 60, pipeline_end_to_end),
        ("genericity experiments", 120, genericity_suite),
        ("algebra kernel properties", 30, algebra_properties),
        ("projective invariance", 20, projective_invariance),
    ];
    let mut all = true;
    for (i, (name, limit, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let result = run();
        let elapsed = start.elapsed();
        let in_time = elapsed <= Duration::from_secs(*limit);
        let (tag, detail) = match (&result, in_time) {
            (Ok(d), true) => ("PASS", d.clone()),
            (Ok(d), false) => ("FAIL", format!("{d}; over the {limit} s limit")),
            (Err(e), _) => ("FAIL", e.clone()),
        };
        all &= tag == "PASS";
        println!("{tag} criterion {}: {name} ({:.2} s, limit {limit} s): {detail}", i + 1, elapsed.as_secs_f64());
    }
    if all {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
