use num_rational::BigRational;

use crate::algebra::triangular::{solve_system, Branch, SolutionSet};
use crate::algebra::{format_c64, BiPoly, GaussianRational as Gq, UniPoly};
use crate::curve::{Direction, LinearProjection, ParametricCurve};

use super::certificate::{trace, Certificate, CertificateKind as K, Witness};
use super::double_points::{double_point_system, pair_generators, DoublePointSystem};
use super::AnalysisError;

/// Box width for the advisory decimals printed in witnesses.
pub fn witness_precision() -> BigRational {
    BigRational::new(1.into(), 1_000_000_000_000_000i64.into())
}

pub fn describe_projection(proj: &LinearProjection) -> String {
    let vs: Vec<String> = proj
        .kernel()
        .iter()
        .map(|v| format!("({})", v.iter().map(Gq::to_grammar).collect::<Vec<_>>().join(", ")))
        .collect();
    format!("quotient by span{{{}}}", vs.join(", "))
}

fn fmt_point(x: &[Gq]) -> String {
    format!("({})", x.iter().map(Gq::to_grammar).collect::<Vec<_>>().join(", "))
}

/// Exact rational roots (when recognizable) and decimals of all roots.
fn roots_report(p: &UniPoly, var: &str) -> (Vec<String>, Vec<String>, Vec<Gq>) {
    let Ok(iso) = crate::algebra::isolate_roots(p, &witness_precision()) else {
        return (Vec::new(), Vec::new(), Vec::new());
    };
    let mut exact = Vec::new();
    let mut values = Vec::new();
    let mut dec = Vec::new();
    for b in &iso.boxes {
        if b.is_exact() {
            exact.push(format!("{var} = {}", b.center().to_grammar()));
            values.push(b.center().clone());
        }
        dec.push(format!("{var} ≈ {}", b.decimal()));
    }
    (exact, dec, values)
}

fn branch_lines(br: &Branch) -> Vec<String> {
    vec![format!("s: {} = 0", br.modulus.display("s")), format!("t: {} = 0", br.fiber.display("s", "t"))]
}

/// Exact points of a branch whose coordinates are rational, and decimals of all points.
fn branch_points(br: &Branch) -> (Vec<(Gq, Gq)>, Vec<String>) {
    let iso = br.isolate(&witness_precision());
    let mut exact = Vec::new();
    let mut dec = Vec::new();
    for (s, t) in iso {
        if s.is_exact() && t.is_exact() {
            exact.push((s.center().clone(), t.center().clone()));
        }
        dec.push(format!("(s, t) ≈ ({}, {})", s.decimal(), t.decimal()));
    }
    (exact, dec)
}

pub fn certify_proper(curve: &ParametricCurve, proj: &LinearProjection) -> Result<Certificate, AnalysisError> {
    let h = curve.project(proj)?;
    let subject = describe_projection(proj);
    let mut tr = Vec::new();
    let mut collapsed = None;
    for k in 0..h.num_components() {
        let deg = h.component(k).iter().map(UniPoly::deg0).max().unwrap_or(0);
        tr.push(trace(format!("component {k}: projected degree"), deg.to_string()));
        if let Some(d) = curve.leading_direction(k) {
            let inside = proj.kills(d.coords());
            tr.push(trace(
                format!("component {k}: asymptotic direction {d} in kernel"),
                if inside { "yes" } else { "no" },
            ));
        }
        if deg == 0 && collapsed.is_none() {
            collapsed = Some(k);
        }
    }
    let cert = match collapsed {
        None => Certificate::pass(K::Proper, subject),
        Some(k) => {
            let point: Vec<Gq> = h.component(k).iter().map(|p| p.coeff(0)).collect();
            Certificate::fail(
                K::Proper,
                subject,
                Witness::new("collapse", vec![format!("component {k}")]).with_image(vec![fmt_point(&point)]),
            )
        }
    };
    Ok(cert.with_trace(tr))
}

pub fn certify_immersive(curve: &ParametricCurve, proj: &LinearProjection) -> Result<Certificate, AnalysisError> {
    let h = curve.project(proj)?;
    let subject = describe_projection(proj);
    let mut tr = Vec::new();
    let mut witness = None;
    for k in 0..h.num_components() {
        let g = h.derivative(k).iter().fold(UniPoly::zero(), |g, d| g.gcd(d));
        tr.push(trace(format!("component {k}: gcd of projected derivatives"), g.display("t")));
        if witness.is_some() || (!g.is_zero() && g.is_constant()) {
            continue;
        }
        witness = Some(if g.is_zero() {
            Witness::new("collapse", vec![format!("component {k}"), "derivative vanishes identically".into()])
        } else {
            let (exact, dec, _) = roots_report(&g, "t");
            let mut lines = vec![format!("component {k}"), format!("t: {} = 0", g.display("t"))];
            lines.extend(exact);
            Witness::new("critical-parameter", lines).with_decimal(dec)
        });
    }
    let cert = match witness {
        None => Certificate::pass(K::Immersive, subject),
        Some(w) => Certificate::fail(K::Immersive, subject, w),
    };
    Ok(cert.with_trace(tr))
}

/// Size of the rank-0 locus of a curve map.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LocusDim {
    Empty,
    Finite(usize),
    OneDimensional,
}

impl LocusDim {
    /// −1 for the empty set.
    pub fn dim(&self) -> i64 {
        match self {
            LocusDim::Empty => -1,
            LocusDim::Finite(_) => 0,
            LocusDim::OneDimensional => 1,
        }
    }
}

#[derive(Clone, Debug)]
pub struct ComponentLocus {
    /// Gcd of the projected derivatives; zero when all vanish identically.
    pub gcd: UniPoly,
    pub dim: LocusDim,
}

/// Points where the projected differential has rank 0.
#[derive(Clone, Debug)]
pub struct CriticalLocus {
    pub target_dim: usize,
    pub components: Vec<ComponentLocus>,
}

impl CriticalLocus {
    pub fn dim(&self) -> i64 {
        self.components.iter().map(|c| c.dim.dim()).max().unwrap_or(-1)
    }

    /// Certifies `dim ≤ bound`.
    pub fn certify_bound(&self, bound: i64, subject: impl Into<String>) -> Certificate {
        let tr: Vec<_> = self
            .components
            .iter()
            .enumerate()
            .map(|(k, c)| {
                let d = match c.dim {
                    LocusDim::Empty => "empty".to_string(),
                    LocusDim::Finite(n) => format!("finite ({n} points)"),
                    LocusDim::OneDimensional => "one-dimensional".to_string(),
                };
                trace(format!("component {k}: critical gcd {}", c.gcd.display("t")), d)
            })
            .chain(std::iter::once(trace("dimension bound", bound.to_string())))
            .collect();
        let subject = subject.into();
        let cert = match self.components.iter().position(|c| c.dim.dim() > bound) {
            None => Certificate::pass(K::Immersive, subject),
            Some(k) => {
                let c = &self.components[k];
                let w = if c.gcd.is_zero() {
                    Witness::new("critical-locus", vec![format!("component {k}"), "gcd is the zero polynomial".into()])
                } else {
                    Witness::new(
                        "critical-locus",
                        vec![format!("component {k}"), format!("t: {} = 0", c.gcd.display("t"))],
                    )
                };
                Certificate::fail(K::Immersive, subject, w)
            }
        };
        cert.with_trace(tr)
    }

    /// The immersion-descent hypothesis `dim X₀ ≤ 1 − l` for a curve mapped to ℂ^l.
    pub fn hypothesis_holds(&self) -> bool {
        self.dim() <= 1 - self.target_dim as i64
    }
}

pub fn critical_locus(curve: &ParametricCurve, proj: &LinearProjection) -> Result<CriticalLocus, AnalysisError> {
    let h = curve.project(proj)?;
    let components = (0..h.num_components())
        .map(|k| {
            let g = h.derivative(k).iter().fold(UniPoly::zero(), |g, d| g.gcd(d));
            let dim = if g.is_zero() {
                LocusDim::OneDimensional
            } else if g.is_constant() {
                LocusDim::Empty
            } else {
                LocusDim::Finite(g.squarefree_part().expect("nonzero").deg0())
            };
            ComponentLocus { gcd: g, dim }
        })
        .collect();
    Ok(CriticalLocus { target_dim: proj.target_dim(), components })
}

fn collapse_check(h: &ParametricCurve, kind: K, subject: &str) -> Option<Certificate> {
    (0..h.num_components())
        .find(|&k| h.is_constant_component(k))
        .map(|k| Certificate::inconclusive(kind, subject, format!("component {k} maps to a point")))
}

fn jacobian_det(h: &ParametricCurve, a: usize, b: usize) -> BiPoly {
    let da = h.derivative(a);
    let db = h.derivative(b);
    &(&BiPoly::in_s(&da[0]) * &BiPoly::in_t(&db[1])) - &(&BiPoly::in_s(&da[1]) * &BiPoly::in_t(&db[0]))
}

/// Transversality of an already projected curve.
pub fn transversal_of(h: &ParametricCurve, dps: Option<&DoublePointSystem>, subject: &str) -> Certificate {
    if let Some(c) = collapse_check(h, K::Transversal, subject) {
        return c;
    }
    if h.ambient_dim() == 1 {
        return transversal_line(h, subject);
    }
    let owned;
    let dps = match dps {
        Some(d) => d,
        None => {
            owned = double_point_system(h, None);
            &owned
        }
    };
    if let Some((a, b, r)) = dps.infinite_pairs().into_iter().next() {
        return Certificate::inconclusive(
            K::Transversal,
            subject,
            format!("double points of components ({a}, {b}) are not finite: {r}"),
        );
    }
    let mut tr = Vec::new();
    for rec in dps.pairs.iter().filter(|p| p.a <= p.b) {
        if rec.branches().is_empty() {
            tr.push(trace(format!("components ({}, {}): double points", rec.a, rec.b), "none"));
            continue;
        }
        if h.ambient_dim() > 2 {
            let br = &rec.branches()[0];
            let mut lines = vec![format!("components ({}, {})", rec.a, rec.b)];
            lines.extend(branch_lines(br));
            let (_, dec) = branch_points(br);
            return Certificate::fail(
                K::Transversal,
                subject,
                Witness::new("non-transversal", lines).with_decimal(dec),
            )
            .with_trace(tr);
        }
        let det = jacobian_det(h, rec.a, rec.b);
        for br in rec.branches() {
            let label = format!(
                "components ({}, {}), branch [{}; {}]",
                rec.a,
                rec.b,
                br.modulus.display("s"),
                br.fiber.display("s", "t")
            );
            tr.push(trace(format!("{label}: det mod branch"), br.normal_form(&det).display("s", "t")));
            if br.modulus.deg0() <= 2 && br.fiber.deg_t() == Some(1) {
                let (exact, _) = branch_points(br);
                for (s, t) in exact {
                    let v = det.eval_s(&s).eval(&t);
                    tr.push(trace(
                        format!("{label}: det at (s, t) = ({}, {})", s.to_grammar(), t.to_grammar()),
                        v.to_grammar(),
                    ));
                }
            }
            if let Some(hit) = br.restrict(&det).into_iter().next() {
                let mut lines = vec![format!("components ({}, {})", rec.a, rec.b)];
                lines.extend(branch_lines(&hit));
                let (_, dec) = branch_points(&hit);
                return Certificate::fail(
                    K::Transversal,
                    subject,
                    Witness::new("non-transversal", lines).with_decimal(dec),
                )
                .with_trace(tr);
            }
        }
    }
    Certificate::pass(K::Transversal, subject).with_trace(tr)
}

/// Target ℂ¹: no double point where both derivatives vanish.
fn transversal_line(h: &ParametricCurve, subject: &str) -> Certificate {
    let mut tr = Vec::new();
    let n = h.num_components();
    for a in 0..n {
        for b in a..n {
            let mut gens = pair_generators(h, a, b);
            gens.push(BiPoly::in_s(&h.component(a)[0].derivative()));
            gens.push(BiPoly::in_t(&h.component(b)[0].derivative()));
            let sol = solve_system(&gens).solutions;
            let sol = match sol {
                SolutionSet::Finite(br) if a == b => SolutionSet::Finite(crate::algebra::exclude_diagonal(&br)),
                other => other,
            };
            match sol {
                SolutionSet::Finite(br) if br.is_empty() => {
                    tr.push(trace(format!("components ({a}, {b}): critical double points"), "none"));
                }
                SolutionSet::Finite(br) => {
                    let mut lines = vec![format!("components ({a}, {b})")];
                    lines.extend(branch_lines(&br[0]));
                    let (_, dec) = branch_points(&br[0]);
                    return Certificate::fail(
                        K::Transversal,
                        subject,
                        Witness::new("non-transversal", lines).with_decimal(dec),
                    )
                    .with_trace(tr);
                }
                SolutionSet::Infinite(r) | SolutionSet::Unresolved(r) => {
                    return Certificate::inconclusive(K::Transversal, subject, format!("components ({a}, {b}): {r}"));
                }
            }
        }
    }
    Certificate::pass(K::Transversal, subject).with_trace(tr)
}

/// Searches for a point with two distinct partners, i.e. a fiber with at least three points.
fn triple_point(
    h: &ParametricCurve,
    dps: &DoublePointSystem,
) -> (Vec<super::certificate::TraceEntry>, Option<Witness>) {
    let mut tr = Vec::new();
    for a in 0..h.num_components() {
        let mut seen: Vec<(usize, &Branch)> = Vec::new();
        for rec in dps.pairs.iter().filter(|p| p.a == a) {
            for br in rec.branches() {
                let s_poly = if br.fiber.deg_t().unwrap_or(0) >= 2 {
                    Some((br.modulus.clone(), vec![rec.b]))
                } else {
                    seen.iter().filter(|(b, _)| *b != rec.b).find_map(|(b, other)| {
                        let g = other.modulus.gcd(&br.modulus);
                        (!g.is_constant()).then(|| (g, vec![*b, rec.b]))
                    })
                };
                if let Some((s_poly, partners)) = s_poly {
                    let (exact, dec, values) = roots_report(&s_poly, "s");
                    let mut lines = vec![
                        format!("component {a}"),
                        format!("s: {} = 0", s_poly.display("s")),
                        format!("partner components {partners:?}"),
                    ];
                    lines.extend(exact);
                    let image: Vec<String> = values.iter().map(|s| fmt_point(&h.eval(a, s))).collect();
                    let dec_img: Vec<String> = values
                        .iter()
                        .map(|s| {
                            let p: Vec<String> = h.eval(a, s).iter().map(|c| format_c64(c.to_complex64())).collect();
                            format!("image ≈ ({})", p.join(", "))
                        })
                        .collect();
                    let w = Witness::new("triple-point", lines).with_image(image).with_decimal([dec, dec_img].concat());
                    return (tr, Some(w));
                }
                seen.push((rec.b, br));
            }
        }
        tr.push(trace(format!("component {a}: partners per point"), "at most 1"));
    }
    (tr, None)
}

pub fn two_transversal_of(h: &ParametricCurve, subject: &str) -> Certificate {
    if let Some(c) = collapse_check(h, K::TwoTransversal, subject) {
        return c;
    }
    let dps = (h.ambient_dim() >= 2).then(|| double_point_system(h, None));
    let trans = transversal_of(h, dps.as_ref(), subject);
    if !trans.passed() {
        let mut c = Certificate::all_of(K::TwoTransversal, subject, vec![trans]);
        c.reason = c.reason.or(Some("transversality failed".into()));
        return c;
    }
    let dps = match dps {
        Some(d) => d,
        None => {
            return Certificate::inconclusive(K::TwoTransversal, subject, "fibers over a line are not finite");
        }
    };
    let (tr, w) = triple_point(h, &dps);
    let mut c = match w {
        None => Certificate::pass(K::TwoTransversal, subject),
        Some(w) => Certificate::fail(K::TwoTransversal, subject, w),
    };
    c.trace = tr;
    c.parts = vec![trans];
    c
}

pub fn certify_transversal(curve: &ParametricCurve, proj: &LinearProjection) -> Result<Certificate, AnalysisError> {
    let h = curve.project(proj)?;
    Ok(transversal_of(&h, None, &describe_projection(proj)))
}

pub fn certify_2transversal(curve: &ParametricCurve, proj: &LinearProjection) -> Result<Certificate, AnalysisError> {
    let h = curve.project(proj)?;
    Ok(two_transversal_of(&h, &describe_projection(proj)))
}

/// Proper, immersive and 2-transversal, for an arbitrary quotient map.
pub fn certify_good_projection(curve: &ParametricCurve, proj: &LinearProjection) -> Result<Certificate, AnalysisError> {
    let subject = describe_projection(proj);
    let proper = certify_proper(curve, proj)?;
    let imm = certify_immersive(curve, proj)?;
    let two = if proper.passed() {
        certify_2transversal(curve, proj)?
    } else {
        Certificate::inconclusive(K::TwoTransversal, subject.clone(), "projection is not proper")
    };
    Ok(Certificate::all_of(K::Good, subject, vec![proper, imm, two]))
}

/// Good-projection certificate for the canonical quotient along `v`.
pub fn certify_good(curve: &ParametricCurve, v: &Direction) -> Result<Certificate, AnalysisError> {
    if v.dim() != curve.ambient_dim() {
        return Err(AnalysisError::DimensionMismatch { expected: curve.ambient_dim(), found: v.dim() });
    }
    certify_good_projection(curve, &LinearProjection::along(v))
}
