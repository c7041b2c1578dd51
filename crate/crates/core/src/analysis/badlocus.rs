use crate::algebra::triangular::{exclude_diagonal, solve_system, Branch, SolutionSet};
use crate::algebra::{divided_difference, BiPoly, GaussianRational as Gq, UniPoly};
use crate::curve::{Direction, ParametricCurve};

use super::certificate::{Certificate, Status};

/// Which bad loci of the ambient curve contain a direction `v`.
///
/// Computed in the ambient space with `v` as data, without projecting:
/// tangent lines, secants and trisecants parallel to `v`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct BadLocusMembership {
    /// Some component is a line parallel to `v`.
    pub collapse: bool,
    /// Some tangent line is parallel to `v`.
    pub tangent: bool,
    /// Some secant parallel to `v` has its two tangents and `v` dependent.
    pub nontransversal_secant: bool,
    /// Some line parallel to `v` meets the curve three times.
    pub trisecant: bool,
}

impl BadLocusMembership {
    pub fn any(&self) -> bool {
        self.collapse || self.tangent || self.nontransversal_secant || self.trisecant
    }

    /// Whether the failure recorded in `cert` is accounted for by these loci.
    pub fn explains(&self, cert: &Certificate) -> bool {
        match cert.status {
            Status::Pass => true,
            Status::Inconclusive => self.any(),
            Status::Fail => match cert.witness.as_ref().map(|w| w.kind.as_str()) {
                Some("collapse") => self.collapse,
                Some("critical-parameter") | Some("critical-locus") => self.tangent || self.collapse,
                Some("non-transversal") => self.nontransversal_secant,
                Some("triple-point") => self.trisecant,
                _ => false,
            },
        }
    }
}

fn constant(c: &Gq) -> BiPoly {
    BiPoly::in_s(&UniPoly::constant(c.clone()))
}

/// 2×2 minors of the columns `(x, v)`.
fn parallel_minors(x: &[BiPoly], v: &[Gq]) -> Vec<BiPoly> {
    let mut out = Vec::new();
    for i in 0..x.len() {
        for j in i + 1..x.len() {
            let m = &(&x[i] * &constant(&v[j])) - &(&x[j] * &constant(&v[i]));
            if !m.is_zero() {
                out.push(m);
            }
        }
    }
    out
}

/// 3×3 minors of the columns `(x, y, v)`.
fn dependence_minors(x: &[BiPoly], y: &[BiPoly], v: &[Gq]) -> Vec<BiPoly> {
    let m = x.len();
    let mut out = Vec::new();
    for i in 0..m {
        for j in i + 1..m {
            for k in j + 1..m {
                let rows = [i, j, k];
                let col = |r: usize| [x[r].clone(), y[r].clone(), constant(&v[r])];
                let [a, b, c] = rows.map(col);
                let det = &(&(&a[0] * &(&(&b[1] * &c[2]) - &(&b[2] * &c[1])))
                    - &(&a[1] * &(&(&b[0] * &c[2]) - &(&b[2] * &c[0]))))
                    + &(&a[2] * &(&(&b[0] * &c[1]) - &(&b[1] * &c[0])));
                out.push(det);
            }
        }
    }
    out
}

/// Points `(s, t)` on components `(a, b)` whose chord is parallel to `v`.
fn secant_branches(f: &ParametricCurve, a: usize, b: usize, v: &[Gq], extra: &[BiPoly]) -> Option<Vec<Branch>> {
    let chord: Vec<BiPoly> = if a == b {
        f.component(a).iter().map(divided_difference).collect()
    } else {
        f.component(a).iter().zip(f.component(b)).map(|(p, q)| BiPoly::difference(p, q)).collect()
    };
    let mut gens = parallel_minors(&chord, v);
    gens.extend(extra.iter().cloned());
    if gens.is_empty() {
        return None;
    }
    match solve_system(&gens).solutions {
        SolutionSet::Finite(br) if a == b => Some(exclude_diagonal(&br)),
        SolutionSet::Finite(br) => Some(br),
        _ => None,
    }
}

pub fn bad_locus_membership(f: &ParametricCurve, v: &Direction) -> BadLocusMembership {
    let v = v.coords();
    let n = f.num_components();
    let mut out = BadLocusMembership::default();
    for k in 0..n {
        let p0: Vec<BiPoly> =
            f.component(k).iter().map(|p| BiPoly::in_t(&(p - &UniPoly::constant(p.coeff(0))))).collect();
        if parallel_minors(&p0, v).is_empty() {
            out.collapse = true;
        }
        let d: Vec<BiPoly> = f.derivative(k).iter().map(BiPoly::in_t).collect();
        let g = parallel_minors(&d, v).iter().fold(UniPoly::zero(), |g, m| g.gcd(&m.coeff_t_poly()));
        if !g.is_constant() || g.is_zero() {
            out.tangent = true;
        }
    }
    if out.collapse {
        return out;
    }
    // partner branches per source component, for trisecant counting
    let mut partners: Vec<Vec<Branch>> = vec![Vec::new(); n];
    for (a, own) in partners.iter_mut().enumerate() {
        for b in 0..n {
            match secant_branches(f, a, b, v, &[]) {
                Some(br) => own.extend(br),
                None => {
                    out.nontransversal_secant = true;
                    out.trisecant = true;
                }
            }
            if a <= b {
                let da: Vec<BiPoly> = f.derivative(a).iter().map(BiPoly::in_s).collect();
                let db: Vec<BiPoly> = f.derivative(b).iter().map(BiPoly::in_t).collect();
                let dep = dependence_minors(&da, &db, v);
                match secant_branches(f, a, b, v, &dep) {
                    Some(br) if br.is_empty() => {}
                    _ => out.nontransversal_secant = true,
                }
            }
        }
    }
    for branches in &partners {
        if branches.iter().any(|br| br.fiber.deg_t().unwrap_or(0) >= 2) {
            out.trisecant = true;
        }
        for (i, x) in branches.iter().enumerate() {
            for y in &branches[i + 1..] {
                if !x.modulus.gcd(&y.modulus).is_constant() {
                    out.trisecant = true;
                }
            }
        }
    }
    out
}

impl BiPoly {
    /// The polynomial in `t` of a bivariate polynomial free of `s`.
    fn coeff_t_poly(&self) -> UniPoly {
        UniPoly::new(self.coeffs_t().iter().map(|c| c.coeff(0)).collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::analysis::certify_good;
    use crate::curve::fixtures;

    fn dir(v: &[i64]) -> Direction {
        Direction::from_ints(v).unwrap()
    }

    #[test]
    fn twisted_cubic_loci() {
        let c = fixtures::twisted_cubic();
        let tangent = bad_locus_membership(&c, &dir(&[1, 0, 0]));
        assert!(tangent.tangent && !tangent.collapse);
        // (1:0:1) is the chord between t = −1 and t = 1, which is transversal
        let node = bad_locus_membership(&c, &dir(&[1, 0, 1]));
        assert!(!node.any());
        // the chord from t = 0 to t = 1 is (1:1:1), and the tangents there are dependent with it
        let m = bad_locus_membership(&c, &dir(&[1, 1, 1]));
        assert!(!m.tangent);
        assert_eq!(certify_good(&c, &dir(&[1, 1, 1])).unwrap().failed(), m.nontransversal_secant);
    }

    #[test]
    fn three_lines_trisecant() {
        let l = fixtures::three_lines();
        assert!(bad_locus_membership(&l, &dir(&[1, 0, 0])).trisecant);
        assert!(!bad_locus_membership(&l, &dir(&[0, 1, 0])).any());
    }

    #[test]
    fn collapse_of_a_line() {
        assert!(bad_locus_membership(&fixtures::standard_line(), &dir(&[1, 0, 0])).collapse);
    }

    #[test]
    fn explains_failures() {
        let c = fixtures::twisted_cubic();
        let v = dir(&[1, 0, 0]);
        let cert = certify_good(&c, &v).unwrap();
        assert!(cert.failed());
        assert!(bad_locus_membership(&c, &v).explains(&cert));
    }
}
