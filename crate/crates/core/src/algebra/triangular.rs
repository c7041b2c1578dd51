//! Exact solving of bivariate polynomial systems by elimination followed by
//! gcd computations over ℚ(i)[s]/(A) with dynamic splitting of `A`.
//!
//! A finite solution set is returned as a list of [`Branch`]es. Each branch
//! is a pair `(A(s), T(s, t))` with `A` monic and square-free, and `T` monic
//! in `t` with coefficients reduced modulo `A` and square-free over every
//! residue field. The points of a branch are exactly the pairs `(s0, t0)`
//! with `A(s0) = 0` and `T(s0, t0) = 0`; there are `deg A · deg_t T` of them.
//! Moduli of different branches of one system are pairwise coprime.

use num_complex::Complex64;
use num_rational::BigRational;

use super::bipoly::BiPoly;
use super::roots::{isolate_roots, ComplexBox};
use super::unipoly::UniPoly;

#[derive(Clone, Debug, PartialEq)]
pub struct Branch {
    pub modulus: UniPoly,
    pub fiber: BiPoly,
}

#[derive(Clone, Debug, PartialEq)]
pub enum SolutionSet {
    Finite(Vec<Branch>),
    /// Contains a curve or a full vertical line.
    Infinite(String),
    /// Elimination produced no usable eliminant.
    Unresolved(String),
}

impl SolutionSet {
    pub fn is_finite(&self) -> bool {
        matches!(self, SolutionSet::Finite(_))
    }

    pub fn branches(&self) -> &[Branch] {
        match self {
            SolutionSet::Finite(b) => b,
            _ => &[],
        }
    }

    pub fn is_empty(&self) -> bool {
        matches!(self, SolutionSet::Finite(b) if b.is_empty())
    }

    pub fn point_count(&self) -> Option<usize> {
        match self {
            SolutionSet::Finite(b) => Some(b.iter().map(Branch::point_count).sum()),
            _ => None,
        }
    }
}

#[derive(Clone, Debug)]
pub struct Elimination {
    /// Gcd of the available resultants in `t`; every solution's `s` is a root.
    pub eliminant: UniPoly,
    pub solutions: SolutionSet,
}

pub(crate) fn reduce(f: &BiPoly, a: &UniPoly) -> BiPoly {
    f.map_coeffs(|c| c.rem(a))
}

/// Splits `a` into the part where `c` vanishes and the part where it is a unit.
fn split(a: &UniPoly, c: &UniPoly) -> (UniPoly, UniPoly) {
    let c = c.rem(a);
    if c.is_zero() {
        return (a.clone(), UniPoly::one());
    }
    let g = a.gcd(&c);
    let h = a.exact_div(&g).monic();
    (g, h)
}

/// Remainder of `f` by `g` in `t`, `g` monic, coefficients reduced mod `a`.
fn rem_monic(f: &BiPoly, g: &BiPoly, a: &UniPoly) -> BiPoly {
    let dg = g.deg_t().expect("nonzero divisor");
    let mut r: Vec<UniPoly> = reduce(f, a).coeffs_t().to_vec();
    while r.len() > dg {
        let k = r.len() - 1 - dg;
        let lead = r.pop().expect("nonempty");
        if !lead.is_zero() {
            for (j, gc) in g.coeffs_t().iter().enumerate().take(dg) {
                r[k + j] = (&r[k + j] - &(&lead * gc)).rem(a);
            }
        }
        while r.last().is_some_and(UniPoly::is_zero) {
            r.pop();
        }
    }
    BiPoly::new(r)
}

/// Quotient of `f` by the monic `g` (exact modulo `a`).
fn quo_monic(f: &BiPoly, g: &BiPoly, a: &UniPoly) -> BiPoly {
    let dg = g.deg_t().expect("nonzero divisor");
    let mut r: Vec<UniPoly> = reduce(f, a).coeffs_t().to_vec();
    if r.len() <= dg {
        return BiPoly::zero();
    }
    let mut q = vec![UniPoly::zero(); r.len() - dg];
    while r.len() > dg {
        let k = r.len() - 1 - dg;
        let lead = r.pop().expect("nonempty");
        if !lead.is_zero() {
            for (j, gc) in g.coeffs_t().iter().enumerate().take(dg) {
                r[k + j] = (&r[k + j] - &(&lead * gc)).rem(a);
            }
        }
        q[k] = lead;
    }
    BiPoly::new(q)
}

/// Makes `f` monic in `t` over each piece of `a` on which that is possible.
/// Pieces where `f` vanishes identically are returned with a zero polynomial.
fn monic_split(a: UniPoly, f: BiPoly) -> Vec<(UniPoly, BiPoly)> {
    let mut out = Vec::new();
    let mut work = vec![(a, f)];
    while let Some((a, f)) = work.pop() {
        if a.deg0() == 0 {
            continue;
        }
        let f = reduce(&f, &a);
        if f.is_zero() {
            out.push((a, f));
            continue;
        }
        let (z, u) = split(&a, &f.lc_t());
        if z.deg0() > 0 {
            work.push((z, f.clone()));
        }
        if u.deg0() > 0 {
            let inv = f.lc_t().inverse_mod(&u).expect("unit leading coefficient");
            let m = reduce(&f.map_coeffs(|c| c * &inv), &u);
            out.push((u, m));
        }
    }
    out
}

/// Gcd of `f` and `g` in (ℚ(i)[s]/(a))[t], splitting `a` whenever a leading
/// coefficient is a zero divisor. Each output gcd is monic or zero.
pub(crate) fn gcd_split(a: UniPoly, f: BiPoly, g: BiPoly) -> Vec<(UniPoly, BiPoly)> {
    let mut out = Vec::new();
    let mut work = vec![(a, f, g)];
    while let Some((a, f, g)) = work.pop() {
        if a.deg0() == 0 {
            continue;
        }
        let mut g = reduce(&g, &a);
        if g.is_zero() {
            out.extend(monic_split(a, f));
            continue;
        }
        // dividing by the lower-degree side first keeps the inverted
        // leading coefficients small
        let mut f = f;
        if f.deg_t().is_some_and(|df| df < g.deg_t().unwrap_or(0)) {
            let rf = reduce(&f, &a);
            if !rf.is_zero() {
                f = std::mem::replace(&mut g, rf);
            }
        }
        if g.deg_t() == Some(0) {
            // gcd is `f` where `g` vanishes and 1 elsewhere
            let (z, u) = split(&a, &g.coeff_t(0));
            out.extend(monic_split(z, f));
            if u.deg0() > 0 {
                out.push((u, BiPoly::in_s(&UniPoly::one())));
            }
            continue;
        }
        let (z, u) = split(&a, &g.lc_t());
        if z.deg0() > 0 {
            work.push((z, f.clone(), g.clone()));
        }
        if u.deg0() > 0 {
            let inv = g.lc_t().inverse_mod(&u).expect("unit leading coefficient");
            let gm = reduce(&g.map_coeffs(|c| c * &inv), &u);
            let r = rem_monic(&f, &gm, &u);
            work.push((u, gm, r));
        }
    }
    out
}

/// Splits a branch candidate so that the fiber is square-free everywhere.
fn squarefree_split(a: UniPoly, t: BiPoly) -> Vec<Branch> {
    let dt = t.derivative_t();
    gcd_split(a, t.clone(), dt)
        .into_iter()
        .map(|(a, g)| {
            let fiber = if g.deg_t() == Some(0) { reduce(&t, &a) } else { quo_monic(&t, &g, &a) };
            Branch { modulus: a, fiber }
        })
        .collect()
}

/// Solves `F_1 = … = F_k = 0` over ℂ².
pub fn solve_system(polys: &[BiPoly]) -> Elimination {
    let polys: Vec<BiPoly> = polys.iter().filter(|p| !p.is_zero()).cloned().collect();
    if polys.is_empty() {
        return Elimination {
            eliminant: UniPoly::zero(),
            solutions: SolutionSet::Infinite("no nonzero equations".into()),
        };
    }
    let common = polys.iter().fold(BiPoly::zero(), |g, p| g.gcd(p));
    if !common.is_constant() {
        return Elimination {
            eliminant: UniPoly::zero(),
            solutions: SolutionSet::Infinite(format!("common curve component {}", common.display("s", "t"))),
        };
    }
    let mut candidates: Vec<UniPoly> = Vec::new();
    for p in polys.iter().filter(|p| p.deg_t() == Some(0)) {
        candidates.push(p.coeff_t(0));
    }
    let moving: Vec<&BiPoly> = polys.iter().filter(|p| p.deg_t().unwrap_or(0) > 0).collect();
    for i in 0..moving.len() {
        for j in i + 1..moving.len() {
            let r = moving[i].resultant_t(moving[j]).expect("nonzero inputs");
            if !r.is_zero() {
                candidates.push(r);
            }
        }
    }
    if candidates.is_empty() && polys.len() >= 2 {
        // pairwise resultants all vanish; combinations of the equations have
        // the same common zeros and usually eliminate cleanly
        for k in 1..=5i64 {
            let combo = |w: &dyn Fn(usize) -> i64| {
                polys.iter().enumerate().fold(BiPoly::zero(), |acc, (idx, p)| {
                    &acc + &p.map_coeffs(|c| c.scale(&super::gaussian::GaussianRational::from_int(w(idx))))
                })
            };
            let p = combo(&|idx| (idx as i64 + 1).pow(2) + k);
            let q = combo(&|idx| (idx as i64 + 2).pow(3) - k);
            if let Ok(r) = p.resultant_t(&q) {
                if !r.is_zero() {
                    candidates.push(r);
                    break;
                }
            }
        }
    }
    if candidates.is_empty() {
        return Elimination {
            eliminant: UniPoly::zero(),
            solutions: SolutionSet::Unresolved("no nonvanishing eliminant found".into()),
        };
    }
    let eliminant = candidates.iter().fold(UniPoly::zero(), |g, c| g.gcd(c));
    let a = eliminant.squarefree_part().expect("nonzero eliminant");
    if a.deg0() == 0 {
        return Elimination { eliminant, solutions: SolutionSet::Finite(Vec::new()) };
    }
    let mut pieces = monic_split(a, polys[0].clone());
    for f in &polys[1..] {
        pieces = pieces.into_iter().flat_map(|(a, t)| gcd_split(a, t, f.clone())).collect();
    }
    let mut branches = Vec::new();
    for (a, t) in pieces {
        if t.is_zero() {
            return Elimination {
                eliminant,
                solutions: SolutionSet::Infinite(format!("vertical line over a root of {}", a.display("s"))),
            };
        }
        if t.deg_t() == Some(0) {
            continue;
        }
        branches.extend(squarefree_split(a, t));
    }
    Elimination { eliminant, solutions: SolutionSet::Finite(sort_branches(branches)) }
}

fn sort_branches(mut b: Vec<Branch>) -> Vec<Branch> {
    b.sort_by_key(|x| (x.modulus.deg0(), x.modulus.display("s"), x.fiber.display("s", "t")));
    b
}

/// Removes the diagonal `s = t` from a finite solution set.
pub fn exclude_diagonal(branches: &[Branch]) -> Vec<Branch> {
    let mut out = Vec::new();
    for b in branches {
        let on_diag = b.fiber.diagonal().rem(&b.modulus);
        let (z, u) = split(&b.modulus, &on_diag);
        if u.deg0() > 0 {
            out.push(Branch { fiber: reduce(&b.fiber, &u), modulus: u });
        }
        if z.deg0() > 0 {
            let t_minus_s = BiPoly::new(vec![-&UniPoly::var(), UniPoly::one()]);
            let rest = quo_monic(&b.fiber, &t_minus_s, &z);
            if rest.deg_t().unwrap_or(0) > 0 {
                out.push(Branch { modulus: z, fiber: rest });
            }
        }
    }
    sort_branches(out)
}

impl Branch {
    pub fn point_count(&self) -> usize {
        self.modulus.deg0() * self.fiber.deg_t().unwrap_or(0)
    }

    /// Sub-branches on which `e` also vanishes (empty iff `e ≠ 0` at every point).
    pub fn restrict(&self, e: &BiPoly) -> Vec<Branch> {
        let pieces = gcd_split(self.modulus.clone(), self.fiber.clone(), e.clone());
        sort_branches(
            pieces
                .into_iter()
                .filter(|(_, g)| g.deg_t().unwrap_or(0) > 0)
                .map(|(modulus, fiber)| Branch { modulus, fiber })
                .collect(),
        )
    }

    /// Normal form of `e` modulo `(A(s), T(s, t))`.
    pub fn normal_form(&self, e: &BiPoly) -> BiPoly {
        rem_monic(e, &self.fiber, &self.modulus)
    }

    /// Polynomial in `t` whose roots include every `t` of the branch.
    pub fn t_eliminant(&self) -> UniPoly {
        let r = BiPoly::in_t(&self.modulus).resultant_t(&self.fiber.swap()).expect("nonzero inputs");
        r.squarefree_part().unwrap_or(r)
    }

    /// Certified boxes for `s` and `t` of every point, paired numerically.
    pub fn isolate(&self, precision: &BigRational) -> Vec<(ComplexBox, ComplexBox)> {
        let Ok(s_iso) = isolate_roots(&self.modulus, precision) else {
            return Vec::new();
        };
        let Ok(t_iso) = isolate_roots(&self.t_eliminant(), precision) else {
            return Vec::new();
        };
        let per_fiber = self.fiber.deg_t().unwrap_or(0);
        let mut out = Vec::new();
        for sb in &s_iso.boxes {
            let sc = sb.center_c64();
            let mut scored: Vec<(f64, &ComplexBox)> = t_iso
                .boxes
                .iter()
                .map(|tb| {
                    let tc: Complex64 = tb.center_c64();
                    (self.fiber.eval_c64(sc, tc).norm(), tb)
                })
                .collect();
            scored.sort_by(|x, y| x.0.total_cmp(&y.0));
            for (_, tb) in scored.into_iter().take(per_fiber) {
                out.push((sb.clone(), tb.clone()));
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::bipoly::divided_difference;
    use crate::algebra::gaussian::GaussianRational as Gq;

    fn p(c: &[i64]) -> UniPoly {
        UniPoly::from_ints(c)
    }

    #[test]
    fn node_of_projected_twisted_cubic() {
        // (t^2, t^3 - t): divided differences s + t and s^2 + st + t^2 - 1
        let g1 = divided_difference(&p(&[0, 0, 1]));
        let g2 = divided_difference(&p(&[0, -1, 0, 1]));
        let e = solve_system(&[g1, g2]);
        let br = exclude_diagonal(e.solutions.branches());
        assert_eq!(br.iter().map(Branch::point_count).sum::<usize>(), 2);
        assert_eq!(br[0].modulus, p(&[-1, 0, 1]));
    }

    #[test]
    fn cusp_has_no_off_diagonal_solutions() {
        // (t^2, t^3): divided differences s + t, s^2 + st + t^2; only (0, 0)
        let g1 = divided_difference(&p(&[0, 0, 1]));
        let g2 = divided_difference(&p(&[0, 0, 0, 1]));
        let e = solve_system(&[g1, g2]);
        assert_eq!(e.solutions.point_count(), Some(1));
        assert!(exclude_diagonal(e.solutions.branches()).is_empty());
    }

    #[test]
    fn curve_component_is_infinite() {
        let f = BiPoly::difference(&p(&[0, 1]), &p(&[0, 1]));
        let e = solve_system(&[f.clone(), &f * &BiPoly::in_s(&p(&[1, 1]))]);
        assert!(matches!(e.solutions, SolutionSet::Infinite(_)));
    }

    #[test]
    fn splitting_separates_fibers_of_different_degree() {
        // s^2 = 1 and (t - s)(t - 1) = 0: at s = 1 one t, at s = -1 two t's
        let f1 = BiPoly::in_s(&p(&[-1, 0, 1]));
        let f2 = &BiPoly::new(vec![-&UniPoly::var(), UniPoly::one()]) * &BiPoly::in_t(&p(&[-1, 1]));
        let e = solve_system(&[f1, f2]);
        assert_eq!(e.solutions.point_count(), Some(3));
        let counts: Vec<usize> = e.solutions.branches().iter().map(|b| b.fiber.deg_t().unwrap()).collect();
        assert!(counts.contains(&1) && counts.contains(&2));
    }

    #[test]
    fn restriction_detects_common_zero() {
        let g1 = divided_difference(&p(&[0, 0, 1]));
        let g2 = divided_difference(&p(&[0, -1, 0, 1]));
        let br = exclude_diagonal(solve_system(&[g1, g2]).solutions.branches());
        // s - 1 vanishes at exactly one of the two points
        let hits = br[0].restrict(&BiPoly::in_s(&p(&[-1, 1])));
        assert_eq!(hits.iter().map(Branch::point_count).sum::<usize>(), 1);
        // the constant 7 vanishes nowhere
        assert!(br[0].restrict(&BiPoly::in_s(&UniPoly::constant(Gq::from_int(7)))).is_empty());
    }

    #[test]
    fn isolates_pair_coordinates() {
        let g1 = divided_difference(&p(&[0, 0, 1]));
        let g2 = divided_difference(&p(&[0, -1, 0, 1]));
        let br = exclude_diagonal(solve_system(&[g1, g2]).solutions.branches());
        let prec = BigRational::new(1.into(), 1_000_000_000_000i64.into());
        let iso = br[0].isolate(&prec);
        assert_eq!(iso.len(), 2);
        for (s, t) in iso {
            assert!((s.center_c64() + t.center_c64()).norm() < 1e-12);
        }
    }
}
