use num_rational::BigRational;

use crate::algebra::triangular::{exclude_diagonal, solve_system, Branch, SolutionSet};
use crate::algebra::{divided_difference, BiPoly, ComplexBox, UniPoly};
use crate::curve::{LinearProjection, ParametricCurve};

use super::AnalysisError;

/// Double points of one ordered pair of components `(a, b)`: solutions
/// `(s, t)` with `h_a(s) = h_b(t)`, where `s` is a parameter on component
/// `a` and `t` on component `b`, and `s ≠ t` when `a = b`.
#[derive(Clone, Debug)]
pub struct PairRecord {
    pub a: usize,
    pub b: usize,
    /// Divided differences for `a = b`, plain differences otherwise.
    pub generators: Vec<BiPoly>,
    pub eliminant: UniPoly,
    pub solutions: SolutionSet,
    pub isolates: Vec<(ComplexBox, ComplexBox)>,
}

impl PairRecord {
    pub fn is_finite(&self) -> bool {
        self.solutions.is_finite()
    }

    pub fn branches(&self) -> &[Branch] {
        self.solutions.branches()
    }

    pub fn point_count(&self) -> usize {
        self.solutions.point_count().unwrap_or(0)
    }
}

/// All ordered component pairs of a curve in ℂ^d. The record for `(b, a)`
/// is the record for `(a, b)` with `s` and `t` exchanged.
#[derive(Clone, Debug)]
pub struct DoublePointSystem {
    pub target_dim: usize,
    pub pairs: Vec<PairRecord>,
}

impl DoublePointSystem {
    pub fn is_finite(&self) -> bool {
        self.pairs.iter().all(PairRecord::is_finite)
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.iter().all(|p| p.solutions.is_empty())
    }

    pub fn pair(&self, a: usize, b: usize) -> Option<&PairRecord> {
        self.pairs.iter().find(|p| p.a == a && p.b == b)
    }

    /// Number of unordered double points `{(a, s), (b, t)}`.
    pub fn unordered_count(&self) -> usize {
        self.pairs
            .iter()
            .map(|p| match p.a.cmp(&p.b) {
                std::cmp::Ordering::Less => p.point_count(),
                std::cmp::Ordering::Equal => p.point_count() / 2,
                std::cmp::Ordering::Greater => 0,
            })
            .sum()
    }

    pub fn infinite_pairs(&self) -> Vec<(usize, usize, String)> {
        self.pairs
            .iter()
            .filter_map(|p| match &p.solutions {
                SolutionSet::Infinite(r) | SolutionSet::Unresolved(r) => Some((p.a, p.b, r.clone())),
                SolutionSet::Finite(_) => None,
            })
            .collect()
    }
}

pub fn pair_generators(h: &ParametricCurve, a: usize, b: usize) -> Vec<BiPoly> {
    if a == b {
        h.component(a).iter().map(divided_difference).collect()
    } else {
        h.component(a).iter().zip(h.component(b)).map(|(p, q)| BiPoly::difference(p, q)).collect()
    }
}

/// Solves one pair; the diagonal is removed for `a = b`.
pub fn solve_pair(h: &ParametricCurve, a: usize, b: usize) -> PairRecord {
    let generators = pair_generators(h, a, b);
    let e = solve_system(&generators);
    let solutions = match e.solutions {
        SolutionSet::Finite(br) if a == b => SolutionSet::Finite(exclude_diagonal(&br)),
        other => other,
    };
    PairRecord { a, b, generators, eliminant: e.eliminant, solutions, isolates: Vec::new() }
}

/// Double points of a curve given directly in its target space.
pub fn double_point_system(h: &ParametricCurve, precision: Option<&BigRational>) -> DoublePointSystem {
    let n = h.num_components();
    let mut pairs = Vec::with_capacity(n * n);
    for a in 0..n {
        for b in 0..n {
            let mut rec = solve_pair(h, a, b);
            if let Some(prec) = precision {
                rec.isolates = rec.branches().iter().flat_map(|br| br.isolate(prec)).collect();
            }
            pairs.push(rec);
        }
    }
    DoublePointSystem { target_dim: h.ambient_dim(), pairs }
}

/// Double points of `proj ∘ curve`.
pub fn double_points(
    curve: &ParametricCurve,
    proj: &LinearProjection,
    precision: Option<&BigRational>,
) -> Result<DoublePointSystem, AnalysisError> {
    let h = curve.project(proj)?;
    if let Some(k) = (0..h.num_components()).find(|&k| h.is_constant_component(k)) {
        return Err(AnalysisError::Collapse { component: k });
    }
    Ok(double_point_system(&h, precision))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curve::{fixtures, Direction};

    fn prec() -> BigRational {
        BigRational::new(1.into(), 1_000_000_000_000_000i64.into())
    }

    #[test]
    fn twisted_cubic_node() {
        let p = LinearProjection::from_int_rows(&[&[0, 1, 0], &[-1, 0, 1]]).unwrap();
        let d = double_points(&fixtures::twisted_cubic(), &p, Some(&prec())).unwrap();
        assert_eq!(d.unordered_count(), 1);
        let iso = &d.pair(0, 0).unwrap().isolates;
        assert_eq!(iso.len(), 2);
        for (s, t) in iso {
            assert!(s.is_exact() && t.is_exact());
            assert_eq!(s.center(), &-t.center());
        }
    }

    #[test]
    fn injective_first_coordinate_has_no_double_points() {
        let p = LinearProjection::along(&Direction::from_ints(&[0, 0, 1]).unwrap());
        assert!(double_points(&fixtures::twisted_cubic(), &p, None).unwrap().is_empty());
    }

    #[test]
    fn three_lines_meet_at_origin() {
        let p = LinearProjection::along(&Direction::from_ints(&[1, 0, 0]).unwrap());
        let d = double_points(&fixtures::three_lines(), &p, Some(&prec())).unwrap();
        assert_eq!(d.unordered_count(), 3);
        for (a, b) in [(0, 1), (0, 2), (1, 2)] {
            let rec = d.pair(a, b).unwrap();
            assert_eq!(rec.point_count(), 1);
            assert!(rec.isolates[0].0.is_exact());
            assert!(rec.isolates[0].0.center().is_zero());
        }
    }

    #[test]
    fn collapse_is_reported() {
        let line = fixtures::standard_line();
        let p = LinearProjection::along(&Direction::from_ints(&[1, 0, 0]).unwrap());
        assert!(matches!(double_points(&line, &p, None), Err(AnalysisError::Collapse { component: 0 })));
    }
}
