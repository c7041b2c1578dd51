//! Polynomial automorphisms of ℂ^m built from elementary shears and
//! invertible affine maps.

mod construct;

pub use construct::{prescribed_jet, random_repair_shear, sl_decompose, Transvection};

use serde::{Deserialize, Serialize};

use crate::algebra::ring::Ring;
use crate::algebra::{parse_constant, parse_multi, GaussianRational as Gq, Matrix, MultiPoly, UniPoly};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum AutomorphismError {
    #[error("matrix is not in SL: determinant {0}")]
    NotUnimodular(String),
    #[error("matrix is not square")]
    NotSquare,
    #[error("the two points coincide")]
    EqualPoints,
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("invalid shear: {0}")]
    InvalidShear(String),
    #[error("singular linear factor")]
    SingularLinear,
    #[error("invalid automorphism document: {0}")]
    Document(String),
}

/// What a shear adds to its target coordinate (before scaling by `λ`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ShearProfile {
    /// `x_j³ − x_j²`; vanishes to first order at 0 and at 1.
    Cubic { source: usize },
    /// Any polynomial not involving the target coordinate.
    Polynomial(MultiPoly),
}

/// `x_i ↦ x_i + λ·profile(x)`, all other coordinates fixed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ElementaryShear {
    target: usize,
    profile: ShearProfile,
    lambda: Gq,
}

impl ElementaryShear {
    pub fn cubic(target: usize, source: usize, lambda: Gq) -> Result<Self, AutomorphismError> {
        if target == source {
            return Err(AutomorphismError::InvalidShear("target equals source".into()));
        }
        Ok(Self { target, profile: ShearProfile::Cubic { source }, lambda })
    }

    pub fn polynomial(target: usize, profile: MultiPoly, lambda: Gq) -> Result<Self, AutomorphismError> {
        if target >= profile.nvars() {
            return Err(AutomorphismError::DimensionMismatch { expected: target + 1, found: profile.nvars() });
        }
        if !profile.independent_of(&[target]) {
            return Err(AutomorphismError::InvalidShear("profile involves the target coordinate".into()));
        }
        Ok(Self { target, profile: ShearProfile::Polynomial(profile), lambda })
    }

    pub fn target(&self) -> usize {
        self.target
    }

    pub fn lambda(&self) -> &Gq {
        &self.lambda
    }

    pub fn profile(&self) -> &ShearProfile {
        &self.profile
    }

    pub fn profile_poly(&self, m: usize) -> MultiPoly {
        match &self.profile {
            ShearProfile::Cubic { source } => {
                let x = MultiPoly::var(m, *source);
                x.pow(3).sub(&x.pow(2))
            }
            ShearProfile::Polynomial(p) => p.clone(),
        }
    }

    pub fn inverse(&self) -> Self {
        Self { target: self.target, profile: self.profile.clone(), lambda: -&self.lambda }
    }

    fn max_index(&self) -> usize {
        match &self.profile {
            ShearProfile::Cubic { source } => self.target.max(*source),
            ShearProfile::Polynomial(p) => self.target.max(p.nvars().saturating_sub(1)),
        }
    }

    fn check_dim(&self, m: usize) -> Result<(), AutomorphismError> {
        let ok = match &self.profile {
            ShearProfile::Cubic { source } => self.target < m && *source < m,
            ShearProfile::Polynomial(p) => self.target < m && p.nvars() == m,
        };
        if ok {
            Ok(())
        } else {
            Err(AutomorphismError::DimensionMismatch { expected: m, found: self.max_index() + 1 })
        }
    }
}

/// One factor of an automorphism.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Factor {
    Shear(ElementaryShear),
    /// `x ↦ matrix·x + translation`.
    Affine {
        matrix: Matrix,
        translation: Vec<Gq>,
    },
}

impl Factor {
    pub fn linear(matrix: Matrix) -> Self {
        let n = matrix.nrows();
        Factor::Affine { matrix, translation: vec![Gq::zero(); n] }
    }

    fn eval(&self, x: &[Gq]) -> Vec<Gq> {
        match self {
            Factor::Shear(s) => {
                let mut y = x.to_vec();
                let add = &s.lambda * &s.profile_poly(x.len()).eval(x);
                y[s.target] = &y[s.target] + &add;
                y
            }
            Factor::Affine { matrix, translation } => {
                matrix.mul_vec(x).iter().zip(translation).map(|(a, b)| a + b).collect()
            }
        }
    }

    fn jacobian(&self, x: &[Gq]) -> Matrix {
        match self {
            Factor::Shear(s) => {
                let m = x.len();
                let mut j = Matrix::identity(m);
                let prof = s.profile_poly(m);
                for k in 0..m {
                    let d = prof.partial(k);
                    if !d.is_zero() {
                        let v = &j[(s.target, k)] + &(&s.lambda * &d.eval(x));
                        j[(s.target, k)] = v;
                    }
                }
                j
            }
            Factor::Affine { matrix, .. } => matrix.clone(),
        }
    }

    fn inverse(&self) -> Result<Factor, AutomorphismError> {
        match self {
            Factor::Shear(s) => Ok(Factor::Shear(s.inverse())),
            Factor::Affine { matrix, translation } => {
                let inv = matrix.inverse().ok_or(AutomorphismError::SingularLinear)?;
                let t: Vec<Gq> = inv.mul_vec(translation).iter().map(|c| -c).collect();
                Ok(Factor::Affine { matrix: inv, translation: t })
            }
        }
    }

    fn apply_ring<R: Ring>(&self, x: &[R], embed: impl Fn(&Gq) -> R + Copy) -> Vec<R> {
        match self {
            Factor::Shear(s) => {
                let mut y = x.to_vec();
                let prof = s.profile_poly(x.len());
                let add = prof.eval_in(x, embed).mul(&embed(&s.lambda));
                y[s.target] = y[s.target].add(&add);
                y
            }
            Factor::Affine { matrix, translation } => (0..matrix.nrows())
                .map(|i| {
                    matrix.row(i).iter().zip(x).fold(embed(&translation[i]), |acc, (a, p)| {
                        if a.is_zero() {
                            acc
                        } else {
                            acc.add(&embed(a).mul(p))
                        }
                    })
                })
                .collect(),
        }
    }

    /// Leaves the last `l` coordinates unchanged as polynomials.
    fn fixes_last(&self, m: usize, l: usize) -> bool {
        match self {
            Factor::Shear(s) => s.target < m - l,
            Factor::Affine { matrix, translation } => (m - l..m).all(|i| {
                translation[i].is_zero()
                    && (0..m).all(|j| matrix[(i, j)] == if i == j { Gq::one() } else { Gq::zero() })
            }),
        }
    }

    fn is_identity(&self) -> bool {
        matches!(self, Factor::Affine { matrix, translation } if matrix.is_identity() && translation.iter().all(Gq::is_zero))
    }
}

/// `φ = F_n ∘ … ∘ F_1` for the factor list `[F_1, …, F_n]` (applied first to last).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolynomialAutomorphism {
    dim: usize,
    factors: Vec<Factor>,
}

impl PolynomialAutomorphism {
    pub fn identity(dim: usize) -> Self {
        Self { dim, factors: Vec::new() }
    }

    pub fn from_factors(dim: usize, factors: Vec<Factor>) -> Result<Self, AutomorphismError> {
        for f in &factors {
            match f {
                Factor::Shear(s) => s.check_dim(dim)?,
                Factor::Affine { matrix, translation } => {
                    if matrix.nrows() != dim || matrix.ncols() != dim || translation.len() != dim {
                        return Err(AutomorphismError::DimensionMismatch { expected: dim, found: matrix.nrows() });
                    }
                    if matrix.determinant().is_zero() {
                        return Err(AutomorphismError::SingularLinear);
                    }
                }
            }
        }
        Ok(Self { dim, factors })
    }

    pub fn shear(dim: usize, s: ElementaryShear) -> Result<Self, AutomorphismError> {
        Self::from_factors(dim, vec![Factor::Shear(s)])
    }

    pub fn linear(matrix: Matrix) -> Result<Self, AutomorphismError> {
        if !matrix.is_square() {
            return Err(AutomorphismError::NotSquare);
        }
        Self::from_factors(matrix.nrows(), vec![Factor::linear(matrix)])
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn factors(&self) -> &[Factor] {
        &self.factors
    }

    pub fn is_identity(&self) -> bool {
        self.factors.is_empty()
    }

    /// `self ∘ inner`: applies `inner` first.
    pub fn compose(&self, inner: &PolynomialAutomorphism) -> Result<Self, AutomorphismError> {
        if self.dim != inner.dim {
            return Err(AutomorphismError::DimensionMismatch { expected: self.dim, found: inner.dim });
        }
        Ok(Self { dim: self.dim, factors: [inner.factors.clone(), self.factors.clone()].concat() })
    }

    pub fn invert(&self) -> Self {
        let factors = self.factors.iter().rev().map(|f| f.inverse().expect("factors are invertible")).collect();
        Self { dim: self.dim, factors }
    }

    pub fn evaluate(&self, x: &[Gq]) -> Result<Vec<Gq>, AutomorphismError> {
        if x.len() != self.dim {
            return Err(AutomorphismError::DimensionMismatch { expected: self.dim, found: x.len() });
        }
        Ok(self.factors.iter().fold(x.to_vec(), |y, f| f.eval(&y)))
    }

    /// Exact Jacobian matrix at `x` by the chain rule through the factors.
    pub fn jacobian_at(&self, x: &[Gq]) -> Result<Matrix, AutomorphismError> {
        if x.len() != self.dim {
            return Err(AutomorphismError::DimensionMismatch { expected: self.dim, found: x.len() });
        }
        let mut y = x.to_vec();
        let mut j = Matrix::identity(self.dim);
        for f in &self.factors {
            j = f.jacobian(&y).mul(&j);
            y = f.eval(&y);
        }
        Ok(j)
    }

    /// Substitutes the coordinate polynomials of a curve component.
    pub fn apply_polys(&self, x: &[UniPoly]) -> Vec<UniPoly> {
        self.factors.iter().fold(x.to_vec(), |y, f| f.apply_ring(&y, |c| UniPoly::constant(c.clone())))
    }

    /// Fully expanded coordinate polynomials in `x_1, …, x_m`.
    pub fn to_polynomials(&self) -> Vec<MultiPoly> {
        let m = self.dim;
        let start: Vec<MultiPoly> = (0..m).map(|i| MultiPoly::var(m, i)).collect();
        self.factors.iter().fold(start, |y, f| f.apply_ring(&y, |c| MultiPoly::constant(m, c.clone())))
    }

    pub fn fixes_last(&self, l: usize) -> bool {
        l <= self.dim && self.factors.iter().all(|f| f.fixes_last(self.dim, l))
    }

    /// Product of the factor Jacobian determinants, each constant.
    pub fn jacobian_determinant(&self) -> Gq {
        self.factors.iter().fold(Gq::one(), |acc, f| match f {
            Factor::Shear(_) => acc,
            Factor::Affine { matrix, .. } => &acc * &matrix.determinant(),
        })
    }

    /// Merges adjacent affine factors and drops identities.
    pub fn simplified(&self) -> Self {
        let mut out: Vec<Factor> = Vec::new();
        for f in &self.factors {
            match (out.last_mut(), f) {
                (
                    Some(Factor::Affine { matrix: m1, translation: t1 }),
                    Factor::Affine { matrix: m2, translation: t2 },
                ) => {
                    // x ↦ m2(m1 x + t1) + t2
                    let t: Vec<Gq> = m2.mul_vec(t1).iter().zip(t2).map(|(a, b)| a + b).collect();
                    *m1 = m2.mul(m1);
                    *t1 = t;
                }
                _ => out.push(f.clone()),
            }
            if out.last().is_some_and(Factor::is_identity) {
                out.pop();
            }
        }
        Self { dim: self.dim, factors: out }
    }

    pub fn to_document(&self) -> AutomorphismDocument {
        let names = var_names(self.dim);
        let factors = self
            .factors
            .iter()
            .map(|f| match f {
                Factor::Shear(s) => match &s.profile {
                    ShearProfile::Cubic { source } => FactorDocument::Shear {
                        target: s.target,
                        source: Some(*source),
                        profile: None,
                        lambda: s.lambda.to_grammar(),
                    },
                    ShearProfile::Polynomial(p) => FactorDocument::Shear {
                        target: s.target,
                        source: None,
                        profile: Some(p.display(&names)),
                        lambda: s.lambda.to_grammar(),
                    },
                },
                Factor::Affine { matrix, translation } => FactorDocument::Affine {
                    matrix: matrix.to_strings(),
                    translation: translation.iter().map(Gq::to_grammar).collect(),
                },
            })
            .collect();
        AutomorphismDocument { dim: self.dim, factors }
    }

    pub fn from_document(doc: &AutomorphismDocument) -> Result<Self, AutomorphismError> {
        let names = var_names(doc.dim);
        let num = |s: &str| parse_constant(s).map_err(|e| AutomorphismError::Document(e.to_string()));
        let mut factors = Vec::new();
        for f in &doc.factors {
            factors.push(match f {
                FactorDocument::Shear { target, source, profile, lambda } => {
                    let lambda = num(lambda)?;
                    let s = match (source, profile) {
                        (Some(j), None) => ElementaryShear::cubic(*target, *j, lambda)?,
                        (None, Some(p)) => {
                            let p = parse_multi(p, &names).map_err(|e| AutomorphismError::Document(e.to_string()))?;
                            ElementaryShear::polynomial(*target, p, lambda)?
                        }
                        _ => {
                            return Err(AutomorphismError::Document(
                                "shear needs exactly one of source, profile".into(),
                            ))
                        }
                    };
                    Factor::Shear(s)
                }
                FactorDocument::Affine { matrix, translation } => {
                    let rows: Result<Vec<Vec<Gq>>, _> =
                        matrix.iter().map(|r| r.iter().map(|s| num(s)).collect()).collect();
                    let rows = rows?;
                    if rows.iter().any(|r| r.len() != doc.dim) {
                        return Err(AutomorphismError::DimensionMismatch { expected: doc.dim, found: 0 });
                    }
                    let t: Result<Vec<Gq>, _> = translation.iter().map(|s| num(s)).collect();
                    Factor::Affine { matrix: Matrix::from_rows(rows), translation: t? }
                }
            });
        }
        Self::from_factors(doc.dim, factors)
    }
}

/// Variable names used in serialized shear profiles.
pub fn var_names(m: usize) -> Vec<String> {
    (1..=m).map(|i| format!("x{i}")).collect()
}

/// Serialized automorphism. Coordinate indices are 0-based; profile
/// polynomials use the variables `x1, …, xm`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AutomorphismDocument {
    pub dim: usize,
    pub factors: Vec<FactorDocument>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum FactorDocument {
    Shear {
        target: usize,
        #[serde(skip_serializing_if = "Option::is_none", default)]
        source: Option<usize>,
        #[serde(skip_serializing_if = "Option::is_none", default)]
        profile: Option<String>,
        lambda: String,
    },
    Affine {
        matrix: Vec<Vec<String>>,
        translation: Vec<String>,
    },
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(x: i64) -> Gq {
        Gq::from_int(x)
    }

    fn cubic_shear() -> PolynomialAutomorphism {
        PolynomialAutomorphism::shear(3, ElementaryShear::cubic(0, 1, g(1)).unwrap()).unwrap()
    }

    #[test]
    fn shear_fixes_ones_and_inverts() {
        let phi = cubic_shear();
        assert_eq!(phi.evaluate(&[g(1), g(1), g(1)]).unwrap(), vec![g(1), g(1), g(1)]);
        assert_eq!(phi.evaluate(&[g(0), g(2), g(0)]).unwrap(), vec![g(4), g(2), g(0)]);
        let inv = phi.invert();
        match &inv.factors()[0] {
            Factor::Shear(s) => assert_eq!(s.lambda(), &g(-1)),
            _ => panic!("expected a shear"),
        }
        let id = phi.compose(&inv).unwrap();
        assert_eq!(id.evaluate(&[g(3), g(-2), Gq::i()]).unwrap(), vec![g(3), g(-2), Gq::i()]);
    }

    #[test]
    fn shear_on_diagonal_line() {
        let t = UniPoly::var();
        let out = cubic_shear().apply_polys(&[t.clone(), t.clone(), t.clone()]);
        assert_eq!(out[0], UniPoly::from_ints(&[0, 1, -1, 1]));
        assert_eq!(out[1], t);
    }

    #[test]
    fn chain_rule_matches_symbolic_jacobian() {
        let a = Matrix::from_ints(&[&[1, 2, 0], &[0, 1, 0], &[3, 0, 1]]);
        let phi = PolynomialAutomorphism::from_factors(
            3,
            vec![
                Factor::Shear(ElementaryShear::cubic(2, 0, g(2)).unwrap()),
                Factor::Affine { matrix: a, translation: vec![g(1), g(0), g(-1)] },
                Factor::Shear(ElementaryShear::cubic(1, 2, Gq::from_ratio(1, 3)).unwrap()),
            ],
        )
        .unwrap();
        let polys = phi.to_polynomials();
        let x = [g(2), Gq::from_parts(1, 1), g(-1)];
        let j = phi.jacobian_at(&x).unwrap();
        for (i, p) in polys.iter().enumerate() {
            assert_eq!(p.eval(&x), phi.evaluate(&x).unwrap()[i]);
            for k in 0..3 {
                assert_eq!(p.partial(k).eval(&x), j[(i, k)]);
            }
        }
    }

    #[test]
    fn document_round_trip() {
        let mut prof = MultiPoly::var(3, 2).pow(2);
        prof = prof.add(&MultiPoly::var(3, 2).scale(&g(-3)));
        let phi = PolynomialAutomorphism::from_factors(
            3,
            vec![
                Factor::Shear(ElementaryShear::polynomial(0, prof, g(1)).unwrap()),
                Factor::linear(Matrix::from_ints(&[&[0, 1, 0], &[1, 0, 0], &[0, 0, 1]])),
                Factor::Shear(ElementaryShear::cubic(1, 0, Gq::from_parts(0, 2)).unwrap()),
            ],
        )
        .unwrap();
        let doc = phi.to_document();
        let json = serde_json::to_string(&doc).unwrap();
        let back: AutomorphismDocument = serde_json::from_str(&json).unwrap();
        assert_eq!(PolynomialAutomorphism::from_document(&back).unwrap(), phi);
        assert!(phi.fixes_last(1));
        assert!(!phi.fixes_last(2));
    }

    #[test]
    fn invalid_shears_are_rejected() {
        assert!(ElementaryShear::cubic(1, 1, g(1)).is_err());
        assert!(ElementaryShear::polynomial(0, MultiPoly::var(2, 0), g(1)).is_err());
    }
}
