//! Parametric curves in ℂ^m, projective directions, linear quotient maps and
//! flags.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::algebra::{parse_uni, GaussianRational as Gq, Matrix, ParseError, UniPoly};
use crate::automorphism::PolynomialAutomorphism;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum CurveError {
    #[error("component {component}, coordinate {coordinate}: {source}")]
    Parse { component: usize, coordinate: usize, source: ParseError },
    #[error("component {0} is constant")]
    ConstantComponent(usize),
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("a curve needs at least one component")]
    NoComponents,
    #[error("the zero vector is not a direction")]
    ZeroDirection,
    #[error("vectors are linearly dependent")]
    DependentVectors,
    #[error("invalid document: {0}")]
    Document(String),
}

/// A finite disjoint union of polynomial maps `ℂ → ℂ^m`.
///
/// Points are identified by `(component, parameter)`; equal images on
/// different components are different points.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ParametricCurve {
    ambient_dim: usize,
    parameter: String,
    components: Vec<Vec<UniPoly>>,
}

/// On-disk form of a curve.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CurveDocument {
    pub ambient_dim: usize,
    #[serde(default = "default_parameter")]
    pub parameter: String,
    pub components: Vec<Vec<String>>,
}

fn default_parameter() -> String {
    "t".into()
}

impl ParametricCurve {
    /// Checked constructor: nonempty, consistent dimension, no constant component.
    pub fn new(components: Vec<Vec<UniPoly>>) -> Result<Self, CurveError> {
        let c = Self::from_components(components)?;
        if let Some(k) = c.components.iter().position(|comp| comp.iter().all(UniPoly::is_constant)) {
            return Err(CurveError::ConstantComponent(k));
        }
        Ok(c)
    }

    /// Like [`new`](Self::new) but allows constant components; images under
    /// projections are built this way so collapse can be reported.
    pub fn from_components(components: Vec<Vec<UniPoly>>) -> Result<Self, CurveError> {
        let m = components.first().ok_or(CurveError::NoComponents)?.len();
        if m == 0 {
            return Err(CurveError::DimensionMismatch { expected: 1, found: 0 });
        }
        if let Some(bad) = components.iter().find(|c| c.len() != m) {
            return Err(CurveError::DimensionMismatch { expected: m, found: bad.len() });
        }
        Ok(Self { ambient_dim: m, parameter: default_parameter(), components })
    }

    pub fn with_parameter(mut self, name: &str) -> Self {
        self.parameter = name.to_string();
        self
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn parameter(&self) -> &str {
        &self.parameter
    }

    pub fn components(&self) -> &[Vec<UniPoly>] {
        &self.components
    }

    pub fn component(&self, k: usize) -> &[UniPoly] {
        &self.components[k]
    }

    pub fn num_components(&self) -> usize {
        self.components.len()
    }

    pub fn degree(&self) -> usize {
        self.components.iter().flatten().map(UniPoly::deg0).max().unwrap_or(0)
    }

    pub fn is_constant_component(&self, k: usize) -> bool {
        self.components[k].iter().all(UniPoly::is_constant)
    }

    pub fn derivative(&self, k: usize) -> Vec<UniPoly> {
        self.components[k].iter().map(UniPoly::derivative).collect()
    }

    pub fn eval(&self, k: usize, t: &Gq) -> Vec<Gq> {
        self.components[k].iter().map(|p| p.eval(t)).collect()
    }

    /// Keeps the listed coordinates, in order.
    pub fn select(&self, coords: &[usize]) -> ParametricCurve {
        let components = self.components.iter().map(|c| coords.iter().map(|&i| c[i].clone()).collect()).collect();
        Self { ambient_dim: coords.len(), parameter: self.parameter.clone(), components }
    }

    /// Concatenates coordinates componentwise.
    pub fn join(&self, other: &ParametricCurve) -> Result<ParametricCurve, CurveError> {
        if self.num_components() != other.num_components() {
            return Err(CurveError::Document(format!(
                "component count {} vs {}",
                self.num_components(),
                other.num_components()
            )));
        }
        let components =
            self.components.iter().zip(&other.components).map(|(a, b)| [a.clone(), b.clone()].concat()).collect();
        Ok(Self { ambient_dim: self.ambient_dim + other.ambient_dim, parameter: self.parameter.clone(), components })
    }

    /// Componentwise application of a linear map, constant components allowed.
    pub fn project(&self, proj: &LinearProjection) -> Result<ParametricCurve, CurveError> {
        if proj.source_dim() != self.ambient_dim {
            return Err(CurveError::DimensionMismatch { expected: proj.source_dim(), found: self.ambient_dim });
        }
        let components = self.components.iter().map(|c| proj.apply_polys(c)).collect();
        Ok(Self { ambient_dim: proj.target_dim(), parameter: self.parameter.clone(), components })
    }

    pub fn apply_automorphism(&self, phi: &PolynomialAutomorphism) -> Result<ParametricCurve, CurveError> {
        if phi.dim() != self.ambient_dim {
            return Err(CurveError::DimensionMismatch { expected: phi.dim(), found: self.ambient_dim });
        }
        let components = self.components.iter().map(|c| phi.apply_polys(c)).collect();
        Ok(Self { ambient_dim: self.ambient_dim, parameter: self.parameter.clone(), components })
    }

    /// Leading-coefficient direction of each component, deduplicated in order.
    pub fn asymptotic_directions(&self) -> Vec<Direction> {
        let mut out: Vec<Direction> = Vec::new();
        for k in 0..self.num_components() {
            if let Some(d) = self.leading_direction(k) {
                if !out.contains(&d) {
                    out.push(d);
                }
            }
        }
        out
    }

    /// `None` for a constant component.
    pub fn leading_direction(&self, k: usize) -> Option<Direction> {
        let comp = &self.components[k];
        let d = comp.iter().map(UniPoly::deg0).max().unwrap_or(0);
        if d == 0 {
            return None;
        }
        Direction::new(comp.iter().map(|p| p.coeff(d)).collect()).ok()
    }

    pub fn to_document(&self) -> CurveDocument {
        CurveDocument {
            ambient_dim: self.ambient_dim,
            parameter: self.parameter.clone(),
            components: self
                .components
                .iter()
                .map(|c| c.iter().map(|p| p.display(&self.parameter)).collect())
                .collect(),
        }
    }

    pub fn from_document(doc: &CurveDocument) -> Result<Self, CurveError> {
        if doc.components.is_empty() {
            return Err(CurveError::NoComponents);
        }
        let mut comps = Vec::with_capacity(doc.components.len());
        for (k, c) in doc.components.iter().enumerate() {
            if c.len() != doc.ambient_dim {
                return Err(CurveError::DimensionMismatch { expected: doc.ambient_dim, found: c.len() });
            }
            let mut coords = Vec::with_capacity(c.len());
            for (j, text) in c.iter().enumerate() {
                let p = parse_uni(text, &doc.parameter).map_err(|source| CurveError::Parse {
                    component: k,
                    coordinate: j,
                    source,
                })?;
                coords.push(p);
            }
            comps.push(coords);
        }
        Ok(Self::new(comps)?.with_parameter(&doc.parameter))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_document()).expect("serializable")
    }
}

/// Parses a JSON curve document.
pub fn parse_curve(text: &str) -> Result<ParametricCurve, CurveError> {
    let doc: CurveDocument = serde_json::from_str(text).map_err(|e| CurveError::Document(e.to_string()))?;
    ParametricCurve::from_document(&doc)
}

impl fmt::Debug for ParametricCurve {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let comps: Vec<String> = self
            .components
            .iter()
            .map(|c| {
                let coords: Vec<String> = c.iter().map(|p| p.display(&self.parameter)).collect();
                format!("({})", coords.join(", "))
            })
            .collect();
        write!(f, "{}", comps.join(" ⊔ "))
    }
}

/// Built-in curves.
pub mod fixtures {
    use super::*;

    fn curve(comps: &[&[&str]]) -> ParametricCurve {
        let doc = CurveDocument {
            ambient_dim: comps[0].len(),
            parameter: "t".into(),
            components: comps.iter().map(|c| c.iter().map(|s| s.to_string()).collect()).collect(),
        };
        ParametricCurve::from_document(&doc).expect("fixture is valid")
    }

    /// `t ↦ (t, t², t³)`.
    pub fn twisted_cubic() -> ParametricCurve {
        curve(&[&["t", "t^2", "t^3"]])
    }

    /// Three disjoint lines whose projections along `(a:b:0)` are
    /// 2-transversal only for `a = 0`.
    pub fn three_lines() -> ParametricCurve {
        curve(&[&["1", "t", "-t"], &["0", "0", "t"], &["-1", "t", "t"]])
    }

    /// `t ↦ (t, 0, 0)`.
    pub fn standard_line() -> ParametricCurve {
        curve(&[&["t", "0", "0"]])
    }

    pub fn by_name(name: &str) -> Option<ParametricCurve> {
        match name {
            "twisted-cubic" => Some(twisted_cubic()),
            "three-lines" => Some(three_lines()),
            "standard-line" => Some(standard_line()),
            _ => None,
        }
    }

    pub const NAMES: [&str; 3] = ["three-lines", "twisted-cubic", "standard-line"];
}

/// A point of ℙ^{m-1}, stored with its first nonzero coordinate equal to 1.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Direction {
    coords: Vec<Gq>,
}

impl Direction {
    pub fn new(coords: Vec<Gq>) -> Result<Self, CurveError> {
        let lead = coords.iter().find(|c| !c.is_zero()).ok_or(CurveError::ZeroDirection)?;
        let inv = lead.inv().expect("nonzero");
        Ok(Self { coords: coords.iter().map(|c| c * &inv).collect() })
    }

    pub fn from_ints(coords: &[i64]) -> Result<Self, CurveError> {
        Self::new(coords.iter().map(|&c| Gq::from_int(c)).collect())
    }

    /// Parses `(a:b:c)` or `a,b,c` with entries in the polynomial grammar.
    pub fn parse(text: &str) -> Result<Self, CurveError> {
        let inner = text.trim().trim_start_matches('(').trim_end_matches(')');
        let sep = if inner.contains(':') { ':' } else { ',' };
        let mut coords = Vec::new();
        for (j, part) in inner.split(sep).enumerate() {
            let c = crate::algebra::parse_constant(part).map_err(|source| CurveError::Parse {
                component: 0,
                coordinate: j,
                source,
            })?;
            coords.push(c);
        }
        Self::new(coords)
    }

    pub fn coords(&self) -> &[Gq] {
        &self.coords
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn to_strings(&self) -> Vec<String> {
        self.coords.iter().map(Gq::to_grammar).collect()
    }
}

impl fmt::Display for Direction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.to_strings().join(":"))
    }
}

impl fmt::Debug for Direction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// A surjective linear map `ℂ^m → ℂ^{m-k}` together with a basis of its kernel.
#[derive(Clone, PartialEq, Eq)]
pub struct LinearProjection {
    matrix: Matrix,
    kernel: Vec<Vec<Gq>>,
}

impl LinearProjection {
    /// The deterministic quotient by `span(kernel)`: rows are the reduced
    /// row-echelon basis of the annihilator of the kernel.
    pub fn canonical_quotient(kernel: &[Vec<Gq>]) -> Result<Self, CurveError> {
        let m = kernel.first().map(Vec::len).ok_or(CurveError::DependentVectors)?;
        if kernel.iter().any(|v| v.len() != m) {
            return Err(CurveError::DimensionMismatch {
                expected: m,
                found: kernel.iter().map(Vec::len).find(|&l| l != m).unwrap(),
            });
        }
        let k = Matrix::from_rows(kernel.to_vec());
        let (kr, pivots) = k.rref();
        if pivots.len() != kernel.len() {
            return Err(CurveError::DependentVectors);
        }
        let rows = k.nullspace();
        let matrix = if rows.is_empty() { Matrix::zeros(0, m) } else { Matrix::from_rows(rows).rref().0 };
        Ok(Self { matrix, kernel: kr.to_rows() })
    }

    pub fn along(v: &Direction) -> Self {
        Self::canonical_quotient(&[v.coords().to_vec()]).expect("nonzero direction")
    }

    /// Uses the given rows as they are; the kernel is computed.
    pub fn from_rows(rows: Vec<Vec<Gq>>) -> Result<Self, CurveError> {
        let matrix = Matrix::from_rows(rows);
        if matrix.rank() != matrix.nrows() {
            return Err(CurveError::DependentVectors);
        }
        let kernel = matrix.nullspace();
        let kernel = if kernel.is_empty() { kernel } else { Matrix::from_rows(kernel).rref().0.to_rows() };
        Ok(Self { matrix, kernel })
    }

    pub fn from_int_rows(rows: &[&[i64]]) -> Result<Self, CurveError> {
        Self::from_rows(rows.iter().map(|r| r.iter().map(|&x| Gq::from_int(x)).collect()).collect())
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    /// Kernel basis in reduced row-echelon form.
    pub fn kernel(&self) -> &[Vec<Gq>] {
        &self.kernel
    }

    pub fn source_dim(&self) -> usize {
        self.matrix.ncols()
    }

    pub fn target_dim(&self) -> usize {
        self.matrix.nrows()
    }

    pub fn is_canonical(&self) -> bool {
        self.matrix.rref().0 == self.matrix
    }

    pub fn apply(&self, x: &[Gq]) -> Vec<Gq> {
        self.matrix.mul_vec(x)
    }

    pub fn apply_polys(&self, x: &[UniPoly]) -> Vec<UniPoly> {
        (0..self.matrix.nrows())
            .map(|i| {
                self.matrix.row(i).iter().zip(x).fold(UniPoly::zero(), |acc, (a, p)| {
                    if a.is_zero() {
                        acc
                    } else {
                        &acc + &p.scale(a)
                    }
                })
            })
            .collect()
    }

    /// True when `v` lies in the kernel.
    pub fn kills(&self, v: &[Gq]) -> bool {
        self.apply(v).iter().all(Gq::is_zero)
    }

    pub fn rows_as_strings(&self) -> Vec<Vec<String>> {
        self.matrix.to_strings()
    }
}

impl fmt::Debug for LinearProjection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LinearProjection{:?}", self.matrix)
    }
}

/// A full flag `W_1 ⊂ W_2 ⊂ … ⊂ W_{m-1}` in ℂ^m, given by ordered vectors
/// `w_1, …, w_{m-1}` with `W_k = span(w_1, …, w_k)`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Flag {
    vectors: Vec<Vec<Gq>>,
}

impl Flag {
    pub fn new(vectors: Vec<Vec<Gq>>) -> Result<Self, CurveError> {
        let m = vectors.first().map(Vec::len).ok_or(CurveError::DependentVectors)?;
        if vectors.len() + 1 != m {
            return Err(CurveError::DimensionMismatch { expected: m - 1, found: vectors.len() });
        }
        if vectors.iter().any(|v| v.len() != m) {
            return Err(CurveError::DimensionMismatch { expected: m, found: 0 });
        }
        if Matrix::from_rows(vectors.clone()).rank() != vectors.len() {
            return Err(CurveError::DependentVectors);
        }
        Ok(Self { vectors })
    }

    pub fn from_ints(vectors: &[&[i64]]) -> Result<Self, CurveError> {
        Self::new(vectors.iter().map(|r| r.iter().map(|&x| Gq::from_int(x)).collect()).collect())
    }

    pub fn ambient_dim(&self) -> usize {
        self.vectors.len() + 1
    }

    pub fn vectors(&self) -> &[Vec<Gq>] {
        &self.vectors
    }

    /// Basis of `W_k`.
    pub fn subspace(&self, k: usize) -> &[Vec<Gq>] {
        &self.vectors[..k]
    }

    /// Canonical quotient `ℂ^m → ℂ^m / W_k`.
    pub fn quotient(&self, k: usize) -> LinearProjection {
        LinearProjection::canonical_quotient(self.subspace(k)).expect("independent by construction")
    }

    /// Replaces `w_k`, keeping every other vector.
    pub fn with_vector(&self, k: usize, w: Vec<Gq>) -> Result<Self, CurveError> {
        let mut v = self.vectors.clone();
        v[k - 1] = w;
        Self::new(v)
    }

    pub fn to_strings(&self) -> Vec<Vec<String>> {
        self.vectors.iter().map(|v| v.iter().map(Gq::to_grammar).collect()).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(x: i64) -> Gq {
        Gq::from_int(x)
    }

    #[test]
    fn direction_normalizes() {
        let a = Direction::new(vec![g(0), g(2), Gq::from_parts(4, 2)]).unwrap();
        assert_eq!(a.coords(), &[g(0), g(1), Gq::from_parts(2, 1)]);
        assert_eq!(Direction::new(vec![g(0), g(0)]), Err(CurveError::ZeroDirection));
        assert_eq!(Direction::parse("(0:1:2+i)").unwrap(), a);
    }

    #[test]
    fn quotient_examples() {
        let p = LinearProjection::canonical_quotient(&[vec![g(0), g(0), g(1)]]).unwrap();
        assert_eq!(p.matrix(), &Matrix::from_ints(&[&[1, 0, 0], &[0, 1, 0]]));
        let p = LinearProjection::canonical_quotient(&[vec![g(1), g(0), g(1)]]).unwrap();
        assert!(p.kills(&[g(1), g(0), g(1)]));
        assert_eq!(p.target_dim(), 2);
        let p = LinearProjection::canonical_quotient(&[vec![g(1), g(0), g(0)], vec![g(0), g(1), g(0)]]).unwrap();
        assert_eq!(p.matrix(), &Matrix::from_ints(&[&[0, 0, 1]]));
        assert_eq!(
            LinearProjection::canonical_quotient(&[vec![g(1), g(1), g(0)], vec![g(2), g(2), g(0)]]),
            Err(CurveError::DependentVectors)
        );
    }

    #[test]
    fn projection_examples() {
        let cubic = fixtures::twisted_cubic();
        let p = LinearProjection::from_int_rows(&[&[0, 1, 0], &[-1, 0, 1]]).unwrap();
        assert_eq!(p.kernel(), &[vec![g(1), g(0), g(1)]]);
        let img = cubic.project(&p).unwrap();
        assert_eq!(img.component(0), &[UniPoly::from_ints(&[0, 0, 1]), UniPoly::from_ints(&[0, -1, 0, 1])]);

        let lines = fixtures::three_lines();
        let img = lines.project(&LinearProjection::along(&Direction::from_ints(&[0, 1, 0]).unwrap())).unwrap();
        let t = |c: &[i64]| UniPoly::from_ints(c);
        assert_eq!(img.component(0), &[t(&[1]), t(&[0, -1])]);
        assert_eq!(img.component(1), &[t(&[]), t(&[0, 1])]);
        assert_eq!(img.component(2), &[t(&[-1]), t(&[0, 1])]);
    }

    #[test]
    fn documents() {
        let c = parse_curve(r#"{"ambient_dim": 3, "parameter": "t", "components": [["t", "t^2", "t^3"]]}"#).unwrap();
        assert_eq!(c, fixtures::twisted_cubic());
        assert_eq!(parse_curve(&c.to_json()).unwrap(), c);
        let e = parse_curve(r#"{"ambient_dim": 2, "components": [["e^t", "t"]]}"#).unwrap_err();
        assert!(matches!(e, CurveError::Parse { component: 0, coordinate: 0, .. }));
        let e = parse_curve(r#"{"ambient_dim": 2, "components": [["1", "2"]]}"#).unwrap_err();
        assert_eq!(e, CurveError::ConstantComponent(0));
        let e = parse_curve(r#"{"ambient_dim": 3, "components": [["t", "2"]]}"#).unwrap_err();
        assert!(matches!(e, CurveError::DimensionMismatch { .. }));
    }

    #[test]
    fn asymptotic_directions_examples() {
        let d = fixtures::twisted_cubic().asymptotic_directions();
        assert_eq!(d, vec![Direction::from_ints(&[0, 0, 1]).unwrap()]);
        let d = fixtures::three_lines().asymptotic_directions();
        let want: Vec<Direction> =
            [[0, 1, -1], [0, 0, 1], [0, 1, 1]].iter().map(|v| Direction::from_ints(v).unwrap()).collect();
        assert_eq!(d, want);
    }

    #[test]
    fn flags() {
        let f = Flag::from_ints(&[&[0, 0, 1], &[0, 1, 0]]).unwrap();
        assert_eq!(f.quotient(1).target_dim(), 2);
        assert_eq!(f.quotient(2).matrix(), &Matrix::from_ints(&[&[1, 0, 0]]));
        assert!(Flag::from_ints(&[&[0, 0, 1], &[0, 0, 2]]).is_err());
    }
}
