//! Exact arithmetic over ℚ(i): numbers, polynomials, matrices, resultants,
//! certified root isolation and bivariate system solving.

pub mod bipoly;
pub mod gaussian;
pub mod matrix;
pub mod multipoly;
pub mod parse;
pub(crate) mod prs;
pub mod ring;
pub mod roots;
pub mod triangular;
pub mod unipoly;

pub use bipoly::{divided_difference, BiPoly};
pub use gaussian::GaussianRational;
pub use matrix::Matrix;
pub use multipoly::MultiPoly;
pub use parse::{parse_constant, parse_multi, parse_uni, ParseError};
pub use roots::{exact_root_near, format_c64, isolate_roots, ComplexBox, RootIsolation};
pub use triangular::{exclude_diagonal, solve_system, Branch, Elimination, SolutionSet};
pub use unipoly::UniPoly;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum AlgebraError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("degenerate input: {0}")]
    Degenerate(String),
}
