use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::GaussianRational as Gq;
use crate::curve::{Direction, ParametricCurve};

use super::certificate::Certificate;
use super::certify::certify_good;
use super::AnalysisError;

/// Seeded directions in the span of a constraint basis.
///
/// Coefficients are Gaussian integers from the box `{−B..B} + i{−B..B}`;
/// `B` starts at 2 and doubles every quarter of the budget.
#[derive(Clone, Debug)]
pub struct DirectionSampler {
    basis: Vec<Vec<Gq>>,
    budget: usize,
    drawn: usize,
    rng: ChaCha8Rng,
}

impl DirectionSampler {
    pub fn new(basis: Vec<Vec<Gq>>, seed: u64, budget: usize) -> Result<Self, AnalysisError> {
        let dim = basis.first().ok_or(AnalysisError::EmptyConstraint)?.len();
        if let Some(v) = basis.iter().find(|v| v.len() != dim) {
            return Err(AnalysisError::DimensionMismatch { expected: dim, found: v.len() });
        }
        Ok(Self { basis, budget: budget.max(1), drawn: 0, rng: ChaCha8Rng::seed_from_u64(seed) })
    }

    /// The whole projective space of dimension `m − 1`.
    pub fn full(m: usize, seed: u64, budget: usize) -> Result<Self, AnalysisError> {
        let basis = (0..m).map(|i| (0..m).map(|j| if i == j { Gq::one() } else { Gq::zero() }).collect()).collect();
        Self::new(basis, seed, budget)
    }

    pub fn box_radius(&self) -> i64 {
        let quartile = (4 * self.drawn / self.budget).min(3);
        2 << quartile
    }

    /// Draws the next nonzero direction; zero combinations are redrawn.
    pub fn next_direction(&mut self) -> Direction {
        let b = self.box_radius();
        self.drawn += 1;
        loop {
            let dim = self.basis[0].len();
            let mut v = vec![Gq::zero(); dim];
            for w in &self.basis {
                let c = Gq::from_parts(self.rng.gen_range(-b..=b), self.rng.gen_range(-b..=b));
                if c.is_zero() {
                    continue;
                }
                for (x, y) in v.iter_mut().zip(w) {
                    *x = &*x + &(&c * y);
                }
            }
            if let Ok(d) = Direction::new(v) {
                return d;
            }
        }
    }
}

#[derive(Clone, Debug)]
pub struct SearchOutcome {
    /// Sample index, direction and certificate of the first pass.
    pub found: Option<(usize, Direction, Certificate)>,
    pub failures: Vec<(usize, Direction, Certificate)>,
    pub samples: usize,
}

impl SearchOutcome {
    pub fn exhausted(&self) -> bool {
        self.found.is_none()
    }
}

/// Certifies sampled directions in order until one passes `check`.
pub fn search_with<F>(
    mut sampler: DirectionSampler,
    budget: usize,
    mut check: F,
) -> Result<SearchOutcome, AnalysisError>
where
    F: FnMut(&Direction) -> Result<Certificate, AnalysisError>,
{
    let mut failures = Vec::new();
    for i in 0..budget {
        let v = sampler.next_direction();
        let cert = check(&v)?;
        if cert.passed() {
            return Ok(SearchOutcome { found: Some((i, v, cert)), failures, samples: i + 1 });
        }
        failures.push((i, v, cert));
    }
    Ok(SearchOutcome { found: None, failures, samples: budget })
}

/// Good-projection search inside the span of `constraint`.
pub fn search_direction(
    curve: &ParametricCurve,
    constraint: &[Vec<Gq>],
    seed: u64,
    budget: usize,
) -> Result<SearchOutcome, AnalysisError> {
    let sampler = DirectionSampler::new(constraint.to_vec(), seed, budget)?;
    if sampler.basis[0].len() != curve.ambient_dim() {
        return Err(AnalysisError::DimensionMismatch { expected: curve.ambient_dim(), found: sampler.basis[0].len() });
    }
    search_with(sampler, budget, |v| certify_good(curve, v))
}
