use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{AutomorphismError, ElementaryShear, Factor, PolynomialAutomorphism};
use crate::algebra::{GaussianRational as Gq, Matrix, MultiPoly};

/// The elementary matrix `I + c·E_{row,col}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Transvection {
    pub row: usize,
    pub col: usize,
    pub c: Gq,
}

impl Transvection {
    pub fn to_matrix(&self, m: usize) -> Matrix {
        let mut a = Matrix::identity(m);
        a[(self.row, self.col)] = self.c.clone();
        a
    }
}

/// Writes a determinant-one matrix as a product of transvections.
///
/// Gauss–Jordan reduction to the identity with row additions only; the
/// pivot rule is fixed (first nonzero entry below), so the output is
/// deterministic. The returned list multiplies left to right to `a`.
pub fn sl_decompose(a: &Matrix) -> Result<Vec<Transvection>, AutomorphismError> {
    if !a.is_square() {
        return Err(AutomorphismError::NotSquare);
    }
    let det = a.determinant();
    if !det.is_one() {
        return Err(AutomorphismError::NotUnimodular(det.to_grammar()));
    }
    let m = a.nrows();
    let mut w = a.clone();
    let mut ops: Vec<Transvection> = Vec::new();
    let mut add_row = |w: &mut Matrix, dst: usize, src: usize, c: Gq| {
        if c.is_zero() {
            return;
        }
        for k in 0..m {
            let v = &w[(dst, k)] + &(&c * &w[(src, k)]);
            w[(dst, k)] = v;
        }
        ops.push(Transvection { row: dst, col: src, c });
    };
    for j in 0..m {
        if w[(j, j)].is_zero() {
            let i = (j + 1..m).find(|&i| !w[(i, j)].is_zero()).expect("nonsingular");
            add_row(&mut w, j, i, Gq::one());
        }
        let a_jj = w[(j, j)].clone();
        if !a_jj.is_one() {
            // only the last pivot can be left alone, and det = 1 forces it to 1
            let below = j + 1;
            if w[(below, j)].is_zero() {
                add_row(&mut w, below, j, Gq::one());
            }
            let c = &(&Gq::one() - &a_jj) / &w[(below, j)];
            add_row(&mut w, j, below, c);
        }
        for i in 0..m {
            if i != j && !w[(i, j)].is_zero() {
                let c = -&w[(i, j)];
                add_row(&mut w, i, j, c);
            }
        }
    }
    debug_assert!(w.is_identity());
    // E_k ⋯ E_1 a = I, so a = E_1⁻¹ ⋯ E_k⁻¹
    Ok(ops.into_iter().map(|t| Transvection { row: t.row, col: t.col, c: -&t.c }).collect())
}

/// Cubic shears fixing `0` and `(1, …, 1)` with Jacobian `I` at `0` and `b` at `(1, …, 1)`.
fn jet_at_ones(b: &Matrix) -> Result<Vec<Factor>, AutomorphismError> {
    let ts = sl_decompose(b)?;
    // the chain rule multiplies Jacobians in reverse application order
    ts.iter().rev().map(|t| Ok(Factor::Shear(ElementaryShear::cubic(t.row, t.col, t.c.clone())?))).collect()
}

/// An automorphism `φ` with `φ(p_i) = p_i` and `Dφ(p_i) = a_i`.
///
/// An affine map sends `p1 ↦ 0` and `p2 ↦ (1, …, 1)`; cubic shears realize
/// the second jet at `(1, …, 1)`, the involution `x ↦ 𝟙 − x` exchanges the
/// two points, shears realize the first jet, and the involution and affine
/// normalization are undone.
pub fn prescribed_jet(
    p1: &[Gq],
    p2: &[Gq],
    a1: &Matrix,
    a2: &Matrix,
) -> Result<PolynomialAutomorphism, AutomorphismError> {
    let m = p1.len();
    if p2.len() != m {
        return Err(AutomorphismError::DimensionMismatch { expected: m, found: p2.len() });
    }
    for a in [a1, a2] {
        if a.nrows() != m || a.ncols() != m {
            return Err(AutomorphismError::DimensionMismatch { expected: m, found: a.nrows() });
        }
        let det = a.determinant();
        if !det.is_one() {
            return Err(AutomorphismError::NotUnimodular(det.to_grammar()));
        }
    }
    let d: Vec<Gq> = p2.iter().zip(p1).map(|(a, b)| a - b).collect();
    let k = d.iter().position(|c| !c.is_zero()).ok_or(AutomorphismError::EqualPoints)?;
    // n = I + (𝟙 − d) e_kᵀ / d_k sends d to 𝟙
    let mut n = Matrix::identity(m);
    for i in 0..m {
        let v = &n[(i, k)] + &(&(&Gq::one() - &d[i]) / &d[k]);
        n[(i, k)] = v;
    }
    let n_inv = n.inverse().expect("invertible normalization");
    let shift: Vec<Gq> = n.mul_vec(p1).iter().map(|c| -c).collect();
    let normalize = Factor::Affine { matrix: n.clone(), translation: shift };
    let swap = Factor::Affine {
        matrix: {
            let mut s = Matrix::identity(m);
            for i in 0..m {
                s[(i, i)] = Gq::from_int(-1);
            }
            s
        },
        translation: vec![Gq::one(); m],
    };
    let b1 = n.mul(a1).mul(&n_inv);
    let b2 = n.mul(a2).mul(&n_inv);
    let mut factors = vec![normalize.clone()];
    factors.extend(jet_at_ones(&b2)?);
    factors.push(swap.clone());
    factors.extend(jet_at_ones(&b1)?);
    factors.push(swap);
    factors.push(normalize.inverse()?);
    Ok(PolynomialAutomorphism::from_factors(m, factors)?.simplified())
}

/// A shear fixing the last `l` coordinates: one of the first `m − l`
/// coordinates gains a seeded random polynomial in all other coordinates,
/// with small integer coefficients, no constant term and exact degree
/// `max(degree_bound, 2)`.
///
/// Points identified by a projection that keeps the last `l` coordinates
/// share those coordinates, so a profile in them alone would move both
/// points equally; the pure top power of a free coordinate is therefore
/// always present when one exists. Linear profiles only relabel projection
/// directions, hence the degree floor.
pub fn random_repair_shear(
    m: usize,
    l: usize,
    seed: u64,
    degree_bound: u32,
) -> Result<PolynomialAutomorphism, AutomorphismError> {
    if l == 0 || l >= m {
        return Err(AutomorphismError::InvalidShear(format!("need 1 ≤ l < m, got l = {l}, m = {m}")));
    }
    let deg = degree_bound.max(2);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let target = rng.gen_range(0..m - l);
    let others: Vec<usize> = (0..m).filter(|&i| i != target).collect();
    // a free coordinate other than the target, if any
    let free = others.iter().position(|&i| i < m - l);
    let pivot = {
        let mut e = vec![0; others.len()];
        e[free.unwrap_or(others.len() - 1)] = deg;
        e
    };
    let mut profile = MultiPoly::zero(m);
    for d in 1..=deg {
        for e in exponents(others.len(), d) {
            let mut c: i64 = rng.gen_range(-3..=3);
            if c == 0 && e == pivot {
                // the pure top power of a free coordinate is what separates fibers
                c = if rng.gen_bool(0.5) { rng.gen_range(1..=3) } else { -rng.gen_range(1..=3) };
            }
            profile = profile.add(&monomial(m, &others, &e).scale(&Gq::from_int(c)));
        }
    }
    PolynomialAutomorphism::shear(m, ElementaryShear::polynomial(target, profile, Gq::one())?)
}

fn monomial(m: usize, vars: &[usize], e: &[u32]) -> MultiPoly {
    let mut p = MultiPoly::constant(m, Gq::one());
    for (&i, &k) in vars.iter().zip(e) {
        if k > 0 {
            p = p.mul(&MultiPoly::var(m, i).pow(k));
        }
    }
    p
}

/// Exponent vectors of length `l` summing to `d`, in lexicographic order.
fn exponents(l: usize, d: u32) -> Vec<Vec<u32>> {
    if l == 1 {
        return vec![vec![d]];
    }
    let mut out = Vec::new();
    for first in (0..=d).rev() {
        for mut rest in exponents(l - 1, d - first) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}
