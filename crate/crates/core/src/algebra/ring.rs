//! Minimal ring abstractions shared by the determinant and substitution code.

use super::gaussian::GaussianRational;

pub trait Ring: Clone + PartialEq {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
}

/// An integral domain in which `div_exact(a, b)` is only called when `b | a`.
pub trait IntegralDomain: Ring {
    fn div_exact(&self, other: &Self) -> Self;
}

impl Ring for GaussianRational {
    fn zero() -> Self {
        GaussianRational::zero()
    }
    fn one() -> Self {
        GaussianRational::one()
    }
    fn is_zero(&self) -> bool {
        GaussianRational::is_zero(self)
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn neg(&self) -> Self {
        -self
    }
}

impl IntegralDomain for GaussianRational {
    fn div_exact(&self, other: &Self) -> Self {
        self / other
    }
}

/// Fraction-free (Bareiss) determinant with first-nonzero row pivoting.
pub fn bareiss_determinant<R: IntegralDomain>(mut m: Vec<Vec<R>>) -> R {
    let n = m.len();
    if n == 0 {
        return R::one();
    }
    let mut negate = false;
    let mut prev = R::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&i| !m[i][k].is_zero()) {
                Some(i) => {
                    m.swap(i, k);
                    negate = !negate;
                }
                None => return R::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = m[i][j].mul(&m[k][k]).sub(&m[i][k].mul(&m[k][j]));
                m[i][j] = v.div_exact(&prev);
            }
        }
        prev = m[k][k].clone();
    }
    let det = m[n - 1][n - 1].clone();
    if negate {
        det.neg()
    } else {
        det
    }
}

/// Sylvester matrix of two coefficient vectors given in ascending degree order.
///
/// Rows are laid out in descending powers, `deg q` shifted copies of `p`
/// followed by `deg p` shifted copies of `q`.
pub fn sylvester_matrix<R: Ring>(p: &[R], q: &[R]) -> Vec<Vec<R>> {
    let dp = p.len() - 1;
    let dq = q.len() - 1;
    let n = dp + dq;
    let mut rows = Vec::with_capacity(n);
    for shift in 0..dq {
        let mut row = vec![R::zero(); n];
        for (k, c) in p.iter().rev().enumerate() {
            row[shift + k] = c.clone();
        }
        rows.push(row);
    }
    for shift in 0..dp {
        let mut row = vec![R::zero(); n];
        for (k, c) in q.iter().rev().enumerate() {
            row[shift + k] = c.clone();
        }
        rows.push(row);
    }
    rows
}

/// Resultant of two nonzero polynomials given by ascending coefficient vectors
/// with nonzero leading entries.
pub fn sylvester_resultant<R: IntegralDomain>(p: &[R], q: &[R]) -> R {
    debug_assert!(!p.is_empty() && !q.is_empty());
    if p.len() == 1 && q.len() == 1 {
        return R::one();
    }
    if p.len() == 1 {
        return power(&p[0], q.len() - 1);
    }
    if q.len() == 1 {
        return power(&q[0], p.len() - 1);
    }
    bareiss_determinant(sylvester_matrix(p, q))
}

pub fn power<R: Ring>(base: &R, mut e: usize) -> R {
    let mut b = base.clone();
    let mut acc = R::one();
    while e > 0 {
        if e & 1 == 1 {
            acc = acc.mul(&b);
        }
        b = b.mul(&b);
        e >>= 1;
    }
    acc
}
