//! Generators and independent oracles shared by the integration tests.
#![allow(dead_code)]

use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::Signed;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use curvecert::algebra::{GaussianRational as Gq, Matrix, UniPoly};
use curvecert::automorphism::{Factor, PolynomialAutomorphism};
use curvecert::curve::ParametricCurve;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn g(n: i64) -> Gq {
    Gq::from_int(n)
}

pub fn small_gaussian(r: &mut ChaCha8Rng, b: i64) -> Gq {
    Gq::from_parts(r.gen_range(-b..=b), r.gen_range(-b..=b))
}

pub fn small_rational(r: &mut ChaCha8Rng) -> Gq {
    Gq::from_ratio(r.gen_range(-4..=4), r.gen_range(1..=3))
}

/// Univariate polynomial of exact degree `deg` with Gaussian integer coefficients.
pub fn random_poly(r: &mut ChaCha8Rng, deg: usize, b: i64) -> UniPoly {
    let mut c: Vec<Gq> = (0..=deg).map(|_| small_gaussian(r, b)).collect();
    while c[deg].is_zero() {
        c[deg] = small_gaussian(r, b);
    }
    UniPoly::new(c)
}

/// `t ↦ (t, p(t), q(t))` with `deg p = d - 1`, `deg q = d`: always an embedding.
pub fn random_graph_curve(r: &mut ChaCha8Rng, d: usize) -> ParametricCurve {
    let p = random_poly(r, d - 1, 2);
    let q = random_poly(r, d, 2);
    ParametricCurve::new(vec![vec![UniPoly::var(), p, q]]).unwrap()
}

pub fn height(c: &Gq) -> BigRational {
    let parts = [c.re(), c.im()];
    parts.iter().flat_map(|x| [x.numer().abs(), x.denom().abs()]).max().map(BigRational::from_integer).unwrap()
}

pub fn matrix_height(m: &Matrix) -> BigRational {
    (0..m.nrows()).flat_map(|i| m.row(i).iter().map(height).collect::<Vec<_>>()).max().unwrap()
}

/// A rational matrix of determinant 1: random transvections and one
/// diagonal scaling, redrawn until every entry has height at most 100.
pub fn random_sl(r: &mut ChaCha8Rng, m: usize) -> Matrix {
    let bound = BigRational::from_integer(100.into());
    loop {
        let mut a = Matrix::identity(m);
        let k = r.gen_range(1..=2 * m);
        for _ in 0..k {
            let i = r.gen_range(0..m);
            let mut j = r.gen_range(0..m);
            while j == i {
                j = r.gen_range(0..m);
            }
            let mut e = Matrix::identity(m);
            e[(i, j)] = small_rational(r);
            a = e.mul(&a);
        }
        if r.gen_bool(0.5) {
            let s = Gq::from_ratio(r.gen_range(1..=4), r.gen_range(1..=4));
            let mut d = Matrix::identity(m);
            d[(0, 0)] = s.clone();
            d[(1, 1)] = s.inv().unwrap();
            a = d.mul(&a);
        }
        assert!(a.determinant().is_one());
        if matrix_height(&a) <= bound {
            return a;
        }
    }
}

pub fn random_point(r: &mut ChaCha8Rng, m: usize) -> Vec<Gq> {
    (0..m).map(|_| small_rational(r)).collect()
}

fn truncate(p: &UniPoly) -> UniPoly {
    UniPoly::new(vec![p.coeff(0), p.coeff(1)])
}

/// Value and Jacobian of `phi` at `p`, computed by pushing the lines
/// `p + t·e_j` through every factor over ℚ(i)[t]/(t²). Does not use the
/// automorphism's own evaluation or chain rule.
pub fn jet_oracle(phi: &PolynomialAutomorphism, p: &[Gq]) -> (Vec<Gq>, Matrix) {
    let m = p.len();
    let mut cols = Vec::new();
    let mut value = Vec::new();
    for j in 0..m {
        let mut x: Vec<UniPoly> =
            (0..m).map(|k| UniPoly::new(vec![p[k].clone(), if k == j { Gq::one() } else { Gq::zero() }])).collect();
        for f in phi.factors() {
            x = match f {
                Factor::Affine { matrix, translation } => (0..m)
                    .map(|i| {
                        (0..m).fold(UniPoly::constant(translation[i].clone()), |acc, k| {
                            &acc + &x[k].scale(&matrix[(i, k)])
                        })
                    })
                    .collect(),
                Factor::Shear(s) => {
                    let add = s.profile_poly(m).eval_uni(&x).scale(s.lambda());
                    let mut y = x.clone();
                    y[s.target()] = truncate(&(&y[s.target()] + &add));
                    y
                }
            };
            x = x.iter().map(truncate).collect();
        }
        value = x.iter().map(|c| c.coeff(0)).collect();
        cols.push(x.iter().map(|c| c.coeff(1)).collect::<Vec<_>>());
    }
    let rows = (0..m).map(|i| (0..m).map(|j| cols[j][i].clone()).collect()).collect();
    (value, Matrix::from_rows(rows))
}

fn c64(p: &UniPoly) -> Vec<Complex64> {
    p.coeffs().iter().map(Gq::to_complex64).collect()
}

/// `(p(s) − p(t)) / (s − t)` and its two partial derivatives, evaluated in floating point.
fn divided(c: &[Complex64], s: Complex64, t: Complex64) -> (Complex64, Complex64, Complex64) {
    let (mut v, mut ds, mut dt) = (Complex64::default(), Complex64::default(), Complex64::default());
    for (k, ck) in c.iter().enumerate().skip(1) {
        for i in 0..k {
            let j = k - 1 - i;
            v += ck * s.powu(i as u32) * t.powu(j as u32);
            if i > 0 {
                ds += ck * (i as f64) * s.powu(i as u32 - 1) * t.powu(j as u32);
            }
            if j > 0 {
                dt += ck * (j as f64) * s.powu(i as u32) * t.powu(j as u32 - 1);
            }
        }
    }
    (v, ds, dt)
}

/// Ordered pairs `(s, t)`, `s ≠ t`, with `h(s) = h(t)` for a one-component
/// plane curve, found by Newton's method from a grid of starting points.
pub fn numeric_double_points(h: &ParametricCurve) -> Vec<(Complex64, Complex64)> {
    assert_eq!(h.ambient_dim(), 2);
    let x = c64(&h.component(0)[0]);
    let y = c64(&h.component(0)[1]);
    let grid: Vec<Complex64> = (-3..=3)
        .flat_map(|a| (-3..=3).map(move |b| Complex64::new(a as f64 * 0.9 + 0.05, b as f64 * 0.9 - 0.03)))
        .collect();
    let mut found: Vec<(Complex64, Complex64)> = Vec::new();
    for &s0 in &grid {
        for &t0 in &grid {
            let (mut s, mut t) = (s0, t0);
            for _ in 0..60 {
                let (f1, a, b) = divided(&x, s, t);
                let (f2, c, d) = divided(&y, s, t);
                let det = a * d - b * c;
                if det.norm() < 1e-14 {
                    break;
                }
                let ds = (d * f1 - b * f2) / det;
                let dt = (a * f2 - c * f1) / det;
                s -= ds;
                t -= dt;
                if ds.norm() + dt.norm() < 1e-15 {
                    break;
                }
            }
            let res = divided(&x, s, t).0.norm() + divided(&y, s, t).0.norm();
            if !res.is_finite() || res > 1e-9 || (s - t).norm() < 1e-6 {
                continue;
            }
            if !found.iter().any(|(a, b)| (a - s).norm() + (b - t).norm() < 1e-6) {
                found.push((s, t));
            }
        }
    }
    found
}

/// `random_poly` with the degree drawn from `lo..=hi`.
pub fn poly_in(r: &mut ChaCha8Rng, lo: usize, hi: usize, b: i64) -> UniPoly {
    let d = r.gen_range(lo..=hi);
    random_poly(r, d, b)
}
