//! Certified isolation of the complex roots of a univariate polynomial.
//!
//! Approximations come from an Aberth iteration in `f64`, are polished by
//! Newton steps in exact dyadic arithmetic, and are certified with the
//! inclusion disc `|z - ζ| ≤ n·|p(z)/p'(z)|`: every such disc contains a root,
//! so `n` pairwise disjoint discs contain exactly one root each. All disc
//! arithmetic is exact; nothing here is used for pass/fail decisions elsewhere.

use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::Zero;

use super::gaussian::{round_dyadic, sqrt_upper, GaussianRational as Gq};
use super::unipoly::UniPoly;
use super::AlgebraError;

/// Axis-aligned box in ℂ, reported around a root.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ComplexBox {
    pub re_lo: BigRational,
    pub re_hi: BigRational,
    pub im_lo: BigRational,
    pub im_hi: BigRational,
    /// The box contains exactly one root of the polynomial it was built for.
    pub certified: bool,
    center: Gq,
    radius: BigRational,
}

impl ComplexBox {
    /// Bounding box of the closed disc `|z - center| ≤ radius`.
    pub fn around(center: Gq, radius: BigRational, certified: bool) -> Self {
        Self {
            re_lo: center.re() - &radius,
            re_hi: center.re() + &radius,
            im_lo: center.im() - &radius,
            im_hi: center.im() + &radius,
            certified,
            center,
            radius,
        }
    }

    pub fn point(z: Gq) -> Self {
        Self::around(z, BigRational::zero(), true)
    }

    pub fn center(&self) -> &Gq {
        &self.center
    }

    pub fn radius(&self) -> &BigRational {
        &self.radius
    }

    /// Degenerate box: the root is the exact rational center.
    pub fn is_exact(&self) -> bool {
        self.radius.is_zero() && self.certified
    }

    pub fn width(&self) -> BigRational {
        let w = &self.re_hi - &self.re_lo;
        let h = &self.im_hi - &self.im_lo;
        if w > h {
            w
        } else {
            h
        }
    }

    pub fn center_c64(&self) -> Complex64 {
        self.center.to_complex64()
    }

    /// Non-normative decimal rendering of the center.
    pub fn decimal(&self) -> String {
        format_c64(self.center_c64())
    }

    pub fn contains(&self, z: &Gq) -> bool {
        &self.re_lo <= z.re() && z.re() <= &self.re_hi && &self.im_lo <= z.im() && z.im() <= &self.im_hi
    }
}

pub fn format_c64(z: Complex64) -> String {
    let clean = |x: f64| if x.abs() < 1e-300 { 0.0 } else { x };
    let (re, im) = (clean(z.re), clean(z.im));
    if im == 0.0 {
        format!("{re:.15e}")
    } else {
        format!("{re:.15e}{}{:.15e}i", if im < 0.0 { "-" } else { "+" }, im.abs())
    }
}

#[derive(Clone, Debug)]
pub struct RootIsolation {
    pub boxes: Vec<ComplexBox>,
    /// Set when the refinement budget ran out before certification.
    pub warning: Option<String>,
}

impl RootIsolation {
    pub fn all_certified(&self) -> bool {
        self.boxes.iter().all(|b| b.certified)
    }
}

const BIT_SCHEDULE: [u32; 5] = [64, 128, 256, 512, 1024];

/// One box per distinct root of `p`, each of width at most `precision`.
pub fn isolate_roots(p: &UniPoly, precision: &BigRational) -> Result<RootIsolation, AlgebraError> {
    let q = p.squarefree_part()?;
    let n = q.deg0();
    if n == 0 {
        return Ok(RootIsolation { boxes: Vec::new(), warning: None });
    }
    if n == 1 {
        let root = -&(&q.coeff(0) / &q.coeff(1));
        return Ok(RootIsolation { boxes: vec![ComplexBox::point(root)], warning: None });
    }
    let dq = q.derivative();
    let coeffs: Vec<Complex64> = q.coeffs().iter().map(Gq::to_complex64).collect();
    let mut last = None;
    for rotation in [0.4, 1.3] {
        let approx = aberth(&coeffs, rotation);
        let mut z: Vec<Gq> = approx.iter().map(|c| Gq::from_complex64(*c).unwrap_or_else(|| Gq::from_int(0))).collect();
        for &bits in &BIT_SCHEDULE {
            for zk in z.iter_mut() {
                *zk = newton_polish(&q, &dq, zk, bits);
            }
            let radii: Vec<Option<BigRational>> = z.iter().map(|zk| inclusion_radius(&q, &dq, zk, n, bits)).collect();
            let ok_radius = radii.iter().all(|r| r.as_ref().is_some_and(|r| r + r <= *precision));
            if ok_radius {
                let exact: Vec<BigRational> = radii.iter().cloned().map(Option::unwrap).collect();
                if discs_disjoint(&z, &exact) {
                    let boxes = z
                        .into_iter()
                        .zip(exact)
                        .map(|(c, r)| match exact_root_near(&q, c.to_complex64()) {
                            Some(root) => ComplexBox::point(root),
                            None => ComplexBox::around(c, r, true),
                        })
                        .collect();
                    return Ok(RootIsolation { boxes, warning: None });
                }
            }
            last = Some((z.clone(), radii));
        }
    }
    let (z, radii) = last.expect("at least one attempt");
    let boxes = z
        .into_iter()
        .zip(radii)
        .map(|(c, r)| ComplexBox::around(c, r.unwrap_or_else(|| precision.clone()), false))
        .collect();
    Ok(RootIsolation { boxes, warning: Some("refinement budget exhausted before certification".into()) })
}

fn newton_polish(q: &UniPoly, dq: &UniPoly, z0: &Gq, bits: u32) -> Gq {
    let mut z = z0.clone();
    for _ in 0..8 {
        let d = dq.eval(&z);
        if d.is_zero() {
            break;
        }
        let step = &q.eval(&z) / &d;
        if step.is_zero() {
            break;
        }
        let next = Gq::new(round_dyadic((&z - &step).re(), bits), round_dyadic((&z - &step).im(), bits));
        let moved = &next - &z;
        z = next;
        // stop once the step is below the grid resolution
        let tiny = BigRational::new(1.into(), num_bigint::BigInt::from(1) << (bits - 4));
        if moved.norm_sqr() < &tiny * &tiny {
            break;
        }
    }
    z
}

/// Exact upper bound on `n·|q(z)/q'(z)|`; `None` when `q'(z) = 0`.
fn inclusion_radius(q: &UniPoly, dq: &UniPoly, z: &Gq, n: usize, bits: u32) -> Option<BigRational> {
    let v = q.eval(z);
    if v.is_zero() {
        return Some(BigRational::zero());
    }
    let d = dq.eval(z);
    if d.is_zero() {
        return None;
    }
    let n2 = BigRational::from_integer(((n * n) as i64).into());
    let rr = &(&n2 * &v.norm_sqr()) / &d.norm_sqr();
    Some(sqrt_upper(&rr, bits + 16))
}

fn discs_disjoint(z: &[Gq], r: &[BigRational]) -> bool {
    for j in 0..z.len() {
        for k in j + 1..z.len() {
            let sum = &r[j] + &r[k];
            if (&z[j] - &z[k]).norm_sqr() <= &sum * &sum {
                return false;
            }
        }
    }
    true
}

/// Simultaneous Aberth–Ehrlich iteration on a monic polynomial.
fn aberth(coeffs: &[Complex64], rotation: f64) -> Vec<Complex64> {
    let n = coeffs.len() - 1;
    let lead = coeffs[n];
    let c: Vec<Complex64> = coeffs.iter().map(|x| x / lead).collect();
    // Fujiwara bound
    let mut bound: f64 = 0.0;
    for k in 1..=n {
        let mag = c[n - k].norm();
        let v = if k == n { (mag / 2.0).powf(1.0 / k as f64) } else { mag.powf(1.0 / k as f64) };
        bound = bound.max(v);
    }
    let radius = if bound > 0.0 && bound.is_finite() { bound } else { 1.0 };
    let mut z: Vec<Complex64> = (0..n)
        .map(|k| {
            let theta = 2.0 * std::f64::consts::PI * k as f64 / n as f64 + rotation;
            Complex64::from_polar(radius, theta)
        })
        .collect();
    for _ in 0..2000 {
        let mut max_step: f64 = 0.0;
        for k in 0..n {
            let (pv, dv) = horner_with_derivative(&c, z[k]);
            if pv.norm() == 0.0 {
                continue;
            }
            let ratio = pv / dv;
            let mut sum = Complex64::new(0.0, 0.0);
            for j in 0..n {
                if j != k {
                    sum += (z[k] - z[j]).inv();
                }
            }
            let w = ratio / (Complex64::new(1.0, 0.0) - ratio * sum);
            if w.is_finite() {
                z[k] -= w;
                max_step = max_step.max(w.norm() / (1.0 + z[k].norm()));
            }
        }
        if max_step < 1e-16 {
            break;
        }
    }
    z
}

fn horner_with_derivative(c: &[Complex64], x: Complex64) -> (Complex64, Complex64) {
    let mut p = Complex64::new(0.0, 0.0);
    let mut d = Complex64::new(0.0, 0.0);
    for coeff in c.iter().rev() {
        d = d * x + p;
        p = p * x + coeff;
    }
    (p, d)
}

/// A root of `p` with small denominators close to `z`, found by rounding.
pub fn exact_root_near(p: &UniPoly, z: Complex64) -> Option<Gq> {
    if !z.re.is_finite() || !z.im.is_finite() {
        return None;
    }
    for den in 1..=12i64 {
        let d = den as f64;
        let (re, im) = ((z.re * d).round(), (z.im * d).round());
        if re.abs() > 1e15 || im.abs() > 1e15 {
            return None;
        }
        let cand =
            Gq::new(BigRational::new((re as i64).into(), den.into()), BigRational::new((im as i64).into(), den.into()));
        if (cand.to_complex64() - z).norm() < 1e-6 && p.eval(&cand).is_zero() {
            return Some(cand);
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    fn prec() -> BigRational {
        BigRational::new(BigInt::from(1), BigInt::from(10).pow(12))
    }

    #[test]
    fn plus_minus_i() {
        let iso = isolate_roots(&UniPoly::from_ints(&[1, 0, 1]), &prec()).unwrap();
        assert_eq!(iso.boxes.len(), 2);
        assert!(iso.all_certified());
        for b in &iso.boxes {
            let c = b.center_c64();
            assert!(c.re.abs() < 1e-12 && (c.im.abs() - 1.0).abs() < 1e-12);
            assert!(b.width() <= prec());
        }
    }

    #[test]
    fn sqrt_two_against_bisection() {
        // bisection oracle on the real axis
        let (mut lo, mut hi) = (1.0f64, 2.0f64);
        for _ in 0..60 {
            let mid = 0.5 * (lo + hi);
            if mid * mid - 2.0 > 0.0 {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        let iso = isolate_roots(&UniPoly::from_ints(&[-2, 0, 1]), &prec()).unwrap();
        assert!(iso.all_certified());
        let mut re: Vec<f64> = iso.boxes.iter().map(|b| b.center_c64().re).collect();
        re.sort_by(f64::total_cmp);
        assert!((re[0] + lo).abs() < 1e-12 && (re[1] - lo).abs() < 1e-12);
    }

    #[test]
    fn linear_root_is_exact() {
        let iso = isolate_roots(&UniPoly::from_ints(&[-3, 1]), &prec()).unwrap();
        assert_eq!(iso.boxes.len(), 1);
        assert!(iso.boxes[0].is_exact());
        assert_eq!(iso.boxes[0].center(), &Gq::from_int(3));
    }

    #[test]
    fn multiple_roots_are_reported_once() {
        // (x-1)^3 (x+2)
        let p = &UniPoly::from_ints(&[-1, 1]).pow(3) * &UniPoly::from_ints(&[2, 1]);
        let iso = isolate_roots(&p, &prec()).unwrap();
        assert_eq!(iso.boxes.len(), 2);
        assert!(iso.all_certified());
    }
}
