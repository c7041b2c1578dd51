//! Bivariate polynomials in `(s, t)`, stored as polynomials in `t` with
//! coefficients in ℚ(i)[s].

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::gaussian::GaussianRational as Gq;
use super::prs;
use super::unipoly::{format_terms, UniPoly};
use super::AlgebraError;

/// `Σ coeffs[k](s) · t^k`, with no trailing zero coefficients.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct BiPoly {
    coeffs: Vec<UniPoly>,
}

impl BiPoly {
    pub fn new(mut coeffs: Vec<UniPoly>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::new(vec![UniPoly::one()])
    }

    /// Builds from `(deg_s, deg_t) -> coefficient` terms.
    pub fn from_terms<I: IntoIterator<Item = ((usize, usize), Gq)>>(terms: I) -> Self {
        let mut rows: Vec<Vec<Gq>> = Vec::new();
        for ((ds, dt), c) in terms {
            if rows.len() <= dt {
                rows.resize(dt + 1, Vec::new());
            }
            if rows[dt].len() <= ds {
                rows[dt].resize(ds + 1, Gq::zero());
            }
            rows[dt][ds] = &rows[dt][ds] + &c;
        }
        Self::new(rows.into_iter().map(UniPoly::new).collect())
    }

    pub fn terms(&self) -> impl Iterator<Item = ((usize, usize), &Gq)> {
        self.coeffs.iter().enumerate().flat_map(|(dt, cs)| {
            cs.coeffs().iter().enumerate().filter(|(_, c)| !c.is_zero()).map(move |(ds, c)| ((ds, dt), c))
        })
    }

    /// `p(s)`, constant in `t`.
    pub fn in_s(p: &UniPoly) -> Self {
        Self::new(vec![p.clone()])
    }

    /// `p(t)`, constant in `s`.
    pub fn in_t(p: &UniPoly) -> Self {
        Self::new(p.coeffs().iter().map(|c| UniPoly::constant(c.clone())).collect())
    }

    /// `P(s) - Q(t)`.
    pub fn difference(p: &UniPoly, q: &UniPoly) -> Self {
        &Self::in_s(p) - &Self::in_t(q)
    }

    pub fn coeffs_t(&self) -> &[UniPoly] {
        &self.coeffs
    }

    pub fn coeff_t(&self, k: usize) -> UniPoly {
        self.coeffs.get(k).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn deg_t(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn deg_s(&self) -> Option<usize> {
        self.coeffs.iter().filter_map(UniPoly::degree).max()
    }

    pub fn lc_t(&self) -> UniPoly {
        self.coeffs.last().cloned().unwrap_or_default()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1 && self.coeffs.first().is_none_or(UniPoly::is_constant)
    }

    /// Specializes `s = s0`, giving a polynomial in `t`.
    pub fn eval_s(&self, s0: &Gq) -> UniPoly {
        UniPoly::new(self.coeffs.iter().map(|c| c.eval(s0)).collect())
    }

    /// Specializes `t = t0`, giving a polynomial in `s`.
    pub fn eval_t(&self, t0: &Gq) -> UniPoly {
        let mut acc = UniPoly::zero();
        for c in self.coeffs.iter().rev() {
            acc = &acc.scale(t0) + c;
        }
        acc
    }

    /// Substitutes `t = q(s)`.
    pub fn subs_t(&self, q: &UniPoly) -> UniPoly {
        let mut acc = UniPoly::zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * q) + c;
        }
        acc
    }

    /// Restriction to the diagonal `t = s`.
    pub fn diagonal(&self) -> UniPoly {
        self.subs_t(&UniPoly::var())
    }

    pub fn eval_c64(&self, s: num_complex::Complex64, t: num_complex::Complex64) -> num_complex::Complex64 {
        let mut acc = num_complex::Complex64::new(0.0, 0.0);
        for c in self.coeffs.iter().rev() {
            acc = acc * t + c.eval_c64(s);
        }
        acc
    }

    /// Exchanges the roles of `s` and `t`.
    pub fn swap(&self) -> Self {
        Self::from_terms(self.terms().map(|((ds, dt), c)| ((dt, ds), c.clone())))
    }

    pub fn derivative_t(&self) -> Self {
        Self::new(self.coeffs.iter().enumerate().skip(1).map(|(k, c)| c.scale(&Gq::from_int(k as i64))).collect())
    }

    pub fn derivative_s(&self) -> Self {
        Self::new(self.coeffs.iter().map(UniPoly::derivative).collect())
    }

    pub fn map_coeffs(&self, f: impl Fn(&UniPoly) -> UniPoly) -> Self {
        Self::new(self.coeffs.iter().map(f).collect())
    }

    pub fn scale_s(&self, c: &UniPoly) -> Self {
        self.map_coeffs(|x| x * c)
    }

    /// Gcd of the coefficients in ℚ(i)[s], monic.
    pub fn content(&self) -> UniPoly {
        self.coeffs.iter().fold(UniPoly::zero(), |g, c| if g.is_one() { g } else { g.gcd(c) })
    }

    pub fn primitive_part(&self) -> Self {
        let c = self.content();
        if c.is_zero() || c.is_one() {
            return self.clone();
        }
        self.map_coeffs(|x| x.exact_div(&c))
    }

    /// Gcd in ℚ(i)[s, t]: content gcd times the primitive part of the
    /// subresultant PRS result, normalized so the leading coefficient of the
    /// leading `t`-coefficient is 1.
    pub fn gcd(&self, other: &BiPoly) -> BiPoly {
        if self.is_zero() {
            return other.normalized();
        }
        if other.is_zero() {
            return self.normalized();
        }
        let cont = self.content().gcd(&other.content());
        let a = self.primitive_part();
        let b = other.primitive_part();
        let g = BiPoly::new(prs::subresultant_gcd(&a.coeffs, &b.coeffs)).primitive_part();
        g.scale_s(&cont).normalized()
    }

    /// Scales by a unit so the leading coefficient of the leading
    /// `t`-coefficient is 1.
    pub fn normalized(&self) -> BiPoly {
        match self.lc_t().lc().inv() {
            Some(inv) => self.map_coeffs(|x| x.scale(&inv)),
            None => self.clone(),
        }
    }

    /// Resultant with respect to `t`, an element of ℚ(i)[s].
    pub fn resultant_t(&self, other: &BiPoly) -> Result<UniPoly, AlgebraError> {
        match (self.is_zero(), other.is_zero()) {
            (true, true) => Err(AlgebraError::Degenerate("resultant of two zero polynomials".into())),
            (true, false) | (false, true) => Ok(UniPoly::zero()),
            _ => Ok(super::ring::sylvester_resultant(&self.coeffs, &other.coeffs)),
        }
    }

    /// Exact quotient by `t - r(s)`; debug builds check the remainder.
    pub fn div_linear_t(&self, r: &UniPoly) -> BiPoly {
        // synthetic division in t
        let n = self.coeffs.len();
        if n <= 1 {
            return BiPoly::zero();
        }
        let mut q = vec![UniPoly::zero(); n - 1];
        let mut carry = UniPoly::zero();
        for k in (1..n).rev() {
            carry = &self.coeffs[k] + &(&carry * r);
            q[k - 1] = carry.clone();
        }
        debug_assert!((&self.coeffs[0] + &(&carry * r)).is_zero());
        BiPoly::new(q)
    }

    pub fn display(&self, s: &str, t: &str) -> String {
        let mut terms: Vec<((usize, usize), Gq)> = self.terms().map(|(k, c)| (k, c.clone())).collect();
        // decreasing total degree, then decreasing s-degree
        terms.sort_by_key(|((i, j), _)| std::cmp::Reverse((i + j, *i)));
        let rendered: Vec<(Gq, String)> = terms
            .into_iter()
            .map(|((ds, dt), c)| {
                let mut parts = Vec::new();
                match ds {
                    0 => {}
                    1 => parts.push(s.to_string()),
                    _ => parts.push(format!("{s}^{ds}")),
                }
                match dt {
                    0 => {}
                    1 => parts.push(t.to_string()),
                    _ => parts.push(format!("{t}^{dt}")),
                }
                (c, parts.join("*"))
            })
            .collect();
        format_terms(&rendered)
    }
}

/// `q(s, t)` with `q·(s - t) = P(s) - P(t)`.
pub fn divided_difference(p: &UniPoly) -> BiPoly {
    // (s^k - t^k)/(s - t) = Σ_{i+j=k-1} s^i t^j
    let mut terms = Vec::new();
    for (k, c) in p.coeffs().iter().enumerate().skip(1) {
        if c.is_zero() {
            continue;
        }
        for i in 0..k {
            terms.push(((i, k - 1 - i), c.clone()));
        }
    }
    BiPoly::from_terms(terms)
}

impl fmt::Debug for BiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display("s", "t"))
    }
}

impl<'a> Add<&'a BiPoly> for &'a BiPoly {
    type Output = BiPoly;
    fn add(self, o: &BiPoly) -> BiPoly {
        let n = self.coeffs.len().max(o.coeffs.len());
        BiPoly::new((0..n).map(|k| &self.coeff_t(k) + &o.coeff_t(k)).collect())
    }
}

impl<'a> Sub<&'a BiPoly> for &'a BiPoly {
    type Output = BiPoly;
    fn sub(self, o: &BiPoly) -> BiPoly {
        let n = self.coeffs.len().max(o.coeffs.len());
        BiPoly::new((0..n).map(|k| &self.coeff_t(k) - &o.coeff_t(k)).collect())
    }
}

impl<'a> Mul<&'a BiPoly> for &'a BiPoly {
    type Output = BiPoly;
    fn mul(self, o: &BiPoly) -> BiPoly {
        if self.is_zero() || o.is_zero() {
            return BiPoly::zero();
        }
        let mut v = vec![UniPoly::zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in o.coeffs.iter().enumerate() {
                v[i + j] = &v[i + j] + &(a * b);
            }
        }
        BiPoly::new(v)
    }
}

impl Neg for &BiPoly {
    type Output = BiPoly;
    fn neg(self) -> BiPoly {
        self.map_coeffs(|c| -c)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> UniPoly {
        UniPoly::from_ints(c)
    }

    #[test]
    fn divided_difference_examples() {
        assert_eq!(divided_difference(&p(&[0, 0, 0, 1])).display("s", "t"), "s^2 + s*t + t^2");
        assert_eq!(divided_difference(&p(&[0, 1])), BiPoly::one());
        assert_eq!(divided_difference(&p(&[-1, 0, 1])).display("s", "t"), "s + t");
        assert!(divided_difference(&p(&[5])).is_zero());
    }

    #[test]
    fn divided_difference_identity() {
        let poly = p(&[3, -1, 4, 1, -5, 9]);
        let q = divided_difference(&poly);
        let s_minus_t = BiPoly::difference(&UniPoly::var(), &UniPoly::var());
        assert_eq!(&q * &s_minus_t, BiPoly::difference(&poly, &poly));
        assert_eq!(q.swap(), q);
    }

    #[test]
    fn bivariate_gcd_finds_common_factor() {
        // (s + t)(s - 1) and (s + t)(t + 2)
        let st = BiPoly::from_terms([((1, 0), Gq::one()), ((0, 1), Gq::one())]);
        let a = &st * &BiPoly::in_s(&p(&[-1, 1]));
        let b = &st * &BiPoly::in_t(&p(&[2, 1]));
        assert_eq!(a.gcd(&b), st);
        assert!(BiPoly::in_s(&p(&[1, 1])).gcd(&BiPoly::in_t(&p(&[1, 1]))).is_constant());
    }

    #[test]
    fn resultant_in_t_eliminates() {
        // s + t = 0, s^2 + st + t^2 - 1 = 0  ->  s^2 - 1
        let f1 = BiPoly::from_terms([((1, 0), Gq::one()), ((0, 1), Gq::one())]);
        let f2 = &divided_difference(&p(&[0, 0, 0, 1])) - &BiPoly::one();
        let r = f1.resultant_t(&f2).unwrap();
        assert_eq!(r.monic(), p(&[-1, 0, 1]));
    }

    #[test]
    fn linear_division() {
        let f = BiPoly::difference(&p(&[0, 0, 1]), &p(&[0, 0, 1])); // s^2 - t^2
        let q = f.div_linear_t(&UniPoly::var()); // divide by t - s
        assert_eq!(q.display("s", "t"), "-s - t");
    }
}
