//! Dense univariate polynomials over ℚ(i).

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::gaussian::GaussianRational as Gq;
use super::prs;
use super::ring::{sylvester_resultant, IntegralDomain, Ring};
use super::AlgebraError;

/// A univariate polynomial with coefficients stored in ascending degree.
///
/// No trailing zero coefficients are stored; the zero polynomial has an
/// empty coefficient vector and `degree() == None`. The variable name is not
/// part of the value and is supplied when printing.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct UniPoly {
    coeffs: Vec<Gq>,
}

impl UniPoly {
    pub fn new(mut coeffs: Vec<Gq>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| Gq::from_int(c)).collect())
    }

    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(Gq::one())
    }

    pub fn constant(c: Gq) -> Self {
        Self::new(vec![c])
    }

    /// The monomial `c·x^k`.
    pub fn monomial(c: Gq, k: usize) -> Self {
        let mut v = vec![Gq::zero(); k + 1];
        v[k] = c;
        Self::new(v)
    }

    /// The identity polynomial `x`.
    pub fn var() -> Self {
        Self::monomial(Gq::one(), 1)
    }

    /// `x - c`.
    pub fn linear_root(c: &Gq) -> Self {
        Self::new(vec![-c, Gq::one()])
    }

    pub fn coeffs(&self) -> &[Gq] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<Gq> {
        self.coeffs
    }

    pub fn coeff(&self, k: usize) -> Gq {
        self.coeffs.get(k).cloned().unwrap_or_default()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Degree with the zero polynomial mapped to 0.
    pub fn deg0(&self) -> usize {
        self.degree().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    pub fn lc(&self) -> Gq {
        self.coeffs.last().cloned().unwrap_or_default()
    }

    pub fn eval(&self, x: &Gq) -> Gq {
        let mut acc = Gq::zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * x) + c;
        }
        acc
    }

    pub fn eval_c64(&self, x: num_complex::Complex64) -> num_complex::Complex64 {
        let mut acc = num_complex::Complex64::new(0.0, 0.0);
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c.to_complex64();
        }
        acc
    }

    pub fn derivative(&self) -> Self {
        Self::new(self.coeffs.iter().enumerate().skip(1).map(|(k, c)| c * &Gq::from_int(k as i64)).collect())
    }

    pub fn scale(&self, c: &Gq) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self { coeffs: self.coeffs.iter().map(|x| x * c).collect() }
    }

    /// Divides by the leading coefficient; zero stays zero.
    pub fn monic(&self) -> Self {
        match self.lc().inv() {
            Some(inv) if !self.lc().is_one() => self.scale(&inv),
            _ => self.clone(),
        }
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    /// `self(inner(x))`.
    pub fn compose(&self, inner: &UniPoly) -> UniPoly {
        let mut acc = UniPoly::zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * inner) + &UniPoly::constant(c.clone());
        }
        acc
    }

    /// Euclidean division over the field ℚ(i).
    pub fn div_rem(&self, d: &UniPoly) -> Result<(UniPoly, UniPoly), AlgebraError> {
        if d.is_zero() {
            return Err(AlgebraError::DivisionByZero);
        }
        let mut r = self.coeffs.clone();
        let dd = d.coeffs.len() - 1;
        if r.len() <= dd {
            return Ok((UniPoly::zero(), self.clone()));
        }
        let inv = d.lc().inv().expect("nonzero leading coefficient");
        let mut q = vec![Gq::zero(); r.len() - dd];
        while r.len() > dd {
            let k = r.len() - 1 - dd;
            let c = &r[r.len() - 1] * &inv;
            if !c.is_zero() {
                for (j, dc) in d.coeffs.iter().enumerate() {
                    r[k + j] = &r[k + j] - &(&c * dc);
                }
            }
            q[k] = c;
            r.pop();
        }
        Ok((UniPoly::new(q), UniPoly::new(r)))
    }

    pub fn rem(&self, d: &UniPoly) -> UniPoly {
        self.div_rem(d).expect("remainder by zero polynomial").1
    }

    /// Quotient of an exact division; debug builds assert a zero remainder.
    pub fn exact_div(&self, d: &UniPoly) -> UniPoly {
        let (q, r) = self.div_rem(d).expect("exact division by zero polynomial");
        debug_assert!(r.is_zero(), "inexact polynomial division");
        q
    }

    pub fn divides(&self, p: &UniPoly) -> bool {
        if self.is_zero() {
            return p.is_zero();
        }
        p.rem(self).is_zero()
    }

    /// Monic gcd via the subresultant PRS; `gcd(0, 0) = 0`.
    pub fn gcd(&self, other: &UniPoly) -> UniPoly {
        UniPoly::new(prs::subresultant_gcd(&self.coeffs, &other.coeffs)).monic()
    }

    /// Returns `(g, u, v)` with `u·self + v·other = g`, `g` monic.
    pub fn extended_gcd(&self, other: &UniPoly) -> (UniPoly, UniPoly, UniPoly) {
        let (mut r0, mut r1) = (self.clone(), other.clone());
        let (mut s0, mut s1) = (UniPoly::one(), UniPoly::zero());
        let (mut t0, mut t1) = (UniPoly::zero(), UniPoly::one());
        while !r1.is_zero() {
            let (q, r) = r0.div_rem(&r1).expect("nonzero divisor");
            r0 = std::mem::replace(&mut r1, r);
            let s = &s0 - &(&q * &s1);
            s0 = std::mem::replace(&mut s1, s);
            let t = &t0 - &(&q * &t1);
            t0 = std::mem::replace(&mut t1, t);
        }
        match r0.lc().inv() {
            Some(inv) => (r0.scale(&inv), s0.scale(&inv), t0.scale(&inv)),
            None => (r0, s0, t0),
        }
    }

    /// Inverse of `self` modulo `m`, if `gcd(self, m) = 1`.
    pub fn inverse_mod(&self, m: &UniPoly) -> Option<UniPoly> {
        let (g, u, _) = self.rem(m).extended_gcd(m);
        g.is_one().then(|| u.rem(m))
    }

    /// `self / gcd(self, self')`, monic.
    pub fn squarefree_part(&self) -> Result<UniPoly, AlgebraError> {
        if self.is_zero() {
            return Err(AlgebraError::Degenerate("square-free part of the zero polynomial".into()));
        }
        let g = self.gcd(&self.derivative());
        Ok(self.exact_div(&g).monic())
    }

    pub fn resultant(&self, other: &UniPoly) -> Result<Gq, AlgebraError> {
        match (self.is_zero(), other.is_zero()) {
            (true, true) => Err(AlgebraError::Degenerate("resultant of two zero polynomials".into())),
            (true, false) | (false, true) => Ok(Gq::zero()),
            _ => Ok(sylvester_resultant(&self.coeffs, &other.coeffs)),
        }
    }

    /// Prints the polynomial in the grammar, terms in decreasing degree.
    pub fn display(&self, var: &str) -> String {
        let terms: Vec<(Gq, String)> = self
            .coeffs
            .iter()
            .enumerate()
            .rev()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| {
                let mono = match k {
                    0 => String::new(),
                    1 => var.to_string(),
                    _ => format!("{var}^{k}"),
                };
                (c.clone(), mono)
            })
            .collect();
        format_terms(&terms)
    }
}

/// Joins `(coefficient, monomial)` pairs into grammar text; an empty monomial
/// is the constant term.
pub(crate) fn format_terms(terms: &[(Gq, String)]) -> String {
    if terms.is_empty() {
        return "0".into();
    }
    let mut out = String::new();
    for (idx, (c, mono)) in terms.iter().enumerate() {
        let (negative, mag) = if c.needs_parens() {
            (false, c.clone())
        } else {
            let s = c.to_grammar();
            if s.starts_with('-') {
                (true, -c)
            } else {
                (false, c.clone())
            }
        };
        if idx == 0 {
            if negative {
                out.push('-');
            }
        } else {
            out.push_str(if negative { " - " } else { " + " });
        }
        let coeff_text = if mag.needs_parens() { format!("({})", mag.to_grammar()) } else { mag.to_grammar() };
        if mono.is_empty() {
            out.push_str(&coeff_text);
        } else if mag.is_one() {
            out.push_str(mono);
        } else {
            out.push_str(&coeff_text);
            out.push('*');
            out.push_str(mono);
        }
    }
    out
}

impl fmt::Debug for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display("x"))
    }
}

impl<'a> Add<&'a UniPoly> for &'a UniPoly {
    type Output = UniPoly;
    fn add(self, o: &UniPoly) -> UniPoly {
        let n = self.coeffs.len().max(o.coeffs.len());
        UniPoly::new((0..n).map(|k| &self.coeff(k) + &o.coeff(k)).collect())
    }
}

impl<'a> Sub<&'a UniPoly> for &'a UniPoly {
    type Output = UniPoly;
    fn sub(self, o: &UniPoly) -> UniPoly {
        let n = self.coeffs.len().max(o.coeffs.len());
        UniPoly::new((0..n).map(|k| &self.coeff(k) - &o.coeff(k)).collect())
    }
}

impl<'a> Mul<&'a UniPoly> for &'a UniPoly {
    type Output = UniPoly;
    fn mul(self, o: &UniPoly) -> UniPoly {
        if self.is_zero() || o.is_zero() {
            return UniPoly::zero();
        }
        let mut v = vec![Gq::zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    v[i + j] = &v[i + j] + &(a * b);
                }
            }
        }
        UniPoly::new(v)
    }
}

impl Neg for &UniPoly {
    type Output = UniPoly;
    fn neg(self) -> UniPoly {
        UniPoly { coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
}

impl Ring for UniPoly {
    fn zero() -> Self {
        UniPoly::zero()
    }
    fn one() -> Self {
        UniPoly::one()
    }
    fn is_zero(&self) -> bool {
        UniPoly::is_zero(self)
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn neg(&self) -> Self {
        -self
    }
}

impl IntegralDomain for UniPoly {
    fn div_exact(&self, o: &Self) -> Self {
        self.exact_div(o)
    }
}
