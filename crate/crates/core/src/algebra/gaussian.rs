//! Exact Gaussian rationals, the coefficient field ℚ(i).

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

/// An element `re + im·i` of ℚ(i).
///
/// Both parts are `BigRational`, which keeps them reduced with a positive
/// denominator, so derived equality is structural equality of canonical forms.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct GaussianRational {
    re: BigRational,
    im: BigRational,
}

impl GaussianRational {
    pub fn new(re: BigRational, im: BigRational) -> Self {
        Self { re, im }
    }

    pub fn real(re: BigRational) -> Self {
        Self { re, im: BigRational::zero() }
    }

    pub fn from_int(n: i64) -> Self {
        Self::real(BigRational::from_integer(BigInt::from(n)))
    }

    /// `num/den`; panics on a zero denominator.
    pub fn from_ratio(num: i64, den: i64) -> Self {
        Self::real(BigRational::new(BigInt::from(num), BigInt::from(den)))
    }

    pub fn from_parts(re: i64, im: i64) -> Self {
        Self::new(BigRational::from_integer(BigInt::from(re)), BigRational::from_integer(BigInt::from(im)))
    }

    pub fn i() -> Self {
        Self::from_parts(0, 1)
    }

    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::from_int(1)
    }

    pub fn re(&self) -> &BigRational {
        &self.re
    }

    pub fn im(&self) -> &BigRational {
        &self.im
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.re.is_one() && self.im.is_zero()
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    pub fn conj(&self) -> Self {
        Self::new(self.re.clone(), -self.im.clone())
    }

    /// `|z|²`, exact.
    pub fn norm_sqr(&self) -> BigRational {
        &self.re * &self.re + &self.im * &self.im
    }

    pub fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let n = self.norm_sqr();
        Some(Self::new(&self.re / &n, -(&self.im / &n)))
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

    /// Exact conversion from a finite `f64` pair.
    pub fn from_complex64(z: Complex64) -> Option<Self> {
        Some(Self::new(BigRational::from_float(z.re)?, BigRational::from_float(z.im)?))
    }

    pub fn to_complex64(&self) -> Complex64 {
        Complex64::new(self.re.to_f64().unwrap_or(f64::NAN), self.im.to_f64().unwrap_or(f64::NAN))
    }

    /// Sum of the bit lengths of numerators and denominators; a size measure.
    pub fn bit_size(&self) -> u64 {
        self.re.numer().bits() + self.re.denom().bits() + self.im.numer().bits() + self.im.denom().bits()
    }

    /// Formats the value in the polynomial grammar, without surrounding parentheses.
    pub fn to_grammar(&self) -> String {
        let re = (!self.re.is_zero()).then(|| fmt_rational(&self.re));
        let im = if self.im.is_zero() {
            None
        } else if self.im.is_one() {
            Some("i".to_string())
        } else if (-self.im.clone()).is_one() {
            Some("-i".to_string())
        } else {
            Some(format!("{}i", fmt_rational(&self.im)))
        };
        match (re, im) {
            (None, None) => "0".into(),
            (Some(r), None) => r,
            (None, Some(i)) => i,
            (Some(r), Some(i)) => {
                if i.starts_with('-') {
                    format!("{r}{i}")
                } else {
                    format!("{r}+{i}")
                }
            }
        }
    }

    /// True when the grammar form needs parentheses to act as a coefficient.
    pub(crate) fn needs_parens(&self) -> bool {
        !self.re.is_zero() && !self.im.is_zero()
    }
}

fn fmt_rational(q: &BigRational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// Nearest dyadic rational with denominator `2^bits`.
pub(crate) fn round_dyadic(q: &BigRational, bits: u32) -> BigRational {
    let scale = BigInt::one() << bits;
    let scaled = q * BigRational::from_integer(scale.clone());
    BigRational::new(scaled.round().to_integer(), scale)
}

/// Upper bound `r = c / 2^bits` on `sqrt(q)` for `q ≥ 0`, exact comparison `r² ≥ q`.
pub(crate) fn sqrt_upper(q: &BigRational, bits: u32) -> BigRational {
    if q.is_zero() {
        return BigRational::zero();
    }
    let scale = BigInt::one() << (2 * bits);
    let scaled = (q * BigRational::from_integer(scale)).ceil().to_integer();
    let mut c = scaled.sqrt();
    if &c * &c < scaled {
        c += 1;
    }
    BigRational::new(c, BigInt::one() << bits)
}

impl fmt::Display for GaussianRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_grammar())
    }
}

impl fmt::Debug for GaussianRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_grammar())
    }
}

impl From<i64> for GaussianRational {
    fn from(n: i64) -> Self {
        Self::from_int(n)
    }
}

impl From<BigRational> for GaussianRational {
    fn from(q: BigRational) -> Self {
        Self::real(q)
    }
}

impl<'a> Add<&'a GaussianRational> for &'a GaussianRational {
    type Output = GaussianRational;
    fn add(self, o: &GaussianRational) -> GaussianRational {
        GaussianRational::new(&self.re + &o.re, &self.im + &o.im)
    }
}

impl<'a> Sub<&'a GaussianRational> for &'a GaussianRational {
    type Output = GaussianRational;
    fn sub(self, o: &GaussianRational) -> GaussianRational {
        GaussianRational::new(&self.re - &o.re, &self.im - &o.im)
    }
}

impl<'a> Mul<&'a GaussianRational> for &'a GaussianRational {
    type Output = GaussianRational;
    fn mul(self, o: &GaussianRational) -> GaussianRational {
        if self.im.is_zero() && o.im.is_zero() {
            return GaussianRational::real(&self.re * &o.re);
        }
        GaussianRational::new(&self.re * &o.re - &self.im * &o.im, &self.re * &o.im + &self.im * &o.re)
    }
}

impl<'a> Div<&'a GaussianRational> for &'a GaussianRational {
    type Output = GaussianRational;
    /// Panics on division by zero, like integer division.
    fn div(self, o: &GaussianRational) -> GaussianRational {
        if o.im.is_zero() {
            return GaussianRational::new(&self.re / &o.re, &self.im / &o.re);
        }
        self * &o.inv().expect("division by zero in ℚ(i)")
    }
}

impl Neg for &GaussianRational {
    type Output = GaussianRational;
    fn neg(self) -> GaussianRational {
        GaussianRational::new(-self.re.clone(), -self.im.clone())
    }
}

impl Neg for GaussianRational {
    type Output = GaussianRational;
    fn neg(self) -> GaussianRational {
        GaussianRational::new(-self.re, -self.im)
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<GaussianRational> for GaussianRational {
            type Output = GaussianRational;
            fn $m(self, o: GaussianRational) -> GaussianRational {
                (&self).$m(&o)
            }
        }
        impl<'a> $tr<&'a GaussianRational> for GaussianRational {
            type Output = GaussianRational;
            fn $m(self, o: &GaussianRational) -> GaussianRational {
                (&self).$m(o)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
forward_owned!(Div, div);

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_forms_compare_structurally() {
        let a = GaussianRational::from_ratio(2, 4);
        let b = GaussianRational::from_ratio(-1, -2);
        assert_eq!(a, b);
        assert_eq!(a.re().denom(), &BigInt::from(2));
    }

    #[test]
    fn inverse_and_division() {
        let z = GaussianRational::from_parts(3, 4);
        let w = z.inv().unwrap();
        assert!((&z * &w).is_one());
        assert_eq!(w.to_grammar(), "3/25-4/25i");
        assert!(GaussianRational::zero().inv().is_none());
        assert_eq!(&GaussianRational::i() * &GaussianRational::i(), GaussianRational::from_int(-1));
    }

    #[test]
    fn grammar_printing() {
        assert_eq!(GaussianRational::from_parts(0, -1).to_grammar(), "-i");
        assert_eq!(GaussianRational::from_parts(-2, 1).to_grammar(), "-2+i");
        assert_eq!(GaussianRational::from_ratio(-1, 2).to_grammar(), "-1/2");
        assert_eq!(GaussianRational::zero().to_grammar(), "0");
    }

    #[test]
    fn dyadic_helpers() {
        let two = BigRational::from_integer(BigInt::from(2));
        let r = sqrt_upper(&two, 40);
        assert!(&r * &r >= two);
    }
}
