//! Sparse multivariate polynomials, used for automorphism coordinates and as
//! the output of the text parser.

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;

use super::gaussian::GaussianRational as Gq;
use super::ring::{power, Ring};
use super::unipoly::{format_terms, UniPoly};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct MultiPoly {
    nvars: usize,
    terms: BTreeMap<Vec<u32>, Gq>,
}

impl MultiPoly {
    pub fn zero(nvars: usize) -> Self {
        Self { nvars, terms: BTreeMap::new() }
    }

    pub fn constant(nvars: usize, c: Gq) -> Self {
        let mut p = Self::zero(nvars);
        p.add_term(vec![0; nvars], c);
        p
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        let mut p = Self::zero(nvars);
        p.add_term(e, Gq::one());
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &Gq)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn add_term(&mut self, e: Vec<u32>, c: Gq) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(e) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                let sum = o.get() + &c;
                if sum.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(|e| e.iter().sum()).max().unwrap_or(0)
    }

    /// True when no term involves a variable with index in `vars`.
    pub fn independent_of(&self, vars: &[usize]) -> bool {
        self.terms.keys().all(|e| vars.iter().all(|&v| e[v] == 0))
    }

    pub fn add(&self, o: &MultiPoly) -> MultiPoly {
        let mut r = self.clone();
        for (e, c) in &o.terms {
            r.add_term(e.clone(), c.clone());
        }
        r
    }

    pub fn neg(&self) -> MultiPoly {
        Self { nvars: self.nvars, terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect() }
    }

    pub fn sub(&self, o: &MultiPoly) -> MultiPoly {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &MultiPoly) -> MultiPoly {
        let mut r = MultiPoly::zero(self.nvars);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &o.terms {
                let e: Vec<u32> = ea.iter().zip(eb).map(|(a, b)| a + b).collect();
                r.add_term(e, ca * cb);
            }
        }
        r
    }

    pub fn scale(&self, c: &Gq) -> MultiPoly {
        let mut r = MultiPoly::zero(self.nvars);
        for (e, x) in &self.terms {
            r.add_term(e.clone(), x * c);
        }
        r
    }

    pub fn pow(&self, e: u32) -> MultiPoly {
        power(self, e as usize)
    }

    pub fn partial(&self, i: usize) -> MultiPoly {
        let mut r = MultiPoly::zero(self.nvars);
        for (e, c) in &self.terms {
            if e[i] == 0 {
                continue;
            }
            let mut e2 = e.clone();
            e2[i] -= 1;
            r.add_term(e2, c * &Gq::from_int(e[i] as i64));
        }
        r
    }

    /// Evaluates with values in any ring that ℚ(i) embeds into.
    pub fn eval_in<R: Ring>(&self, vals: &[R], embed: impl Fn(&Gq) -> R) -> R {
        assert_eq!(vals.len(), self.nvars, "arity mismatch in evaluation");
        let mut acc = R::zero();
        let mut powers: Vec<Vec<R>> = vals.iter().map(|v| vec![R::one(), v.clone()]).collect();
        for (e, c) in &self.terms {
            let mut term = embed(c);
            for (i, &k) in e.iter().enumerate() {
                if k == 0 {
                    continue;
                }
                while powers[i].len() <= k as usize {
                    let next = powers[i].last().unwrap().mul(&vals[i]);
                    powers[i].push(next);
                }
                term = term.mul(&powers[i][k as usize]);
            }
            acc = acc.add(&term);
        }
        acc
    }

    pub fn eval(&self, point: &[Gq]) -> Gq {
        self.eval_in(point, |c| c.clone())
    }

    /// Substitutes univariate polynomials for the variables.
    pub fn eval_uni(&self, args: &[UniPoly]) -> UniPoly {
        self.eval_in(args, |c| UniPoly::constant(c.clone()))
    }

    /// Substitutes multivariate polynomials (all with the same arity).
    pub fn compose(&self, args: &[MultiPoly]) -> MultiPoly {
        let n = args.first().map_or(self.nvars, |a| a.nvars);
        self.eval_in(args, |c| MultiPoly::constant(n, c.clone()))
    }

    /// Converts a polynomial in one variable.
    pub fn to_uni(&self) -> Option<UniPoly> {
        if self.nvars != 1 {
            return (self.nvars == 0 || self.total_degree() == 0)
                .then(|| UniPoly::constant(self.terms.values().next().cloned().unwrap_or_default()));
        }
        let deg = self.total_degree() as usize;
        let mut v = vec![Gq::zero(); deg + 1];
        for (e, c) in &self.terms {
            v[e[0] as usize] = c.clone();
        }
        Some(UniPoly::new(v))
    }

    pub fn from_uni(p: &UniPoly) -> MultiPoly {
        let mut r = MultiPoly::zero(1);
        for (k, c) in p.coeffs().iter().enumerate() {
            r.add_term(vec![k as u32], c.clone());
        }
        r
    }

    pub fn constant_value(&self) -> Option<Gq> {
        match self.terms.len() {
            0 => Some(Gq::zero()),
            1 => self.terms.get(&vec![0; self.nvars]).cloned(),
            _ => None,
        }
    }

    pub fn display(&self, vars: &[String]) -> String {
        let mut terms: Vec<(&Vec<u32>, &Gq)> = self.terms.iter().collect();
        // graded, then lexicographically decreasing
        terms.sort_by(|a, b| {
            let da: u32 = a.0.iter().sum();
            let db: u32 = b.0.iter().sum();
            db.cmp(&da).then_with(|| b.0.cmp(a.0))
        });
        let rendered: Vec<(Gq, String)> = terms
            .into_iter()
            .map(|(e, c)| {
                let mono: Vec<String> = e
                    .iter()
                    .enumerate()
                    .filter(|(_, &k)| k > 0)
                    .map(|(i, &k)| if k == 1 { vars[i].clone() } else { format!("{}^{k}", vars[i]) })
                    .collect();
                (c.clone(), mono.join("*"))
            })
            .collect();
        format_terms(&rendered)
    }
}

impl fmt::Debug for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<String> = (1..=self.nvars).map(|i| format!("x{i}")).collect();
        f.write_str(&self.display(&names))
    }
}

impl Ring for MultiPoly {
    /// Arity-0 zero; `add`/`mul` adopt the arity of the other operand.
    fn zero() -> Self {
        MultiPoly::zero(0)
    }
    fn one() -> Self {
        MultiPoly::constant(0, Gq::one())
    }
    fn is_zero(&self) -> bool {
        MultiPoly::is_zero(self)
    }
    fn add(&self, o: &Self) -> Self {
        let (a, b) = align(self, o);
        MultiPoly::add(&a, &b)
    }
    fn sub(&self, o: &Self) -> Self {
        let (a, b) = align(self, o);
        MultiPoly::sub(&a, &b)
    }
    fn mul(&self, o: &Self) -> Self {
        let (a, b) = align(self, o);
        MultiPoly::mul(&a, &b)
    }
    fn neg(&self) -> Self {
        MultiPoly::neg(self)
    }
}

/// Lifts arity-0 constants to the arity of the other operand.
fn align(a: &MultiPoly, b: &MultiPoly) -> (MultiPoly, MultiPoly) {
    let lift = |p: &MultiPoly, n: usize| {
        if p.nvars == n {
            return p.clone();
        }
        assert_eq!(p.nvars, 0, "arity mismatch");
        MultiPoly::constant(n, p.constant_value().unwrap_or_default())
    };
    let n = a.nvars.max(b.nvars);
    (lift(a, n), lift(b, n))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn shear_profile_derivative() {
        // x2^3 - x2^2 and its partial in x2
        let y = MultiPoly::var(2, 1);
        let prof = y.pow(3).sub(&y.pow(2));
        let d = prof.partial(1);
        assert_eq!(d.eval(&[Gq::zero(), Gq::one()]), Gq::one());
        assert_eq!(d.eval(&[Gq::zero(), Gq::zero()]), Gq::zero());
        assert!(prof.partial(0).is_zero());
    }

    #[test]
    fn substitution_into_curves() {
        let x = MultiPoly::var(3, 0);
        let y = MultiPoly::var(3, 1);
        let p = x.add(&y.pow(3).sub(&y.pow(2)));
        let t = UniPoly::var();
        let r = p.eval_uni(&[t.clone(), t.clone(), t.clone()]);
        assert_eq!(r, UniPoly::from_ints(&[0, 1, -1, 1]));
    }

    #[test]
    fn composition() {
        let x = MultiPoly::var(2, 0);
        let y = MultiPoly::var(2, 1);
        let p = x.mul(&y);
        let c = p.compose(&[x.add(&y), x.sub(&y)]);
        assert_eq!(c, x.pow(2).sub(&y.pow(2)));
    }
}
