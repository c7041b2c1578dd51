//! Pseudo-remainder sequences on dense coefficient vectors (ascending order).

use super::ring::{power, IntegralDomain};

pub(crate) fn trim<R: IntegralDomain>(v: &mut Vec<R>) {
    while v.last().is_some_and(|c| c.is_zero()) {
        v.pop();
    }
}

/// `lc(b)^(deg a - deg b + 1) · a mod b`, computed without division.
pub(crate) fn pseudo_rem<R: IntegralDomain>(a: &[R], b: &[R]) -> Vec<R> {
    assert!(!b.is_empty(), "pseudo-remainder by zero");
    let mut r: Vec<R> = a.to_vec();
    trim(&mut r);
    if r.len() < b.len() {
        return r;
    }
    let db = b.len() - 1;
    let lb = b[db].clone();
    let mut steps = r.len() - b.len() + 1;
    while !r.is_empty() && r.len() > db {
        let dr = r.len() - 1;
        let lr = r[dr].clone();
        let shift = dr - db;
        for c in r.iter_mut() {
            *c = c.mul(&lb);
        }
        for (k, bc) in b.iter().enumerate() {
            r[shift + k] = r[shift + k].sub(&lr.mul(bc));
        }
        trim(&mut r);
        steps -= 1;
    }
    if steps > 0 {
        let f = power(&lb, steps);
        for c in r.iter_mut() {
            *c = c.mul(&f);
        }
    }
    r
}

/// Last nonzero element of the subresultant PRS of `a` and `b`; an associate
/// of their gcd over the fraction field. Either argument may be zero.
pub(crate) fn subresultant_gcd<R: IntegralDomain>(a: &[R], b: &[R]) -> Vec<R> {
    let mut a: Vec<R> = a.to_vec();
    let mut b: Vec<R> = b.to_vec();
    trim(&mut a);
    trim(&mut b);
    if a.len() < b.len() {
        std::mem::swap(&mut a, &mut b);
    }
    if b.is_empty() {
        return a;
    }
    let mut g = R::one();
    let mut h = R::one();
    loop {
        let delta = a.len() - b.len();
        let r = pseudo_rem(&a, &b);
        if r.is_empty() {
            return b;
        }
        if r.len() == 1 {
            return r;
        }
        let divisor = g.mul(&power(&h, delta));
        let next: Vec<R> = r.iter().map(|c| c.div_exact(&divisor)).collect();
        a = b;
        b = next;
        g = a[a.len() - 1].clone();
        // h <- g^delta / h^(delta - 1)
        h = if delta == 0 { h } else { power(&g, delta).div_exact(&power(&h, delta - 1)) };
    }
}
