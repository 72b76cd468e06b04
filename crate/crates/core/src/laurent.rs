//! Laurent polynomials in the deformation parameter `h`.

use std::collections::BTreeMap;
use std::fmt;

use crate::scalar::{Conj, Rational, Ring};

/// Finite sum of `c_k h^k`, `k` any integer. Zero coefficients are never stored.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Laurent<R> {
    terms: BTreeMap<i64, R>,
}

/// Deformation scalar over the rationals.
pub type QLaurent = Laurent<Rational>;

/// Whether negative powers of `h` are admissible.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Mode {
    Polynomial,
    Laurent,
}

impl<R: Ring> Laurent<R> {
    pub fn constant(c: R) -> Self {
        Self::monomial(0, c)
    }
    pub fn monomial(e: i64, c: R) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(e, c);
        }
        Laurent { terms }
    }
    /// The parameter itself.
    pub fn h() -> Self {
        Self::monomial(1, R::one())
    }
    pub fn h_pow(e: i64) -> Self {
        Self::monomial(e, R::one())
    }
    pub fn from_terms(it: impl IntoIterator<Item = (i64, R)>) -> Self {
        let mut out = Laurent { terms: BTreeMap::new() };
        for (e, c) in it {
            out.add_term(e, &c);
        }
        out
    }
    pub fn add_term(&mut self, e: i64, c: &R) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&e) {
            Some(v) => {
                v.add_assign(c);
                if v.is_zero() {
                    self.terms.remove(&e);
                }
            }
            None => {
                self.terms.insert(e, c.clone());
            }
        }
    }
    pub fn coeff(&self, e: i64) -> R {
        self.terms.get(&e).cloned().unwrap_or_else(R::zero)
    }
    pub fn terms(&self) -> impl Iterator<Item = (i64, &R)> {
        self.terms.iter().map(|(e, c)| (*e, c))
    }
    pub fn exponents(&self) -> impl Iterator<Item = i64> + '_ {
        self.terms.keys().copied()
    }
    pub fn min_exp(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }
    pub fn max_exp(&self) -> Option<i64> {
        self.terms.keys().next_back().copied()
    }
    pub fn is_polynomial(&self) -> bool {
        self.min_exp().map_or(true, |e| e >= 0)
    }
    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|&e| e == 0)
    }
    /// Multiply by `h^k`.
    pub fn shift(&self, k: i64) -> Self {
        Laurent { terms: self.terms.iter().map(|(e, c)| (e + k, c.clone())).collect() }
    }
    /// Multiply every coefficient by an element of the base ring.
    pub fn scale_by(&self, c: &R) -> Self {
        Self::from_terms(self.terms.iter().map(|(e, v)| (*e, v.mul(c))))
    }
    pub fn map<S: Ring>(&self, f: impl Fn(&R) -> S) -> Laurent<S> {
        Laurent::from_terms(self.terms.iter().map(|(e, c)| (*e, f(c))))
    }
    /// Sum of coefficients, i.e. the value at `h = 1`.
    pub fn at_one(&self) -> R {
        let mut acc = R::zero();
        for c in self.terms.values() {
            acc.add_assign(c);
        }
        acc
    }
    /// Substitute `h -> 1/h`.
    pub fn invert_h(&self) -> Self {
        Laurent { terms: self.terms.iter().map(|(e, c)| (-e, c.clone())).collect() }
    }
}

impl<R: Ring> Ring for Laurent<R> {
    fn zero() -> Self {
        Laurent { terms: BTreeMap::new() }
    }
    fn one() -> Self {
        Self::constant(R::one())
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
    fn add(&self, o: &Self) -> Self {
        let mut out = self.clone();
        out.add_assign(o);
        out
    }
    fn add_assign(&mut self, o: &Self) {
        for (e, c) in &o.terms {
            self.add_term(*e, c);
        }
    }
    fn neg(&self) -> Self {
        Laurent { terms: self.terms.iter().map(|(e, c)| (*e, c.neg())).collect() }
    }
    fn mul(&self, o: &Self) -> Self {
        let mut out = Self::zero();
        for (a, x) in &self.terms {
            for (b, y) in &o.terms {
                out.add_term(a + b, &x.mul(y));
            }
        }
        out
    }
    fn from_rational(q: &Rational) -> Self {
        Self::constant(R::from_rational(q))
    }
}

impl<R: Ring + Conj> Conj for Laurent<R> {
    fn conj(&self) -> Self {
        self.map(|c| c.conj())
    }
}

/// Wrap a coefficient for display: bare if it looks atomic and positive.
pub(crate) fn paren(s: String) -> String {
    let atomic = !s.is_empty()
        && !s.starts_with('-')
        && !s[1..].contains(['+', '-', '/', '*', ' ']);
    if atomic {
        s
    } else {
        format!("({s})")
    }
}

/// Render `c * var^e` with the conventions shared by all printers.
pub(crate) fn monomial_text(coef: &str, vars: &str) -> String {
    match (coef, vars.is_empty()) {
        (c, true) => paren(c.to_string()),
        ("1", false) => vars.to_string(),
        (c, false) => format!("{}*{}", paren(c.to_string()), vars),
    }
}

pub(crate) fn h_text(e: i64) -> String {
    match e {
        0 => String::new(),
        1 => "h".into(),
        e => format!("h^{e}"),
    }
}

impl<R: Ring + fmt::Display> fmt::Display for Laurent<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(e, c)| monomial_text(&c.to_string(), &h_text(*e)))
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl<R: Ring> fmt::Debug for Laurent<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.terms.iter().map(|(e, c)| format!("({c:?})*h^{e}")).collect();
        write!(f, "{}", parts.join(" + "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::q;

    #[test]
    fn arithmetic() {
        let a = QLaurent::from_terms([(-1, q(1, 1)), (2, q(3, 1))]);
        let b = QLaurent::from_terms([(1, q(1, 1)), (0, q(-1, 2))]);
        let p = a.mul(&b);
        assert_eq!(p.coeff(0), q(1, 1));
        assert_eq!(p.coeff(-1), q(-1, 2));
        assert_eq!(p.coeff(3), q(3, 1));
        assert_eq!(p.coeff(2), q(-3, 2));
        assert!(!a.is_polynomial());
        assert!(b.is_polynomial());
        assert!(a.sub(&a).is_zero());
    }

    #[test]
    fn display() {
        let a = QLaurent::from_terms([(0, q(1, 1)), (1, q(-1, 1)), (2, q(1, 2))]);
        assert_eq!(a.to_string(), "1 + (-1)*h + (1/2)*h^2");
        assert_eq!(QLaurent::zero().to_string(), "0");
    }
}
