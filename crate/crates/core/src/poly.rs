//! Univariate and multivariate polynomials.

use std::collections::BTreeMap;
use std::fmt;

use crate::laurent::monomial_text;
use crate::scalar::{Conj, Domain, Field, Rational, Ring};

/// Dense univariate polynomial, coefficients from low to high degree.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Poly<R> {
    c: Vec<R>,
}

impl<R: Ring> Poly<R> {
    pub fn new(mut c: Vec<R>) -> Self {
        while c.last().is_some_and(|x| x.is_zero()) {
            c.pop();
        }
        Poly { c }
    }
    pub fn constant(a: R) -> Self {
        Self::new(vec![a])
    }
    /// The variable.
    pub fn x() -> Self {
        Self::new(vec![R::zero(), R::one()])
    }
    pub fn monomial(e: usize, a: R) -> Self {
        let mut c = vec![R::zero(); e + 1];
        c[e] = a;
        Self::new(c)
    }
    pub fn coeffs(&self) -> &[R] {
        &self.c
    }
    pub fn coeff(&self, e: usize) -> R {
        self.c.get(e).cloned().unwrap_or_else(R::zero)
    }
    /// Degree, `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.c.len().checked_sub(1)
    }
    pub fn lead(&self) -> R {
        self.c.last().cloned().unwrap_or_else(R::zero)
    }
    pub fn eval(&self, x: &R) -> R {
        let mut acc = R::zero();
        for a in self.c.iter().rev() {
            acc = acc.mul(x).add(a);
        }
        acc
    }
    pub fn derivative(&self) -> Self {
        Self::new(
            self.c
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, a)| a.mul(&R::from_int(k as i64)))
                .collect(),
        )
    }
    pub fn scale_by(&self, a: &R) -> Self {
        Self::new(self.c.iter().map(|x| x.mul(a)).collect())
    }
    pub fn map<S: Ring>(&self, f: impl Fn(&R) -> S) -> Poly<S> {
        Poly::new(self.c.iter().map(f).collect())
    }
    pub fn display_in(&self, var: &str) -> String
    where
        R: fmt::Display,
    {
        if self.c.is_empty() {
            return "0".into();
        }
        let parts: Vec<String> = self
            .c
            .iter()
            .enumerate()
            .filter(|(_, a)| !a.is_zero())
            .map(|(e, a)| {
                let v = match e {
                    0 => String::new(),
                    1 => var.to_string(),
                    e => format!("{var}^{e}"),
                };
                monomial_text(&a.to_string(), &v)
            })
            .collect();
        parts.join(" + ")
    }
}

impl<F: Field> Poly<F> {
    /// Euclidean division.
    pub fn div_rem(&self, d: &Self) -> Option<(Self, Self)> {
        let dd = d.degree()?;
        let li = d.lead().inv()?;
        let mut r = self.c.clone();
        let mut quo = vec![F::zero(); self.c.len().saturating_sub(dd)];
        while r.len() > dd && !r.is_empty() {
            let k = r.len() - 1 - dd;
            let f = r[r.len() - 1].mul(&li);
            for (j, dj) in d.c.iter().enumerate() {
                r[k + j] = r[k + j].sub(&f.mul(dj));
            }
            quo[k] = f;
            r.pop();
            while r.last().is_some_and(|x| x.is_zero()) {
                r.pop();
            }
        }
        Some((Poly::new(quo), Poly::new(r)))
    }
    pub fn monic(&self) -> Self {
        match self.lead().inv() {
            Some(li) => self.scale_by(&li),
            None => self.clone(),
        }
    }
    pub fn gcd(&self, o: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), o.clone());
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b).expect("nonzero divisor");
            a = b;
            b = r;
        }
        a.monic()
    }
}

impl<R: Ring> Ring for Poly<R> {
    fn zero() -> Self {
        Poly { c: Vec::new() }
    }
    fn one() -> Self {
        Self::constant(R::one())
    }
    fn is_zero(&self) -> bool {
        self.c.is_empty()
    }
    fn add(&self, o: &Self) -> Self {
        let n = self.c.len().max(o.c.len());
        Self::new((0..n).map(|k| self.coeff(k).add(&o.coeff(k))).collect())
    }
    fn neg(&self) -> Self {
        Poly { c: self.c.iter().map(|x| x.neg()).collect() }
    }
    fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return Self::zero();
        }
        let mut c = vec![R::zero(); self.c.len() + o.c.len() - 1];
        for (i, a) in self.c.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.c.iter().enumerate() {
                c[i + j].add_assign(&a.mul(b));
            }
        }
        Self::new(c)
    }
    fn from_rational(q: &Rational) -> Self {
        Self::constant(R::from_rational(q))
    }
}

impl<F: Field> Domain for Poly<F> {
    fn div_exact(&self, o: &Self) -> Option<Self> {
        let (quo, r) = self.div_rem(o)?;
        r.is_zero().then_some(quo)
    }
}

impl<R: Ring + Conj> Conj for Poly<R> {
    fn conj(&self) -> Self {
        self.map(|c| c.conj())
    }
}

impl<R: Ring + fmt::Display> fmt::Display for Poly<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.display_in("t"))
    }
}

impl<R: Ring> fmt::Debug for Poly<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly{:?}", self.c)
    }
}

/// Sparse polynomial in variables `v_0, v_1, ...`. Exponent vectors carry no
/// trailing zeros, so the number of variables is never stored.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MultiPoly<R> {
    terms: BTreeMap<Vec<u32>, R>,
}

fn trim(mut e: Vec<u32>) -> Vec<u32> {
    while e.last() == Some(&0) {
        e.pop();
    }
    e
}

impl<R: Ring> MultiPoly<R> {
    pub fn constant(c: R) -> Self {
        Self::monomial(vec![], c)
    }
    pub fn monomial(e: Vec<u32>, c: R) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(trim(e), c);
        }
        MultiPoly { terms }
    }
    /// The variable `v_j` (0-based).
    pub fn var(j: usize) -> Self {
        let mut e = vec![0; j + 1];
        e[j] = 1;
        Self::monomial(e, R::one())
    }
    pub fn add_term(&mut self, e: Vec<u32>, c: &R) {
        if c.is_zero() {
            return;
        }
        let e = trim(e);
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
    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &R)> {
        self.terms.iter()
    }
    pub fn coeff(&self, e: &[u32]) -> R {
        self.terms.get(&trim(e.to_vec())).cloned().unwrap_or_else(R::zero)
    }
    pub fn nvars_used(&self) -> usize {
        self.terms.keys().map(|e| e.len()).max().unwrap_or(0)
    }
    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.iter().sum()).max()
    }
    pub fn constant_term(&self) -> R {
        self.coeff(&[])
    }
    pub fn partial(&self, j: usize) -> Self {
        let mut out = Self::zero();
        for (e, c) in &self.terms {
            let k = e.get(j).copied().unwrap_or(0);
            if k == 0 {
                continue;
            }
            let mut e2 = e.clone();
            e2[j] -= 1;
            out.add_term(e2, &c.mul(&R::from_int(k as i64)));
        }
        out
    }
    pub fn scale_by(&self, c: &R) -> Self {
        let mut out = Self::zero();
        for (e, v) in &self.terms {
            out.add_term(e.clone(), &v.mul(c));
        }
        out
    }
    pub fn map<S: Ring>(&self, f: impl Fn(&R) -> S) -> MultiPoly<S> {
        let mut out = MultiPoly::zero();
        for (e, c) in &self.terms {
            out.add_term(e.clone(), &f(c));
        }
        out
    }
    /// Evaluate after substituting each variable by an element of `S`.
    pub fn substitute<S: Ring>(&self, vals: &[S], lift: impl Fn(&R) -> S) -> S {
        let mut acc = S::zero();
        for (e, c) in &self.terms {
            let mut t = lift(c);
            for (j, k) in e.iter().enumerate() {
                t = t.mul(&vals[j].pow(*k));
            }
            acc.add_assign(&t);
        }
        acc
    }
    /// Render with variable names `{prefix}{j+1}`.
    pub fn display_vars(&self, prefix: &str) -> String
    where
        R: fmt::Display,
    {
        if self.terms.is_empty() {
            return "0".into();
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(e, c)| {
                let vars: Vec<String> = e
                    .iter()
                    .enumerate()
                    .filter(|(_, k)| **k > 0)
                    .map(|(j, k)| match k {
                        1 => format!("{prefix}{}", j + 1),
                        k => format!("{prefix}{}^{k}", j + 1),
                    })
                    .collect();
                monomial_text(&c.to_string(), &vars.join("*"))
            })
            .collect();
        parts.join(" + ")
    }
}

impl<R: Ring> Ring for MultiPoly<R> {
    fn zero() -> Self {
        MultiPoly { terms: BTreeMap::new() }
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
            self.add_term(e.clone(), c);
        }
    }
    fn neg(&self) -> Self {
        MultiPoly { terms: self.terms.iter().map(|(e, c)| (e.clone(), c.neg())).collect() }
    }
    fn mul(&self, o: &Self) -> Self {
        let mut out = Self::zero();
        for (a, x) in &self.terms {
            for (b, y) in &o.terms {
                let n = a.len().max(b.len());
                let e: Vec<u32> = (0..n)
                    .map(|k| a.get(k).copied().unwrap_or(0) + b.get(k).copied().unwrap_or(0))
                    .collect();
                out.add_term(e, &x.mul(y));
            }
        }
        out
    }
    fn from_rational(q: &Rational) -> Self {
        Self::constant(R::from_rational(q))
    }
}

impl<R: Ring + Conj> Conj for MultiPoly<R> {
    fn conj(&self) -> Self {
        self.map(|c| c.conj())
    }
}

impl<R: Ring + fmt::Display> fmt::Display for MultiPoly<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.display_vars("x"))
    }
}

impl<R: Ring> fmt::Debug for MultiPoly<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MultiPoly{:?}", self.terms)
    }
}
