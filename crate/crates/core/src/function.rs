//! Coefficient functions: polynomials on flat models and trigonometric
//! polynomials on tori.

use std::collections::BTreeMap;
use std::fmt;

use crate::laurent::{monomial_text, Laurent};
use crate::poly::MultiPoly;
use crate::scalar::{Conj, Gaussian, Rational, Ring};

/// Coefficient ring with coordinate partial derivatives `d/dx_j` (0-based).
pub trait Differentiable: Ring {
    fn partial(&self, j: usize) -> Self;
}

impl Differentiable for Rational {
    fn partial(&self, _: usize) -> Self {
        Rational::zero()
    }
}

impl Differentiable for Gaussian {
    fn partial(&self, _: usize) -> Self {
        Gaussian::zero()
    }
}

impl<R: Ring> Differentiable for MultiPoly<R> {
    fn partial(&self, j: usize) -> Self {
        MultiPoly::partial(self, j)
    }
}

impl<R: Differentiable> Differentiable for Laurent<R> {
    fn partial(&self, j: usize) -> Self {
        self.map(|c| c.partial(j))
    }
}

/// Polynomial function of the coordinates `x_1..x_d`.
pub type PolyFn<F> = MultiPoly<F>;

/// Coordinate function `x_j` (0-based index).
pub fn coord<F: Ring>(j: usize) -> PolyFn<F> {
    MultiPoly::var(j)
}

/// Trigonometric polynomial on the torus `R^d / Z^d`: a finite sum of
/// `c * tau^p * exp(tau i <k, x>)` where `tau` stands for `2 pi` and is kept
/// symbolic.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FourierFn {
    terms: BTreeMap<(Vec<i32>, u32), Gaussian>,
}

fn trim_mode(mut k: Vec<i32>) -> Vec<i32> {
    while k.last() == Some(&0) {
        k.pop();
    }
    k
}

impl FourierFn {
    pub fn mode(k: Vec<i32>, c: Gaussian) -> Self {
        Self::term(k, 0, c)
    }
    pub fn term(k: Vec<i32>, tau: u32, c: Gaussian) -> Self {
        let mut out = Self::zero();
        out.add_term(k, tau, &c);
        out
    }
    pub fn add_term(&mut self, k: Vec<i32>, tau: u32, c: &Gaussian) {
        if c.is_zero() {
            return;
        }
        let key = (trim_mode(k), tau);
        match self.terms.get_mut(&key) {
            Some(v) => {
                v.add_assign(c);
                if v.is_zero() {
                    self.terms.remove(&key);
                }
            }
            None => {
                self.terms.insert(key, c.clone());
            }
        }
    }
    pub fn terms(&self) -> impl Iterator<Item = (&Vec<i32>, u32, &Gaussian)> {
        self.terms.iter().map(|((k, t), c)| (k, *t, c))
    }
    /// Modes occurring with nonzero coefficient.
    pub fn modes(&self) -> Vec<Vec<i32>> {
        let mut v: Vec<Vec<i32>> = self.terms.keys().map(|(k, _)| k.clone()).collect();
        v.dedup();
        v
    }
    /// Coefficient of a mode as a polynomial in `tau`, low degree first.
    pub fn mode_coeff(&self, k: &[i32]) -> Vec<(u32, Gaussian)> {
        let k = trim_mode(k.to_vec());
        self.terms
            .iter()
            .filter(|((m, _), _)| *m == k)
            .map(|((_, t), c)| (*t, c.clone()))
            .collect()
    }
    pub fn max_abs_mode(&self) -> i32 {
        self.terms.keys().flat_map(|(k, _)| k.iter().map(|x| x.abs())).max().unwrap_or(0)
    }
}

impl Ring for FourierFn {
    fn zero() -> Self {
        FourierFn { terms: BTreeMap::new() }
    }
    fn one() -> Self {
        Self::mode(vec![], Gaussian::one())
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
        for ((k, t), c) in &o.terms {
            self.add_term(k.clone(), *t, c);
        }
    }
    fn neg(&self) -> Self {
        FourierFn { terms: self.terms.iter().map(|(k, c)| (k.clone(), c.neg())).collect() }
    }
    fn mul(&self, o: &Self) -> Self {
        let mut out = Self::zero();
        for ((a, s), x) in &self.terms {
            for ((b, t), y) in &o.terms {
                let n = a.len().max(b.len());
                let k: Vec<i32> = (0..n)
                    .map(|j| a.get(j).copied().unwrap_or(0) + b.get(j).copied().unwrap_or(0))
                    .collect();
                out.add_term(k, s + t, &x.mul(y));
            }
        }
        out
    }
    fn from_rational(q: &Rational) -> Self {
        Self::mode(vec![], Gaussian::real(q.clone()))
    }
}

impl Differentiable for FourierFn {
    fn partial(&self, j: usize) -> Self {
        let mut out = Self::zero();
        for ((k, t), c) in &self.terms {
            let kj = k.get(j).copied().unwrap_or(0);
            if kj == 0 {
                continue;
            }
            let f = Gaussian::new(Rational::zero(), Rational::from_int(kj as i64));
            out.add_term(k.clone(), t + 1, &c.mul(&f));
        }
        out
    }
}

impl Conj for FourierFn {
    fn conj(&self) -> Self {
        let mut out = Self::zero();
        for ((k, t), c) in &self.terms {
            out.add_term(k.iter().map(|x| -x).collect(), *t, &c.conj());
        }
        out
    }
}

impl fmt::Display for FourierFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|((k, t), c)| {
                let mut v = Vec::new();
                if *t > 0 {
                    v.push(if *t == 1 { "tau".to_string() } else { format!("tau^{t}") });
                }
                if !k.is_empty() {
                    let ks: Vec<String> = k.iter().map(|x| x.to_string()).collect();
                    v.push(format!("mode({})", ks.join(",")));
                }
                monomial_text(&c.to_string(), &v.join("*"))
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl fmt::Debug for FourierFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fourier_derivative_and_product() {
        let e = FourierFn::mode(vec![1, -2], Gaussian::one());
        let d = e.partial(1);
        assert_eq!(d.mode_coeff(&[1, -2]), vec![(1, Gaussian::from_ints(0, -2))]);
        let p = e.mul(&FourierFn::mode(vec![-1, 2], Gaussian::one()));
        assert_eq!(p, FourierFn::one());
        assert!(FourierFn::one().partial(0).is_zero());
        assert_eq!(e.conj().mul(&e), FourierFn::one());
    }

    #[test]
    fn leibniz_on_fourier() {
        let a = FourierFn::mode(vec![2, 1], Gaussian::from_ints(1, 3));
        let b = FourierFn::term(vec![0, -1], 2, Gaussian::from_ints(-2, 1));
        for j in 0..2 {
            let lhs = a.mul(&b).partial(j);
            let rhs = a.partial(j).mul(&b).add(&a.mul(&b.partial(j)));
            assert_eq!(lhs, rhs);
        }
    }
}
