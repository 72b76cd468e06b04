//! Elements of the exterior algebra with coefficients in a ring.

use std::collections::BTreeMap;
use std::fmt;

use crate::blade::Blade;
use crate::error::{Error, Result};
use crate::function::FourierFn;
use crate::laurent::{h_text, monomial_text, Laurent};
use crate::poly::MultiPoly;
use crate::scalar::{Conj, Gaussian, Rational, Ring};

/// Sum of `c_I e^I` over blades of a fixed ambient dimension.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Form<R> {
    dim: usize,
    terms: BTreeMap<Blade, R>,
}

impl<R: Ring> Form<R> {
    pub fn zero(dim: usize) -> Self {
        Form { dim, terms: BTreeMap::new() }
    }
    pub fn scalar(dim: usize, c: R) -> Self {
        Self::blade(dim, Blade::ONE, c)
    }
    pub fn one(dim: usize) -> Self {
        Self::scalar(dim, R::one())
    }
    pub fn blade(dim: usize, b: Blade, c: R) -> Self {
        let mut f = Self::zero(dim);
        f.add_term(b, &c);
        f
    }
    /// Basis 1-form `e^{i+1}` (0-based index).
    pub fn basis(dim: usize, i: usize) -> Self {
        Self::blade(dim, Blade::single(i), R::one())
    }
    /// `e^{i_1} ^ ... ^ e^{i_k}` for 0-based, strictly increasing indices.
    pub fn monomial(dim: usize, ix: &[usize]) -> Result<Self> {
        if let Some(&i) = ix.iter().find(|&&i| i >= dim) {
            return Err(Error::IndexOutOfRange { index: i + 1, dim });
        }
        match Blade::from_unsorted(ix) {
            Some((b, s)) => Ok(Self::blade(dim, b, R::from_int(s as i64))),
            None => Ok(Self::zero(dim)),
        }
    }
    pub fn from_terms(dim: usize, it: impl IntoIterator<Item = (Blade, R)>) -> Self {
        let mut f = Self::zero(dim);
        for (b, c) in it {
            f.add_term(b, &c);
        }
        f
    }
    pub fn dim(&self) -> usize {
        self.dim
    }
    pub fn add_term(&mut self, b: Blade, c: &R) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&b) {
            Some(v) => {
                v.add_assign(c);
                if v.is_zero() {
                    self.terms.remove(&b);
                }
            }
            None => {
                self.terms.insert(b, c.clone());
            }
        }
    }
    pub fn coeff(&self, b: Blade) -> R {
        self.terms.get(&b).cloned().unwrap_or_else(R::zero)
    }
    pub fn terms(&self) -> impl Iterator<Item = (Blade, &R)> {
        self.terms.iter().map(|(b, c)| (*b, c))
    }
    pub fn len(&self) -> usize {
        self.terms.len()
    }
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }
    pub fn add(&self, o: &Self) -> Self {
        let mut out = self.clone();
        out.add_assign(o);
        out
    }
    pub fn add_assign(&mut self, o: &Self) {
        debug_assert_eq!(self.dim, o.dim);
        for (b, c) in &o.terms {
            self.add_term(*b, c);
        }
    }
    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }
    pub fn neg(&self) -> Self {
        self.map(|c| c.neg())
    }
    /// Multiply every coefficient by `c` on the right.
    pub fn scale(&self, c: &R) -> Self {
        self.map(|v| v.mul(c))
    }
    pub fn scale_q(&self, q: &Rational) -> Self {
        self.map(|v| v.scale(q))
    }
    pub fn map<S: Ring>(&self, f: impl Fn(&R) -> S) -> Form<S> {
        Form::from_terms(self.dim, self.terms.iter().map(|(b, c)| (*b, f(c))))
    }
    /// Classical exterior product.
    pub fn wedge(&self, o: &Self) -> Self {
        assert_eq!(self.dim, o.dim, "wedge of forms in different dimensions");
        let mut out = Self::zero(self.dim);
        for (a, x) in &self.terms {
            for (b, y) in &o.terms {
                if let Some((ab, s)) = a.wedge(*b) {
                    let c = x.mul(y);
                    out.add_term(ab, &if s < 0 { c.neg() } else { c });
                }
            }
        }
        out
    }
    /// Contraction with `e_i` in the first slot.
    pub fn insert_first(&self, i: usize) -> Self {
        self.contract_with(|b| b.remove_first(i))
    }
    /// Contraction with `e_i` in the last slot.
    pub fn insert_last(&self, i: usize) -> Self {
        self.contract_with(|b| b.remove_last(i))
    }
    fn contract_with(&self, f: impl Fn(&Blade) -> Option<(Blade, i32)>) -> Self {
        let mut out = Self::zero(self.dim);
        for (b, c) in &self.terms {
            if let Some((nb, s)) = f(b) {
                out.add_term(nb, &if s < 0 { c.neg() } else { c.clone() });
            }
        }
        out
    }
    /// Contraction with a vector `v` (components in the standard basis) in the first slot.
    pub fn interior(&self, v: &[R]) -> Self {
        let mut out = Self::zero(self.dim);
        for (i, vi) in v.iter().enumerate() {
            if !vi.is_zero() {
                out.add_assign(&self.insert_first(i).map(|c| vi.mul(c)));
            }
        }
        out
    }
    pub fn grade_part(&self, k: usize) -> Self {
        Self::from_terms(
            self.dim,
            self.terms.iter().filter(|(b, _)| b.grade() == k).map(|(b, c)| (*b, c.clone())),
        )
    }
    /// Distinct form degrees present, ascending.
    pub fn grades(&self) -> Vec<usize> {
        let mut g: Vec<usize> = self.terms.keys().map(|b| b.grade()).collect();
        g.dedup();
        g.sort_unstable();
        g.dedup();
        g
    }
    /// Form degree if all terms share one.
    pub fn grade(&self) -> Option<usize> {
        match self.grades().as_slice() {
            [k] => Some(*k),
            _ => None,
        }
    }
    /// Sum of `e^j ^ (e_j -| self)`: multiplies each degree-k part by k.
    pub fn degree_operator(&self) -> Self {
        Self::from_terms(
            self.dim,
            self.terms.iter().map(|(b, c)| (*b, c.mul(&R::from_int(b.grade() as i64)))),
        )
    }
    /// Substitute every generator `e^k` by the 1-form `images[k]`.
    pub fn pullback<S: Ring>(&self, images: &[Form<S>], lift: impl Fn(&R) -> S) -> Form<S> {
        let dim = images.first().map_or(self.dim, |f| f.dim);
        let mut out = Form::zero(dim);
        for (b, c) in &self.terms {
            let mut t = Form::scalar(dim, lift(c));
            for i in b.indices() {
                t = t.wedge(&images[i]);
            }
            out.add_assign(&t);
        }
        out
    }
}

impl<R: Ring + Conj> Form<R> {
    pub fn conj(&self) -> Self {
        self.map(|c| c.conj())
    }
}

/// Expansion of a coefficient into printable monomials `(sort key, coefficient, variables)`.
pub trait Terms {
    fn expand(&self) -> Vec<(i64, String, String)>;
}

impl Terms for Rational {
    fn expand(&self) -> Vec<(i64, String, String)> {
        vec![(0, self.to_string(), String::new())]
    }
}

impl Terms for Gaussian {
    fn expand(&self) -> Vec<(i64, String, String)> {
        vec![(0, self.to_string(), String::new())]
    }
}

impl<R: Ring + fmt::Display> Terms for MultiPoly<R> {
    fn expand(&self) -> Vec<(i64, String, String)> {
        self.terms()
            .map(|(e, c)| {
                let m = MultiPoly::monomial(e.clone(), Rational::one()).display_vars("x");
                (0, c.to_string(), if m == "1" { String::new() } else { m })
            })
            .collect()
    }
}

impl Terms for FourierFn {
    fn expand(&self) -> Vec<(i64, String, String)> {
        self.terms()
            .map(|(k, t, c)| {
                let unit = FourierFn::term(k.clone(), t, Gaussian::one()).to_string();
                (0, c.to_string(), if unit == "1" { String::new() } else { unit })
            })
            .collect()
    }
}

impl<R: Ring + Terms> Terms for Laurent<R> {
    fn expand(&self) -> Vec<(i64, String, String)> {
        let mut out = Vec::new();
        for (e, c) in self.terms() {
            for (_, coef, vars) in c.expand() {
                let h = h_text(e);
                let v = match (vars.is_empty(), h.is_empty()) {
                    (true, _) => h,
                    (false, true) => vars,
                    (false, false) => format!("{vars}*{h}"),
                };
                out.push((e, coef, v));
            }
        }
        out
    }
}

impl<R: Ring + Terms> Form<R> {
    /// Text rendering with basis 1-forms named `{prefix}{i}`.
    pub fn display_with(&self, prefix: &str) -> String {
        let mut rows = Vec::new();
        for (b, c) in &self.terms {
            for (key, coef, vars) in c.expand() {
                let bl = b.display_with(prefix);
                let v = match (vars.is_empty(), bl.is_empty()) {
                    (_, true) => vars,
                    (true, false) => bl,
                    (false, false) => format!("{vars}*{bl}"),
                };
                rows.push((key, *b, monomial_text(&coef, &v)));
            }
        }
        if rows.is_empty() {
            return "0".into();
        }
        rows.sort_by(|a, b| (a.0, a.1).cmp(&(b.0, b.1)));
        rows.into_iter().map(|r| r.2).collect::<Vec<_>>().join(" + ")
    }
}

impl<R: Ring + Terms> fmt::Display for Form<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.display_with("e"))
    }
}

impl<R: Ring> fmt::Debug for Form<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.terms.iter().map(|(b, c)| format!("({c:?})*{b}")).collect();
        write!(f, "Form[{}]({})", self.dim, parts.join(" + "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::q;

    type F = Form<Rational>;

    #[test]
    fn wedge_is_graded_commutative() {
        let a = F::basis(3, 0).add(&F::basis(3, 2).scale(&q(2, 1)));
        let b = F::basis(3, 1);
        assert_eq!(a.wedge(&b), b.wedge(&a).neg());
        assert!(a.wedge(&a).is_zero());
    }

    #[test]
    fn contraction_matches_evaluation() {
        // e^1^e^2^e^3 with e_2 first gives -e^1^e^3, with e_2 last gives -e^1^e^3 too
        let v = F::monomial(3, &[0, 1, 2]).unwrap();
        assert_eq!(v.insert_first(1), F::monomial(3, &[0, 2]).unwrap().neg());
        assert_eq!(v.insert_last(1), F::monomial(3, &[0, 2]).unwrap().neg());
        assert_eq!(v.insert_last(2), F::monomial(3, &[0, 1]).unwrap());
        assert_eq!(v.insert_first(2), F::monomial(3, &[0, 1]).unwrap());
    }

    #[test]
    fn display_orders_by_h_then_blade() {
        let w = Form::<Laurent<Rational>>::monomial(2, &[0, 1]).unwrap();
        let f = w.add(&Form::scalar(2, Laurent::h().neg()));
        assert_eq!(f.to_string(), "e1^e2 + (-1)*h");
    }

    #[test]
    fn out_of_range_index() {
        assert!(matches!(F::monomial(2, &[2]), Err(Error::IndexOutOfRange { .. })));
    }
}
