//! The truncated quantum ring generated by the Kähler class of `CP^n`,
//! computed from the flat Darboux model in dimension `2n`.

use std::collections::BTreeMap;
use std::fmt;

use crate::blade::Blade;
use crate::error::{Error, Result};
use crate::form::Form;
use crate::laurent::Laurent;
use crate::linalg::{factor_rational, Spectrum};
use crate::poly::Poly;
use crate::quantum::{quantum_power, quantum_wedge, Bivector, QForm};
use crate::scalar::{Rational, Ring};
use crate::symplectic::{bivector_of, SymplecticForm};

pub const MAX_N: usize = 5;

/// Element `sum_j c_j omega^j`, coefficients polynomial in `h`.
pub type RingElem<R> = Vec<Laurent<R>>;

#[derive(Clone, Debug, PartialEq)]
pub struct CPnRing {
    n: usize,
    table: BTreeMap<(usize, usize), RingElem<Rational>>,
}

fn check_n(n: usize, max: usize) -> Result<()> {
    if n == 0 || n > max {
        return Err(Error::DimensionTooLarge { dim: 2 * n, max: 2 * max });
    }
    Ok(())
}

fn flat_model(n: usize) -> Result<(QForm, Bivector)> {
    let om = SymplecticForm::standard(n);
    Ok((om.form(), bivector_of(&om)?))
}

fn omega_powers(omega: &QForm, n: usize) -> Vec<QForm> {
    let mut p = vec![Form::one(omega.dim())];
    for k in 1..=n {
        p.push(p[k - 1].wedge(omega));
    }
    p
}

/// Coordinates of a flat-model form in `{omega^j}`, failing if it is not in their span.
pub fn decompose(f: &QForm, n: usize) -> Result<RingElem<Rational>> {
    let (omega, _) = flat_model(n)?;
    let pows = omega_powers(&omega, n);
    let mut out = Vec::with_capacity(n + 1);
    for (j, pj) in pows.iter().enumerate() {
        let part = f.grade_part(2 * j);
        let lead: Vec<usize> = (0..2 * j).collect();
        let blade = Blade::from_sorted(&lead).ok_or(Error::IndexOutOfRange { index: 2 * j, dim: 2 * n })?;
        let c = part.coeff(blade).scale_by(&Rational::factorial(j as u32).recip()?);
        if part != pj.scale(&c) {
            return Err(Error::NotRepresentable(format!("grade {} part is not a multiple of omega^{j}", 2 * j)));
        }
        out.push(c);
    }
    if f.grades().into_iter().any(|g| g % 2 == 1 || g > 2 * n) {
        return Err(Error::NotRepresentable("odd grade component".into()));
    }
    Ok(out)
}

pub fn compose(e: &RingElem<Rational>, n: usize) -> Result<QForm> {
    let (omega, _) = flat_model(n)?;
    let pows = omega_powers(&omega, n);
    let mut f = Form::zero(2 * n);
    for (c, p) in e.iter().zip(&pows) {
        f.add_assign(&p.scale(c));
    }
    Ok(f)
}

/// `omega^k ^_h omega^l` for all `0 <= k, l <= n`.
pub fn cpn_structure_constants(n: usize) -> Result<CPnRing> {
    check_n(n, MAX_N)?;
    let (omega, w) = flat_model(n)?;
    let pows = omega_powers(&omega, n);
    let mut table = BTreeMap::new();
    for k in 0..=n {
        for l in k..=n {
            let e = decompose(&quantum_wedge(&pows[k], &pows[l], &w)?, n)?;
            table.insert((l, k), e.clone());
            table.insert((k, l), e);
        }
    }
    Ok(CPnRing { n, table })
}

impl CPnRing {
    pub fn n(&self) -> usize {
        self.n
    }
    pub fn entry(&self, k: usize, l: usize) -> &RingElem<Rational> {
        &self.table[&(k, l)]
    }
    pub fn basis<R: Ring>(&self, j: usize) -> RingElem<R> {
        let mut e = vec![Laurent::zero(); self.n + 1];
        e[j] = Laurent::one();
        e
    }
    pub fn from_h_poly<R: Ring>(&self, c: Laurent<R>) -> RingElem<R> {
        let mut e = vec![Laurent::zero(); self.n + 1];
        e[0] = c;
        e
    }
    pub fn add<R: Ring>(&self, a: &RingElem<R>, b: &RingElem<R>) -> RingElem<R> {
        a.iter().zip(b).map(|(x, y)| x.add(y)).collect()
    }
    pub fn scale<R: Ring>(&self, a: &RingElem<R>, c: &Laurent<R>) -> RingElem<R> {
        a.iter().map(|x| x.mul(c)).collect()
    }
    /// Product through the table, with coefficients in any ring containing the rationals.
    pub fn mul<R: Ring>(&self, a: &RingElem<R>, b: &RingElem<R>) -> RingElem<R> {
        let mut out = vec![Laurent::zero(); self.n + 1];
        for (i, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                if y.is_zero() {
                    continue;
                }
                let xy = x.mul(y);
                for (m, c) in self.entry(i, j).iter().enumerate() {
                    if !c.is_zero() {
                        out[m].add_assign(&xy.mul(&c.map(R::from_rational)));
                    }
                }
            }
        }
        out
    }
    pub fn power<R: Ring>(&self, a: &RingElem<R>, k: u32) -> RingElem<R> {
        let mut acc = self.basis(0);
        for _ in 0..k {
            acc = self.mul(&acc, a);
        }
        acc
    }
    /// Each entry lies in the span of `omega^{|k-l|}, ..., omega^{k+l}` with
    /// the `omega^j` coefficient a multiple of `h^{k+l-j}`.
    pub fn shape_ok(&self) -> bool {
        self.table.iter().all(|(&(k, l), e)| {
            e.iter().enumerate().all(|(j, c)| {
                c.is_zero()
                    || (j >= k.abs_diff(l)
                        && j <= k + l
                        && c.terms().all(|(p, _)| p == (k + l - j) as i64))
            })
        })
    }
    pub fn is_symmetric(&self) -> bool {
        self.table.iter().all(|(&(k, l), e)| self.table[&(l, k)] == *e)
    }
    /// At `h = 0` the product is `omega^{k+l}`, or 0 past the top degree.
    pub fn classical_layer_ok(&self) -> bool {
        self.table.iter().all(|(&(k, l), e)| {
            e.iter().enumerate().all(|(j, c)| {
                let want = if j == k + l { Rational::one() } else { Rational::zero() };
                c.coeff(0) == want
            })
        })
    }
    pub fn associative_up_to(&self, total: usize) -> bool {
        let n = self.n;
        for a in 0..=n {
            for b in 0..=n {
                for c in 0..=n {
                    if a + b + c > total {
                        continue;
                    }
                    let (x, y, z) = (self.basis::<Rational>(a), self.basis(b), self.basis(c));
                    if self.mul(&self.mul(&x, &y), &z) != self.mul(&x, &self.mul(&y, &z)) {
                        return false;
                    }
                }
            }
        }
        true
    }
    /// Expanded into monomials `c h^p w^j`, highest `j` first.
    pub fn display_elem(e: &RingElem<Rational>) -> String {
        let mut out = String::new();
        for (j, c) in e.iter().enumerate().rev() {
            for (p, r) in c.terms() {
                let mut mono = String::new();
                if p > 0 {
                    mono.push('h');
                    if p > 1 {
                        mono += &format!("^{p}");
                    }
                }
                if j > 0 {
                    mono.push('w');
                    if j > 1 {
                        mono += &format!("^{j}");
                    }
                }
                let mag = r.abs();
                let coef = if mag.is_one() && !mono.is_empty() { String::new() } else { format!("{mag}") };
                let sign = if r.is_negative() { "-" } else { "+" };
                if out.is_empty() {
                    out = format!("{}{coef}{mono}", if r.is_negative() { "-" } else { "" });
                } else {
                    out += &format!(" {sign} {coef}{mono}");
                }
            }
        }
        if out.is_empty() {
            "0".into()
        } else {
            out
        }
    }
}

impl fmt::Display for CPnRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for k in 0..=self.n {
            for l in k..=self.n {
                writeln!(f, "({k}, {l}) -> {}", Self::display_elem(self.entry(k, l)))?;
            }
        }
        Ok(())
    }
}

/// `omega - n h`, the quantum class of the hyperplane.
fn omega_h(ring: &CPnRing) -> RingElem<Rational> {
    let mut e = ring.basis(1);
    e[0] = Laurent::monomial(1, Rational::from_int(-(ring.n as i64)));
    e
}

#[derive(Clone, Debug, PartialEq)]
pub struct NilpotencyReport {
    pub n: usize,
    /// `sum_i e^{2i-1} ^_h e^{2i}` equals `omega - n h`.
    pub literal_sum: bool,
    /// `(omega - n h)^{n+1}_h = 0` in the flat model.
    pub top_vanishes: bool,
    /// `(omega - n h)^n_h != 0`.
    pub below_nonzero: bool,
    /// Same two facts through the table.
    pub table_agrees: bool,
}

impl NilpotencyReport {
    pub fn holds(&self) -> bool {
        self.literal_sum && self.top_vanishes && self.below_nonzero && self.table_agrees
    }
}

pub fn verify_nilpotency(n: usize) -> Result<NilpotencyReport> {
    check_n(n, 4)?;
    let (omega, w) = flat_model(n)?;
    let dim = 2 * n;
    let oh = omega.sub(&Form::scalar(dim, Laurent::monomial(1, Rational::from_int(n as i64))));
    let mut sum = Form::zero(dim);
    for i in 0..n {
        sum.add_assign(&quantum_wedge(&Form::basis(dim, 2 * i), &Form::basis(dim, 2 * i + 1), &w)?);
    }
    let top = quantum_power(&oh, n as u32 + 1, &w)?;
    let below = quantum_power(&oh, n as u32, &w)?;
    let ring = cpn_structure_constants(n)?;
    let e = omega_h(&ring);
    let t_top = ring.power(&e, n as u32 + 1);
    let t_below = ring.power(&e, n as u32);
    Ok(NilpotencyReport {
        n,
        literal_sum: sum == oh,
        top_vanishes: top.is_zero(),
        below_nonzero: !below.is_zero(),
        table_agrees: t_top.iter().all(|c| c.is_zero()) && compose(&t_below, n)? == below,
    })
}

#[derive(Clone, Debug, PartialEq)]
pub struct ExpansionReport {
    pub n: usize,
    /// `(omega)^{n+1}_h` through the table.
    pub direct: RingElem<Rational>,
    /// `sum_k (-1)^{n-k} h^{n+1-k} C(n+1,k) (omega)^k_h`.
    pub printed: RingElem<Rational>,
    /// `-sum_k C(n+1,k) (-n h)^{n+1-k} (omega)^k_h`.
    pub binomial: RingElem<Rational>,
}

impl ExpansionReport {
    pub fn printed_matches(&self) -> bool {
        self.printed == self.direct
    }
    pub fn binomial_matches(&self) -> bool {
        self.binomial == self.direct
    }
}

pub fn omega_power_expansion(n: usize) -> Result<ExpansionReport> {
    check_n(n, 4)?;
    let ring = cpn_structure_constants(n)?;
    let om = ring.basis::<Rational>(1);
    let np1 = n as u32 + 1;
    let mut printed = vec![Laurent::zero(); n + 1];
    let mut binomial = vec![Laurent::zero(); n + 1];
    for k in 0..=n as u32 {
        let pk = ring.power(&om, k);
        let e = (np1 - k) as i64;
        let sign = if (n as u32 - k) % 2 == 0 { 1 } else { -1 };
        let c_print = Laurent::monomial(e, Rational::binomial(np1, k).mul(&Rational::from_int(sign)));
        printed = ring.add(&printed, &ring.scale(&pk, &c_print));
        let c_bin = Rational::binomial(np1, k).mul(&Rational::from_int(-(n as i64)).pow(np1 - k)).neg();
        binomial = ring.add(&binomial, &ring.scale(&pk, &Laurent::monomial(e, c_bin)));
    }
    Ok(ExpansionReport { n, direct: ring.power(&om, np1), printed, binomial })
}

#[derive(Clone, Debug, PartialEq)]
pub struct RecursionRow {
    pub k: usize,
    /// `omega ^_h omega^k = omega^{k+1} + a h omega^k + b h^2 omega^{k-1}`.
    pub a: Rational,
    pub b: Rational,
    pub printed: (Rational, Rational),
    pub derived: (Rational, Rational),
}

impl RecursionRow {
    pub fn matches_printed(&self) -> bool {
        (self.a.clone(), self.b.clone()) == self.printed
    }
    pub fn matches_derived(&self) -> bool {
        (self.a.clone(), self.b.clone()) == self.derived
    }
}

pub fn derived_recursion_report(n: usize) -> Result<Vec<RecursionRow>> {
    let ring = cpn_structure_constants(n)?;
    let mut rows = Vec::new();
    for k in 1..=n {
        let e = ring.entry(1, k);
        for (j, c) in e.iter().enumerate() {
            let allowed = (k + 1 == j && j <= n) || j == k || j + 1 == k;
            if !c.is_zero() && !allowed {
                return Err(Error::NotRepresentable(format!("omega ^_h omega^{k} has an omega^{j} term")));
            }
        }
        if k < n && e[k + 1] != Laurent::one() {
            return Err(Error::NotRepresentable(format!("leading term of omega ^_h omega^{k}")));
        }
        let (nn, kk) = (n as i64, k as i64);
        rows.push(RecursionRow {
            k,
            a: e[k].coeff(1),
            b: e[k - 1].coeff(2),
            printed: (Rational::from_int(2 * kk), Rational::from_int(-kk * nn)),
            derived: (Rational::from_int(2 * kk), Rational::from_int(-kk * (nn - kk + 1))),
        });
    }
    Ok(rows)
}

/// Rational `lambda` with `(omega + lambda h)^{n+1}_h = 0`, found as the
/// common rational roots of all coefficients viewed as polynomials in `lambda`.
pub fn first_chern_shift(n: usize) -> Result<Spectrum> {
    check_n(n, 4)?;
    let ring = cpn_structure_constants(n)?;
    let mut e: RingElem<Poly<Rational>> = ring.basis(1);
    e[0] = Laurent::monomial(1, Poly::x());
    let top = ring.power(&e, n as u32 + 1);
    let mut g = Poly::<Rational>::zero();
    for c in &top {
        for (_, p) in c.terms() {
            g = if g.is_zero() { p.clone() } else { g.gcd(p) };
        }
    }
    if g.is_zero() {
        return Err(Error::NotRepresentable("power vanishes identically in lambda".into()));
    }
    Ok(factor_rational(&g))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::laurent::QLaurent;
    use crate::scalar::q;

    fn elem(terms: &[(usize, i64, i64)], n: usize) -> RingElem<Rational> {
        let mut e = vec![QLaurent::zero(); n + 1];
        for &(j, p, c) in terms {
            e[j].add_assign(&Laurent::monomial(p, q(c, 1)));
        }
        e
    }

    #[test]
    fn small_tables() {
        let r1 = cpn_structure_constants(1).unwrap();
        assert_eq!(*r1.entry(1, 1), elem(&[(1, 1, 2), (0, 2, -1)], 1));
        let r2 = cpn_structure_constants(2).unwrap();
        assert_eq!(*r2.entry(1, 1), elem(&[(2, 0, 1), (1, 1, 2), (0, 2, -2)], 2));
        assert_eq!(*r2.entry(1, 2), elem(&[(2, 1, 4), (1, 2, -2)], 2));
        assert_eq!(CPnRing::display_elem(r2.entry(1, 1)), "w^2 + 2hw - 2h^2");
    }

    #[test]
    fn table_invariants() {
        for n in 1..=5 {
            let r = cpn_structure_constants(n).unwrap();
            assert!(r.shape_ok() && r.is_symmetric() && r.classical_layer_ok());
            assert!(r.associative_up_to(n + 2));
        }
    }

    #[test]
    fn nilpotency() {
        for n in 1..=3 {
            assert!(verify_nilpotency(n).unwrap().holds(), "n = {n}");
        }
    }

    #[test]
    fn expansions() {
        let r = omega_power_expansion(1).unwrap();
        assert!(r.printed_matches() && r.binomial_matches());
        assert_eq!(r.direct, elem(&[(1, 1, 2), (0, 2, -1)], 1));
        let r = omega_power_expansion(2).unwrap();
        assert!(r.binomial_matches() && !r.printed_matches());
        assert_eq!(r.direct, elem(&[(2, 1, 6), (0, 3, -4)], 2));
        assert!(r.direct.iter().all(|c| c.coeff(0).is_zero()));
    }

    #[test]
    fn recursion_rows() {
        let rows = derived_recursion_report(2).unwrap();
        assert!(rows[0].matches_printed() && rows[0].matches_derived());
        assert_eq!((rows[1].a.clone(), rows[1].b.clone()), (q(4, 1), q(-2, 1)));
        assert!(rows[1].matches_derived() && !rows[1].matches_printed());
        for n in 1..=4 {
            assert!(derived_recursion_report(n).unwrap().iter().all(|r| r.matches_derived()));
        }
    }

    #[test]
    fn chern_shift() {
        for n in 1..=3 {
            let s = first_chern_shift(n).unwrap();
            assert_eq!(s.rational_roots, vec![(q(-(n as i64), 1), 1)]);
        }
    }

    #[test]
    fn decompose_rejects() {
        let f = Form::basis(4, 0);
        assert!(decompose(&f, 2).is_err());
        assert!(cpn_structure_constants(6).is_err());
    }
}
