//! The deformed exterior product and its relatives.
//!
//! All products here are `m(exp(L)(a (x) b))` where `L` removes an index `i`
//! from the left factor (contraction in its last slot) and an index `j` from
//! the right factor (contraction in its first slot), weighted by `wt[i][j]`.

use std::collections::HashMap;

use crate::blade::Blade;
use crate::error::{Error, Result};
use crate::form::Form;
use crate::laurent::{Laurent, QLaurent};
use crate::linalg::Matrix;
use crate::poly::MultiPoly;
use crate::scalar::{Rational, Ring};

/// Constant antisymmetric bivector `w^{ij}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Bivector(Matrix<Rational>);

impl Bivector {
    pub fn new(m: Matrix<Rational>) -> Result<Self> {
        if !m.is_antisymmetric() {
            return Err(Error::NotAntisymmetric);
        }
        Ok(Bivector(m))
    }
    /// Bivector with the listed upper entries `w^{ij}` (0-based, `i < j`).
    pub fn from_entries(dim: usize, entries: &[(usize, usize, Rational)]) -> Result<Self> {
        let mut m = Matrix::zeros(dim, dim);
        for (i, j, v) in entries {
            if *i >= dim || *j >= dim {
                return Err(Error::IndexOutOfRange { index: (*i).max(*j) + 1, dim });
            }
            m.set(*i, *j, v.clone());
            m.set(*j, *i, -v);
        }
        Self::new(m)
    }
    pub fn dim(&self) -> usize {
        self.0.rows()
    }
    pub fn matrix(&self) -> &Matrix<Rational> {
        &self.0
    }
    pub fn get(&self, i: usize, j: usize) -> &Rational {
        self.0.get(i, j)
    }
    /// Entries lifted into another ring.
    pub fn lift<R: Ring>(&self) -> Matrix<R> {
        self.0.map(R::from_rational)
    }
}

pub type QForm = Form<QLaurent>;

fn bit_indices(mut bits: u64) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if bits == 0 {
            return None;
        }
        let i = bits.trailing_zeros() as usize;
        bits &= bits - 1;
        Some(i)
    })
}

/// Terms of `m(L_wt^k/k! (a (x) b))`, one form per `k`.
pub fn star_layers<R: Ring>(a: &Form<R>, b: &Form<R>, wt: &Matrix<R>) -> Vec<Form<R>> {
    let dim = a.dim();
    assert_eq!(dim, b.dim(), "product of forms in different dimensions");
    assert_eq!(wt.rows(), dim, "weight matrix has the wrong size");
    let dense: Vec<Option<R>> = (0..dim * dim)
        .map(|k| {
            let v = wt.get(k / dim, k % dim);
            (!v.is_zero()).then(|| v.clone())
        })
        .collect();
    let mut layer: HashMap<(Blade, Blade), R> = HashMap::new();
    for (x, c) in a.terms() {
        for (y, d) in b.terms() {
            let v = c.mul(d);
            if !v.is_zero() {
                layer.entry((x, y)).or_insert_with(R::zero).add_assign(&v);
            }
        }
    }
    let mut out = Vec::new();
    let mut n: u32 = 0;
    let mut inv_fact = Rational::one();
    while !layer.is_empty() {
        let f = R::from_rational(&inv_fact);
        let mut part = Form::zero(dim);
        for ((x, y), c) in &layer {
            if let Some((xy, s)) = x.wedge(*y) {
                let v = c.mul(&f);
                part.add_term(xy, &if s < 0 { v.neg() } else { v });
            }
        }
        out.push(part);
        let mut next: HashMap<(Blade, Blade), R> = HashMap::new();
        for ((x, y), c) in &layer {
            for i in bit_indices(x.bits()) {
                let (x2, s1) = x.remove_last(i).expect("index present");
                for j in bit_indices(y.bits()) {
                    let Some(wij) = &dense[i * dim + j] else { continue };
                    let (y2, s2) = y.remove_first(j).expect("index present");
                    let v = c.mul(wij);
                    let v = if s1 * s2 < 0 { v.neg() } else { v };
                    next.entry((x2, y2)).or_insert_with(R::zero).add_assign(&v);
                }
            }
        }
        next.retain(|_, c| !c.is_zero());
        layer = next;
        n += 1;
        inv_fact = inv_fact / Rational::from_int(n as i64);
    }
    out
}

/// `m(exp(L_wt)(a (x) b))` for an arbitrary square weight matrix.
pub fn star_product<R: Ring>(a: &Form<R>, b: &Form<R>, wt: &Matrix<R>) -> Form<R> {
    let mut out = Form::zero(a.dim());
    for part in star_layers(a, b, wt) {
        out.add_assign(&part);
    }
    out
}

/// Split a form by powers of `h`.
fn h_parts<R: Ring>(a: &Form<Laurent<R>>) -> std::collections::BTreeMap<i64, Form<R>> {
    let mut parts: std::collections::BTreeMap<i64, Form<R>> = std::collections::BTreeMap::new();
    for (bl, c) in a.terms() {
        for (e, v) in c.terms() {
            parts.entry(e).or_insert_with(|| Form::zero(a.dim())).add_term(bl, v);
        }
    }
    parts
}

fn check_dims(dim: usize, forms: &[usize]) -> Result<()> {
    match forms.iter().find(|&&d| d != dim) {
        Some(d) => Err(Error::DimensionMismatch(format!("form of dimension {d} with a {dim}-dimensional bivector"))),
        None => Ok(()),
    }
}

/// `a ^_h b` for a bivector with entries in any coefficient ring `R`.
pub fn quantum_wedge_over<R: Ring>(a: &Form<Laurent<R>>, b: &Form<Laurent<R>>, w: &Matrix<R>) -> Form<Laurent<R>> {
    let mut out = Form::zero(a.dim());
    let bp = h_parts(b);
    for (p, ap) in h_parts(a) {
        for (q, bq) in &bp {
            for (k, layer) in star_layers(&ap, bq, w).into_iter().enumerate() {
                for (bl, v) in layer.terms() {
                    out.add_term(bl, &Laurent::monomial(p + q + k as i64, v.clone()));
                }
            }
        }
    }
    out
}

/// `a ^_h b` for a constant bivector.
pub fn quantum_wedge(a: &QForm, b: &QForm, w: &Bivector) -> Result<QForm> {
    check_dims(w.dim(), &[a.dim(), b.dim()])?;
    Ok(quantum_wedge_over(a, b, w.matrix()))
}

/// The same product with an arbitrary square matrix in place of `w`.
pub fn quantum_wedge_phi(a: &QForm, b: &QForm, phi: &Matrix<Rational>) -> Result<QForm> {
    if !phi.is_square() {
        return Err(Error::DimensionMismatch("weight matrix is not square".into()));
    }
    check_dims(phi.rows(), &[a.dim(), b.dim()])?;
    Ok(quantum_wedge_over(a, b, phi))
}

/// `a ^_w b`, the product at `h = 1`, for forms over any ring.
pub fn wedge_w<R: Ring>(a: &Form<R>, b: &Form<R>, w: &Matrix<R>) -> Form<R> {
    star_product(a, b, w)
}

/// Multiparameter product with weight `sum_j h_j w_j`; `h_j` is variable `j`.
pub fn quantum_wedge_multi(
    a: &Form<MultiPoly<Rational>>,
    b: &Form<MultiPoly<Rational>>,
    ws: &[Bivector],
) -> Result<Form<MultiPoly<Rational>>> {
    let dim = a.dim();
    check_dims(dim, &[b.dim()])?;
    check_dims(dim, &ws.iter().map(|w| w.dim()).collect::<Vec<_>>())?;
    let wt = Matrix::from_fn(dim, dim, |i, j| {
        let mut acc = MultiPoly::zero();
        for (k, w) in ws.iter().enumerate() {
            acc.add_assign(&MultiPoly::var(k).scale_by(w.get(i, j)));
        }
        acc
    });
    Ok(star_product(a, b, &wt))
}

/// Substitute `h_j -> c_j h` in a multiparameter form.
pub fn specialize_multi(f: &Form<MultiPoly<Rational>>, c: &[Rational]) -> QForm {
    let vals: Vec<QLaurent> = c.iter().map(|cj| QLaurent::monomial(1, cj.clone())).collect();
    f.map(|p| p.substitute(&vals, |x| QLaurent::constant(x.clone())))
}

/// Embed a classical form with rational coefficients.
pub fn lift_form<R: Ring>(f: &Form<Rational>) -> Form<Laurent<R>> {
    f.map(|c| Laurent::constant(R::from_rational(c)))
}

/// Total degree where `h` counts 2: homogeneous, mixed, or the zero form.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TotalDegree {
    Homogeneous(i64),
    Mixed,
    Zero,
}

pub fn total_degree<R: Ring>(f: &Form<Laurent<R>>) -> TotalDegree {
    let mut seen: Option<i64> = None;
    for (b, c) in f.terms() {
        for e in c.exponents() {
            let d = b.grade() as i64 + 2 * e;
            match seen {
                None => seen = Some(d),
                Some(s) if s != d => return TotalDegree::Mixed,
                _ => {}
            }
        }
    }
    seen.map_or(TotalDegree::Zero, TotalDegree::Homogeneous)
}

/// Part of total degree exactly `k`.
pub fn total_degree_part<R: Ring>(f: &Form<Laurent<R>>, k: i64) -> Form<Laurent<R>> {
    Form::from_terms(
        f.dim(),
        f.terms().map(|(b, c)| {
            let keep = Laurent::from_terms(
                c.terms().filter(|(e, _)| b.grade() as i64 + 2 * e == k).map(|(e, x)| (e, x.clone())),
            );
            (b, keep)
        }),
    )
}

/// Drop every term of total degree above `n`.
pub fn truncate_total_degree<R: Ring>(f: &Form<Laurent<R>>, n: i64) -> Form<Laurent<R>> {
    Form::from_terms(
        f.dim(),
        f.terms().map(|(b, c)| {
            let keep = Laurent::from_terms(
                c.terms().filter(|(e, _)| b.grade() as i64 + 2 * e <= n).map(|(e, x)| (e, x.clone())),
            );
            (b, keep)
        }),
    )
}

/// Smallest total degree of any term.
pub fn min_total_degree<R: Ring>(f: &Form<Laurent<R>>) -> Option<i64> {
    f.terms().flat_map(|(b, c)| c.exponents().map(move |e| b.grade() as i64 + 2 * e).collect::<Vec<_>>()).min()
}

/// Whether every `h` exponent is non-negative.
pub fn is_polynomial_form<R: Ring>(f: &Form<Laurent<R>>) -> bool {
    f.terms().all(|(_, c)| c.is_polynomial())
}

/// Multiply every coefficient by `h^k`.
pub fn shift_h<R: Ring>(f: &Form<Laurent<R>>, k: i64) -> Form<Laurent<R>> {
    f.map(|c| c.shift(k))
}

/// `a ^_h a ^_h ... ^_h a` (`k` factors, `k = 0` gives 1).
pub fn quantum_power_over<R: Ring>(a: &Form<Laurent<R>>, k: u32, w: &Matrix<R>) -> Form<Laurent<R>> {
    let mut acc = Form::one(a.dim());
    for _ in 0..k {
        acc = quantum_wedge_over(a, &acc, w);
    }
    acc
}

pub fn quantum_power(a: &QForm, k: u32, w: &Bivector) -> Result<QForm> {
    check_dims(w.dim(), &[a.dim()])?;
    Ok(quantum_power_over(a, k, w.matrix()))
}

/// `sum_k a^k_h / k!` truncated at total degree `n`. Needs every term of `a`
/// to have positive total degree so that the series is finite.
pub fn quantum_exp_over<R: Ring>(a: &Form<Laurent<R>>, w: &Matrix<R>, n: i64) -> Result<Form<Laurent<R>>> {
    if let Some(m) = min_total_degree(a) {
        if m <= 0 {
            return Err(Error::NotRepresentable(
                "exponential of an element with terms of non-positive total degree".into(),
            ));
        }
    }
    let mut out = Form::one(a.dim());
    let mut term = Form::one(a.dim());
    let mut k = 0i64;
    loop {
        k += 1;
        term = truncate_total_degree(&quantum_wedge_over(&term, a, w), n)
            .map(|c| c.scale(&Rational::from_int(k).recip().expect("k > 0")));
        if term.is_zero() {
            break;
        }
        out.add_assign(&term);
    }
    Ok(truncate_total_degree(&out, n))
}

pub fn quantum_exp(a: &QForm, w: &Bivector, n: i64) -> Result<QForm> {
    check_dims(w.dim(), &[a.dim()])?;
    quantum_exp_over(a, w.matrix(), n)
}

/// Moyal product of polynomial functions: derivatives replace contractions.
pub fn moyal_product(
    u: &MultiPoly<QLaurent>,
    v: &MultiPoly<QLaurent>,
    w: &Bivector,
) -> MultiPoly<QLaurent> {
    let dim = w.dim();
    let hw: Vec<(usize, usize, QLaurent)> = (0..dim)
        .flat_map(|i| (0..dim).map(move |j| (i, j)))
        .filter(|&(i, j)| !w.get(i, j).is_zero())
        .map(|(i, j)| (i, j, QLaurent::monomial(1, w.get(i, j).clone())))
        .collect();
    let mut layer: HashMap<(Vec<u32>, Vec<u32>), QLaurent> = HashMap::new();
    for (a, c) in u.terms() {
        for (b, d) in v.terms() {
            layer.entry((a.clone(), b.clone())).or_insert_with(QLaurent::zero).add_assign(&c.mul(d));
        }
    }
    let mut out = MultiPoly::zero();
    let mut n = 0i64;
    let mut inv_fact = Rational::one();
    while !layer.is_empty() {
        for ((a, b), c) in &layer {
            let m = MultiPoly::monomial(a.clone(), QLaurent::one()).mul(&MultiPoly::monomial(b.clone(), c.scale(&inv_fact)));
            out.add_assign(&m);
        }
        let mut next: HashMap<(Vec<u32>, Vec<u32>), QLaurent> = HashMap::new();
        for ((a, b), c) in &layer {
            for (i, j, wij) in &hw {
                let ai = a.get(*i).copied().unwrap_or(0);
                let bj = b.get(*j).copied().unwrap_or(0);
                if ai == 0 || bj == 0 {
                    continue;
                }
                let mut a2 = a.clone();
                a2[*i] -= 1;
                let mut b2 = b.clone();
                b2[*j] -= 1;
                let f = Rational::from_int(ai as i64 * bj as i64);
                let e = next.entry((trim(a2), trim(b2))).or_insert_with(QLaurent::zero);
                e.add_assign(&c.mul(wij).scale(&f));
            }
        }
        next.retain(|_, c| !c.is_zero());
        layer = next;
        n += 1;
        inv_fact = inv_fact / Rational::from_int(n);
    }
    out
}

fn trim(mut e: Vec<u32>) -> Vec<u32> {
    while e.last() == Some(&0) {
        e.pop();
    }
    e
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::q;
    use crate::test_support::*;
    use proptest::prelude::*;

    /// Independent evaluation of the product straight from the sum over
    /// index sequences, without the layered recursion.
    fn oracle(a: &QForm, b: &QForm, w: &Bivector) -> QForm {
        let dim = a.dim();
        let mut out = QForm::zero(dim);
        fn rec(
            dim: usize,
            depth: u32,
            left: &QForm,
            right: &QForm,
            coef: &QLaurent,
            w: &Bivector,
            out: &mut QForm,
        ) {
            let f = coef.scale(&Rational::factorial(depth).recip().unwrap());
            out.add_assign(&left.wedge(right).scale(&f));
            for i in 0..dim {
                for j in 0..dim {
                    let wij = w.get(i, j);
                    if wij.is_zero() {
                        continue;
                    }
                    let l = left.insert_last(i);
                    let r = right.insert_first(j);
                    if l.is_zero() || r.is_zero() {
                        continue;
                    }
                    let c = coef.mul(&QLaurent::monomial(1, wij.clone()));
                    rec(dim, depth + 1, &l, &r, &c, w, out);
                }
            }
        }
        rec(dim, 0, a, b, &QLaurent::one(), w, &mut out);
        out
    }

    #[test]
    fn two_dimensional_values() {
        let w = standard_bivector(1);
        let e1 = qbasis(2, 0);
        let e2 = qbasis(2, 1);
        let omega = e1.wedge(&e2);
        let h = QForm::scalar(2, QLaurent::h());
        assert_eq!(quantum_wedge(&e1, &e2, &w).unwrap(), omega.sub(&h));
        assert_eq!(quantum_wedge(&e2, &e1, &w).unwrap(), omega.neg().add(&h));
        let h2 = QForm::scalar(2, QLaurent::h_pow(2));
        let two_h_omega = omega.scale(&QLaurent::monomial(1, q(2, 1)));
        assert_eq!(quantum_wedge(&omega, &omega, &w).unwrap(), two_h_omega.sub(&h2));
    }

    #[test]
    fn mismatched_dimension_is_an_error() {
        let w = standard_bivector(1);
        assert!(matches!(
            quantum_wedge(&qbasis(4, 0), &qbasis(4, 1), &w),
            Err(Error::DimensionMismatch(_))
        ));
    }

    #[test]
    fn moyal_on_coordinates() {
        let w = standard_bivector(1);
        let x1 = MultiPoly::<QLaurent>::var(0);
        let x2 = MultiPoly::<QLaurent>::var(1);
        let hw = MultiPoly::constant(QLaurent::h().neg());
        assert_eq!(moyal_product(&x1, &x2, &w), x1.mul(&x2).add(&hw));
        assert_eq!(moyal_product(&x2, &x1, &w), x1.mul(&x2).sub(&hw));
    }

    #[test]
    fn exponential_truncates() {
        let w = standard_bivector(1);
        let omega = qmono(2, &[0, 1]);
        let e = quantum_exp(&omega, &w, 4).unwrap();
        // 1 + w + (2hw - h^2)/2, nothing beyond total degree 4
        let expect = QForm::one(2)
            .add(&omega)
            .add(&omega.scale(&QLaurent::h()))
            .add(&QForm::scalar(2, QLaurent::monomial(2, q(-1, 2))));
        assert_eq!(e, expect);
        assert!(quantum_exp(&QForm::one(2), &w, 4).is_err());
    }

    #[test]
    fn total_degree_classification() {
        let omega = qmono(2, &[0, 1]);
        let h = QForm::scalar(2, QLaurent::h());
        assert_eq!(total_degree(&omega.sub(&h)), TotalDegree::Homogeneous(2));
        assert_eq!(total_degree(&omega.add(&QForm::one(2))), TotalDegree::Mixed);
        assert_eq!(total_degree(&QForm::zero(2)), TotalDegree::Zero);
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]

        #[test]
        fn layered_product_matches_oracle(seed in 0u64..10_000, dim in 2usize..5) {
            let mut rng = crate::sample::rng(seed);
            let w = crate::sample::bivector(&mut rng, dim);
            let a = crate::sample::qform(&mut rng, dim, 3);
            let b = crate::sample::qform(&mut rng, dim, 3);
            prop_assert_eq!(quantum_wedge(&a, &b, &w).unwrap(), oracle(&a, &b, &w));
        }

        #[test]
        fn associative_for_any_square_matrix(seed in 0u64..10_000, dim in 2usize..5) {
            let mut rng = crate::sample::rng(seed);
            let phi = crate::sample::square_matrix(&mut rng, dim);
            let a = crate::sample::qform(&mut rng, dim, 2);
            let b = crate::sample::qform(&mut rng, dim, 2);
            let c = crate::sample::qform(&mut rng, dim, 2);
            let l = quantum_wedge_phi(&quantum_wedge_phi(&a, &b, &phi).unwrap(), &c, &phi).unwrap();
            let r = quantum_wedge_phi(&a, &quantum_wedge_phi(&b, &c, &phi).unwrap(), &phi).unwrap();
            prop_assert_eq!(l, r);
        }

        #[test]
        fn moyal_is_associative(seed in 0u64..10_000) {
            let mut rng = crate::sample::rng(seed);
            let w = crate::sample::bivector(&mut rng, 2);
            let u = crate::sample::polyfn(&mut rng, 2, 2);
            let v = crate::sample::polyfn(&mut rng, 2, 2);
            let x = crate::sample::polyfn(&mut rng, 2, 2);
            let lift = |p: &MultiPoly<Rational>| p.map(|c| QLaurent::constant(c.clone()));
            let (u, v, x) = (lift(&u), lift(&v), lift(&x));
            prop_assert_eq!(
                moyal_product(&moyal_product(&u, &v, &w), &x, &w),
                moyal_product(&u, &moyal_product(&v, &x, &w), &w)
            );
        }
    }
}
