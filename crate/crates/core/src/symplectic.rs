//! Symplectic linear algebra and the Lefschetz-type operators on
//! `Lambda(V*)[h, 1/h]`.

use std::fmt;

use crate::blade::Blade;
use crate::error::{Error, Result};
use crate::form::Form;
use crate::laurent::{Mode, QLaurent};
use crate::linalg::{factor_rational, Matrix, Spectrum};
use crate::poly::Poly;
use crate::quantum::{is_polynomial_form, quantum_wedge, total_degree, Bivector, QForm, TotalDegree};
use crate::scalar::{Rational, Ring};

/// Nondegenerate antisymmetric `omega_{kl}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymplecticForm {
    m: Matrix<Rational>,
}

impl SymplecticForm {
    pub fn new(m: Matrix<Rational>) -> Result<Self> {
        if !m.is_antisymmetric() {
            return Err(Error::NotAntisymmetric);
        }
        if m.rows() % 2 == 1 {
            return Err(Error::OddDimension(m.rows()));
        }
        if m.det()?.is_zero() {
            return Err(Error::Degenerate);
        }
        Ok(SymplecticForm { m })
    }
    /// `sum_a e^{2a-1} ^ e^{2a}` in dimension `2n`.
    pub fn standard(n: usize) -> Self {
        let mut m = Matrix::zeros(2 * n, 2 * n);
        for a in 0..n {
            m.set(2 * a, 2 * a + 1, Rational::one());
            m.set(2 * a + 1, 2 * a, Rational::from_int(-1));
        }
        SymplecticForm { m }
    }
    pub fn dim(&self) -> usize {
        self.m.rows()
    }
    /// Half the dimension.
    pub fn n(&self) -> usize {
        self.m.rows() / 2
    }
    pub fn matrix(&self) -> &Matrix<Rational> {
        &self.m
    }
    /// The 2-form `sum_{k<l} omega_{kl} e^k ^ e^l`.
    pub fn form(&self) -> QForm {
        let d = self.dim();
        let mut f = QForm::zero(d);
        for k in 0..d {
            for l in k + 1..d {
                let b = Blade::from_sorted(&[k, l]).expect("k < l");
                f.add_term(b, &QLaurent::constant(self.m.get(k, l).clone()));
            }
        }
        f
    }
    /// `omega^n / n!`.
    pub fn volume(&self) -> QForm {
        let om = self.form();
        let mut v = QForm::one(self.dim());
        for _ in 0..self.n() {
            v = v.wedge(&om);
        }
        v.scale_q(&Rational::factorial(self.n() as u32).recip().expect("nonzero"))
    }
}

/// The inverse matrix of `omega` as a bivector.
pub fn bivector_of(omega: &SymplecticForm) -> Result<Bivector> {
    Bivector::new(omega.m.inverse()?)
}

/// `phi^sharp`, defined by `omega(v, phi^sharp) = phi(v)`.
pub fn sharp(omega: &SymplecticForm, phi: &[Rational]) -> Result<Vec<Rational>> {
    if phi.len() != omega.dim() {
        return Err(Error::DimensionMismatch("covector length".into()));
    }
    Ok(omega.m.inverse()?.mul_vec(phi))
}

/// `omega(., v)` as a covector, inverse to `sharp`.
pub fn flat(omega: &SymplecticForm, v: &[Rational]) -> Result<Vec<Rational>> {
    if v.len() != omega.dim() {
        return Err(Error::DimensionMismatch("vector length".into()));
    }
    Ok(omega.m.mul_vec(v))
}

/// `sum_{i<j} w^{ij} (e_j -| (e_i -| a))`, so `e^i ^ e^j` goes to `w^{ij}`.
pub fn contract_with<R: Ring>(w: &Matrix<R>, a: &Form<R>) -> Form<R> {
    let d = a.dim();
    let mut out = Form::zero(d);
    for i in 0..d {
        let ai = a.insert_first(i);
        if ai.is_zero() {
            continue;
        }
        for j in i + 1..d {
            let wij = w.get(i, j);
            if wij.is_zero() {
                continue;
            }
            out.add_assign(&ai.insert_first(j).map(|c| wij.mul(c)));
        }
    }
    out
}

fn same_dim(a: &QForm, d: usize) -> Result<()> {
    if a.dim() != d {
        return Err(Error::DimensionMismatch(format!("form of dimension {} where {d} is expected", a.dim())));
    }
    Ok(())
}

pub fn contract_bivector(w: &Bivector, a: &QForm) -> Result<QForm> {
    same_dim(a, w.dim())?;
    Ok(contract_with(&w.lift(), a))
}

pub fn apply_l(a: &QForm, omega: &SymplecticForm) -> Result<QForm> {
    same_dim(a, omega.dim())?;
    Ok(omega.form().wedge(a))
}

/// `sum_j e^j ^ (e_j -| a)`.
pub fn apply_k(a: &QForm) -> Result<QForm> {
    if a.grade().is_none() && !a.is_zero() {
        return Err(Error::MixedDegree);
    }
    let mut out = QForm::zero(a.dim());
    for j in 0..a.dim() {
        out.add_assign(&QForm::basis(a.dim(), j).wedge(&a.insert_first(j)));
    }
    Ok(out)
}

pub fn apply_lstar(a: &QForm, omega: &SymplecticForm) -> Result<QForm> {
    contract_bivector(&bivector_of(omega)?, a)
}

/// `(n - k) a` on forms of degree `k`.
pub fn apply_a(a: &QForm, omega: &SymplecticForm) -> Result<QForm> {
    same_dim(a, omega.dim())?;
    if a.is_zero() {
        return Ok(a.clone());
    }
    let k = a.grade().ok_or(Error::MixedDegree)?;
    Ok(a.scale_q(&Rational::from_int(omega.n() as i64 - k as i64)))
}

/// `omega ^_h a`.
pub fn apply_lh(a: &QForm, omega: &SymplecticForm) -> Result<QForm> {
    quantum_wedge(&omega.form(), a, &bivector_of(omega)?)
}

/// `(n - k) a` on elements of total degree `k`.
pub fn apply_ah(a: &QForm, omega: &SymplecticForm) -> Result<QForm> {
    same_dim(a, omega.dim())?;
    match total_degree(a) {
        TotalDegree::Zero => Ok(a.clone()),
        TotalDegree::Mixed => Err(Error::MixedDegree),
        TotalDegree::Homogeneous(k) => Ok(a.scale_q(&Rational::from_int(omega.n() as i64 - k))),
    }
}

/// Symplectic Hodge star: `b ^ *a = det(w(b_i, a_j)) omega^n/n!` for all `b`,
/// extended by `*(h^p a) = h^{-p} *a`.
pub fn symplectic_star(a: &QForm, omega: &SymplecticForm) -> Result<QForm> {
    same_dim(a, omega.dim())?;
    let d = omega.dim();
    let w = bivector_of(omega)?;
    let full = Blade::ONE.complement(d);
    let c_vol = omega.volume().coeff(full).coeff(0);
    let mut out = QForm::zero(d);
    for (bj, c) in a.terms() {
        let c = c.invert_h();
        let jx = bj.indices();
        for bi in Blade::of_grade(d, jx.len()) {
            let ix = bi.indices();
            let pairing = Matrix::from_fn(ix.len(), jx.len(), |r, s| w.get(ix[r], jx[s]).clone());
            let lam = pairing.det()?;
            if lam.is_zero() {
                continue;
            }
            let comp = bi.complement(d);
            let (_, s) = bi.wedge(comp).expect("disjoint");
            let v = &lam * &c_vol;
            let v = if s < 0 { -v } else { v };
            out.add_term(comp, &c.scale(&v));
        }
    }
    Ok(out)
}

/// `-* L_h *`. In polynomial mode a result with negative powers of `h` is an error.
pub fn apply_lhstar(a: &QForm, omega: &SymplecticForm, mode: Mode) -> Result<QForm> {
    let s = symplectic_star(a, omega)?;
    let r = symplectic_star(&apply_lh(&s, omega)?, omega)?.neg();
    if mode == Mode::Polynomial && !is_polynomial_form(&r) {
        return Err(Error::NegativePower);
    }
    Ok(r)
}

/// Basis `h^p e^I` for every blade and every `p` in `ps`.
pub fn laurent_basis(dim: usize, ps: &[i64]) -> Vec<QForm> {
    let mut v = Vec::new();
    for &p in ps {
        for b in Blade::all(dim) {
            v.push(QForm::blade(dim, b, QLaurent::h_pow(p)));
        }
    }
    v
}

/// Check `lhs(x) == rhs(x)` on every element of a basis.
pub fn operator_identity(
    basis: &[QForm],
    lhs: impl Fn(&QForm) -> Result<QForm>,
    rhs: impl Fn(&QForm) -> Result<QForm>,
) -> Result<bool> {
    for x in basis {
        if lhs(x)? != rhs(x)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `[P, Q](x) = P(Q(x)) - Q(P(x))`.
pub fn commutator(
    p: &impl Fn(&QForm) -> Result<QForm>,
    q: &impl Fn(&QForm) -> Result<QForm>,
    x: &QForm,
) -> Result<QForm> {
    Ok(p(&q(x)?)?.sub(&q(&p(x)?)?))
}

/// Coefficients `(c0, c1, c2)` with `L_h = c0 L + c1 h K + c2 h^2 iota_w`.
pub fn decomposition_report(n: usize) -> Result<(Rational, Rational, Rational)> {
    let omega = SymplecticForm::standard(n);
    let d = 2 * n;
    let mut rows: Vec<Vec<Rational>> = Vec::new();
    let mut rhs: Vec<Rational> = Vec::new();
    for x in laurent_basis(d, &[0]) {
        let lh = apply_lh(&x, &omega)?;
        let parts = [
            apply_l(&x, &omega)?,
            apply_k(&x)?.map(|c| c.shift(1)),
            apply_lstar(&x, &omega)?.map(|c| c.shift(2)),
        ];
        let mut keys: Vec<(Blade, i64)> = Vec::new();
        for f in parts.iter().chain(std::iter::once(&lh)) {
            for (b, c) in f.terms() {
                keys.extend(c.exponents().map(|e| (b, e)));
            }
        }
        keys.sort();
        keys.dedup();
        for (b, e) in keys {
            rows.push(parts.iter().map(|f| f.coeff(b).coeff(e)).collect());
            rhs.push(lh.coeff(b).coeff(e));
        }
    }
    let m = Matrix::from_rows(rows)?;
    let (x, free) = m.solve(&rhs)?;
    if free > 0 {
        return Err(Error::NotRepresentable("decomposition constants are not unique".into()));
    }
    Ok((x[0].clone(), x[1].clone(), x[2].clone()))
}

/// Constants `(a, b)` with `L_h^* = a h^{-2} L_h + b h^{-1}` on the full basis.
pub fn relation_report(n: usize) -> Result<(Rational, Rational)> {
    let omega = SymplecticForm::standard(n);
    let mut rows = Vec::new();
    let mut rhs = Vec::new();
    for x in laurent_basis(2 * n, &[0]) {
        let s = apply_lhstar(&x, &omega, Mode::Laurent)?;
        let parts = [apply_lh(&x, &omega)?.map(|c| c.shift(-2)), x.map(|c| c.shift(-1))];
        let mut keys: Vec<(Blade, i64)> = Vec::new();
        for f in parts.iter().chain(std::iter::once(&s)) {
            for (b, c) in f.terms() {
                keys.extend(c.exponents().map(|e| (b, e)));
            }
        }
        keys.sort();
        keys.dedup();
        for (b, e) in keys {
            rows.push(parts.iter().map(|f| f.coeff(b).coeff(e)).collect());
            rhs.push(s.coeff(b).coeff(e));
        }
    }
    let (x, free) = Matrix::from_rows(rows)?.solve(&rhs)?;
    if free > 0 {
        return Err(Error::NotRepresentable("relation constants are not unique".into()));
    }
    Ok((x[0].clone(), x[1].clone()))
}

/// The sign `s` with `[L, iota_w] = s (K - n)` on every basis blade, if one exists.
pub fn lefschetz_commutator_sign(n: usize) -> Result<Option<i64>> {
    let omega = SymplecticForm::standard(n);
    let mut sign = None;
    for x in laurent_basis(2 * n, &[0]) {
        let c = commutator(&|y: &QForm| apply_l(y, &omega), &|y: &QForm| apply_lstar(y, &omega), &x)?;
        let k = x.grade().unwrap_or(0) as i64;
        let base = x.scale_q(&Rational::from_int(k - n as i64));
        let s = if c == base {
            1
        } else if c == base.neg() {
            -1
        } else {
            return Ok(None);
        };
        if base.is_zero() {
            continue;
        }
        match sign {
            None => sign = Some(s),
            Some(t) if t != s => return Ok(None),
            _ => {}
        }
    }
    Ok(sign)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Parity {
    Even,
    Odd,
}

/// Matrix of a linear operator on an enumerated basis of `h^p e^I` elements.
#[derive(Clone, Debug, PartialEq)]
pub struct LinOp {
    pub basis: Vec<(i64, Blade)>,
    pub matrix: Matrix<Rational>,
}

impl LinOp {
    pub fn char_poly(&self) -> Result<Poly<Rational>> {
        self.matrix.charpoly()
    }
    pub fn spectrum(&self) -> Result<Spectrum> {
        Ok(factor_rational(&self.char_poly()?))
    }
    pub fn det(&self) -> Result<Rational> {
        self.matrix.det()
    }
}

impl fmt::Display for LinOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<String> = self
            .basis
            .iter()
            .map(|(p, b)| {
                let h = if *p == 0 { String::new() } else { format!("h^{p}*") };
                format!("{h}{b}")
            })
            .collect();
        write!(f, "basis [{}]\n{:?}", names.join(", "), self.matrix)
    }
}

/// Basis `h^{-k} e^I`, `|I| = 2k` (even) or `2k + 1` (odd), lexicographic, `k` ascending.
pub fn lefschetz_basis(n: usize, parity: Parity) -> Vec<(i64, Blade)> {
    let off = match parity {
        Parity::Even => 0,
        Parity::Odd => 1,
    };
    let mut v = Vec::new();
    for k in 0..=n {
        let g = 2 * k + off;
        if g > 2 * n {
            break;
        }
        v.extend(Blade::of_grade(2 * n, g).into_iter().map(|b| (-(k as i64), b)));
    }
    v
}

/// Matrix of `M = h^{-1} L_h` on total degree 0 (even) or 1 (odd).
pub fn lefschetz_matrix(n: usize, parity: Parity) -> Result<LinOp> {
    let omega = SymplecticForm::standard(n);
    lefschetz_matrix_for(&omega, parity)
}

pub fn lefschetz_matrix_for(omega: &SymplecticForm, parity: Parity) -> Result<LinOp> {
    let d = omega.dim();
    let basis = lefschetz_basis(omega.n(), parity);
    let index: std::collections::HashMap<(i64, Blade), usize> =
        basis.iter().enumerate().map(|(k, key)| (*key, k)).collect();
    let mut m = Matrix::zeros(basis.len(), basis.len());
    for (col, (p, b)) in basis.iter().enumerate() {
        let x = QForm::blade(d, *b, QLaurent::h_pow(*p));
        let img = apply_lh(&x, omega)?;
        for (ib, c) in img.terms() {
            for (e, v) in c.terms() {
                let row = index.get(&(e - 1, ib)).ok_or_else(|| {
                    Error::NotRepresentable(format!("image term h^{} {ib} outside the basis", e - 1))
                })?;
                m.set(*row, col, v.clone());
            }
        }
    }
    Ok(LinOp { basis, matrix: m })
}

/// Outcome of the determinant recursion check.
#[derive(Clone, Debug, PartialEq)]
pub struct RecursionReport {
    pub depth: usize,
    /// `det(M_{j+1} + t) = det(M_j + (t+1))^2` for every level (or the mirrored form).
    pub step_identity: bool,
    /// `det(M_{k+1} + t) = det(M_1 + (t + k))^{2^k}` (or `t - k`).
    pub closed_form: bool,
    /// `det(M_{depth+1} + t)`.
    pub final_det: Poly<Rational>,
}

/// `det(M + t I)` as a polynomial in `t`.
pub fn shifted_det(m: &Matrix<Rational>) -> Result<Poly<Rational>> {
    // det(M + t) = (-1)^n charpoly(-M)(-t); computed directly to stay independent of charpoly
    let t = Matrix::from_fn(m.rows(), m.cols(), |i, j| {
        let a = Poly::constant(m.get(i, j).clone());
        if i == j {
            a.add(&Poly::x())
        } else {
            a
        }
    });
    t.det()
}

fn shift_poly(p: &Poly<Rational>, s: i64) -> Poly<Rational> {
    // p(t + s)
    let lin = Poly::new(vec![Rational::from_int(s), Rational::one()]);
    let mut acc = Poly::zero();
    for c in p.coeffs().iter().rev() {
        acc = acc.mul(&lin).add(&Poly::constant(c.clone()));
    }
    acc
}

/// Build `M_{j+1} = [[M_j, -I], [I, M_j + 2I]]` (or the mirrored
/// `[[M_j, I], [-I, M_j - 2I]]`) and test both determinant identities.
pub fn det_recursion_check(m1: &Matrix<Rational>, depth: usize, mirrored: bool) -> Result<RecursionReport> {
    if !m1.is_square() {
        return Err(Error::DimensionMismatch("M_1 must be square".into()));
    }
    if depth > 4 || m1.rows() << depth > 64 {
        return Err(Error::DimensionTooLarge { dim: m1.rows() << depth, max: 64 });
    }
    let (off, diag, unit) = if mirrored { (Rational::one(), -2, -1) } else { (Rational::from_int(-1), 2, 1) };
    let base = shifted_det(m1)?;
    let mut mj = m1.clone();
    let mut step_ok = true;
    let mut dj = base.clone();
    for _ in 0..depth {
        let s = mj.rows();
        let i = Matrix::<Rational>::identity(s);
        let next = Matrix::blocks(
            &mj,
            &i.scale(&off),
            &i.scale(&-&off),
            &mj.add(&i.scale(&Rational::from_int(diag))),
        );
        let dn = shifted_det(&next)?;
        let sq = shift_poly(&dj, unit);
        if dn != sq.mul(&sq) {
            step_ok = false;
        }
        mj = next;
        dj = dn;
    }
    let closed = shift_poly(&base, unit * depth as i64).pow(1 << depth);
    Ok(RecursionReport { depth, step_identity: step_ok, closed_form: closed == dj, final_det: dj })
}

/// Operators of the family `L_h(s, p) = X + s h H + h^2 Y + p h`,
/// `L_h^*(s, q) = Y + s h^{-1} H + h^{-2} X + q h^{-1}`, `A_h(r) = H + r - 2 deg_h`,
/// realized with `X = L`, `Y = iota_w`, `H = A`, or all three zero.
#[derive(Clone, Debug)]
pub struct FamilyOps {
    pub omega: SymplecticForm,
    pub sign: i64,
    pub p: Rational,
    pub q: Rational,
    pub r: Rational,
    pub zero_triple: bool,
}

impl FamilyOps {
    fn x(&self, a: &QForm) -> Result<QForm> {
        if self.zero_triple {
            return Ok(QForm::zero(a.dim()));
        }
        apply_l(a, &self.omega)
    }
    fn y(&self, a: &QForm) -> Result<QForm> {
        if self.zero_triple {
            return Ok(QForm::zero(a.dim()));
        }
        apply_lstar(a, &self.omega)
    }
    /// `A` extended linearly over form degree.
    fn hh(&self, a: &QForm) -> Result<QForm> {
        if self.zero_triple {
            return Ok(QForm::zero(a.dim()));
        }
        let n = self.omega.n() as i64;
        Ok(QForm::from_terms(
            a.dim(),
            a.terms().map(|(b, c)| (b, c.scale(&Rational::from_int(n - b.grade() as i64)))),
        ))
    }
    pub fn lh(&self, a: &QForm) -> Result<QForm> {
        let s = Rational::from_int(self.sign);
        Ok(self
            .x(a)?
            .add(&self.hh(a)?.map(|c| c.shift(1).scale(&s)))
            .add(&self.y(a)?.map(|c| c.shift(2)))
            .add(&a.map(|c| c.shift(1).scale(&self.p))))
    }
    pub fn lhstar(&self, a: &QForm) -> Result<QForm> {
        let s = Rational::from_int(self.sign);
        Ok(self
            .y(a)?
            .add(&self.hh(a)?.map(|c| c.shift(-1).scale(&s)))
            .add(&self.x(a)?.map(|c| c.shift(-2)))
            .add(&a.map(|c| c.shift(-1).scale(&self.q))))
    }
    pub fn ah(&self, a: &QForm) -> Result<QForm> {
        let hh = self.hh(a)?;
        let mut out = hh.add(&a.scale_q(&self.r));
        for (b, c) in a.terms() {
            let mut t = QLaurent::zero();
            for (e, v) in c.terms() {
                t.add_term(e, &v.scale(&Rational::from_int(-2 * e)));
            }
            out.add_term(b, &t);
        }
        Ok(out)
    }
    /// `[X, Y] = 0`, `[X, H] = 2X`, `[Y, H] = -2Y` for the three operators,
    /// checked on `h^p e^I` with `p` in `-1..=1`.
    pub fn g_relations(&self) -> Result<bool> {
        let basis = laurent_basis(self.omega.dim(), &[-1, 0, 1]);
        let x = |a: &QForm| self.lh(a);
        let y = |a: &QForm| self.lhstar(a);
        let h = |a: &QForm| self.ah(a);
        for b in &basis {
            let xl = x(b)?;
            let yl = y(b)?;
            if !commutator(&x, &y, b)?.is_zero()
                || commutator(&x, &h, b)? != xl.scale_q(&Rational::from_int(2))
                || commutator(&y, &h, b)? != yl.scale_q(&Rational::from_int(-2))
            {
                return Ok(false);
            }
        }
        Ok(true)
    }
    /// The constant `c` with `[A_h(r), h^{+-1}] = +-c h^{+-1}`, if one exists.
    pub fn h_weight(&self) -> Result<Option<Rational>> {
        let basis = laurent_basis(self.omega.dim(), &[-1, 0, 1]);
        let h = |a: &QForm| self.ah(a);
        let mut found: Option<Rational> = None;
        for sgn in [1i64, -1] {
            let m = |a: &QForm| Ok(a.map(|c| c.shift(sgn)));
            for b in &basis {
                let c = commutator(&h, &m, b)?;
                let mb = m(b)?;
                // c = sgn * k * mb
                let (bb, v) = match mb.terms().next() {
                    Some((bb, v)) => (bb, v.clone()),
                    None => continue,
                };
                let cv = c.coeff(bb);
                let e = v.max_exp().expect("nonzero");
                let k = &(&cv.coeff(e) / &v.coeff(e)) * &Rational::from_int(sgn);
                if c != mb.scale_q(&(&k * &Rational::from_int(sgn))) {
                    return Ok(None);
                }
                match &found {
                    None => found = Some(k),
                    Some(f) if *f != k => return Ok(None),
                    _ => {}
                }
            }
        }
        Ok(found)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::q;
    use crate::test_support::*;

    fn h(e: i64, c: i64) -> QLaurent {
        QLaurent::monomial(e, Rational::from_int(c))
    }

    #[test]
    fn bivector_and_musical_maps() {
        let om = SymplecticForm::standard(2);
        let w = bivector_of(&om).unwrap();
        assert_eq!(w, standard_bivector(2));
        assert_eq!(w.matrix().mul(om.matrix()).unwrap(), Matrix::identity(4));
        let om1 = SymplecticForm::standard(1);
        let e1 = [q(1, 1), q(0, 1)];
        assert_eq!(sharp(&om1, &e1).unwrap(), vec![q(0, 1), q(1, 1)]);
        assert_eq!(sharp(&om1, &[q(0, 1), q(1, 1)]).unwrap(), vec![q(-1, 1), q(0, 1)]);
        let phi = [q(3, 2), q(-7, 5)];
        assert_eq!(flat(&om1, &sharp(&om1, &phi).unwrap()).unwrap(), phi.to_vec());
        let sing = Matrix::from_rows(vec![vec![q(0, 1), q(0, 1)], vec![q(0, 1), q(0, 1)]]).unwrap();
        assert!(matches!(SymplecticForm::new(sing), Err(Error::Degenerate)));
    }

    #[test]
    fn contraction_values() {
        for n in 1..=3 {
            let om = SymplecticForm::standard(n);
            let w = bivector_of(&om).unwrap();
            let v = contract_bivector(&w, &om.form()).unwrap();
            assert_eq!(v, QForm::scalar(2 * n, h(0, -(n as i64))));
        }
        let om = SymplecticForm::standard(2);
        let w = bivector_of(&om).unwrap();
        let o2 = om.form().wedge(&om.form());
        assert_eq!(contract_bivector(&w, &o2).unwrap(), om.form().scale_q(&q(-2, 1)));
        assert_eq!(contract_bivector(&w, &qmono(4, &[0, 1])).unwrap(), QForm::scalar(4, h(0, -1)));
    }

    #[test]
    fn basic_operators() {
        let om = SymplecticForm::standard(1);
        let w12 = qmono(2, &[0, 1]);
        assert_eq!(apply_k(&w12).unwrap(), w12.scale_q(&q(2, 1)));
        assert_eq!(apply_a(&QForm::one(2), &om).unwrap(), QForm::scalar(2, h(0, 1)));
        assert_eq!(apply_l(&QForm::one(2), &om).unwrap(), w12);
        assert_eq!(apply_lh(&QForm::one(2), &om).unwrap(), w12);
        let expect = w12.scale(&h(1, 2)).sub(&QForm::scalar(2, h(2, 1)));
        assert_eq!(apply_lh(&w12, &om).unwrap(), expect);
        assert_eq!(apply_ah(&QForm::scalar(2, h(1, 1)), &om).unwrap(), QForm::scalar(2, h(1, -1)));
        assert!(apply_ah(&QForm::one(2).add(&w12), &om).is_err());
        assert!(apply_k(&QForm::one(2).add(&w12)).is_err());
    }

    #[test]
    fn star_values_and_square() {
        let om = SymplecticForm::standard(1);
        assert_eq!(symplectic_star(&QForm::one(2), &om).unwrap(), om.volume());
        assert_eq!(symplectic_star(&om.volume(), &om).unwrap(), QForm::one(2));
        assert_eq!(symplectic_star(&qbasis(2, 0), &om).unwrap(), qbasis(2, 0).neg());
        for n in 1..=3 {
            let om = SymplecticForm::standard(n);
            for x in laurent_basis(2 * n, &[0, 1]) {
                let ss = symplectic_star(&symplectic_star(&x, &om).unwrap(), &om).unwrap();
                assert_eq!(ss, x);
            }
        }
    }

    #[test]
    fn polynomial_mode_rejects_inverse_powers() {
        let om = SymplecticForm::standard(1);
        assert!(matches!(apply_lhstar(&QForm::one(2), &om, Mode::Polynomial), Err(Error::NegativePower)));
    }

    #[test]
    fn lemma_constants() {
        for n in 1..=2 {
            assert_eq!(decomposition_report(n).unwrap(), (q(1, 1), q(1, 1), q(1, 1)));
            let (a, b) = relation_report(n).unwrap();
            assert_eq!(a, q(1, 1));
            assert_eq!(b, q(-2 * n as i64, 1));
        }
        assert_eq!(lefschetz_commutator_sign(1).unwrap(), Some(-1));
        assert_eq!(lefschetz_commutator_sign(2).unwrap(), Some(-1));
    }

    #[test]
    fn operator_identities() {
        for n in 1..=2 {
            let om = SymplecticForm::standard(n);
            let basis = laurent_basis(2 * n, &[0]);
            let l = |a: &QForm| apply_l(a, &om);
            let k = |a: &QForm| apply_k(a);
            let ls = |a: &QForm| apply_lstar(a, &om);
            assert!(operator_identity(&basis, |x| commutator(&l, &k, x), |x| Ok(l(x)?.scale_q(&q(-2, 1)))).unwrap());
            assert!(operator_identity(&basis, |x| commutator(&ls, &k, x), |x| Ok(ls(x)?.scale_q(&q(2, 1)))).unwrap());
            // K* := -*K* equals K - 2n
            let kstar = |x: &QForm| Ok(symplectic_star(&apply_k(&symplectic_star(x, &om)?)?, &om)?.neg());
            let expect = |x: &QForm| Ok(apply_k(x)?.sub(&x.scale_q(&q(2 * n as i64, 1))));
            assert!(operator_identity(&basis, kstar, expect).unwrap());
            // L* agrees with -*L*
            let lstar2 = |x: &QForm| Ok(symplectic_star(&apply_l(&symplectic_star(x, &om)?, &om)?, &om)?.neg());
            assert!(operator_identity(&basis, lstar2, ls).unwrap());
        }
    }

    #[test]
    fn lefschetz_matrices() {
        let odd = lefschetz_matrix(1, Parity::Odd).unwrap();
        assert_eq!(odd.matrix, Matrix::identity(2));
        let even = lefschetz_matrix(1, Parity::Even).unwrap();
        let expect = Matrix::from_rows(vec![vec![q(0, 1), q(-1, 1)], vec![q(1, 1), q(2, 1)]]).unwrap();
        assert_eq!(even.matrix, expect);
        assert_eq!(even.spectrum().unwrap().to_string(), "(t - 1)^2");
        for n in 1..=2 {
            for p in [Parity::Even, Parity::Odd] {
                let m = lefschetz_matrix(n, p).unwrap();
                assert_eq!(m.basis.len(), 1 << (2 * n - 1));
                assert!(!m.det().unwrap().is_zero());
                // spectrum is the single eigenvalue n
                let s = m.spectrum().unwrap();
                assert_eq!(s.rational_roots, vec![(q(n as i64, 1), 1 << (2 * n - 1))]);
            }
        }
    }

    #[test]
    fn recursion_examples() {
        let m = Matrix::from_rows(vec![vec![q(2, 1)]]).unwrap();
        let r = det_recursion_check(&m, 1, false).unwrap();
        assert!(r.step_identity && r.closed_form);
        assert_eq!(r.final_det, Poly::new(vec![q(9, 1), q(6, 1), q(1, 1)]));
        let z = Matrix::from_rows(vec![vec![q(0, 1)]]).unwrap();
        let r = det_recursion_check(&z, 2, false).unwrap();
        let t2 = Poly::new(vec![q(2, 1), q(1, 1)]);
        assert_eq!(r.final_det, t2.pow(4));
        let r = det_recursion_check(&m, 3, true).unwrap();
        assert!(r.step_identity && r.closed_form);
    }

    #[test]
    fn family_reproduces_lefschetz_operators() {
        for n in 1..=2usize {
            let om = SymplecticForm::standard(n);
            let ni = n as i64;
            let fam = FamilyOps {
                omega: om.clone(),
                sign: -1,
                p: q(ni, 1),
                q: q(-ni, 1),
                r: q(0, 1),
                zero_triple: false,
            };
            let basis = laurent_basis(2 * n, &[-1, 0, 1]);
            assert!(operator_identity(&basis, |x| fam.lh(x), |x| apply_lh(x, &om)).unwrap());
            assert!(operator_identity(&basis, |x| fam.lhstar(x), |x| apply_lhstar(x, &om, Mode::Laurent)).unwrap());
            let homog: Vec<QForm> = basis.clone();
            assert!(operator_identity(&homog, |x| fam.ah(x), |x| apply_ah(x, &om)).unwrap());
            assert!(fam.g_relations().unwrap());
            assert_eq!(fam.h_weight().unwrap(), Some(q(-2, 1)));
        }
        let zero = FamilyOps {
            omega: SymplecticForm::standard(1),
            sign: 1,
            p: q(0, 1),
            q: q(0, 1),
            r: q(0, 1),
            zero_triple: true,
        };
        assert!(zero.lh(&QForm::one(2)).unwrap().is_zero());
        assert!(zero.g_relations().unwrap());
    }
}
