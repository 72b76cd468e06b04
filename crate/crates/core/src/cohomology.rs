//! Exact cohomology of truncated torus complexes, the quantum integral and
//! its Stokes property.

use std::collections::BTreeMap;
use std::fmt;

use crate::blade::Blade;
use crate::error::{Error, Result};
use crate::form::Form;
use crate::function::FourierFn;
use crate::laurent::{Laurent, Mode};
use crate::linalg::Matrix;
use crate::poisson::{exterior_d, fixtures, koszul_delta, quantum_d, PoissonField, TorusForm};
use crate::quantum::QForm;
use crate::scalar::{Gaussian, Rational, Ring};
use crate::symplectic::{contract_bivector, bivector_of, SymplecticForm};

/// Models a complex can be built on.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ComplexModel {
    /// Flat torus `T^{2n}` with Fourier modes of sup norm at most `truncation`.
    Torus { n: usize, truncation: i32 },
    /// Polynomial coefficients on `R^{2n}`; not a torus function space.
    Flat { n: usize },
}

/// All mode vectors in `[-t, t]^dim`.
pub fn torus_modes(dim: usize, t: i32) -> Vec<Vec<i32>> {
    let mut out = vec![vec![]];
    for _ in 0..dim {
        out = out
            .into_iter()
            .flat_map(|v| {
                (-t..=t).map(move |k| {
                    let mut w = v.clone();
                    w.push(k);
                    w
                })
            })
            .collect();
    }
    out
}

/// One Fourier mode of the complex; `d` and `delta` preserve modes for constant `w`.
#[derive(Clone, Debug)]
pub struct ModeBlock {
    pub mode: Vec<i32>,
    /// `d` from form degree `g` to `g + 1`.
    pub d: Vec<Matrix<Gaussian>>,
    /// `delta` from form degree `g` to `g - 1` (index `g`; index 0 is empty).
    pub delta: Vec<Matrix<Gaussian>>,
}

#[derive(Clone, Debug)]
pub struct TruncatedComplex {
    pub n: usize,
    pub truncation: i32,
    pub mode: Mode,
    pub blocks: Vec<ModeBlock>,
}

fn torus_blade_form(dim: usize, k: &[i32], b: Blade) -> TorusForm {
    Form::blade(dim, b, Laurent::constant(FourierFn::mode(k.to_vec(), Gaussian::one())))
}

/// Coefficient matrix of an operator on mode `k`, columns indexed by `src`, rows by `dst`.
/// Every entry must be `tau^1` times a constant, and no other mode may appear.
fn operator_block(
    dim: usize,
    k: &[i32],
    src: &[Blade],
    dst: &[Blade],
    op: impl Fn(&TorusForm) -> Result<TorusForm>,
) -> Result<Matrix<Gaussian>> {
    let mut m = Matrix::zeros(dst.len(), src.len());
    let row_of: BTreeMap<Blade, usize> = dst.iter().enumerate().map(|(i, b)| (*b, i)).collect();
    let key = FourierFn::mode(k.to_vec(), Gaussian::one()).modes().pop().unwrap_or_default();
    for (col, b) in src.iter().enumerate() {
        let img = op(&torus_blade_form(dim, k, *b))?;
        for (ib, c) in img.terms() {
            let row = *row_of.get(&ib).ok_or_else(|| Error::NotRepresentable(format!("image blade {ib} outside the target degree")))?;
            if c.terms().any(|(e, _)| e != 0) {
                return Err(Error::NotRepresentable("operator shifts h".into()));
            }
            let f = c.coeff(0);
            let mut v = Gaussian::zero();
            for (mk, tau, g) in f.terms() {
                if *mk != key || tau != 1 {
                    return Err(Error::NotRepresentable("truncation not closed under the operator".into()));
                }
                v.add_assign(g);
            }
            m.set(row, col, v);
        }
    }
    Ok(m)
}

pub fn build_complex(model: &ComplexModel, mode: Mode) -> Result<TruncatedComplex> {
    let (n, t) = match model {
        ComplexModel::Torus { n, truncation } => (*n, *truncation),
        ComplexModel::Flat { .. } => {
            return Err(Error::UnsupportedModel("polynomial coefficients are not functions on the torus".into()))
        }
    };
    if t < 0 {
        return Err(Error::UnsupportedModel("negative truncation".into()));
    }
    let dim = 2 * n;
    let w = fixtures::torus(n);
    let grades: Vec<Vec<Blade>> = (0..=dim).map(|g| Blade::of_grade(dim, g)).collect();
    let mut blocks = Vec::new();
    for k in torus_modes(dim, t) {
        let mut d = Vec::new();
        let mut delta = vec![Matrix::zeros(0, grades[0].len())];
        for g in 0..=dim {
            if g < dim {
                d.push(operator_block(dim, &k, &grades[g], &grades[g + 1], |x| Ok(exterior_d(x)))?);
            }
            if g > 0 {
                delta.push(operator_block(dim, &k, &grades[g], &grades[g - 1], |x| koszul_delta(x, &w))?);
            }
        }
        blocks.push(ModeBlock { mode: k, d, delta });
    }
    Ok(TruncatedComplex { n, truncation: t, mode, blocks })
}

/// Per-degree kernel, image and cohomology dimensions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DimensionReport {
    pub degrees: Vec<i64>,
    pub space: Vec<usize>,
    pub kernel: Vec<usize>,
    pub image: Vec<usize>,
    pub cohomology: Vec<usize>,
}

impl DimensionReport {
    pub fn dim_at(&self, m: i64) -> Option<usize> {
        self.degrees.iter().position(|x| *x == m).map(|i| self.cohomology[i])
    }
}

impl fmt::Display for DimensionReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{:>6} {:>6} {:>6} {:>6} {:>6}", "deg", "dim", "ker", "im", "H")?;
        for i in 0..self.degrees.len() {
            writeln!(
                f,
                "{:>6} {:>6} {:>6} {:>6} {:>6}",
                self.degrees[i], self.space[i], self.kernel[i], self.image[i], self.cohomology[i]
            )?;
        }
        Ok(())
    }
}

fn report(degrees: Vec<i64>, space: Vec<usize>, out_rank: Vec<usize>, in_rank: Vec<usize>) -> DimensionReport {
    let kernel: Vec<usize> = space.iter().zip(&out_rank).map(|(s, r)| s - r).collect();
    let cohomology = kernel.iter().zip(&in_rank).map(|(k, r)| k - r).collect();
    DimensionReport { degrees, space, kernel, image: in_rank, cohomology }
}

impl TruncatedComplex {
    pub fn dim(&self) -> usize {
        2 * self.n
    }
    fn grade_size(&self, g: usize) -> usize {
        Blade::of_grade(self.dim(), g).len()
    }
    /// Ranks of `d` alone, per form degree.
    pub fn dr_cohomology_dims(&self) -> DimensionReport {
        let top = self.dim();
        let mut space = vec![0; top + 1];
        let mut out = vec![0; top + 1];
        let mut inc = vec![0; top + 1];
        for b in &self.blocks {
            for g in 0..=top {
                space[g] += self.grade_size(g);
                if g < top {
                    let r = b.d[g].rank_checked();
                    out[g] += r;
                    inc[g + 1] += r;
                }
            }
        }
        report((0..=top as i64).collect(), space, out, inc)
    }
    /// `ker delta / im delta` per form degree.
    pub fn poisson_homology_dims(&self) -> DimensionReport {
        let top = self.dim();
        let mut space = vec![0; top + 1];
        let mut out = vec![0; top + 1];
        let mut inc = vec![0; top + 1];
        for b in &self.blocks {
            for g in 0..=top {
                space[g] += self.grade_size(g);
                if g > 0 {
                    let r = b.delta[g].rank_checked();
                    out[g] += r;
                    inc[g - 1] += r;
                }
            }
        }
        report((0..=top as i64).collect(), space, out, inc)
    }
    /// Basis `(p, blade)` of total degree `m`: `h^p e^I` with `|I| + 2p = m`.
    pub fn degree_basis(&self, m: i64) -> Vec<(i64, Blade)> {
        let top = self.dim() as i64;
        let mut v = Vec::new();
        for g in 0..=top {
            if (m - g) % 2 != 0 {
                continue;
            }
            let p = (m - g) / 2;
            if self.mode == Mode::Polynomial && p < 0 {
                continue;
            }
            v.extend(Blade::of_grade(self.dim(), g as usize).into_iter().map(|b| (p, b)));
        }
        v
    }
    /// Matrix of `d_h = d - h delta` from total degree `m` to `m + 1` on one mode.
    pub fn dh_block(&self, block: &ModeBlock, m: i64) -> Matrix<Gaussian> {
        let src = self.degree_basis(m);
        let dst = self.degree_basis(m + 1);
        let row_of: BTreeMap<(i64, Blade), usize> = dst.iter().enumerate().map(|(i, x)| (*x, i)).collect();
        let mut mat = Matrix::zeros(dst.len(), src.len());
        let top = self.dim();
        for (col, (p, b)) in src.iter().enumerate() {
            let g = b.grade();
            if g < top {
                let tgt = Blade::of_grade(top, g + 1);
                let sidx = Blade::of_grade(top, g).iter().position(|x| x == b).expect("basis blade");
                for (r, tb) in tgt.iter().enumerate() {
                    let v = block.d[g].get(r, sidx);
                    if !v.is_zero() {
                        mat.set(row_of[&(*p, *tb)], col, v.clone());
                    }
                }
            }
            if g > 0 {
                let tgt = Blade::of_grade(top, g - 1);
                let sidx = Blade::of_grade(top, g).iter().position(|x| x == b).expect("basis blade");
                for (r, tb) in tgt.iter().enumerate() {
                    let v = block.delta[g].get(r, sidx);
                    if !v.is_zero() {
                        mat.set(row_of[&(*p + 1, *tb)], col, v.neg());
                    }
                }
            }
        }
        mat
    }
    /// `ker d_h / im d_h` per total degree in `lo..=hi`.
    pub fn quantum_cohomology_dims(&self, lo: i64, hi: i64) -> DimensionReport {
        let degrees: Vec<i64> = (lo..=hi).collect();
        let mut space = Vec::new();
        let mut out = Vec::new();
        let mut inc = Vec::new();
        for &m in &degrees {
            space.push(self.degree_basis(m).len() * self.blocks.len());
            let mut ro = 0;
            let mut ri = 0;
            for b in &self.blocks {
                ro += self.dh_block(b, m).rank_checked();
                if !self.degree_basis(m - 1).is_empty() {
                    ri += self.dh_block(b, m - 1).rank_checked();
                }
            }
            out.push(ro);
            inc.push(ri);
        }
        report(degrees, space, out, inc)
    }
    /// `sum_p b_{m - 2p}` over admissible `p`.
    pub fn e1_dims(&self, lo: i64, hi: i64) -> Vec<usize> {
        let betti = self.dr_cohomology_dims().cohomology;
        (lo..=hi)
            .map(|m| {
                self.degree_basis(m)
                    .iter()
                    .map(|(p, b)| (*p, b.grade()))
                    .collect::<std::collections::BTreeSet<_>>()
                    .into_iter()
                    .map(|(_, g)| betti[g])
                    .sum()
            })
            .collect()
    }
    /// Quantum dimensions equal the `E_1` count in every degree of the window.
    pub fn degeneracy_check(&self, lo: i64, hi: i64) -> bool {
        self.quantum_cohomology_dims(lo, hi).cohomology == self.e1_dims(lo, hi)
    }
}

/// Constant-mode part of a trigonometric polynomial.
pub fn constant_mode(f: &FourierFn) -> FourierFn {
    let mut out = FourierFn::zero();
    for (t, c) in f.mode_coeff(&[]) {
        out.add_term(vec![], t, &c);
    }
    out
}

/// `int_h`: degree `2n - 2k` parts integrate against `omega^k / k!`, odd degrees give 0.
/// The constant top form `e^1 ^ ... ^ e^{2n}` integrates to 1.
pub fn quantum_integral(a: &TorusForm, omega: &SymplecticForm) -> Result<Laurent<FourierFn>> {
    let dim = omega.dim();
    if a.dim() != dim {
        return Err(Error::DimensionMismatch("form and symplectic form".into()));
    }
    let om: TorusForm = omega.form().map(|c| c.map(|r| FourierFn::mode(vec![], Gaussian::real(r.clone()))));
    let top = Blade::ONE.complement(dim);
    let mut out = Laurent::zero();
    let mut pow = TorusForm::one(dim);
    for k in 0..=omega.n() {
        let g = dim - 2 * k;
        let part = a.grade_part(g);
        if !part.is_zero() {
            let scale = Rational::factorial(k as u32).recip()?;
            let c = part.wedge(&pow).coeff(top).map(constant_mode);
            out.add_assign(&c.map(|f| f.scale(&scale)));
        }
        pow = pow.wedge(&om);
    }
    Ok(out)
}

/// `(int_h d a, int_h h delta a, int_h d_h a)`.
pub fn stokes_integrals(a: &TorusForm, n: usize) -> Result<[Laurent<FourierFn>; 3]> {
    let om = SymplecticForm::standard(n);
    let w: PoissonField<FourierFn> = fixtures::torus(n);
    let hd = koszul_delta(a, &w)?.map(|c| c.shift(1));
    Ok([
        quantum_integral(&exterior_d(a), &om)?,
        quantum_integral(&hd, &om)?,
        quantum_integral(&quantum_d(a, &w)?, &om)?,
    ])
}

pub fn stokes_check(a: &TorusForm, n: usize) -> Result<bool> {
    Ok(stokes_integrals(a, n)?.iter().all(|x| x.is_zero()))
}

/// Constants found by the contraction identities on powers of `omega`.
#[derive(Clone, Debug, PartialEq)]
pub struct ContractionPairingReport {
    pub n: usize,
    pub k: usize,
    /// `c` with `iota_w(omega^{k+1}/(k+1)!) = c omega^k/k!`.
    pub contraction: Option<Rational>,
    /// `c` with `sum_{i,j} w^{ij} (e_i -| b) ^ (e_j -| omega^{k+1}/(k+1)!) = c (-1)^{p-1} p b ^ omega^k/k!`
    /// for every basis blade `b` where the right side is nonzero; `None` when no such blade exists.
    pub pairing: Option<Rational>,
    /// The pairing identity is proportional with one constant on every blade.
    pub pairing_consistent: bool,
}

fn ratio(lhs: &QForm, rhs: &QForm) -> Option<Option<Rational>> {
    if rhs.is_zero() {
        return if lhs.is_zero() { Some(None) } else { None };
    }
    let (b, c) = rhs.terms().next().expect("nonzero");
    let e = c.max_exp().expect("nonzero");
    let r = &lhs.coeff(b).coeff(e) / &c.coeff(e);
    if *lhs == rhs.scale_q(&r) {
        Some(Some(r))
    } else {
        None
    }
}

pub fn contraction_pairing_check(n: usize, k: usize) -> Result<ContractionPairingReport> {
    let om = SymplecticForm::standard(n);
    let w = bivector_of(&om)?;
    let d = om.dim();
    let omf = om.form();
    let power = |j: usize| -> Result<QForm> {
        let mut p = QForm::one(d);
        for _ in 0..j {
            p = p.wedge(&omf);
        }
        Ok(p.scale_q(&Rational::factorial(j as u32).recip()?))
    };
    let big = power(k + 1)?;
    let small = power(k)?;
    let contraction = match ratio(&contract_bivector(&w, &big)?, &small) {
        Some(Some(c)) => Some(c),
        Some(None) => Some(Rational::zero()),
        None => None,
    };
    let mut pairing: Option<Rational> = None;
    let mut consistent = true;
    for b in Blade::all(d) {
        let beta = QForm::blade(d, b, Laurent::one());
        let p = b.grade() as i64;
        let mut lhs = QForm::zero(d);
        for i in 0..d {
            let bi = beta.insert_first(i);
            if bi.is_zero() {
                continue;
            }
            for j in 0..d {
                let wij = w.get(i, j);
                if !wij.is_zero() {
                    lhs.add_assign(&bi.wedge(&big.insert_first(j)).scale_q(wij));
                }
            }
        }
        let sign = if (p - 1).rem_euclid(2) == 0 { p } else { -p };
        let rhs = beta.wedge(&small).scale_q(&Rational::from_int(sign));
        match ratio(&lhs, &rhs) {
            None => consistent = false,
            Some(None) => {}
            Some(Some(c)) => match &pairing {
                None => pairing = Some(c),
                Some(x) if *x != c => consistent = false,
                _ => {}
            },
        }
    }
    Ok(ContractionPairingReport { n, k, contraction, pairing, pairing_consistent: consistent })
}
