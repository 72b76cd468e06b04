//! Matrix-valued forms, quantum covariant derivatives and curvature, and
//! closed characteristic forms.

use std::fmt;

use crate::error::{Error, Result};
use crate::form::Form;
use crate::function::Differentiable;
use crate::laurent::Laurent;
use crate::poisson::{exterior_d, field_wedge, quantum_d, FieldForm, PoissonField};
use crate::quantum::{quantum_exp_over, total_degree, TotalDegree};
use crate::scalar::{Rational, Ring};

/// Square matrix of field forms of a common dimension.
#[derive(Clone, PartialEq)]
pub struct MatrixForm<C> {
    rank: usize,
    dim: usize,
    entries: Vec<FieldForm<C>>,
}

impl<C: Ring> fmt::Debug for MatrixForm<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MatrixForm[{}]{:?}", self.rank, self.entries)
    }
}

impl<C: Differentiable> MatrixForm<C> {
    pub fn zero(rank: usize, dim: usize) -> Self {
        MatrixForm { rank, dim, entries: vec![Form::zero(dim); rank * rank] }
    }
    pub fn identity(rank: usize, dim: usize) -> Self {
        let mut m = Self::zero(rank, dim);
        for i in 0..rank {
            m.set(i, i, Form::one(dim));
        }
        m
    }
    pub fn from_rows(rows: Vec<Vec<FieldForm<C>>>) -> Result<Self> {
        let rank = rows.len();
        let dim = rows.first().and_then(|r| r.first()).map_or(0, |f| f.dim());
        if rows.iter().any(|r| r.len() != rank) {
            return Err(Error::DimensionMismatch("matrix form must be square".into()));
        }
        let entries: Vec<FieldForm<C>> = rows.into_iter().flatten().collect();
        if entries.iter().any(|f| f.dim() != dim) {
            return Err(Error::DimensionMismatch("entries of different dimensions".into()));
        }
        Ok(MatrixForm { rank, dim, entries })
    }
    /// Matrix of 0-forms.
    pub fn from_functions(rows: &[Vec<C>], dim: usize) -> Result<Self> {
        Self::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|c| Form::scalar(dim, Laurent::constant(c.clone()))).collect())
                .collect(),
        )
    }
    pub fn rank(&self) -> usize {
        self.rank
    }
    pub fn dim(&self) -> usize {
        self.dim
    }
    pub fn get(&self, i: usize, j: usize) -> &FieldForm<C> {
        &self.entries[i * self.rank + j]
    }
    pub fn set(&mut self, i: usize, j: usize, f: FieldForm<C>) {
        self.entries[i * self.rank + j] = f;
    }
    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|f| f.is_zero())
    }
    pub fn map(&self, f: impl Fn(&FieldForm<C>) -> FieldForm<C>) -> Self {
        MatrixForm { rank: self.rank, dim: self.dim, entries: self.entries.iter().map(f).collect() }
    }
    pub fn try_map(&self, f: impl Fn(&FieldForm<C>) -> Result<FieldForm<C>>) -> Result<Self> {
        let entries = self.entries.iter().map(f).collect::<Result<Vec<_>>>()?;
        Ok(MatrixForm { rank: self.rank, dim: self.dim, entries })
    }
    pub fn add(&self, o: &Self) -> Self {
        let entries = self.entries.iter().zip(&o.entries).map(|(a, b)| a.add(b)).collect();
        MatrixForm { rank: self.rank, dim: self.dim, entries }
    }
    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.map(|f| f.neg()))
    }
    fn check(&self, o: &Self) -> Result<()> {
        if self.rank != o.rank || self.dim != o.dim {
            return Err(Error::DimensionMismatch("matrix forms of different shape".into()));
        }
        Ok(())
    }
    /// `(A ^_h B)_{ij} = sum_k A_{ik} ^_h B_{kj}`.
    pub fn qmul(&self, o: &Self, w: &PoissonField<C>) -> Result<Self> {
        self.check(o)?;
        let r = self.rank;
        let mut out = Self::zero(r, self.dim);
        for i in 0..r {
            for j in 0..r {
                let mut s = Form::zero(self.dim);
                for k in 0..r {
                    s.add_assign(&field_wedge(self.get(i, k), o.get(k, j), w)?);
                }
                out.set(i, j, s);
            }
        }
        Ok(out)
    }
    /// `[A ^_h B] = A ^_h B - B ^_h A` entrywise in the matrix sense.
    pub fn bracket(&self, o: &Self, w: &PoissonField<C>) -> Result<Self> {
        Ok(self.qmul(o, w)?.sub(&o.qmul(self, w)?))
    }
    pub fn trace(&self) -> FieldForm<C> {
        let mut s = Form::zero(self.dim);
        for i in 0..self.rank {
            s.add_assign(self.get(i, i));
        }
        s
    }
    pub fn dh(&self, w: &PoissonField<C>) -> Result<Self> {
        self.try_map(|f| quantum_d(f, w))
    }
    /// Every entry is a 1-form with `h`-free coefficients.
    pub fn is_connection(&self) -> bool {
        self.entries.iter().all(|f| f.is_zero() || (f.grade() == Some(1) && total_degree(f) == TotalDegree::Homogeneous(1)))
    }
}

fn require_connection<C: Differentiable>(theta: &MatrixForm<C>) -> Result<()> {
    if !theta.is_connection() {
        return Err(Error::MixedDegree);
    }
    Ok(())
}

/// `theta ^_h phi + d_h phi` on frame coefficients `phi`.
pub fn covariant_d<C: Differentiable>(
    phi: &MatrixForm<C>,
    theta: &MatrixForm<C>,
    w: &PoissonField<C>,
) -> Result<MatrixForm<C>> {
    require_connection(theta)?;
    Ok(theta.qmul(phi, w)?.add(&phi.dh(w)?))
}

/// `d_h theta + theta ^_h theta`.
pub fn quantum_curvature<C: Differentiable>(theta: &MatrixForm<C>, w: &PoissonField<C>) -> Result<MatrixForm<C>> {
    require_connection(theta)?;
    Ok(theta.dh(w)?.add(&theta.qmul(theta, w)?))
}

/// Polynomial change of frame with an exact inverse.
#[derive(Clone, PartialEq)]
pub struct GaugeTransform<C> {
    g: MatrixForm<C>,
    inv: MatrixForm<C>,
}

impl<C: Ring> fmt::Debug for GaugeTransform<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GaugeTransform({:?})", self.g)
    }
}

impl<C: Differentiable> GaugeTransform<C> {
    pub fn new(g: MatrixForm<C>, inv: MatrixForm<C>, w: &PoissonField<C>) -> Result<Self> {
        let id = MatrixForm::identity(g.rank(), g.dim());
        if g.qmul(&inv, w)? != id || inv.qmul(&g, w)? != id {
            return Err(Error::Singular);
        }
        Ok(GaugeTransform { g, inv })
    }
    /// `I + N` for strictly upper-triangular `N` of functions; inverse by the finite geometric series.
    pub fn unipotent(upper: &[Vec<C>], dim: usize, w: &PoissonField<C>) -> Result<Self> {
        let r = upper.len();
        let mut nrows: Vec<Vec<C>> = vec![vec![C::zero(); r]; r];
        for i in 0..r {
            for j in i + 1..r {
                nrows[i][j] = upper[i][j].clone();
            }
        }
        let nm = MatrixForm::from_functions(&nrows, dim)?;
        let id = MatrixForm::identity(r, dim);
        let g = id.add(&nm);
        let mut inv = id.clone();
        let mut term = id;
        for k in 1..r {
            term = term.qmul(&nm, w)?;
            inv = if k % 2 == 1 { inv.sub(&term) } else { inv.add(&term) };
        }
        Self::new(g, inv, w)
    }
    pub fn matrix(&self) -> &MatrixForm<C> {
        &self.g
    }
    pub fn inverse(&self) -> &MatrixForm<C> {
        &self.inv
    }
    /// `G^{-1} A G`.
    pub fn conjugate(&self, a: &MatrixForm<C>, w: &PoissonField<C>) -> Result<MatrixForm<C>> {
        self.inv.qmul(a, w)?.qmul(&self.g, w)
    }
}

/// `G^{-1} theta G + G^{-1} dG`.
pub fn gauge_transform<C: Differentiable>(
    theta: &MatrixForm<C>,
    g: &GaugeTransform<C>,
    w: &PoissonField<C>,
) -> Result<MatrixForm<C>> {
    let dg = g.g.map(exterior_d);
    Ok(g.conjugate(theta, w)?.add(&g.inv.qmul(&dg, w)?))
}

/// Curvature of the transformed connection equals `G^{-1} Theta G`.
pub fn curvature_gauge_check<C: Differentiable>(
    theta: &MatrixForm<C>,
    g: &GaugeTransform<C>,
    w: &PoissonField<C>,
) -> Result<bool> {
    let lhs = quantum_curvature(&gauge_transform(theta, g, w)?, w)?;
    let rhs = g.conjugate(&quantum_curvature(theta, w)?, w)?;
    Ok(lhs == rhs)
}

/// Coefficients `G^{-1} phi` in the new frame have covariant derivative `G^{-1} d^nabla phi`.
pub fn frame_independence_check<C: Differentiable>(
    phi: &MatrixForm<C>,
    theta: &MatrixForm<C>,
    g: &GaugeTransform<C>,
    w: &PoissonField<C>,
) -> Result<bool> {
    let theta2 = gauge_transform(theta, g, w)?;
    let phi2 = g.inv.qmul(phi, w)?;
    Ok(covariant_d(&phi2, &theta2, w)? == g.inv.qmul(&covariant_d(phi, theta, w)?, w)?)
}

/// `d_h Theta = [Theta ^_h theta]`.
pub fn bianchi_check<C: Differentiable>(theta: &MatrixForm<C>, w: &PoissonField<C>) -> Result<bool> {
    let curv = quantum_curvature(theta, w)?;
    Ok(curv.dh(w)? == curv.bracket(theta, w)?)
}

/// Applying the covariant derivative twice is left multiplication by the curvature.
pub fn second_covariant_check<C: Differentiable>(
    phi: &MatrixForm<C>,
    theta: &MatrixForm<C>,
    w: &PoissonField<C>,
) -> Result<bool> {
    let twice = covariant_d(&covariant_d(phi, theta, w)?, theta, w)?;
    Ok(twice == quantum_curvature(theta, w)?.qmul(phi, w)?)
}

/// The same with the curvature acting from the right, `phi ^_h Theta`.
pub fn second_covariant_right_check<C: Differentiable>(
    phi: &MatrixForm<C>,
    theta: &MatrixForm<C>,
    w: &PoissonField<C>,
) -> Result<bool> {
    let twice = covariant_d(&covariant_d(phi, theta, w)?, theta, w)?;
    Ok(twice == phi.qmul(&quantum_curvature(theta, w)?, w)?)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CharPoly {
    Trace,
    /// `tr(Theta ^_h Theta)`.
    TraceSquare,
    /// `((tr Theta)^2 - tr(Theta^2)) / 2` with quantum products.
    SecondElementary,
}

pub fn char_form<C: Differentiable>(curv: &MatrixForm<C>, p: CharPoly, w: &PoissonField<C>) -> Result<FieldForm<C>> {
    Ok(match p {
        CharPoly::Trace => curv.trace(),
        CharPoly::TraceSquare => curv.qmul(curv, w)?.trace(),
        CharPoly::SecondElementary => {
            let t = curv.trace();
            let half = Laurent::constant(C::from_rational(&Rational::new(1, 2)?));
            field_wedge(&t, &t, w)?.sub(&curv.qmul(curv, w)?.trace()).scale(&half)
        }
    })
}

/// Characteristic form of the curvature and whether it is `d_h`-closed.
pub fn closed_char_form<C: Differentiable>(
    theta: &MatrixForm<C>,
    p: CharPoly,
    w: &PoissonField<C>,
) -> Result<(FieldForm<C>, bool)> {
    let f = char_form(&quantum_curvature(theta, w)?, p, w)?;
    let closed = quantum_d(&f, w)?.is_zero();
    Ok((f, closed))
}

/// Quantum exponential of the curvature of a line bundle, truncated at total degree `n`.
/// The normalization `i/2pi` stays symbolic and is not applied.
pub fn chern_character<C: Differentiable>(theta: &MatrixForm<C>, w: &PoissonField<C>, n: i64) -> Result<FieldForm<C>> {
    if theta.rank() != 1 {
        return Err(Error::UnsupportedModel("chern character is implemented for rank 1".into()));
    }
    let curv = quantum_curvature(theta, w)?;
    if curv.is_zero() {
        return Ok(Form::one(theta.dim()));
    }
    quantum_exp_over(curv.get(0, 0), w.matrix(), n)
}
