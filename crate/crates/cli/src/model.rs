//! Geometric models a scenario runs on.

use std::str::FromStr;

use qdr_core::function::FourierFn;
use qdr_core::poisson::{fixtures, jacobi_check, JacobiStatus, PoissonField};
use qdr_core::poly::MultiPoly;
use qdr_core::symplectic::bivector_of;
use qdr_core::{Error as CoreError, Gaussian, Matrix, Rational, Ring, SymplecticForm};
use thiserror::Error;

use crate::expr::{self, ExprError};
use crate::scenario::{ModelKind, Scenario};

pub type P = MultiPoly<Rational>;

#[derive(Debug, Error)]
pub enum ModelError {
    #[error("dimension {dim} exceeds the maximum {max} (set QDR_MAX_DIM to raise it)")]
    TooLarge { dim: usize, max: usize },
    #[error("{0}")]
    Invalid(String),
    #[error("omega is not a symplectic matrix: {0}")]
    Omega(CoreError),
    #[error("poisson entry ({row}, {col}): {err}")]
    Entry { row: usize, col: usize, err: ExprError },
    #[error("poisson bivector fails the Jacobi identity at ({}, {}, {}): {sum}", .triple.0 + 1, .triple.1 + 1, .triple.2 + 1)]
    NotPoisson { triple: (usize, usize, usize), sum: String },
    #[error(transparent)]
    Core(#[from] CoreError),
}

/// Poisson structure with its coefficient ring.
pub enum Field {
    Poly(PoissonField<P>),
    Torus(PoissonField<FourierFn>),
}

pub struct Model {
    pub kind: ModelKind,
    pub dim: usize,
    pub field: Field,
    /// Constant symplectic form, when the bivector comes from one.
    pub omega: Option<SymplecticForm>,
    /// Fourier truncation on tori.
    pub truncation: i32,
}

pub fn max_dim() -> usize {
    std::env::var("QDR_MAX_DIM").ok().and_then(|v| v.parse().ok()).unwrap_or(qdr_core::DEFAULT_MAX_DIM)
}

fn parse_omega(rows: &[Vec<String>]) -> Result<SymplecticForm, ModelError> {
    let m = rows
        .iter()
        .map(|r| r.iter().map(|s| Rational::from_str(s.trim())).collect::<Result<Vec<_>, _>>())
        .collect::<Result<Vec<_>, _>>()
        .map_err(ModelError::Omega)?;
    if m.iter().any(|r| r.len() != m.len()) {
        return Err(ModelError::Invalid("omega must be a square matrix".into()));
    }
    SymplecticForm::new(Matrix::from_rows(m)?).map_err(ModelError::Omega)
}

fn parse_poisson(rows: &[Vec<String>]) -> Result<PoissonField<P>, ModelError> {
    let d = rows.len();
    if rows.iter().any(|r| r.len() != d) {
        return Err(ModelError::Invalid("poisson must be a square matrix".into()));
    }
    let zero = PoissonField::new(Matrix::zeros(d, d))?;
    let mut m = Matrix::zeros(d, d);
    for (i, r) in rows.iter().enumerate() {
        for (j, s) in r.iter().enumerate() {
            let entry = |err| ModelError::Entry { row: i + 1, col: j + 1, err };
            let f = expr::eval_str::<P>(s, d, &zero).map_err(entry)?;
            let c = f.terms().fold(Some(P::zero()), |acc, (b, l)| match (acc, b.grade(), l.is_constant()) {
                (Some(_), 0, true) => Some(l.coeff(0)),
                _ => None,
            });
            let c = c.ok_or_else(|| entry(ExprError::Eval("entries must be functions without h".into())))?;
            m.set(i, j, c);
        }
    }
    let w = PoissonField::new(m).map_err(|_| ModelError::Invalid("poisson must be antisymmetric".into()))?;
    match jacobi_check(&w) {
        JacobiStatus::Poisson => Ok(w),
        JacobiStatus::Fails { triple, sum } => Err(ModelError::NotPoisson { triple, sum: sum.to_string() }),
    }
}

impl Model {
    /// `dim` and `truncation` override the scenario when given.
    pub fn build(s: &Scenario, dim: Option<usize>, truncation: Option<i32>) -> Result<Self, ModelError> {
        let dim = dim.or(s.dim);
        let truncation = truncation.or(s.truncation).unwrap_or(1);
        if truncation < 0 {
            return Err(ModelError::Invalid("truncation must be non-negative".into()));
        }
        let max = max_dim();
        let check = |d: usize| if d > max { Err(ModelError::TooLarge { dim: d, max }) } else { Ok(d) };
        let fixed3 = |name: &str| match dim {
            None | Some(3) => Ok(3),
            Some(d) => Err(ModelError::Invalid(format!("{name} lives in dimension 3, not {d}"))),
        };
        let symplectic = || -> Result<SymplecticForm, ModelError> {
            let omega = match &s.omega {
                Some(rows) => {
                    let o = parse_omega(rows)?;
                    if dim.is_some_and(|d| d != o.dim()) {
                        return Err(ModelError::Invalid(format!("omega has dimension {}, dim is {}", o.dim(), dim.unwrap_or(0))));
                    }
                    o
                }
                None => {
                    let d = dim.unwrap_or(2);
                    if d == 0 || d % 2 == 1 {
                        return Err(ModelError::Invalid(format!("a symplectic model needs a positive even dimension, got {d}")));
                    }
                    SymplecticForm::standard(d / 2)
                }
            };
            check(omega.dim())?;
            Ok(omega)
        };
        let mut out = Model { kind: s.model, dim: 0, field: Field::Poly(fixtures::heisenberg()), omega: None, truncation };
        match s.model {
            ModelKind::Flat => {
                let o = symplectic()?;
                out.field = Field::Poly(PoissonField::constant(&bivector_of(&o)?));
                out.omega = Some(o);
            }
            ModelKind::Torus => {
                let o = symplectic()?;
                let b = bivector_of(&o)?;
                let w = b.matrix().map(|r| FourierFn::mode(vec![], Gaussian::real(r.clone())));
                out.field = Field::Torus(PoissonField::new(w)?);
                out.omega = Some(o);
            }
            ModelKind::LiePoissonSo3 => {
                fixed3("lie_poisson_so3")?;
                out.field = Field::Poly(fixtures::lie_poisson_so3());
            }
            ModelKind::Heisenberg => {
                fixed3("heisenberg")?;
                out.field = Field::Poly(fixtures::heisenberg());
            }
            ModelKind::Custom => {
                let rows = s.poisson.as_ref().ok_or_else(|| ModelError::Invalid("custom model needs a poisson matrix".into()))?;
                check(rows.len())?;
                if dim.is_some_and(|d| d != rows.len()) {
                    return Err(ModelError::Invalid(format!("poisson has dimension {}, dim is {}", rows.len(), dim.unwrap_or(0))));
                }
                out.field = Field::Poly(parse_poisson(rows)?);
            }
        }
        if s.poisson.is_some() && s.model != ModelKind::Custom {
            return Err(ModelError::Invalid("poisson is only read by the custom model".into()));
        }
        if s.omega.is_some() && !matches!(s.model, ModelKind::Flat | ModelKind::Torus) {
            return Err(ModelError::Invalid("omega is only read by flat and torus models".into()));
        }
        out.dim = match &out.field {
            Field::Poly(w) => w.dim(),
            Field::Torus(w) => w.dim(),
        };
        Ok(out)
    }

    pub fn name(&self) -> &'static str {
        match self.kind {
            ModelKind::Flat => "flat",
            ModelKind::Torus => "torus",
            ModelKind::LiePoissonSo3 => "lie_poisson_so3",
            ModelKind::Heisenberg => "heisenberg",
            ModelKind::Custom => "custom",
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn scenario(text: &str) -> Scenario {
        Scenario::parse(text).unwrap()
    }

    #[test]
    fn singular_omega_rejected() {
        let s = scenario("model = \"flat\"\nomega = [[\"0\", \"0\"], [\"0\", \"0\"]]");
        assert!(matches!(Model::build(&s, None, None), Err(ModelError::Omega(CoreError::Degenerate))));
        let s = scenario("model = \"flat\"\nomega = [[\"0\", \"2/3\"], [\"-2/3\", \"0\"]]");
        assert_eq!(Model::build(&s, None, None).unwrap().dim, 2);
    }

    #[test]
    fn custom_jacobi() {
        let ok = scenario("model = \"custom\"\npoisson = [[\"0\", \"x[3]\", \"0\"], [\"-x[3]\", \"0\", \"0\"], [\"0\", \"0\", \"0\"]]");
        assert!(Model::build(&ok, None, None).is_ok());
        let bad = scenario("model = \"custom\"\npoisson = [[\"0\", \"1\", \"x[1]\"], [\"-1\", \"0\", \"0\"], [\"-x[1]\", \"0\", \"0\"]]");
        assert!(matches!(Model::build(&bad, None, None), Err(ModelError::NotPoisson { .. })));
        let skew = scenario("model = \"custom\"\npoisson = [[\"0\", \"1\"], [\"1\", \"0\"]]");
        assert!(Model::build(&skew, None, None).is_err());
    }

    #[test]
    fn dimension_limits() {
        let s = scenario("model = \"flat\"");
        assert!(matches!(Model::build(&s, Some(10), None), Err(ModelError::TooLarge { .. })));
        assert!(Model::build(&s, Some(3), None).is_err());
        assert!(Model::build(&scenario("model = \"heisenberg\""), Some(4), None).is_err());
    }
}
