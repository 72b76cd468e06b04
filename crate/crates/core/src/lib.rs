//! Exact computations with the quantum deformation of the de Rham complex:
//! the `h`-deformed exterior product, Lefschetz-type operators, bigraded
//! pieces on Kähler vector spaces, Poisson calculus, truncated cohomology on
//! tori, quantum Chern-Weil forms and the truncated `CP^n` ring.

pub mod blade;
pub mod chern_weil;
pub mod cohomology;
pub mod complex;
pub mod cpn;
pub mod error;
pub mod form;
pub mod function;
pub mod laurent;
pub mod linalg;
pub mod poisson;
pub mod poly;
pub mod quantum;
pub mod sample;
pub mod scalar;
pub mod suites;
pub mod symplectic;

#[cfg(test)]
pub(crate) mod test_support;

pub use blade::Blade;
pub use error::{Error, Result};
pub use form::Form;
pub use function::{FourierFn, PolyFn};
pub use laurent::{Laurent, QLaurent};
pub use linalg::Matrix;
pub use quantum::{quantum_wedge, Bivector, QForm, TotalDegree};
pub use scalar::{Gaussian, Rational, Ring};
pub use symplectic::SymplecticForm;

/// Largest ambient dimension accepted from user input unless overridden.
pub const DEFAULT_MAX_DIM: usize = 8;
