use crate::quantum::{Bivector, QForm};
use crate::scalar::Rational;

/// Bivector of the standard form `sum e^{2a-1} ^ e^{2a}`: `w^{2a-1,2a} = -1`.
pub fn standard_bivector(n: usize) -> Bivector {
    let entries: Vec<(usize, usize, Rational)> =
        (0..n).map(|a| (2 * a, 2 * a + 1, Rational::from_int(-1))).collect();
    Bivector::from_entries(2 * n, &entries).unwrap()
}

pub fn qbasis(dim: usize, i: usize) -> QForm {
    QForm::basis(dim, i)
}

pub fn qmono(dim: usize, ix: &[usize]) -> QForm {
    QForm::monomial(dim, ix).unwrap()
}

