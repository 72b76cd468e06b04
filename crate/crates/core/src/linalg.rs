//! Dense matrices over exact rings: fraction-free rank and determinant,
//! inverses, linear solves and characteristic polynomials.

use std::fmt;

use crate::error::{Error, Result};
use crate::poly::Poly;
use crate::scalar::{Domain, Field, Rational, Ring};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix<R> {
    rows: usize,
    cols: usize,
    data: Vec<R>,
}

impl<R: Ring> Matrix<R> {
    pub fn new(rows: usize, cols: usize, data: Vec<R>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::DimensionMismatch(format!(
                "{} entries for a {rows}x{cols} matrix",
                data.len()
            )));
        }
        Ok(Matrix { rows, cols, data })
    }
    pub fn from_rows(rows: Vec<Vec<R>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        if rows.iter().any(|x| x.len() != c) {
            return Err(Error::DimensionMismatch("ragged rows".into()));
        }
        Self::new(r, c, rows.into_iter().flatten().collect())
    }
    pub fn from_fn(rows: usize, cols: usize, f: impl Fn(usize, usize) -> R) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix { rows, cols, data }
    }
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self::from_fn(rows, cols, |_, _| R::zero())
    }
    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, n, |i, j| if i == j { R::one() } else { R::zero() })
    }
    pub fn rows(&self) -> usize {
        self.rows
    }
    pub fn cols(&self) -> usize {
        self.cols
    }
    pub fn get(&self, i: usize, j: usize) -> &R {
        &self.data[i * self.cols + j]
    }
    pub fn set(&mut self, i: usize, j: usize, v: R) {
        self.data[i * self.cols + j] = v;
    }
    pub fn row(&self, i: usize) -> &[R] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }
    pub fn col(&self, j: usize) -> Vec<R> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }
    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }
    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }
    pub fn map<S: Ring>(&self, f: impl Fn(&R) -> S) -> Matrix<S> {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(f).collect() }
    }
    pub fn add(&self, o: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols));
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&o.data).map(|(a, b)| a.add(b)).collect(),
        }
    }
    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }
    pub fn neg(&self) -> Self {
        self.map(|x| x.neg())
    }
    pub fn scale(&self, c: &R) -> Self {
        self.map(|x| x.mul(c))
    }
    pub fn mul(&self, o: &Self) -> Result<Self> {
        if self.cols != o.rows {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, o.rows, o.cols
            )));
        }
        Ok(Self::from_fn(self.rows, o.cols, |i, j| {
            let mut acc = R::zero();
            for k in 0..self.cols {
                let a = self.get(i, k);
                if !a.is_zero() {
                    acc.add_assign(&a.mul(o.get(k, j)));
                }
            }
            acc
        }))
    }
    pub fn mul_vec(&self, v: &[R]) -> Vec<R> {
        (0..self.rows)
            .map(|i| {
                let mut acc = R::zero();
                for (a, x) in self.row(i).iter().zip(v) {
                    acc.add_assign(&a.mul(x));
                }
                acc
            })
            .collect()
    }
    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }
    pub fn is_antisymmetric(&self) -> bool {
        self.is_square()
            && (0..self.rows)
                .all(|i| (0..self.cols).all(|j| self.get(i, j).add(self.get(j, i)).is_zero()))
    }
    /// Block matrix `[[a, b], [c, d]]`.
    pub fn blocks(a: &Self, b: &Self, c: &Self, d: &Self) -> Self {
        let (r, s) = (a.rows, a.cols);
        Self::from_fn(r + c.rows, s + b.cols, |i, j| match (i < r, j < s) {
            (true, true) => a.get(i, j).clone(),
            (true, false) => b.get(i, j - s).clone(),
            (false, true) => c.get(i - r, j).clone(),
            (false, false) => d.get(i - r, j - s).clone(),
        })
    }
}

impl<D: Domain> Matrix<D> {
    /// Fraction-free elimination. Returns the rank and, for square input,
    /// the determinant.
    fn bareiss(&self) -> (usize, D) {
        let (m, n) = (self.rows, self.cols);
        let mut a: Vec<Vec<D>> = (0..m).map(|i| self.row(i).to_vec()).collect();
        let mut prev = D::one();
        let mut rank = 0;
        let mut sign = 1;
        let mut full = true;
        for col in 0..n {
            if rank == m {
                break;
            }
            let Some(p) = (rank..m).find(|&r| !a[r][col].is_zero()) else {
                full = false;
                continue;
            };
            if p != rank {
                a.swap(p, rank);
                sign = -sign;
            }
            let piv = a[rank][col].clone();
            for i in rank + 1..m {
                let f = a[i][col].clone();
                for j in col + 1..n {
                    let num = piv.mul(&a[i][j]).sub(&f.mul(&a[rank][j]));
                    a[i][j] = num.div_exact(&prev).expect("Bareiss division is exact");
                }
                a[i][col] = D::zero();
            }
            prev = piv;
            rank += 1;
        }
        let det = if m == n && full && rank == n {
            if sign < 0 {
                prev.neg()
            } else {
                prev
            }
        } else {
            D::zero()
        };
        (rank, det)
    }
    pub fn rank(&self) -> usize {
        self.bareiss().0
    }
    /// Rank computed from the rows and from the columns; they must agree.
    pub fn rank_checked(&self) -> usize {
        let r = self.rank();
        debug_assert_eq!(r, self.transpose().rank(), "row and column rank differ");
        r
    }
    pub fn det(&self) -> Result<D> {
        if !self.is_square() {
            return Err(Error::DimensionMismatch("determinant of a non-square matrix".into()));
        }
        if self.rows == 0 {
            return Ok(D::one());
        }
        Ok(self.bareiss().1)
    }
}

impl<F: Field> Matrix<F> {
    /// Reduced row echelon form and pivot columns.
    pub fn rref(&self) -> (Self, Vec<usize>) {
        let mut a = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..a.cols {
            if r == a.rows {
                break;
            }
            let Some(p) = (r..a.rows).find(|&i| !a.get(i, c).is_zero()) else {
                continue;
            };
            for j in 0..a.cols {
                a.data.swap(p * a.cols + j, r * a.cols + j);
            }
            let inv = a.get(r, c).inv().expect("nonzero pivot");
            for j in 0..a.cols {
                let v = a.get(r, j).mul(&inv);
                a.set(r, j, v);
            }
            for i in 0..a.rows {
                if i != r && !a.get(i, c).is_zero() {
                    let f = a.get(i, c).clone();
                    for j in 0..a.cols {
                        let v = a.get(i, j).sub(&f.mul(a.get(r, j)));
                        a.set(i, j, v);
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        (a, pivots)
    }
    pub fn inverse(&self) -> Result<Self> {
        if !self.is_square() {
            return Err(Error::DimensionMismatch("inverse of a non-square matrix".into()));
        }
        let n = self.rows;
        let aug = Self::blocks(self, &Self::identity(n), &Self::zeros(0, n), &Self::zeros(0, n));
        let (r, piv) = aug.rref();
        if piv.len() < n || piv[n - 1] >= n {
            return Err(Error::Singular);
        }
        Ok(Self::from_fn(n, n, |i, j| r.get(i, n + j).clone()))
    }
    /// Some solution of `self * x = b`, plus the dimension of the solution space.
    pub fn solve(&self, b: &[F]) -> Result<(Vec<F>, usize)> {
        let n = self.cols;
        let col = Matrix::from_fn(self.rows, 1, |i, _| b[i].clone());
        let aug = Self::blocks(self, &col, &Self::zeros(0, n), &Self::zeros(0, 1));
        let (r, piv) = aug.rref();
        if piv.contains(&n) {
            return Err(Error::Inconsistent);
        }
        let mut x = vec![F::zero(); n];
        for (row, &c) in piv.iter().enumerate() {
            x[c] = r.get(row, n).clone();
        }
        Ok((x, n - piv.len()))
    }
    /// Monic characteristic polynomial `det(t I - M)` by Faddeev-LeVerrier.
    pub fn charpoly(&self) -> Result<Poly<F>> {
        if !self.is_square() {
            return Err(Error::DimensionMismatch("characteristic polynomial of a non-square matrix".into()));
        }
        let n = self.rows;
        let mut c = vec![F::zero(); n + 1];
        c[n] = F::one();
        let mut m = Self::zeros(n, n);
        for k in 1..=n {
            // M_k = A M_{k-1} + c_{n-k+1} I
            let mut mk = self.mul(&m)?;
            for i in 0..n {
                let v = mk.get(i, i).add(&c[n - k + 1]);
                mk.set(i, i, v);
            }
            let am = self.mul(&mk)?;
            let mut tr = F::zero();
            for i in 0..n {
                tr.add_assign(am.get(i, i));
            }
            let kinv = F::from_int(k as i64).inv().expect("characteristic zero");
            c[n - k] = tr.mul(&kinv).neg();
            m = mk;
        }
        Ok(Poly::new(c))
    }
    /// Same polynomial computed as a fraction-free determinant over `F[t]`.
    pub fn charpoly_by_det(&self) -> Result<Poly<F>> {
        let t = Matrix::from_fn(self.rows, self.cols, |i, j| {
            let a = Poly::constant(self.get(i, j).neg());
            if i == j {
                a.add(&Poly::x())
            } else {
                a
            }
        });
        t.det()
    }
}

/// A characteristic polynomial split into rational linear factors and a remainder.
#[derive(Clone, Debug, PartialEq)]
pub struct Spectrum {
    /// `(root, multiplicity)`, ascending.
    pub rational_roots: Vec<(Rational, usize)>,
    /// Monic factor without rational roots.
    pub remainder: Poly<Rational>,
}

impl fmt::Display for Spectrum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = self
            .rational_roots
            .iter()
            .map(|(r, m)| {
                let lin = if r.is_zero() {
                    "t".to_string()
                } else if r.is_negative() {
                    format!("(t + {})", r.abs())
                } else {
                    format!("(t - {r})")
                };
                if *m == 1 {
                    lin
                } else {
                    format!("{lin}^{m}")
                }
            })
            .collect();
        if self.remainder.degree().unwrap_or(0) > 0 {
            parts.push(format!("({})", self.remainder.display_in("t")));
        }
        if parts.is_empty() {
            parts.push("1".into());
        }
        write!(f, "{}", parts.join(" * "))
    }
}

fn divisors(n: &num_bigint::BigInt) -> Vec<num_bigint::BigInt> {
    use num_traits::{One, Signed, ToPrimitive, Zero};
    let n = n.abs();
    if n.is_zero() {
        return vec![];
    }
    let mut out = Vec::new();
    // the polynomials here have small coefficients; fall back to trial division
    let lim = n.to_u64().unwrap_or(u64::MAX);
    let mut d = 1u64;
    while d.saturating_mul(d) <= lim {
        let db = num_bigint::BigInt::from(d);
        if (&n % &db).is_zero() {
            out.push(db.clone());
            let other = &n / &db;
            if other != db {
                out.push(other);
            }
        }
        d += 1;
        if d > 1_000_000 {
            break;
        }
    }
    if out.is_empty() {
        out.push(num_bigint::BigInt::one());
    }
    out
}

/// Extract rational roots with multiplicity (rational root theorem).
pub fn factor_rational(p: &Poly<Rational>) -> Spectrum {
    use num_integer::Integer;
    let mut rem = p.monic();
    let mut roots: Vec<(Rational, usize)> = Vec::new();
    // strip zero roots
    let mut z = 0;
    while rem.degree().unwrap_or(0) > 0 && rem.coeff(0).is_zero() {
        rem = Poly::new(rem.coeffs()[1..].to_vec());
        z += 1;
    }
    if z > 0 {
        roots.push((Rational::zero(), z));
    }
    loop {
        let Some(deg) = rem.degree() else { break };
        if deg == 0 {
            break;
        }
        // clear denominators
        let mut l = num_bigint::BigInt::from(1);
        for c in rem.coeffs() {
            l = l.lcm(&c.denom());
        }
        let ints: Vec<num_bigint::BigInt> =
            rem.coeffs().iter().map(|c| (c.to_big() * &l).to_integer()).collect();
        let a0 = &ints[0];
        let an = &ints[deg];
        let mut found = None;
        'search: for pn in divisors(a0) {
            for qd in divisors(an) {
                for s in [1i64, -1] {
                    let r = Rational::from_big(num_rational::BigRational::new(
                        &pn * num_bigint::BigInt::from(s),
                        qd.clone(),
                    ));
                    if rem.eval(&r).is_zero() {
                        found = Some(r);
                        break 'search;
                    }
                }
            }
        }
        let Some(r) = found else { break };
        let lin = Poly::new(vec![-r.clone(), Rational::one()]);
        let mut m = 0;
        while let Some(qt) = rem.div_exact(&lin) {
            rem = qt;
            m += 1;
        }
        roots.push((r, m));
    }
    roots.sort_by(|a, b| a.0.cmp(&b.0));
    Spectrum { rational_roots: roots, remainder: rem }
}

impl<R: Ring> fmt::Debug for Matrix<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = (0..self.rows)
            .map(|i| {
                let r: Vec<String> = self.row(i).iter().map(|x| format!("{x:?}")).collect();
                format!("[{}]", r.join(", "))
            })
            .collect();
        write!(f, "[{}]", rows.join(", "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{q, Gaussian};
    use proptest::prelude::*;

    fn mq(rows: &[&[i64]]) -> Matrix<Rational> {
        Matrix::from_rows(rows.iter().map(|r| r.iter().map(|&x| Rational::from_int(x)).collect()).collect())
            .unwrap()
    }

    #[test]
    fn det_rank_inverse() {
        let a = mq(&[&[2, 1, 0], &[1, 3, 1], &[0, 1, 4]]);
        assert_eq!(a.det().unwrap(), q(18, 1));
        let ai = a.inverse().unwrap();
        assert_eq!(a.mul(&ai).unwrap(), Matrix::identity(3));
        let s = mq(&[&[1, 2], &[2, 4]]);
        assert_eq!(s.rank(), 1);
        assert_eq!(s.det().unwrap(), Rational::zero());
        assert!(matches!(s.inverse(), Err(Error::Singular)));
    }

    #[test]
    fn solve_reports_inconsistency() {
        let s = mq(&[&[1, 2], &[2, 4]]);
        assert!(matches!(s.solve(&[q(1, 1), q(1, 1)]), Err(Error::Inconsistent)));
        let (x, free) = s.solve(&[q(1, 1), q(2, 1)]).unwrap();
        assert_eq!(free, 1);
        assert_eq!(s.mul_vec(&x), vec![q(1, 1), q(2, 1)]);
    }

    #[test]
    fn charpoly_two_ways() {
        let a = mq(&[&[0, -1], &[1, 2]]);
        let p = a.charpoly().unwrap();
        assert_eq!(p, Poly::new(vec![q(1, 1), q(-2, 1), q(1, 1)]));
        assert_eq!(a.charpoly_by_det().unwrap(), p);
        let s = factor_rational(&p);
        assert_eq!(s.rational_roots, vec![(q(1, 1), 2)]);
        assert_eq!(s.to_string(), "(t - 1)^2");
    }

    #[test]
    fn factor_with_remainder() {
        // (t + 1/2) (t^2 + 1)
        let p = Poly::new(vec![q(1, 2), q(1, 1), q(1, 2), q(1, 1)]);
        let s = factor_rational(&p);
        assert_eq!(s.rational_roots, vec![(q(-1, 2), 1)]);
        assert_eq!(s.remainder, Poly::new(vec![q(1, 1), q(0, 1), q(1, 1)]));
    }

    #[test]
    fn rank_over_polynomials() {
        // [[t, t^2], [1, t]] has rank 1 over Q(i)(t)
        let t = Poly::<Gaussian>::x();
        let m = Matrix::from_rows(vec![vec![t.clone(), t.mul(&t)], vec![Poly::one(), t.clone()]]).unwrap();
        assert_eq!(m.rank(), 1);
        assert_eq!(m.transpose().rank(), 1);
    }

    proptest! {
        #[test]
        fn row_rank_equals_column_rank(v in proptest::collection::vec(-3i64..4, 12)) {
            let m = Matrix::new(3, 4, v.iter().map(|&x| Rational::from_int(x)).collect()).unwrap();
            prop_assert_eq!(m.rank(), m.transpose().rank());
            prop_assert_eq!(m.rank(), m.rref().1.len());
        }

        #[test]
        fn charpoly_agrees_with_determinant(v in proptest::collection::vec(-3i64..4, 9)) {
            let m = Matrix::new(3, 3, v.iter().map(|&x| Rational::from_int(x)).collect()).unwrap();
            prop_assert_eq!(m.charpoly().unwrap(), m.charpoly_by_det().unwrap());
        }
    }
}
