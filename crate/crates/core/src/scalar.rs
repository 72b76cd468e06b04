//! Exact scalars: the ring abstraction used everywhere, rationals and
//! Gaussian rationals.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Commutative ring with exact arithmetic. Every coefficient type in the
/// crate implements this.
pub trait Ring: Clone + PartialEq + fmt::Debug {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, o: &Self) -> Self;
    fn neg(&self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    fn from_rational(q: &Rational) -> Self;

    fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }
    fn add_assign(&mut self, o: &Self) {
        *self = self.add(o);
    }
    fn from_int(n: i64) -> Self {
        Self::from_rational(&Rational::from_int(n))
    }
    fn is_one(&self) -> bool {
        *self == Self::one()
    }
    fn scale(&self, q: &Rational) -> Self {
        self.mul(&Self::from_rational(q))
    }
    fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }
}

/// Integral domain with exact division (None when the quotient is not in the ring).
pub trait Domain: Ring {
    fn div_exact(&self, o: &Self) -> Option<Self>;
}

pub trait Field: Domain {
    fn inv(&self) -> Option<Self>;
}

/// Complex conjugation (identity on real types).
pub trait Conj {
    fn conj(&self) -> Self;
}

/// Exact rational number. Values whose numerator and denominator fit in
/// `i64` stay on a machine-word fast path; everything else is a `BigRational`.
/// The representation is canonical, so derived equality and hashing are exact.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Rational(Repr);

#[derive(Clone, PartialEq, Eq, Hash)]
enum Repr {
    /// Lowest terms, positive denominator.
    Small(i64, i64),
    Big(BigRational),
}

fn gcd_u(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

impl Rational {
    /// Reduce `n/d` (d != 0) from 128-bit intermediates.
    fn from_i128(n: i128, d: i128) -> Self {
        debug_assert!(d != 0);
        let (mut n, mut d) = if d < 0 { (-n, -d) } else { (n, d) };
        if n == 0 {
            return Rational(Repr::Small(0, 1));
        }
        let mut a = n.unsigned_abs();
        let mut b = d as u128;
        while b != 0 {
            (a, b) = (b, a % b);
        }
        n /= a as i128;
        d /= a as i128;
        match (i64::try_from(n), i64::try_from(d)) {
            (Ok(n), Ok(d)) => Rational(Repr::Small(n, d)),
            _ => Rational(Repr::Big(BigRational::new(n.into(), d.into()))),
        }
    }
    fn canon(q: BigRational) -> Self {
        match (q.numer().to_i64(), q.denom().to_i64()) {
            (Some(n), Some(d)) => Rational(Repr::Small(n, d)),
            _ => Rational(Repr::Big(q)),
        }
    }
    fn big(&self) -> std::borrow::Cow<'_, BigRational> {
        match &self.0 {
            Repr::Small(n, d) => std::borrow::Cow::Owned(BigRational::new_raw((*n).into(), (*d).into())),
            Repr::Big(q) => std::borrow::Cow::Borrowed(q),
        }
    }
    pub fn new(n: i64, d: i64) -> Result<Self> {
        if d == 0 {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::from_i128(n as i128, d as i128))
    }
    pub fn from_int(n: i64) -> Self {
        Rational(Repr::Small(n, 1))
    }
    pub fn from_bigint(n: BigInt) -> Self {
        Self::canon(BigRational::from_integer(n))
    }
    pub fn from_big(q: BigRational) -> Self {
        Self::canon(q)
    }
    pub fn to_big(&self) -> BigRational {
        self.big().into_owned()
    }
    pub fn numer(&self) -> BigInt {
        match &self.0 {
            Repr::Small(n, _) => (*n).into(),
            Repr::Big(q) => q.numer().clone(),
        }
    }
    pub fn denom(&self) -> BigInt {
        match &self.0 {
            Repr::Small(_, d) => (*d).into(),
            Repr::Big(q) => q.denom().clone(),
        }
    }
    pub fn zero() -> Self {
        Rational(Repr::Small(0, 1))
    }
    pub fn one() -> Self {
        Rational(Repr::Small(1, 1))
    }
    pub fn is_zero(&self) -> bool {
        matches!(self.0, Repr::Small(0, _))
    }
    pub fn is_integer(&self) -> bool {
        match &self.0 {
            Repr::Small(_, d) => *d == 1,
            Repr::Big(q) => q.is_integer(),
        }
    }
    pub fn is_negative(&self) -> bool {
        match &self.0 {
            Repr::Small(n, _) => *n < 0,
            Repr::Big(q) => q.is_negative(),
        }
    }
    pub fn abs(&self) -> Self {
        if self.is_negative() {
            -self
        } else {
            self.clone()
        }
    }
    pub fn to_i64(&self) -> Option<i64> {
        match &self.0 {
            Repr::Small(n, 1) => Some(*n),
            _ => None,
        }
    }
    pub fn recip(&self) -> Result<Self> {
        match &self.0 {
            Repr::Small(0, _) => Err(Error::DivisionByZero),
            Repr::Small(n, d) => Ok(Self::from_i128(*d as i128, *n as i128)),
            Repr::Big(q) => Ok(Self::canon(q.recip())),
        }
    }
    pub fn factorial(n: u32) -> Self {
        let mut acc = BigInt::one();
        for k in 2..=n {
            acc *= k;
        }
        Rational::from_bigint(acc)
    }
    pub fn binomial(n: u32, k: u32) -> Self {
        if k > n {
            return Rational::zero();
        }
        let mut acc = BigRational::one();
        for i in 0..k {
            acc = acc * BigRational::from_integer((n - i).into())
                / BigRational::from_integer((i + 1).into());
        }
        Self::canon(acc)
    }
    fn add_ref(&self, o: &Self) -> Self {
        if let (Repr::Small(a, b), Repr::Small(c, d)) = (&self.0, &o.0) {
            if b == d {
                return Self::from_i128(*a as i128 + *c as i128, *b as i128);
            }
            let (a, b, c, d) = (*a as i128, *b as i128, *c as i128, *d as i128);
            // |a d + c b| < 2^127 and b d < 2^126
            return Self::from_i128(a * d + c * b, b * d);
        }
        Self::canon(self.big().as_ref() + o.big().as_ref())
    }
    fn mul_ref(&self, o: &Self) -> Self {
        if let (Repr::Small(a, b), Repr::Small(c, d)) = (&self.0, &o.0) {
            if *a == 0 || *c == 0 {
                return Self::zero();
            }
            // cross-cancel first so the products stay small
            let g1 = gcd_u(a.unsigned_abs(), d.unsigned_abs()) as i128;
            let g2 = gcd_u(c.unsigned_abs(), b.unsigned_abs()) as i128;
            let n = (*a as i128 / g1) * (*c as i128 / g2);
            let m = (*b as i128 / g2) * (*d as i128 / g1);
            return match (i64::try_from(n), i64::try_from(m)) {
                (Ok(n), Ok(m)) => Rational(Repr::Small(n, m)),
                _ => Self::from_i128(n, m),
            };
        }
        Self::canon(self.big().as_ref() * o.big().as_ref())
    }
    fn neg_ref(&self) -> Self {
        match &self.0 {
            Repr::Small(n, d) => match n.checked_neg() {
                Some(m) => Rational(Repr::Small(m, *d)),
                None => Self::from_i128(-(*n as i128), *d as i128),
            },
            Repr::Big(q) => Self::canon(-q),
        }
    }
    fn div_ref(&self, o: &Self) -> Self {
        self.mul_ref(&o.recip().expect("division by zero rational"))
    }
}

impl PartialOrd for Rational {
    fn partial_cmp(&self, o: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(o))
    }
}

impl Ord for Rational {
    fn cmp(&self, o: &Self) -> std::cmp::Ordering {
        match (&self.0, &o.0) {
            (Repr::Small(a, b), Repr::Small(c, d)) => (*a as i128 * *d as i128).cmp(&(*c as i128 * *b as i128)),
            _ => self.big().as_ref().cmp(o.big().as_ref()),
        }
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.0 {
            Repr::Small(n, 1) => write!(f, "{n}"),
            Repr::Small(n, d) => write!(f, "{n}/{d}"),
            Repr::Big(q) if q.is_integer() => write!(f, "{}", q.numer()),
            Repr::Big(q) => write!(f, "{}/{}", q.numer(), q.denom()),
        }
    }
}

impl fmt::Debug for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Rational {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let bad = || Error::Parse(format!("not a rational: {s:?}"));
        let (n, d) = match s.split_once('/') {
            Some((n, d)) => (n.trim(), d.trim()),
            None => (s, "1"),
        };
        let n: BigInt = n.parse().map_err(|_| bad())?;
        let d: BigInt = d.parse().map_err(|_| bad())?;
        if d.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::canon(BigRational::new(n, d)))
    }
}

impl From<i64> for Rational {
    fn from(n: i64) -> Self {
        Rational::from_int(n)
    }
}

macro_rules! rational_binop {
    ($tr:ident, $m:ident, $f:ident) => {
        impl $tr for Rational {
            type Output = Rational;
            fn $m(self, o: Rational) -> Rational {
                self.$f(&o)
            }
        }
        impl<'a> $tr<&'a Rational> for &'a Rational {
            type Output = Rational;
            fn $m(self, o: &'a Rational) -> Rational {
                self.$f(o)
            }
        }
    };
}
rational_binop!(Add, add, add_ref);
rational_binop!(Mul, mul, mul_ref);
rational_binop!(Div, div, div_ref);

impl Sub for Rational {
    type Output = Rational;
    fn sub(self, o: Rational) -> Rational {
        self.add_ref(&o.neg_ref())
    }
}
impl<'a> Sub<&'a Rational> for &'a Rational {
    type Output = Rational;
    fn sub(self, o: &'a Rational) -> Rational {
        self.add_ref(&o.neg_ref())
    }
}

impl Neg for Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        self.neg_ref()
    }
}
impl Neg for &Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        self.neg_ref()
    }
}

impl Ring for Rational {
    fn zero() -> Self {
        Rational::zero()
    }
    fn one() -> Self {
        Rational::one()
    }
    fn is_zero(&self) -> bool {
        Rational::is_zero(self)
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn neg(&self) -> Self {
        -self
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn from_rational(q: &Rational) -> Self {
        q.clone()
    }
}

impl Domain for Rational {
    fn div_exact(&self, o: &Self) -> Option<Self> {
        o.inv().map(|i| self * &i)
    }
}

impl Field for Rational {
    fn inv(&self) -> Option<Self> {
        self.recip().ok()
    }
}

impl Conj for Rational {
    fn conj(&self) -> Self {
        self.clone()
    }
}

/// Gaussian rational `re + im*i`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Gaussian {
    pub re: Rational,
    pub im: Rational,
}

impl Gaussian {
    pub fn new(re: Rational, im: Rational) -> Self {
        Gaussian { re, im }
    }
    pub fn real(re: Rational) -> Self {
        Gaussian { re, im: Rational::zero() }
    }
    pub fn i() -> Self {
        Gaussian { re: Rational::zero(), im: Rational::one() }
    }
    pub fn from_ints(re: i64, im: i64) -> Self {
        Gaussian { re: Rational::from_int(re), im: Rational::from_int(im) }
    }
    pub fn norm(&self) -> Rational {
        &self.re * &self.re + &self.im * &self.im
    }
    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }
}

impl fmt::Display for Gaussian {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.re.is_zero(), self.im.is_zero()) {
            (_, true) => write!(f, "{}", self.re),
            (true, false) => write!(f, "{}*i", self.im),
            (false, false) => {
                if self.im.is_negative() {
                    write!(f, "{}-{}*i", self.re, self.im.abs())
                } else {
                    write!(f, "{}+{}*i", self.re, self.im)
                }
            }
        }
    }
}

impl fmt::Debug for Gaussian {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Gaussian {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let s: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let Some(body) = s.strip_suffix("*i") else {
            return Ok(Gaussian::real(s.parse()?));
        };
        // split at the last sign that is not the leading one
        let cut = body
            .char_indices()
            .skip(1)
            .filter(|&(_, c)| c == '+' || c == '-')
            .map(|(k, _)| k)
            .last();
        match cut {
            None => Ok(Gaussian::new(Rational::zero(), body.parse()?)),
            Some(k) => {
                let re: Rational = body[..k].parse()?;
                let im: Rational = body[k + 1..].parse()?;
                let im = if &body[k..k + 1] == "-" { -im } else { im };
                Ok(Gaussian::new(re, im))
            }
        }
    }
}

impl Ring for Gaussian {
    fn zero() -> Self {
        Gaussian::real(Rational::zero())
    }
    fn one() -> Self {
        Gaussian::real(Rational::one())
    }
    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }
    fn add(&self, o: &Self) -> Self {
        Gaussian::new(&self.re + &o.re, &self.im + &o.im)
    }
    fn neg(&self) -> Self {
        Gaussian::new(-&self.re, -&self.im)
    }
    fn mul(&self, o: &Self) -> Self {
        Gaussian::new(
            &self.re * &o.re - &self.im * &o.im,
            &self.re * &o.im + &self.im * &o.re,
        )
    }
    fn from_rational(q: &Rational) -> Self {
        Gaussian::real(q.clone())
    }
}

impl Domain for Gaussian {
    fn div_exact(&self, o: &Self) -> Option<Self> {
        o.inv().map(|i| self.mul(&i))
    }
}

impl Field for Gaussian {
    fn inv(&self) -> Option<Self> {
        let n = self.norm();
        let ni = n.recip().ok()?;
        Some(Gaussian::new(&self.re * &ni, -(&self.im * &ni)))
    }
}

impl Conj for Gaussian {
    fn conj(&self) -> Self {
        Gaussian::new(self.re.clone(), -&self.im)
    }
}

/// Shorthand used heavily in tests and examples.
pub fn q(n: i64, d: i64) -> Rational {
    Rational::new(n, d).expect("nonzero denominator")
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn rational_display_and_parse() {
        assert_eq!(q(6, -4).to_string(), "-3/2");
        assert_eq!("-3/2".parse::<Rational>().unwrap(), q(-3, 2));
        assert_eq!(q(4, 2).to_string(), "2");
        assert!(matches!("1/0".parse::<Rational>(), Err(Error::DivisionByZero)));
        assert!("x".parse::<Rational>().is_err());
    }

    #[test]
    fn factorial_binomial() {
        assert_eq!(Rational::factorial(5), Rational::from_int(120));
        assert_eq!(Rational::binomial(5, 2), Rational::from_int(10));
        assert_eq!(Rational::binomial(2, 5), Rational::zero());
    }

    #[test]
    fn gaussian_inverse() {
        let z = Gaussian::new(q(1, 2), q(-3, 1));
        assert_eq!(z.mul(&z.inv().unwrap()), Gaussian::one());
        assert!(Gaussian::zero().inv().is_none());
    }

    #[test]
    fn gaussian_text_roundtrip() {
        for z in [
            Gaussian::new(q(1, 2), q(-3, 4)),
            Gaussian::new(q(0, 1), q(5, 1)),
            Gaussian::new(q(-7, 3), q(0, 1)),
            Gaussian::new(q(-1, 1), q(2, 3)),
        ] {
            assert_eq!(z.to_string().parse::<Gaussian>().unwrap(), z, "{z}");
        }
    }

    fn oracle(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn fast_path_overflow_promotes() {
        let big = Rational::from_int(i64::MAX);
        let sq = &big * &big;
        assert_eq!(sq.to_big(), oracle(i64::MAX, 1) * oracle(i64::MAX, 1));
        assert_eq!(&(&sq / &big) - &big, Rational::zero());
        assert_eq!((-Rational::from_int(i64::MIN)).to_big(), -oracle(i64::MIN, 1));
        assert!(Rational::from_int(i64::MIN) < Rational::from_int(i64::MAX));
        assert!(sq > big);
    }

    proptest! {
        #[test]
        fn hybrid_matches_bigrational(
            a in any::<i64>(), b in 1i64..i64::MAX, c in any::<i64>(), d in 1i64..i64::MAX,
        ) {
            let (x, y) = (Rational::new(a, b).unwrap(), Rational::new(c, d).unwrap());
            let (ox, oy) = (oracle(a, b), oracle(c, d));
            prop_assert_eq!((&x + &y).to_big(), &ox + &oy);
            prop_assert_eq!((&x - &y).to_big(), &ox - &oy);
            prop_assert_eq!((&x * &y).to_big(), &ox * &oy);
            prop_assert_eq!(x.cmp(&y), ox.cmp(&oy));
            prop_assert_eq!(Rational::from_big(&ox * &oy), &x * &y);
        }

        #[test]
        fn gaussian_field_axioms(a in -9i64..9, b in -9i64..9, c in 1i64..9, d in -9i64..9) {
            let x = Gaussian::new(q(a, c), q(b, 1));
            let y = Gaussian::new(q(d, 1), q(a, c));
            prop_assert_eq!(x.mul(&y), y.mul(&x));
            prop_assert_eq!(x.mul(&y).conj(), x.conj().mul(&y.conj()));
            if !y.is_zero() {
                prop_assert_eq!(x.mul(&y).div_exact(&y).unwrap(), x);
            }
        }
    }
}
