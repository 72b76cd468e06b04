//! Expression language for forms.
//!
//! ```text
//! expr  := term (('+' | '-') term)*
//! term  := unary (('^h' | '^' | '*') unary)*
//! unary := '-' unary | atom
//! unary := '-' unary | power
//! power := atom ['^' INT]
//! atom  := INT ['/' INT] | 'h' | 'i' | 'e[' INT ']' | 'dx[' INT ']' | 'x[' INT ']'
//!        | 'e' INT | 'dx' INT | 'x' INT
//!        | 'mode(' INT (',' INT)* ')' | '(' expr ')'
//! ```
//!
//! `^` and `*` are the classical exterior product, `^h` the quantum one.
//! `^h` is recognised only when `h` follows the caret directly; write `^ h`
//! for the classical product with `h`. A caret followed by an integer
//! literal is a power, so `x1^2 * dx[2]` is `x_1^2 dx^2`. Indices are 1-based.
//! `i` is the imaginary unit and only exists on the torus.

use qdr_core::form::{Form, Terms};
use qdr_core::function::Differentiable;
use qdr_core::poisson::{field_wedge, FieldForm, PoissonField};
use qdr_core::poly::MultiPoly;
use qdr_core::{Blade, FourierFn, Gaussian, Laurent, Rational, Ring};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ExprError {
    #[error("column {col}: {msg}")]
    Syntax { col: usize, msg: String },
    #[error("{0}")]
    Eval(String),
}

type Res<T> = Result<T, ExprError>;

fn syntax<T>(col: usize, msg: impl Into<String>) -> Res<T> {
    Err(ExprError::Syntax { col, msg: msg.into() })
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Int(i64),
    Ident(String),
    LBracket,
    RBracket,
    LParen,
    RParen,
    Comma,
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    QCaret,
}

fn lex(s: &str) -> Res<Vec<(Tok, usize)>> {
    let cs: Vec<char> = s.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < cs.len() {
        let c = cs[i];
        let col = i + 1;
        if c.is_whitespace() {
            i += 1;
            continue;
        }
        if c.is_ascii_digit() {
            let st = i;
            while i < cs.len() && cs[i].is_ascii_digit() {
                i += 1;
            }
            let txt: String = cs[st..i].iter().collect();
            let v = txt.parse::<i64>().or_else(|_| syntax(col, "integer too large"))?;
            out.push((Tok::Int(v), col));
            continue;
        }
        if c.is_ascii_alphabetic() {
            let st = i;
            while i < cs.len() && cs[i].is_ascii_alphanumeric() {
                i += 1;
            }
            out.push((Tok::Ident(cs[st..i].iter().collect()), col));
            continue;
        }
        let t = match c {
            '[' => Tok::LBracket,
            ']' => Tok::RBracket,
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            ',' => Tok::Comma,
            '+' => Tok::Plus,
            '-' => Tok::Minus,
            '*' => Tok::Star,
            '/' => Tok::Slash,
            '^' if cs.get(i + 1) == Some(&'h') && !cs.get(i + 2).is_some_and(|c| c.is_ascii_alphanumeric()) => {
                i += 1;
                Tok::QCaret
            }
            '^' => Tok::Caret,
            _ => return syntax(col, format!("unexpected character {c:?}")),
        };
        out.push((t, col));
        i += 1;
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq)]
pub enum Expr {
    Num(Rational),
    H,
    I,
    Basis(usize),
    Coord(usize),
    Mode(Vec<i32>),
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Wedge(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, u32),
    QWedge(Box<Expr>, Box<Expr>),
}

struct Parser {
    toks: Vec<(Tok, usize)>,
    pos: usize,
    end: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|t| &t.0)
    }
    fn col(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end, |t| t.1)
    }
    fn eat(&mut self, t: &Tok) -> bool {
        if self.peek() == Some(t) {
            self.pos += 1;
            true
        } else {
            false
        }
    }
    fn expect(&mut self, t: Tok, what: &str) -> Res<()> {
        if self.eat(&t) {
            Ok(())
        } else {
            syntax(self.col(), format!("expected {what}"))
        }
    }
    fn int(&mut self) -> Res<i64> {
        let neg = self.eat(&Tok::Minus);
        match self.peek() {
            Some(Tok::Int(v)) => {
                let v = *v;
                self.pos += 1;
                Ok(if neg { -v } else { v })
            }
            _ => syntax(self.col(), "expected an integer"),
        }
    }
    fn index(&mut self) -> Res<usize> {
        let col = self.col();
        self.expect(Tok::LBracket, "'['")?;
        let v = self.int()?;
        self.expect(Tok::RBracket, "']'")?;
        if v < 1 {
            return syntax(col, "indices start at 1");
        }
        Ok(v as usize - 1)
    }
    fn expr(&mut self) -> Res<Expr> {
        let mut lhs = self.term()?;
        loop {
            if self.eat(&Tok::Plus) {
                lhs = Expr::Add(Box::new(lhs), Box::new(self.term()?));
            } else if self.eat(&Tok::Minus) {
                lhs = Expr::Sub(Box::new(lhs), Box::new(self.term()?));
            } else {
                return Ok(lhs);
            }
        }
    }
    fn term(&mut self) -> Res<Expr> {
        let mut lhs = self.unary()?;
        loop {
            if self.eat(&Tok::QCaret) {
                lhs = Expr::QWedge(Box::new(lhs), Box::new(self.unary()?));
            } else if self.eat(&Tok::Caret) || self.eat(&Tok::Star) {
                lhs = Expr::Wedge(Box::new(lhs), Box::new(self.unary()?));
            } else {
                return Ok(lhs);
            }
        }
    }
    fn unary(&mut self) -> Res<Expr> {
        if self.eat(&Tok::Minus) {
            return Ok(Expr::Neg(Box::new(self.unary()?)));
        }
        let a = self.atom()?;
        if self.peek() == Some(&Tok::Caret) {
            if let Some((Tok::Int(k), col)) = self.toks.get(self.pos + 1).cloned() {
                self.pos += 2;
                let k = u32::try_from(k).ok().filter(|&k| k <= 64).ok_or(ExprError::Syntax { col, msg: "exponent too large".into() })?;
                return Ok(Expr::Pow(Box::new(a), k));
            }
        }
        Ok(a)
    }
    fn atom(&mut self) -> Res<Expr> {
        let col = self.col();
        match self.peek().cloned() {
            Some(Tok::Int(n)) => {
                self.pos += 1;
                if self.eat(&Tok::Slash) {
                    let dcol = self.col();
                    let d = self.int()?;
                    return Rational::new(n, d).map(Expr::Num).or_else(|_| syntax(dcol, "zero denominator"));
                }
                Ok(Expr::Num(Rational::from_int(n)))
            }
            Some(Tok::LParen) => {
                self.pos += 1;
                let e = self.expr()?;
                self.expect(Tok::RParen, "')'")?;
                Ok(e)
            }
            Some(Tok::Ident(id)) => {
                self.pos += 1;
                match id.as_str() {
                    "h" => Ok(Expr::H),
                    "i" => Ok(Expr::I),
                    "e" | "dx" => Ok(Expr::Basis(self.index()?)),
                    "x" => Ok(Expr::Coord(self.index()?)),
                    "mode" => {
                        self.expect(Tok::LParen, "'('")?;
                        let mut k = vec![self.int()?];
                        while self.eat(&Tok::Comma) {
                            k.push(self.int()?);
                        }
                        self.expect(Tok::RParen, "')'")?;
                        let k = k.into_iter().map(|v| i32::try_from(v).or_else(|_| syntax(col, "mode too large"))).collect::<Res<_>>()?;
                        Ok(Expr::Mode(k))
                    }
                    other => {
                        let split = other.find(|c: char| c.is_ascii_digit()).unwrap_or(other.len());
                        let (head, num) = other.split_at(split);
                        let ix = num.parse::<usize>().ok().filter(|&v| v >= 1).map(|v| v - 1);
                        match (head, ix) {
                            ("e" | "dx", Some(j)) => Ok(Expr::Basis(j)),
                            ("x", Some(j)) => Ok(Expr::Coord(j)),
                            _ => syntax(col, format!("unknown identifier {other:?}")),
                        }
                    }
                }
            }
            Some(t) => syntax(col, format!("unexpected {t:?}")),
            None => syntax(col, "unexpected end of expression"),
        }
    }
}

pub fn parse(s: &str) -> Res<Expr> {
    let toks = lex(s)?;
    let mut p = Parser { toks, pos: 0, end: s.chars().count() + 1 };
    let e = p.expr()?;
    if p.pos != p.toks.len() {
        return syntax(p.col(), "trailing input");
    }
    Ok(e)
}

/// Coefficient functions an expression can denote.
pub trait Coefficient: Differentiable + Terms + std::fmt::Display {
    fn coordinate(j: usize) -> Option<Self>;
    fn fourier_mode(k: &[i32]) -> Option<Self>;
    fn imaginary() -> Option<Self>;
    /// Constant value, if the function is constant and rational.
    fn as_rational(&self) -> Option<Rational>;
    fn from_q(q: &Rational) -> Self {
        Self::from_rational(q)
    }
    /// Exact text for machine output: `"p/q"` when constant.
    fn exact_text(&self) -> String {
        self.as_rational().map_or_else(|| self.to_string(), |q| q.to_string())
    }
}

impl Coefficient for Rational {
    fn coordinate(_: usize) -> Option<Self> {
        None
    }
    fn fourier_mode(_: &[i32]) -> Option<Self> {
        None
    }
    fn imaginary() -> Option<Self> {
        None
    }
    fn as_rational(&self) -> Option<Rational> {
        Some(self.clone())
    }
}

impl Coefficient for MultiPoly<Rational> {
    fn coordinate(j: usize) -> Option<Self> {
        Some(MultiPoly::var(j))
    }
    fn fourier_mode(_: &[i32]) -> Option<Self> {
        None
    }
    fn imaginary() -> Option<Self> {
        None
    }
    fn as_rational(&self) -> Option<Rational> {
        (self.total_degree().unwrap_or(0) == 0).then(|| self.constant_term())
    }
}

impl Coefficient for FourierFn {
    fn coordinate(_: usize) -> Option<Self> {
        None
    }
    fn fourier_mode(k: &[i32]) -> Option<Self> {
        Some(FourierFn::mode(k.to_vec(), Gaussian::one()))
    }
    fn imaginary() -> Option<Self> {
        Some(FourierFn::mode(vec![], Gaussian::i()))
    }
    fn as_rational(&self) -> Option<Rational> {
        if self.is_zero() {
            return Some(Rational::zero());
        }
        let terms: Vec<_> = self.terms().collect();
        match terms.as_slice() {
            [(k, 0, c)] if k.is_empty() && c.is_real() => Some(c.re.clone()),
            _ => None,
        }
    }
}

/// Evaluate in ambient dimension `dim`; `^h` uses `w`.
pub fn eval<C: Coefficient>(e: &Expr, dim: usize, w: &PoissonField<C>) -> Res<FieldForm<C>> {
    let scalar = |c: C| Form::scalar(dim, Laurent::constant(c));
    let ev = |x: &Expr| eval(x, dim, w);
    Ok(match e {
        Expr::Num(q) => scalar(C::from_q(q)),
        Expr::H => Form::scalar(dim, Laurent::monomial(1, C::one())),
        Expr::I => scalar(C::imaginary().ok_or_else(|| ExprError::Eval("i is only available on the torus".into()))?),
        Expr::Basis(j) => {
            if *j >= dim {
                return Err(ExprError::Eval(format!("e[{}] outside dimension {dim}", j + 1)));
            }
            Form::blade(dim, Blade::single(*j), Laurent::one())
        }
        Expr::Coord(j) => {
            if *j >= dim {
                return Err(ExprError::Eval(format!("x[{}] outside dimension {dim}", j + 1)));
            }
            scalar(C::coordinate(*j).ok_or_else(|| ExprError::Eval("coordinates x[i] are not available on this model".into()))?)
        }
        Expr::Mode(k) => {
            if k.len() > dim {
                return Err(ExprError::Eval(format!("mode has {} entries in dimension {dim}", k.len())));
            }
            scalar(C::fourier_mode(k).ok_or_else(|| ExprError::Eval("mode(...) is only available on the torus".into()))?)
        }
        Expr::Neg(a) => ev(a)?.neg(),
        Expr::Add(a, b) => ev(a)?.add(&ev(b)?),
        Expr::Sub(a, b) => ev(a)?.sub(&ev(b)?),
        Expr::Wedge(a, b) => ev(a)?.wedge(&ev(b)?),
        Expr::Pow(a, k) => {
            let a = ev(a)?;
            (0..*k).fold(Form::one(dim), |acc, _| acc.wedge(&a))
        }
        Expr::QWedge(a, b) => field_wedge(&ev(a)?, &ev(b)?, w).map_err(|e| ExprError::Eval(e.to_string()))?,
    })
}

pub fn eval_str<C: Coefficient>(s: &str, dim: usize, w: &PoissonField<C>) -> Res<FieldForm<C>> {
    eval(&parse(s)?, dim, w)
}

/// Largest absolute Fourier mode used by an expression.
pub fn max_mode(e: &Expr) -> i32 {
    match e {
        Expr::Mode(k) => k.iter().map(|x| x.abs()).max().unwrap_or(0),
        Expr::Neg(a) | Expr::Pow(a, _) => max_mode(a),
        Expr::Add(a, b) | Expr::Sub(a, b) | Expr::Wedge(a, b) | Expr::QWedge(a, b) => max_mode(a).max(max_mode(b)),
        _ => 0,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use qdr_core::poisson::fixtures;

    type P = MultiPoly<Rational>;

    #[test]
    fn quantum_product_text() {
        let w = fixtures::standard_symplectic(1);
        let f = eval_str::<P>("e[1] ^h e[2]", 2, &w).unwrap();
        assert_eq!(f.to_string(), "e1^e2 + (-1)*h");
        let g = eval_str::<P>("dx[1]^dx[2] - h", 2, &w).unwrap();
        assert_eq!(f, g);
    }

    #[test]
    fn caret_h_disambiguation() {
        let w = fixtures::standard_symplectic(1);
        let a = eval_str::<P>("e[1] ^ h", 2, &w).unwrap();
        let b = eval_str::<P>("h * e[1]", 2, &w).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn rationals_and_precedence() {
        let w = fixtures::standard_symplectic(1);
        let a = eval_str::<P>("3/2 * x[1] + -1/2", 2, &w).unwrap();
        assert_eq!(a.to_string(), "(-1/2) + (3/2)*x1");
        assert_eq!(eval_str::<P>("(1 + 1) * 2", 2, &w).unwrap(), eval_str::<P>("4", 2, &w).unwrap());
    }

    #[test]
    fn powers_and_short_names() {
        let w = fixtures::standard_symplectic(1);
        let a = eval_str::<P>("2 * x1^2 * dx[2]", 2, &w).unwrap();
        let b = eval_str::<P>("2 * x[1] * x[1] * e2", 2, &w).unwrap();
        assert_eq!(a, b);
        assert!(eval_str::<P>("e1^2", 2, &w).unwrap().is_zero());
        assert!(matches!(parse("x0"), Err(ExprError::Syntax { col: 1, .. })));
    }

    #[test]
    fn errors_carry_columns() {
        assert_eq!(parse("e[1] + ").unwrap_err(), ExprError::Syntax { col: 8, msg: "unexpected end of expression".into() });
        assert!(matches!(parse("e[0]"), Err(ExprError::Syntax { col: 2, .. })));
        assert!(matches!(parse("foo"), Err(ExprError::Syntax { col: 1, .. })));
        assert!(matches!(parse("1/0"), Err(ExprError::Syntax { col: 3, .. })));
        assert!(matches!(parse("e[1] $"), Err(ExprError::Syntax { col: 6, .. })));
        let w = fixtures::standard_symplectic(1);
        assert!(eval_str::<P>("e[3]", 2, &w).is_err());
        assert!(eval_str::<P>("mode(1,0)", 2, &w).is_err());
    }

    #[test]
    fn torus_atoms() {
        let w = fixtures::torus(1);
        let f = eval_str::<FourierFn>("i * mode(1,0) * e[1]", 2, &w).unwrap();
        assert_eq!(f.to_string(), "(1*i)*mode(1)*e1");
        assert!(eval_str::<FourierFn>("x[1]", 2, &w).is_err());
        assert_eq!(max_mode(&parse("mode(2,-3) + mode(1)").unwrap()), 3);
    }
}
