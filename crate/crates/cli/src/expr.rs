//! Operator expressions: `H`, `x`, `D` (`∂`), `Int` (`∫`), `e(i,j)`, `Dinv`,
//! rational literals, `+ - * ^`, division by a literal and commutators
//! `[a,b]`.
//!
//! Precedence, loosest first: sums, unary minus, products and quotients,
//! powers. Juxtaposition is not multiplication.

use std::fmt;

use thiserror::Error;

use intdiff::{B1Elem, HPoly, IOp, Scalar};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Dialect {
    I1,
    B1,
}

impl fmt::Display for Dialect {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Dialect::I1 => "I1",
            Dialect::B1 => "B1",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Symbol {
    One,
    H,
    X,
    Der,
    Int,
    DerInv,
}

impl Symbol {
    fn name(self) -> &'static str {
        match self {
            Symbol::One => "one",
            Symbol::H => "H",
            Symbol::X => "x",
            Symbol::Der => "D",
            Symbol::Int => "Int",
            Symbol::DerInv => "Dinv",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Expr {
    /// Nonnegative literal, `p` or `p/q`; negative values go through
    /// [`Expr::Neg`].
    Num(Scalar),
    Sym(Symbol),
    Unit(usize, usize),
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    /// Division by a positive integer.
    Div(Box<Expr>, u64),
    Pow(Box<Expr>, u32),
    Comm(Box<Expr>, Box<Expr>),
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("syntax error at {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("{what} at {pos} is not available in the {dialect} dialect")]
    Dialect {
        pos: usize,
        what: String,
        dialect: Dialect,
    },
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Num(String),
    Ident(String),
    Punct(char),
}

fn lex(src: &str) -> Result<Vec<(usize, Tok)>, ParseError> {
    let chars: Vec<(usize, char)> = src.char_indices().collect();
    let mut out = Vec::new();
    let mut k = 0;
    while k < chars.len() {
        let (pos, c) = chars[k];
        if c.is_whitespace() {
            k += 1;
        } else if c.is_ascii_digit() {
            let start = k;
            while k < chars.len() && chars[k].1.is_ascii_digit() {
                k += 1;
            }
            out.push((
                pos,
                Tok::Num(chars[start..k].iter().map(|&(_, c)| c).collect()),
            ));
        } else if c.is_ascii_alphabetic() {
            let start = k;
            while k < chars.len() && chars[k].1.is_ascii_alphanumeric() {
                k += 1;
            }
            out.push((
                pos,
                Tok::Ident(chars[start..k].iter().map(|&(_, c)| c).collect()),
            ));
        } else if c == '∂' {
            out.push((pos, Tok::Ident("D".into())));
            k += 1;
        } else if c == '∫' {
            out.push((pos, Tok::Ident("Int".into())));
            k += 1;
        } else if "+-*/^()[],".contains(c) {
            out.push((pos, Tok::Punct(c)));
            k += 1;
        } else {
            return Err(ParseError::Syntax {
                pos,
                msg: format!("unexpected character {c:?}"),
            });
        }
    }
    Ok(out)
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    at: usize,
    end: usize,
    dialect: Dialect,
}

impl Parser {
    fn pos(&self) -> usize {
        self.toks.get(self.at).map_or(self.end, |(p, _)| *p)
    }

    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.at).map(|(_, t)| t)
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T, ParseError> {
        Err(ParseError::Syntax {
            pos: self.pos(),
            msg: msg.into(),
        })
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(&Tok::Punct(c)) {
            self.at += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<(), ParseError> {
        if self.eat(c) {
            Ok(())
        } else {
            self.err(format!("expected '{c}'"))
        }
    }

    fn sum(&mut self) -> Result<Expr, ParseError> {
        let mut acc = self.term()?;
        loop {
            if self.eat('+') {
                acc = Expr::Add(Box::new(acc), Box::new(self.term()?));
            } else if self.eat('-') {
                acc = Expr::Sub(Box::new(acc), Box::new(self.term()?));
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<Expr, ParseError> {
        if self.eat('-') {
            Ok(Expr::Neg(Box::new(self.term()?)))
        } else {
            self.product()
        }
    }

    fn product(&mut self) -> Result<Expr, ParseError> {
        // `p/q` directly after a bare literal `p` is the rational literal.
        let mut bare = matches!(self.peek(), Some(Tok::Num(_)));
        let mut acc = self.power()?;
        bare &= matches!(acc, Expr::Num(_));
        loop {
            if self.eat('*') {
                acc = Expr::Mul(Box::new(acc), Box::new(self.power()?));
            } else if self.eat('/') {
                let pos = self.pos();
                let q = self.uint()?;
                if q > i64::MAX as u64 {
                    return self.err("divisor too large");
                }
                if q == 0 {
                    return Err(ParseError::Syntax {
                        pos,
                        msg: "division by zero".into(),
                    });
                }
                acc = match acc {
                    Expr::Num(p) if bare => Expr::Num(p / Scalar::from_int(q as i64)),
                    other => Expr::Div(Box::new(other), q),
                };
            } else {
                return Ok(acc);
            }
            bare = false;
        }
    }

    fn power(&mut self) -> Result<Expr, ParseError> {
        let base = self.primary()?;
        if !self.eat('^') {
            return Ok(base);
        }
        let n = self.uint()?;
        let n = u32::try_from(n).or_else(|_| self.err("exponent too large"))?;
        Ok(Expr::Pow(Box::new(base), n))
    }

    fn uint(&mut self) -> Result<u64, ParseError> {
        match self.peek() {
            Some(Tok::Num(s)) => {
                let v = s.parse().or_else(|_| self.err("integer too large"))?;
                self.at += 1;
                Ok(v)
            }
            _ => self.err("expected a nonnegative integer"),
        }
    }

    fn primary(&mut self) -> Result<Expr, ParseError> {
        let pos = self.pos();
        match self.peek().cloned() {
            Some(Tok::Num(digits)) => {
                self.at += 1;
                Ok(Expr::Num(digits.parse().expect("digit string")))
            }
            Some(Tok::Punct('(')) => {
                self.at += 1;
                let e = self.sum()?;
                self.expect(')')?;
                Ok(e)
            }
            Some(Tok::Punct('[')) => {
                self.at += 1;
                let a = self.sum()?;
                self.expect(',')?;
                let b = self.sum()?;
                self.expect(']')?;
                Ok(Expr::Comm(Box::new(a), Box::new(b)))
            }
            Some(Tok::Ident(name)) => {
                self.at += 1;
                let sym = match name.as_str() {
                    "one" => Symbol::One,
                    "H" => Symbol::H,
                    "x" => Symbol::X,
                    "D" => Symbol::Der,
                    "Int" => Symbol::Int,
                    "Dinv" => Symbol::DerInv,
                    "e" => return self.unit(pos),
                    _ => {
                        return Err(ParseError::Syntax {
                            pos,
                            msg: format!("unknown symbol {name:?}"),
                        })
                    }
                };
                if sym == Symbol::DerInv && self.dialect == Dialect::I1 {
                    return Err(ParseError::Dialect {
                        pos,
                        what: "Dinv".into(),
                        dialect: self.dialect,
                    });
                }
                Ok(Expr::Sym(sym))
            }
            Some(Tok::Punct(c)) => self.err(format!("unexpected '{c}'")),
            None => self.err("unexpected end of input"),
        }
    }

    fn unit(&mut self, pos: usize) -> Result<Expr, ParseError> {
        if self.dialect == Dialect::B1 {
            return Err(ParseError::Dialect {
                pos,
                what: "e(i,j)".into(),
                dialect: self.dialect,
            });
        }
        self.expect('(')?;
        let i = self.index()?;
        self.expect(',')?;
        let j = self.index()?;
        self.expect(')')?;
        Ok(Expr::Unit(i, j))
    }

    fn index(&mut self) -> Result<usize, ParseError> {
        let v = self.uint()?;
        usize::try_from(v).or_else(|_| self.err("index too large"))
    }
}

pub fn parse(src: &str, dialect: Dialect) -> Result<Expr, ParseError> {
    let mut p = Parser {
        toks: lex(src)?,
        at: 0,
        end: src.len(),
        dialect,
    };
    let e = p.sum()?;
    if p.at != p.toks.len() {
        return p.err("unexpected trailing input");
    }
    Ok(e)
}

// Binding strength used by the printer.
const SUM: u8 = 1;
const TERM: u8 = 2;
const PRODUCT: u8 = 3;
const POWER: u8 = 4;
const ATOM: u8 = 5;

impl Expr {
    fn strength(&self) -> u8 {
        match self {
            Expr::Add(..) | Expr::Sub(..) => SUM,
            Expr::Neg(_) => TERM,
            Expr::Mul(..) | Expr::Div(..) => PRODUCT,
            Expr::Pow(..) => POWER,
            Expr::Num(q) if !q.is_integer() => PRODUCT,
            _ => ATOM,
        }
    }

    fn write_at(&self, f: &mut fmt::Formatter<'_>, min: u8) -> fmt::Result {
        if self.strength() < min {
            f.write_str("(")?;
            self.write_at(f, SUM)?;
            return f.write_str(")");
        }
        match self {
            Expr::Num(q) => write!(f, "{q}"),
            Expr::Sym(s) => f.write_str(s.name()),
            Expr::Unit(i, j) => write!(f, "e({i},{j})"),
            Expr::Neg(a) => {
                f.write_str("-")?;
                a.write_at(f, TERM)
            }
            Expr::Add(a, b) => {
                a.write_at(f, SUM)?;
                f.write_str(" + ")?;
                b.write_at(f, TERM)
            }
            Expr::Sub(a, b) => {
                a.write_at(f, SUM)?;
                f.write_str(" - ")?;
                b.write_at(f, TERM)
            }
            Expr::Mul(a, b) => {
                a.write_at(f, PRODUCT)?;
                f.write_str("*")?;
                b.write_at(f, POWER)
            }
            Expr::Div(a, q) => {
                // a bare integer before `/` would read back as a fraction
                let min = if matches!(**a, Expr::Num(_)) {
                    ATOM + 1
                } else {
                    PRODUCT
                };
                a.write_at(f, min)?;
                write!(f, "/{q}")
            }
            Expr::Pow(a, n) => {
                a.write_at(f, ATOM)?;
                write!(f, "^{n}")
            }
            Expr::Comm(a, b) => {
                f.write_str("[")?;
                a.write_at(f, SUM)?;
                f.write_str(", ")?;
                b.write_at(f, SUM)?;
                f.write_str("]")
            }
        }
    }
}

/// Prints with the fewest parentheses that parse back to the same tree.
impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.write_at(f, SUM)
    }
}

/// A ring an expression can be evaluated in.
pub trait Target: Sized + Clone {
    fn lift(c: Scalar) -> Self;
    fn symbol(s: Symbol) -> Option<Self>;
    fn unit(i: usize, j: usize) -> Option<Self>;
    fn add(&self, b: &Self) -> Self;
    fn neg(&self) -> Self;
    fn mul(&self, b: &Self) -> Self;
    fn scale(&self, c: &Scalar) -> Self;
}

/// `what` is the offending symbol when the target has no such element.
#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("{what} cannot be evaluated here")]
pub struct EvalError {
    pub what: String,
}

pub fn eval<T: Target>(e: &Expr) -> Result<T, EvalError> {
    Ok(match e {
        Expr::Num(q) => T::lift(q.clone()),
        Expr::Sym(s) => T::symbol(*s).ok_or_else(|| EvalError {
            what: s.name().into(),
        })?,
        Expr::Unit(i, j) => T::unit(*i, *j).ok_or_else(|| EvalError {
            what: format!("e({i},{j})"),
        })?,
        Expr::Neg(a) => eval::<T>(a)?.neg(),
        Expr::Add(a, b) => eval::<T>(a)?.add(&eval(b)?),
        Expr::Sub(a, b) => eval::<T>(a)?.add(&eval::<T>(b)?.neg()),
        Expr::Mul(a, b) => eval::<T>(a)?.mul(&eval(b)?),
        Expr::Div(a, q) => eval::<T>(a)?.scale(&Scalar::new(1, *q as i64)),
        Expr::Pow(a, n) => {
            let base = eval::<T>(a)?;
            (0..*n).fold(T::lift(Scalar::one()), |acc, _| acc.mul(&base))
        }
        Expr::Comm(a, b) => {
            let (a, b) = (eval::<T>(a)?, eval::<T>(b)?);
            a.mul(&b).add(&b.mul(&a).neg())
        }
    })
}

impl Target for IOp {
    fn lift(c: Scalar) -> Self {
        IOp::scalar(c)
    }
    fn symbol(s: Symbol) -> Option<Self> {
        Some(match s {
            Symbol::One => IOp::one(),
            Symbol::H => IOp::h(),
            Symbol::X => IOp::x(),
            Symbol::Der => IOp::der(),
            Symbol::Int => IOp::int(),
            Symbol::DerInv => return None,
        })
    }
    fn unit(i: usize, j: usize) -> Option<Self> {
        Some(IOp::e(i, j))
    }
    fn add(&self, b: &Self) -> Self {
        self + b
    }
    fn neg(&self) -> Self {
        -self
    }
    fn mul(&self, b: &Self) -> Self {
        self * b
    }
    fn scale(&self, c: &Scalar) -> Self {
        IOp::scale(self, c)
    }
}

impl Target for B1Elem {
    fn lift(c: Scalar) -> Self {
        B1Elem::scalar(c)
    }
    fn symbol(s: Symbol) -> Option<Self> {
        Some(match s {
            Symbol::One => B1Elem::one(),
            Symbol::H => B1Elem::h(),
            // images of ∫ and x = ∫H in the quotient
            Symbol::X => &B1Elem::der_inv() * &B1Elem::h(),
            Symbol::Der => B1Elem::der(),
            Symbol::Int | Symbol::DerInv => B1Elem::der_inv(),
        })
    }
    fn unit(_: usize, _: usize) -> Option<Self> {
        None
    }
    fn add(&self, b: &Self) -> Self {
        self + b
    }
    fn neg(&self) -> Self {
        -self
    }
    fn mul(&self, b: &Self) -> Self {
        self * b
    }
    fn scale(&self, c: &Scalar) -> Self {
        B1Elem::scale(self, c)
    }
}

/// A polynomial in `x` in the monomial basis, for the `apply` argument.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonomialPoly(pub HPoly);

impl Target for MonomialPoly {
    fn lift(c: Scalar) -> Self {
        MonomialPoly(HPoly::constant(c))
    }
    fn symbol(s: Symbol) -> Option<Self> {
        match s {
            Symbol::One => Some(MonomialPoly(HPoly::one())),
            Symbol::X => Some(MonomialPoly(HPoly::var())),
            _ => None,
        }
    }
    fn unit(_: usize, _: usize) -> Option<Self> {
        None
    }
    fn add(&self, b: &Self) -> Self {
        MonomialPoly(&self.0 + &b.0)
    }
    fn neg(&self) -> Self {
        MonomialPoly(-&self.0)
    }
    fn mul(&self, b: &Self) -> Self {
        MonomialPoly(&self.0 * &b.0)
    }
    fn scale(&self, c: &Scalar) -> Self {
        MonomialPoly(self.0.scale(c))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Expr {
        parse(s, Dialect::I1).unwrap()
    }

    fn b(e: Expr) -> Box<Expr> {
        Box::new(e)
    }

    #[test]
    fn parse_examples() {
        assert_eq!(
            p("D*Int"),
            Expr::Mul(b(Expr::Sym(Symbol::Der)), b(Expr::Sym(Symbol::Int)))
        );
        assert_eq!(
            p("[H,Int] - Int"),
            Expr::Sub(
                b(Expr::Comm(
                    b(Expr::Sym(Symbol::H)),
                    b(Expr::Sym(Symbol::Int))
                )),
                b(Expr::Sym(Symbol::Int))
            )
        );
        assert_eq!(p("e(0,1)^2"), Expr::Pow(b(Expr::Unit(0, 1)), 2));
        assert_eq!(p("∂ * ∫"), p("D*Int"));
        assert_eq!(
            p("1/2*H"),
            Expr::Mul(b(Expr::Num(Scalar::new(1, 2))), b(Expr::Sym(Symbol::H)))
        );
        assert_eq!(p("H/3"), Expr::Div(b(Expr::Sym(Symbol::H)), 3));
        assert_eq!(p("2/3/5"), Expr::Div(b(Expr::Num(Scalar::new(2, 3))), 5));
        assert_eq!(p("(2)/3"), Expr::Div(b(Expr::Num(Scalar::from_int(2))), 3));
        assert_eq!(
            p("H*2/3"),
            Expr::Div(
                b(Expr::Mul(
                    b(Expr::Sym(Symbol::H)),
                    b(Expr::Num(Scalar::from_int(2)))
                )),
                3
            )
        );
        assert_eq!(
            p("-H*D"),
            Expr::Neg(b(Expr::Mul(
                b(Expr::Sym(Symbol::H)),
                b(Expr::Sym(Symbol::Der))
            )))
        );
    }

    #[test]
    fn precedence() {
        assert_eq!(p("H + D*Int^2"), p("H + (D*(Int^2))"));
        assert_eq!(p("H - D - Int"), p("(H - D) - Int"));
    }

    #[test]
    fn errors() {
        assert_eq!(
            parse("Dinv", Dialect::I1),
            Err(ParseError::Dialect {
                pos: 0,
                what: "Dinv".into(),
                dialect: Dialect::I1
            })
        );
        assert!(matches!(
            parse("H + e(0,0)", Dialect::B1),
            Err(ParseError::Dialect { pos: 4, .. })
        ));
        assert!(matches!(
            parse("H D", Dialect::I1),
            Err(ParseError::Syntax { pos: 2, .. })
        ));
        assert!(matches!(
            parse("H +", Dialect::I1),
            Err(ParseError::Syntax { pos: 3, .. })
        ));
        assert!(matches!(
            parse("D^-1", Dialect::I1),
            Err(ParseError::Syntax { pos: 2, .. })
        ));
        assert!(matches!(
            parse("H/0", Dialect::I1),
            Err(ParseError::Syntax { .. })
        ));
        assert!(matches!(
            parse("1/0", Dialect::I1),
            Err(ParseError::Syntax { .. })
        ));
        assert!(matches!(
            parse("y", Dialect::I1),
            Err(ParseError::Syntax { pos: 0, .. })
        ));
        assert!(matches!(
            parse("(H", Dialect::I1),
            Err(ParseError::Syntax { pos: 2, .. })
        ));
        assert!(matches!(
            parse("H # D", Dialect::I1),
            Err(ParseError::Syntax { pos: 2, .. })
        ));
    }

    #[test]
    fn evaluation() {
        let one: IOp = eval(&p("D*Int")).unwrap();
        assert_eq!(one, IOp::one());
        let proj: IOp = eval(&p("Int*D")).unwrap();
        assert_eq!(proj, &IOp::one() - &IOp::e(0, 0));
        let dd: B1Elem = eval(&parse("D*Dinv", Dialect::B1).unwrap()).unwrap();
        assert_eq!(dd, B1Elem::one());
        let x: IOp = eval(&p("x")).unwrap();
        assert_eq!(x, IOp::x());
        let c: IOp = eval(&p("[H,Int] - Int")).unwrap();
        assert!(c.is_zero());
        let half: IOp = eval(&p("H/2 - 1/2*H")).unwrap();
        assert!(half.is_zero());
    }

    #[test]
    fn monomial_polynomials() {
        let q: MonomialPoly = eval(&p("1 + x^2/2")).unwrap();
        assert_eq!(
            q.0,
            HPoly::from_coeffs(vec![Scalar::one(), Scalar::zero(), Scalar::new(1, 2)])
        );
        assert_eq!(
            eval::<MonomialPoly>(&p("x*H")),
            Err(EvalError { what: "H".into() })
        );
    }

    #[test]
    fn printer_round_trips() {
        for s in [
            "H",
            "-H*D",
            "(-H)*D",
            "H - (D - Int)",
            "--H",
            "(H^2)^3",
            "(1/2)^2",
            "H/1/2",
            "H*2/3",
            "H*(2/3)",
            "2/3/5",
            "(2)/3",
            "(2/3)/5",
            "[H + 1, D*Int]^2",
            "e(3,4)*x - 7",
        ] {
            let e = p(s);
            assert_eq!(p(&e.to_string()), e, "{s} printed as {e}");
        }
        assert_eq!(p("H - (D - Int)").to_string(), "H - (D - Int)");
        assert_eq!(p("((H))*(D)").to_string(), "H*D");
    }
}
