//! Expression trees for `f(x)` and a recursive-descent parser.
//!
//! Grammar (precedence from loosest to tightest):
//!
//! ```text
//! expr  := term (('+' | '-') term)*
//! term  := unary (('*' | '/') unary)*
//! unary := '-' unary | power
//! power := atom ('^' unary)?            right-associative
//! atom  := NUMBER | 'x' | 'pi' | 'e' | NAME '(' expr ')' | '(' expr ')'
//! ```
//!
//! `NUMBER` is a decimal with optional exponent (`2.5e-3`) or an integer
//! ratio `p/q`; both are held as exact rationals.

use std::fmt;

use num_traits::{One, Signed};

use crate::error::{Error, Result};
use crate::scalar::{parse_rational, Rational};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Constant {
    Pi,
    E,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Func {
    Sin,
    Cos,
    Tan,
    Atan,
    Exp,
    Log,
    Sqrt,
    Sinh,
    Cosh,
}

impl Func {
    pub const ALL: [Func; 9] = [
        Func::Sin,
        Func::Cos,
        Func::Tan,
        Func::Atan,
        Func::Exp,
        Func::Log,
        Func::Sqrt,
        Func::Sinh,
        Func::Cosh,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Func::Sin => "sin",
            Func::Cos => "cos",
            Func::Tan => "tan",
            Func::Atan => "atan",
            Func::Exp => "exp",
            Func::Log => "log",
            Func::Sqrt => "sqrt",
            Func::Sinh => "sinh",
            Func::Cosh => "cosh",
        }
    }

    fn from_name(name: &str) -> Option<Func> {
        Func::ALL.into_iter().find(|f| f.name() == name)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BinOp {
    Add,
    Sub,
    Mul,
    Div,
    Pow,
}

impl BinOp {
    fn symbol(self) -> &'static str {
        match self {
            BinOp::Add => "+",
            BinOp::Sub => "-",
            BinOp::Mul => "*",
            BinOp::Div => "/",
            BinOp::Pow => "^",
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum Expr {
    Num(Rational),
    Var,
    Const(Constant),
    Neg(Box<Expr>),
    Call(Func, Box<Expr>),
    Binary(BinOp, Box<Expr>, Box<Expr>),
}

impl Expr {
    pub fn parse(text: &str) -> Result<Expr> {
        parse(text)
    }

    pub fn binary(op: BinOp, lhs: Expr, rhs: Expr) -> Expr {
        Expr::Binary(op, Box::new(lhs), Box::new(rhs))
    }

    pub fn call(f: Func, arg: Expr) -> Expr {
        Expr::Call(f, Box::new(arg))
    }
}

/// Fully parenthesized rendering; parsing it back yields the same tree.
impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Num(q) if q.is_integer() && !q.is_negative() => write!(f, "{q}"),
            Expr::Num(q) if q.is_negative() => write!(f, "(-{})", -q),
            Expr::Num(q) => write!(f, "({q})"),
            Expr::Var => f.write_str("x"),
            Expr::Const(Constant::Pi) => f.write_str("pi"),
            Expr::Const(Constant::E) => f.write_str("e"),
            Expr::Neg(a) => write!(f, "(-{a})"),
            Expr::Call(func, a) => write!(f, "{}({a})", func.name()),
            Expr::Binary(op, a, b) => write!(f, "({a} {} {b})", op.symbol()),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(Rational),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    End,
}

fn syntax(offset: usize, expected: &str) -> Error {
    Error::Syntax {
        offset,
        expected: expected.to_string(),
    }
}

fn lex(text: &str) -> Result<Vec<(usize, Tok)>> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        let start = i;
        let simple = match c {
            b' ' | b'\t' | b'\n' | b'\r' => {
                i += 1;
                continue;
            }
            b'+' => Some(Tok::Plus),
            b'-' => Some(Tok::Minus),
            b'*' => Some(Tok::Star),
            b'/' => Some(Tok::Slash),
            b'^' => Some(Tok::Caret),
            b'(' => Some(Tok::LParen),
            b')' => Some(Tok::RParen),
            _ => None,
        };
        if let Some(tok) = simple {
            out.push((start, tok));
            i += 1;
            continue;
        }

        let digit_at = |j: usize| bytes.get(j).is_some_and(u8::is_ascii_digit);
        if c.is_ascii_digit() || (c == b'.' && digit_at(i + 1)) {
            while digit_at(i) {
                i += 1;
            }
            let mut plain_integer = true;
            if bytes.get(i) == Some(&b'.') {
                plain_integer = false;
                i += 1;
                while digit_at(i) {
                    i += 1;
                }
            }
            if matches!(bytes.get(i), Some(b'e' | b'E')) {
                let sign = usize::from(matches!(bytes.get(i + 1), Some(b'+' | b'-')));
                if digit_at(i + 1 + sign) {
                    plain_integer = false;
                    i += 1 + sign;
                    while digit_at(i) {
                        i += 1;
                    }
                }
            }
            // integer ratio literal p/q
            if plain_integer && bytes.get(i) == Some(&b'/') && digit_at(i + 1) {
                i += 1;
                while digit_at(i) {
                    i += 1;
                }
            }
            let value = parse_rational(&text[start..i]).map_err(|_| syntax(start, "number"))?;
            out.push((start, Tok::Num(value)));
            continue;
        }

        if c.is_ascii_alphabetic() || c == b'_' {
            while bytes
                .get(i)
                .is_some_and(|b| b.is_ascii_alphanumeric() || *b == b'_')
            {
                i += 1;
            }
            out.push((start, Tok::Ident(text[start..i].to_string())));
            continue;
        }

        return Err(syntax(start, "number, name, operator or parenthesis"));
    }
    out.push((text.len(), Tok::End));
    Ok(out)
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].1
    }

    fn offset(&self) -> usize {
        self.toks[self.pos].0
    }

    fn bump(&mut self) -> Tok {
        let tok = self.toks[self.pos].1.clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        tok
    }

    fn expect(&mut self, tok: Tok, what: &str) -> Result<()> {
        if *self.peek() == tok {
            self.bump();
            Ok(())
        } else {
            Err(syntax(self.offset(), what))
        }
    }

    fn expr(&mut self) -> Result<Expr> {
        let mut lhs = self.term()?;
        loop {
            let op = match self.peek() {
                Tok::Plus => BinOp::Add,
                Tok::Minus => BinOp::Sub,
                _ => return Ok(lhs),
            };
            self.bump();
            lhs = Expr::binary(op, lhs, self.term()?);
        }
    }

    fn term(&mut self) -> Result<Expr> {
        let mut lhs = self.unary()?;
        loop {
            let op = match self.peek() {
                Tok::Star => BinOp::Mul,
                Tok::Slash => BinOp::Div,
                _ => return Ok(lhs),
            };
            self.bump();
            lhs = Expr::binary(op, lhs, self.unary()?);
        }
    }

    fn unary(&mut self) -> Result<Expr> {
        if *self.peek() == Tok::Minus {
            self.bump();
            return Ok(Expr::Neg(Box::new(self.unary()?)));
        }
        self.power()
    }

    fn power(&mut self) -> Result<Expr> {
        let base = self.atom()?;
        if *self.peek() == Tok::Caret {
            self.bump();
            let exponent = self.unary()?;
            return Ok(Expr::binary(BinOp::Pow, base, exponent));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Expr> {
        let offset = self.offset();
        match self.bump() {
            Tok::Num(q) => Ok(Expr::Num(q)),
            Tok::LParen => {
                let inner = self.expr()?;
                self.expect(Tok::RParen, ")")?;
                Ok(inner)
            }
            Tok::Ident(name) => match name.as_str() {
                "x" => Ok(Expr::Var),
                "pi" => Ok(Expr::Const(Constant::Pi)),
                "e" => Ok(Expr::Const(Constant::E)),
                _ => {
                    let func = if name == "neg" {
                        None
                    } else {
                        Func::from_name(&name)
                    };
                    if func.is_none() && name != "neg" {
                        return Err(syntax(offset, "x, pi, e or a function name"));
                    }
                    self.expect(Tok::LParen, "(")?;
                    let arg = self.expr()?;
                    self.expect(Tok::RParen, ")")?;
                    Ok(match func {
                        Some(f) => Expr::call(f, arg),
                        None => Expr::Neg(Box::new(arg)),
                    })
                }
            },
            _ => Err(syntax(offset, "number, x, pi, e, function call or (")),
        }
    }
}

/// Parses an expression in `x`; errors carry the byte offset of the
/// offending token and what was expected there.
pub fn parse(text: &str) -> Result<Expr> {
    let mut parser = Parser {
        toks: lex(text)?,
        pos: 0,
    };
    let expr = parser.expr()?;
    if *parser.peek() != Tok::End {
        return Err(syntax(parser.offset(), "operator or end of input"));
    }
    Ok(expr)
}

/// Integer value of a rational, if it is one and fits in `i64`.
pub(crate) fn as_small_integer(q: &Rational) -> Option<i64> {
    use num_traits::ToPrimitive;
    if q.denom().is_one() {
        q.numer().to_i64()
    } else {
        None
    }
}
