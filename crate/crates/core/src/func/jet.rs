//! Truncated Taylor series ("jets") and Taylor-mode differentiation of
//! expressions.
//!
//! A jet of order `K` at `c` stores `f^(k)(c) / k!` for `k = 0..=K`. Every
//! primitive propagates the whole series with the usual O(K^2) recurrences,
//! so derivatives of any order at a point cost no symbolic work.

use crate::error::{Error, Result};
use crate::func::expr::{as_small_integer, BinOp, Constant, Expr, Func};
use crate::poly::Polynomial;
use crate::scalar::Scalar;

#[derive(Clone, Debug, PartialEq)]
pub struct Jet<S> {
    center: S,
    coeffs: Vec<S>,
}

/// The base value of a transcendental primitive: the float result, or in
/// the exact domain the special value `known` when there is one.
fn base_value<S: Scalar>(what: &str, v: f64, known: Option<S>) -> Result<S> {
    S::from_float(v)
        .or(known)
        .ok_or_else(|| Error::Domain(format!("{what} is not exact here; use the float backend")))
}

impl<S: Scalar> Jet<S> {
    pub fn new(center: S, coeffs: Vec<S>) -> Self {
        assert!(
            !coeffs.is_empty(),
            "a jet has at least the value coefficient"
        );
        Self { center, coeffs }
    }

    pub fn constant(value: S, center: &S, order: usize) -> Self {
        let mut coeffs = vec![S::zero(); order + 1];
        coeffs[0] = value;
        Self::new(center.clone(), coeffs)
    }

    /// The identity function `x` expanded at `center`.
    pub fn variable(center: &S, order: usize) -> Self {
        let mut jet = Self::constant(center.clone(), center, order);
        if order >= 1 {
            jet.coeffs[1] = S::one();
        }
        jet
    }

    pub fn from_polynomial(p: &Polynomial<S>, center: &S, order: usize) -> Self {
        Self::new(center.clone(), p.taylor_coeffs(center, order))
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn center(&self) -> &S {
        &self.center
    }

    pub fn coeffs(&self) -> &[S] {
        &self.coeffs
    }

    pub fn value(&self) -> &S {
        &self.coeffs[0]
    }

    /// `f^(k)(center) = k! * coeffs[k]`.
    pub fn derivative(&self, k: usize) -> S {
        let fact = (1..=k).fold(S::one(), |acc, j| acc * S::from_usize(j));
        self.coeffs[k].clone() * fact
    }

    /// Truncated series as a polynomial in `(x - center)`, expanded in `x`.
    pub fn to_polynomial(&self) -> Polynomial<S> {
        Polynomial::from_shifted(&self.coeffs, &self.center)
    }

    fn with_coeffs(&self, coeffs: Vec<S>) -> Self {
        Self {
            center: self.center.clone(),
            coeffs,
        }
    }

    fn check_compatible(&self, other: &Self) {
        assert_eq!(self.coeffs.len(), other.coeffs.len(), "jet orders differ");
    }

    pub fn add(&self, other: &Self) -> Self {
        self.check_compatible(other);
        self.with_coeffs(
            self.coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a.clone() + b.clone())
                .collect(),
        )
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.check_compatible(other);
        self.with_coeffs(
            self.coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a.clone() - b.clone())
                .collect(),
        )
    }

    pub fn neg(&self) -> Self {
        self.with_coeffs(self.coeffs.iter().map(|a| -a.clone()).collect())
    }

    pub fn scale(&self, c: &S) -> Self {
        self.with_coeffs(self.coeffs.iter().map(|a| a.clone() * c.clone()).collect())
    }

    /// Cauchy product truncated at the common order.
    pub fn mul(&self, other: &Self) -> Self {
        self.check_compatible(other);
        let k = self.coeffs.len();
        let coeffs = (0..k)
            .map(|n| {
                (0..=n).fold(S::zero(), |acc, j| {
                    acc + self.coeffs[j].clone() * other.coeffs[n - j].clone()
                })
            })
            .collect();
        self.with_coeffs(coeffs)
    }

    pub fn div(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other);
        let d0 = other.coeffs[0].clone();
        if d0.is_zero() {
            return Err(Error::Pole(format!(
                "division by a series vanishing at x = {}",
                self.center.render()
            )));
        }
        let mut q: Vec<S> = Vec::with_capacity(self.coeffs.len());
        for n in 0..self.coeffs.len() {
            let acc = (1..=n).fold(self.coeffs[n].clone(), |acc, j| {
                acc - other.coeffs[j].clone() * q[n - j].clone()
            });
            q.push(acc / d0.clone());
        }
        Ok(self.with_coeffs(q))
    }

    pub fn recip(&self) -> Result<Self> {
        Self::constant(S::one(), &self.center, self.order()).div(self)
    }

    pub fn powi(&self, exponent: i64) -> Result<Self> {
        let mut result = Self::constant(S::one(), &self.center, self.order());
        let mut base = self.clone();
        let mut e = exponent.unsigned_abs();
        while e > 0 {
            if e & 1 == 1 {
                result = result.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        if exponent < 0 {
            result.recip()
        } else {
            Ok(result)
        }
    }

    pub fn exp(&self) -> Result<Self> {
        let a0 = &self.coeffs[0];
        let b0 = base_value("exp", a0.to_f64().exp(), a0.is_zero().then(S::one))?;
        let mut b = vec![b0];
        for k in 1..self.coeffs.len() {
            let sum = (1..=k).fold(S::zero(), |acc, j| {
                acc + S::from_usize(j) * self.coeffs[j].clone() * b[k - j].clone()
            });
            b.push(sum / S::from_usize(k));
        }
        Ok(self.with_coeffs(b))
    }

    pub fn ln(&self) -> Result<Self> {
        let a0 = self.coeffs[0].clone();
        if a0.to_f64() <= 0.0 {
            return Err(Error::Domain(format!(
                "log of nonpositive value {} at x = {}",
                a0.render(),
                self.center.render()
            )));
        }
        let b0 = base_value("log", a0.to_f64().ln(), a0.is_one().then(S::zero))?;
        let mut b = vec![b0];
        for k in 1..self.coeffs.len() {
            let sum = (1..k).fold(S::zero(), |acc, j| {
                acc + S::from_usize(j) * b[j].clone() * self.coeffs[k - j].clone()
            });
            b.push((self.coeffs[k].clone() - sum / S::from_usize(k)) / a0.clone());
        }
        Ok(self.with_coeffs(b))
    }

    /// `(sin, cos)` for `hyperbolic == false`, `(sinh, cosh)` otherwise.
    fn sin_cos_like(&self, hyperbolic: bool) -> Result<(Self, Self)> {
        let a0 = self.coeffs[0].to_f64();
        let (s0, c0) = if hyperbolic {
            (a0.sinh(), a0.cosh())
        } else {
            a0.sin_cos()
        };
        let name = if hyperbolic { "sinh/cosh" } else { "sin/cos" };
        let at_zero = self.coeffs[0].is_zero();
        let mut s = vec![base_value(name, s0, at_zero.then(S::zero))?];
        let mut c = vec![base_value(name, c0, at_zero.then(S::one))?];
        for k in 1..self.coeffs.len() {
            let (mut ds, mut dc) = (S::zero(), S::zero());
            for j in 1..=k {
                let ja = S::from_usize(j) * self.coeffs[j].clone();
                ds = ds + ja.clone() * c[k - j].clone();
                dc = dc + ja * s[k - j].clone();
            }
            let kk = S::from_usize(k);
            s.push(ds / kk.clone());
            c.push(if hyperbolic { dc / kk } else { -(dc / kk) });
        }
        Ok((self.with_coeffs(s), self.with_coeffs(c)))
    }

    pub fn sin(&self) -> Result<Self> {
        self.sin_cos_like(false).map(|(s, _)| s)
    }

    pub fn cos(&self) -> Result<Self> {
        self.sin_cos_like(false).map(|(_, c)| c)
    }

    pub fn tan(&self) -> Result<Self> {
        let (s, c) = self.sin_cos_like(false)?;
        s.div(&c)
    }

    pub fn sinh(&self) -> Result<Self> {
        self.sin_cos_like(true).map(|(s, _)| s)
    }

    pub fn cosh(&self) -> Result<Self> {
        self.sin_cos_like(true).map(|(_, c)| c)
    }

    pub fn sqrt(&self) -> Result<Self> {
        let a0 = self.coeffs[0].to_f64();
        if a0 < 0.0 || (a0 == 0.0 && self.order() > 0) {
            return Err(Error::Domain(format!(
                "sqrt is not smooth at value {} (x = {})",
                self.coeffs[0].render(),
                self.center.render()
            )));
        }
        let b0 = base_value("sqrt", a0.sqrt(), self.coeffs[0].sqrt_in_domain())?;
        let two_b0 = S::from_i64(2) * b0.clone();
        let mut b = vec![b0];
        for k in 1..self.coeffs.len() {
            let cross = (1..k).fold(S::zero(), |acc, j| acc + b[j].clone() * b[k - j].clone());
            b.push((self.coeffs[k].clone() - cross) / two_b0.clone());
        }
        Ok(self.with_coeffs(b))
    }

    pub fn atan(&self) -> Result<Self> {
        let a0 = &self.coeffs[0];
        let b0 = base_value("atan", a0.to_f64().atan(), a0.is_zero().then(S::zero))?;
        let order = self.order();
        if order == 0 {
            return Ok(self.with_coeffs(vec![b0]));
        }
        // atan(a)' = a' / (1 + a^2), integrated term by term
        let one_plus_sq = self
            .mul(self)
            .add(&Self::constant(S::one(), &self.center, order));
        let da: Vec<S> = (1..=order)
            .map(|k| S::from_usize(k) * self.coeffs[k].clone())
            .chain(std::iter::once(S::zero()))
            .collect();
        let q = self.with_coeffs(da).div(&one_plus_sq)?;
        let mut b = vec![b0];
        for k in 1..=order {
            b.push(q.coeffs[k - 1].clone() / S::from_usize(k));
        }
        Ok(self.with_coeffs(b))
    }

    /// `self ^ exponent` for a non-integer exponent, as `exp(exponent * log(self))`.
    pub fn powf(&self, exponent: &Self) -> Result<Self> {
        if self.coeffs[0].to_f64() <= 0.0 {
            return Err(Error::Domain(format!(
                "non-integer power of nonpositive base {} at x = {}",
                self.coeffs[0].render(),
                self.center.render()
            )));
        }
        exponent.mul(&self.ln()?).exp()
    }

    fn constant_integer(&self) -> Option<i64> {
        if self.coeffs[1..].iter().any(|c| !c.is_zero()) {
            return None;
        }
        let v = &self.coeffs[0];
        let f = v.to_f64();
        (f.fract() == 0.0 && f.abs() < 1e15 && S::from_i64(f as i64) == *v).then_some(f as i64)
    }
}

/// Taylor expansion of `f` at `center` to order `order`.
pub fn jet_eval<S: Scalar>(f: &Expr, center: &S, order: usize) -> Result<Jet<S>> {
    let jet = eval_node(f, center, order)?;
    if !S::EXACT && jet.coeffs.iter().any(|c| !c.to_f64().is_finite()) {
        return Err(Error::Domain(format!(
            "non-finite Taylor coefficient at x = {}",
            center.render()
        )));
    }
    Ok(jet)
}

fn eval_node<S: Scalar>(f: &Expr, center: &S, order: usize) -> Result<Jet<S>> {
    Ok(match f {
        Expr::Num(q) => Jet::constant(S::from_rational(q), center, order),
        Expr::Var => Jet::variable(center, order),
        Expr::Const(Constant::Pi) => {
            Jet::constant(base_value("pi", std::f64::consts::PI, None)?, center, order)
        }
        Expr::Const(Constant::E) => {
            Jet::constant(base_value("e", std::f64::consts::E, None)?, center, order)
        }
        Expr::Neg(a) => eval_node(a, center, order)?.neg(),
        Expr::Call(func, a) => {
            let a = eval_node(a, center, order)?;
            match func {
                Func::Sin => a.sin()?,
                Func::Cos => a.cos()?,
                Func::Tan => a.tan()?,
                Func::Atan => a.atan()?,
                Func::Exp => a.exp()?,
                Func::Log => a.ln()?,
                Func::Sqrt => a.sqrt()?,
                Func::Sinh => a.sinh()?,
                Func::Cosh => a.cosh()?,
            }
        }
        Expr::Binary(op, a, b) => {
            if let (BinOp::Pow, Expr::Num(q)) = (op, b.as_ref()) {
                if let Some(k) = as_small_integer(q) {
                    return eval_node(a, center, order)?.powi(k);
                }
            }
            let lhs = eval_node(a, center, order)?;
            let rhs = eval_node(b, center, order)?;
            match op {
                BinOp::Add => lhs.add(&rhs),
                BinOp::Sub => lhs.sub(&rhs),
                BinOp::Mul => lhs.mul(&rhs),
                BinOp::Div => lhs.div(&rhs)?,
                BinOp::Pow => match rhs.constant_integer() {
                    Some(k) => lhs.powi(k)?,
                    None => lhs.powf(&rhs)?,
                },
            }
        }
    })
}

/// `f^(k)(x)`.
pub fn derivative_at<S: Scalar>(f: &Expr, x: &S, k: usize) -> Result<S> {
    Ok(jet_eval(f, x, k)?.derivative(k))
}

/// `f(x)`.
pub fn eval<S: Scalar>(f: &Expr, x: &S) -> Result<S> {
    Ok(jet_eval(f, x, 0)?.coeffs[0].clone())
}

/// Default number of samples for [`derivative_range`].
pub const DEFAULT_RANGE_GRID: usize = 1024;

/// Sampled `(min, max)` of `f^(k)` on a uniform grid of `grid` points over
/// `[a, b]`, endpoints included. A heuristic estimate: extrema between grid
/// points are missed.
pub fn derivative_range(f: &Expr, k: usize, a: f64, b: f64, grid: usize) -> Result<(f64, f64)> {
    if grid < 2 || !(a < b) {
        return Err(Error::InvalidArgument(format!(
            "need a < b and grid >= 2 (got [{a}, {b}], grid {grid})"
        )));
    }
    let step = (b - a) / (grid - 1) as f64;
    let mut lo = f64::INFINITY;
    let mut hi = f64::NEG_INFINITY;
    for j in 0..grid {
        let x = if j == grid - 1 {
            b
        } else {
            a + step * j as f64
        };
        let d = derivative_at(f, &x, k)?;
        lo = lo.min(d);
        hi = hi.max(d);
    }
    Ok((lo, hi))
}
