//! Dense univariate polynomials: Horner evaluation, formal derivatives and
//! Euclidean division with remainder.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Default relative tolerance for float coefficient comparisons.
pub const FLOAT_COEFF_REL: f64 = 1e-9;

/// Coefficients in ascending degree. The zero polynomial has no coefficients,
/// otherwise the leading coefficient is nonzero.
#[derive(Clone, PartialEq, Debug)]
pub struct Polynomial<S> {
    coeffs: Vec<S>,
}

impl<S: Scalar> Polynomial<S> {
    pub fn new(coeffs: Vec<S>) -> Self {
        let mut p = Self { coeffs };
        p.normalize();
        p
    }

    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(S::one())
    }

    pub fn constant(c: S) -> Self {
        Self::new(vec![c])
    }

    /// The polynomial `x`.
    pub fn x() -> Self {
        Self::new(vec![S::zero(), S::one()])
    }

    /// `c * x^k`.
    pub fn monomial(c: S, k: usize) -> Self {
        let mut coeffs = vec![S::zero(); k + 1];
        coeffs[k] = c;
        Self::new(coeffs)
    }

    /// `x - root`.
    pub fn linear_factor(root: &S) -> Self {
        Self::new(vec![-root.clone(), S::one()])
    }

    /// Expands `sum_k shifted[k] * (x - center)^k` into ascending powers of `x`.
    pub fn from_shifted(shifted: &[S], center: &S) -> Self {
        let factor = Self::linear_factor(center);
        // Horner in the shifted variable
        shifted.iter().rev().fold(Self::zero(), |acc, c| {
            &(&acc * &factor) + &Self::constant(c.clone())
        })
    }

    fn normalize(&mut self) {
        while self.coeffs.last().is_some_and(|c| c.is_zero()) {
            self.coeffs.pop();
        }
    }

    /// `None` stands for the degree of the zero polynomial (negative infinity).
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeffs(&self) -> &[S] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<S> {
        self.coeffs
    }

    pub fn coeff(&self, k: usize) -> S {
        self.coeffs.get(k).cloned().unwrap_or_else(S::zero)
    }

    pub fn leading(&self) -> Option<&S> {
        self.coeffs.last()
    }

    pub fn max_abs_coeff(&self) -> f64 {
        self.coeffs
            .iter()
            .map(|c| c.to_f64().abs())
            .fold(0.0, f64::max)
    }

    pub fn scale(&self, c: &S) -> Self {
        Self::new(self.coeffs.iter().map(|a| a.clone() * c.clone()).collect())
    }

    pub fn pow(&self, k: usize) -> Self {
        (0..k).fold(Self::one(), |acc, _| &acc * self)
    }

    /// Formal `k`-th derivative; `derivative(0)` is the identity.
    pub fn derivative(&self, k: usize) -> Self {
        if k >= self.coeffs.len() {
            return Self::zero();
        }
        let coeffs = (k..self.coeffs.len())
            .map(|j| {
                let falling = ((j - k + 1)..=j).fold(S::one(), |acc, f| acc * S::from_usize(f));
                self.coeffs[j].clone() * falling
            })
            .collect();
        Self::new(coeffs)
    }

    pub fn eval(&self, x: &S) -> S {
        self.coeffs
            .iter()
            .rev()
            .fold(S::zero(), |acc, c| acc * x.clone() + c.clone())
    }

    /// Taylor coefficients `p^(k)(center) / k!` for `k = 0..=order`, by
    /// repeated synthetic division.
    pub fn taylor_coeffs(&self, center: &S, order: usize) -> Vec<S> {
        let mut work = self.coeffs.clone();
        let mut out = Vec::with_capacity(order + 1);
        for _ in 0..=order {
            if work.is_empty() {
                out.push(S::zero());
                continue;
            }
            // divide by (x - center): remainder is the value at center
            let mut carry = S::zero();
            for c in work.iter_mut().rev() {
                let next = c.clone() + carry.clone() * center.clone();
                *c = carry;
                carry = next;
            }
            out.push(carry);
            work.pop();
        }
        out
    }

    /// Euclidean division: `self = quotient * divisor + remainder` with
    /// `deg(remainder) < deg(divisor)`.
    pub fn divmod(&self, divisor: &Self) -> Result<(Self, Self)> {
        let dn = divisor.degree().ok_or(Error::DivisionByZeroPolynomial)?;
        if self.coeffs.len() <= dn {
            return Ok((Self::zero(), self.clone()));
        }
        let lead = divisor.coeffs[dn].clone();
        let mut rem = self.coeffs.clone();
        let mut quot = vec![S::zero(); rem.len() - dn];
        for i in (0..quot.len()).rev() {
            let c = rem[i + dn].clone() / lead.clone();
            for (j, d) in divisor.coeffs.iter().enumerate().take(dn) {
                rem[i + j] = rem[i + j].clone() - c.clone() * d.clone();
            }
            quot[i] = c;
        }
        rem.truncate(dn);
        Ok((Self::new(quot), Self::new(rem)))
    }

    pub fn rem(&self, divisor: &Self) -> Result<Self> {
        self.divmod(divisor).map(|(_, r)| r)
    }

    /// Coefficientwise comparison: exact for rationals, within
    /// `rel * (1 + max|coeff|)` for floats.
    pub fn approx_eq(&self, other: &Self, rel: f64) -> bool {
        let scale = 1.0 + self.max_abs_coeff().max(other.max_abs_coeff());
        let len = self.coeffs.len().max(other.coeffs.len());
        (0..len).all(|k| self.coeff(k).approx_eq(&other.coeff(k), scale, rel))
    }

    /// Renders coefficients in ascending degree (`p/q` or shortest decimal).
    pub fn to_strings(&self) -> Vec<String> {
        self.coeffs.iter().map(Scalar::render).collect()
    }
}

/// True iff `p` and `q` leave the same remainder on division by `h`.
pub fn equal_mod<S: Scalar>(
    p: &Polynomial<S>,
    q: &Polynomial<S>,
    h: &Polynomial<S>,
) -> Result<bool> {
    equal_mod_with(p, q, h, FLOAT_COEFF_REL)
}

/// [`equal_mod`] with an explicit float tolerance (ignored for rationals).
pub fn equal_mod_with<S: Scalar>(
    p: &Polynomial<S>,
    q: &Polynomial<S>,
    h: &Polynomial<S>,
    rel: f64,
) -> Result<bool> {
    Ok(p.rem(h)?.approx_eq(&q.rem(h)?, rel))
}

impl<S: Scalar> fmt::Display for Polynomial<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}]", self.to_strings().join(", "))
    }
}

impl<S: Scalar> Add for &Polynomial<S> {
    type Output = Polynomial<S>;

    fn add(self, rhs: Self) -> Polynomial<S> {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        Polynomial::new((0..len).map(|k| self.coeff(k) + rhs.coeff(k)).collect())
    }
}

impl<S: Scalar> Sub for &Polynomial<S> {
    type Output = Polynomial<S>;

    fn sub(self, rhs: Self) -> Polynomial<S> {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        Polynomial::new((0..len).map(|k| self.coeff(k) - rhs.coeff(k)).collect())
    }
}

impl<S: Scalar> Neg for &Polynomial<S> {
    type Output = Polynomial<S>;

    fn neg(self) -> Polynomial<S> {
        Polynomial::new(self.coeffs.iter().map(|c| -c.clone()).collect())
    }
}

impl<S: Scalar> Mul for &Polynomial<S> {
    type Output = Polynomial<S>;

    fn mul(self, rhs: Self) -> Polynomial<S> {
        if self.is_zero() || rhs.is_zero() {
            return Polynomial::zero();
        }
        let mut out = vec![S::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].clone() + a.clone() * b.clone();
            }
        }
        Polynomial::new(out)
    }
}

macro_rules! forward_owned {
    ($tr:ident, $method:ident) => {
        impl<S: Scalar> $tr for Polynomial<S> {
            type Output = Polynomial<S>;

            fn $method(self, rhs: Self) -> Polynomial<S> {
                (&self).$method(&rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl<S: Scalar> Neg for Polynomial<S> {
    type Output = Polynomial<S>;

    fn neg(self) -> Polynomial<S> {
        -&self
    }
}
