//! Coefficient domains and the dense solver shared by the interpolation and
//! rational-fit code.
//!
//! Two domains exist: exact arbitrary-precision rationals ([`Rational`]) and
//! IEEE double precision (`f64`). A computation runs entirely in one of them;
//! the [`Scalar`] trait is sealed so no third domain can be mixed in.

use std::fmt::Debug;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Exact arbitrary-precision rational, always in lowest terms with a
/// positive denominator.
pub type Rational = BigRational;

/// Relative pivot threshold for the float solver.
pub const FLOAT_PIVOT_REL: f64 = 1e-12;

/// Relative tolerance for the consistency rows of an overdetermined float system.
pub const FLOAT_CONSISTENCY_REL: f64 = 1e-9;

mod sealed {
    pub trait Sealed {}
    impl Sealed for f64 {}
    impl Sealed for super::Rational {}
}

pub trait Scalar:
    sealed::Sealed
    + Clone
    + PartialEq
    + PartialOrd
    + Debug
    + Send
    + Sync
    + 'static
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
{
    /// True for the exact rational domain.
    const EXACT: bool;

    fn from_i64(v: i64) -> Self;

    fn from_rational(q: &Rational) -> Self;

    /// Lifts a float result into the domain; `None` for the exact domain,
    /// which cannot represent transcendental values.
    fn from_float(v: f64) -> Option<Self>;

    fn to_f64(&self) -> f64;

    fn abs(&self) -> Self;

    /// Square root when it lies in the domain (perfect squares for rationals).
    fn sqrt_in_domain(&self) -> Option<Self>;

    /// Exact domain: `self == 0`. Float domain: `|self| <= rel * scale`.
    fn is_negligible(&self, scale: f64, rel: f64) -> bool;

    /// `p/q` (or an integer) for rationals, shortest round-trip decimal for floats.
    fn render(&self) -> String;

    fn from_usize(v: usize) -> Self {
        Self::from_i64(v as i64)
    }

    /// Parses a decimal (`-1.25e3`) or rational (`-3/4`) literal.
    fn parse(text: &str) -> Result<Self> {
        parse_rational(text).map(|q| Self::from_rational(&q))
    }

    fn approx_eq(&self, other: &Self, scale: f64, rel: f64) -> bool {
        (self.clone() - other.clone()).is_negligible(scale, rel)
    }
}

impl Scalar for f64 {
    const EXACT: bool = false;

    fn from_i64(v: i64) -> Self {
        v as f64
    }

    fn from_rational(q: &Rational) -> Self {
        ToPrimitive::to_f64(q).unwrap_or(f64::NAN)
    }

    fn from_float(v: f64) -> Option<Self> {
        Some(v)
    }

    fn to_f64(&self) -> f64 {
        *self
    }

    fn abs(&self) -> Self {
        f64::abs(*self)
    }

    fn sqrt_in_domain(&self) -> Option<Self> {
        Some(f64::sqrt(*self))
    }

    fn is_negligible(&self, scale: f64, rel: f64) -> bool {
        f64::abs(*self) <= rel * scale
    }

    fn render(&self) -> String {
        format_f64(*self)
    }
}

impl Scalar for Rational {
    const EXACT: bool = true;

    fn from_i64(v: i64) -> Self {
        Rational::from_integer(BigInt::from(v))
    }

    fn from_rational(q: &Rational) -> Self {
        q.clone()
    }

    fn from_float(_: f64) -> Option<Self> {
        None
    }

    fn to_f64(&self) -> f64 {
        ToPrimitive::to_f64(self).unwrap_or(f64::NAN)
    }

    fn abs(&self) -> Self {
        Signed::abs(self)
    }

    fn sqrt_in_domain(&self) -> Option<Self> {
        if self.is_negative() {
            return None;
        }
        let (p, q) = (self.numer().sqrt(), self.denom().sqrt());
        let root = Rational::new(p, q);
        (&root * &root == *self).then_some(root)
    }

    fn is_negligible(&self, _scale: f64, _rel: f64) -> bool {
        self.is_zero()
    }

    fn render(&self) -> String {
        self.to_string()
    }
}

/// Shortest decimal that round-trips to the same `f64` (at most 17 significant digits).
pub fn format_f64(v: f64) -> String {
    format!("{v:?}")
}

/// Parses `[-]p/q` or a decimal literal `[-]d[.d][e[+-]d]` into an exact rational.
pub fn parse_rational(text: &str) -> Result<Rational> {
    let t = text.trim();
    let bad = || Error::InvalidArgument(format!("not a number: {text:?}"));
    if let Some((p, q)) = t.split_once('/') {
        let p: BigInt = p.trim().parse().map_err(|_| bad())?;
        let q: BigInt = q.trim().parse().map_err(|_| bad())?;
        if q.is_zero() {
            return Err(Error::InvalidArgument(format!(
                "zero denominator in {text:?}"
            )));
        }
        return Ok(Rational::new(p, q));
    }

    let (neg, body) = match t.as_bytes().first() {
        Some(b'-') => (true, &t[1..]),
        Some(b'+') => (false, &t[1..]),
        _ => (false, t),
    };
    let (mantissa, exp) = match body.find(['e', 'E']) {
        Some(pos) => {
            let e: i64 = body[pos + 1..].parse().map_err(|_| bad())?;
            (&body[..pos], e)
        }
        None => (body, 0),
    };
    let (int_part, frac_part) = mantissa.split_once('.').unwrap_or((mantissa, ""));
    if int_part.is_empty() && frac_part.is_empty() {
        return Err(bad());
    }
    if !int_part
        .bytes()
        .chain(frac_part.bytes())
        .all(|c| c.is_ascii_digit())
    {
        return Err(bad());
    }
    let digits: BigInt = format!("{int_part}{frac_part}0")
        .parse()
        .map_err(|_| bad())?;
    // the appended '0' keeps empty parts parseable; undo it
    let digits = digits / BigInt::from(10);
    let shift = exp - frac_part.len() as i64;
    if shift.unsigned_abs() > 100_000 {
        return Err(bad());
    }
    let ten = BigInt::from(10);
    let mut q = if shift >= 0 {
        Rational::from_integer(digits * num_traits::pow(ten, shift as usize))
    } else {
        Rational::new(digits, num_traits::pow(ten, (-shift) as usize))
    };
    if neg {
        q = -q;
    }
    Ok(q)
}

/// Dense row-major matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct DenseMatrix<S> {
    rows: usize,
    cols: usize,
    entries: Vec<S>,
}

impl<S: Scalar> DenseMatrix<S> {
    pub fn new(rows: usize, cols: usize, entries: Vec<S>) -> Result<Self> {
        if rows * cols != entries.len() {
            return Err(Error::Dimension(format!(
                "{rows}x{cols} matrix needs {} entries, got {}",
                rows * cols,
                entries.len()
            )));
        }
        Ok(Self {
            rows,
            cols,
            entries,
        })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            entries: vec![S::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, S::one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<S>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::Dimension("ragged rows".into()));
        }
        Self::new(r, c, rows.into_iter().flatten().collect())
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &S {
        &self.entries[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: S) {
        self.entries[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[S] {
        &self.entries[r * self.cols..(r + 1) * self.cols]
    }

    pub fn mul_vec(&self, x: &[S]) -> Result<Vec<S>> {
        if x.len() != self.cols {
            return Err(Error::Dimension(format!(
                "vector of length {} against {} columns",
                x.len(),
                self.cols
            )));
        }
        Ok((0..self.rows)
            .map(|r| {
                self.row(r)
                    .iter()
                    .zip(x)
                    .fold(S::zero(), |acc, (a, b)| acc + a.clone() * b.clone())
            })
            .collect())
    }

    fn max_abs(&self) -> f64 {
        self.entries
            .iter()
            .map(|e| e.to_f64().abs())
            .fold(0.0, f64::max)
    }
}

/// Solves the square system `A x = b`.
///
/// Exact domain: Gaussian elimination with any nonzero pivot. Float domain:
/// partial pivoting; a pivot below `1e-12 * max|A|` is treated as singular.
pub fn solve_linear<S: Scalar>(a: &DenseMatrix<S>, b: &[S]) -> Result<Vec<S>> {
    if a.rows != a.cols {
        return Err(Error::Dimension(format!(
            "{}x{} matrix is not square",
            a.rows, a.cols
        )));
    }
    solve_consistent(a, b)
}

/// Solves `A x = b` for `A` with at least as many rows as columns and full
/// column rank. Rows beyond the rank must be satisfied by the solution
/// (exactly for rationals, to `1e-9 * (1 + max|b|)` for floats), otherwise
/// [`Error::Inconsistent`] is returned.
pub fn solve_consistent<S: Scalar>(a: &DenseMatrix<S>, b: &[S]) -> Result<Vec<S>> {
    let (m, n) = (a.rows, a.cols);
    if b.len() != m {
        return Err(Error::Dimension(format!(
            "rhs of length {} for {m} rows",
            b.len()
        )));
    }
    if m < n {
        return Err(Error::Dimension(format!(
            "{m}x{n} system is underdetermined"
        )));
    }
    let scale = a.max_abs();
    let b_scale = 1.0 + b.iter().map(|v| v.to_f64().abs()).fold(0.0, f64::max);

    let mut rows: Vec<Vec<S>> = (0..m)
        .map(|r| {
            let mut row = a.row(r).to_vec();
            row.push(b[r].clone());
            row
        })
        .collect();

    for col in 0..n {
        let pivot = if S::EXACT {
            (col..m).find(|&r| !rows[r][col].is_zero())
        } else {
            (col..m)
                .max_by(|&i, &j| {
                    let (x, y) = (rows[i][col].to_f64().abs(), rows[j][col].to_f64().abs());
                    x.total_cmp(&y)
                })
                .filter(|&r| !rows[r][col].is_negligible(scale, FLOAT_PIVOT_REL))
        };
        let p = pivot.ok_or(Error::SingularMatrix { column: col })?;
        rows.swap(col, p);

        let (upper, lower) = rows.split_at_mut(col + 1);
        let pivot_row = &upper[col];
        for row in lower.iter_mut() {
            if row[col].is_zero() {
                continue;
            }
            let factor = row[col].clone() / pivot_row[col].clone();
            for c in col..=n {
                let delta = factor.clone() * pivot_row[c].clone();
                row[c] = row[c].clone() - delta;
            }
        }
    }

    for (r, row) in rows.iter().enumerate().skip(n) {
        if !row[n].is_negligible(b_scale, FLOAT_CONSISTENCY_REL) {
            return Err(Error::Inconsistent { row: r });
        }
    }

    let mut x = vec![S::zero(); n];
    for i in (0..n).rev() {
        let mut acc = rows[i][n].clone();
        for j in i + 1..n {
            acc = acc - rows[i][j].clone() * x[j].clone();
        }
        x[i] = acc / rows[i][i].clone();
    }
    Ok(x)
}
