//! Rational approximants `u / v` with `v(0) = 1` and `f v - u ≡ 0 (mod h)`.
//!
//! The congruence is imposed through the osculant `G` of the data:
//! `(G v - u) mod h = 0` is `n` linear equations in the coefficients of `u`
//! and the non-constant coefficients of `v`. The remainder of the fit is
//! `[f v]^(n)(c) h(x) / (n! v(x))`.

use crate::error::{Error, Result};
use crate::func::{eval, jet_eval, Expr, Jet, DEFAULT_RANGE_GRID};
use crate::interp::{
    abs_terms, factorial, jet_uncertainty, osculate, round_polynomial, rounding_allowance,
    DataErrorTerm, HermiteData, RANGE_SAFETY,
};
use crate::modulus::{build_modulus, NodeSet};
use crate::poly::Polynomial;
use crate::scalar::{solve_consistent, DenseMatrix, Scalar};

/// Relative threshold below which `|v(x)|` counts as a pole.
pub const POLE_REL: f64 = 1e-12;

/// Relative tolerance for the float congruence check.
pub const FLOAT_CONGRUENCE_REL: f64 = 1e-8;

#[derive(Clone, Debug, PartialEq)]
pub struct RationalApproximant<S> {
    u: Polynomial<S>,
    v: Polynomial<S>,
    h: Polynomial<S>,
    nodeset: NodeSet<S>,
}

impl<S: Scalar> RationalApproximant<S> {
    /// Wraps a given pair; no congruence check is made (see [`verify_congruence`]).
    pub fn new(u: Polynomial<S>, v: Polynomial<S>, nodeset: NodeSet<S>) -> Result<Self> {
        if v.coeff(0) != S::one() {
            return Err(Error::InvalidArgument("v(0) must be 1".into()));
        }
        Ok(Self {
            u,
            v,
            h: build_modulus(&nodeset),
            nodeset,
        })
    }

    pub fn u(&self) -> &Polynomial<S> {
        &self.u
    }

    pub fn v(&self) -> &Polynomial<S> {
        &self.v
    }

    pub fn h(&self) -> &Polynomial<S> {
        &self.h
    }

    pub fn nodeset(&self) -> &NodeSet<S> {
        &self.nodeset
    }

    fn is_pole(&self, vx: &S) -> bool {
        vx.is_negligible(1.0 + self.v.max_abs_coeff(), POLE_REL)
    }
}

/// Fits `u` of degree `deg_u` and `v = 1 + b_1 x + ... + b_{deg_v} x^deg_v`.
///
/// Requires `deg_u + deg_v + 1 <= n`. With equality the system is square;
/// with fewer unknowns it must be consistent. A singular or inconsistent
/// system is [`Error::DegenerateTable`]; a solution whose `v` vanishes at a
/// node is [`Error::PoleAtNode`].
pub fn rational_fit<S: Scalar>(
    data: &HermiteData<S>,
    deg_u: usize,
    deg_v: usize,
) -> Result<RationalApproximant<S>> {
    let ns = data.nodeset();
    let n = ns.n();
    let unknowns = deg_u + deg_v + 1;
    if unknowns > n {
        let dv = deg_v.min(n - 1);
        return Err(Error::DegreeSplit {
            deg_u,
            deg_v,
            unknowns,
            n,
            suggestion: (n - 1 - dv, dv),
        });
    }

    let osc = osculate(data)?;
    let (g, h) = (osc.g(), osc.h());
    let mut matrix = DenseMatrix::zeros(n, unknowns);
    for i in 0..=deg_u {
        matrix.set(i, i, -S::one());
    }
    for j in 1..=deg_v {
        let col = (&Polynomial::monomial(S::one(), j) * g).rem(h)?;
        for (row, c) in col.coeffs().iter().enumerate() {
            matrix.set(row, deg_u + j, c.clone());
        }
    }
    let rhs: Vec<S> = (0..n).map(|k| -g.coeff(k)).collect();

    let sol = solve_consistent(&matrix, &rhs).map_err(|e| match e {
        Error::SingularMatrix { .. } | Error::Inconsistent { .. } => Error::DegenerateTable(format!(
            "no u/v with deg_u={deg_u}, deg_v={deg_v}, v(0)=1 satisfies the congruence uniquely ({e})"
        )),
        other => other,
    })?;

    let u = Polynomial::new(sol[..=deg_u].to_vec());
    let v = Polynomial::new(
        std::iter::once(S::one())
            .chain(sol[deg_u + 1..].iter().cloned())
            .collect(),
    );
    let approx = RationalApproximant {
        u,
        v,
        h: h.clone(),
        nodeset: ns.clone(),
    };
    for (index, node) in ns.nodes().iter().enumerate() {
        if approx.is_pole(&approx.v.eval(&node.x)) {
            return Err(Error::PoleAtNode {
                index,
                x: node.x.render(),
            });
        }
    }
    Ok(approx)
}

/// Float fit without solver roundoff when the system is square: the data is
/// lifted exactly, fitted in rationals and rounded once. Over-determined
/// splits fall back to [`rational_fit`] in floats, since lifted float data is
/// generally not exactly consistent.
pub fn rational_fit_refined(
    data: &HermiteData<f64>,
    deg_u: usize,
    deg_v: usize,
) -> Result<RationalApproximant<f64>> {
    if deg_u + deg_v + 1 != data.nodeset().n() {
        return rational_fit(data, deg_u, deg_v);
    }
    let exact = rational_fit(&data.to_exact()?, deg_u, deg_v)?;
    let approx = RationalApproximant {
        u: round_polynomial(&exact.u),
        v: round_polynomial(&exact.v),
        h: build_modulus(data.nodeset()),
        nodeset: data.nodeset().clone(),
    };
    for (index, node) in approx.nodeset.nodes().iter().enumerate() {
        if approx.is_pole(&approx.v.eval(&node.x)) {
            return Err(Error::PoleAtNode {
                index,
                x: node.x.render(),
            });
        }
    }
    Ok(approx)
}

/// `u(x) / v(x)`; a pole when `|v(x)| <= 1e-12 (1 + max|v coeff|)`.
pub fn rational_eval<S: Scalar>(r: &RationalApproximant<S>, x: &S) -> Result<S> {
    let vx = r.v.eval(x);
    if r.is_pole(&vx) {
        return Err(Error::Pole(format!(
            "denominator vanishes at x = {}",
            x.render()
        )));
    }
    Ok(r.u.eval(x) / vx)
}

/// Recomputes the osculant of `data` and checks `(G v - u) mod h = 0`.
pub fn verify_congruence<S: Scalar>(r: &RationalApproximant<S>, data: &HermiteData<S>) -> bool {
    let Ok(osc) = osculate(data) else {
        return false;
    };
    let gv = osc.g() * &r.v;
    let Ok(rem) = (&gv - &r.u).rem(osc.h()) else {
        return false;
    };
    let scale = 1.0 + gv.max_abs_coeff().max(r.u.max_abs_coeff());
    rem.coeffs()
        .iter()
        .all(|c| c.is_negligible(scale, FLOAT_CONGRUENCE_REL))
}

/// One evaluation of a rational approximant with its remainder bound.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RationalValue {
    pub x: f64,
    pub f: f64,
    pub r: f64,
    pub abs_err: f64,
    /// `analytic` plus the data-error term and the rounding allowance.
    pub bound: f64,
    /// `1.05 M |h(x)| / (n! |v(x)|)`.
    pub analytic: f64,
}

/// Precomputed `M = max |[f v]^(n)|` over a 1024-point grid on `[a, b]`;
/// `bound(x) = 1.05 M |h(x)| / (n! |v(x)|)` plus allowances for data and
/// evaluation rounding, as for [`crate::interp::TaylorBound`].
#[derive(Clone, Debug)]
pub struct RationalBound {
    f: Expr,
    approx: RationalApproximant<f64>,
    interval: (f64, f64),
    max_fv: f64,
    data_error: DataErrorTerm,
}

/// `[f v]^(n)(t)`, through the Cauchy product of the two jets.
fn fv_derivative(f: &Expr, v: &Polynomial<f64>, t: f64, n: usize) -> Result<f64> {
    let fj = jet_eval(f, &t, n)?;
    let vj = Jet::from_polynomial(v, &t, n);
    Ok(fj.mul(&vj).derivative(n))
}

impl RationalBound {
    pub fn new(f: &Expr, approx: &RationalApproximant<f64>, a: f64, b: f64) -> Result<Self> {
        approx.nodeset.clone().with_interval(a, b)?;
        let n = approx.nodeset.n();
        let grid = DEFAULT_RANGE_GRID;
        let step = (b - a) / (grid - 1) as f64;
        let mut max_fv: f64 = 0.0;
        for j in 0..grid {
            let t = if j == grid - 1 {
                b
            } else {
                a + step * j as f64
            };
            max_fv = max_fv.max(fv_derivative(f, &approx.v, t, n)?.abs());
        }
        // data errors delta_j in f^(j)(x_i) perturb [f v]^(k)(x_i) by at most
        // sum_j C(k, j) delta_j |v^(k-j)(x_i)|
        let deltas = jet_uncertainty(f, &approx.nodeset)?;
        let weights: Vec<Vec<f64>> = approx
            .nodeset
            .nodes()
            .iter()
            .zip(&deltas)
            .map(|(node, d)| {
                (0..node.multiplicity)
                    .map(|k| {
                        (0..=k)
                            .map(|j| {
                                let binom = factorial(k) / (factorial(j) * factorial(k - j));
                                binom * d[j] * approx.v.derivative(k - j).eval(&node.x).abs()
                            })
                            .sum()
                    })
                    .collect()
            })
            .collect();
        Ok(Self {
            f: f.clone(),
            approx: approx.clone(),
            interval: (a, b),
            max_fv,
            data_error: DataErrorTerm::new(&approx.nodeset, &weights)?,
        })
    }

    pub fn max_fv_derivative(&self) -> f64 {
        self.max_fv
    }

    pub fn at(&self, x: f64) -> Result<RationalValue> {
        let (a, b) = self.interval;
        if !(a..=b).contains(&x) {
            return Err(Error::InvalidArgument(format!(
                "x = {x} lies outside [{a}, {b}]"
            )));
        }
        let r = rational_eval(&self.approx, &x)?;
        let f = eval(&self.f, &x)?;
        let n = self.approx.nodeset.n();
        let vx = self.approx.v.eval(&x).abs();
        let analytic =
            RANGE_SAFETY * self.max_fv * self.approx.h.eval(&x).abs() / (factorial(n) * vx);
        let terms = (abs_terms(&self.approx.u, x) + r.abs() * abs_terms(&self.approx.v, x)) / vx;
        let bound = analytic + self.data_error.at(x) / vx + rounding_allowance(n, f, terms);
        Ok(RationalValue {
            x,
            f,
            r,
            abs_err: (f - r).abs(),
            bound,
            analytic,
        })
    }
}

pub fn rational_remainder_bound(
    f: &Expr,
    r: &RationalApproximant<f64>,
    x: f64,
    a: f64,
    b: f64,
) -> Result<f64> {
    Ok(RationalBound::new(f, r, a, b)?.at(x)?.bound)
}
