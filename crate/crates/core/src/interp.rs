//! Osculating polynomials: the unique `g` with `deg g < n` and
//! `g^(k)(x_i) = f^(k)(x_i)` for every `k < m_i`.
//!
//! Two independent constructions are provided. [`osculate_vandermonde`]
//! solves the confluent Vandermonde system directly; [`osculate_spectral`]
//! assembles `g` from per-node Taylor polynomials and the idempotents `s_i` of
//! `R[x]/(h)` (the Chinese remainder construction). In exact arithmetic both
//! produce the same polynomial.
//!
//! For float data the remainder `f(x) - g(x) = f^(n)(c) h(x) / n!` is bounded
//! by [`TaylorBound`], a mean-value point `c` is located by [`c_witness`], and
//! the removable value of `(f - g) / h` at a node by [`singular_limit`].

use crate::error::{Error, Result};
use crate::func::{derivative_at, derivative_range, eval, jet_eval, Expr, Jet, DEFAULT_RANGE_GRID};
use crate::modulus::{build_modulus, cofactor, NodeSet};
use crate::poly::Polynomial;
use crate::scalar::{solve_linear, DenseMatrix, Rational, Scalar};

/// Safety factor applied to sampled derivative ranges.
pub const RANGE_SAFETY: f64 = 1.05;

/// Interior grid size for the witness scan.
pub const WITNESS_GRID: usize = 2048;

/// Relative tolerance for float condition checks.
pub const FLOAT_CONDITION_REL: f64 = 1e-8;

/// Multiplier of `eps * (|f(x)| + sum |g_k x^k|)` in the rounding allowance
/// added to float bounds, per condition.
pub const ROUNDING_PER_CONDITION: f64 = 4.0;

/// Floor for the error of `fl(f(x)) - fl(p(x))` when the true difference is
/// tiny: `4 (n + 2) eps (|f(x)| + terms)`, where `terms` bounds the magnitudes
/// summed while evaluating the approximant (see [`abs_terms`]). Without it,
/// points very near a node of high multiplicity fail any purely analytic
/// bound.
pub fn rounding_allowance(n: usize, fx: f64, terms: f64) -> f64 {
    ROUNDING_PER_CONDITION * (n as f64 + 2.0) * f64::EPSILON * (fx.abs() + terms)
}

/// Multiplier of `(k + 1) eps k! max_{l <= k} |c_l|` in the uncertainty of a
/// float jet value `f^(k) = k! c_k`.
pub const JET_REL: f64 = 16.0;

/// `sum_k |p_k| |x|^k`.
pub fn abs_terms(p: &Polynomial<f64>, x: f64) -> f64 {
    p.coeffs()
        .iter()
        .rev()
        .fold(0.0, |acc, c| acc * x.abs() + c.abs())
}

pub fn factorial(n: usize) -> f64 {
    (1..=n).map(|k| k as f64).product()
}

fn factorial_s<S: Scalar>(n: usize) -> S {
    (1..=n).fold(S::one(), |acc, k| acc * S::from_usize(k))
}

/// Target values `v[i][k] = f^(k)(x_i)` for `k < m_i`.
#[derive(Clone, Debug, PartialEq)]
pub struct HermiteData<S> {
    nodeset: NodeSet<S>,
    values: Vec<Vec<S>>,
}

impl<S: Scalar> HermiteData<S> {
    pub fn new(nodeset: NodeSet<S>, values: Vec<Vec<S>>) -> Result<Self> {
        if values.len() != nodeset.r() {
            return Err(Error::Dimension(format!(
                "{} value lists for {} nodes",
                values.len(),
                nodeset.r()
            )));
        }
        for (node, vals) in nodeset.nodes().iter().zip(&values) {
            if vals.len() != node.multiplicity {
                return Err(Error::Dimension(format!(
                    "node {} has multiplicity {} but {} values",
                    node.x.render(),
                    node.multiplicity,
                    vals.len()
                )));
            }
        }
        Ok(Self { nodeset, values })
    }

    /// Derivative data of an expression, via jets at each node.
    pub fn from_expr(f: &Expr, ns: &NodeSet<S>) -> Result<Self> {
        let values = ns
            .nodes()
            .iter()
            .map(|node| {
                let jet = jet_eval(f, &node.x, node.multiplicity - 1)?;
                Ok((0..node.multiplicity).map(|k| jet.derivative(k)).collect())
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Self {
            nodeset: ns.clone(),
            values,
        })
    }

    /// Derivative data of a polynomial.
    pub fn from_polynomial(p: &Polynomial<S>, ns: &NodeSet<S>) -> Self {
        let values = ns
            .nodes()
            .iter()
            .map(|node| {
                let jet = Jet::from_polynomial(p, &node.x, node.multiplicity - 1);
                (0..node.multiplicity).map(|k| jet.derivative(k)).collect()
            })
            .collect();
        Self {
            nodeset: ns.clone(),
            values,
        }
    }

    pub fn nodeset(&self) -> &NodeSet<S> {
        &self.nodeset
    }

    pub fn values(&self) -> &[Vec<S>] {
        &self.values
    }
}

/// `g` together with the modulus it osculates against.
#[derive(Clone, Debug, PartialEq)]
pub struct Osculant<S> {
    g: Polynomial<S>,
    h: Polynomial<S>,
    nodeset: NodeSet<S>,
}

impl<S: Scalar> Osculant<S> {
    pub fn g(&self) -> &Polynomial<S> {
        &self.g
    }

    pub fn h(&self) -> &Polynomial<S> {
        &self.h
    }

    pub fn nodeset(&self) -> &NodeSet<S> {
        &self.nodeset
    }

    /// Checks `g^(k)(x_i) = v[i][k]` for all conditions (exact, or within
    /// `1e-8` relative for floats).
    pub fn satisfies(&self, data: &HermiteData<S>) -> bool {
        self.nodeset
            .nodes()
            .iter()
            .zip(&data.values)
            .all(|(node, vals)| {
                vals.iter().enumerate().all(|(k, v)| {
                    let got = self.g.derivative(k).eval(&node.x);
                    got.approx_eq(v, 1.0 + v.to_f64().abs(), FLOAT_CONDITION_REL)
                })
            })
    }
}

/// Solves the confluent Vandermonde system for the coefficients of `g`.
///
/// The row for condition `(i, k)` holds `d^k/dx^k x^j` at `x_i` for
/// `j = 0..n-1`.
pub fn osculate_vandermonde<S: Scalar>(data: &HermiteData<S>) -> Result<Osculant<S>> {
    let ns = &data.nodeset;
    let n = ns.n();
    let mut matrix = DenseMatrix::zeros(n, n);
    let mut rhs = Vec::with_capacity(n);
    let mut row = 0;
    for (node, vals) in ns.nodes().iter().zip(&data.values) {
        for (k, v) in vals.iter().enumerate() {
            for j in k..n {
                // j!/(j-k)! * x^(j-k)
                let falling = ((j - k + 1)..=j).fold(S::one(), |acc, f| acc * S::from_usize(f));
                let power = (0..j - k).fold(S::one(), |acc, _| acc * node.x.clone());
                matrix.set(row, j, falling * power);
            }
            rhs.push(v.clone());
            row += 1;
        }
    }
    let coeffs = solve_linear(&matrix, &rhs)?;
    Ok(Osculant {
        g: Polynomial::new(coeffs),
        h: build_modulus(ns),
        nodeset: ns.clone(),
    })
}

/// The idempotents `s_i` of `R[x]/(h)`, one per node.
#[derive(Clone, Debug, PartialEq)]
pub struct SpectralBasis<S> {
    h: Polynomial<S>,
    elements: Vec<Polynomial<S>>,
}

impl<S: Scalar> SpectralBasis<S> {
    pub fn elements(&self) -> &[Polynomial<S>] {
        &self.elements
    }

    pub fn modulus(&self) -> &Polynomial<S> {
        &self.h
    }
}

/// Builds `s_i = (w_i h_i) mod h` where `h_i = h / (x - x_i)^m_i` and `w_i`
/// is the reciprocal series of `h_i` at `x_i` truncated below order `m_i`.
pub fn spectral_basis<S: Scalar>(ns: &NodeSet<S>) -> Result<SpectralBasis<S>> {
    let h = build_modulus(ns);
    let elements = ns
        .nodes()
        .iter()
        .enumerate()
        .map(|(i, node)| {
            let hi = cofactor(ns, i);
            let w = Jet::from_polynomial(&hi, &node.x, node.multiplicity - 1).recip()?;
            (&w.to_polynomial() * &hi).rem(&h)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(SpectralBasis { h, elements })
}

/// `g = (sum_i T_i s_i) mod h`, with `T_i` the Taylor polynomial of the data
/// at node `i`.
pub fn osculate_spectral<S: Scalar>(data: &HermiteData<S>) -> Result<Osculant<S>> {
    let ns = &data.nodeset;
    let basis = spectral_basis(ns)?;
    let mut sum = Polynomial::zero();
    for ((node, vals), s) in ns.nodes().iter().zip(&data.values).zip(&basis.elements) {
        let shifted: Vec<S> = vals
            .iter()
            .enumerate()
            .map(|(k, v)| v.clone() / factorial_s::<S>(k))
            .collect();
        let taylor = Polynomial::from_shifted(&shifted, &node.x);
        sum = &sum + &(&taylor * s);
    }
    let g = sum.rem(&basis.h)?;
    Ok(Osculant {
        g,
        h: basis.h,
        nodeset: ns.clone(),
    })
}

impl HermiteData<f64> {
    /// The same table lifted exactly into rationals (every finite `f64` is a
    /// dyadic rational).
    pub fn to_exact(&self) -> Result<HermiteData<Rational>> {
        let lift = |v: &f64| {
            Rational::from_float(*v)
                .ok_or_else(|| Error::Domain(format!("non-finite value {v} in the data")))
        };
        let nodes = self
            .nodeset
            .nodes()
            .iter()
            .map(|node| Ok((lift(&node.x)?, node.multiplicity)))
            .collect::<Result<Vec<_>>>()?;
        let values = self
            .values
            .iter()
            .map(|vals| vals.iter().map(lift).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        HermiteData::new(NodeSet::new(nodes)?, values)
    }
}

/// Rounds exact coefficients to the nearest `f64`.
pub fn round_polynomial(p: &Polynomial<Rational>) -> Polynomial<f64> {
    Polynomial::new(p.coeffs().iter().map(Scalar::to_f64).collect())
}

/// Float osculant without solver roundoff: the data is lifted exactly,
/// osculated in rationals, and the coefficients rounded once. Costs
/// big-integer arithmetic, so meant for moderate `n`.
pub fn osculate_refined(data: &HermiteData<f64>) -> Result<Osculant<f64>> {
    let exact = osculate(&data.to_exact()?)?;
    Ok(Osculant {
        g: round_polynomial(&exact.g),
        h: build_modulus(&data.nodeset),
        nodeset: data.nodeset.clone(),
    })
}

/// Hermite cardinal polynomials: `l[i][k]` has `k`-th derivative 1 at `x_i`
/// and satisfies every other condition with 0. Computed as
/// `s_i (x - x_i)^k / k! mod h`.
pub fn cardinal_basis<S: Scalar>(ns: &NodeSet<S>) -> Result<Vec<Vec<Polynomial<S>>>> {
    let basis = spectral_basis(ns)?;
    ns.nodes()
        .iter()
        .zip(&basis.elements)
        .map(|(node, s)| {
            (0..node.multiplicity)
                .map(|k| {
                    let mut shifted = vec![S::zero(); k + 1];
                    shifted[k] = S::one() / factorial_s::<S>(k);
                    (&Polynomial::from_shifted(&shifted, &node.x) * s).rem(&basis.h)
                })
                .collect()
        })
        .collect()
}

/// Uncertainty of float jet values: `delta[i][k]` bounds the error of the
/// computed `f^(k)(x_i)`.
pub fn jet_uncertainty(f: &Expr, ns: &NodeSet<f64>) -> Result<Vec<Vec<f64>>> {
    ns.nodes()
        .iter()
        .map(|node| {
            let jet = jet_eval(f, &node.x, node.multiplicity - 1)?;
            let mut scale: f64 = 0.0;
            Ok(jet
                .coeffs()
                .iter()
                .enumerate()
                .map(|(k, c)| {
                    scale = scale.max(c.abs());
                    JET_REL * (k as f64 + 1.0) * f64::EPSILON * factorial(k) * scale
                })
                .collect())
        })
        .collect()
}

/// First-order effect of data errors on an osculant,
/// `sum_{i,k} w[i][k] |l_ik(x)|`, with cardinal polynomials computed exactly
/// and rounded.
#[derive(Clone, Debug)]
pub struct DataErrorTerm {
    terms: Vec<(Polynomial<f64>, f64)>,
}

impl DataErrorTerm {
    pub fn new(ns: &NodeSet<f64>, weights: &[Vec<f64>]) -> Result<Self> {
        let exact_nodes = ns.map_domain(|x| Rational::from_float(*x).expect("nodes are finite"))?;
        let cardinals = cardinal_basis(&exact_nodes)?;
        let terms = cardinals
            .iter()
            .zip(weights)
            .flat_map(|(ls, ws)| ls.iter().zip(ws).map(|(l, &w)| (round_polynomial(l), w)))
            .collect();
        Ok(Self { terms })
    }

    pub fn at(&self, x: f64) -> f64 {
        self.terms.iter().map(|(l, w)| w * l.eval(&x).abs()).sum()
    }
}

/// Default osculation route.
pub fn osculate<S: Scalar>(data: &HermiteData<S>) -> Result<Osculant<S>> {
    osculate_spectral(data)
}

/// `lim_{x -> x_i} (f - g) / h = (f^(m_i)(x_i) - g^(m_i)(x_i)) / h^(m_i)(x_i)`.
pub fn singular_limit<S: Scalar>(f: &Expr, osc: &Osculant<S>, i: usize) -> Result<S> {
    let node = osc.nodeset.nodes().get(i).ok_or_else(|| {
        Error::InvalidArgument(format!(
            "node index {i} out of range ({} nodes)",
            osc.nodeset.r()
        ))
    })?;
    let m = node.multiplicity;
    let fm = derivative_at(f, &node.x, m)?;
    let gm = osc.g.derivative(m).eval(&node.x);
    let hm = osc.h.derivative(m).eval(&node.x);
    Ok((fm - gm) / hm)
}

fn check_interval(ns: &NodeSet<f64>, a: f64, b: f64) -> Result<()> {
    ns.clone().with_interval(a, b).map(|_| ())
}

fn check_point(x: f64, a: f64, b: f64) -> Result<()> {
    if !(a..=b).contains(&x) {
        return Err(Error::InvalidArgument(format!(
            "x = {x} lies outside [{a}, {b}]"
        )));
    }
    Ok(())
}

/// One evaluation of the osculant with its remainder bound.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BoundedValue {
    pub x: f64,
    pub f: f64,
    pub g: f64,
    pub abs_err: f64,
    /// `analytic` plus the data-error term and [`rounding_allowance`].
    pub bound: f64,
    /// `M_n |h(x)| / n!`.
    pub analytic: f64,
}

/// Precomputed osculant and `M_n = 1.05 * max|f^(n)|` (sampled) on `[a, b]`;
/// `bound(x) = M_n |h(x)| / n!` plus allowances for the rounding of the data
/// ([`jet_uncertainty`] through [`DataErrorTerm`]) and of the evaluation.
#[derive(Clone, Debug)]
pub struct TaylorBound {
    f: Expr,
    osculant: Osculant<f64>,
    data_error: DataErrorTerm,
    interval: (f64, f64),
    range: (f64, f64),
    m_n: f64,
}

impl TaylorBound {
    pub fn new(f: &Expr, ns: &NodeSet<f64>, a: f64, b: f64) -> Result<Self> {
        check_interval(ns, a, b)?;
        let data = HermiteData::from_expr(f, ns)?;
        let osculant = osculate_refined(&data)?;
        let range = derivative_range(f, ns.n(), a, b, DEFAULT_RANGE_GRID)?;
        let m_n = RANGE_SAFETY * range.0.abs().max(range.1.abs());
        let data_error = DataErrorTerm::new(ns, &jet_uncertainty(f, ns)?)?;
        Ok(Self {
            f: f.clone(),
            osculant,
            data_error,
            interval: (a, b),
            range,
            m_n,
        })
    }

    pub fn osculant(&self) -> &Osculant<f64> {
        &self.osculant
    }

    /// Sampled `(min, max)` of `f^(n)` on the interval, before widening.
    pub fn derivative_range(&self) -> (f64, f64) {
        self.range
    }

    pub fn at(&self, x: f64) -> Result<BoundedValue> {
        let (a, b) = self.interval;
        check_point(x, a, b)?;
        let n = self.osculant.nodeset.n();
        let f = eval(&self.f, &x)?;
        let g = self.osculant.g.eval(&x);
        let analytic = self.m_n * self.osculant.h.eval(&x).abs() / factorial(n);
        let bound = analytic
            + self.data_error.at(x)
            + rounding_allowance(n, f, abs_terms(&self.osculant.g, x));
        Ok(BoundedValue {
            x,
            f,
            g,
            abs_err: (f - g).abs(),
            bound,
            analytic,
        })
    }
}

/// `(g(x), bound)` with `|f(x) - g(x)| <= bound` whenever the sampled range
/// of `f^(n)` brackets its true extremum.
pub fn taylor_value_with_bound(
    f: &Expr,
    ns: &NodeSet<f64>,
    x: f64,
    a: f64,
    b: f64,
) -> Result<(f64, f64)> {
    let v = TaylorBound::new(f, ns, a, b)?.at(x)?;
    Ok((v.g, v.bound))
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Witness {
    pub c: f64,
    /// `n! (f(x) - g(x)) / h(x)`, the value `f^(n)(c)` must take.
    pub q: f64,
    /// `|f^(n)(c) - q|`.
    pub residual: f64,
}

/// Finds `c` in `(a, b)` with `f(x) = g(x) + f^(n)(c) h(x) / n!`.
///
/// Scans `f^(n) - q` on a 2048-point interior grid for the leftmost sign
/// change (or near-zero sample) and bisects to `|f^(n)(c) - q| <= 1e-8 (1 + |q|)`.
/// When `f^(n)` is constant to that tolerance the midpoint is returned.
pub fn c_witness(f: &Expr, ns: &NodeSet<f64>, x: f64, a: f64, b: f64) -> Result<Witness> {
    check_interval(ns, a, b)?;
    check_point(x, a, b)?;
    let data = HermiteData::from_expr(f, ns)?;
    let osc = osculate_refined(&data)?;
    let n = ns.n();
    let hx = osc.h.eval(&x);
    if hx == 0.0 {
        return Err(Error::InvalidArgument(format!(
            "x = {x} is a node; use singular_limit for the removable value"
        )));
    }
    let q = factorial(n) * (eval(f, &x)? - osc.g.eval(&x)) / hx;
    let tol = 1e-8 * (1.0 + q.abs());
    let gap = |t: f64| -> Result<f64> { Ok(derivative_at(f, &t, n)? - q) };

    let step = (b - a) / (WITNESS_GRID + 1) as f64;
    let ts: Vec<f64> = (1..=WITNESS_GRID).map(|j| a + step * j as f64).collect();
    // samples on a pole or outside the domain of f^(n) become NaN and never
    // take part in a bracket
    let ds = ts
        .iter()
        .map(|&t| match gap(t) {
            Ok(d) => Ok(d),
            Err(Error::Pole(_) | Error::Domain(_)) => Ok(f64::NAN),
            Err(e) => Err(e),
        })
        .collect::<Result<Vec<f64>>>()?;

    if ds.iter().all(|d| d.abs() <= tol) {
        let c = 0.5 * (a + b);
        return Ok(Witness {
            c,
            q,
            residual: gap(c)?.abs(),
        });
    }

    // leftmost bracket whose bisection actually reaches the tolerance; a
    // sign change across a pole of f^(n) does not
    for j in 0..ds.len() {
        if ds[j].abs() <= 1e-9 {
            return Ok(Witness {
                c: ts[j],
                q,
                residual: ds[j].abs(),
            });
        }
        if j + 1 == ds.len()
            || ds[j].is_nan()
            || ds[j + 1].is_nan()
            || ds[j].signum() == ds[j + 1].signum()
        {
            continue;
        }
        let (mut lo, mut hi, mut d_lo) = (ts[j], ts[j + 1], ds[j]);
        let mut best = (ts[j], ds[j].abs());
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            if mid <= lo || mid >= hi {
                break;
            }
            let Ok(d) = gap(mid) else { break };
            if d.abs() < best.1 {
                best = (mid, d.abs());
            }
            if d.abs() <= tol {
                break;
            }
            if d.signum() == d_lo.signum() {
                lo = mid;
                d_lo = d;
            } else {
                hi = mid;
            }
        }
        if best.1 <= tol {
            return Ok(Witness {
                c: best.0,
                q,
                residual: best.1,
            });
        }
    }

    let finite = || ds.iter().copied().filter(|d| d.is_finite());
    let lo = finite().fold(f64::INFINITY, f64::min) + q;
    let hi = finite().fold(f64::NEG_INFINITY, f64::max) + q;
    Err(Error::WitnessNotBracketed { q, lo, hi })
}

/// Checks a produced osculant against its data using the float tolerance
/// appropriate to the domain; a convenience for callers holding both.
pub fn conditions_hold<S: Scalar>(osc: &Osculant<S>, data: &HermiteData<S>) -> bool {
    osc.satisfies(data) && osc.g.degree().is_none_or(|d| d < data.nodeset.n())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::func::parse;
    use crate::poly::equal_mod;
    use crate::scalar::Rational;
    use std::f64::consts::{E, PI};

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }

    fn ns(pairs: &[(i64, usize)]) -> NodeSet<Rational> {
        NodeSet::new(pairs.iter().map(|&(x, m)| (Rational::from_i64(x), m))).unwrap()
    }

    fn exp_cubic() -> Vec<f64> {
        vec![1.0, 1.0, 2.0 * E - 5.0, 3.0 - E]
    }

    #[test]
    fn hermite_data_examples() {
        let f = parse("exp(x)").unwrap();
        let d =
            HermiteData::from_expr(&f, &NodeSet::new(vec![(0.0, 2), (1.0, 2)]).unwrap()).unwrap();
        assert_eq!(d.values(), &[vec![1.0, 1.0], vec![E, E]]);
        let d = HermiteData::from_expr(&parse("x^3").unwrap(), &ns(&[(1, 2)])).unwrap();
        assert_eq!(
            d.values(),
            &[vec![Rational::from_i64(1), Rational::from_i64(3)]]
        );
        let d = HermiteData::from_expr(
            &parse("sin(x)").unwrap(),
            &NodeSet::new(vec![(0.0, 3)]).unwrap(),
        )
        .unwrap();
        assert_eq!(d.values(), &[vec![0.0, 1.0, 0.0]]);
        assert!(HermiteData::new(ns(&[(0, 2)]), vec![vec![Rational::from_i64(1)]]).is_err());
    }

    #[test]
    fn exp_two_double_nodes() {
        let f = parse("exp(x)").unwrap();
        let set = NodeSet::new(vec![(0.0, 2), (1.0, 2)]).unwrap();
        let data = HermiteData::from_expr(&f, &set).unwrap();
        for osc in [
            osculate_vandermonde(&data).unwrap(),
            osculate_spectral(&data).unwrap(),
        ] {
            assert!(
                osc.g().approx_eq(&Polynomial::new(exp_cubic()), 1e-12),
                "{}",
                osc.g()
            );
            assert!(conditions_hold(&osc, &data));
        }
    }

    #[test]
    fn single_node_is_taylor() {
        let f = parse("exp(x)").unwrap();
        let data = HermiteData::from_expr(&f, &NodeSet::new(vec![(0.0, 3)]).unwrap()).unwrap();
        let expected = Polynomial::new(vec![1.0, 1.0, 0.5]);
        assert!(osculate_vandermonde(&data)
            .unwrap()
            .g()
            .approx_eq(&expected, 1e-14));
        assert!(osculate_spectral(&data)
            .unwrap()
            .g()
            .approx_eq(&expected, 1e-14));
    }

    #[test]
    fn low_degree_polynomial_reproduced() {
        let p = Polynomial::new(vec![q(1, 3), q(-2, 1), q(5, 7)]);
        let data = HermiteData::from_polynomial(&p, &ns(&[(-1, 1), (2, 2)]));
        assert_eq!(osculate_vandermonde(&data).unwrap().g(), &p);
        assert_eq!(osculate_spectral(&data).unwrap().g(), &p);
    }

    #[test]
    fn spectral_basis_examples() {
        let b = spectral_basis(&ns(&[(0, 1), (1, 1)])).unwrap();
        let one = Rational::from_i64(1);
        assert_eq!(
            b.elements()[0],
            Polynomial::new(vec![one.clone(), -one.clone()])
        );
        assert_eq!(
            b.elements()[1],
            Polynomial::new(vec![Rational::from_i64(0), one.clone()])
        );

        let b = spectral_basis(&ns(&[(4, 5)])).unwrap();
        assert_eq!(b.elements(), &[Polynomial::one()]);

        let set = ns(&[(0, 2), (1, 2)]);
        let b = spectral_basis(&set).unwrap();
        let h = b.modulus();
        let sum = b
            .elements()
            .iter()
            .fold(Polynomial::zero(), |acc, s| &acc + s);
        assert!(equal_mod(&sum, &Polynomial::one(), h).unwrap());
        for (i, s) in b.elements().iter().enumerate() {
            assert!(equal_mod(&(s * s), s, h).unwrap());
            let annihilator = Polynomial::linear_factor(&set.nodes()[i].x).pow(2);
            assert!((&annihilator * s).rem(h).unwrap().is_zero());
        }
        assert!((&b.elements()[0] * &b.elements()[1])
            .rem(h)
            .unwrap()
            .is_zero());
    }

    #[test]
    fn linear_interpolation_via_spectral() {
        let set = ns(&[(0, 1), (1, 1)]);
        let data = HermiteData::new(
            set,
            vec![vec![Rational::from_i64(3)], vec![Rational::from_i64(7)]],
        )
        .unwrap();
        let g = osculate_spectral(&data).unwrap();
        assert_eq!(
            g.g(),
            &Polynomial::new(vec![Rational::from_i64(3), Rational::from_i64(4)])
        );
    }

    #[test]
    fn bound_example() {
        let f = parse("exp(x)").unwrap();
        let set = NodeSet::new(vec![(0.0, 2), (1.0, 2)]).unwrap();
        let (g, bound) = taylor_value_with_bound(&f, &set, 0.5, 0.0, 1.0).unwrap();
        assert!((g - (0.625 + 0.375 * E)).abs() < 1e-12);
        assert!((bound - 1.05 * E / 16.0 / 24.0).abs() < 1e-13);
        let err = (0.5f64.exp() - g).abs();
        assert!((err - 4.365_585_027_986e-3).abs() < 1e-12);
        assert!(err <= bound);

        let tb = TaylorBound::new(&f, &set, 0.0, 1.0).unwrap();
        let at_node = tb.at(1.0).unwrap();
        assert_eq!(at_node.analytic, 0.0);
        assert!(at_node.bound < 1e-13);
        assert!(at_node.abs_err <= at_node.bound);
        assert!(tb.at(1.5).is_err());
        assert!(TaylorBound::new(&f, &set, 0.2, 1.0).is_err());
    }

    #[test]
    fn bound_zero_for_low_degree_polynomial() {
        let f = parse("2*x^2 - x + 1").unwrap();
        let set = NodeSet::new(vec![(0.0, 2), (1.0, 2)]).unwrap();
        let v = TaylorBound::new(&f, &set, 0.0, 1.0)
            .unwrap()
            .at(0.3)
            .unwrap();
        assert_eq!(v.analytic, 0.0);
        assert!(v.abs_err <= v.bound && v.bound < 1e-13);
    }

    #[test]
    fn witness_exp() {
        let f = parse("exp(x)").unwrap();
        let set = NodeSet::new(vec![(0.0, 2), (1.0, 2)]).unwrap();
        let w = c_witness(&f, &set, 0.5, 0.0, 1.0).unwrap();
        assert!((w.q - 1.676_384_650_746_7).abs() < 1e-8, "{w:?}");
        assert!((w.c.exp() - w.q).abs() <= 1e-8 * (1.0 + w.q.abs()));
        assert!(w.c > 0.0 && w.c < 1.0);
        assert!(c_witness(&f, &set, 0.0, 0.0, 1.0).is_err());
    }

    #[test]
    fn witness_constant_derivative_is_midpoint() {
        let f = parse("3*x^4 + x").unwrap();
        let set = NodeSet::new(vec![(0.0, 2), (1.0, 2)]).unwrap();
        let w = c_witness(&f, &set, 0.3, 0.0, 1.0).unwrap();
        assert_eq!(w.c, 0.5);
        assert!((w.q - 72.0).abs() < 1e-9);
    }

    #[test]
    fn witness_sin() {
        let f = parse("sin(x)").unwrap();
        let set = NodeSet::new(vec![(0.0, 1), (PI, 1)]).unwrap();
        let w = c_witness(&f, &set, PI / 2.0, 0.0, PI).unwrap();
        assert!((w.q + 8.0 / (PI * PI)).abs() < 1e-12);
        assert!((w.c.sin() - 8.0 / (PI * PI)).abs() < 1e-7);
        let root = (8.0 / (PI * PI)).asin();
        assert!(
            (w.c - root).abs() < 1e-6 || (w.c - (PI - root)).abs() < 1e-6,
            "{}",
            w.c
        );
    }

    #[test]
    fn witness_not_bracketed() {
        // |x| is not twice differentiable at 0; sampled f'' is 0 but q = 4/3
        let f = parse("sqrt(x*x)").unwrap();
        let set = NodeSet::new(vec![(-1.0, 1), (1.0, 1)]).unwrap();
        match c_witness(&f, &set, 0.5, -1.0, 1.0) {
            Err(Error::WitnessNotBracketed { q, lo, hi }) => {
                assert!((q - 4.0 / 3.0).abs() < 1e-12);
                assert!(lo.abs() < 1e-9 && hi.abs() < 1e-9);
            }
            other => panic!("expected WitnessNotBracketed, got {other:?}"),
        }
    }

    #[test]
    fn witness_skips_pole_bracket() {
        // f'' = 2/(t - 1/2)^3 flips sign across the pole at 1/2 only
        let f = parse("1/(x - 1/2)").unwrap();
        let set = NodeSet::new(vec![(0.0, 1), (1.0, 1)]).unwrap();
        let w = c_witness(&f, &set, 0.25, 0.0, 1.0).unwrap();
        assert!((w.q - 32.0).abs() < 1e-9);
        assert!(
            (2.0 / (w.c - 0.5).powi(3) - 32.0).abs() <= 1e-8 * 33.0,
            "{w:?}"
        );
    }

    #[test]
    fn singular_limits() {
        let f = parse("exp(x)").unwrap();
        let set = NodeSet::new(vec![(0.0, 2), (1.0, 2)]).unwrap();
        let osc = osculate(&HermiteData::from_expr(&f, &set).unwrap()).unwrap();
        let v = singular_limit(&f, &osc, 0).unwrap();
        assert!((v - (11.0 - 4.0 * E) / 2.0).abs() < 1e-12);
        assert!((1.0 / 24.0..=E / 24.0).contains(&v));

        let set = NodeSet::new(vec![(0.0, 3)]).unwrap();
        let osc = osculate(&HermiteData::from_expr(&f, &set).unwrap()).unwrap();
        assert!((singular_limit(&f, &osc, 0).unwrap() - 1.0 / 6.0).abs() < 1e-15);
        assert!(singular_limit(&f, &osc, 1).is_err());

        let p = parse("x^2 - 3").unwrap();
        let set = ns(&[(0, 2), (1, 2)]);
        let osc = osculate(&HermiteData::from_expr(&p, &set).unwrap()).unwrap();
        assert_eq!(singular_limit(&p, &osc, 1).unwrap(), Rational::from_i64(0));
    }
}
