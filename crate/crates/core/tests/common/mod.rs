#![allow(dead_code)]

//! Shared strategies and independent oracles for the integration tests.

use astro_float::{BigFloat, Consts, Radix, RoundingMode};
use gts::{NodeSet, Polynomial, Rational};
use num_bigint::BigInt;
use proptest::prelude::*;

pub fn q(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn small_rational() -> impl Strategy<Value = Rational> {
    (-9i64..=9, 1i64..=5).prop_map(|(n, d)| q(n, d))
}

pub fn rational_poly(max_deg: usize) -> impl Strategy<Value = Polynomial<Rational>> {
    prop::collection::vec(small_rational(), 0..=max_deg + 1).prop_map(Polynomial::new)
}

/// Nonzero divisor of degree 1..=max_deg.
pub fn rational_divisor(max_deg: usize) -> impl Strategy<Value = Polynomial<Rational>> {
    (
        prop::collection::vec(small_rational(), 1..=max_deg),
        (1i64..=9, 1i64..=4),
    )
        .prop_map(|(mut c, (n, d))| {
            c.push(q(n, d));
            Polynomial::new(c)
        })
}

/// Distinct nodes `k/2`, `k` in `-8..=8`, with `r <= max_r`, `m_i <= max_m`
/// and `n <= max_n`.
pub fn exact_nodeset(
    max_r: usize,
    max_m: usize,
    max_n: usize,
) -> impl Strategy<Value = NodeSet<Rational>> {
    (
        prop::collection::btree_set(-8i64..=8, 1..=max_r),
        prop::collection::vec(1usize..=max_m, max_r),
    )
        .prop_map(move |(xs, ms)| {
            let mut budget = max_n;
            let mut pairs = Vec::new();
            for (x, m) in xs.into_iter().zip(ms) {
                if budget == 0 {
                    break;
                }
                let m = m.min(budget);
                budget -= m;
                pairs.push((q(x, 2), m));
            }
            NodeSet::new(pairs).unwrap()
        })
}

/// Float nodes in `[0, 1]` at multiples of 1/8, with `n <= max_n`.
pub fn unit_nodeset(
    max_r: usize,
    max_m: usize,
    max_n: usize,
) -> impl Strategy<Value = NodeSet<f64>> {
    (
        prop::collection::btree_set(0u32..=8, 1..=max_r),
        prop::collection::vec(1usize..=max_m, max_r),
    )
        .prop_map(move |(xs, ms)| {
            let mut budget = max_n;
            let mut pairs = Vec::new();
            for (x, m) in xs.into_iter().zip(ms) {
                if budget == 0 {
                    break;
                }
                let m = m.min(budget);
                budget -= m;
                pairs.push((f64::from(x) / 8.0, m));
            }
            NodeSet::new(pairs).unwrap()
        })
}

/// Direct polynomial expansion of `sum_k c_k (x - x0)^k` by the binomial
/// theorem.
pub fn binomial_expand(c: &[Rational], x0: &Rational) -> Polynomial<Rational> {
    let mut out = vec![q(0, 1); c.len()];
    for (k, ck) in c.iter().enumerate() {
        let mut binom = BigInt::from(1);
        for j in 0..=k {
            // coefficient of x^j in (x - x0)^k is C(k, j) (-x0)^(k-j)
            let mut term = ck.clone() * Rational::from_integer(binom.clone());
            for _ in 0..(k - j) {
                term = term * -x0.clone();
            }
            out[j] = out[j].clone() + term;
            binom = binom * BigInt::from(k - j) / BigInt::from(j + 1);
        }
    }
    Polynomial::new(out)
}

/// Smooth corpus used by derivative and bound checks, with a 256-bit
/// reference evaluator.
#[derive(Clone, Copy, Debug)]
pub enum Smooth {
    Exp,
    Sin,
    XExp,
    Runge,
}

pub const PREC: usize = 256;
const RM: RoundingMode = RoundingMode::ToEven;

impl Smooth {
    pub const ALL: [Smooth; 4] = [Smooth::Exp, Smooth::Sin, Smooth::XExp, Smooth::Runge];

    pub fn text(self) -> &'static str {
        match self {
            Smooth::Exp => "exp(x)",
            Smooth::Sin => "sin(x)",
            Smooth::XExp => "x*exp(x)",
            Smooth::Runge => "1/(1+x^2)",
        }
    }

    pub fn eval_big(self, x: &BigFloat, cc: &mut Consts) -> BigFloat {
        match self {
            Smooth::Exp => x.exp(PREC, RM, cc),
            Smooth::Sin => x.sin(PREC, RM, cc),
            Smooth::XExp => x.mul(&x.exp(PREC, RM, cc), PREC, RM),
            Smooth::Runge => {
                let one = BigFloat::from_i32(1, PREC);
                one.div(&one.add(&x.mul(x, PREC, RM), PREC, RM), PREC, RM)
            }
        }
    }
}

pub fn big_to_f64(v: &BigFloat, cc: &mut Consts) -> f64 {
    v.format(Radix::Dec, RM, cc)
        .expect("formattable")
        .parse()
        .expect("decimal")
}

/// Central difference of order `k` with step `h`, evaluated at 256 bits:
/// `h^-k sum_j (-1)^j C(k, j) f(x + (k/2 - j) h)`.
pub fn central_difference(f: Smooth, x: f64, k: usize, h: f64) -> f64 {
    let mut cc = Consts::new().expect("constants");
    let xb = BigFloat::from_f64(x, PREC);
    let hb = BigFloat::from_f64(h, PREC);
    let half = BigFloat::from_f64(0.5, PREC);
    let mut sum = BigFloat::from_i32(0, PREC);
    let mut binom: i64 = 1;
    for j in 0..=k {
        let offset = BigFloat::from_i64(k as i64 - 2 * j as i64, PREC).mul(&half, PREC, RM);
        let t = xb.add(&offset.mul(&hb, PREC, RM), PREC, RM);
        let term = f
            .eval_big(&t, &mut cc)
            .mul(&BigFloat::from_i64(binom, PREC), PREC, RM);
        sum = if j % 2 == 0 {
            sum.add(&term, PREC, RM)
        } else {
            sum.sub(&term, PREC, RM)
        };
        binom = binom * (k - j) as i64 / (j + 1) as i64;
    }
    let hk = hb.powi(k, PREC, RM);
    big_to_f64(&sum.div(&hk, PREC, RM), &mut cc)
}

/// `f^(k)(x)` at 256 bits from closed forms: the exponential is its own
/// derivative, sine cycles through `sin, cos, -sin, -cos`, and
/// `(1 + x^2)^-1` has `f^(k) = (-1)^k k! Im((x + i)^(k+1)) / (1 + x^2)^(k+1)`.
pub fn derivative_big(f: Smooth, x: &BigFloat, k: usize, cc: &mut Consts) -> BigFloat {
    match f {
        Smooth::Exp => x.exp(PREC, RM, cc),
        Smooth::Sin => {
            let v = if k % 2 == 0 {
                x.sin(PREC, RM, cc)
            } else {
                x.cos(PREC, RM, cc)
            };
            if k % 4 >= 2 {
                v.neg()
            } else {
                v
            }
        }
        Smooth::XExp => {
            // (x + k) e^x
            let shift = BigFloat::from_i64(k as i64, PREC);
            x.add(&shift, PREC, RM).mul(&x.exp(PREC, RM, cc), PREC, RM)
        }
        Smooth::Runge => {
            let one = BigFloat::from_i32(1, PREC);
            let (mut re, mut im) = (one.clone(), BigFloat::from_i32(0, PREC));
            for _ in 0..=k {
                // (re + i im)(x + i)
                let nre = re.mul(x, PREC, RM).sub(&im, PREC, RM);
                let nim = im.mul(x, PREC, RM).add(&re, PREC, RM);
                re = nre;
                im = nim;
            }
            let base = one.add(&x.mul(x, PREC, RM), PREC, RM);
            let fact = (1..=k as i64).fold(one, |acc, j| {
                acc.mul(&BigFloat::from_i64(j, PREC), PREC, RM)
            });
            let v = im
                .mul(&fact, PREC, RM)
                .div(&base.powi(k + 1, PREC, RM), PREC, RM);
            if k % 2 == 1 {
                v.neg()
            } else {
                v
            }
        }
    }
}

/// Exact rational from a 256-bit value via its decimal expansion.
pub fn big_to_rational(v: &BigFloat, cc: &mut Consts) -> Rational {
    gts::scalar::parse_rational(&v.format(Radix::Dec, RM, cc).expect("formattable"))
        .expect("decimal")
}
