//! Osculating polynomial and rational approximation modulo
//! `h(x) = prod_i (x - x_i)^m_i`.
//!
//! Given a function and nodes `x_i` with multiplicities `m_i`, the crate
//! computes the unique polynomial `g` with `deg g < n = sum m_i` that matches
//! `f^(k)(x_i)` for all `k < m_i` (by a confluent Vandermonde solve and,
//! independently, by CRT idempotents of `R[x]/(h)`), bounds the remainder
//! `f - g = f^(n)(c) h(x) / n!`, and fits rational approximants `u / v` with
//! `f v - u ≡ 0 (mod h)`.
//!
//! Every algebraic routine is generic over [`Scalar`], implemented by exact
//! rationals ([`Rational`]) and `f64`.

pub mod cli;
pub mod error;
pub mod func;
pub mod interp;
pub mod modulus;
pub mod poly;
pub mod ratapprox;
pub mod scalar;

pub use error::{Error, Result};
pub use func::{parse, Expr, Jet};
pub use interp::{HermiteData, Osculant, SpectralBasis};
pub use modulus::{build_modulus, NodeSet};
pub use poly::Polynomial;
pub use ratapprox::RationalApproximant;
pub use scalar::{DenseMatrix, Rational, Scalar};
