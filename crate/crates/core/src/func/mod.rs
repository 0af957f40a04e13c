//! User-supplied functions: parsing and Taylor-mode derivatives.

pub mod expr;
pub mod jet;

pub use expr::{parse, BinOp, Constant, Expr, Func};
pub use jet::{derivative_at, derivative_range, eval, jet_eval, Jet, DEFAULT_RANGE_GRID};
