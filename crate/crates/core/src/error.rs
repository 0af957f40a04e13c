use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("singular matrix: no usable pivot in column {column}")]
    SingularMatrix { column: usize },

    #[error("overdetermined system is inconsistent (residual row {row})")]
    Inconsistent { row: usize },

    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("division by the zero polynomial")]
    DivisionByZeroPolynomial,

    #[error("duplicate node {0}")]
    DuplicateNode(String),

    #[error("invalid node set: {0}")]
    InvalidNodeSet(String),

    #[error("syntax error at byte {offset}: expected {expected}")]
    Syntax { offset: usize, expected: String },

    #[error("domain error: {0}")]
    Domain(String),

    #[error("pole: {0}")]
    Pole(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("no mean-value witness bracketed: q = {q}, sampled f^(n) range [{lo}, {hi}]")]
    WitnessNotBracketed { q: f64, lo: f64, hi: f64 },

    #[error("degenerate table: {0}")]
    DegenerateTable(String),

    #[error("denominator vanishes at node {index} (x = {x})")]
    PoleAtNode { index: usize, x: String },

    #[error(
        "degree split deg_u={deg_u}, deg_v={deg_v} needs {unknowns} unknowns but only n={n} conditions exist; try deg_u={}, deg_v={}",
        suggestion.0, suggestion.1
    )]
    DegreeSplit {
        deg_u: usize,
        deg_v: usize,
        unknowns: usize,
        n: usize,
        suggestion: (usize, usize),
    },
}
