//! Boolean functions, dual-rail literals, minterm covers and factored expressions.

mod codeword;
mod cover;
mod expr;
mod function;

pub use codeword::{Codeword, Rails, VarSet};
pub use cover::{dual_rail_cover, eval_cover_pair, CoverPair, DsopCover, ProductTerm, RailLiteral};
pub use expr::FactoredExpr;
pub use function::{BooleanFunction, MAX_INPUTS};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LogicError {
    #[error("input count {n} outside 1..={max}")]
    InputCount { n: usize, max: usize },
    #[error("truth table for n={n} must have 2^{n} = {expected} entries (expected {expected}, found {found})")]
    TableLength { n: usize, expected: usize, found: usize },
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("product term uses both rails of X{var}")]
    BothRails { var: usize },
    #[error("malformed rail literal `{0}`")]
    Literal(String),
    #[error("malformed expression: {0}")]
    Expr(String),
    #[error("malformed codeword {0}")]
    Codeword(String),
    #[error("arity mismatch: expected {expected} variables, found {found}")]
    Arity { expected: usize, found: usize },
}
