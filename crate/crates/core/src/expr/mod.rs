//! Concrete syntax for symbols, operators and univariate functions.

mod lower;
mod parse;

pub use lower::{lower, lower_into, parse_operator, parse_symbol, parse_univariate, ExprAlgebra, Lowered};
pub use parse::{parse, Expr, Mode, ParseError, ParseErrorKind, Variable};
