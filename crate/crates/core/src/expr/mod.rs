//! Noncommutative rational expressions: syntax trees, the text grammar,
//! evaluation on matrix tuples and over abstract unital algebras.

mod algebra;
mod ast;
mod equiv;
mod eval;
mod parse;

pub use algebra::{eval_expr_algebra, Algebra, MatrixAlgebra};
pub use ast::NcExpr;
pub use equiv::{equivalence_check, Verdict};
pub use eval::eval_expr;
pub use parse::parse;
