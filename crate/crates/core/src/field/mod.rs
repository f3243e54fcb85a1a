//! Space-time field expressions: the potentials `A^μ(t, x)` and the metric
//! perturbation `h^{μν}(t, x)` that replace the group coordinates once the
//! quantization form is known.
//!
//! Expressions are parsed from infix text, evaluated in `f64` and
//! differentiated symbolically. Free names other than the coordinates are
//! parameters bound at evaluation.

mod expr;
mod parse;
mod spec;

pub use expr::{Binary, EvalError, EvalErrorKind, Expr, Params, Point, Unary, Var};
pub use parse::{parse, ParseError};
pub use spec::{
    curl, div, dot, dt, eval3, grad, scale, vector_ops, DerivedFields, FieldError, FieldSpec, A_KEYS, H_KEYS,
};
