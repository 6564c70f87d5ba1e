//! The script language: lexer, parser, pretty-printer and executor.

pub mod ast;
mod exec;
pub mod lexer;
pub mod parser;

use std::sync::Arc;

use num_bigint::BigInt;

use crate::algebra::{PolyRing, Polynomial};
use crate::error::{Error, Result};
use ast::{BinOp, Expr, ExprKind};
pub use exec::{execute, run_source, Assertion, CommandReport, ExecOptions, Report, Status};
pub use lexer::{Diagnostic, Span};
pub use parser::{parse, parse_expr};

/// Parses a polynomial in the variables of `ring`.
pub fn parse_polynomial(ring: &Arc<PolyRing>, text: &str) -> Result<Polynomial> {
    let expr = parse_expr(text).map_err(|d| Error::InvalidArgument(d.to_string()))?;
    eval_polynomial(ring, &expr, &|_| None).map_err(|d| Error::InvalidArgument(d.to_string()))
}

/// Evaluates a polynomial expression. Names are ring variables, or else
/// looked up through `lookup`.
pub(crate) fn eval_polynomial(
    ring: &Arc<PolyRing>,
    e: &Expr,
    lookup: &dyn Fn(&str) -> Option<Polynomial>,
) -> std::result::Result<Polynomial, Diagnostic> {
    let rec = |x: &Expr| eval_polynomial(ring, x, lookup);
    match &e.kind {
        ExprKind::Int(s) => {
            let v: BigInt = s.parse().expect("lexer yields digits");
            Ok(ring.constant(ring.field().from_bigint(&v)))
        }
        ExprKind::Name(n) => ring
            .var_named(n)
            .or_else(|| lookup(n))
            .ok_or_else(|| Diagnostic::new(e.span, format!("`{n}` is not a variable of the ring"))),
        ExprKind::Neg(x) => Ok(-&rec(x)?),
        ExprKind::Binary(op, a, b) => {
            let a = rec(a)?;
            let b = rec(b)?;
            Ok(match op {
                BinOp::Add => &a + &b,
                BinOp::Sub => &a - &b,
                BinOp::Mul => &a * &b,
                BinOp::Div => {
                    if !b.is_unit() {
                        return Err(Diagnostic::new(e.span, "division is only by nonzero constants"));
                    }
                    a.scale(&b.constant_coeff().inverse().expect("unit"))
                }
            })
        }
        ExprKind::Pow(x, k) => Ok(rec(x)?.pow(*k)),
        ExprKind::Call { name, .. } => Err(Diagnostic::new(e.span, format!("`{name}(...)` is not a polynomial"))),
        ExprKind::List(_) => Err(Diagnostic::new(e.span, "a list is not a polynomial")),
    }
}
