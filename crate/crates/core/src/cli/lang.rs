//! Element expressions on the command line: parse against an algebra, lower
//! to a normal form, print in a form that parses back to the same element.

use thiserror::Error;

use crate::expr::{parse_expr, Expr, ExprKind, Span, SyntaxError};
use crate::qfield::{QFieldError, QRational};
use crate::superalgebra::{Algebra, AlgebraError, Element, RenderStyle};

/// The only scalar variable.
pub const SCALAR_VAR: &str = "q";

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum LangError {
    #[error(transparent)]
    Syntax(#[from] SyntaxError),
    #[error("unknown identifier `{name}` at column {}", .span.start + 1)]
    UnknownIdentifier { name: String, span: Span },
    #[error("negative power of non-invertible generator `{name}` at column {}", .span.start + 1)]
    NegativePower { name: String, span: Span },
    #[error("division by a non-scalar at column {}", .span.start + 1)]
    NonScalarDivisor { span: Span },
    #[error("exponent out of range at column {}", .span.start + 1)]
    ExponentRange { span: Span },
    #[error("at column {}: {source}", .span.start + 1)]
    Field { span: Span, source: QFieldError },
    #[error("at column {}: {source}", .span.start + 1)]
    Algebra { span: Span, source: AlgebraError },
}

impl LangError {
    fn algebra(span: Span) -> impl FnOnce(AlgebraError) -> LangError {
        move |source| LangError::Algebra { span, source }
    }

    fn field(span: Span) -> impl FnOnce(QFieldError) -> LangError {
        move |source| LangError::Field { span, source }
    }
}

/// Parses `input` and resolves every identifier against `alg`.
pub fn parse(input: &str, alg: &Algebra) -> Result<Expr, LangError> {
    let e = parse_expr(input)?;
    validate(&e, alg)?;
    Ok(e)
}

fn validate(e: &Expr, alg: &Algebra) -> Result<(), LangError> {
    match &e.kind {
        ExprKind::Int(_) => Ok(()),
        ExprKind::Ident(name) if name == SCALAR_VAR || alg.index(name).is_some() => Ok(()),
        ExprKind::Ident(name) => Err(LangError::UnknownIdentifier {
            name: name.clone(),
            span: e.span,
        }),
        ExprKind::Pow(base, k) => {
            validate(base, alg)?;
            if let (ExprKind::Ident(name), true) = (&base.kind, *k < 0) {
                if let Some(g) = alg.index(name) {
                    if !alg.generator(g).invertible {
                        return Err(LangError::NegativePower {
                            name: name.clone(),
                            span: e.span,
                        });
                    }
                }
            }
            Ok(())
        }
        ExprKind::Neg(a) => validate(a, alg),
        ExprKind::Add(a, b) | ExprKind::Sub(a, b) | ExprKind::Mul(a, b) | ExprKind::Div(a, b) => {
            validate(a, alg)?;
            validate(b, alg)
        }
    }
}

fn is_scalar(e: &Expr) -> bool {
    e.only_idents(|name| name == SCALAR_VAR)
}

/// Lowers a parsed expression to its normal form. Scalar subtrees are folded
/// into field values first.
pub fn eval(e: &Expr, alg: &Algebra) -> Result<Element, LangError> {
    if is_scalar(e) {
        let c = QRational::from_expr(e).map_err(LangError::field(e.span))?;
        return Ok(Element::scalar(alg, c));
    }
    let wrap = LangError::algebra(e.span);
    match &e.kind {
        ExprKind::Int(_) => unreachable!("integers are scalar"),
        ExprKind::Ident(name) => Element::generator(alg, name).map_err(wrap),
        ExprKind::Neg(a) => Ok(-eval(a, alg)?),
        ExprKind::Add(a, b) => eval(a, alg)?.try_add(&eval(b, alg)?).map_err(wrap),
        ExprKind::Sub(a, b) => eval(a, alg)?.try_sub(&eval(b, alg)?).map_err(wrap),
        ExprKind::Mul(a, b) => eval(a, alg)?.try_mul(&eval(b, alg)?).map_err(wrap),
        ExprKind::Div(a, b) => {
            if !is_scalar(b) {
                return Err(LangError::NonScalarDivisor { span: b.span });
            }
            let divisor = QRational::from_expr(b).map_err(LangError::field(b.span))?;
            let inv = divisor.inv().map_err(LangError::field(b.span))?;
            Ok(eval(a, alg)?.scale(&inv))
        }
        ExprKind::Pow(base, k) => match &base.kind {
            ExprKind::Ident(name) => {
                let k = i32::try_from(*k).map_err(|_| LangError::ExponentRange { span: e.span })?;
                Element::word(alg, &[(name, k)], QRational::one()).map_err(wrap)
            }
            _ => eval(base, alg)?.pow(*k).map_err(wrap),
        },
    }
}

/// Parses and evaluates in one step.
pub fn evaluate(input: &str, alg: &Algebra) -> Result<Element, LangError> {
    eval(&parse(input, alg)?, alg)
}

/// Canonical text. The ASCII form parses back to the same element.
pub fn print(x: &Element, style: RenderStyle) -> String {
    x.render(style)
}
