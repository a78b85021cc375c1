//! Expression language for trigonometric sums: AST, parser, printer and
//! capture-avoiding substitution.

mod ast;
mod parser;
mod render;

pub use ast::{Bindings, TrigExpr};
pub use parser::{parse, SourceError};
pub use render::render;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SubstituteError {
    /// The name is bound by a summation somewhere and also occurs free, so the
    /// substitution would silently skip the summation body.
    #[error("'{0}' is both a summation index and a free variable")]
    IndexCollision(String),
}

/// Replaces free occurrences of the bound names by rational literals.
///
/// Occurrences bound by an enclosing `sum` are left alone.
pub fn substitute(expr: &TrigExpr, bindings: &Bindings) -> Result<TrigExpr, SubstituteError> {
    let indices = expr.sum_indices();
    let free = expr.free_vars();
    if let Some(name) = bindings
        .keys()
        .find(|k| indices.contains(*k) && free.contains(*k))
    {
        return Err(SubstituteError::IndexCollision(name.clone()));
    }
    Ok(replace(expr, bindings, &mut Vec::new()))
}

fn replace<'a>(e: &'a TrigExpr, b: &Bindings, bound: &mut Vec<&'a str>) -> TrigExpr {
    let rec = |x: &'a TrigExpr, bound: &mut Vec<&'a str>| Box::new(replace(x, b, bound));
    match e {
        TrigExpr::Var(name) if !bound.contains(&name.as_str()) => match b.get(name) {
            Some(value) => TrigExpr::Rational(value.clone()),
            None => e.clone(),
        },
        TrigExpr::Rational(_) | TrigExpr::Pi | TrigExpr::Var(_) => e.clone(),
        TrigExpr::Add(x, y) => TrigExpr::Add(rec(x, bound), rec(y, bound)),
        TrigExpr::Sub(x, y) => TrigExpr::Sub(rec(x, bound), rec(y, bound)),
        TrigExpr::Mul(x, y) => TrigExpr::Mul(rec(x, bound), rec(y, bound)),
        TrigExpr::Div(x, y) => TrigExpr::Div(rec(x, bound), rec(y, bound)),
        TrigExpr::Neg(x) => TrigExpr::Neg(rec(x, bound)),
        TrigExpr::Pow(x, k) => TrigExpr::Pow(rec(x, bound), *k),
        TrigExpr::Sin(x) => TrigExpr::Sin(rec(x, bound)),
        TrigExpr::Cos(x) => TrigExpr::Cos(rec(x, bound)),
        TrigExpr::Sum {
            index,
            lower,
            upper,
            body,
        } => {
            let lower = rec(lower, bound);
            let upper = rec(upper, bound);
            bound.push(index);
            let body = rec(body, bound);
            bound.pop();
            TrigExpr::Sum {
                index: index.clone(),
                lower,
                upper,
                body,
            }
        }
    }
}
