use num_traits::{One, Signed};

use super::TrigExpr;

// Binding strength, loosest first.
const ADD: u8 = 1;
const MUL: u8 = 2;
const NEG: u8 = 3;
const POW: u8 = 4;
const ATOM: u8 = 5;

fn strength(e: &TrigExpr) -> u8 {
    match e {
        TrigExpr::Add(..) | TrigExpr::Sub(..) => ADD,
        TrigExpr::Mul(..) | TrigExpr::Div(..) => MUL,
        TrigExpr::Neg(_) => NEG,
        TrigExpr::Pow(..) => POW,
        TrigExpr::Rational(r) if r.is_negative() => NEG,
        _ => ATOM,
    }
}

/// Prints an expression in the input language; `parse(render(e)) == e` for
/// every tree the parser can produce.
pub fn render(e: &TrigExpr) -> String {
    let mut out = String::new();
    write_expr(e, &mut out);
    out
}

fn wrapped(e: &TrigExpr, parens: bool, out: &mut String) {
    if parens {
        out.push('(');
        write_expr(e, out);
        out.push(')');
    } else {
        write_expr(e, out);
    }
}

fn write_expr(e: &TrigExpr, out: &mut String) {
    match e {
        TrigExpr::Rational(r) => {
            if r.is_negative() {
                // Not produced by the parser; it reads back as a negation.
                out.push_str(&format!("(-{})", render(&TrigExpr::Rational(-r))));
            } else if r.denom().is_one() {
                out.push_str(&r.numer().to_string());
            } else {
                out.push_str(&format!("{}/{}", r.numer(), r.denom()));
            }
        }
        TrigExpr::Pi => out.push_str("pi"),
        TrigExpr::Var(name) => out.push_str(name),
        TrigExpr::Add(a, b) | TrigExpr::Sub(a, b) => {
            wrapped(a, strength(a) < ADD, out);
            out.push_str(if matches!(e, TrigExpr::Add(..)) {
                " + "
            } else {
                " - "
            });
            wrapped(b, strength(b) <= ADD, out);
        }
        TrigExpr::Mul(a, b) => {
            wrapped(a, strength(a) < MUL, out);
            out.push('*');
            wrapped(b, strength(b) <= MUL, out);
        }
        TrigExpr::Div(a, b) => {
            wrapped(a, strength(a) < MUL, out);
            out.push('/');
            // An integer right after '/' would fuse into a rational literal.
            let right = render(b);
            let fuses = right.starts_with(|c: char| c.is_ascii_digit());
            wrapped(b, strength(b) <= MUL || fuses, out);
        }
        TrigExpr::Neg(a) => {
            out.push('-');
            wrapped(a, strength(a) < NEG, out);
        }
        TrigExpr::Pow(base, exp) => {
            let fraction = matches!(&**base, TrigExpr::Rational(r) if !r.denom().is_one());
            wrapped(base, strength(base) < ATOM || fraction, out);
            out.push_str(&format!("^{exp}"));
        }
        TrigExpr::Sin(a) => {
            out.push_str("sin(");
            write_expr(a, out);
            out.push(')');
        }
        TrigExpr::Cos(a) => {
            out.push_str("cos(");
            write_expr(a, out);
            out.push(')');
        }
        TrigExpr::Sum {
            index,
            lower,
            upper,
            body,
        } => {
            out.push_str(&format!("sum({index}="));
            write_expr(lower, out);
            out.push_str("..");
            write_expr(upper, out);
            out.push_str(", ");
            write_expr(body, out);
            out.push(')');
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::parse;

    #[test]
    fn simple_renders() {
        assert_eq!(render(&TrigExpr::sin(TrigExpr::Pi)), "sin(pi)");
        assert_eq!(
            render(&TrigExpr::pow(TrigExpr::sin(TrigExpr::var("k")), 2)),
            "sin(k)^2"
        );
        assert_eq!(
            render(&TrigExpr::pow(TrigExpr::rational(2, 3), -1)),
            "(2/3)^-1"
        );
    }

    #[test]
    fn ambiguous_divisions_round_trip() {
        let x = || TrigExpr::var("x");
        let cases = vec![
            (x() * TrigExpr::int(2)) / TrigExpr::int(3),
            x() * TrigExpr::rational(2, 3),
            (x() / TrigExpr::int(1)) / TrigExpr::int(2),
            TrigExpr::int(2) / TrigExpr::pow(TrigExpr::int(3), 2),
            TrigExpr::int(1) / TrigExpr::rational(2, 3),
            x() - (x() - x()),
            x() / (x() * x()),
            -(x() + x()),
            TrigExpr::pow(-x(), 3),
            TrigExpr::pow(TrigExpr::pow(x(), 2), 3),
            x() * -x(),
        ];
        for e in cases {
            let text = render(&e);
            assert_eq!(parse(&text).unwrap(), e, "via {text:?}");
        }
    }
}
