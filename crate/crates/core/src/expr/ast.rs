use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_rational::BigRational;

/// Values for the free variables of an expression.
pub type Bindings = BTreeMap<String, BigRational>;

/// Expression tree for trigonometric sums.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TrigExpr {
    Rational(BigRational),
    Pi,
    Var(String),
    Add(Box<TrigExpr>, Box<TrigExpr>),
    Sub(Box<TrigExpr>, Box<TrigExpr>),
    Mul(Box<TrigExpr>, Box<TrigExpr>),
    Div(Box<TrigExpr>, Box<TrigExpr>),
    Neg(Box<TrigExpr>),
    /// Integer power; the exponent is a literal and may be negative.
    Pow(Box<TrigExpr>, i64),
    Sin(Box<TrigExpr>),
    Cos(Box<TrigExpr>),
    /// `Σ_{index = lower}^{upper} body`, both bounds inclusive.
    Sum {
        index: String,
        lower: Box<TrigExpr>,
        upper: Box<TrigExpr>,
        body: Box<TrigExpr>,
    },
}

impl TrigExpr {
    pub fn int(n: i64) -> Self {
        TrigExpr::Rational(BigRational::from_integer(n.into()))
    }

    pub fn rational(n: i64, d: i64) -> Self {
        TrigExpr::Rational(BigRational::new(n.into(), d.into()))
    }

    pub fn var(name: &str) -> Self {
        TrigExpr::Var(name.to_string())
    }

    pub fn sin(arg: TrigExpr) -> Self {
        TrigExpr::Sin(Box::new(arg))
    }

    pub fn cos(arg: TrigExpr) -> Self {
        TrigExpr::Cos(Box::new(arg))
    }

    pub fn pow(base: TrigExpr, exp: i64) -> Self {
        TrigExpr::Pow(Box::new(base), exp)
    }

    pub fn sum(index: &str, lower: TrigExpr, upper: TrigExpr, body: TrigExpr) -> Self {
        TrigExpr::Sum {
            index: index.to_string(),
            lower: Box::new(lower),
            upper: Box::new(upper),
            body: Box::new(body),
        }
    }

    /// Names occurring free, i.e. not bound by an enclosing `Sum`.
    pub fn free_vars(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.collect_free(&mut Vec::new(), &mut out);
        out
    }

    fn collect_free<'a>(&'a self, bound: &mut Vec<&'a str>, out: &mut BTreeSet<String>) {
        match self {
            TrigExpr::Rational(_) | TrigExpr::Pi => {}
            TrigExpr::Var(name) => {
                if !bound.contains(&name.as_str()) {
                    out.insert(name.clone());
                }
            }
            TrigExpr::Add(a, b)
            | TrigExpr::Sub(a, b)
            | TrigExpr::Mul(a, b)
            | TrigExpr::Div(a, b) => {
                a.collect_free(bound, out);
                b.collect_free(bound, out);
            }
            TrigExpr::Neg(a) | TrigExpr::Pow(a, _) | TrigExpr::Sin(a) | TrigExpr::Cos(a) => {
                a.collect_free(bound, out)
            }
            TrigExpr::Sum {
                index,
                lower,
                upper,
                body,
            } => {
                lower.collect_free(bound, out);
                upper.collect_free(bound, out);
                bound.push(index);
                body.collect_free(bound, out);
                bound.pop();
            }
        }
    }

    /// Every name used as a summation index anywhere in the tree.
    pub fn sum_indices(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.visit(&mut |e| {
            if let TrigExpr::Sum { index, .. } = e {
                out.insert(index.clone());
            }
        });
        out
    }

    pub fn contains_trig(&self) -> bool {
        let mut found = false;
        self.visit(&mut |e| found |= matches!(e, TrigExpr::Sin(_) | TrigExpr::Cos(_)));
        found
    }

    /// Pre-order traversal.
    pub fn visit(&self, f: &mut impl FnMut(&TrigExpr)) {
        f(self);
        match self {
            TrigExpr::Rational(_) | TrigExpr::Pi | TrigExpr::Var(_) => {}
            TrigExpr::Add(a, b)
            | TrigExpr::Sub(a, b)
            | TrigExpr::Mul(a, b)
            | TrigExpr::Div(a, b) => {
                a.visit(f);
                b.visit(f);
            }
            TrigExpr::Neg(a) | TrigExpr::Pow(a, _) | TrigExpr::Sin(a) | TrigExpr::Cos(a) => {
                a.visit(f)
            }
            TrigExpr::Sum {
                lower, upper, body, ..
            } => {
                lower.visit(f);
                upper.visit(f);
                body.visit(f);
            }
        }
    }

    pub fn node_count(&self) -> usize {
        let mut n = 0;
        self.visit(&mut |_| n += 1);
        n
    }

    pub fn depth(&self) -> usize {
        match self {
            TrigExpr::Rational(_) | TrigExpr::Pi | TrigExpr::Var(_) => 1,
            TrigExpr::Add(a, b)
            | TrigExpr::Sub(a, b)
            | TrigExpr::Mul(a, b)
            | TrigExpr::Div(a, b) => 1 + a.depth().max(b.depth()),
            TrigExpr::Neg(a) | TrigExpr::Pow(a, _) | TrigExpr::Sin(a) | TrigExpr::Cos(a) => {
                1 + a.depth()
            }
            TrigExpr::Sum {
                lower, upper, body, ..
            } => 1 + lower.depth().max(upper.depth()).max(body.depth()),
        }
    }
}

impl fmt::Display for TrigExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&super::render(self))
    }
}

macro_rules! binop {
    ($trait:ident, $method:ident, $variant:ident) => {
        impl std::ops::$trait for TrigExpr {
            type Output = TrigExpr;
            fn $method(self, rhs: TrigExpr) -> TrigExpr {
                TrigExpr::$variant(Box::new(self), Box::new(rhs))
            }
        }
    };
}

binop!(Add, add, Add);
binop!(Sub, sub, Sub);
binop!(Mul, mul, Mul);
binop!(Div, div, Div);

impl std::ops::Neg for TrigExpr {
    type Output = TrigExpr;
    fn neg(self) -> TrigExpr {
        TrigExpr::Neg(Box::new(self))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn free_variables_respect_binding() {
        // sum(k=1..n, k*j) + k
        let e = TrigExpr::sum(
            "k",
            TrigExpr::int(1),
            TrigExpr::var("n"),
            TrigExpr::var("k") * TrigExpr::var("j"),
        ) + TrigExpr::var("k");
        let free: Vec<_> = e.free_vars().into_iter().collect();
        assert_eq!(free, ["j", "k", "n"]);
        assert_eq!(e.sum_indices().into_iter().collect::<Vec<_>>(), ["k"]);
    }

    #[test]
    fn trig_detection() {
        assert!(!(TrigExpr::Pi * TrigExpr::int(2)).contains_trig());
        assert!((TrigExpr::int(1) + TrigExpr::cos(TrigExpr::Pi)).contains_trig());
    }
}
