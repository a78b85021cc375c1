use num_rational::BigRational;
use proptest::prelude::*;
use trigsum::expr::{parse, render, substitute, Bindings, TrigExpr};

fn ident() -> impl Strategy<Value = String> {
    "[a-z_][a-z0-9_]{0,3}".prop_filter("keyword", |s| {
        !matches!(s.as_str(), "pi" | "sin" | "cos" | "sum")
    })
}

fn leaf() -> impl Strategy<Value = TrigExpr> {
    prop_oneof![
        (0i64..1000, 1i64..50).prop_map(|(n, d)| TrigExpr::rational(n, d)),
        Just(TrigExpr::Pi),
        ident().prop_map(TrigExpr::Var),
    ]
}

fn tree() -> impl Strategy<Value = TrigExpr> {
    leaf().prop_recursive(8, 128, 4, |inner| {
        let b = |e: TrigExpr| Box::new(e);
        prop_oneof![
            (inner.clone(), inner.clone()).prop_map(move |(x, y)| TrigExpr::Add(b(x), b(y))),
            (inner.clone(), inner.clone()).prop_map(move |(x, y)| TrigExpr::Sub(b(x), b(y))),
            (inner.clone(), inner.clone()).prop_map(move |(x, y)| TrigExpr::Mul(b(x), b(y))),
            (inner.clone(), inner.clone()).prop_map(move |(x, y)| TrigExpr::Div(b(x), b(y))),
            inner.clone().prop_map(move |x| TrigExpr::Neg(b(x))),
            (inner.clone(), -6i64..7).prop_map(move |(x, k)| TrigExpr::Pow(b(x), k)),
            inner.clone().prop_map(TrigExpr::sin),
            inner.clone().prop_map(TrigExpr::cos),
            (ident(), inner.clone(), inner.clone(), inner)
                .prop_map(|(i, lo, hi, body)| TrigExpr::sum(&i, lo, hi, body)),
        ]
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn parse_inverts_render(e in tree()) {
        prop_assume!(e.depth() <= 8);
        let text = render(&e);
        prop_assert_eq!(parse(&text).unwrap(), e, "via {}", text);
    }
}

proptest! {
    #[test]
    fn parsing_is_deterministic(e in tree()) {
        let text = render(&e);
        prop_assert_eq!(parse(&text), parse(&text));
    }

    #[test]
    fn substitution_removes_bound_names(e in tree(), names in proptest::collection::btree_set(ident(), 0..4)) {
        let bindings: Bindings = names.iter().map(|n| (n.clone(), BigRational::from_integer(3.into()))).collect();
        if let Ok(out) = substitute(&e, &bindings) {
            let expected: std::collections::BTreeSet<String> =
                e.free_vars().into_iter().filter(|v| !bindings.contains_key(v)).collect();
            prop_assert_eq!(out.free_vars(), expected);
        }
    }
}

#[test]
fn half_range_sum_parses_to_expected_tree() {
    let text =
        "sum(k=1..n/2-1, sin((j-1)*k*pi/n)*sin((j+1)*k*pi/n) / (sin(k*pi/n)^2 * sin(j*k*pi/n)^2))";
    let v = TrigExpr::var;
    let angle = |c: TrigExpr| TrigExpr::Div(Box::new(c * v("k") * TrigExpr::Pi), Box::new(v("n")));
    let num = TrigExpr::sin(angle(v("j") - TrigExpr::int(1)))
        * TrigExpr::sin(angle(v("j") + TrigExpr::int(1)));
    let k_pi_n = (v("k") * TrigExpr::Pi) / v("n");
    let j_k_pi_n = (v("j") * v("k") * TrigExpr::Pi) / v("n");
    let den = TrigExpr::pow(TrigExpr::sin(k_pi_n), 2) * TrigExpr::pow(TrigExpr::sin(j_k_pi_n), 2);
    let upper = v("n") / TrigExpr::int(2) - TrigExpr::int(1);
    let expected = TrigExpr::sum("k", TrigExpr::int(1), upper, num / den);
    let parsed = parse(text).unwrap();
    assert_eq!(parsed, expected);
    assert_eq!(parse(&render(&parsed)).unwrap(), parsed);
}

#[test]
fn unterminated_call_reports_end_of_input() {
    let err = parse("sin(pi").unwrap_err();
    assert_eq!(err.offset, 6);
    assert!(err.message.contains("end of input"), "{}", err.message);
}
