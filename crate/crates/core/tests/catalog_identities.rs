use std::collections::BTreeMap;

use num_integer::Integer;
use num_rational::BigRational;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use trigsum::catalog::{
    admissible_params, conjecture_deviation, conjecture_value, find_identity, instantiate,
    list_identities, sweep, validate_params, verify_instance, JChoice, Mode, Status,
};
use trigsum::exact::{eval_exact, eval_exact_fraction};
use trigsum::expr::{parse, Bindings, TrigExpr};

fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

fn bind(pairs: &[(&str, BigRational)]) -> Bindings {
    pairs
        .iter()
        .map(|(k, v)| (k.to_string(), v.clone()))
        .collect()
}

fn ints(pairs: &[(&str, i64)]) -> Bindings {
    pairs
        .iter()
        .map(|(k, v)| (k.to_string(), rat(*v, 1)))
        .collect()
}

fn exact_is_zero(text: &str) -> bool {
    eval_exact_fraction(&parse(text).unwrap(), &Bindings::new())
        .unwrap()
        .is_zero()
}

#[test]
fn catalog_shape() {
    let all = list_identities();
    assert_eq!(all.len(), 18);
    assert_eq!(find_identity("T21").unwrap().rhs_src, "(n^2-4)/12");
    assert_eq!(find_identity("L13C").unwrap().rhs_src, "-4");
    for r in all {
        assert!(!r.anchor.is_empty());
    }
}

#[test]
fn parameter_free_identities_hold_exactly() {
    let expected = [
        ("L15", rat(0, 1)),
        ("L17A", rat(1, 1)),
        ("L17B", rat(-1, 1)),
        ("L13A", rat(-1, 1)),
        ("L13B", rat(1, 1)),
        ("L13C", rat(-4, 1)),
        ("L13D", rat(3, 1)),
        ("LEM-COSPROD", rat(1, 64)),
    ];
    for (id, value) in expected {
        let r = verify_instance(id, &Bindings::new(), Mode::Exact, 40).unwrap();
        assert_eq!(r.status, Status::Verified, "{id}");
        assert_eq!(r.lhs_exact.as_ref(), Some(&value), "{id}");
        // The stored right-hand side is only trusted after this comparison.
        let rhs = eval_exact(&find_identity(id).unwrap().rhs, &Bindings::new()).unwrap();
        assert_eq!(rhs.to_rational().unwrap(), value, "{id}");
    }
}

#[test]
fn cosine_product_equals_two_to_minus_six() {
    let v: f64 = (1..=6)
        .map(|n| (n as f64 * std::f64::consts::PI / 13.0).cos())
        .product();
    assert!((v - 1.0 / 64.0).abs() < 1e-15);
}

/// Admissible pairs counted independently of the catalog predicates.
fn expected_pairs(id: &str, n: i64) -> Vec<i64> {
    (1..2 * n)
        .filter(|&j| match id {
            "T21" | "T22" => n % 2 == 0 && j % 4 == 2 && (j / 2).gcd(&(n / 2)) == 1,
            "T23" => n % 2 == 1 && j % 2 == 0 && j.gcd(&n) == 1,
            "T24" => n % 2 == 1 && j.gcd(&n) == 1,
            _ => unreachable!(),
        })
        .collect()
}

fn check_sweep(id: &str, lo: i64, hi: i64, rhs: impl Fn(i64) -> BigRational) {
    let results = sweep(id, lo..=hi, JChoice::All, Mode::Exact, 40).unwrap();
    let mut count = 0;
    for n in lo..=hi {
        count += expected_pairs(id, n).len();
    }
    assert_eq!(results.len(), count, "{id}");
    for r in &results {
        let n = r.params["n"].to_integer().try_into().unwrap();
        assert_eq!(r.status, Status::Verified, "{id} {:?}", r.params);
        assert_eq!(r.lhs_exact, Some(rhs(n)), "{id} {:?}", r.params);
    }
}

#[test]
fn sweep_t21() {
    check_sweep("T21", 4, 60, |n| rat(n * n - 4, 12));
}

#[test]
fn sweep_t22() {
    check_sweep("T22", 2, 60, |n| rat(n * n, 4));
}

#[test]
fn sweep_t23() {
    check_sweep("T23", 3, 61, |n| rat(n * n - 1, 3));
}

#[test]
fn sweep_t24() {
    check_sweep("T24", 3, 41, |_| rat(0, 1));
}

#[test]
fn t21_value_is_independent_of_j() {
    for n in (4..=60).step_by(2) {
        let values: Vec<_> = sweep("T21", n..=n, JChoice::All, Mode::Exact, 40)
            .unwrap()
            .into_iter()
            .map(|r| r.lhs_exact.unwrap())
            .collect();
        assert!(!values.is_empty());
        assert!(values.windows(2).all(|w| w[0] == w[1]), "n={n}");
    }
}

#[test]
fn t24_values_across_j_are_recorded() {
    let mut by_n: BTreeMap<i64, Vec<(i64, String)>> = BTreeMap::new();
    for r in sweep("T24", 3..=15, JChoice::All, Mode::Exact, 40).unwrap() {
        let n: i64 = r.params["n"].to_integer().try_into().unwrap();
        let j: i64 = r.params["j"].to_integer().try_into().unwrap();
        by_n.entry(n).or_default().push((j, r.lhs.unwrap()));
    }
    for (n, values) in by_n {
        println!("T24 n={n}: {values:?}");
    }
}

const T21_BODY: &str = "sin((J-1)*k*pi/N)*sin((J+1)*k*pi/N) / (sin(k*pi/N)^2 * sin(J*k*pi/N)^2)";

#[test]
fn full_residue_system_doubles_the_half_sum() {
    for n in (4..=30).step_by(2) {
        for j in expected_pairs("T21", n) {
            let body = T21_BODY
                .replace('N', &n.to_string())
                .replace('J', &j.to_string());
            let half = format!("sum(k=1..{}, {body})", n / 2 - 1);
            let full = format!(
                "sum(k=1..{}, {body}) + sum(k={}..{}, {body})",
                n / 2 - 1,
                n / 2 + 1,
                n - 1
            );
            assert!(
                exact_is_zero(&format!("({full}) - 2*({half})")),
                "n={n} j={j}"
            );
        }
    }
}

#[test]
fn t32_on_the_integer_grid() {
    for a in 1..=3 {
        for b in [4, 8] {
            for c in [2, 6] {
                for k in 1..=10 {
                    let p = ints(&[("a", a), ("b", b), ("c", c), ("k", k)]);
                    assert!(validate_params("T32", &p).unwrap());
                    let r = verify_instance("T32", &p, Mode::Exact, 40).unwrap();
                    assert_eq!(r.status, Status::Verified, "{p:?}");
                }
            }
        }
    }
}

#[test]
fn t32_for_random_real_parameters() {
    let mut rng = StdRng::seed_from_u64(0x7332);
    let mut checked = 0;
    while checked < 50 {
        let mut draw = || rat(rng.random_range(1..=100_000), rng.random_range(1..=1000));
        let p = bind(&[
            ("a", draw()),
            ("b", draw()),
            ("c", draw()),
            ("k", rat(rng.random_range(1..=10), 1)),
        ]);
        if !validate_params("T32", &p).unwrap() {
            continue;
        }
        let r = verify_instance("T32", &p, Mode::Numeric, 40).unwrap();
        assert_eq!(r.status, Status::Verified, "{p:?}");
        let diff: f64 = r.abs_diff.unwrap().parse().unwrap();
        assert!(diff < 1e-30, "{p:?}");
        checked += 1;
    }
}

#[test]
fn t32_first_instance() {
    let p = ints(&[("a", 1), ("b", 8), ("c", 2), ("k", 1)]);
    let (lhs, rhs) = instantiate("T32", &p).unwrap();
    let direct = parse("sin(pi/10)^2 - sin(3*pi/10)^2").unwrap();
    let closed = parse("-sin(4*pi/10)^2/(2*cos(2*pi/10))").unwrap();
    let e = |x: &TrigExpr| eval_exact(x, &Bindings::new()).unwrap();
    assert_eq!(e(&lhs).lift(e(&direct).context()).unwrap(), e(&direct));
    assert_eq!(e(&rhs), e(&closed));
    let v = conjecture_value(1, "C31A", 30).unwrap().to_f64();
    assert!((v + 5f64.sqrt() / 4.0).abs() < 1e-15);
}

#[test]
fn t24_with_j_one_has_two_zero_terms() {
    let (lhs, rhs) = instantiate("T24", &ints(&[("n", 5), ("j", 1)])).unwrap();
    match &lhs {
        TrigExpr::Sum { lower, upper, .. } => {
            let lo = eval_exact(lower, &Bindings::new())
                .unwrap()
                .to_rational()
                .unwrap();
            let hi = eval_exact(upper, &Bindings::new())
                .unwrap()
                .to_rational()
                .unwrap();
            assert_eq!(hi - lo + rat(1, 1), rat(2, 1));
        }
        other => panic!("expected a sum, got {other:?}"),
    }
    assert_eq!(rhs, TrigExpr::int(0));
    let r = verify_instance("T24", &ints(&[("n", 5), ("j", 1)]), Mode::Exact, 40).unwrap();
    assert_eq!(r.status, Status::Verified);
}

#[test]
fn conjectured_limits() {
    let d1 = conjecture_deviation(1, "C31A", 40).unwrap().to_f64();
    let oracle = (5f64.sqrt() / 4.0 - 0.5).abs();
    assert!((d1 - oracle).abs() < 1e-15, "{d1}");
    assert!((d1 - 0.059017).abs() < 1e-6);
    assert!(conjecture_deviation(1000, "C31A", 40).unwrap().to_f64() < 1e-6);
    assert!(conjecture_deviation(1000, "C31B", 40).unwrap().to_f64() < 1e-3);
    let a: Vec<f64> = [10, 100, 1000]
        .iter()
        .map(|&k| conjecture_deviation(k, "C31A", 40).unwrap().to_f64())
        .collect();
    assert!(a[0] > a[1] && a[1] > a[2]);
    assert!(conjecture_deviation(0, "C31A", 40).is_err());
    assert!(conjecture_deviation(3, "T21", 40).is_err());
}

#[test]
fn conjecture_sums_match_their_closed_forms() {
    for k in 1..=12 {
        for id in ["C31A", "C31B"] {
            let r = verify_instance(id, &ints(&[("k", k)]), Mode::Exact, 40).unwrap();
            assert_eq!(r.status, Status::Verified, "{id} k={k}");
        }
    }
}

fn random_pi_rational(rng: &mut StdRng) -> BigRational {
    rat(rng.random_range(-40..=40), rng.random_range(1..=12))
}

#[test]
fn lemma_t1_for_random_rationals() {
    let mut rng = StdRng::seed_from_u64(0x71);
    for _ in 0..20 {
        let p = bind(&[
            ("u", random_pi_rational(&mut rng)),
            ("t", random_pi_rational(&mut rng)),
        ]);
        let r = verify_instance("LEM-T1", &p, Mode::Exact, 40).unwrap();
        assert_eq!(r.status, Status::Verified, "{p:?}");
    }
}

#[test]
fn lemma_t3_against_direct_summation() {
    let mut rng = StdRng::seed_from_u64(0x73);
    for k in 1..=20 {
        for _ in 0..3 {
            let y = loop {
                let y = random_pi_rational(&mut rng);
                if !(&y / rat(2, 1)).is_integer() {
                    break y;
                }
            };
            let x = random_pi_rational(&mut rng);
            let p = bind(&[("x", x.clone()), ("y", y.clone()), ("k", rat(k, 1))]);
            let r = verify_instance("LEM-T3", &p, Mode::Exact, 40).unwrap();
            assert_eq!(r.status, Status::Verified, "{p:?}");
            // Unrolled sum written out term by term.
            let terms: Vec<String> = (0..k)
                .map(|m| format!("sin(({x})*pi + {m}*({y})*pi)"))
                .collect();
            let (_, rhs) = instantiate("LEM-T3", &p).unwrap();
            let unrolled = parse(&terms.join(" + ")).unwrap();
            let diff = TrigExpr::Sub(Box::new(unrolled), Box::new(rhs));
            assert!(eval_exact_fraction(&diff, &Bindings::new())
                .unwrap()
                .is_zero());
        }
    }
    assert!(!validate_params(
        "LEM-T3",
        &bind(&[("x", rat(1, 3)), ("y", rat(-4, 1)), ("k", rat(2, 1))])
    )
    .unwrap());
}

#[test]
fn four_cosine_expansion_instances() {
    let instances = [
        (
            [1, 5, 4, 6],
            "-cos(x) + cos(2*x) - cos(3*x) + 2*cos(4*x) - cos(5*x) + 2*cos(6*x)",
        ),
        (
            [2, 3, 4, 6],
            "cos(x) - 2*cos(2*x) + 2*cos(3*x) - cos(4*x) + cos(5*x) - cos(6*x)",
        ),
        (
            [2, 3, 1, 5],
            "2*cos(x) - cos(2*x) + cos(3*x) - cos(4*x) + 2*cos(5*x) - cos(6*x)",
        ),
    ];
    for (m, reduced) in instances {
        let names = ["a", "b", "c", "d"];
        let p: Bindings = names
            .iter()
            .zip(m)
            .map(|(n, v)| (n.to_string(), rat(v, 13)))
            .collect();
        let r = verify_instance("LEM-COS4", &p, Mode::Exact, 40).unwrap();
        assert_eq!(r.status, Status::Verified, "{m:?}");
        let product = format!(
            "cos({}*x)*cos({}*x)*cos({}*x)*cos({}*x)",
            m[0], m[1], m[2], m[3]
        );
        let text = format!("{product} - ({reduced})/8").replace('x', "(pi/13)");
        assert!(exact_is_zero(&text), "{m:?}");
    }
}

#[test]
fn sweeps_reject_non_families() {
    assert!(admissible_params("T32", 1..=3, JChoice::All).is_err());
    assert!(admissible_params("T21", 7..=7, JChoice::Fixed(2))
        .unwrap()
        .is_empty());
}
