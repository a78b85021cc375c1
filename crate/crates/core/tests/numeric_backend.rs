use num_rational::BigRational;
use trigsum::exact::{eval_exact, sin_pi_rational};
use trigsum::expr::{parse, Bindings};
use trigsum::numeric::{
    all_residues, bits_for_digits, cyclo_to_complex, matches_real, rectangle_contour_breakdown,
    residue_2pii, residue_sum, BigComplex, BigFloat, KernelId, KernelSpec,
};

fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

fn tol(exp10: u32, digits: u32) -> BigFloat {
    BigFloat::ten_pow_neg(exp10, bits_for_digits(digits))
}

fn spec(k: KernelId, n: u64) -> KernelSpec {
    KernelSpec::new(k, n).unwrap()
}

#[test]
fn exact_sines_agree_with_direct_evaluation() {
    let digits = 50;
    let prec = bits_for_digits(digits);
    let pi = BigFloat::pi(prec);
    let eps = tol(45, digits);
    for q in 1..=24i64 {
        for a in 1..=24i64 {
            let exact = cyclo_to_complex(&sin_pi_rational(a, q as u64).unwrap(), digits);
            let direct = pi.mul_int(a).div_int(q).sin();
            assert!((&exact.re - &direct).abs() < eps, "a={a} q={q}");
            assert!(exact.im.abs() < eps, "a={a} q={q}");
        }
    }
}

#[test]
fn residue_closed_forms_for_even_n() {
    let eps = tol(30, 40);
    let quarter = rat(1, 4);
    for n in [4i64, 6, 8, 10] {
        let n2 = n * n;
        let hh2 = spec(KernelId::HH2, n as u64);
        let r0 = residue_2pii(&hh2, &rat(0, 1), &quarter, 16, 40).unwrap();
        let rh = residue_2pii(&hh2, &rat(n / 2, 1), &quarter, 16, 40).unwrap();
        assert!(
            matches_real(&r0.value, &rat(-n2, 4), &eps),
            "hh2 R0 n={n}: {}",
            r0.value
        );
        assert!(
            matches_real(&rh.value, &rat(n2 + 8, 12), &eps),
            "hh2 Rn/2 n={n}: {}",
            rh.value
        );

        let hh7 = spec(KernelId::HH7, n as u64);
        let r0 = residue_2pii(&hh7, &rat(0, 1), &quarter, 16, 40).unwrap();
        let rh = residue_2pii(&hh7, &rat(n / 2, 1), &quarter, 16, 40).unwrap();
        assert!(
            matches_real(&r0.value, &rat(3 * n2, 4), &eps),
            "hh7 R0 n={n}: {}",
            r0.value
        );
        assert!(
            matches_real(&rh.value, &rat(-n2, 4), &eps),
            "hh7 Rn/2 n={n}: {}",
            rh.value
        );
    }
}

#[test]
fn residue_closed_forms_for_odd_n() {
    let eps = tol(30, 40);
    let quarter = rat(1, 4);
    for n in [3i64, 5, 7] {
        let n2 = n * n;
        let hh12 = spec(KernelId::HH12, n as u64);
        let r0 = residue_2pii(&hh12, &rat(0, 1), &quarter, 16, 40).unwrap();
        let rh = residue_2pii(&hh12, &rat(n, 2), &quarter, 16, 40).unwrap();
        assert!(
            matches_real(&r0.value, &rat(3 * n2, 4), &eps),
            "R0 n={n}: {}",
            r0.value
        );
        assert!(
            matches_real(&rh.value, &rat(-(n2 + 8), 12), &eps),
            "Rn/2 n={n}: {}",
            rh.value
        );
        let combined = &r0.value + &rh.value;
        assert!(matches_real(
            &combined,
            &(rat(3 * n2, 4) - rat(n2 + 8, 12)),
            &eps
        ));
        assert_eq!((r0.order, rh.order), (2, 3));
    }
}

#[test]
fn simple_pole_matches_summand() {
    let hh2 = spec(KernelId::HH2, 6);
    let r1 = residue_2pii(&hh2, &rat(1, 1), &rat(1, 4), 16, 40).unwrap();
    assert_eq!(r1.order, 1);
    let summand = parse("sin(pi/6)*sin(3*pi/6) / (sin(pi/6)^2 * sin(2*pi/6)^2)").unwrap();
    let exact = eval_exact(&summand, &Bindings::new())
        .unwrap()
        .to_rational()
        .unwrap();
    assert_eq!(exact, rat(8, 3));
    assert!(
        matches_real(&r1.value, &exact, &tol(30, 40)),
        "{}",
        r1.value
    );
}

#[test]
fn residue_is_independent_of_radius() {
    for (k, n, pole) in [
        (KernelId::HH2, 4, rat(0, 1)),
        (KernelId::HH7, 6, rat(3, 1)),
        (KernelId::HH12, 5, rat(5, 2)),
    ] {
        let s = spec(k, n);
        let a = residue_2pii(&s, &pole, &rat(1, 4), 16, 40).unwrap();
        let b = residue_2pii(&s, &pole, &rat(1, 8), 16, 40).unwrap();
        assert!((&a.value - &b.value).abs() < tol(25, 40), "{k} n={n}");
    }
}

#[test]
fn residues_in_a_period_sum_to_zero() {
    for (k, n) in [(KernelId::HH2, 4), (KernelId::HH7, 4), (KernelId::HH12, 3)] {
        let s = spec(k, n);
        let total = residue_sum(&s, 40).unwrap();
        assert!(total.abs() < tol(28, 40), "{k} n={n}: {total}");
    }
}

#[test]
fn half_integer_residues_are_negated_summands() {
    // For e^{2πiz}+1 the residue at a half-integer carries the factor -1/(2πi).
    let s = spec(KernelId::HH7, 4);
    let rs = all_residues(&s, 40).unwrap();
    let at = |p: BigRational| rs.iter().find(|r| r.pole == p).unwrap().value.clone();
    let summand = parse("sin(pi/8)*sin(3*pi/8) / (sin(pi/8)^2 * sin(2*pi/8)^2)").unwrap();
    let v = cyclo_to_complex(&eval_exact(&summand, &Bindings::new()).unwrap(), 40);
    let sum = &at(rat(1, 2)) + &v;
    assert!(sum.abs() < tol(30, 40));
}

#[test]
fn residue_theorem_on_rectangles() {
    let cases = [
        (KernelId::HH2, 4),
        (KernelId::HH2, 6),
        (KernelId::HH7, 4),
        (KernelId::HH7, 6),
        (KernelId::HH12, 3),
        (KernelId::HH12, 5),
    ];
    let eps = tol(15, 40);
    for (k, n) in cases {
        let s = spec(k, n);
        let contour = rectangle_contour_breakdown(&s, &rat(8, 1), 40).unwrap();
        let residues = residue_sum(&s, 40).unwrap();
        assert!((&contour.value - &residues).abs() < eps, "{k} n={n}");
        assert!(contour.value.abs() < eps, "{k} n={n}");
        // n-periodicity: the vertical sides cancel.
        let vertical: BigComplex = &contour.left + &contour.right;
        assert!(vertical.abs() < eps, "{k} n={n}");
    }
}

#[test]
fn contour_integral_vanishes_at_height_ten() {
    for k in [KernelId::HH2, KernelId::HH7] {
        let c = rectangle_contour_breakdown(&spec(k, 4), &rat(10, 1), 40).unwrap();
        assert!(c.value.abs() < tol(20, 40), "{k}");
    }
}

#[test]
fn horizontal_sides_decay_with_height() {
    let s = spec(KernelId::HH2, 4);
    let low = rectangle_contour_breakdown(&s, &rat(2, 1), 40).unwrap();
    let high = rectangle_contour_breakdown(&s, &rat(4, 1), 40).unwrap();
    assert!(high.horizontal_magnitude < low.horizontal_magnitude);
    // The signed horizontal integrals vanish exactly for every height.
    let horizontal = &high.top + &high.bottom;
    assert!(horizontal.abs() < tol(25, 40));
}
