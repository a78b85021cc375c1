use num_rational::BigRational;
use proptest::prelude::*;
use trigsum::exact::{
    arith, cos_pi_rational, cyclo_context, cyclotomic_polynomial, sin_pi_rational, ArithOp,
    CycloElem, ExactError,
};

fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

fn elem12() -> impl Strategy<Value = CycloElem> {
    proptest::collection::vec((-20i64..20, 1i64..9), 4).prop_map(|cs| {
        let ctx = cyclo_context(12).unwrap();
        let coeffs: Vec<BigRational> = cs.into_iter().map(|(n, d)| rat(n, d)).collect();
        CycloElem::from_coeffs(&ctx, &coeffs)
    })
}

proptest! {
    #[test]
    fn multiplication_is_associative(x in elem12(), y in elem12(), z in elem12()) {
        prop_assert_eq!(&(&x * &y) * &z, &x * &(&y * &z));
    }

    #[test]
    fn ring_laws(x in elem12(), y in elem12(), z in elem12()) {
        prop_assert_eq!(&x * &y, &y * &x);
        prop_assert_eq!(&x + &y, &y + &x);
        prop_assert_eq!(&x * &(&y + &z), &(&x * &y) + &(&x * &z));
        prop_assert!((&x - &x).is_zero());
    }

    #[test]
    fn nonzero_elements_are_invertible(x in elem12()) {
        prop_assume!(!x.is_zero());
        prop_assert!((&x * &x.invert().unwrap()).is_one());
    }
}

#[test]
fn pythagorean_identity() {
    for q in 1..=30u64 {
        for a in 1..=q as i64 {
            let s = sin_pi_rational(a, q).unwrap();
            let c = cos_pi_rational(a, q).unwrap();
            assert!((&(&s * &s) + &(&c * &c)).is_one(), "a={a} q={q}");
        }
    }
}

#[test]
fn primitive_root_satisfies_its_minimal_polynomial() {
    for m in 1..=60u64 {
        let ctx = cyclo_context(m).unwrap();
        let zeta = CycloElem::root_of_unity(&ctx, 1);
        let phi = cyclotomic_polynomial(m);
        let mut acc = CycloElem::zero(&ctx);
        for c in phi.iter().rev() {
            acc = &(&acc * &zeta)
                + &CycloElem::from_rational(&ctx, &BigRational::from_integer(c.clone()));
        }
        assert!(acc.is_zero(), "m={m}");
    }
}

#[test]
fn context_examples() {
    let c1 = cyclo_context(1).unwrap();
    assert_eq!(
        (c1.phi(), c1.minpoly().to_vec()),
        (1, vec![(-1).into(), 1.into()])
    );
    let c4 = cyclo_context(4).unwrap();
    assert_eq!(c4.minpoly().to_vec(), vec![1.into(), 0.into(), 1.into()]);
    let c13 = cyclo_context(13).unwrap();
    assert_eq!(c13.phi(), 12);
    assert!(c13.minpoly().iter().all(|c| *c == 1.into()));
    assert!(matches!(
        cyclo_context(8191),
        Err(ExactError::CapExceeded { .. })
    ));
}

#[test]
fn root_and_arithmetic_examples() {
    let c4 = cyclo_context(4).unwrap();
    let i = CycloElem::root_of_unity(&c4, 1);
    assert_eq!(
        arith(ArithOp::Mul, &i, &i).unwrap(),
        CycloElem::from_integer(&c4, -1)
    );

    let c3 = cyclo_context(3).unwrap();
    let w = CycloElem::root_of_unity(&c3, 1);
    let w2 = CycloElem::root_of_unity(&c3, 2);
    let s = arith(ArithOp::Add, &w, &w2).unwrap();
    assert_eq!(s.to_rational().unwrap(), rat(-1, 1));
    assert_eq!(w.to_rational(), Err(ExactError::NotRational));

    let c5 = cyclo_context(5).unwrap();
    let p = arith(
        ArithOp::Mul,
        &CycloElem::root_of_unity(&c5, 1),
        &CycloElem::root_of_unity(&c5, 4),
    )
    .unwrap();
    assert!(p.is_one());
    assert!(matches!(
        arith(ArithOp::Add, &w, &i),
        Err(ExactError::MixedOrders { .. })
    ));

    let c13 = cyclo_context(13).unwrap();
    assert!(CycloElem::root_of_unity(&c13, 13).is_one());
    assert_eq!(
        CycloElem::from_rational(&c13, &rat(3, 7))
            .to_rational()
            .unwrap(),
        rat(3, 7)
    );
}

#[test]
fn inversion_examples() {
    let c7 = cyclo_context(7).unwrap();
    assert_eq!(
        CycloElem::from_integer(&c7, 2)
            .invert()
            .unwrap()
            .to_rational()
            .unwrap(),
        rat(1, 2)
    );
    assert_eq!(
        CycloElem::root_of_unity(&c7, 1).invert().unwrap(),
        CycloElem::root_of_unity(&c7, 6)
    );
    assert_eq!(
        CycloElem::zero(&c7).invert(),
        Err(ExactError::DivisionByZero)
    );
}

#[test]
fn special_sines() {
    assert!(sin_pi_rational(1, 2).unwrap().is_one());
    assert_eq!(
        sin_pi_rational(1, 6).unwrap().to_rational().unwrap(),
        rat(1, 2)
    );
    let s = sin_pi_rational(1, 4).unwrap();
    assert_eq!((&s * &s).to_rational().unwrap(), rat(1, 2));
}
