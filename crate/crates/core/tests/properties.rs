use dybe::macdonald::{shift_scalar, DiffOp};
use dybe::scalars::{gamma_expand, parse_scalar, Scalar, Var};
use num::BigRational;
use proptest::prelude::*;
use proptest::test_runner::RngSeed;

fn monomial(vars: &[Var], exps: &[u8]) -> Scalar {
    vars.iter().zip(exps).fold(Scalar::one(), |acc, (v, &e)| {
        acc * Scalar::var(*v).pow(i64::from(e))
    })
}

/// Polynomials with small integer coefficients in `vars`.
fn poly_in(vars: Vec<Var>) -> impl Strategy<Value = Scalar> {
    let k = vars.len();
    prop::collection::vec((-3i64..=3, prop::collection::vec(0u8..=2, k)), 1..=3).prop_map(
        move |terms| {
            terms.iter().fold(Scalar::zero(), |acc, (c, e)| {
                acc + Scalar::int(*c) * monomial(&vars, e)
            })
        },
    )
}

fn fraction_in(vars: Vec<Var>) -> impl Strategy<Value = Scalar> {
    (poly_in(vars.clone()), poly_in(vars)).prop_filter_map("zero denominator", |(n, d)| {
        if d.is_zero() {
            None
        } else {
            Some(n / d)
        }
    })
}

fn classical() -> impl Strategy<Value = Scalar> {
    fraction_in(vec![Var::l(1), Var::l(2)])
}

fn quantum() -> impl Strategy<Value = Scalar> {
    fraction_in(vec![Var::s(), Var::t(1), Var::t(2)])
}

fn any_scalar() -> impl Strategy<Value = Scalar> {
    prop_oneof![
        classical(),
        quantum(),
        fraction_in(vec![Var::x(1), Var::x(2), Var::l(1)])
    ]
}

fn shift() -> impl Strategy<Value = Vec<BigRational>> {
    prop::collection::vec(
        (-4i64..=4).prop_map(|k| BigRational::new(k.into(), 2.into())),
        2,
    )
}

/// γ-expansions exist only for scalars regular at γ = 0.
fn quantum_regular() -> impl Strategy<Value = Scalar> {
    quantum().prop_filter("not regular at γ = 0", |x| gamma_expand(x, 0).is_ok())
}

fn add(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

fn diffop() -> impl Strategy<Value = DiffOp> {
    let term = (
        prop::collection::vec(-1i64..=1, 2),
        fraction_in(vec![Var::l(1), Var::t(2), Var::x(1)]),
    );
    prop::collection::vec(term, 1..=2).prop_map(|terms| {
        let mut d = DiffOp::zero(2, 1);
        for (nu, c) in terms {
            let nu = nu
                .into_iter()
                .map(|k| BigRational::from_integer(k.into()))
                .collect();
            d = d.add(&DiffOp::scalar_term(nu, c)).expect("same shape");
        }
        d
    })
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 48, rng_seed: RngSeed::Fixed(0x5eed), ..ProptestConfig::default() })]

    #[test]
    fn field_axioms(a in any_scalar(), b in any_scalar(), c in any_scalar()) {
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert!((&a - &a).is_zero());
        if !a.is_zero() {
            prop_assert!((&a * &a.inv().unwrap()).is_one());
        }
    }

    #[test]
    fn canonical_text_round_trips(a in any_scalar()) {
        let text = a.to_text();
        let back = parse_scalar(&text).unwrap();
        prop_assert_eq!(back.to_text(), text);
        prop_assert_eq!(back, a);
    }

    #[test]
    fn shifts_are_ring_homomorphisms(a in any_scalar(), b in any_scalar(), nu in shift()) {
        let s = |x: &Scalar| shift_scalar(x, &nu).unwrap();
        prop_assert_eq!(s(&(&a * &b)), &s(&a) * &s(&b));
        prop_assert_eq!(s(&(&a + &b)), &s(&a) + &s(&b));
    }

    #[test]
    fn shifts_compose(a in any_scalar(), mu in shift(), nu in shift()) {
        let twice = shift_scalar(&shift_scalar(&a, &mu).unwrap(), &nu).unwrap();
        prop_assert_eq!(twice, shift_scalar(&a, &add(&mu, &nu)).unwrap());
    }

    #[test]
    fn shift_substitution_is_the_inverse_shift(a in prop_oneof![classical(), quantum()], mu in shift()) {
        let neg: Vec<BigRational> = mu.iter().map(|x| -x).collect();
        prop_assert_eq!(a.shift_substitute(&mu).unwrap(), shift_scalar(&a, &neg).unwrap());
    }

    #[test]
    fn gamma_expansion_is_a_homomorphism(a in quantum_regular(), b in quantum_regular()) {
        let order = 2;
        let e = |x: &Scalar| gamma_expand(x, order).unwrap();
        prop_assert_eq!(e(&(&a * &b)), e(&a).mul(&e(&b)));
        prop_assert_eq!(e(&(&a + &b)), e(&a).add(&e(&b)));
    }

    #[test]
    fn diffop_composition_is_associative(a in diffop(), b in diffop(), c in diffop()) {
        let left = a.compose(&b).unwrap().compose(&c).unwrap();
        let right = a.compose(&b.compose(&c).unwrap()).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn conjugation_is_a_homomorphism(a in diffop(), b in diffop(), f in fraction_in(vec![Var::l(1), Var::t(2)])) {
        prop_assume!(!f.is_zero());
        let lhs = a.compose(&b).unwrap().conjugate(&f).unwrap();
        let rhs = a.conjugate(&f).unwrap().compose(&b.conjugate(&f).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
        let back = a.conjugate(&f).unwrap().conjugate(&f.inv().unwrap()).unwrap();
        prop_assert_eq!(back, a);
    }

    #[test]
    fn diffops_act_as_a_representation(a in diffop(), b in diffop(), f in poly_in(vec![Var::l(1), Var::t(2), Var::x(1), Var::x(2)])) {
        let lhs = a.compose(&b).unwrap().apply(&f).unwrap();
        let rhs = a.apply(&b.apply(&f).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }
}
