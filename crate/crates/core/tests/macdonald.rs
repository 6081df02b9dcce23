use dybe::fusion::{abrr_fusion, fusion_exchange_construction};
use dybe::macdonald::{
    commutator_check, eigen_check, mac_t, macdonald_operator, macdonald_polynomial, mr_residual,
    mr_residual_of, partitions, psi_series, shift_scalar, symmetry_check, symmetry_residual,
    t_power, trace_function_series, transfer_diffop, transfer_macdonald_check,
    transfer_macdonald_sides, weyl_denominator, DiffOp, MrSide,
};
use dybe::reps::{sym_power, WeightModule};
use dybe::rootdata::RootDatum;
use dybe::scalars::{sc, Mode, Scalar, Var};
use num::BigRational;

fn r(k: i64) -> BigRational {
    BigRational::from_integer(k.into())
}

fn x(i: usize) -> Scalar {
    Scalar::var(Var::x(i))
}

fn det(m: &[Vec<Scalar>]) -> Scalar {
    if m.len() == 1 {
        return m[0][0].clone();
    }
    let mut acc = Scalar::zero();
    for (j, a) in m[0].iter().enumerate() {
        let minor: Vec<Vec<Scalar>> = m[1..]
            .iter()
            .map(|row| {
                row.iter()
                    .enumerate()
                    .filter(|(k, _)| *k != j)
                    .map(|(_, v)| v.clone())
                    .collect()
            })
            .collect();
        let term = a * &det(&minor);
        acc = if j % 2 == 0 { acc + term } else { acc - term };
    }
    acc
}

/// Bialternant `det(x_i^{μ_j+n−j}) / det(x_i^{n−j})`.
fn schur(mu: &[usize]) -> Scalar {
    let n = mu.len();
    let alt = |shift: &dyn Fn(usize) -> usize| -> Scalar {
        let m: Vec<Vec<Scalar>> = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| x(i + 1).pow((shift(j) + n - 1 - j) as i64))
                    .collect()
            })
            .collect();
        det(&m)
    };
    alt(&|j| mu[j]) / alt(&|_| 0)
}

#[test]
fn operator_examples() {
    let t = mac_t();
    let m = macdonald_operator(2, 1, &t).unwrap();
    assert_eq!(m.terms().len(), 2);
    assert_eq!(
        m.scalar_coefficient(&[r(1), r(0)]),
        sc("(mt*x1-x2/mt)/(x1-x2)")
    );
    assert_eq!(
        m.scalar_coefficient(&[r(0), r(1)]),
        sc("(mt*x2-x1/mt)/(x2-x1)")
    );
    let full = macdonald_operator(3, 3, &t).unwrap();
    assert_eq!(
        full,
        DiffOp::scalar_term(vec![r(1), r(1), r(1)], Scalar::one())
    );
    assert!(macdonald_operator(2, 0, &t).is_err());
    assert!(macdonald_operator(2, 3, &t).is_err());
}

#[test]
fn shifts_scale_macdonald_variables() {
    let f = sc("x1^2*x2+t1");
    assert_eq!(
        shift_scalar(&f, &[r(1), r(-1)]).unwrap(),
        sc("s^4*x1^2*x2+s^2*t1")
    );
}

#[test]
fn macdonald_operators_commute() {
    let t = mac_t();
    for n in 2..=3 {
        for a in 1..=n {
            for b in a + 1..=n {
                let rep = commutator_check(n, a, b, &t, 3).unwrap();
                assert!(rep.is_zero, "n={n} [M_{a}, M_{b}]: {:?}", rep.witness);
            }
        }
    }
}

#[test]
fn polynomials_satisfy_every_eigen_equation() {
    let t = mac_t();
    for n in 2..=3 {
        for size in 0..=3 {
            for mu in partitions(size, n) {
                let rep = eigen_check(&mu, &t).unwrap();
                assert!(rep.is_zero, "μ={mu:?}: {:?}", rep.witness);
            }
        }
    }
}

#[test]
fn polynomial_examples() {
    let t = mac_t();
    assert_eq!(macdonald_polynomial(&[0, 0], &t).unwrap(), Scalar::one());
    assert_eq!(macdonald_polynomial(&[1, 0], &t).unwrap(), sc("x1+x2"));
    // P_(2) = m_2 + (1+Q)(1−T)/(1−QT) m_11 with Q = q², T = t².
    let (qq, tt) = (Scalar::q_pow(2), t.pow(2));
    let c = (Scalar::one() + &qq) * (Scalar::one() - &tt) / (Scalar::one() - &qq * &tt);
    let want = x(1).pow(2) + x(2).pow(2) + c * x(1) * x(2);
    assert_eq!(macdonald_polynomial(&[2, 0], &t).unwrap(), want);
}

#[test]
fn t_equal_q_gives_schur_polynomials() {
    for n in 2..=3 {
        for size in 0..=3 {
            for mu in partitions(size, n) {
                assert_eq!(
                    macdonald_polynomial(&mu, &Scalar::q()).unwrap(),
                    schur(&mu),
                    "μ={mu:?}"
                );
            }
        }
    }
}

fn sl2(mode: Mode) -> (WeightModule, WeightModule) {
    let d = RootDatum::sl(2).unwrap();
    let c2 = WeightModule::vector(&d, mode);
    let s2 = sym_power(&c2, 2).unwrap();
    (c2, s2)
}

#[test]
fn transfer_with_trivial_module_is_identity() {
    for mode in [Mode::Classical, Mode::Quantum] {
        let (_, s2) = sl2(mode);
        let triv = WeightModule::trivial(s2.datum(), mode);
        let d = transfer_diffop(&s2, &triv, abrr_fusion).unwrap();
        assert_eq!(d, DiffOp::identity(1, 1), "{mode:?}");
    }
}

#[test]
fn transfer_operators_form_a_commuting_family() {
    for mode in [Mode::Classical, Mode::Quantum] {
        let (c2, s2) = sl2(mode);
        let dv = transfer_diffop(&s2, &c2, abrr_fusion).unwrap();
        assert_eq!(dv.terms().len(), 2);
        assert_eq!(
            dv,
            transfer_diffop(&s2, &c2, fusion_exchange_construction).unwrap()
        );
        let dvw = transfer_diffop(&s2, &c2.tensor(&c2).unwrap(), abrr_fusion).unwrap();
        let dds = transfer_diffop(&s2, &s2, abrr_fusion).unwrap();
        assert_eq!(dv.compose(&dv).unwrap(), dvw, "{mode:?} D_V D_W = D_(V⊗W)");
        assert_eq!(
            dv.compose(&dds).unwrap(),
            dds.compose(&dv).unwrap(),
            "{mode:?} [D_C2, D_S2]"
        );
        let dsc = transfer_diffop(&s2, &s2.tensor(&c2).unwrap(), abrr_fusion).unwrap();
        assert_eq!(
            dds.compose(&dv).unwrap(),
            dsc,
            "{mode:?} D_S2 D_C2 = D_(S2⊗C2)"
        );
        let dcs = transfer_diffop(&s2, &c2.tensor(&s2).unwrap(), abrr_fusion).unwrap();
        assert_eq!(
            dv.compose(&dds).unwrap(),
            dcs,
            "{mode:?} D_C2 D_S2 = D_(C2⊗S2)"
        );
    }
}

#[test]
fn transfer_is_conjugate_macdonald_for_small_m() {
    for m in 0..=1 {
        let rep = transfer_macdonald_check(2, 1, m).unwrap();
        assert!(rep.is_zero, "m={m}: {:?}", rep.witness);
    }
}

#[test]
fn transfer_at_m_zero_is_conjugation_by_delta() {
    let (lhs, _) = transfer_macdonald_sides(2, 1, 0).unwrap();
    assert_eq!(lhs.scalar_coefficient(&[r(1)]), Scalar::one());
    assert_eq!(lhs.scalar_coefficient(&[r(-1)]), Scalar::one());
    let d = RootDatum::sl(2).unwrap();
    assert_eq!(weyl_denominator(&d).unwrap(), sc("t1-1/t1"));
    // The literal prefactor q^{−2(λ,ρ)} breaks the identity.
    let printed = sc("(1-t1^-2)/t1");
    let m1 = macdonald_operator(2, 1, &t_power(0))
        .unwrap()
        .to_datum_coords(&d)
        .unwrap();
    assert_ne!(m1.conjugate(&printed).unwrap(), lhs);
}

fn s2_quantum() -> (WeightModule, WeightModule) {
    sl2(Mode::Quantum)
}

#[test]
fn trace_series_leading_term() {
    let (_, v) = s2_quantum();
    let psi = psi_series(&v, 3).unwrap();
    assert_eq!(psi.coeffs[0], Scalar::one());
    assert_eq!(psi.depth(), 3);
    assert!(psi_series(&v, 7).is_err());
}

#[test]
fn macdonald_ruijsenaars_equations_hold_through_order_three() {
    let (c2, v) = s2_quantum();
    let rep = mr_residual(&v, &c2, 3, MrSide::Primal).unwrap();
    assert!(rep.is_zero, "{:?}", rep.witness);
    let rep = mr_residual(&v, &v, 2, MrSide::Primal).unwrap();
    assert!(rep.is_zero, "{:?}", rep.witness);
    let rep = mr_residual(&v, &c2, 3, MrSide::Dual).unwrap();
    assert!(rep.is_zero, "{:?}", rep.witness);
}

#[test]
fn perturbed_trace_series_fails() {
    let (c2, v) = s2_quantum();
    let mut f = trace_function_series(&v, 3).unwrap();
    f.coeffs[2] = &f.coeffs[2] + &Scalar::one();
    for side in [MrSide::Primal, MrSide::Dual] {
        let rep = mr_residual_of(&f, &v, &c2, side).unwrap();
        assert!(!rep.is_zero, "{side:?}");
        assert!(rep.witness.is_some());
    }
}

#[test]
fn symmetry_identity_holds_through_bi_order_two() {
    let (_, v) = s2_quantum();
    let rep = symmetry_check(&v, 2).unwrap();
    assert!(rep.is_zero, "{:?}", rep.witness);
    let f = trace_function_series(&v, 2).unwrap();
    let psi = psi_series(&v.dual(), 2).unwrap();
    let mut fake = f.clone();
    fake.coeffs = psi.coeffs;
    assert!(!symmetry_residual(&f, &fake, 2).unwrap().is_zero);
}

#[test]
fn diffop_json_has_schema() {
    let m = macdonald_operator(2, 1, &mac_t()).unwrap();
    let j = m.to_json();
    assert_eq!(j["schema"], "dybe.diffop/1");
    assert_eq!(j["terms"].as_array().unwrap().len(), 2);
    assert_eq!(j["terms"][0]["shift"], serde_json::json!(["0", "1"]));
}
