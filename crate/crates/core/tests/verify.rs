use num::BigRational;

use dybe::catalog::{
    basic_rational_r, basic_trig_r, classical_r_trig_x, classical_r_zero_coupling, quantum_r_eps_x,
    quantum_r_x, Tensor2,
};
use dybe::fusion::{
    abrr_fusion, classical_limit, exchange_matrix, fusion_exchange_construction, DynOp,
};
use dybe::reps::WeightModule;
use dybe::rootdata::{Elem, Flavor, Root, RootDatum};
use dybe::scalars::{sc, Matrix, Mode, Scalar};
use dybe::verify::{
    cdybe_residual, cocycle_residual, dynamical_hecke_rep, gauge_classical, gauge_quantum,
    hecke_check, multiplicative_form_is_closed, qdybe_residual, two_form_is_closed,
    unitarity_check, ClassicalGauge, QuantumGauge,
};
use dybe::Error;

fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

fn gl(n: usize) -> RootDatum {
    RootDatum::gl(n).unwrap()
}

#[test]
fn trivial_inputs_have_zero_residual() {
    let v = WeightModule::vector(&gl(3), Mode::Classical);
    let id = DynOp::new(vec![v.clone(), v], Matrix::identity(9)).unwrap();
    let rep = qdybe_residual(&id).unwrap();
    assert!(rep.is_zero);
    assert_eq!(rep.entries_checked, 729);
    let zero = basic_rational_r(&gl(2))
        .unwrap()
        .with_tensor("zero", Tensor2::zero())
        .unwrap();
    assert!(cdybe_residual(&zero).is_zero);
}

#[test]
fn non_weight_zero_input_is_rejected() {
    let v = WeightModule::vector(&gl(2), Mode::Classical);
    let mut m = Matrix::identity(4);
    m.set(0, 1, Scalar::one());
    let op = DynOp::new(vec![v.clone(), v], m).unwrap();
    assert!(matches!(qdybe_residual(&op), Err(Error::Precondition(_))));
}

#[test]
fn report_serializes_with_schema() {
    let r = quantum_r_x(2, &[0, 1]).unwrap();
    let j = qdybe_residual(&r).unwrap().to_json();
    assert_eq!(j["schema"], "dybe.residual/1");
    assert_eq!(j["equation"], "qdybe");
    assert_eq!(j["is_zero"], true);
}

#[test]
fn perturbed_quantum_solutions_fail() {
    let r = quantum_r_x(2, &[0, 1]).unwrap();
    for d in 0..4 {
        let mut m = r.matrix().clone();
        m.set(d, d, m.get(d, d) + &sc("l1"));
        let bad = DynOp::new(r.factors().to_vec(), m).unwrap();
        let rep = qdybe_residual(&bad).unwrap();
        assert!(!rep.is_zero, "diagonal {d}");
        assert!(rep.witness.is_some() && rep.nonzero_entries > 0);
    }
    let e = quantum_r_eps_x(3, &[0, 1, 2]).unwrap();
    let mut m = e.matrix().clone();
    m.set(1, 3, m.get(1, 3) + &sc("t1"));
    let bad = DynOp::new(e.factors().to_vec(), m).unwrap();
    assert!(!qdybe_residual(&bad).unwrap().is_zero);
    assert!(!hecke_check(&bad, &Scalar::q()).unwrap().is_zero);
}

#[test]
fn perturbed_classical_solutions_fail() {
    let d = gl(3);
    let r = basic_rational_r(&d).unwrap();
    let mut t = r.tensor().clone();
    t.add_term(Elem { a: 0, b: 1 }, Elem { a: 1, b: 0 }, Scalar::one());
    let bad = r.with_tensor("perturbed", t).unwrap();
    let rep = cdybe_residual(&bad);
    assert!(!rep.is_zero);
    assert!(rep.witness.is_some());
    assert!(!unitarity_check(&bad, &Scalar::zero()).is_zero);
    let e = sc("e");
    let trig = basic_trig_r(&d, &e).unwrap();
    let mut t = trig.tensor().clone();
    t.add_wedge(Elem { a: 0, b: 0 }, Elem { a: 1, b: 1 }, sc("l3"));
    assert!(!cdybe_residual(&trig.with_tensor("perturbed", t).unwrap()).is_zero);
}

#[test]
fn classical_two_form_gauge() {
    let e = sc("e");
    let d = gl(3);
    let closed = vec![(0, 1, sc("l1")), (1, 2, sc("7/3"))];
    assert!(two_form_is_closed(&closed, 3, &Scalar::zero()).unwrap());
    for r in [basic_rational_r(&d).unwrap(), basic_trig_r(&d, &e).unwrap()] {
        let g = gauge_classical(&r, &ClassicalGauge::TwoForm(closed.clone())).unwrap();
        assert_ne!(g.tensor(), r.tensor());
        assert!(cdybe_residual(&g).is_zero, "{}", r.label());
        assert!(unitarity_check(&g, r.coupling()).is_zero);
    }
    let open = vec![(0, 1, sc("l3"))];
    assert!(!two_form_is_closed(&open, 3, &Scalar::zero()).unwrap());
    let r = basic_rational_r(&d).unwrap();
    assert!(matches!(
        gauge_classical(&r, &ClassicalGauge::TwoForm(open)),
        Err(Error::InvalidGauge(_))
    ));
}

#[test]
fn classical_shift_gauge() {
    let d = gl(3);
    let r = classical_r_zero_coupling(&d, &[Root { a: 0, b: 1 }]).unwrap();
    let zero = gauge_classical(&r, &ClassicalGauge::Shift(vec![rat(0, 1); 3])).unwrap();
    assert_eq!(zero.tensor(), r.tensor());
    for r in [basic_rational_r(&d).unwrap(), r] {
        let g = gauge_classical(
            &r,
            &ClassicalGauge::Shift(vec![rat(1, 2), rat(0, 1), rat(-3, 1)]),
        )
        .unwrap();
        assert_ne!(g.tensor(), r.tensor());
        assert!(cdybe_residual(&g).is_zero);
        assert!(unitarity_check(&g, &Scalar::zero()).is_zero);
    }
    let e = sc("e");
    let t = basic_trig_r(&d, &e).unwrap();
    assert!(gauge_classical(
        &t,
        &ClassicalGauge::Shift(vec![rat(1, 1), rat(0, 1), rat(0, 1)])
    )
    .is_err());
    let g = gauge_classical(
        &t,
        &ClassicalGauge::ExpShift(vec![rat(2, 1), rat(1, 1), rat(1, 3)]),
    )
    .unwrap();
    assert_ne!(g.tensor(), t.tensor());
    assert!(cdybe_residual(&g).is_zero);
    assert!(unitarity_check(&g, &e).is_zero);
}

#[test]
fn classical_weyl_gauge() {
    let e = sc("e");
    for d in [gl(3), RootDatum::sl(3).unwrap()] {
        let sigmas = [vec![1, 0, 2], vec![2, 0, 1]];
        let families = [
            basic_rational_r(&d).unwrap(),
            basic_trig_r(&d, &e).unwrap(),
            classical_r_trig_x(&d, &[0], &e).unwrap(),
            classical_r_zero_coupling(&d, &[Root { a: 1, b: 2 }]).unwrap(),
        ];
        for r in &families {
            for s in &sigmas {
                let g = gauge_classical(r, &ClassicalGauge::Weyl(s.clone())).unwrap();
                assert!(cdybe_residual(&g).is_zero, "{} {s:?}", r.label());
                assert!(unitarity_check(&g, r.coupling()).is_zero);
            }
        }
    }
    let r = basic_rational_r(&gl(2)).unwrap();
    assert!(gauge_classical(&r, &ClassicalGauge::Weyl(vec![0, 0])).is_err());
}

fn constant_form(n: usize) -> Vec<Vec<Scalar>> {
    (0..n)
        .map(|a| {
            (0..n)
                .map(|b| {
                    if a < b {
                        Scalar::int((a + 2 * b + 1) as i64)
                    } else if a > b {
                        Scalar::int((b + 2 * a + 1) as i64).pow(-1)
                    } else {
                        Scalar::one()
                    }
                })
                .collect()
        })
        .collect()
}

#[test]
fn quantum_two_form_gauge() {
    let n = 3;
    let phi = constant_form(n);
    assert!(multiplicative_form_is_closed(&phi).unwrap());
    let cases = [
        (quantum_r_x(n, &[0, 1, 2]).unwrap(), Scalar::one()),
        (quantum_r_eps_x(n, &[1, 2]).unwrap(), Scalar::q()),
    ];
    for (r, q) in &cases {
        let g = gauge_quantum(r, &QuantumGauge::TwoForm(phi.clone())).unwrap();
        assert_ne!(g.matrix(), r.matrix());
        assert!(qdybe_residual(&g).unwrap().is_zero);
        assert!(hecke_check(&g, q).unwrap().is_zero);
    }
    // φ_ab = q^{λ_a − λ_b} is closed but not constant.
    let dynamic: Vec<Vec<Scalar>> = (0..n)
        .map(|a| {
            (0..n)
                .map(|b| sc(&format!("t{}/t{}", a + 1, b + 1)))
                .collect()
        })
        .collect();
    assert!(multiplicative_form_is_closed(&dynamic).unwrap());
    let g = gauge_quantum(&cases[1].0, &QuantumGauge::TwoForm(dynamic)).unwrap();
    assert!(qdybe_residual(&g).unwrap().is_zero);

    let mut open = constant_form(n);
    open[0][1] = sc("t3");
    open[1][0] = sc("1/t3");
    assert!(!multiplicative_form_is_closed(&open).unwrap());
    assert!(matches!(
        gauge_quantum(&cases[1].0, &QuantumGauge::TwoForm(open)),
        Err(Error::InvalidGauge(_))
    ));
    let mut open = constant_form(n);
    open[0][1] = sc("l3");
    open[1][0] = sc("1/l3");
    assert!(gauge_quantum(&cases[0].0, &QuantumGauge::TwoForm(open)).is_err());
    let mut unpaired = constant_form(n);
    unpaired[0][1] = Scalar::int(2);
    assert!(gauge_quantum(&cases[0].0, &QuantumGauge::TwoForm(unpaired)).is_err());
}

#[test]
fn quantum_shift_gauge() {
    let r = quantum_r_eps_x(3, &[0, 1, 2]).unwrap();
    let same = gauge_quantum(&r, &QuantumGauge::Shift(vec![rat(0, 1); 3])).unwrap();
    assert_eq!(same.matrix(), r.matrix());
    let nu = vec![rat(1, 1), rat(-2, 1), rat(1, 2)];
    for (r, q) in [
        (r, Scalar::q()),
        (quantum_r_x(3, &[0, 1]).unwrap(), Scalar::one()),
    ] {
        let g = gauge_quantum(&r, &QuantumGauge::Shift(nu.clone())).unwrap();
        assert_ne!(g.matrix(), r.matrix());
        assert!(qdybe_residual(&g).unwrap().is_zero);
        assert!(hecke_check(&g, &q).unwrap().is_zero);
    }
}

#[test]
fn quantum_permutation_gauge() {
    let r = quantum_r_x(3, &[1, 2]).unwrap();
    let g = gauge_quantum(&r, &QuantumGauge::Permute(vec![2, 1, 0])).unwrap();
    assert_eq!(g.matrix(), quantum_r_x(3, &[0, 1]).unwrap().matrix());
    for sigma in [vec![1, 0, 2], vec![1, 2, 0]] {
        for x in [vec![0], vec![0, 1], vec![0, 1, 2]] {
            let e = quantum_r_eps_x(3, &x).unwrap();
            let g = gauge_quantum(&e, &QuantumGauge::Permute(sigma.clone())).unwrap();
            assert!(qdybe_residual(&g).unwrap().is_zero, "{sigma:?} {x:?}");
            assert!(hecke_check(&g, &Scalar::q()).unwrap().is_zero);
        }
    }
    assert!(gauge_quantum(&r, &QuantumGauge::Permute(vec![0, 1])).is_err());
}

#[test]
fn cocycle_identity() {
    let sl2 = RootDatum::sl(2).unwrap();
    for mode in [Mode::Classical, Mode::Quantum] {
        let v = WeightModule::vector(&sl2, mode);
        assert!(
            cocycle_residual(fusion_exchange_construction, &v, &v, &v)
                .unwrap()
                .is_zero,
            "{mode:?}"
        );
        assert!(
            cocycle_residual(abrr_fusion, &v, &v, &v).unwrap().is_zero,
            "{mode:?}"
        );
    }
    let v = WeightModule::vector(&gl(2), Mode::Quantum);
    assert!(cocycle_residual(abrr_fusion, &v, &v, &v).unwrap().is_zero);
    let one = WeightModule::trivial(&gl(2), Mode::Quantum);
    assert!(cocycle_residual(abrr_fusion, &v, &v, &one).unwrap().is_zero);
}

#[test]
fn cocycle_detects_a_wrong_fusion() {
    let v = WeightModule::vector(&RootDatum::sl(2).unwrap(), Mode::Classical);
    let skewed = |a: &WeightModule, b: &WeightModule| {
        let j = abrr_fusion(a, b)?;
        j.map_entries(|x| x.shift_substitute(&[rat(1, 1)]))
    };
    assert!(cocycle_residual(skewed, &v, &v, &v).unwrap().is_zero);
    let doubled = |a: &WeightModule, b: &WeightModule| {
        let j = abrr_fusion(a, b)?;
        let one = Matrix::identity(j.dim());
        DynOp::new(
            j.factors().to_vec(),
            j.matrix().scale(&Scalar::int(2)).sub(&one),
        )
    };
    let rep = cocycle_residual(doubled, &v, &v, &v).unwrap();
    assert!(!rep.is_zero);
}

#[test]
fn dynamical_hecke_relations() {
    let cases = [
        (quantum_r_x(2, &[0, 1]).unwrap(), Scalar::one()),
        (quantum_r_x(3, &[0, 1, 2]).unwrap(), Scalar::one()),
        (quantum_r_eps_x(2, &[0, 1]).unwrap(), Scalar::q()),
        (quantum_r_eps_x(3, &[0, 2]).unwrap(), Scalar::q()),
    ];
    for (r, q) in &cases {
        let n = r.factors()[0].dim();
        for p in 2..=4 {
            if n == 3 && p == 4 {
                continue;
            }
            let rep = dynamical_hecke_rep(r, p, q).unwrap();
            assert_eq!(rep.generators.len(), p - 1);
            assert!(rep.report.is_zero, "n={n} p={p} {:?}", rep.report.witness);
        }
    }
}

#[test]
fn braid_relation_is_the_qdybe_for_three_factors() {
    let r = quantum_r_x(2, &[0, 1]).unwrap();
    let mut m = r.matrix().clone();
    m.set(1, 2, m.get(1, 2) + &sc("1"));
    let bad = DynOp::new(r.factors().to_vec(), m).unwrap();
    let braid = dynamical_hecke_rep(&bad, 3, &Scalar::one()).unwrap();
    assert!(!braid.report.is_zero);
    assert!(!qdybe_residual(&bad).unwrap().is_zero);
}

#[test]
fn quantum_exchange_limit_is_minus_basic_trig() {
    for d in [gl(2), RootDatum::sl(2).unwrap()] {
        let v = WeightModule::vector(&d, Mode::Quantum);
        let r = exchange_matrix(&v, &v, abrr_fusion).unwrap();
        let lim = classical_limit(&r, 1).unwrap();
        assert!(lim.constant_term().is_identity());
        let vc = WeightModule::vector(&d, Mode::Classical);
        let mut trig = basic_trig_r(&d, &sc("e"))
            .unwrap()
            .evaluate(&vc, &vc)
            .unwrap();
        if d.flavor() == Flavor::Sl {
            // The vector R carries the gl_2 normalization, whose Casimir is Ω + ½·1⊗1.
            trig = trig.add(&Matrix::identity(4).scale(&sc("e/4")));
        }
        assert_eq!(lim.first_order(), trig.neg(), "{:?}", d.flavor());
    }
}
