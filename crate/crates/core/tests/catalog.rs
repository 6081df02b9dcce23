use dybe::catalog::{
    basic_rational_r, basic_trig_r, classical_r_trig_x, classical_r_zero_coupling, gl_closed_forms,
    intervals, quantum_r_eps_x, quantum_r_x, triple_r, BDTriple, ClosedForm,
};
use dybe::fusion::{abrr_fusion, exchange_matrix, fusion_exchange_construction, DynOp};
use dybe::reps::WeightModule;
use dybe::rootdata::{Root, RootDatum};
use dybe::scalars::{sc, Mode, Scalar, Var};
use dybe::verify::{cdybe_residual, hecke_check, qdybe_residual, unitarity_check};

fn subsets(n: usize) -> Vec<Vec<usize>> {
    (0..1usize << n)
        .map(|m| (0..n).filter(|a| m >> a & 1 == 1).collect())
        .collect()
}

#[test]
fn interval_decomposition() {
    assert_eq!(intervals(&[3, 0, 1, 5]), vec![vec![0, 1], vec![3], vec![5]]);
    assert!(intervals(&[]).is_empty());
}

#[test]
fn quantum_family_examples() {
    assert!(quantum_r_x(3, &[]).unwrap().matrix().is_identity());
    let r = quantum_r_x(2, &[0, 1]).unwrap();
    assert_eq!(r.matrix().get(1, 1), &sc("1+1/(l1-l2)"));
    assert_eq!(r.matrix().get(2, 1), &sc("1/(l1-l2)"));
    let e = quantum_r_eps_x(2, &[]).unwrap();
    let m = e.matrix();
    assert_eq!(m.get(2, 1), &sc("1-s^2"));
    assert!(m.get(1, 2).is_zero());
    assert_eq!(m.get(2, 2), &sc("1"));
    assert_eq!(m.get(1, 1), &sc("s^2"));
}

#[test]
fn interval_exponent_sign_matters() {
    let r = quantum_r_eps_x(2, &[0, 1]).unwrap();
    assert_eq!(r.matrix().get(1, 2), &sc("(s^2-1)/(t2/t1-1)"));
    let inverted: Vec<(Var, Scalar)> = (1..=2)
        .map(|a| (Var::t(a), Scalar::var(Var::t(a)).pow(-1)))
        .collect();
    let other = DynOp::new(
        r.factors().to_vec(),
        r.matrix().try_map(|x| x.substitute(&inverted)).unwrap(),
    )
    .unwrap();
    assert!(hecke_check(&other, &Scalar::q()).unwrap().is_zero);
    let report = qdybe_residual(&other).unwrap();
    assert!(!report.is_zero);
    assert!(report.witness.is_some());
}

#[test]
fn quantum_families_satisfy_qdybe_and_hecke() {
    for n in 2..=4 {
        for x in subsets(n) {
            let r = quantum_r_x(n, &x).unwrap();
            assert!(qdybe_residual(&r).unwrap().is_zero, "R_X n={n} X={x:?}");
            assert!(
                hecke_check(&r, &Scalar::one()).unwrap().is_zero,
                "R_X hecke n={n} X={x:?}"
            );
            let flip = dybe::fusion::flip_op(r.matrix(), n, n);
            assert!(r.matrix().mul(&flip).is_identity());
            let e = quantum_r_eps_x(n, &x).unwrap();
            assert!(qdybe_residual(&e).unwrap().is_zero, "R_eps_X n={n} X={x:?}");
            assert!(
                hecke_check(&e, &Scalar::q()).unwrap().is_zero,
                "R_eps_X hecke n={n} X={x:?}"
            );
        }
    }
}

fn vector(n: usize, mode: Mode) -> WeightModule {
    WeightModule::vector(&RootDatum::gl(n).unwrap(), mode)
}

#[test]
fn closed_forms_match_constructions() {
    for n in [2, 3] {
        for mode in [Mode::Classical, Mode::Quantum] {
            let v = vector(n, mode);
            let (j, r) = gl_closed_forms(n, mode, ClosedForm::Consistent).unwrap();
            assert_eq!(
                fusion_exchange_construction(&v, &v).unwrap().matrix(),
                j.matrix(),
                "J n={n} {mode:?}"
            );
            assert_eq!(
                abrr_fusion(&v, &v).unwrap().matrix(),
                j.matrix(),
                "ABRR J n={n} {mode:?}"
            );
            let ex = exchange_matrix(&v, &v, fusion_exchange_construction).unwrap();
            assert_eq!(ex.matrix(), r.matrix(), "R n={n} {mode:?}");
        }
    }
}

#[test]
fn literal_closed_forms_differ_from_constructions() {
    for mode in [Mode::Classical, Mode::Quantum] {
        let v = vector(2, mode);
        let (j, r) = gl_closed_forms(2, mode, ClosedForm::AsPrinted).unwrap();
        assert_eq!(
            fusion_exchange_construction(&v, &v).unwrap().matrix(),
            j.matrix()
        );
        let ex = exchange_matrix(&v, &v, fusion_exchange_construction).unwrap();
        assert_ne!(ex.matrix(), r.matrix());
    }
    let (_, r) = gl_closed_forms(2, Mode::Classical, ClosedForm::AsPrinted).unwrap();
    assert_eq!(
        r.matrix().get(2, 2),
        &sc("-(l1-l2+1-1)*(l1-l2+1+1)/(l1-l2+1)^2")
    );
}

#[test]
fn closed_form_exchange_satisfies_qdybe() {
    for mode in [Mode::Classical, Mode::Quantum] {
        let (_, r) = gl_closed_forms(3, mode, ClosedForm::Consistent).unwrap();
        assert!(qdybe_residual(&r).unwrap().is_zero, "{mode:?}");
    }
}

#[test]
fn classical_families_satisfy_cdybe_and_unitarity() {
    let e = sc("e");
    for n in 2..=3 {
        for d in [RootDatum::gl(n).unwrap(), RootDatum::sl(n).unwrap()] {
            let r = basic_rational_r(&d).unwrap();
            assert!(cdybe_residual(&r).is_zero, "rational {n}");
            assert!(unitarity_check(&r, &Scalar::zero()).is_zero);
            let t = basic_trig_r(&d, &e).unwrap();
            assert!(cdybe_residual(&t).is_zero, "trig {n}");
            assert!(unitarity_check(&t, &e).is_zero);
            for x in subsets(n - 1) {
                let r = classical_r_trig_x(&d, &x, &e).unwrap();
                assert!(cdybe_residual(&r).is_zero, "r-eps-X n={n} X={x:?}");
                assert!(unitarity_check(&r, &e).is_zero);
            }
        }
        let d = RootDatum::gl(n).unwrap();
        let pos = d.positive_roots();
        for m in 0..1usize << pos.len() {
            let chosen: Vec<Root> = pos
                .iter()
                .enumerate()
                .filter(|(i, _)| m >> i & 1 == 1)
                .map(|(_, r)| *r)
                .collect();
            if let Ok(r) = classical_r_zero_coupling(&d, &chosen) {
                assert!(cdybe_residual(&r).is_zero, "r-l {chosen:?}");
                assert!(unitarity_check(&r, &Scalar::zero()).is_zero);
            }
        }
    }
}

#[test]
fn non_closed_root_set_is_rejected() {
    let d = RootDatum::gl(3).unwrap();
    let only_simple = vec![Root { a: 0, b: 1 }, Root { a: 1, b: 2 }];
    assert!(classical_r_zero_coupling(&d, &only_simple).is_err());
}

#[test]
fn trig_x_with_all_simple_roots_is_basic_trig() {
    let e = sc("e");
    for n in 2..=3 {
        let d = RootDatum::gl(n).unwrap();
        let all: Vec<usize> = (0..n - 1).collect();
        let full = classical_r_trig_x(&d, &all, &e).unwrap();
        assert_eq!(full.tensor(), basic_trig_r(&d, &e).unwrap().tensor());
    }
}

fn nilpotent_triple() -> BDTriple {
    BDTriple::new(vec![0], vec![1], vec![vec![1, 1, 1], vec![1, 0, -1]])
}

#[test]
fn nilpotent_triple_r_passes() {
    let d = RootDatum::gl(3).unwrap();
    let r = triple_r(&nilpotent_triple(), &d).unwrap();
    assert!(cdybe_residual(&r).is_zero);
    assert!(unitarity_check(&r, &Scalar::one()).is_zero);
}

#[test]
fn trivial_triple_reproduces_trig_family() {
    for n in 2..=3 {
        let d = RootDatum::gl(n).unwrap();
        let basis: Vec<Vec<i64>> = (0..n)
            .map(|a| (0..n).map(|b| i64::from(a == b)).collect())
            .collect();
        for x in subsets(n - 1) {
            let t = BDTriple::new(x.clone(), x.clone(), basis.clone());
            let a = triple_r(&t, &d).unwrap();
            let want = classical_r_trig_x(&d, &x, &Scalar::one()).unwrap();
            assert_eq!(a.tensor(), want.tensor(), "n={n} X={x:?}");
        }
    }
}

#[test]
fn invalid_triples_are_rejected() {
    let d = RootDatum::gl(3).unwrap();
    // l does not annihilate τα − α.
    let bad = BDTriple::new(
        vec![0],
        vec![1],
        vec![vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1]],
    );
    assert!(triple_r(&bad, &d).is_err());
    let mismatch = BDTriple::new(vec![0, 1], vec![1], vec![vec![1, 1, 1]]);
    assert!(triple_r(&mismatch, &d).is_err());
}

/// `q^{-1} R_VV` has Hecke parameter `p = q^{-2}`; reading the basic
/// trigonometric solution at `p` with `p^{λ_a} ↦ p^{λ_a − a}` matches its
/// off-diagonal part, and the diagonals differ by a closed multiplicative 2-form.
#[test]
fn basic_trig_solution_is_gauge_equivalent_to_exchange_matrix() {
    use dybe::verify::{gauge_quantum, multiplicative_form_is_closed, QuantumGauge};
    for n in [2, 3] {
        let v = vector(n, Mode::Quantum);
        let ex = exchange_matrix(&v, &v, abrr_fusion).unwrap();
        let scaled = ex.matrix().scale(&Scalar::q().pow(-1));
        let all: Vec<usize> = (0..n).collect();
        let basic = quantum_r_eps_x(n, &all).unwrap();
        let mut images = vec![(Var::s(), Scalar::s_pow(-2))];
        for a in 0..n {
            images.push((
                Var::t(a + 1),
                Scalar::var(Var::t(a + 1)).pow(-2) * Scalar::s_pow(4 * a as i64),
            ));
        }
        let read = basic.matrix().try_map(|x| x.substitute(&images)).unwrap();
        let ix = |a: usize, b: usize| a * n + b;
        let mut phi = vec![vec![Scalar::one(); n]; n];
        for a in 0..n {
            for b in 0..n {
                if a != b {
                    assert_eq!(
                        read.get(ix(a, b), ix(b, a)),
                        scaled.get(ix(a, b), ix(b, a)),
                        "n={n} β_{a}{b}"
                    );
                    phi[a][b] = scaled.get(ix(a, b), ix(a, b)) / read.get(ix(a, b), ix(a, b));
                }
            }
        }
        assert!(multiplicative_form_is_closed(&phi).unwrap());
        let read = DynOp::new(basic.factors().to_vec(), read).unwrap();
        let gauged = gauge_quantum(&read, &QuantumGauge::TwoForm(phi)).unwrap();
        assert_eq!(gauged.matrix(), &scaled);
        assert!(hecke_check(&gauged, &Scalar::q_pow(-2)).unwrap().is_zero);
    }
}
