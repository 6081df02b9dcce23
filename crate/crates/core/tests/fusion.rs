use dybe::fusion::{abrr_fusion, exchange_matrix, fusion_exchange_construction, DynOp};
use dybe::reps::{ext_power, sym_power, WeightModule};
use dybe::rootdata::RootDatum;
use dybe::scalars::{sc, Matrix, Mode, Scalar};

fn sl2() -> RootDatum {
    RootDatum::sl(2).unwrap()
}

fn gl(n: usize) -> RootDatum {
    RootDatum::gl(n).unwrap()
}

fn unit_with(entries: &[(usize, usize, &str)], diag: &str) -> Matrix {
    let mut m = Matrix::scalar_identity(4, &sc(diag));
    m.set(1, 1, Scalar::one());
    m.set(2, 2, Scalar::one());
    for &(i, j, x) in entries {
        m.set(i, j, sc(x));
    }
    m
}

#[test]
fn sl2_classical_example() {
    let v = WeightModule::vector(&sl2(), Mode::Classical);
    let j = unit_with(&[(2, 1, "-1/(l1+1)")], "1");
    assert_eq!(fusion_exchange_construction(&v, &v).unwrap().matrix(), &j);
    assert_eq!(abrr_fusion(&v, &v).unwrap().matrix(), &j);
    let r = unit_with(
        &[
            (1, 2, "-1/(l1+1)"),
            (2, 1, "1/(l1+1)"),
            (2, 2, "1-1/(l1+1)^2"),
        ],
        "1",
    );
    assert_eq!(
        exchange_matrix(&v, &v, fusion_exchange_construction)
            .unwrap()
            .matrix(),
        &r
    );
    assert_eq!(exchange_matrix(&v, &v, abrr_fusion).unwrap().matrix(), &r);
}

#[test]
fn sl2_quantum_example() {
    let v = WeightModule::vector(&sl2(), Mode::Quantum);
    let j = unit_with(&[(2, 1, "(s^-2-s^2)/(t1^2*s^4-1)")], "1");
    assert_eq!(fusion_exchange_construction(&v, &v).unwrap().matrix(), &j);
    assert_eq!(abrr_fusion(&v, &v).unwrap().matrix(), &j);
    let r = unit_with(
        &[
            (1, 2, "(s^-2-s^2)/(t1^2*s^4-1)"),
            (2, 1, "(s^-2-s^2)/(t1^-2*s^-4-1)"),
            (2, 2, "(t1^2*s^4-s^4)*(t1^2*s^4-s^-4)/(t1^2*s^4-1)^2"),
        ],
        "s^2",
    );
    assert_eq!(
        exchange_matrix(&v, &v, fusion_exchange_construction)
            .unwrap()
            .matrix(),
        &r
    );
    assert_eq!(exchange_matrix(&v, &v, abrr_fusion).unwrap().matrix(), &r);
}

fn agree(v: &WeightModule, w: &WeightModule) {
    let a = fusion_exchange_construction(v, w).unwrap();
    let b = abrr_fusion(v, w).unwrap();
    assert_eq!(a.matrix(), b.matrix(), "{} x {}", v.label(), w.label());
    assert!(a.is_weight_zero());
}

#[test]
fn methods_agree_on_vector_reps() {
    for mode in [Mode::Classical, Mode::Quantum] {
        for d in [gl(2), gl(3)] {
            let v = WeightModule::vector(&d, mode);
            agree(&v, &v);
        }
    }
}

#[test]
fn methods_agree_on_powers() {
    for mode in [Mode::Classical, Mode::Quantum] {
        let v2 = WeightModule::vector(&gl(2), mode);
        let s2 = sym_power(&v2, 2).unwrap();
        agree(&s2, &v2);
        agree(&v2, &s2);
        let v3 = WeightModule::vector(&gl(3), mode);
        let l2 = ext_power(&v3, 2).unwrap();
        agree(&l2, &v3);
        agree(&v3, &l2);
    }
}

#[test]
fn fusion_is_unipotent() {
    let v = WeightModule::vector(&gl(3), Mode::Quantum);
    let j: DynOp = fusion_exchange_construction(&v, &v).unwrap();
    let m = j.matrix();
    for i in 0..9 {
        assert!(m.get(i, i).is_one());
    }
    assert!(m
        .sub(&Matrix::identity(9))
        .mul(&m.sub(&Matrix::identity(9)))
        .mul(&m.sub(&Matrix::identity(9)))
        .is_zero());
}

use dybe::fusion::{evaluate_universal, shapovalov_vs_fusion, universal_sl2_fusion};

#[test]
fn universal_terms_low_degree() {
    let t = universal_sl2_fusion(2, Mode::Classical);
    assert!(t[0].coefficient.is_one());
    // h after e is p1 + 2.
    assert_eq!(t[1].coefficient, sc("-1/(l1-(p1+2)+2)"));
    assert_eq!(t[2].coefficient, sc("1/(2*(l1-(p1+4)+3)*(l1-(p1+4)+4))"));
}

#[test]
fn universal_matches_abrr_on_modules() {
    for mode in [Mode::Classical, Mode::Quantum] {
        let v = WeightModule::vector(&sl2(), mode);
        let s2 = sym_power(&v, 2).unwrap();
        let s3 = sym_power(&v, 3).unwrap();
        let terms = universal_sl2_fusion(3, mode);
        for (a, b) in [(&v, &v), (&s2, &s2), (&s3, &v), (&s2, &s3)] {
            let want = abrr_fusion(a, b).unwrap();
            assert_eq!(
                &evaluate_universal(&terms, a, b).unwrap(),
                want.matrix(),
                "{mode:?}"
            );
        }
    }
}

#[test]
fn shapovalov_matches_fusion_at_zero() {
    for mode in [Mode::Classical, Mode::Quantum] {
        for row in shapovalov_vs_fusion(&sl2(), 3, mode).unwrap() {
            assert!(
                row.residual().is_zero(),
                "{mode:?} n={} {:?} vs {:?}",
                row.n,
                row.inverse_form,
                row.fusion
            );
        }
    }
}

use dybe::fusion::classical_limit;

#[test]
fn classical_exchange_limit_is_minus_r() {
    let v = WeightModule::vector(&sl2(), Mode::Classical);
    let r = exchange_matrix(&v, &v, fusion_exchange_construction).unwrap();
    let lim = classical_limit(&r, 2).unwrap();
    assert!(lim.constant_term().is_identity());
    let mut want = Matrix::zeros(4, 4);
    want.set(1, 2, sc("-1/l1"));
    want.set(2, 1, sc("1/l1"));
    assert_eq!(lim.first_order(), want);
}

#[test]
fn abrr_limits_give_j() {
    let v = WeightModule::vector(&gl(3), Mode::Classical);
    let lim = classical_limit(&abrr_fusion(&v, &v).unwrap(), 1).unwrap();
    let j = lim.first_order();
    // −E_ba ⊗ E_ab / (λ_a − λ_b) for a < b.
    assert_eq!(j.get(3, 1), &sc("-1/(l1-l2)"));
    assert_eq!(j.get(7, 5), &sc("-1/(l2-l3)"));
    assert_eq!(j.get(6, 2), &sc("-1/(l1-l3)"));
    assert_eq!(j.nonzero_count(), 3);
    let vq = WeightModule::vector(&gl(2), Mode::Quantum);
    let jq = classical_limit(&abrr_fusion(&vq, &vq).unwrap(), 1)
        .unwrap()
        .first_order();
    // −ε f⊗e/(1 − e^{−ε(α,λ)}) with w_c = e^{−ελ_c/2}.
    assert_eq!(jq.get(2, 1), &sc("-e/(1-w1^2/w2^2)"));
}
