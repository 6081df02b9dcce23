use dybe::reps::{
    composite_expectation, constant_r, ext_power, kostant_count, reduced_r, shapovalov_gram,
    solve_intertwiner, sym_power, vector_r, verma_slice, WeightModule,
};
use dybe::rootdata::RootDatum;
use dybe::scalars::{sc, Matrix, Mode, Scalar, Var};

fn sl2() -> RootDatum {
    RootDatum::sl(2).unwrap()
}

fn gl(n: usize) -> RootDatum {
    RootDatum::gl(n).unwrap()
}

#[test]
fn vector_rep_sl2_actions() {
    let v = WeightModule::vector(&sl2(), Mode::Classical);
    assert_eq!(v.e(0).get(0, 1), &Scalar::one());
    assert_eq!(v.f(0).get(1, 0), &Scalar::one());
    assert_eq!(v.h_matrix(0).get(0, 0), &Scalar::one());
    assert_eq!(v.h_matrix(0).get(1, 1), &Scalar::int(-1));
    let vq = WeightModule::vector(&sl2(), Mode::Quantum);
    vq.check_relations().unwrap();
    assert_eq!(vq.h_matrix(0).get(1, 1), &Scalar::int(-1));
}

#[test]
fn triple_tensor_relations_hold() {
    for mode in [Mode::Classical, Mode::Quantum] {
        let v = WeightModule::vector(&gl(3), mode);
        let vvv = v.tensor_power(3).unwrap();
        assert_eq!(vvv.dim(), 27);
        vvv.check_relations().unwrap();
        v.dual().check_relations().unwrap();
        v.tensor(&v.dual()).unwrap().check_relations().unwrap();
    }
}

#[test]
fn tensor_weights_add() {
    let v = WeightModule::vector(&sl2(), Mode::Classical);
    let vv = v.tensor(&v).unwrap();
    assert_eq!(vv.dim(), 4);
    assert_eq!(vv.weight(1), &vec![1, 1]);
    assert_eq!(vv.zero_weight_indices(), vec![1, 2]);
    let q = WeightModule::vector(&sl2(), Mode::Quantum);
    assert!(v.tensor(&q).is_err());
}

#[test]
fn power_dimensions() {
    let v2 = WeightModule::vector(&sl2(), Mode::Classical);
    assert_eq!(sym_power(&v2, 2).unwrap().dim(), 3);
    let v3 = WeightModule::vector(&gl(3), Mode::Classical);
    assert_eq!(ext_power(&v3, 3).unwrap().dim(), 1);
    for mode in [Mode::Classical, Mode::Quantum] {
        let v = WeightModule::vector(&gl(3), mode);
        let s2 = sym_power(&v, 2).unwrap();
        let l2 = ext_power(&v, 2).unwrap();
        assert_eq!((s2.dim(), l2.dim()), (6, 3));
        s2.check_relations().unwrap();
        l2.check_relations().unwrap();
    }
}

#[test]
fn quantum_braid_hecke_split() {
    let r = vector_r(2);
    let pr = Matrix::flip(2, 2).mul(&r);
    let q = Scalar::q();
    let a = pr.sub(&Matrix::scalar_identity(4, &q));
    let b = pr.add(&Matrix::scalar_identity(4, &q.pow(-1)));
    assert!(a.mul(&b).is_zero());
    // Eigenvalue q on the 3-dimensional symmetric part, −q⁻¹ on the line.
    let v = WeightModule::vector(&gl(2), Mode::Quantum);
    assert_eq!(sym_power(&v, 2).unwrap().dim(), 3);
    assert_eq!(ext_power(&v, 2).unwrap().dim(), 1);
    // Rescaled by q⁻¹ the same matrix obeys (X − 1)(X + q⁻²) = 0.
    let x = pr.scale(&q.pow(-1));
    let c = x
        .sub(&Matrix::identity(4))
        .mul(&x.add(&Matrix::scalar_identity(4, &q.pow(-2))));
    assert!(c.is_zero());
}

fn coproduct_generators(v: &WeightModule) -> Vec<Matrix> {
    let vv = v.tensor(v).unwrap();
    let mut out = Vec::new();
    for i in 0..v.datum().n() - 1 {
        out.push(vv.e(i).clone());
        out.push(vv.f(i).clone());
        out.push(vv.k_matrix(i, 1));
    }
    out
}

#[test]
fn braided_r_commutes_with_coproduct() {
    for n in [2, 3] {
        let v = WeightModule::vector(&gl(n), Mode::Quantum);
        let pr = Matrix::flip(n, n).mul(&constant_r(&v, &v).unwrap());
        for x in coproduct_generators(&v) {
            assert!(pr.mul(&x).sub(&x.mul(&pr)).is_zero(), "gl{n}");
        }
    }
}

#[test]
fn reduced_r_is_unipotent_off_weight() {
    let v = WeightModule::vector(&gl(3), Mode::Quantum);
    let r0 = reduced_r(&v, &v).unwrap();
    for i in 0..9 {
        assert!(r0.get(i, i).is_one());
    }
    let s2 = sym_power(&v, 2).unwrap();
    let r = constant_r(&s2, &v).unwrap();
    let pr = Matrix::flip(6, 3).mul(&r);
    let sv = s2.tensor(&v).unwrap();
    let vs = v.tensor(&s2).unwrap();
    for i in 0..2 {
        assert!(pr.mul(sv.e(i)).sub(&vs.e(i).mul(&pr)).is_zero());
        assert!(pr.mul(sv.f(i)).sub(&vs.f(i).mul(&pr)).is_zero());
    }
}

#[test]
fn quantum_specializes_to_classical() {
    let at_one = |m: &Matrix| m.map(|x| x.substitute(&[(Var::s(), Scalar::one())]).unwrap());
    let q = sym_power(&WeightModule::vector(&gl(2), Mode::Quantum), 2).unwrap();
    let c = sym_power(&WeightModule::vector(&gl(2), Mode::Classical), 2).unwrap();
    assert_eq!(q.weights(), c.weights());
    // Bases may differ by a diagonal rescaling; compare e∘f, which is basis-scale free.
    let ef = |m: &WeightModule| m.e(0).mul(m.f(0));
    assert_eq!(at_one(&ef(&q)), ef(&c));
}

#[test]
fn sl2_verma_depth_two() {
    let slice = verma_slice(&sl2(), 2, Mode::Classical).unwrap();
    assert_eq!(slice.dim(), 3);
    let e = slice.e_matrix(0, &[2]).unwrap();
    assert_eq!(e.get(0, 0), &sc("2*l1-2"));
    assert_eq!(shapovalov_gram(&slice, &[1]).unwrap().get(0, 0), &sc("l1"));
    assert_eq!(
        shapovalov_gram(&slice, &[2]).unwrap().get(0, 0),
        &sc("2*l1*(l1-1)")
    );
    let f = slice.f_matrix(0, &[1]).unwrap();
    assert!(f.get(0, 0).is_one());
}

/// PBW monomials in the lowering root vectors with total root height ≤ depth.
fn pbw_count_by_height(rank: usize, depth: i64) -> usize {
    let heights: Vec<i64> = (0..rank)
        .flat_map(|a| (a..rank).map(move |b| (b - a + 1) as i64))
        .collect();
    fn go(h: &[i64], left: i64) -> usize {
        match h.split_first() {
            None => 1,
            Some((&x, rest)) => (0..=left / x).map(|k| go(rest, left - k * x)).sum(),
        }
    }
    go(&heights, depth)
}

#[test]
fn gl3_slice_dimension_matches_pbw_count() {
    let slice = verma_slice(&gl(3), 2, Mode::Classical).unwrap();
    assert_eq!(slice.dim(), pbw_count_by_height(2, 2));
    assert_eq!(slice.dim(), 7);
    assert_eq!(kostant_count(&[1, 1]), 2);
    assert_eq!(kostant_count(&[2, 2]), 3);
    for ws in slice.spaces() {
        let g = &ws.gram;
        assert_eq!(g, &g.transpose());
    }
}

#[test]
fn quantum_slice_gram_symmetric_and_invertible() {
    let slice = verma_slice(&gl(3), 3, Mode::Quantum).unwrap();
    for ws in slice.spaces() {
        assert_eq!(ws.gram, ws.gram.transpose());
        assert!(ws.gram.mul(&ws.gram_inv).is_identity());
    }
}

#[test]
fn sl2_intertwiners() {
    let v = WeightModule::vector(&sl2(), Mode::Classical);
    let low = solve_intertwiner(&v, 1).unwrap();
    assert!(low.is_singular());
    assert_eq!(low.expectation_value(), vec![Scalar::zero(), Scalar::one()]);
    assert_eq!(low.component(&[0]), vec![sc("-1/(l1+1)"), Scalar::zero()]);
    let high = solve_intertwiner(&v, 0).unwrap();
    assert_eq!(high.terms().len(), 1);
}

#[test]
fn sl2_quantum_intertwiner() {
    let v = WeightModule::vector(&sl2(), Mode::Quantum);
    let low = solve_intertwiner(&v, 1).unwrap();
    assert!(low.is_singular());
    // Component times q^{−λ} is the fusion entry (q⁻¹ − q)/(q^{2(λ+1)} − 1).
    let c = &low.component(&[0])[0] / &sc("t1");
    assert_eq!(c, sc("(s^-2-s^2)/(t1^2*s^4-1)"));
}

#[test]
fn composite_expectation_sl2() {
    let v = WeightModule::vector(&sl2(), Mode::Classical);
    let phi = solve_intertwiner(&v, 1).unwrap();
    let out = composite_expectation(&phi, &v, 0).unwrap();
    assert_eq!(
        out,
        vec![
            Scalar::zero(),
            Scalar::one(),
            sc("-1/(l1+1)"),
            Scalar::zero()
        ]
    );
}

#[test]
fn intertwiners_are_singular() {
    for mode in [Mode::Classical, Mode::Quantum] {
        let v = WeightModule::vector(&gl(3), mode);
        for k in 0..3 {
            assert!(solve_intertwiner(&v, k).unwrap().is_singular());
        }
        let s2 = sym_power(&WeightModule::vector(&gl(2), mode), 2).unwrap();
        for k in 0..3 {
            assert!(solve_intertwiner(&s2, k).unwrap().is_singular());
        }
        let d = v.dual();
        assert!(solve_intertwiner(&d, 0).unwrap().is_singular());
    }
}

#[test]
fn module_json_has_schema() {
    let v = WeightModule::vector(&gl(2), Mode::Quantum);
    assert_eq!(v.to_json()["schema"], "dybe.module/1");
}
