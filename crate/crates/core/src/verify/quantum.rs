//! Quantum checks: QDYBE, the Hecke condition, the dynamical 2-cocycle
//! identity, gauge transformations and the dynamical Hecke representation.

use num::BigRational;

use crate::fusion::DynOp;
use crate::reps::{place_two, WeightModule};
use crate::scalars::{Matrix, Scalar, Var};
use crate::{Error, Result};

use super::ResidualReport;

fn label(op: &DynOp) -> String {
    let f: Vec<&str> = op.factors().iter().map(WeightModule::label).collect();
    format!("R on {}", f.join("⊗"))
}

fn square_operator(r: &DynOp) -> Result<&WeightModule> {
    if r.factors().len() != 2 || r.factors()[0] != r.factors()[1] {
        return Err(Error::Precondition("expected an operator on V ⊗ V".into()));
    }
    if !r.is_weight_zero() {
        return Err(Error::Precondition("operator is not of weight zero".into()));
    }
    Ok(&r.factors()[0])
}

/// `R^{12}(λ−h^{(3)}) R^{13}(λ) R^{23}(λ−h^{(1)}) − R^{23}(λ) R^{13}(λ−h^{(2)}) R^{12}(λ)` on `V⊗V⊗V`.
pub fn qdybe_residual(r: &DynOp) -> Result<ResidualReport> {
    let v = square_operator(r)?.clone();
    let mods = [v.clone(), v.clone(), v];
    let lhs = r
        .placed(&mods, 0, 1, &[2])?
        .mul(&r.placed(&mods, 0, 2, &[])?)
        .mul(&r.placed(&mods, 1, 2, &[0])?);
    let rhs = r
        .placed(&mods, 1, 2, &[])?
        .mul(&r.placed(&mods, 0, 2, &[1])?)
        .mul(&r.placed(&mods, 0, 1, &[])?);
    Ok(ResidualReport::from_matrices(
        "qdybe",
        &[label(r)],
        &lhs,
        &rhs,
    ))
}

/// Hecke condition with parameter `q` on `C^n ⊗ C^n`: `PR = 1` on each
/// `V_a ⊗ V_a` and `(PR − 1)(PR + q) = 0` on each `V_a⊗V_b ⊕ V_b⊗V_a`.
pub fn hecke_check(r: &DynOp, q: &Scalar) -> Result<ResidualReport> {
    let v = square_operator(r)?;
    let n = v.dim();
    if v.weights()
        .iter()
        .enumerate()
        .any(|(a, w)| w.iter().enumerate().any(|(c, &x)| x != i64::from(a == c)))
    {
        return Err(Error::Precondition(
            "the Hecke check is for the vector representation".into(),
        ));
    }
    let pr = Matrix::flip(n, n).mul(r.matrix());
    let one = Matrix::identity(pr.rows());
    let lhs = pr.sub(&one).mul(&pr.add(&one.scale(q)));
    // On V_a⊗V_a the quadratic relation only says PR ∈ {1, −q}; pin it to 1.
    let mut res = lhs;
    for a in 0..n {
        let d = a * n + a;
        let diag = pr.get(d, d) - &Scalar::one();
        res.set(d, d, diag);
    }
    Ok(ResidualReport::from_residual(
        "hecke",
        &[label(r), q.to_text()],
        &res,
        0,
    ))
}

/// `J_{U⊗W,V}(λ)(J_{UW}(λ−h^{(3)})⊗1) − J_{U,W⊗V}(λ)(1⊗J_{WV}(λ))`.
pub fn cocycle_residual<F>(
    fusion: F,
    u: &WeightModule,
    w: &WeightModule,
    v: &WeightModule,
) -> Result<ResidualReport>
where
    F: Fn(&WeightModule, &WeightModule) -> Result<DynOp>,
{
    let mods = [u.clone(), w.clone(), v.clone()];
    let j_uw_v = fusion(&u.tensor(w)?, v)?;
    let j_u_wv = fusion(u, &w.tensor(v)?)?;
    let j_uw = fusion(u, w)?;
    let j_wv = fusion(w, v)?;
    let lhs = j_uw_v.matrix().mul(&j_uw.placed(&mods, 0, 1, &[2])?);
    let rhs = j_u_wv.matrix().mul(&j_wv.placed(&mods, 1, 2, &[])?);
    let names = vec![
        u.label().to_string(),
        w.label().to_string(),
        v.label().to_string(),
    ];
    Ok(ResidualReport::from_matrices("cocycle", &names, &lhs, &rhs))
}

/// Gauge transformations of quantum dynamical R-matrices on `C^n ⊗ C^n`.
#[derive(Clone, Debug, PartialEq)]
pub enum QuantumGauge {
    /// `α_ab ↦ φ_ab α_ab` for a closed multiplicative 2-form `φ` (an `n×n`
    /// table; diagonal entries are ignored).
    TwoForm(Vec<Vec<Scalar>>),
    /// `R(λ − ν)` for a constant ν in coordinates.
    Shift(Vec<BigRational>),
    /// `(σ⊗σ) R(σ⁻¹λ) (σ⁻¹⊗σ⁻¹)` for a permutation σ of `0..n`.
    Permute(Vec<usize>),
}

fn unit_shift(n: usize, c: usize) -> Vec<BigRational> {
    (0..n)
        .map(|a| BigRational::from_integer(i64::from(a == c).into()))
        .collect()
}

/// Checks `φ_ab φ_ba = 1` and the cyclic closedness identity for distinct `a, b, c`.
pub fn multiplicative_form_is_closed(phi: &[Vec<Scalar>]) -> Result<bool> {
    let n = phi.len();
    if phi.iter().any(|row| row.len() != n) {
        return Err(Error::InvalidGauge("the 2-form table is not square".into()));
    }
    for a in 0..n {
        for b in 0..n {
            if a != b && !(&phi[a][b] * &phi[b][a]).is_one() {
                return Ok(false);
            }
        }
    }
    let at = |x: &Scalar, c: usize| x.shift_substitute(&unit_shift(n, c));
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                if a == b || b == c || a == c {
                    continue;
                }
                let p = &phi[a][b] / &at(&phi[a][b], c)?
                    * (&phi[b][c] / &at(&phi[b][c], a)?)
                    * (&phi[c][a] / &at(&phi[c][a], b)?);
                if !p.is_one() {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

/// Applies a gauge transformation.
pub fn gauge_quantum(r: &DynOp, gauge: &QuantumGauge) -> Result<DynOp> {
    let v = square_operator(r)?;
    let n = v.dim();
    if r.datum().coords().len() != n {
        return Err(Error::Precondition(
            "quantum gauges act in gl_n coordinates".into(),
        ));
    }
    let m = r.matrix();
    match gauge {
        QuantumGauge::TwoForm(phi) => {
            if phi.len() != n || !multiplicative_form_is_closed(phi)? {
                return Err(Error::InvalidGauge(
                    "the multiplicative 2-form is not closed".into(),
                ));
            }
            let mut out = m.clone();
            for a in 0..n {
                for b in 0..n {
                    if a != b {
                        let d = a * n + b;
                        out.set(d, d, m.get(d, d) * &phi[a][b]);
                    }
                }
            }
            DynOp::new(r.factors().to_vec(), out)
        }
        QuantumGauge::Shift(nu) => {
            if nu.len() != n {
                return Err(Error::InvalidGauge(
                    "shift has the wrong number of coordinates".into(),
                ));
            }
            DynOp::new(r.factors().to_vec(), m.try_map(|x| x.shift_substitute(nu))?)
        }
        QuantumGauge::Permute(sigma) => {
            let mut s = sigma.clone();
            s.sort();
            if s != (0..n).collect::<Vec<_>>() {
                return Err(Error::InvalidGauge("not a permutation".into()));
            }
            let mut images = Vec::new();
            for c in 0..n {
                images.push((Var::l(c + 1), Scalar::var(Var::l(sigma[c] + 1))));
                images.push((Var::t(c + 1), Scalar::var(Var::t(sigma[c] + 1))));
            }
            let moved = m.try_map(|x| x.substitute(&images))?;
            let idx = |i: usize| sigma[i / n] * n + sigma[i % n];
            let mut out = Matrix::zeros(n * n, n * n);
            for i in 0..n * n {
                for j in 0..n * n {
                    out.set(idx(i), idx(j), moved.get(i, j).clone());
                }
            }
            DynOp::new(r.factors().to_vec(), out)
        }
    }
}

/// Operators `Ř_i = P_{i,i+1} R_{i,i+1}(λ − Σ_{k<i} h^{(k)})` on `V^{⊗p}`
/// with the report on their braid, locality and quadratic relations.
///
/// Shifting by the earlier slots makes the braid relation for `p = 3` exactly
/// the QDYBE; shifting by the later slots gives the QDYBE for `R^{21}` instead.
#[derive(Clone, Debug)]
pub struct HeckeRep {
    pub generators: Vec<Matrix>,
    pub report: ResidualReport,
}

pub fn dynamical_hecke_rep(r: &DynOp, p: usize, q: &Scalar) -> Result<HeckeRep> {
    let v = square_operator(r)?.clone();
    if p < 2 {
        return Err(Error::Precondition(
            "need at least two tensor factors".into(),
        ));
    }
    let mods = vec![v.clone(); p];
    let dims = vec![v.dim(); p];
    let flip = Matrix::flip(v.dim(), v.dim());
    let generators = (0..p - 1)
        .map(|i| {
            let earlier: Vec<usize> = (0..i).collect();
            let perm = place_two(&dims, i, i + 1, |_| flip.clone());
            Ok(perm.mul(&r.placed(&mods, i, i + 1, &earlier)?))
        })
        .collect::<Result<Vec<Matrix>>>()?;
    let ops = vec![label(r), format!("p={p}")];
    let mut parts = Vec::new();
    let one = Matrix::identity(generators[0].rows());
    for (i, g) in generators.iter().enumerate() {
        let quad = g.sub(&one).mul(&g.add(&one.scale(q)));
        parts.push(ResidualReport::from_residual(
            &format!("quadratic[{i}]"),
            &ops,
            &quad,
            0,
        ));
        if let Some(h) = generators.get(i + 1) {
            let lhs = g.mul(h).mul(g);
            let rhs = h.mul(g).mul(h);
            parts.push(ResidualReport::from_matrices(
                &format!("braid[{i}]"),
                &ops,
                &lhs,
                &rhs,
            ));
        }
        for (j, h) in generators.iter().enumerate().skip(i + 2) {
            parts.push(ResidualReport::from_matrices(
                &format!("locality[{i},{j}]"),
                &ops,
                &g.mul(h),
                &h.mul(g),
            ));
        }
    }
    Ok(HeckeRep {
        generators,
        report: ResidualReport::combine("dynamical-hecke", &parts),
    })
}
