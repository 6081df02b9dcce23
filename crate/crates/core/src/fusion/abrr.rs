//! Fusion matrices as fixed points of the ABRR equation.
//!
//! Classically `[J, 1⊗θ(λ)] = (Σ_{α>0} e_{−α}⊗e_α) J`; quantumly
//! `J (1⊗q^{2θ(λ)}) = R_0^{21} (1⊗q^{2θ(λ)}) J` with `R_0 = R q^{−Σx_i⊗x_i}`,
//! where `θ(λ) = λ + ρ − ½Σx_i²`. Both are solved by iterating
//! `T ↦ 1 + (Ad(1⊗θ-part) − 1)⁻¹ (correction) T` from `T = 1`.

use crate::reps::{reduced_r, WeightModule};
use crate::rootdata::Elem;
use crate::scalars::{Matrix, Mode, Scalar};
use crate::{Error, Result};

use super::exchange::flip_op;
use super::DynOp;

/// `Σ_{α>0} e_{−α} ⊗ e_α` on `V ⊗ W` (classical modules).
pub fn lowering_casimir(v: &WeightModule, w: &WeightModule) -> Result<Matrix> {
    let n = v.datum().n();
    let mut acc = Matrix::zeros(v.dim() * w.dim(), v.dim() * w.dim());
    for a in 0..n {
        for b in a + 1..n {
            let lo = v.gl_action(Elem { a: b, b: a })?;
            let hi = w.gl_action(Elem { a, b })?;
            acc = acc.add(&lo.kron(&hi));
        }
    }
    Ok(acc)
}

/// Number of iterations after which the recursion must have stabilized.
fn iteration_bound(w: &WeightModule) -> usize {
    let datum = w.datum();
    let mut spread = 0;
    for x in w.weights() {
        for y in w.weights() {
            let d: Vec<i64> = x.iter().zip(y).map(|(a, b)| a - b).collect();
            if let Some(h) = datum.positive_height(&d) {
                spread = spread.max(h as usize);
            }
        }
    }
    spread + 2
}

fn iterate<F>(dim: usize, bound: usize, step: F) -> Result<Matrix>
where
    F: Fn(&Matrix) -> Result<Matrix>,
{
    let mut t = Matrix::identity(dim);
    for _ in 0..=bound {
        let next = step(&t)?.add(&Matrix::identity(dim));
        if next == t {
            return Ok(t);
        }
        t = next;
    }
    Err(Error::Internal(format!(
        "ABRR iteration did not stabilize within {bound} steps"
    )))
}

/// `J_{VW}(λ)` on `V ⊗ W` by the ABRR recursion.
pub fn abrr_fusion(v: &WeightModule, w: &WeightModule) -> Result<DynOp> {
    if v.datum() != w.datum() || v.mode() != w.mode() {
        return Err(Error::FlavorMismatch(
            "modules over different algebras".into(),
        ));
    }
    let datum = v.datum();
    let dw = w.dim();
    let dim = v.dim() * dw;
    let second = |i: usize| w.weight(i % dw);
    let bound = iteration_bound(w);
    let t = match v.mode() {
        Mode::Classical => {
            let omega = lowering_casimir(v, w)?;
            let theta: Vec<Scalar> = (0..dw).map(|b| datum.theta_scalar(w.weight(b))).collect();
            iterate(dim, bound, |t| {
                omega.mul(t).try_map_indexed(|i, j, x| {
                    let d = &theta[j % dw] - &theta[i % dw];
                    if d.is_zero() {
                        return Err(Error::Internal(
                            "ABRR correction on a θ-degenerate entry".into(),
                        ));
                    }
                    Ok(x / &d)
                })
            })?
        }
        Mode::Quantum => {
            let r0_21 = flip_op(&reduced_r(w, v)?, w.dim(), v.dim());
            let corr = r0_21.inverse()?.sub(&Matrix::identity(dim));
            iterate(dim, bound, |t| {
                corr.mul(t).try_map_indexed(|i, j, x| {
                    let ratio = datum.q_theta_ratio(second(i), second(j))?;
                    let d = ratio - Scalar::one();
                    if d.is_zero() {
                        return Err(Error::Internal(
                            "ABRR correction on a θ-degenerate entry".into(),
                        ));
                    }
                    Ok(x / &d)
                })
            })?
        }
    };
    DynOp::new(vec![v.clone(), w.clone()], t)
}
