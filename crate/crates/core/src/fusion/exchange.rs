//! Fusion and exchange matrices from compositions of Verma intertwiners.

use rayon::prelude::*;

use crate::reps::{composite_expectation, constant_r21, solve_intertwiner, WeightModule};
use crate::scalars::{Matrix, Mode};
use crate::Result;

use super::DynOp;

/// `J_{WV}(λ): w ⊗ v ↦ ⟨Φ^{w,v}_λ⟩` on `W ⊗ V`.
pub fn fusion_exchange_construction(w: &WeightModule, v: &WeightModule) -> Result<DynOp> {
    let (dw, dv) = (w.dim(), v.dim());
    let columns: Vec<Result<Vec<Vec<crate::scalars::Scalar>>>> = (0..dv)
        .into_par_iter()
        .map(|j| {
            let phi = solve_intertwiner(v, j)?;
            (0..dw).map(|a| composite_expectation(&phi, w, a)).collect()
        })
        .collect();
    let mut m = Matrix::zeros(dw * dv, dw * dv);
    for (j, cols) in columns.into_iter().enumerate() {
        for (a, col) in cols?.into_iter().enumerate() {
            for (r, x) in col.into_iter().enumerate() {
                m.set(r, a * dv + j, x);
            }
        }
    }
    DynOp::new(vec![w.clone(), v.clone()], m)
}

/// `X^{21} = P X P` for `X` on `W ⊗ V`, as an operator on `V ⊗ W`.
pub fn flip_op(x: &Matrix, dw: usize, dv: usize) -> Matrix {
    Matrix::flip(dw, dv).mul(x).mul(&Matrix::flip(dv, dw))
}

/// `R_{VW}(λ) = J_{VW}⁻¹ J^{21}_{WV}` (classical) or `J_{VW}⁻¹ R^{21} J^{21}_{WV}` (quantum).
pub fn exchange_matrix<F>(v: &WeightModule, w: &WeightModule, fusion: F) -> Result<DynOp>
where
    F: Fn(&WeightModule, &WeightModule) -> Result<DynOp>,
{
    let j_vw = fusion(v, w)?;
    let j_wv = if v == w { j_vw.clone() } else { fusion(w, v)? };
    let j21 = flip_op(j_wv.matrix(), w.dim(), v.dim());
    let inv = j_vw.matrix().inverse()?;
    let m = match v.mode() {
        Mode::Classical => inv.mul(&j21),
        Mode::Quantum => inv.mul(&constant_r21(v, w)?).mul(&j21),
    };
    DynOp::new(vec![v.clone(), w.clone()], m)
}
