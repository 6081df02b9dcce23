//! Quasiclassical expansions `X(λ/γ) = X_0 + γ X_1 + O(γ²)`.
//!
//! Quantum operators use `q = e^{−εγ/2}` with `q^{λ_c} = t_c ↦ w_c`, so the
//! coefficients live in the field generated by ε and the `w_c`.

use rayon::prelude::*;

use crate::scalars::{gamma_expand, GammaSeries, Matrix};
use crate::Result;

use super::DynOp;

/// Entrywise γ-expansion of an operator.
#[derive(Clone, Debug)]
pub struct ClassicalLimit {
    pub dim: usize,
    pub order: usize,
    pub series: Vec<GammaSeries>,
}

impl ClassicalLimit {
    /// Coefficient matrix of `γ^k`.
    pub fn coefficient(&self, k: usize) -> Matrix {
        Matrix::from_fn(self.dim, self.dim, |i, j| {
            self.series[i * self.dim + j].coeff(k).clone()
        })
    }

    pub fn constant_term(&self) -> Matrix {
        self.coefficient(0)
    }

    pub fn first_order(&self) -> Matrix {
        self.coefficient(1)
    }
}

/// Expands every entry of `op` through order `order` in γ.
pub fn classical_limit(op: &DynOp, order: usize) -> Result<ClassicalLimit> {
    let m = op.matrix();
    let dim = m.rows();
    let series = (0..dim * dim)
        .into_par_iter()
        .map(|k| gamma_expand(m.get(k / dim, k % dim), order))
        .collect::<Result<Vec<_>>>()?;
    Ok(ClassicalLimit { dim, order, series })
}
