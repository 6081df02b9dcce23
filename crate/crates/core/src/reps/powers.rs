//! Symmetric and exterior powers of the vector representation, cut out of
//! the tensor power by the eigenspaces of `Ř_i = P R_{i,i+1}`.
//!
//! Classically `Ř = P` with eigenvalues `±1`; quantumly `Ř` satisfies
//! `(Ř − q)(Ř + q⁻¹) = 0`.

use std::collections::BTreeMap;

use crate::rootdata::Weight;
use crate::scalars::{Matrix, Mode, Scalar};
use crate::{Error, Result};

use super::module::{power_dimension, Structure, WeightModule};
use super::rmatrix::{place_two, vector_r};

/// `Ř` on `C^n ⊗ C^n` and its eigenvalue on the symmetric part.
fn braid(n: usize, mode: Mode) -> (Matrix, Scalar, Scalar) {
    let p = Matrix::flip(n, n);
    match mode {
        Mode::Classical => (p, Scalar::one(), Scalar::int(-1)),
        Mode::Quantum => (p.mul(&vector_r(n)), Scalar::q(), -Scalar::q().pow(-1)),
    }
}

fn power(v: &WeightModule, m: usize, symmetric: bool) -> Result<WeightModule> {
    if !matches!(v.structure(), Structure::Vector) {
        return Err(Error::Precondition(
            "powers are built from the vector representation".into(),
        ));
    }
    let n = v.dim();
    let name = if symmetric {
        format!("S{m}C{n}")
    } else {
        format!("L{m}C{n}")
    };
    if m == 0 {
        return Ok(WeightModule::trivial(v.datum(), v.mode()).with_label(&name));
    }
    let full = v.tensor_power(m)?;
    let (rb, sym_ev, alt_ev) = braid(n, v.mode());
    let ev = if symmetric { sym_ev } else { alt_ev };
    let dims = vec![n; m];
    let total = full.dim();
    let conds: Vec<Matrix> = (0..m.saturating_sub(1))
        .map(|i| {
            place_two(&dims, i, i + 1, |_| rb.clone()).sub(&Matrix::scalar_identity(total, &ev))
        })
        .collect();
    // Kernel per weight block, blocks in decreasing weight order.
    let mut blocks: BTreeMap<std::cmp::Reverse<Weight>, Vec<usize>> = BTreeMap::new();
    for (k, w) in full.weights().iter().enumerate() {
        blocks
            .entry(std::cmp::Reverse(w.clone()))
            .or_default()
            .push(k);
    }
    let mut cols: Vec<Vec<(usize, Scalar)>> = Vec::new();
    let mut free_rows: Vec<usize> = Vec::new();
    for idx in blocks.values() {
        let (ker, free) = if conds.is_empty() {
            (Matrix::identity(idx.len()), (0..idx.len()).collect())
        } else {
            let stacked: Vec<Matrix> = conds
                .iter()
                .map(|c| c.select(&(0..total).collect::<Vec<_>>(), idx))
                .collect();
            Matrix::stack(&stacked).nullspace()
        };
        for k in 0..ker.cols() {
            cols.push(
                (0..idx.len())
                    .filter(|&r| !ker.get(r, k).is_zero())
                    .map(|r| (idx[r], ker.get(r, k).clone()))
                    .collect(),
            );
            free_rows.push(idx[free[k]]);
        }
    }
    let expect = power_dimension(n, m, symmetric);
    if cols.len() != expect {
        return Err(Error::Convention(format!(
            "{name}: projector rank {} but the classical dimension is {expect}",
            cols.len()
        )));
    }
    let d = cols.len();
    let mut embed = Matrix::zeros(total, d);
    let mut proj = Matrix::zeros(d, total);
    for (k, col) in cols.into_iter().enumerate() {
        for (r, x) in col {
            embed.set(r, k, x);
        }
        proj.set(k, free_rows[k], Scalar::one());
    }
    full.submodule(embed, proj, &name)
}

/// `S^m C^n` inside `(C^n)^{⊗m}`.
pub fn sym_power(v: &WeightModule, m: usize) -> Result<WeightModule> {
    power(v, m, true)
}

/// `Λ^r C^n` inside `(C^n)^{⊗r}`.
pub fn ext_power(v: &WeightModule, r: usize) -> Result<WeightModule> {
    power(v, r, false)
}
