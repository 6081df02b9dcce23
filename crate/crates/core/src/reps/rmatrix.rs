//! Constant quantum R-matrices on modules built from the vector representation.
//!
//! On `C^n ⊗ C^n`:
//! `R = q Σ E_aa⊗E_aa + Σ_{a≠b} E_aa⊗E_bb + (q − q⁻¹) Σ_{a<b} E_ab⊗E_ba`.
//! On tensor powers `R_{V_1⋯V_k, W_1⋯W_m} = Π_i Π_{j=m..1} R_{i, j'}`, and on
//! submodules it is restricted along the embedding.

use crate::scalars::{Matrix, Mode, Scalar};
use crate::{Error, Result};

use super::module::WeightModule;

/// The vector-representation R-matrix on `C^n ⊗ C^n`.
pub fn vector_r(n: usize) -> Matrix {
    let q = Scalar::q();
    let qq = &q - &q.pow(-1);
    let mut r = Matrix::zeros(n * n, n * n);
    for a in 0..n {
        for b in 0..n {
            let i = a * n + b;
            r.set(i, i, if a == b { q.clone() } else { Scalar::one() });
            if a < b {
                r.set(a * n + b, b * n + a, qq.clone());
            }
        }
    }
    r
}

/// Places an operator on slots `(first, second)` of a tensor product with
/// factor dimensions `dims`; `op` may depend on the indices of the other
/// slots (listed in increasing slot order).
pub fn place_two<F>(dims: &[usize], first: usize, second: usize, op: F) -> Matrix
where
    F: Fn(&[usize]) -> Matrix,
{
    assert_ne!(first, second);
    let total: usize = dims.iter().product();
    let (d1, d2) = (dims[first], dims[second]);
    let mut strides = vec![1; dims.len()];
    for k in (0..dims.len().saturating_sub(1)).rev() {
        strides[k] = strides[k + 1] * dims[k + 1];
    }
    let others: Vec<usize> = (0..dims.len())
        .filter(|&k| k != first && k != second)
        .collect();
    let mut out = Matrix::zeros(total, total);
    let nother: usize = others.iter().map(|&k| dims[k]).product();
    let mut idx = vec![0usize; others.len()];
    for _ in 0..nother {
        let m = op(&idx);
        let base: usize = others.iter().zip(&idx).map(|(&k, &i)| i * strides[k]).sum();
        for a in 0..d1 {
            for b in 0..d2 {
                let row = base + a * strides[first] + b * strides[second];
                for c in 0..d1 {
                    for d in 0..d2 {
                        let x = m.get(a * d2 + b, c * d2 + d);
                        if !x.is_zero() {
                            let col = base + c * strides[first] + d * strides[second];
                            out.set(row, col, x.clone());
                        }
                    }
                }
            }
        }
        for k in (0..idx.len()).rev() {
            idx[k] += 1;
            if idx[k] < dims[others[k]] {
                break;
            }
            idx[k] = 0;
        }
    }
    out
}

/// `R` on `V^{⊗p} ⊗ V^{⊗m}`.
pub fn tensor_power_r(n: usize, p: usize, m: usize) -> Matrix {
    let dims = vec![n; p + m];
    let total = n.pow((p + m) as u32);
    let r = vector_r(n);
    let mut acc = Matrix::identity(total);
    for i in 0..p {
        for j in (0..m).rev() {
            acc = acc.mul(&place_two(&dims, i, p + j, |_| r.clone()));
        }
    }
    acc
}

/// Constant R-matrix on `V ⊗ W` for modules inside vector-rep tensor powers.
pub fn constant_r(v: &WeightModule, w: &WeightModule) -> Result<Matrix> {
    if v.mode() != Mode::Quantum || w.mode() != Mode::Quantum {
        return Err(Error::Precondition(
            "constant R-matrix needs quantum modules".into(),
        ));
    }
    if v.datum() != w.datum() {
        return Err(Error::FlavorMismatch(
            "modules over different algebras".into(),
        ));
    }
    let unsupported =
        || Error::Precondition("module is not built from the vector representation".into());
    let (p, iv, pv) = v.vector_factorization().ok_or_else(unsupported)?;
    let (m, iw, pw) = w.vector_factorization().ok_or_else(unsupported)?;
    let big = tensor_power_r(v.datum().n(), p, m);
    Ok(pv.kron(&pw).mul(&big).mul(&iv.kron(&iw)))
}

/// `R_0 = R q^{−(wt, wt)}` with the Cartan factor on the right.
pub fn reduced_r(v: &WeightModule, w: &WeightModule) -> Result<Matrix> {
    let r = constant_r(v, w)?;
    let d: Vec<Scalar> = v
        .weights()
        .iter()
        .flat_map(|a| {
            w.weights().iter().map(move |b| {
                let ip: i64 = a.iter().zip(b).map(|(x, y)| x * y).sum();
                Scalar::q_pow(-ip)
            })
        })
        .collect();
    Ok(r.mul(&Matrix::diagonal(&d)))
}

/// `R^{21}_{VW} = P R_{WV} P` on `V ⊗ W`.
pub fn constant_r21(v: &WeightModule, w: &WeightModule) -> Result<Matrix> {
    let r = constant_r(w, v)?;
    Ok(Matrix::flip(w.dim(), v.dim())
        .mul(&r)
        .mul(&Matrix::flip(v.dim(), w.dim())))
}
