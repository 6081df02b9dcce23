//! Transfer difference operators `D^V_W = Σ_ν Tr_{W[ν]}(R_{WV}(−λ−ρ)) T_ν`
//! and the scalar functions `δ_q`, `γ_m`.

use std::collections::BTreeMap;

use num::BigRational;

use crate::fusion::{exchange_matrix, DynOp};
use crate::reps::WeightModule;
use crate::rootdata::{rats, Flavor, RootDatum};
use crate::scalars::{Matrix, Mode, Scalar, Var};
use crate::{Error, Result};

use super::DiffOp;

fn rho_coords(datum: &RootDatum) -> Vec<BigRational> {
    let rho = datum.rho();
    datum
        .coords()
        .hs()
        .iter()
        .map(|h| h.iter().zip(&rho).map(|(a, b)| a * b).sum())
        .collect()
}

/// `f(−λ−ρ)`: `l_c ↦ −l_c − ρ(H_c)` and `t_c ↦ q^{−ρ(H_c)} t_c⁻¹`.
pub fn reflect_rho(f: &Scalar, datum: &RootDatum) -> Result<Scalar> {
    let mut images = Vec::new();
    for (c, r) in rho_coords(datum).into_iter().enumerate() {
        let l = Var::l(c + 1);
        if f.has_var(l) {
            images.push((l, -Scalar::var(l) - Scalar::rational(r.clone())));
        }
        let t = Var::t(c + 1);
        if f.has_var(t) {
            let e = -(r * BigRational::from_integer(2.into()));
            if !e.is_integer() {
                return Err(Error::UnsupportedShift(
                    "ρ has a non-half-integral coordinate".into(),
                ));
            }
            let e: i64 = e
                .to_integer()
                .try_into()
                .map_err(|_| Error::Internal("overflow".into()))?;
            images.push((t, Scalar::var(t).pow(-1) * Scalar::s_pow(e)));
        }
    }
    if images.is_empty() {
        return Ok(f.clone());
    }
    f.substitute(&images)
}

/// Ratio `q^{−|w||v|/n}` between the sl_n- and gl_n-normalized universal
/// R-matrix on `W[w] ⊗ V[v]`, with `|·|` the sum of ε-coordinates. `V` must
/// be of zero weight so that the exponent is integral.
fn sl_normalization(datum: &RootDatum, w_weight: &[i64], v_weight: &[i64]) -> Result<Scalar> {
    let n = datum.n() as i64;
    let (a, b): (i64, i64) = (w_weight.iter().sum(), v_weight.iter().sum());
    if (a * b) % n != 0 {
        return Err(Error::Internal("non-integral sl normalization".into()));
    }
    Ok(Scalar::q_pow(-(a * b) / n))
}

/// `D^V_W` acting on `V[0]`-valued functions, built from the exchange
/// matrix `R_{WV}` supplied by `fusion`. For quantum sl_n the exchange matrix
/// is taken with the sl_n-normalized R-matrix.
pub fn transfer_diffop<F>(v: &WeightModule, w: &WeightModule, fusion: F) -> Result<DiffOp>
where
    F: Fn(&WeightModule, &WeightModule) -> Result<DynOp>,
{
    let datum = v.datum();
    let zero = v.zero_weight_indices();
    if zero.is_empty() {
        return Err(Error::Precondition(format!(
            "{} has no zero-weight vectors",
            v.label()
        )));
    }
    let r = exchange_matrix(w, v, fusion)?;
    let dv = v.dim();
    let mut by_weight: BTreeMap<Vec<BigRational>, Vec<usize>> = BTreeMap::new();
    for a in 0..w.dim() {
        by_weight
            .entry(datum.shift_vector(w.weight(a)))
            .or_default()
            .push(a);
    }
    let coords = datum.coords().len();
    let mut out = DiffOp::zero(coords, zero.len());
    for (nu, basis) in by_weight {
        let mut c = Matrix::zeros(zero.len(), zero.len());
        for (i, &vi) in zero.iter().enumerate() {
            for (j, &vj) in zero.iter().enumerate() {
                let mut acc = Scalar::zero();
                for &a in &basis {
                    acc = acc + r.matrix().get(a * dv + vi, a * dv + vj);
                }
                if v.mode() == Mode::Quantum && datum.flavor() == Flavor::Sl {
                    acc = acc * sl_normalization(datum, w.weight(basis[0]), v.weight(vi))?;
                }
                c.set(i, j, reflect_rho(&acc, datum)?);
            }
        }
        out.add_term(nu, c);
    }
    if out.is_zero() {
        return Err(Error::Internal("transfer operator vanished".into()));
    }
    Ok(out)
}

/// `D(q⁻¹, −λ)`: `q ↦ q⁻¹`, coefficients read at `−λ` and shifts negated.
/// In `t = q^λ` the two substitutions leave `t` fixed.
pub fn invert_q_and_lambda(d: &DiffOp) -> Result<DiffOp> {
    let has_l = d.terms().values().any(|c| {
        (0..c.rows()).any(|i| {
            (0..c.cols()).any(|j| {
                let x = c.get(i, j);
                (1..=d.coords()).any(|k| x.has_var(Var::l(k)))
            })
        })
    });
    if has_l {
        return Err(Error::Precondition(
            "q ↦ q⁻¹ needs quantum coefficients".into(),
        ));
    }
    let images = vec![(Var::s(), Scalar::s_pow(-1))];
    let negated = d.map_shifts(d.coords(), |nu| nu.iter().map(|x| -x).collect());
    negated.map_coefficients(|c| c.try_map(|x| x.substitute(&images)))
}

/// Weyl denominator `δ_q(λ) = (Tr_{M_{−ρ}} q^{2λ})⁻¹ = q^{2(λ,ρ)} Π_{α>0}(1 − q^{−2(λ,α)})`.
pub fn weyl_denominator(datum: &RootDatum) -> Result<Scalar> {
    let mut d = datum.q_lambda_pair(2, &datum.rho())?;
    for a in datum.positive_roots() {
        let alpha = rats(&a.weight(datum.n()));
        d = d * (Scalar::one() - datum.q_lambda_pair(-2, &alpha)?);
    }
    Ok(d)
}

/// `γ_m(q, λ) = Π_{i=1}^m Π_{α>0} (q^{(λ,α)} − q^{2i} q^{−(λ,α)})`.
pub fn gamma_m(datum: &RootDatum, m: usize) -> Result<Scalar> {
    let mut g = Scalar::one();
    for i in 1..=m as i64 {
        for a in datum.positive_roots() {
            let alpha = rats(&a.weight(datum.n()));
            g = g
                * (datum.q_lambda_pair(1, &alpha)?
                    - Scalar::q_pow(2 * i) * datum.q_lambda_pair(-1, &alpha)?);
        }
    }
    Ok(g)
}

/// `χ_W(q^{−2μ}) = Σ_ν dim W[ν] q^{−2(ν,μ)}` in the symbols `m_c = q^{μ_c}`.
pub fn character_at_mu(w: &WeightModule) -> Result<Scalar> {
    let datum = w.datum();
    let mut acc = Scalar::zero();
    for a in 0..w.dim() {
        acc = acc + q_mu_pair(datum, -2, &rats(w.weight(a)))?;
    }
    Ok(acc)
}

/// `q^{k(μ, ν)}` in the symbols `m_c = q^{μ_c}`.
pub fn q_mu_pair(datum: &RootDatum, k: i64, nu: &[BigRational]) -> Result<Scalar> {
    let t = datum.q_lambda_pair(k, nu)?;
    let images: Vec<(Var, Scalar)> = (1..=datum.coords().len())
        .map(|c| (Var::t(c), Scalar::var(Var::m(c))))
        .collect();
    t.substitute(&images)
}
