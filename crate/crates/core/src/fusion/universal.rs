//! Universal fusion matrix of sl₂ and its Shapovalov-form cross-check.
//!
//! `J(λ) = Σ_n F^n ⊗ c_n E^n`. Classically
//! `c_n = ((−1)^n/n!) Π_{k=n+1}^{2n} (λ − h + k)⁻¹` with `h` the weight after
//! `E^n`. Quantumly `c_n` solves the ABRR recurrence
//! `c_N (1 − r_N) = Σ_{k≥1} θ_k q^{k(a − m − 4(N−k)) − 2k²} r_{N−k} c_{N−k}`,
//! `r_j = q^{2θ(m+2j) − 2θ(m)}`, `θ_k = q^{k(k−1)/2}(q − q⁻¹)^k/[k]!`,
//! for `F^n` acting on weight `a` and `E^n` on weight `m`.
//!
//! Coefficients are scalars in `l1` (classical λ) or `t1 = q^λ`, and in the
//! placeholders `p1` (classical `m`, quantum `q^m`) and `p2` (quantum `q^a`).

use std::collections::BTreeMap;

use crate::reps::{shapovalov_gram, verma_slice, VermaVector, WeightModule};
use crate::rootdata::{rats, Flavor, RootDatum};
use crate::scalars::{Matrix, Mode, Scalar, Var};
use crate::{Error, Result};

/// The degree-`n` component `F^n ⊗ c_n E^n`.
#[derive(Clone, Debug, PartialEq)]
pub struct UniversalTerm {
    pub n: usize,
    pub coefficient: Scalar,
}

fn factorial(n: usize) -> Scalar {
    (1..=n as i64).map(Scalar::int).product()
}

fn q_factorial(n: usize) -> Scalar {
    (1..=n as i64).map(Scalar::q_number).product()
}

/// Universal sl₂ fusion components through degree `depth`.
pub fn universal_sl2_fusion(depth: usize, mode: Mode) -> Vec<UniversalTerm> {
    let lam = Scalar::var(Var::l(1));
    let m = Scalar::var(Var::p(1));
    match mode {
        Mode::Classical => (0..=depth)
            .map(|n| {
                let sign = if n % 2 == 0 {
                    Scalar::one()
                } else {
                    Scalar::int(-1)
                };
                let mut c = sign / factorial(n);
                for k in n + 1..=2 * n {
                    let h = &m + &Scalar::int(2 * n as i64);
                    c = c / (&lam - &h + Scalar::int(k as i64));
                }
                UniversalTerm { n, coefficient: c }
            })
            .collect(),
        Mode::Quantum => {
            let t = Scalar::var(Var::t(1));
            let qm = Scalar::var(Var::p(1));
            let qa = Scalar::var(Var::p(2));
            let q = Scalar::q();
            let r = |j: i64| t.pow(2 * j) * Scalar::q_pow(2 * j - 2 * j * j) * qm.pow(-2 * j);
            let theta = |k: i64| {
                Scalar::q_pow(k * (k - 1) / 2) * (&q - &q.pow(-1)).pow(k) / q_factorial(k as usize)
            };
            let mut cs: Vec<Scalar> = vec![Scalar::one()];
            for big_n in 1..=depth as i64 {
                let mut acc = Scalar::zero();
                for k in 1..=big_n {
                    let shift =
                        qa.pow(k) * qm.pow(-k) * Scalar::q_pow(-4 * k * (big_n - k) - 2 * k * k);
                    acc = acc + theta(k) * shift * r(big_n - k) * &cs[(big_n - k) as usize];
                }
                cs.push(acc / (Scalar::one() - r(big_n)));
            }
            cs.into_iter()
                .enumerate()
                .map(|(n, coefficient)| UniversalTerm { n, coefficient })
                .collect()
        }
    }
}

fn sl2_check(v: &WeightModule) -> Result<()> {
    let d = v.datum();
    if d.n() != 2 || d.flavor() != Flavor::Sl {
        return Err(Error::Precondition(
            "universal sl₂ fusion needs sl₂ modules".into(),
        ));
    }
    Ok(())
}

/// Value of a component coefficient at module weights `a` (under `F^n`) and `m` (under `E^n`).
pub fn coefficient_at(term: &UniversalTerm, mode: Mode, a: i64, m: i64) -> Result<Scalar> {
    let images = match mode {
        Mode::Classical => vec![(Var::p(1), Scalar::int(m))],
        Mode::Quantum => vec![(Var::p(1), Scalar::q_pow(m)), (Var::p(2), Scalar::q_pow(a))],
    };
    term.coefficient.substitute(&images)
}

/// `Σ_n F^n ⊗ c_n E^n` evaluated on `V ⊗ W`.
pub fn evaluate_universal(
    terms: &[UniversalTerm],
    v: &WeightModule,
    w: &WeightModule,
) -> Result<Matrix> {
    sl2_check(v)?;
    sl2_check(w)?;
    let mode = v.mode();
    let (dv, dw) = (v.dim(), w.dim());
    let mut out = Matrix::zeros(dv * dw, dv * dw);
    for term in terms {
        let mut fpow = Matrix::identity(dv);
        let mut epow = Matrix::identity(dw);
        for _ in 0..term.n {
            fpow = v.f(0).mul(&fpow);
            epow = w.e(0).mul(&epow);
        }
        let block = fpow.kron(&epow);
        if block.is_zero() {
            continue;
        }
        for i in 0..dv {
            for j in 0..dw {
                let col = i * dw + j;
                let c = coefficient_at(term, mode, v.alpha_pair(0, i), w.alpha_pair(0, j))?;
                for r in 0..dv * dw {
                    let x = block.get(r, col);
                    if !x.is_zero() {
                        out.set(r, col, out.get(r, col) + &(x * &c));
                    }
                }
            }
        }
    }
    Ok(out)
}

/// One degree of the Shapovalov cross-check.
#[derive(Clone, Debug)]
pub struct ShapovalovRow {
    pub n: usize,
    /// Shapovalov form `⟨F^n x⁺, F^n x⁺⟩`.
    pub gram: Scalar,
    /// Coefficient of `F^n x⁺ ⊗ E^n x⁻` in the inverse of the natural pairing.
    pub inverse_form: Scalar,
    /// Coefficient of the same vector in `J(0)(x⁺_λ ⊗ x⁻_{−λ})`.
    pub fusion: Scalar,
}

impl ShapovalovRow {
    pub fn residual(&self) -> Scalar {
        &self.inverse_form - &self.fusion
    }
}

/// Compares the inverse of the pairing `M⁺_λ ⊗ M⁻_{−λ} → C` with
/// `J(0)(x⁺_λ ⊗ x⁻_{−λ})` degree by degree. With `x⁻` dual to `x⁺` and the
/// dual action through the antipode, `⟨E^n x⁻, F^n x⁺⟩ = ⟨x⁻, S(E)^n F^n x⁺⟩`,
/// which is `(−1)^n` times the Shapovalov form classically and carries the
/// extra `K⁻¹` eigenvalues quantumly.
pub fn shapovalov_vs_fusion(
    datum: &RootDatum,
    depth: usize,
    mode: Mode,
) -> Result<Vec<ShapovalovRow>> {
    if datum.n() != 2 || datum.flavor() != Flavor::Sl {
        return Err(Error::Precondition(
            "the Shapovalov cross-check is for sl₂".into(),
        ));
    }
    let slice = verma_slice(datum, depth as i64, mode)?;
    let hw = slice.highest_weight();
    let alpha = rats(&[1, -1]);
    let terms = universal_sl2_fusion(depth, mode);
    let lam = Scalar::var(Var::l(1));
    let t = Scalar::var(Var::t(1));
    terms
        .iter()
        .map(|term| {
            let n = term.n;
            let gram = shapovalov_gram(&slice, &[n as i64])?.get(0, 0).clone();
            let mut y: VermaVector = BTreeMap::from([(vec![0u8; n], Scalar::one())]);
            for level in (1..=n).rev() {
                let k_inv = match mode {
                    Mode::Classical => Scalar::one(),
                    Mode::Quantum => hw.q_pair(-1, &[level as i64], &alpha)?,
                };
                let scaled: VermaVector =
                    y.iter().map(|(w, c)| (w.clone(), -(c * &k_inv))).collect();
                y = hw.apply_e(0, &scaled);
            }
            let pairing = hw.pair(&[], &y);
            let inverse_form = pairing.inv()?;
            // λ-argument 0; x⁺ has weight λ, x⁻ has weight −λ.
            let images = match mode {
                Mode::Classical => vec![(Var::l(1), Scalar::zero()), (Var::p(1), -lam.clone())],
                Mode::Quantum => vec![
                    (Var::t(1), Scalar::one()),
                    (Var::p(1), t.pow(-1)),
                    (Var::p(2), t.clone()),
                ],
            };
            let fusion = term.coefficient.substitute(&images)?;
            Ok(ShapovalovRow {
                n,
                gram,
                inverse_form,
                fusion,
            })
        })
        .collect()
}
