//! Weighted trace functions of quantum sl₂ as truncated series.
//!
//! `Ψ_V(λ, μ) = Tr(Φ^V_μ q^{2λ})` restricted to `V[0] ⊗ V*[0]` (one-dimensional
//! here) is `q^{2(λ,μ)} Σ_k a_k(μ) z^k` with `z = q^{−2(λ,α)}` and `a_k` the
//! diagonal coefficient of `Φ^{v₀}_μ` on `F^k x_μ`. Coefficients are scalars
//! in `m1 = q^{μ(h)}`; the variable of λ is `t1 = q^{λ(h)}`, so `z = t1^{−2}`.
//!
//! Residuals are expanded in `y = t1^{−1}` (and `m1^{−1}` for the second
//! variable) so that the half-integral shifts of the dual equations stay
//! Laurent monomials.

use std::collections::BTreeMap;

use num::BigRational;

use crate::fusion::{abrr_fusion, coefficient_at, universal_sl2_fusion};
use crate::reps::{solve_intertwiner, WeightModule};
use crate::rootdata::Flavor;
use crate::scalars::{GammaSeries, Matrix, Mode, Scalar, Var};
use crate::verify::ResidualReport;
use crate::{Error, Result};

use super::transfer::{reflect_rho, transfer_diffop};
use super::DiffOp;

/// Largest supported truncation depth.
pub const MAX_TRACE_DEPTH: usize = 6;

/// `q^{2(λ, aμ + bρ)} Σ_{k≤D} c_k(μ) z^k`.
#[derive(Clone, Debug, PartialEq)]
pub struct TraceSeries {
    pub module: String,
    /// Coefficient `a` of μ in the stripped prefactor.
    pub mu_coeff: i64,
    /// Coefficient `b` of ρ in the stripped prefactor.
    pub rho_coeff: i64,
    /// `c_0..c_D`.
    pub coeffs: Vec<Scalar>,
}

impl TraceSeries {
    pub fn depth(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "schema": "dybe.trace-series/1",
            "module": self.module,
            "prefactor": { "mu": self.mu_coeff, "rho": self.rho_coeff },
            "variable": "z = t1^-2",
            "coefficients": self.coeffs.iter().map(Scalar::to_text).collect::<Vec<_>>(),
        })
    }
}

fn check_module(v: &WeightModule, depth: usize) -> Result<usize> {
    let d = v.datum();
    if d.n() != 2 || d.flavor() != Flavor::Sl || v.mode() != Mode::Quantum {
        return Err(Error::Precondition(
            "trace functions need a quantum sl₂ module".into(),
        ));
    }
    if depth > MAX_TRACE_DEPTH {
        return Err(Error::Precondition(format!(
            "depth {depth} exceeds {MAX_TRACE_DEPTH}"
        )));
    }
    match v.zero_weight_indices().as_slice() {
        [i] => Ok(*i),
        _ => Err(Error::Precondition(format!(
            "{} needs a one-dimensional zero-weight space",
            v.label()
        ))),
    }
}

fn t_to_m(x: &Scalar) -> Result<Scalar> {
    x.substitute(&[(Var::t(1), Scalar::var(Var::m(1)))])
}

/// `Ψ_V(λ, μ)` through `z^depth`.
pub fn psi_series(v: &WeightModule, depth: usize) -> Result<TraceSeries> {
    let i0 = check_module(v, depth)?;
    let phi = solve_intertwiner(v, i0)?;
    // Φ(x) as a map from powers p (for F^p x) to vectors of V.
    let mut state: BTreeMap<usize, Vec<Scalar>> = BTreeMap::new();
    for term in phi.terms() {
        let p = term.word.len();
        if term.word.iter().any(|&j| j != 0) {
            return Err(Error::Internal(
                "unexpected word in an sl₂ intertwiner".into(),
            ));
        }
        state.insert(p, term.vector.clone());
    }
    let t_inv = Scalar::var(Var::t(1)).pow(-1);
    let f = v.f(0);
    let mut coeffs = Vec::with_capacity(depth + 1);
    for k in 0..=depth {
        coeffs.push(
            state
                .get(&k)
                .map(|x| x[i0].clone())
                .unwrap_or_else(Scalar::zero),
        );
        if k == depth {
            break;
        }
        let mut next: BTreeMap<usize, Vec<Scalar>> = BTreeMap::new();
        let mut add = |p: usize, vec: Vec<Scalar>| {
            if p > depth || vec.iter().all(Scalar::is_zero) {
                return;
            }
            let slot = next
                .entry(p)
                .or_insert_with(|| vec![Scalar::zero(); vec.len()]);
            for (a, b) in slot.iter_mut().zip(vec) {
                *a = &*a + &b;
            }
        };
        for (&p, vec) in &state {
            add(p + 1, vec.clone());
            let kinv = &t_inv * &Scalar::s_pow(4 * p as i64);
            add(p, f.apply(vec).iter().map(|x| x * &kinv).collect());
        }
        state = next;
    }
    let coeffs = coeffs.iter().map(t_to_m).collect::<Result<_>>()?;
    Ok(TraceSeries {
        module: v.label().to_string(),
        mu_coeff: 1,
        rho_coeff: 0,
        coeffs,
    })
}

/// `Q(μ) = m^{op}(1⊗S⁻¹)(J(−μ−ρ))` on the zero-weight line of `dual`, in `m1`.
///
/// On a vector of weight `a` the component `F^n ⊗ c_n E^n` contributes
/// `c_n(a, −a) (S⁻¹E)^n F^n` with `S⁻¹(E) = −K⁻¹E`.
pub fn q_factor(dual: &WeightModule) -> Result<Scalar> {
    let i0 = check_module(dual, 0)?;
    let terms = universal_sl2_fusion(dual.dim(), Mode::Quantum);
    let s_inv_e = dual.k_matrix(0, -1).mul(dual.e(0)).neg();
    let a = dual.alpha_pair(0, i0);
    let mut acc = Scalar::zero();
    for term in &terms {
        let mut op = Matrix::identity(dual.dim());
        for _ in 0..term.n {
            op = s_inv_e.mul(&op).mul(dual.f(0));
        }
        let entry = op.get(i0, i0).clone();
        if !entry.is_zero() {
            acc = acc + coefficient_at(term, Mode::Quantum, a, -a)? * entry;
        }
    }
    t_to_m(&reflect_rho(&acc, dual.datum())?)
}

/// `F_V(λ, μ) = Q⁻¹(μ)|_{V*} Ψ_V(λ, −μ−ρ) δ_q(λ)` through `z^depth`.
pub fn trace_function_series(v: &WeightModule, depth: usize) -> Result<TraceSeries> {
    let psi = psi_series(v, depth)?;
    let q = q_factor(&v.dual())?;
    // μ ↦ −μ−ρ: m1 ↦ q^{−1} m1⁻¹; the prefactor becomes q^{−2(λ,μ)−2(λ,ρ)}.
    let flip = [(
        Var::m(1),
        Scalar::var(Var::m(1)).pow(-1) * Scalar::s_pow(-2),
    )];
    let a: Vec<Scalar> = psi
        .coeffs
        .iter()
        .map(|c| c.substitute(&flip))
        .collect::<Result<_>>()?;
    // δ_q = q^{2(λ,ρ)}(1 − z) cancels the ρ part of the prefactor.
    let qinv = q.inv()?;
    let coeffs = (0..=depth)
        .map(|k| {
            let prev = if k == 0 {
                Scalar::zero()
            } else {
                a[k - 1].clone()
            };
            (&a[k] - &prev) * &qinv
        })
        .collect();
    Ok(TraceSeries {
        module: v.label().to_string(),
        mu_coeff: -1,
        rho_coeff: 0,
        coeffs,
    })
}

/// Laurent series `Σ_{val ≤ k ≤ prec} c_k y^k`, known through `y^prec`.
#[derive(Clone, Debug)]
struct Laurent {
    val: i64,
    prec: i64,
    coeffs: Vec<Scalar>,
}

impl Laurent {
    fn coeff(&self, k: i64) -> Scalar {
        assert!(k <= self.prec, "coefficient beyond the known precision");
        if k < self.val {
            return Scalar::zero();
        }
        self.coeffs[(k - self.val) as usize].clone()
    }

    fn from_fn(val: i64, prec: i64, f: impl Fn(i64) -> Scalar) -> Laurent {
        let coeffs = if prec < val {
            Vec::new()
        } else {
            (val..=prec).map(f).collect()
        };
        Laurent { val, prec, coeffs }
    }

    fn monomial(c: Scalar, k: i64, prec: i64) -> Laurent {
        Laurent::from_fn(k, prec, |j| if j == k { c.clone() } else { Scalar::zero() })
    }

    fn mul(&self, o: &Laurent) -> Laurent {
        let val = self.val + o.val;
        let prec = (self.prec + o.val).min(o.prec + self.val);
        Laurent::from_fn(val, prec, |k| {
            let mut acc = Scalar::zero();
            for i in self.val..=k - o.val {
                let (a, b) = (self.coeff(i), o.coeff(k - i));
                if !a.is_zero() && !b.is_zero() {
                    acc = acc + a * b;
                }
            }
            acc
        })
    }

    fn add(&self, o: &Laurent) -> Laurent {
        let prec = self.prec.min(o.prec);
        Laurent::from_fn(self.val.min(o.val), prec, |k| self.coeff(k) + o.coeff(k))
    }

    fn scale(&self, c: &Scalar) -> Laurent {
        Laurent {
            val: self.val,
            prec: self.prec,
            coeffs: self.coeffs.iter().map(|x| x * c).collect(),
        }
    }

    /// `y ↦ f y`.
    fn rescale(&self, f: &Scalar) -> Laurent {
        Laurent::from_fn(self.val, self.prec, |k| self.coeff(k) * f.pow(k))
    }

    fn map(&self, f: impl Fn(&Scalar) -> Result<Scalar>) -> Result<Laurent> {
        Ok(Laurent {
            val: self.val,
            prec: self.prec,
            coeffs: self.coeffs.iter().map(f).collect::<Result<_>>()?,
        })
    }
}

/// Expansion of `x` at `v = ∞` in `y = v⁻¹`, known through `y^prec`.
fn expand_at_infinity(x: &Scalar, v: Var, prec: i64) -> Result<Laurent> {
    let y = Var::z();
    if x.has_var(y) {
        return Err(Error::Internal(
            "scalar already uses the series variable".into(),
        ));
    }
    let sub = x.substitute(&[(v, Scalar::var(y).pow(-1))])?;
    let num = sub.numer().coeffs_in(y);
    let den = sub.denom().coeffs_in(y);
    let vn = num.iter().position(|p| !p.is_zero());
    let Some(vn) = vn else {
        return Ok(Laurent::from_fn(0, prec, |_| Scalar::zero()));
    };
    let vd = den
        .iter()
        .position(|p| !p.is_zero())
        .ok_or(Error::DivisionByZero)?;
    let val = vn as i64 - vd as i64;
    if prec < val {
        return Ok(Laurent::from_fn(val, prec, |_| Scalar::zero()));
    }
    let order = (prec - val) as usize;
    let series = |p: &[crate::scalars::Poly], start: usize| {
        let coeffs: Vec<Scalar> = p
            .iter()
            .skip(start)
            .map(|c| Scalar::from_poly(c.clone()))
            .collect();
        GammaSeries::from_coeffs(coeffs, order)
    };
    let q = series(&num, vn).div_to(&series(&den, vd), order)?;
    Ok(Laurent {
        val,
        prec,
        coeffs: q.coeffs().to_vec(),
    })
}

/// The stripped series `Σ c_k(m1) y^{2k}` through `y^{2·depth+1}`.
fn as_y_series(f: &TraceSeries) -> Laurent {
    let prec = 2 * f.depth() as i64 + 1;
    Laurent::from_fn(0, prec, |k| {
        if k % 2 == 0 {
            f.coeffs[(k / 2) as usize].clone()
        } else {
            Scalar::zero()
        }
    })
}

fn shift_h(nu: &[BigRational]) -> Result<i64> {
    let k = &nu[0];
    if !k.is_integer() {
        return Err(Error::UnsupportedShift(format!(
            "shift {k} is not integral"
        )));
    }
    k.to_integer()
        .try_into()
        .map_err(|_| Error::Internal("overflow".into()))
}

fn scalar_terms(d: &DiffOp) -> Result<Vec<(i64, Scalar)>> {
    if d.dim() != 1 || d.coords() != 1 {
        return Err(Error::Internal(
            "expected a scalar sl₂ difference operator".into(),
        ));
    }
    d.terms()
        .iter()
        .map(|(nu, c)| Ok((shift_h(nu)?, c.get(0, 0).clone())))
        .collect()
}

fn series_report(
    equation: &str,
    operands: &[String],
    res: &Laurent,
    upto: i64,
) -> Result<ResidualReport> {
    let values: Vec<Scalar> = (res.val.min(0)..=upto).map(|k| res.coeff(k)).collect();
    let m = Matrix::from_rows(vec![values])?;
    Ok(ResidualReport::from_residual(equation, operands, &m, 0))
}

/// Which Macdonald-Ruijsenaars system to check.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MrSide {
    /// `D^{λ,V}_W F_V = χ_W(q^{−2μ}) F_V`.
    Primal,
    /// `D^{μ,V*}_W F_V = χ_W(q^{−2λ}) F_V`.
    Dual,
}

/// Residual of the (dual) Macdonald-Ruijsenaars equation through `z^depth`,
/// as coefficients of `y = q^{−(λ,α)}` with the prefactor `q^{−2(λ,μ)}` stripped.
pub fn mr_residual(
    v: &WeightModule,
    w: &WeightModule,
    depth: usize,
    side: MrSide,
) -> Result<ResidualReport> {
    mr_residual_of(&trace_function_series(v, depth)?, v, w, side)
}

/// [`mr_residual`] for a given stripped series `f` (prefactor `q^{−2(λ,μ)}`).
pub fn mr_residual_of(
    f: &TraceSeries,
    v: &WeightModule,
    w: &WeightModule,
    side: MrSide,
) -> Result<ResidualReport> {
    if f.mu_coeff != -1 || f.rho_coeff != 0 {
        return Err(Error::Precondition(
            "series must carry the prefactor q^{−2(λ,μ)}".into(),
        ));
    }
    let depth = f.depth();
    let g = as_y_series(f);
    let top = 2 * depth as i64;
    let ops = vec![
        v.label().to_string(),
        w.label().to_string(),
        format!("depth={depth}"),
    ];
    match side {
        MrSide::Primal => {
            let d = scalar_terms(&transfer_diffop(v, w, abrr_fusion)?)?;
            let m1 = Scalar::var(Var::m(1));
            let mut res = g.scale(&-super::transfer::character_at_mu(w)?);
            for (h, c) in d {
                // T_ν: q^{−2(λ,μ)} gains m1^{−ν(h)} and y ↦ q^{−ν(h)} y.
                let c = expand_at_infinity(&c, Var::t(1), top + 1)?;
                let moved = g.rescale(&Scalar::q_pow(-h)).scale(&m1.pow(-h));
                res = res.add(&c.mul(&moved));
            }
            series_report("mr-primal", &ops, &res, top)
        }
        MrSide::Dual => {
            // Finite-dimensional sl₂-modules are self-dual, and on a one-dimensional
            // zero-weight line D^{V*}_W only depends on the isomorphism class of V*.
            let d = scalar_terms(&transfer_diffop(v, w, abrr_fusion)?)?;
            let mut res = Laurent::from_fn(0, top + 1, |_| Scalar::zero());
            for a in 0..w.dim() {
                // χ_W(q^{−2λ}) = Σ t1^{−ν(h)} = Σ y^{ν(h)}.
                let h = w.alpha_pair(0, a);
                res = res.add(&Laurent::monomial(Scalar::int(-1), h, top + 1 + h).mul(&g));
            }
            for (h, c) in d {
                // T_ν in μ: m1 ↦ q^{ν(h)} m1 and q^{−2(λ,μ)} gains y^{ν(h)}.
                let c = t_to_m(&c)?;
                let moved = g.map(|x| {
                    let shifted =
                        x.substitute(&[(Var::m(1), Scalar::var(Var::m(1)) * Scalar::q_pow(h))])?;
                    Ok(&c * &shifted)
                })?;
                res = res.add(&Laurent::monomial(Scalar::one(), h, top + 1 + h).mul(&moved));
            }
            let upto = res.prec.min(top - 1);
            series_report("mr-dual", &ops, &res, upto)
        }
    }
}

/// Bi-expansion `B[i][j]` of the stripped trace function in `y_λ^i y_μ^j`
/// (`y_λ = t1⁻¹`, `y_μ = m1⁻¹`) for `0 ≤ i, j ≤ 2·order`.
fn bi_expansion(f: &TraceSeries, order: usize) -> Result<Vec<Vec<Scalar>>> {
    let top = 2 * order as i64;
    let g = as_y_series(f);
    let mut out = Vec::new();
    for i in 0..=top {
        let c = g.coeff(i);
        let e = expand_at_infinity(&c, Var::m(1), top)?;
        if e.val < 0 && e.coeffs.iter().any(|x| !x.is_zero()) {
            return Err(Error::Precondition(
                "trace coefficient has a pole at μ = ∞".into(),
            ));
        }
        out.push((0..=top).map(|j| e.coeff(j)).collect());
    }
    Ok(out)
}

/// `F_V(λ, μ) − F_{V*}(μ, λ)` on all bi-degrees `(i, j)` with `i, j ≤ 2·order`
/// in `(q^{−(λ,α)}, q^{−(μ,α)})`.
pub fn symmetry_check(v: &WeightModule, order: usize) -> Result<ResidualReport> {
    let f = trace_function_series(v, order)?;
    let fd = trace_function_series(&v.dual(), order)?;
    symmetry_residual(&f, &fd, order)
}

/// Compares `f(λ, μ)` with `fd(μ, λ)` on bi-degrees up to `2·order`.
pub fn symmetry_residual(
    f: &TraceSeries,
    fd: &TraceSeries,
    order: usize,
) -> Result<ResidualReport> {
    if f.depth() < order || fd.depth() < order {
        return Err(Error::IncreaseDepth(order));
    }
    let a = bi_expansion(f, order)?;
    let b = bi_expansion(fd, order)?;
    let n = a.len();
    let lhs = Matrix::from_fn(n, n, |i, j| a[i][j].clone());
    let rhs = Matrix::from_fn(n, n, |i, j| b[j][i].clone());
    let ops = vec![
        f.module.clone(),
        fd.module.clone(),
        format!("order={order}"),
    ];
    Ok(ResidualReport::from_matrices(
        "trace-symmetry",
        &ops,
        &lhs,
        &rhs,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn laurent_expansion_of_a_geometric_series() {
        let x = Scalar::one() / (Scalar::one() - Scalar::var(Var::t(1)).pow(-2));
        let e = expand_at_infinity(&x, Var::t(1), 5).unwrap();
        let want = [1, 0, 1, 0, 1, 0];
        for (k, w) in want.iter().enumerate() {
            assert_eq!(e.coeff(k as i64), Scalar::int(*w));
        }
        let y = Scalar::var(Var::t(1)).pow(3) / (Scalar::var(Var::t(1)) + Scalar::one());
        let e = expand_at_infinity(&y, Var::t(1), 1).unwrap();
        assert_eq!(e.val, -2);
        assert_eq!(e.coeff(-2), Scalar::one());
        assert_eq!(e.coeff(-1), Scalar::int(-1));
    }
}
