//! Macdonald operators `M_r`, their eigenvalues and the Macdonald polynomials.
//!
//! Operators act on functions of `x_i = q^{2λ_i}`; `T_I` multiplies `x_i`
//! (`i ∈ I`) by `q²`. The parameter `t` is the variable `mt` unless a value
//! is supplied.

use std::collections::BTreeMap;

use num::BigRational;

use crate::fusion::abrr_fusion;
use crate::reps::{ext_power, sym_power, WeightModule};
use crate::rootdata::RootDatum;
use crate::scalars::{Matrix, Mode, Mono, Poly, Scalar, Var, MAX_COORDS};
use crate::verify::ResidualReport;
use crate::{Error, Result};

use super::diffop::diffop_report;
use super::transfer::{gamma_m, invert_q_and_lambda, transfer_diffop, weyl_denominator};
use super::DiffOp;

/// Subsets of `0..n` with `r` elements, in lexicographic order.
pub fn subsets_of_size(n: usize, r: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    for m in 0..1usize << n {
        if m.count_ones() as usize == r {
            out.push((0..n).filter(|a| m >> a & 1 == 1).collect());
        }
    }
    out.sort();
    out
}

fn check_rank(n: usize) -> Result<()> {
    if n == 0 || n > MAX_COORDS {
        return Err(Error::Precondition(format!(
            "Macdonald operators need 1 ≤ n ≤ {MAX_COORDS}"
        )));
    }
    Ok(())
}

fn x(i: usize) -> Scalar {
    Scalar::var(Var::x(i + 1))
}

/// The default Macdonald parameter `mt`.
pub fn mac_t() -> Scalar {
    Scalar::var(Var::mac_t())
}

/// `t = q^{m+1}`.
pub fn t_power(m: usize) -> Scalar {
    Scalar::q_pow(m as i64 + 1)
}

/// `M_r = Σ_{|I|=r} Π_{i∈I, j∉I} (t x_i − t⁻¹ x_j)/(x_i − x_j) T_I`.
pub fn macdonald_operator(n: usize, r: usize, t: &Scalar) -> Result<DiffOp> {
    check_rank(n)?;
    if r == 0 || r > n {
        return Err(Error::Precondition(format!("need 1 ≤ r ≤ n, got r = {r}")));
    }
    let tinv = t.inv()?;
    let mut out = DiffOp::zero(n, 1);
    for set in subsets_of_size(n, r) {
        let mut c = Scalar::one();
        for &i in &set {
            for j in (0..n).filter(|j| !set.contains(j)) {
                c = c * ((t * &x(i) - &tinv * &x(j)) / (x(i) - x(j)));
            }
        }
        let nu = (0..n)
            .map(|a| BigRational::from_integer(i64::from(set.contains(&a)).into()))
            .collect();
        out = out.add(&DiffOp::scalar_term(nu, c))?;
    }
    Ok(out)
}

/// `Σ_{|I|=r} Π_{i∈I} q^{2μ_i} t^{n+1−2i}` (with 1-based `i`).
pub fn macdonald_eigenvalue(mu: &[usize], r: usize, t: &Scalar) -> Scalar {
    let n = mu.len();
    subsets_of_size(n, r)
        .into_iter()
        .map(|set| {
            set.iter()
                .map(|&i| Scalar::q_pow(2 * mu[i] as i64) * t.pow(n as i64 - 1 - 2 * i as i64))
                .product::<Scalar>()
        })
        .sum()
}

/// Partitions of `k` with at most `n` parts, padded with zeros to length `n`.
pub fn partitions(k: usize, n: usize) -> Vec<Vec<usize>> {
    fn go(k: usize, max: usize, parts: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if k == 0 {
            let mut p = cur.clone();
            p.resize(p.len() + parts, 0);
            out.push(p);
            return;
        }
        if parts == 0 {
            return;
        }
        for first in (1..=max.min(k)).rev() {
            cur.push(first);
            go(k - first, first, parts - 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(k, k, n, &mut Vec::new(), &mut out);
    out
}

/// `ν ≤ μ` in dominance order (equal sizes assumed).
pub fn dominated_by(nu: &[usize], mu: &[usize]) -> bool {
    let (mut a, mut b) = (0usize, 0usize);
    for (x, y) in nu.iter().zip(mu) {
        a += x;
        b += y;
        if a > b {
            return false;
        }
    }
    true
}

/// `x^e` for a Laurent exponent vector.
pub fn x_monomial(e: &[i64]) -> Scalar {
    let factors: Vec<(Var, i64)> = e
        .iter()
        .enumerate()
        .filter(|(_, &k)| k != 0)
        .map(|(i, &k)| (Var::x(i + 1), k))
        .collect();
    Scalar::monomial(&factors)
}

fn distinct_permutations(nu: &[usize]) -> Vec<Vec<usize>> {
    let mut v = nu.to_vec();
    v.sort();
    let mut out = vec![v.clone()];
    // Next lexicographic permutation until exhausted.
    loop {
        let Some(i) = (0..v.len().saturating_sub(1))
            .rev()
            .find(|&i| v[i] < v[i + 1])
        else {
            break;
        };
        let j = (i + 1..v.len())
            .rev()
            .find(|&j| v[j] > v[i])
            .expect("successor exists");
        v.swap(i, j);
        v[i + 1..].reverse();
        out.push(v.clone());
    }
    out
}

/// Monomial symmetric function `m_ν(x_1..x_n)`.
pub fn monomial_symmetric(nu: &[usize]) -> Scalar {
    distinct_permutations(nu)
        .into_iter()
        .map(|p| x_monomial(&p.iter().map(|&k| k as i64).collect::<Vec<_>>()))
        .sum()
}

/// Coefficients of a polynomial in `x_1..x_n` whose denominator is `x`-free.
pub fn x_coefficients(f: &Scalar, n: usize) -> Result<BTreeMap<Vec<i64>, Scalar>> {
    let xs: Vec<Var> = (1..=n).map(Var::x).collect();
    if xs.iter().any(|&v| f.denom().has_var(v)) {
        return Err(Error::Precondition(
            "not a polynomial in the x-variables".into(),
        ));
    }
    let den = Scalar::from_poly(f.denom().clone());
    let mut groups: BTreeMap<Vec<i64>, Vec<(Mono, BigRational)>> = BTreeMap::new();
    for (m, c) in f.numer().terms() {
        let key: Vec<i64> = xs.iter().map(|&v| i64::from(m.exp(v))).collect();
        let mut rest = *m.exps();
        for v in &xs {
            rest[v.index()] = 0;
        }
        groups
            .entry(key)
            .or_default()
            .push((Mono::from_exps(rest), c.clone()));
    }
    let mut out = BTreeMap::new();
    for (k, terms) in groups {
        let c = Scalar::from_poly(Poly::from_terms(terms)) / &den;
        if !c.is_zero() {
            out.insert(k, c);
        }
    }
    Ok(out)
}

/// Monic Macdonald polynomial `P_μ(x; q², t²)`: the symmetric eigenfunction of
/// `M_1` with leading term `x^μ`, solved on the dominance-triangular span of
/// `m_ν`, `ν ≤ μ`.
pub fn macdonald_polynomial(mu: &[usize], t: &Scalar) -> Result<Scalar> {
    let n = mu.len();
    check_rank(n)?;
    if mu.windows(2).any(|w| w[0] < w[1]) {
        return Err(Error::Precondition(
            "μ must be a partition (non-increasing)".into(),
        ));
    }
    let size: usize = mu.iter().sum();
    let lower: Vec<Vec<usize>> = partitions(size, n)
        .into_iter()
        .filter(|nu| dominated_by(nu, mu))
        .collect();
    let m1 = macdonald_operator(n, 1, t)?;
    let eig = macdonald_eigenvalue(mu, 1, t);
    let images: Vec<BTreeMap<Vec<i64>, Scalar>> = lower
        .iter()
        .map(|nu| x_coefficients(&m1.apply(&monomial_symmetric(nu))?, n))
        .collect::<Result<_>>()?;
    let key = |nu: &[usize]| nu.iter().map(|&k| k as i64).collect::<Vec<i64>>();
    // `lower` lists partitions in decreasing lexicographic order, a linear
    // extension of dominance, so each coefficient depends only on earlier ones.
    let mut coeffs: Vec<Scalar> = Vec::with_capacity(lower.len());
    for (k, kappa) in lower.iter().enumerate() {
        if k == 0 {
            if kappa.as_slice() != mu {
                return Err(Error::Internal(
                    "partition order does not start at μ".into(),
                ));
            }
            coeffs.push(Scalar::one());
            continue;
        }
        let kk = key(kappa);
        let mut acc = Scalar::zero();
        for (j, c) in coeffs.iter().enumerate() {
            if let Some(a) = images[j].get(&kk) {
                acc = acc + a * c;
            }
        }
        let diag = images[k].get(&kk).cloned().unwrap_or_else(Scalar::zero) - &eig;
        if diag.is_zero() {
            return Err(Error::DegenerateWeight(format!(
                "eigenvalue collision at {kappa:?}"
            )));
        }
        coeffs.push(-acc / diag);
    }
    Ok(lower
        .iter()
        .zip(&coeffs)
        .map(|(nu, c)| c * &monomial_symmetric(nu))
        .sum())
}

/// Laurent monomials `x^e` with `Σ|e_i| ≤ degree`.
pub fn laurent_exponents(n: usize, degree: usize) -> Vec<Vec<i64>> {
    let d = degree as i64;
    let mut out = vec![vec![]];
    for _ in 0..n {
        let mut next = Vec::new();
        for e in &out {
            let used: i64 = e.iter().map(|x: &i64| x.abs()).sum();
            for k in -(d - used)..=d - used {
                let mut f = e.clone();
                f.push(k);
                next.push(f);
            }
        }
        out = next;
    }
    out
}

/// `[M_r, M_s]` as an operator and on all Laurent monomials of degree ≤ `degree`.
pub fn commutator_check(
    n: usize,
    r: usize,
    s: usize,
    t: &Scalar,
    degree: usize,
) -> Result<ResidualReport> {
    let mr = macdonald_operator(n, r, t)?;
    let ms = macdonald_operator(n, s, t)?;
    let ops = vec![format!("M_{r}"), format!("M_{s}"), format!("n={n}")];
    let op = diffop_report("commutator", &ops, &mr.compose(&ms)?, &ms.compose(&mr)?)?;
    use rayon::prelude::*;
    let values: Vec<Result<Scalar>> = laurent_exponents(n, degree)
        .into_par_iter()
        .map(|e| {
            let f = x_monomial(&e);
            Ok(mr.apply(&ms.apply(&f)?)? - ms.apply(&mr.apply(&f)?)?)
        })
        .collect();
    let values: Vec<Scalar> = values.into_iter().collect::<Result<_>>()?;
    let res = Matrix::from_rows(vec![values])?;
    let mono = ResidualReport::from_residual("commutator-on-monomials", &ops, &res, 0);
    Ok(ResidualReport::combine(
        "macdonald-commutativity",
        &[op, mono],
    ))
}

/// `M_r P_μ − E_r(μ) P_μ` for every `r`.
pub fn eigen_check(mu: &[usize], t: &Scalar) -> Result<ResidualReport> {
    let n = mu.len();
    let p = macdonald_polynomial(mu, t)?;
    let ops = vec![format!("P{mu:?}")];
    let mut values = Vec::new();
    for r in 1..=n {
        let m = macdonald_operator(n, r, t)?;
        values.push(m.apply(&p)? - macdonald_eigenvalue(mu, r, t) * &p);
    }
    let res = Matrix::from_rows(vec![values])?;
    Ok(ResidualReport::from_residual(
        "macdonald-eigen",
        &ops,
        &res,
        0,
    ))
}

/// `S^{k}C^n`, with the trivial module for `k = 0`.
fn sym_or_trivial(datum: &RootDatum, k: usize) -> Result<WeightModule> {
    if k == 0 {
        return Ok(WeightModule::trivial(datum, Mode::Quantum));
    }
    sym_power(&WeightModule::vector(datum, Mode::Quantum), k)
}

/// Both sides of `D_{Λ^r C^n}(q⁻¹, −λ) = δ_q γ_m ∘ M_r ∘ γ_m⁻¹ δ_q⁻¹` with
/// `t = q^{m+1}` and the transfer operator taken on `V = S^{mn}C^n`.
pub fn transfer_macdonald_sides(n: usize, r: usize, m: usize) -> Result<(DiffOp, DiffOp)> {
    let datum = RootDatum::sl(n)?;
    let w = ext_power(&WeightModule::vector(&datum, Mode::Quantum), r)?;
    let v = sym_or_trivial(&datum, m * n)?;
    if v.zero_weight_indices().len() != 1 {
        return Err(Error::Internal(
            "zero-weight space is not one-dimensional".into(),
        ));
    }
    let lhs = invert_q_and_lambda(&transfer_diffop(&v, &w, abrr_fusion)?)?;
    let mr = macdonald_operator(n, r, &t_power(m))?.to_datum_coords(&datum)?;
    let f = weyl_denominator(&datum)? * gamma_m(&datum, m)?;
    let rhs = mr.conjugate(&f)?;
    Ok((lhs, rhs))
}

pub fn transfer_macdonald_check(n: usize, r: usize, m: usize) -> Result<ResidualReport> {
    let (lhs, rhs) = transfer_macdonald_sides(n, r, m)?;
    diffop_report(
        "corollary91",
        &[format!("n={n}"), format!("r={r}"), format!("m={m}")],
        &lhs,
        &rhs,
    )
}
