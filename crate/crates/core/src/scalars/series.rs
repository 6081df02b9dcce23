//! Truncated power series in the deformation step γ (variable `g`).
//!
//! Classical scalars expand through λ ↦ λ/γ. Quantum scalars expand through
//! q = e^{−εγ/2} together with λ ↦ λ/γ, so `t_a = q^{λ_a}` becomes the exact
//! symbol `w_a = e^{−ελ_a/2}` and `s^k` becomes Σ_j (−kε/4)^j γ^j / j!.

use std::fmt;

use num::{BigInt, BigRational, One, Zero};

use super::poly::{Mono, Poly};
use super::scalar::{Mode, Scalar};
use super::var::{Var, VarKind, NVARS};
use crate::{Error, Result};

/// `Σ_{k=0}^{N} c_k γ^k + O(γ^{N+1})`.
#[derive(Clone, PartialEq, Eq)]
pub struct GammaSeries {
    coeffs: Vec<Scalar>,
}

impl GammaSeries {
    pub fn zero(order: usize) -> GammaSeries {
        GammaSeries {
            coeffs: vec![Scalar::zero(); order + 1],
        }
    }

    pub fn constant(c: Scalar, order: usize) -> GammaSeries {
        let mut s = GammaSeries::zero(order);
        s.coeffs[0] = c;
        s
    }

    pub fn from_coeffs(mut coeffs: Vec<Scalar>, order: usize) -> GammaSeries {
        coeffs.resize(order + 1, Scalar::zero());
        GammaSeries { coeffs }
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, k: usize) -> &Scalar {
        &self.coeffs[k]
    }

    pub fn coeffs(&self) -> &[Scalar] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Scalar::is_zero)
    }

    /// Index of the first nonzero coefficient.
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    pub fn add(&self, o: &GammaSeries) -> GammaSeries {
        let n = self.order().min(o.order());
        GammaSeries {
            coeffs: (0..=n).map(|k| &self.coeffs[k] + &o.coeffs[k]).collect(),
        }
    }

    pub fn sub(&self, o: &GammaSeries) -> GammaSeries {
        let n = self.order().min(o.order());
        GammaSeries {
            coeffs: (0..=n).map(|k| &self.coeffs[k] - &o.coeffs[k]).collect(),
        }
    }

    pub fn mul(&self, o: &GammaSeries) -> GammaSeries {
        let n = self.order().min(o.order());
        let coeffs = (0..=n)
            .map(|k| (0..=k).map(|i| &self.coeffs[i] * &o.coeffs[k - i]).sum())
            .collect();
        GammaSeries { coeffs }
    }

    pub fn scale(&self, c: &Scalar) -> GammaSeries {
        GammaSeries {
            coeffs: self.coeffs.iter().map(|x| x * c).collect(),
        }
    }

    /// Quotient `self/d`; both series must have been computed to at least
    /// `order + valuation(d)` so the quotient is exact through `order`.
    pub fn div_to(&self, d: &GammaSeries, order: usize) -> Result<GammaSeries> {
        let v = d.valuation().ok_or(Error::DivisionByZero)?;
        if let Some(vn) = self.valuation() {
            if vn < v {
                return Err(Error::NotRegular(format!(
                    "numerator has order {vn} but denominator has order {v}"
                )));
            }
        } else {
            return Ok(GammaSeries::zero(order));
        }
        if self.order() < order + v || d.order() < order + v {
            return Err(Error::Internal("series too short for quotient".into()));
        }
        let lead = d.coeffs[v].inv()?;
        let mut out: Vec<Scalar> = Vec::with_capacity(order + 1);
        for k in 0..=order {
            let mut acc = self.coeffs[k + v].clone();
            for i in 0..k {
                let dc = &d.coeffs[k - i + v];
                if !dc.is_zero() {
                    acc = acc - &out[i] * dc;
                }
            }
            out.push(acc * &lead);
        }
        Ok(GammaSeries { coeffs: out })
    }

    pub fn truncate(&self, order: usize) -> GammaSeries {
        GammaSeries {
            coeffs: self.coeffs[..=order.min(self.order())].to_vec(),
        }
    }

    /// Collapses to a scalar polynomial in `g` (dropping the O-term).
    pub fn to_scalar(&self) -> Scalar {
        let g = Scalar::var(Var::g());
        let mut acc = Scalar::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * &g + c;
        }
        acc
    }
}

impl fmt::Debug for GammaSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, c) in self.coeffs.iter().enumerate() {
            if k > 0 {
                write!(f, " + ")?;
            }
            write!(f, "({c})*g^{k}")?;
        }
        write!(f, " + O(g^{})", self.order() + 1)
    }
}

fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// Expands `x` in γ through order `order`.
pub fn gamma_expand(x: &Scalar, order: usize) -> Result<GammaSeries> {
    let vars = x.vars();
    let has_l = vars.iter().any(|v| matches!(v.kind(), VarKind::Lambda(_)));
    if x.mode() == Mode::Quantum {
        if has_l {
            return Err(Error::Precondition(
                "scalar mixes classical and quantum dynamical variables".into(),
            ));
        }
        if vars
            .iter()
            .any(|v| matches!(v.kind(), VarKind::W(_) | VarKind::Gamma))
        {
            return Err(Error::Precondition(
                "scalar already contains w or g symbols".into(),
            ));
        }
        return quantum_expand(x, order);
    }
    if vars.iter().any(|v| matches!(v.kind(), VarKind::Gamma)) {
        return Err(Error::Precondition("scalar already contains g".into()));
    }
    classical_expand(x, order)
}

fn lambda_degree(m: &Mono) -> u32 {
    (1..=super::var::MAX_COORDS)
        .map(|i| m.exp(Var::l(i)) as u32)
        .sum()
}

/// Splits `p(λ/γ)·γ^{deg}` into its γ-coefficients (a polynomial in γ).
fn homogenized(p: &Poly) -> (u32, Vec<Poly>) {
    let d = p
        .terms()
        .iter()
        .map(|(m, _)| lambda_degree(m))
        .max()
        .unwrap_or(0);
    let mut buckets: Vec<Vec<(Mono, BigRational)>> = vec![Vec::new(); d as usize + 1];
    for (m, c) in p.terms() {
        buckets[(d - lambda_degree(m)) as usize].push((*m, c.clone()));
    }
    (d, buckets.into_iter().map(Poly::from_terms).collect())
}

fn classical_expand(x: &Scalar, order: usize) -> Result<GammaSeries> {
    let (dn, n) = homogenized(x.numer());
    let (dd, d) = homogenized(x.denom());
    // x(λ/γ) = γ^{dd-dn} · n(γ)/d(γ), where d(0) ≠ 0.
    if dn > dd {
        return Err(Error::NotRegular(format!("{x} has a pole at g=0")));
    }
    let shift = (dd - dn) as usize;
    let to_series = |ps: Vec<Poly>, len: usize| {
        let mut cs: Vec<Scalar> = ps.into_iter().map(Scalar::from_poly).collect();
        cs.resize(len + 1, Scalar::zero());
        cs.truncate(len + 1);
        GammaSeries { coeffs: cs }
    };
    let ns = to_series(n, order);
    let ds = to_series(d, order);
    let q = ns.div_to(&ds, order)?;
    let mut coeffs = vec![Scalar::zero(); shift.min(order + 1)];
    coeffs.extend(q.coeffs.into_iter().take(order + 1 - coeffs.len()));
    Ok(GammaSeries::from_coeffs(coeffs, order))
}

/// γ-coefficients of a polynomial in s, t under the quantum substitution.
fn quantum_poly_series(p: &Poly, order: usize) -> GammaSeries {
    let e = Scalar::var(Var::e());
    let mut coeffs = Vec::with_capacity(order + 1);
    // Regroup terms by s-exponent: p = Σ_k s^k·P_k(t, …) with P_k mapped t→w.
    let mut by_k: Vec<(i64, Poly)> = Vec::new();
    for (m, c) in p.terms() {
        let k = m.exp(Var::s()) as i64;
        let mut exps = *m.exps();
        exps[Var::s().index()] = 0;
        for i in 1..=super::var::MAX_COORDS {
            let t = Var::t(i).index();
            let w = Var::w(i).index();
            exps[w] += exps[t];
            exps[t] = 0;
        }
        let term = Poly::monomial(Mono::from_exps(exps), c.clone());
        match by_k.iter_mut().find(|(kk, _)| *kk == k) {
            Some((_, acc)) => *acc = acc.add(&term),
            None => by_k.push((k, term)),
        }
    }
    let mut fact = BigRational::one();
    for j in 0..=order {
        if j > 0 {
            fact *= rat(j as i64);
        }
        let mut acc = Poly::zero();
        for (k, pk) in &by_k {
            let f = num::pow::pow(rat(*k), j) / &fact;
            if !f.is_zero() {
                acc = acc.add(&pk.scale(&f));
            }
        }
        // Multiply by (−ε/4)^j.
        let factor = (Scalar::ratio(-1, 4) * &e).pow(j as i64);
        coeffs.push(Scalar::from_poly(acc) * factor);
    }
    GammaSeries { coeffs }
}

fn quantum_expand(x: &Scalar, order: usize) -> Result<GammaSeries> {
    let cap = order + 64;
    let d_full = quantum_poly_series(x.denom(), cap);
    let v = d_full
        .valuation()
        .ok_or_else(|| Error::Internal("denominator expands to zero".into()))?;
    let n = quantum_poly_series(x.numer(), order + v);
    let d = d_full.truncate(order + v);
    n.div_to(&d, order)
}

/// Derivation rules for ∂/∂λ_c over the {l, e, w} field: `∂l_c = 1` and
/// `∂w_c = −(ε/2)·w_c`, with `eps` standing for ε.
pub fn lambda_derivation(c: usize, eps: &Scalar) -> Vec<(Var, Scalar)> {
    vec![
        (Var::l(c), Scalar::one()),
        (
            Var::w(c),
            Scalar::ratio(-1, 2) * eps * Scalar::var(Var::w(c)),
        ),
    ]
}

#[allow(dead_code)]
const _: () = assert!(NVARS == 32);

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::sc;

    #[test]
    fn classical_geometric_expansion() {
        let s = gamma_expand(&sc("1/(l1+1)"), 2).unwrap();
        assert!(s.coeff(0).is_zero());
        assert_eq!(*s.coeff(1), sc("1/l1"));
        assert_eq!(*s.coeff(2), sc("-1/l1^2"));
    }

    #[test]
    fn constants_are_flat() {
        let s = gamma_expand(&Scalar::one(), 3).unwrap();
        assert!(s.coeff(0).is_one());
        assert!((1..=3).all(|k| s.coeff(k).is_zero()));
    }

    #[test]
    fn classical_pole_is_reported() {
        assert!(matches!(
            gamma_expand(&sc("l1"), 2),
            Err(Error::NotRegular(_))
        ));
    }

    #[test]
    fn quantum_q_expands_to_exponential() {
        // q = s^2 = e^{−εγ/2}.
        let s = gamma_expand(&sc("s^2"), 2).unwrap();
        assert_eq!(*s.coeff(0), Scalar::one());
        assert_eq!(*s.coeff(1), sc("-e/2"));
        assert_eq!(*s.coeff(2), sc("e^2/8"));
    }

    #[test]
    fn quantum_pole_is_reported() {
        assert!(matches!(
            gamma_expand(&sc("1/(s^2-1)"), 1),
            Err(Error::NotRegular(_))
        ));
    }
}
