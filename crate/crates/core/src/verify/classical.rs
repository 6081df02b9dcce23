//! Classical checks: CDYBE, unitarity and gauge transformations of r-matrices.

use num::{BigRational, Zero};

use crate::catalog::{ClassicalRMatrix, Tensor2, Tensor3};
use crate::rootdata::{Elem, RootDatum};
use crate::scalars::{lambda_derivation, LaurentMono, MonoMap, Poly, Scalar, Var, VarKind};
use crate::{Error, Result};

use super::ResidualReport;

fn degree(x: &Scalar) -> u32 {
    x.numer().total_degree().max(x.denom().total_degree())
}

fn h_elem(h: &[BigRational]) -> Vec<(Elem, Scalar)> {
    h.iter()
        .enumerate()
        .filter(|(_, x)| !x.is_zero())
        .map(|(a, x)| (Elem { a, b: a }, Scalar::rational(x.clone())))
        .collect()
}

/// Left side of the classical dynamical Yang-Baxter equation:
/// `Σ_c (H_c^{(1)} ∂_c r^{23} − H_c^{(2)} ∂_c r^{13} + H_c^{(3)} ∂_c r^{12})
///  + [r^{12}, r^{13}] + [r^{12}, r^{23}] + [r^{13}, r^{23}]`.
pub fn cdybe_tensor(r: &ClassicalRMatrix) -> Tensor3 {
    let datum = r.datum();
    let mut out = Tensor3::zero();
    for (c, h) in datum.coords().hs().iter().enumerate() {
        let d = r.derivative(c);
        for (&(x, y), v) in d.terms() {
            for (e, hc) in h_elem(h) {
                let k = v * &hc;
                out.add_term(e, x, y, k.clone());
                out.add_term(x, e, y, -k.clone());
                out.add_term(x, y, e, k);
            }
        }
    }
    let terms: Vec<(Elem, Elem, &Scalar)> = r
        .tensor()
        .terms()
        .iter()
        .map(|(&(x, y), c)| (x, y, c))
        .collect();
    for &(xi, yi, ci) in &terms {
        for &(xj, yj, cj) in &terms {
            let c = ci * cj;
            for (z, s) in datum.bracket(xi, xj) {
                out.add_term(z, yi, yj, &c * &Scalar::int(s));
            }
            for (z, s) in datum.bracket(yi, xj) {
                out.add_term(xi, z, yj, &c * &Scalar::int(s));
            }
            for (z, s) in datum.bracket(yi, yj) {
                out.add_term(xi, xj, z, &c * &Scalar::int(s));
            }
        }
    }
    out
}

fn max_degree(t: &Tensor2) -> u32 {
    t.terms().values().map(degree).max().unwrap_or(0)
}

/// CDYBE residual as a tensor in `g ⊗ g ⊗ g`.
pub fn cdybe_residual(r: &ClassicalRMatrix) -> ResidualReport {
    let n = r.datum().n();
    ResidualReport::from_tensor(
        "cdybe",
        &[r.label().to_string()],
        &cdybe_tensor(r),
        n.pow(6),
        max_degree(r.tensor()),
    )
}

/// `r + r^{21} − εΩ`.
pub fn unitarity_check(r: &ClassicalRMatrix, eps: &Scalar) -> ResidualReport {
    let lhs = r.tensor().add(&r.tensor().flip());
    let res = lhs.sub(&Tensor2::casimir(r.datum()).scale(eps));
    let mut t3 = Tensor3::zero();
    let unit = Elem { a: 0, b: 0 };
    for (&(x, y), c) in res.terms() {
        t3.add_term(x, y, unit, c.clone());
    }
    let n = r.datum().n();
    ResidualReport::from_tensor(
        "unitarity",
        &[r.label().to_string(), eps.to_text()],
        &t3,
        n.pow(4),
        max_degree(r.tensor()),
    )
}

/// Gauge transformations of classical dynamical r-matrices.
#[derive(Clone, Debug, PartialEq)]
pub enum ClassicalGauge {
    /// Adds `Σ_{i<j} C_ij(λ) H_i ∧ H_j`; the entries are `(i, j, C_ij)` in
    /// coordinate indices and `Σ C_ij dλ_i ∧ dλ_j` must be closed.
    TwoForm(Vec<(usize, usize, Scalar)>),
    /// `r(λ − ν)` for a constant ν in coordinates (rational coefficients only).
    Shift(Vec<BigRational>),
    /// `r(λ − ν)` for trigonometric coefficients, given by `k_c = e^{εν_c/2}`
    /// so that `w_c ↦ k_c w_c`.
    ExpShift(Vec<BigRational>),
    /// `(σ⊗σ) r(σ*λ)` for a permutation σ of `0..n`.
    Weyl(Vec<usize>),
}

fn is_permutation(sigma: &[usize], n: usize) -> bool {
    let mut s = sigma.to_vec();
    s.sort();
    s == (0..n).collect::<Vec<_>>()
}

/// Coefficients of `σ H_c` in the basis `H_d`.
fn weyl_coords(datum: &RootDatum, sigma: &[usize]) -> Vec<Vec<BigRational>> {
    let n = datum.n();
    let coords = datum.coords();
    coords
        .hs()
        .iter()
        .map(|h| {
            let mut moved = vec![BigRational::zero(); n];
            for a in 0..n {
                moved[sigma[a]] = h[a].clone();
            }
            coords
                .omegas()
                .iter()
                .map(|w| w.iter().zip(&moved).map(|(x, y)| x * y).sum())
                .collect()
        })
        .collect()
}

fn weyl_substitute(x: &Scalar, coef: &[Vec<BigRational>]) -> Result<Scalar> {
    let mut images = Vec::new();
    for (c, row) in coef.iter().enumerate() {
        let lc = Var::l(c + 1);
        if x.has_var(lc) {
            let img: Scalar = row
                .iter()
                .enumerate()
                .map(|(d, k)| Scalar::rational(k.clone()) * Scalar::var(Var::l(d + 1)))
                .sum();
            images.push((lc, img));
        }
        let wc = Var::w(c + 1);
        if x.has_var(wc) {
            let mut img = Scalar::one();
            for (d, k) in row.iter().enumerate() {
                if !k.is_integer() {
                    return Err(Error::InvalidGauge(
                        "Weyl image needs a fractional w-power".into(),
                    ));
                }
                let e: i64 = k
                    .to_integer()
                    .try_into()
                    .map_err(|_| Error::Internal("overflow".into()))?;
                img = img * Scalar::var(Var::w(d + 1)).pow(e);
            }
            images.push((wc, img));
        }
    }
    if images.is_empty() {
        return Ok(x.clone());
    }
    x.substitute(&images)
}

/// Checks `d(Σ C_ij dλ_i ∧ dλ_j) = 0`.
pub fn two_form_is_closed(
    form: &[(usize, usize, Scalar)],
    dim: usize,
    eps: &Scalar,
) -> Result<bool> {
    let mut c = vec![vec![Scalar::zero(); dim]; dim];
    for (i, j, v) in form {
        if *i >= dim || *j >= dim || i >= j {
            return Err(Error::InvalidGauge(
                "two-form indices must satisfy i < j < dim".into(),
            ));
        }
        c[*i][*j] = &c[*i][*j] + v;
        c[*j][*i] = &c[*j][*i] - v;
    }
    let d = |k: usize, x: &Scalar| x.derive(&lambda_derivation(k + 1, eps));
    for i in 0..dim {
        for j in i + 1..dim {
            for k in j + 1..dim {
                let s = d(i, &c[j][k]) - d(j, &c[i][k]) + d(k, &c[i][j]);
                if !s.is_zero() {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

/// Applies a gauge transformation.
pub fn gauge_classical(r: &ClassicalRMatrix, gauge: &ClassicalGauge) -> Result<ClassicalRMatrix> {
    let datum = r.datum();
    let n = datum.n();
    let dim = datum.coords().len();
    let label = format!("{}~gauge", r.label());
    match gauge {
        ClassicalGauge::TwoForm(form) => {
            if !two_form_is_closed(form, dim, r.coupling())? {
                return Err(Error::InvalidGauge("the two-form is not closed".into()));
            }
            let mut t = r.tensor().clone();
            let hs = datum.coords().hs();
            for (i, j, v) in form {
                for (x, cx) in h_elem(&hs[*i]) {
                    for (y, cy) in h_elem(&hs[*j]) {
                        t.add_wedge(x, y, v * &cx * &cy);
                    }
                }
            }
            r.with_tensor(&label, t)
        }
        ClassicalGauge::Shift(nu) => {
            if nu.len() != dim {
                return Err(Error::InvalidGauge(
                    "shift has the wrong number of coordinates".into(),
                ));
            }
            let t = r.tensor().try_map(|x| {
                if x.vars().iter().any(|v| matches!(v.kind(), VarKind::W(_)))
                    && nu.iter().any(|k| !k.is_zero())
                {
                    return Err(Error::InvalidGauge(
                        "use ExpShift for trigonometric coefficients".into(),
                    ));
                }
                let images: Vec<(Var, Poly)> = nu
                    .iter()
                    .enumerate()
                    .filter(|(_, k)| !k.is_zero())
                    .map(|(c, k)| {
                        (
                            Var::l(c + 1),
                            Poly::var(Var::l(c + 1)).sub(&Poly::constant(k.clone())),
                        )
                    })
                    .collect();
                x.subs_poly(&images, true)
            })?;
            r.with_tensor(&label, t)
        }
        ClassicalGauge::ExpShift(factors) => {
            if factors.len() != dim || factors.iter().any(|k| k <= &BigRational::zero()) {
                return Err(Error::InvalidGauge(
                    "exponential shift needs one positive factor per coordinate".into(),
                ));
            }
            let mut map = MonoMap::new();
            for (c, k) in factors.iter().enumerate() {
                let mut img = LaurentMono::var(Var::w(c + 1));
                img.coeff = k.clone();
                map = map.set(Var::w(c + 1), img);
            }
            let t = r.tensor().try_map(|x| x.subs_mono(&map, true))?;
            r.with_tensor(&label, t)
        }
        ClassicalGauge::Weyl(sigma) => {
            if !is_permutation(sigma, n) {
                return Err(Error::InvalidGauge("not a permutation".into()));
            }
            let coef = weyl_coords(datum, sigma);
            let t = r
                .tensor()
                .permute(sigma)
                .try_map(|x| weyl_substitute(x, &coef))?;
            r.with_tensor(&label, t)
        }
    }
}
