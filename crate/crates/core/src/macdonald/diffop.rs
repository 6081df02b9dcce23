//! Difference operators `Σ_ν C_ν(λ) T_ν` with `(T_ν f)(λ) = f(λ + ν)`.
//!
//! Shifts are vectors in the coordinates of the coefficient variables. A
//! shift moves `l_c ↦ l_c + ν_c`, `t_c ↦ q^{ν_c} t_c` and the Macdonald
//! variables `x_c ↦ q^{2ν_c} x_c`. Coefficients are square matrices (size 1
//! for scalar operators) acting on vector-valued functions.

use std::collections::BTreeMap;

use num::{BigRational, Zero};

use crate::rootdata::RootDatum;
use crate::scalars::{LaurentMono, Matrix, MonoMap, Scalar, Var, MAX_COORDS};
use crate::{Error, Result};

/// `f(λ + ν)` for a scalar function `f`.
pub fn shift_scalar(f: &Scalar, nu: &[BigRational]) -> Result<Scalar> {
    if nu.iter().all(Zero::is_zero) {
        return Ok(f.clone());
    }
    let neg: Vec<BigRational> = nu.iter().map(|x| -x).collect();
    let mut out = f.shift_substitute(&neg)?;
    let mut map = MonoMap::new();
    for (c, k) in nu.iter().enumerate() {
        if k.is_zero() || c >= MAX_COORDS || !out.has_var(Var::x(c + 1)) {
            continue;
        }
        let e = k * BigRational::from_integer(4.into());
        if !e.is_integer() {
            return Err(Error::UnsupportedShift(format!(
                "x-shift by {k} is not a quarter-integer"
            )));
        }
        let e: i32 = e
            .to_integer()
            .try_into()
            .map_err(|_| Error::UnsupportedShift("shift too large".into()))?;
        map = map.set(
            Var::x(c + 1),
            LaurentMono::var(Var::x(c + 1)).with(Var::s(), e),
        );
    }
    if map.is_identity() {
        return Ok(out);
    }
    out = out.subs_mono(&map, true)?;
    Ok(out)
}

/// A difference operator with matrix coefficients.
#[derive(Clone, Debug, PartialEq)]
pub struct DiffOp {
    coords: usize,
    dim: usize,
    terms: BTreeMap<Vec<BigRational>, Matrix>,
}

impl DiffOp {
    pub fn zero(coords: usize, dim: usize) -> DiffOp {
        DiffOp {
            coords,
            dim,
            terms: BTreeMap::new(),
        }
    }

    /// `1·T_0`.
    pub fn identity(coords: usize, dim: usize) -> DiffOp {
        let mut d = DiffOp::zero(coords, dim);
        d.terms
            .insert(vec![BigRational::zero(); coords], Matrix::identity(dim));
        d
    }

    /// `c·T_ν` with a scalar coefficient.
    pub fn scalar_term(nu: Vec<BigRational>, c: Scalar) -> DiffOp {
        let mut d = DiffOp::zero(nu.len(), 1);
        d.add_term(nu, Matrix::diagonal(&[c]));
        d
    }

    /// Multiplication by a scalar function.
    pub fn multiplication(coords: usize, f: Scalar) -> DiffOp {
        DiffOp::scalar_term(vec![BigRational::zero(); coords], f)
    }

    pub fn coords(&self) -> usize {
        self.coords
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn terms(&self) -> &BTreeMap<Vec<BigRational>, Matrix> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Coefficient of `T_ν` (zero if absent).
    pub fn coefficient(&self, nu: &[BigRational]) -> Matrix {
        self.terms
            .get(nu)
            .cloned()
            .unwrap_or_else(|| Matrix::zeros(self.dim, self.dim))
    }

    /// Scalar coefficient of `T_ν` for a scalar operator.
    pub fn scalar_coefficient(&self, nu: &[BigRational]) -> Scalar {
        self.coefficient(nu).get(0, 0).clone()
    }

    /// Adds `c·T_ν`, combining equal shifts and dropping zero terms.
    pub fn add_term(&mut self, nu: Vec<BigRational>, c: Matrix) {
        assert_eq!(
            nu.len(),
            self.coords,
            "shift has the wrong number of coordinates"
        );
        assert!(
            c.rows() == self.dim && c.cols() == self.dim,
            "coefficient has the wrong size"
        );
        let sum = match self.terms.remove(&nu) {
            Some(old) => old.add(&c),
            None => c,
        };
        if !sum.is_zero() {
            self.terms.insert(nu, sum);
        }
    }

    fn check_same(&self, o: &DiffOp) -> Result<()> {
        if self.coords != o.coords || self.dim != o.dim {
            return Err(Error::Precondition(
                "difference operators act on different spaces".into(),
            ));
        }
        Ok(())
    }

    pub fn add(&self, o: &DiffOp) -> Result<DiffOp> {
        self.check_same(o)?;
        let mut out = self.clone();
        for (nu, c) in &o.terms {
            out.add_term(nu.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, o: &DiffOp) -> Result<DiffOp> {
        self.add(&o.map_coefficients(|c| Ok(c.neg()))?)
    }

    /// `(C T_ν)(C' T_μ) = C · C'(λ + ν) T_{ν+μ}`.
    pub fn compose(&self, o: &DiffOp) -> Result<DiffOp> {
        self.check_same(o)?;
        let mut out = DiffOp::zero(self.coords, self.dim);
        for (nu, c) in &self.terms {
            for (mu, d) in &o.terms {
                let shifted = d.try_map(|x| shift_scalar(x, nu))?;
                let sum: Vec<BigRational> = nu.iter().zip(mu).map(|(a, b)| a + b).collect();
                out.add_term(sum, c.mul(&shifted));
            }
        }
        Ok(out)
    }

    /// `f ∘ D ∘ f⁻¹` for a scalar function `f`: `C_ν ↦ f(λ) C_ν / f(λ+ν)`.
    pub fn conjugate(&self, f: &Scalar) -> Result<DiffOp> {
        let mut out = DiffOp::zero(self.coords, self.dim);
        for (nu, c) in &self.terms {
            let ratio = f / &shift_scalar(f, nu)?;
            out.add_term(nu.clone(), c.scale(&ratio));
        }
        Ok(out)
    }

    /// Applies a scalar operator to a scalar function.
    pub fn apply(&self, f: &Scalar) -> Result<Scalar> {
        if self.dim != 1 {
            return Err(Error::Precondition("apply needs a scalar operator".into()));
        }
        let mut acc = Scalar::zero();
        for (nu, c) in &self.terms {
            acc = acc + c.get(0, 0) * &shift_scalar(f, nu)?;
        }
        Ok(acc)
    }

    /// Applies the operator to a vector-valued function.
    pub fn apply_vector(&self, f: &[Scalar]) -> Result<Vec<Scalar>> {
        if f.len() != self.dim {
            return Err(Error::Precondition("vector has the wrong length".into()));
        }
        let mut acc = vec![Scalar::zero(); self.dim];
        for (nu, c) in &self.terms {
            let shifted: Vec<Scalar> = f
                .iter()
                .map(|x| shift_scalar(x, nu))
                .collect::<Result<_>>()?;
            for (a, b) in acc.iter_mut().zip(c.apply(&shifted)) {
                *a = &*a + &b;
            }
        }
        Ok(acc)
    }

    /// Entrywise map of the coefficients, keeping shifts.
    pub fn map_coefficients(&self, f: impl Fn(&Matrix) -> Result<Matrix>) -> Result<DiffOp> {
        let mut out = DiffOp::zero(self.coords, self.dim);
        for (nu, c) in &self.terms {
            out.add_term(nu.clone(), f(c)?);
        }
        Ok(out)
    }

    /// Replaces every shift `ν` by `g(ν)` (with `coords` new coordinates).
    pub fn map_shifts(
        &self,
        coords: usize,
        g: impl Fn(&[BigRational]) -> Vec<BigRational>,
    ) -> DiffOp {
        let mut out = DiffOp::zero(coords, self.dim);
        for (nu, c) in &self.terms {
            out.add_term(g(nu), c.clone());
        }
        out
    }

    /// Rewrites an operator in Macdonald coordinates `x_i = q^{2λ_i}` (ε-basis
    /// of gl_n) in the coordinates of `datum`: `x_i ↦ Π_c t_c^{2ω_c(ε_i)}` and
    /// `ν ↦ (ν(H_c))_c`.
    pub fn to_datum_coords(&self, datum: &RootDatum) -> Result<DiffOp> {
        let n = datum.n();
        if self.coords != n {
            return Err(Error::Precondition(
                "operator is not in ε-coordinates of this rank".into(),
            ));
        }
        let coords = datum.coords();
        let mut images = Vec::new();
        for i in 0..n {
            let mut img = Scalar::one();
            for (c, w) in coords.omegas().iter().enumerate() {
                let e = &w[i] * BigRational::from_integer(2.into());
                if !e.is_integer() {
                    return Err(Error::Precondition(
                        "x-variable has no integral image".into(),
                    ));
                }
                let e: i64 = e
                    .to_integer()
                    .try_into()
                    .map_err(|_| Error::Internal("overflow".into()))?;
                img = img * Scalar::var(Var::t(c + 1)).pow(e);
            }
            images.push((Var::x(i + 1), img));
        }
        let hs = coords.hs().to_vec();
        let moved = self.map_shifts(hs.len(), |nu| {
            hs.iter()
                .map(|h| h.iter().zip(nu).map(|(a, b)| a * b).sum())
                .collect()
        });
        moved.map_coefficients(|c| c.try_map(|x| x.substitute(&images)))
    }

    /// JSON: a list of `{shift, coefficient}` with canonical scalar text.
    pub fn to_json(&self) -> serde_json::Value {
        let terms: Vec<serde_json::Value> = self
            .terms
            .iter()
            .map(|(nu, c)| {
                let coefficient = if self.dim == 1 {
                    serde_json::Value::String(c.get(0, 0).to_text())
                } else {
                    serde_json::Value::Object(c.to_text_map())
                };
                serde_json::json!({
                    "shift": nu.iter().map(|x| x.to_string()).collect::<Vec<_>>(),
                    "coefficient": coefficient,
                })
            })
            .collect();
        serde_json::json!({ "schema": "dybe.diffop/1", "dim": self.dim, "terms": terms })
    }
}

fn shift_text(nu: &[BigRational]) -> String {
    let parts: Vec<String> = nu.iter().map(|x| x.to_string()).collect();
    format!("T[{}]", parts.join(","))
}

/// Report for `lhs − rhs`, compared shift by shift.
pub fn diffop_report(
    equation: &str,
    operands: &[String],
    lhs: &DiffOp,
    rhs: &DiffOp,
) -> Result<crate::verify::ResidualReport> {
    use crate::verify::ResidualReport;
    lhs.check_same(rhs)?;
    let shifts: std::collections::BTreeSet<&Vec<BigRational>> =
        lhs.terms.keys().chain(rhs.terms.keys()).collect();
    let parts: Vec<ResidualReport> = shifts
        .into_iter()
        .map(|nu| {
            ResidualReport::from_matrices(
                &shift_text(nu),
                operands,
                &lhs.coefficient(nu),
                &rhs.coefficient(nu),
            )
        })
        .collect();
    Ok(ResidualReport::combine(equation, &parts))
}
