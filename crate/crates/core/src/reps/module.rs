//! Finite-dimensional weight modules over gl_n / sl_n and U_q of them.
//!
//! Quantum conventions: `K_i` acts on weight μ by `q^{(α_i, μ)}`,
//! `Δ(E) = E⊗K + 1⊗E`, `Δ(F) = F⊗1 + K⁻¹⊗F`, `S(E) = −EK⁻¹`, `S(F) = −KF`.

use serde_json::json;

use crate::rootdata::{Elem, RootDatum, Weight};
use crate::scalars::{Matrix, Mode, Scalar};
use crate::{Error, Result};

/// How a module sits inside tensor powers of the vector representation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Structure {
    Trivial,
    Vector,
    Dual,
    Opaque,
    Tensor(Vec<WeightModule>),
    Sub {
        parent: Box<WeightModule>,
        embed: Matrix,
        proj: Matrix,
    },
}

/// A weight module with simple-root generator actions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightModule {
    datum: RootDatum,
    mode: Mode,
    label: String,
    weights: Vec<Weight>,
    e: Vec<Matrix>,
    f: Vec<Matrix>,
    structure: Structure,
}

/// Image of a vector-rep tensor power: `(power, ι, π)` with `π ι = 1`.
pub type Factorization = (usize, Matrix, Matrix);

fn binom(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

impl WeightModule {
    /// The vector representation `C^n` with basis `v_1..v_n` of weights `ε_a`.
    pub fn vector(datum: &RootDatum, mode: Mode) -> WeightModule {
        let n = datum.n();
        let weights = (0..n)
            .map(|a| {
                let mut w = vec![0; n];
                w[a] = 1;
                w
            })
            .collect();
        let mut e = Vec::new();
        let mut f = Vec::new();
        for i in 0..n - 1 {
            let mut ei = Matrix::zeros(n, n);
            ei.set(i, i + 1, Scalar::one());
            let mut fi = Matrix::zeros(n, n);
            fi.set(i + 1, i, Scalar::one());
            e.push(ei);
            f.push(fi);
        }
        WeightModule {
            datum: datum.clone(),
            mode,
            label: format!("C{n}"),
            weights,
            e,
            f,
            structure: Structure::Vector,
        }
    }

    /// The one-dimensional trivial module.
    pub fn trivial(datum: &RootDatum, mode: Mode) -> WeightModule {
        let n = datum.n();
        WeightModule {
            datum: datum.clone(),
            mode,
            label: "C".into(),
            weights: vec![vec![0; n]],
            e: vec![Matrix::zeros(1, 1); n - 1],
            f: vec![Matrix::zeros(1, 1); n - 1],
            structure: Structure::Trivial,
        }
    }

    /// Builds a module from explicit data; the relations are checked.
    pub fn from_parts(
        datum: &RootDatum,
        mode: Mode,
        label: &str,
        weights: Vec<Weight>,
        e: Vec<Matrix>,
        f: Vec<Matrix>,
    ) -> Result<WeightModule> {
        let m = WeightModule {
            datum: datum.clone(),
            mode,
            label: label.into(),
            weights,
            e,
            f,
            structure: Structure::Opaque,
        };
        m.check_relations()?;
        Ok(m)
    }

    pub fn datum(&self) -> &RootDatum {
        &self.datum
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn with_label(mut self, label: &str) -> WeightModule {
        self.label = label.into();
        self
    }

    pub fn dim(&self) -> usize {
        self.weights.len()
    }

    pub fn weights(&self) -> &[Weight] {
        &self.weights
    }

    pub fn weight(&self, i: usize) -> &Weight {
        &self.weights[i]
    }

    pub fn e(&self, i: usize) -> &Matrix {
        &self.e[i]
    }

    pub fn f(&self, i: usize) -> &Matrix {
        &self.f[i]
    }

    pub fn structure(&self) -> &Structure {
        &self.structure
    }

    fn nsimple(&self) -> usize {
        self.datum.n() - 1
    }

    /// `(α_i, μ)` for the weight of basis vector `k`.
    pub fn alpha_pair(&self, i: usize, k: usize) -> i64 {
        self.weights[k][i] - self.weights[k][i + 1]
    }

    /// `K_i^{power}` as a diagonal matrix (identity classically).
    pub fn k_matrix(&self, i: usize, power: i64) -> Matrix {
        let d: Vec<Scalar> = (0..self.dim())
            .map(|k| match self.mode {
                Mode::Classical => Scalar::one(),
                Mode::Quantum => Scalar::q_pow(power * self.alpha_pair(i, k)),
            })
            .collect();
        Matrix::diagonal(&d)
    }

    /// Cartan element `h_i = E_ii − E_{i+1,i+1}` (classical) or
    /// `(K_i − K_i⁻¹)/(q − q⁻¹)` (quantum).
    pub fn h_matrix(&self, i: usize) -> Matrix {
        let d: Vec<Scalar> = (0..self.dim())
            .map(|k| match self.mode {
                Mode::Classical => Scalar::int(self.alpha_pair(i, k)),
                Mode::Quantum => Scalar::q_number(self.alpha_pair(i, k)),
            })
            .collect();
        Matrix::diagonal(&d)
    }

    /// Action of the gl_n basis element `E_ab` (classical modules only).
    pub fn gl_action(&self, x: Elem) -> Result<Matrix> {
        if self.mode != Mode::Classical {
            return Err(Error::Precondition(
                "gl_n basis action needs a classical module".into(),
            ));
        }
        let (a, b) = (x.a, x.b);
        if a == b {
            let d: Vec<Scalar> = self.weights.iter().map(|w| Scalar::int(w[a])).collect();
            return Ok(Matrix::diagonal(&d));
        }
        if b == a + 1 {
            return Ok(self.e[a].clone());
        }
        if a == b + 1 {
            return Ok(self.f[b].clone());
        }
        let commutator = |x: &Matrix, y: &Matrix| x.mul(y).sub(&y.mul(x));
        if a < b {
            let left = self.gl_action(Elem { a, b: b - 1 })?;
            Ok(commutator(&left, &self.e[b - 1]))
        } else {
            let right = self.gl_action(Elem { a: a - 1, b })?;
            Ok(commutator(&self.f[a - 1], &right))
        }
    }

    /// Applies the word `F_{w_0} F_{w_1} ⋯ F_{w_k}` to a vector.
    pub fn apply_f_word(&self, word: &[u8], v: &[Scalar]) -> Vec<Scalar> {
        let mut cur = v.to_vec();
        for &j in word.iter().rev() {
            cur = self.f[j as usize].apply(&cur);
        }
        cur
    }

    fn same_algebra(&self, o: &WeightModule) -> Result<()> {
        if self.datum != o.datum {
            return Err(Error::FlavorMismatch(format!(
                "{} over {} vs {} over {}",
                self.label,
                self.datum.name(),
                o.label,
                o.datum.name()
            )));
        }
        if self.mode != o.mode {
            return Err(Error::FlavorMismatch(
                "classical and quantum modules mixed".into(),
            ));
        }
        Ok(())
    }

    /// Tensor product under the fixed coproduct.
    pub fn tensor(&self, o: &WeightModule) -> Result<WeightModule> {
        self.same_algebra(o)?;
        let weights = self
            .weights
            .iter()
            .flat_map(|a| {
                o.weights
                    .iter()
                    .map(move |b| a.iter().zip(b).map(|(x, y)| x + y).collect())
            })
            .collect();
        let ia = Matrix::identity(self.dim());
        let ib = Matrix::identity(o.dim());
        let mut e = Vec::new();
        let mut f = Vec::new();
        for i in 0..self.nsimple() {
            let (ea, fa) = (&self.e[i], &self.f[i]);
            let (eb, fb) = (&o.e[i], &o.f[i]);
            e.push(ea.kron(&o.k_matrix(i, 1)).add(&ia.kron(eb)));
            f.push(fa.kron(&ib).add(&self.k_matrix(i, -1).kron(fb)));
        }
        let mut factors = Vec::new();
        for m in [self, o] {
            match &m.structure {
                Structure::Tensor(fs) => factors.extend(fs.iter().cloned()),
                _ => factors.push(m.clone()),
            }
        }
        Ok(WeightModule {
            datum: self.datum.clone(),
            mode: self.mode,
            label: format!("{}⊗{}", self.label, o.label),
            weights,
            e,
            f,
            structure: Structure::Tensor(factors),
        })
    }

    pub fn tensor_power(&self, p: usize) -> Result<WeightModule> {
        if p == 0 {
            return Ok(WeightModule::trivial(&self.datum, self.mode));
        }
        let mut acc = self.clone();
        for _ in 1..p {
            acc = acc.tensor(self)?;
        }
        Ok(acc)
    }

    /// Dual module `ρ*(u) = ρ(S(u))^T`: `E ↦ −K⁻¹E^T`, `F ↦ −F^T K`.
    pub fn dual(&self) -> WeightModule {
        let weights = self
            .weights
            .iter()
            .map(|w| w.iter().map(|x| -x).collect())
            .collect();
        let e = (0..self.nsimple())
            .map(|i| self.k_matrix(i, -1).mul(&self.e[i].transpose()).neg())
            .collect();
        let f = (0..self.nsimple())
            .map(|i| self.f[i].transpose().mul(&self.k_matrix(i, 1)).neg())
            .collect();
        WeightModule {
            datum: self.datum.clone(),
            mode: self.mode,
            label: format!("({})*", self.label),
            weights,
            e,
            f,
            structure: Structure::Dual,
        }
    }

    /// Submodule spanned by the columns of `embed`, with left inverse `proj`.
    pub fn submodule(&self, embed: Matrix, proj: Matrix, label: &str) -> Result<WeightModule> {
        let d = embed.cols();
        if !proj.mul(&embed).is_identity() {
            return Err(Error::Internal("projection is not a left inverse".into()));
        }
        let mut weights = Vec::with_capacity(d);
        for k in 0..d {
            let support: Vec<usize> = (0..embed.rows())
                .filter(|&r| !embed.get(r, k).is_zero())
                .collect();
            let w = self.weights[support[0]].clone();
            if support.iter().any(|&r| self.weights[r] != w) {
                return Err(Error::Internal(
                    "embedding column is not a weight vector".into(),
                ));
            }
            weights.push(w);
        }
        let restrict = |x: &Matrix| proj.mul(&x.mul(&embed));
        let e = self.e.iter().map(restrict).collect();
        let f = self.f.iter().map(restrict).collect();
        Ok(WeightModule {
            datum: self.datum.clone(),
            mode: self.mode,
            label: label.into(),
            weights,
            e,
            f,
            structure: Structure::Sub {
                parent: Box::new(self.clone()),
                embed,
                proj,
            },
        })
    }

    /// `(power, ι, π)` exhibiting the module inside `V^{⊗power}`, if any.
    pub fn vector_factorization(&self) -> Option<Factorization> {
        match &self.structure {
            Structure::Trivial => Some((0, Matrix::identity(1), Matrix::identity(1))),
            Structure::Vector => {
                let n = self.dim();
                Some((1, Matrix::identity(n), Matrix::identity(n)))
            }
            Structure::Dual | Structure::Opaque => None,
            Structure::Tensor(fs) => {
                let mut p = 0;
                let mut iota = Matrix::identity(1);
                let mut pi = Matrix::identity(1);
                for m in fs {
                    let (pm, im, qm) = m.vector_factorization()?;
                    p += pm;
                    iota = iota.kron(&im);
                    pi = pi.kron(&qm);
                }
                Some((p, iota, pi))
            }
            Structure::Sub {
                parent,
                embed,
                proj,
            } => {
                let (p, iota, pi) = parent.vector_factorization()?;
                Some((p, iota.mul(embed), proj.mul(&pi)))
            }
        }
    }

    /// Verifies weight homogeneity, `[e_i, f_j] = δ_ij h_i` (q-deformed
    /// quantumly), `[K, E]` consistency and the Serre relations.
    pub fn check_relations(&self) -> Result<()> {
        let r = self.nsimple();
        let dim = self.dim();
        let fail = |msg: String| Err(Error::Convention(format!("{}: {msg}", self.label)));
        for i in 0..r {
            for (name, m, sign) in [("e", &self.e[i], 1i64), ("f", &self.f[i], -1)] {
                for a in 0..dim {
                    for b in 0..dim {
                        if m.get(a, b).is_zero() {
                            continue;
                        }
                        let mut expect = self.weights[b].clone();
                        expect[i] += sign;
                        expect[i + 1] -= sign;
                        if self.weights[a] != expect {
                            return fail(format!("{name}_{} is not weight-homogeneous", i + 1));
                        }
                    }
                }
            }
        }
        for i in 0..r {
            for j in 0..r {
                let c = self.e[i].mul(&self.f[j]).sub(&self.f[j].mul(&self.e[i]));
                let expect = if i == j {
                    self.h_matrix(i)
                } else {
                    Matrix::zeros(dim, dim)
                };
                if c != expect {
                    return fail(format!("[e_{}, f_{}] relation fails", i + 1, j + 1));
                }
            }
        }
        let qq = match self.mode {
            Mode::Classical => Scalar::int(2),
            Mode::Quantum => Scalar::q_number(2),
        };
        for i in 0..r {
            for j in 0..r {
                if i == j {
                    continue;
                }
                for gens in [&self.e, &self.f] {
                    let (x, y) = (&gens[i], &gens[j]);
                    let res = if i.abs_diff(j) == 1 {
                        let xx = x.mul(x);
                        xx.mul(y).sub(&x.mul(y).mul(x).scale(&qq)).add(&y.mul(&xx))
                    } else {
                        x.mul(y).sub(&y.mul(x))
                    };
                    if !res.is_zero() {
                        return fail(format!("Serre relation fails for ({}, {})", i + 1, j + 1));
                    }
                }
            }
        }
        Ok(())
    }

    /// Indices of basis vectors with zero weight (modulo the centre for sl_n).
    pub fn zero_weight_indices(&self) -> Vec<usize> {
        let sl = self.datum.flavor() == crate::rootdata::Flavor::Sl;
        (0..self.dim())
            .filter(|&k| {
                let w = &self.weights[k];
                if sl {
                    w.iter().all(|&x| x == w[0])
                } else {
                    w.iter().all(|&x| x == 0)
                }
            })
            .collect()
    }

    pub fn to_json(&self) -> serde_json::Value {
        let mats = |ms: &Vec<Matrix>| -> Vec<Vec<Vec<String>>> {
            ms.iter().map(|m| m.to_text_rows()).collect()
        };
        json!({
            "schema": "dybe.module/1",
            "label": self.label,
            "algebra": self.datum.name(),
            "quantum": self.mode == Mode::Quantum,
            "weights": self.weights,
            "e": mats(&self.e),
            "f": mats(&self.f),
        })
    }
}

/// Dimension of `S^m C^n` or `Λ^m C^n`.
pub fn power_dimension(n: usize, m: usize, symmetric: bool) -> usize {
    if symmetric {
        binom(n + m - 1, m)
    } else {
        binom(n, m)
    }
}
