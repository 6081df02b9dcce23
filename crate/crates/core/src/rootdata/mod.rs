//! Type-A root data: roots, weights, the invariant form, ρ, the Casimir and
//! the structure constants of gl_n in the elementary-matrix basis.
//!
//! Weights of modules are integer vectors in the ε-basis of gl_n. The sl_n
//! flavor uses the same weights; its form is the one induced on the
//! trace-zero projection. The dynamical variable λ is written in a
//! coordinate system [`Coords`].

mod coords;

use num::{BigInt, BigRational, One, Zero};
use serde::Serialize;

pub(crate) use coords::invert as invert_rational;
pub use coords::Coords;

use crate::scalars::{Scalar, Var};
use crate::{Error, Result};

/// gl_n or sl_n.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Flavor {
    Gl,
    Sl,
}

/// Integer weight in the ε-basis.
pub type Weight = Vec<i64>;

/// The root ε_a − ε_b (0-based indices, a ≠ b).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Root {
    pub a: usize,
    pub b: usize,
}

impl Root {
    pub fn new(a: usize, b: usize) -> Root {
        assert_ne!(a, b, "a root needs distinct indices");
        Root { a, b }
    }

    pub fn is_positive(&self) -> bool {
        self.a < self.b
    }

    pub fn neg(&self) -> Root {
        Root {
            a: self.b,
            b: self.a,
        }
    }

    pub fn height(&self) -> i64 {
        self.b as i64 - self.a as i64
    }

    pub fn weight(&self, n: usize) -> Weight {
        let mut w = vec![0; n];
        w[self.a] += 1;
        w[self.b] -= 1;
        w
    }

    /// `e_α = E_ab` as an element of the gl_n basis.
    pub fn vector(&self) -> Elem {
        Elem {
            a: self.a,
            b: self.b,
        }
    }
}

/// The elementary matrix `E_ab` (0-based).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Elem {
    pub a: usize,
    pub b: usize,
}

impl Elem {
    pub fn index(&self, n: usize) -> usize {
        self.a * n + self.b
    }

    pub fn from_index(i: usize, n: usize) -> Elem {
        Elem { a: i / n, b: i % n }
    }

    pub fn weight(&self, n: usize) -> Weight {
        let mut w = vec![0; n];
        w[self.a] += 1;
        w[self.b] -= 1;
        w
    }
}

pub(crate) fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// Integer vector as rationals.
pub fn rats(v: &[i64]) -> Vec<BigRational> {
    v.iter().map(|&x| rat(x)).collect()
}

pub(crate) fn dot(a: &[BigRational], b: &[BigRational]) -> BigRational {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Root datum of gl_n or sl_n together with a coordinate system for λ.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootDatum {
    n: usize,
    flavor: Flavor,
    coords: Coords,
}

impl RootDatum {
    /// Builds gl_n or sl_n. sl_2 uses the single coordinate λ = λ(h);
    /// every other case uses the ε-coordinates λ_a = λ(E_aa).
    pub fn build_type_a(n: usize, flavor: Flavor) -> Result<RootDatum> {
        if n < 2 {
            return Err(Error::InvalidRank(n));
        }
        if n > crate::scalars::MAX_COORDS {
            return Err(Error::Precondition(format!(
                "rank {n} exceeds the {} supported coordinates",
                crate::scalars::MAX_COORDS
            )));
        }
        let coords = if n == 2 && flavor == Flavor::Sl {
            Coords::sl2()
        } else {
            Coords::gl(n)
        };
        Ok(RootDatum { n, flavor, coords })
    }

    pub fn gl(n: usize) -> Result<RootDatum> {
        RootDatum::build_type_a(n, Flavor::Gl)
    }

    pub fn sl(n: usize) -> Result<RootDatum> {
        RootDatum::build_type_a(n, Flavor::Sl)
    }

    /// Parses `"gl3"`, `"sl2"` and so on, the inverse of [`RootDatum::name`].
    pub fn from_name(name: &str) -> Result<RootDatum> {
        let parse = |rest: &str| {
            rest.parse::<usize>()
                .map_err(|_| Error::Parse(format!("unknown algebra {name:?}")))
        };
        match name.get(..2) {
            Some("gl") => RootDatum::gl(parse(&name[2..])?),
            Some("sl") => RootDatum::sl(parse(&name[2..])?),
            _ => Err(Error::Parse(format!("unknown algebra {name:?}"))),
        }
    }

    /// Same algebra with λ restricted to the given coordinate system.
    pub fn with_coords(&self, coords: Coords) -> Result<RootDatum> {
        if coords.n() != self.n {
            return Err(Error::Precondition(
                "coordinate system has the wrong rank".into(),
            ));
        }
        Ok(RootDatum {
            n: self.n,
            flavor: self.flavor,
            coords,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn flavor(&self) -> Flavor {
        self.flavor
    }

    pub fn coords(&self) -> &Coords {
        &self.coords
    }

    pub fn name(&self) -> String {
        match self.flavor {
            Flavor::Gl => format!("gl{}", self.n),
            Flavor::Sl => format!("sl{}", self.n),
        }
    }

    pub fn simple_roots(&self) -> Vec<Root> {
        (0..self.n - 1).map(|i| Root::new(i, i + 1)).collect()
    }

    /// Positive roots ordered by height, then lexicographically.
    pub fn positive_roots(&self) -> Vec<Root> {
        let mut out: Vec<Root> = (0..self.n)
            .flat_map(|a| (a + 1..self.n).map(move |b| Root::new(a, b)))
            .collect();
        out.sort_by_key(|r| (r.height(), r.a));
        out
    }

    pub fn roots(&self) -> Vec<Root> {
        let pos = self.positive_roots();
        pos.iter()
            .copied()
            .chain(pos.iter().map(Root::neg))
            .collect()
    }

    /// ρ = half-sum of positive roots, in the ε-basis.
    pub fn rho(&self) -> Vec<BigRational> {
        let n = self.n as i64;
        (0..n)
            .map(|a| BigRational::new(BigInt::from(n - 1 - 2 * a), BigInt::from(2)))
            .collect()
    }

    /// Invariant form on rational weights; sl_n projects to trace zero.
    pub fn form(&self, x: &[BigRational], y: &[BigRational]) -> BigRational {
        let d = dot(x, y);
        match self.flavor {
            Flavor::Gl => d,
            Flavor::Sl => {
                let sx: BigRational = x.iter().sum();
                let sy: BigRational = y.iter().sum();
                d - sx * sy / rat(self.n as i64)
            }
        }
    }

    pub fn form_int(&self, x: &[i64], y: &[i64]) -> BigRational {
        self.form(&rats(x), &rats(y))
    }

    /// Cartan matrix ⟨α_i, α_j⟩ on simple roots.
    pub fn cartan_matrix(&self) -> Vec<Vec<i64>> {
        let s = self.simple_roots();
        s.iter()
            .map(|x| {
                s.iter()
                    .map(|y| {
                        let v = self.form_int(&x.weight(self.n), &y.weight(self.n));
                        v.to_integer().try_into().expect("small Cartan entry")
                    })
                    .collect()
            })
            .collect()
    }

    /// Coefficients of `β` in the simple roots, if `β` is in the root lattice.
    pub fn root_coeffs(&self, beta: &[i64]) -> Option<Vec<i64>> {
        if beta.iter().sum::<i64>() != 0 {
            return None;
        }
        let mut acc = 0;
        let mut out = Vec::with_capacity(self.n - 1);
        for &x in &beta[..self.n - 1] {
            acc += x;
            out.push(acc);
        }
        Some(out)
    }

    /// Height of `β` if it lies in the nonnegative cone of the root lattice.
    pub fn positive_height(&self, beta: &[i64]) -> Option<i64> {
        let c = self.root_coeffs(beta)?;
        if c.iter().any(|&x| x < 0) {
            return None;
        }
        Some(c.iter().sum())
    }

    /// `(λ, μ) = Σ_c l_c (ω_c, μ)` as a classical scalar.
    pub fn lambda_pair(&self, mu: &[BigRational]) -> Scalar {
        self.coords
            .omegas()
            .iter()
            .enumerate()
            .map(|(c, w)| Scalar::var(Var::l(c + 1)) * Scalar::rational(self.form(w, mu)))
            .sum()
    }

    /// Shift vector `(μ(H_c))_c` realizing λ ↦ λ − μ in coordinates.
    pub fn shift_vector(&self, mu: &[i64]) -> Vec<BigRational> {
        let m = rats(mu);
        self.coords.hs().iter().map(|h| dot(h, &m)).collect()
    }

    /// `q^{k(λ, μ)} = Π_c t_c^{k(ω_c, μ)}`; the exponents must be integers.
    pub fn q_lambda_pair(&self, k: i64, mu: &[BigRational]) -> Result<Scalar> {
        let mut factors = Vec::new();
        for (c, w) in self.coords.omegas().iter().enumerate() {
            let e = self.form(w, mu) * rat(k);
            if !e.is_integer() {
                return Err(Error::Precondition(format!(
                    "q-power of λ with non-integer exponent {e}"
                )));
            }
            let e: i64 = e
                .to_integer()
                .try_into()
                .map_err(|_| Error::Internal("overflow".into()))?;
            if e != 0 {
                factors.push((Var::t(c + 1), e));
            }
        }
        Ok(Scalar::monomial(&factors))
    }

    /// `e^{ε(α, λ)}` in the symbols `w_c = e^{−ελ_c/2}`.
    pub fn exp_eps_pair(&self, alpha: &[i64]) -> Result<Scalar> {
        let a = rats(alpha);
        let mut factors = Vec::new();
        for (c, w) in self.coords.omegas().iter().enumerate() {
            let e = self.form(w, &a) * rat(-2);
            if !e.is_integer() {
                return Err(Error::Precondition(format!("w-power with exponent {e}")));
            }
            let e: i64 = e
                .to_integer()
                .try_into()
                .map_err(|_| Error::Internal("overflow".into()))?;
            if e != 0 {
                factors.push((Var::w(c + 1), e));
            }
        }
        Ok(Scalar::monomial(&factors))
    }

    /// θ(λ) on a weight-μ vector: `(λ+ρ, μ) − ½(μ, μ)`.
    pub fn theta_scalar(&self, mu: &[i64]) -> Scalar {
        let m = rats(mu);
        let c = self.form(&self.rho(), &m) - self.form(&m, &m) / rat(2);
        self.lambda_pair(&m) + Scalar::rational(c)
    }

    /// `q^{2θ(μ) − 2θ(ν)}` for weights whose difference is in the root lattice.
    pub fn q_theta_ratio(&self, mu: &[i64], nu: &[i64]) -> Result<Scalar> {
        let m = rats(mu);
        let v = rats(nu);
        let d: Vec<BigRational> = m.iter().zip(&v).map(|(x, y)| x - y).collect();
        let t = self.q_lambda_pair(2, &d)?;
        let rho = self.rho();
        // Exponent of s = q^{1/2}: 4(ρ, μ−ν) − 2((μ,μ) − (ν,ν)).
        let e = rat(4) * self.form(&rho, &d) - rat(2) * (self.form(&m, &m) - self.form(&v, &v));
        if !e.is_integer() {
            return Err(Error::Precondition(format!("θ-ratio with exponent {e}")));
        }
        let e: i64 = e
            .to_integer()
            .try_into()
            .map_err(|_| Error::Internal("overflow".into()))?;
        Ok(t * Scalar::s_pow(e))
    }

    /// Lie bracket `[E_ab, E_cd] = δ_bc E_ad − δ_da E_cb`.
    pub fn bracket(&self, x: Elem, y: Elem) -> Vec<(Elem, i64)> {
        let mut out = Vec::new();
        if x.b == y.a {
            out.push((Elem { a: x.a, b: y.b }, 1));
        }
        if y.b == x.a {
            out.push((Elem { a: y.a, b: x.b }, -1));
        }
        if out.len() == 2 && out[0].0 == out[1].0 {
            return Vec::new();
        }
        out
    }

    /// Casimir element `Ω = Σ E_ab ⊗ E_ba` (gl) or `Ω − (1/n) I⊗I` (sl).
    pub fn omega(&self) -> Vec<(Elem, Elem, BigRational)> {
        let n = self.n;
        let mut out = Vec::new();
        for a in 0..n {
            for b in 0..n {
                let mut c = BigRational::one();
                if a == b && self.flavor == Flavor::Sl {
                    c -= BigRational::new(BigInt::one(), BigInt::from(n as i64));
                }
                out.push((Elem { a, b }, Elem { a: b, b: a }, c));
                if a == b && self.flavor == Flavor::Sl {
                    for d in 0..n {
                        if d != a {
                            out.push((
                                Elem { a, b: a },
                                Elem { a: d, b: d },
                                -BigRational::new(BigInt::one(), BigInt::from(n as i64)),
                            ));
                        }
                    }
                }
            }
        }
        out.retain(|(_, _, c)| !c.is_zero());
        out
    }

    /// JSON view: roots, ρ and the form matrix as exact rationals.
    pub fn to_json(&self) -> serde_json::Value {
        let n = self.n;
        let pos: Vec<Weight> = self.positive_roots().iter().map(|r| r.weight(n)).collect();
        let simple: Vec<Weight> = self.simple_roots().iter().map(|r| r.weight(n)).collect();
        let unit = |a: usize| {
            let mut v = vec![BigRational::zero(); n];
            v[a] = BigRational::one();
            v
        };
        let form: Vec<Vec<String>> = (0..n)
            .map(|a| {
                (0..n)
                    .map(|b| self.form(&unit(a), &unit(b)).to_string())
                    .collect()
            })
            .collect();
        serde_json::json!({
            "schema": "dybe.rootdata/1",
            "algebra": self.name(),
            "n": n,
            "simple_roots": simple,
            "positive_roots": pos,
            "rho": self.rho().iter().map(|x| x.to_string()).collect::<Vec<_>>(),
            "form": form,
            "cartan_matrix": self.cartan_matrix(),
            "coordinates": self.coords.to_json(),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::sc;

    #[test]
    fn gl2_rho_and_roots() {
        let d = RootDatum::gl(2).unwrap();
        assert_eq!(d.positive_roots(), vec![Root::new(0, 1)]);
        assert_eq!(
            d.rho(),
            vec![
                BigRational::new(1.into(), 2.into()),
                BigRational::new((-1).into(), 2.into())
            ]
        );
    }

    #[test]
    fn gl3_has_three_positive_roots_of_norm_two() {
        let d = RootDatum::gl(3).unwrap();
        assert_eq!(d.positive_roots().len(), 3);
        let a = Root::new(0, 2).weight(3);
        assert_eq!(d.form_int(&a, &a), rat(2));
    }

    #[test]
    fn rank_one_is_rejected() {
        assert_eq!(RootDatum::gl(1).unwrap_err(), Error::InvalidRank(1));
    }

    #[test]
    fn rho_pairs_to_one_with_simple_roots() {
        for n in 2..=4 {
            for flavor in [Flavor::Gl, Flavor::Sl] {
                let d = RootDatum::build_type_a(n, flavor).unwrap();
                for s in d.simple_roots() {
                    assert_eq!(d.form(&d.rho(), &rats(&s.weight(n))), rat(1));
                }
            }
        }
    }

    #[test]
    fn sl2_theta_reproduces_abrr_denominator() {
        let d = RootDatum::sl(2).unwrap();
        // θ on v_+ minus θ on v_-: the first ABRR denominator λ + 2 − (h-eigenvalue).
        let diff = d.theta_scalar(&[1, 0]) - d.theta_scalar(&[0, 1]);
        assert_eq!(diff, sc("l1+1"));
        assert!(d.theta_scalar(&[0, 0]).is_zero());
    }

    #[test]
    fn omega_is_symmetric() {
        for flavor in [Flavor::Gl, Flavor::Sl] {
            let d = RootDatum::build_type_a(3, flavor).unwrap();
            let mut om = d.omega();
            let mut flipped: Vec<_> = om.iter().map(|(x, y, c)| (*y, *x, c.clone())).collect();
            om.sort();
            flipped.sort();
            assert_eq!(om, flipped);
        }
    }

    #[test]
    fn bracket_of_root_vectors() {
        let d = RootDatum::gl(3).unwrap();
        let e12 = Elem { a: 0, b: 1 };
        let e21 = Elem { a: 1, b: 0 };
        let mut h = d.bracket(e12, e21);
        h.sort();
        assert_eq!(h, vec![(Elem { a: 0, b: 0 }, 1), (Elem { a: 1, b: 1 }, -1)]);
        assert!(d
            .bracket(Elem { a: 0, b: 0 }, Elem { a: 0, b: 0 })
            .is_empty());
    }
}
