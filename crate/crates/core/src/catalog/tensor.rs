//! Tensors over gl_n in the elementary-matrix basis with scalar coefficients.

use std::collections::BTreeMap;

use serde_json::json;

use crate::reps::WeightModule;
use crate::rootdata::{Elem, RootDatum};
use crate::scalars::{Matrix, Scalar};
use crate::Result;

/// `Σ c_{xy} x ⊗ y` over the basis `E_ab` of gl_n.
#[derive(Clone, Debug, PartialEq, Default)]
pub struct Tensor2 {
    terms: BTreeMap<(Elem, Elem), Scalar>,
}

/// `Σ c_{xyz} x ⊗ y ⊗ z`.
#[derive(Clone, Debug, PartialEq, Default)]
pub struct Tensor3 {
    terms: BTreeMap<(Elem, Elem, Elem), Scalar>,
}

fn accumulate<K: Ord>(map: &mut BTreeMap<K, Scalar>, k: K, c: Scalar) {
    if c.is_zero() {
        return;
    }
    match map.get_mut(&k) {
        Some(v) => {
            *v = &*v + &c;
            if v.is_zero() {
                map.remove(&k);
            }
        }
        None => {
            map.insert(k, c);
        }
    }
}

impl Tensor2 {
    pub fn zero() -> Tensor2 {
        Tensor2::default()
    }

    /// The Casimir element of the datum.
    pub fn casimir(datum: &RootDatum) -> Tensor2 {
        let mut t = Tensor2::zero();
        for (x, y, c) in datum.omega() {
            t.add_term(x, y, Scalar::rational(c));
        }
        t
    }

    pub fn add_term(&mut self, x: Elem, y: Elem, c: Scalar) {
        accumulate(&mut self.terms, (x, y), c);
    }

    /// Adds `c (x ⊗ y − y ⊗ x)`.
    pub fn add_wedge(&mut self, x: Elem, y: Elem, c: Scalar) {
        self.add_term(x, y, c.clone());
        self.add_term(y, x, -c);
    }

    pub fn terms(&self) -> &BTreeMap<(Elem, Elem), Scalar> {
        &self.terms
    }

    pub fn coeff(&self, x: Elem, y: Elem) -> Scalar {
        self.terms
            .get(&(x, y))
            .cloned()
            .unwrap_or_else(Scalar::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// `t^{21}`.
    pub fn flip(&self) -> Tensor2 {
        Tensor2 {
            terms: self
                .terms
                .iter()
                .map(|(&(x, y), c)| ((y, x), c.clone()))
                .collect(),
        }
    }

    pub fn add(&self, o: &Tensor2) -> Tensor2 {
        let mut t = self.clone();
        for (&(x, y), c) in &o.terms {
            t.add_term(x, y, c.clone());
        }
        t
    }

    pub fn sub(&self, o: &Tensor2) -> Tensor2 {
        self.add(&o.scale(&Scalar::int(-1)))
    }

    pub fn scale(&self, c: &Scalar) -> Tensor2 {
        let mut t = Tensor2::zero();
        for (&(x, y), v) in &self.terms {
            t.add_term(x, y, v * c);
        }
        t
    }

    pub fn try_map(&self, f: impl Fn(&Scalar) -> Result<Scalar>) -> Result<Tensor2> {
        let mut t = Tensor2::zero();
        for (&(x, y), v) in &self.terms {
            t.add_term(x, y, f(v)?);
        }
        Ok(t)
    }

    /// Relabels the basis through `E_ab ↦ E_{σ(a)σ(b)}`.
    pub fn permute(&self, sigma: &[usize]) -> Tensor2 {
        let p = |e: Elem| Elem {
            a: sigma[e.a],
            b: sigma[e.b],
        };
        Tensor2 {
            terms: self
                .terms
                .iter()
                .map(|(&(x, y), c)| ((p(x), p(y)), c.clone()))
                .collect(),
        }
    }

    /// Total weight of every term, as an integer vector.
    pub fn term_weights(&self, n: usize) -> Vec<Vec<i64>> {
        self.terms
            .keys()
            .map(|(x, y)| {
                x.weight(n)
                    .iter()
                    .zip(y.weight(n))
                    .map(|(a, b)| a + b)
                    .collect()
            })
            .collect()
    }

    /// Image on `V ⊗ W` (classical modules).
    pub fn evaluate(&self, v: &WeightModule, w: &WeightModule) -> Result<Matrix> {
        let mut out = Matrix::zeros(v.dim() * w.dim(), v.dim() * w.dim());
        for (&(x, y), c) in &self.terms {
            let block = v.gl_action(x)?.kron(&w.gl_action(y)?);
            out = out.add(&block.scale(c));
        }
        Ok(out)
    }

    pub fn to_json(&self) -> serde_json::Value {
        let terms: Vec<_> = self
            .terms
            .iter()
            .map(|((x, y), c)| {
                json!([
                    format!("E{}{}", x.a + 1, x.b + 1),
                    format!("E{}{}", y.a + 1, y.b + 1),
                    c.to_text()
                ])
            })
            .collect();
        json!(terms)
    }
}

impl Tensor3 {
    pub fn zero() -> Tensor3 {
        Tensor3::default()
    }

    pub fn add_term(&mut self, x: Elem, y: Elem, z: Elem, c: Scalar) {
        accumulate(&mut self.terms, (x, y, z), c);
    }

    pub fn terms(&self) -> &BTreeMap<(Elem, Elem, Elem), Scalar> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}
