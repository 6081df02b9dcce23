//! Dynamical operators on tensor products of weight modules.

use std::cell::RefCell;
use std::collections::HashMap;
use std::sync::Mutex;

use num::BigRational;

use crate::reps::{place_two, WeightModule};
use crate::rootdata::{RootDatum, Weight};
use crate::scalars::{Matrix, Mode, Scalar};
use crate::{Error, Result};

/// A matrix on `V_1 ⊗ ⋯ ⊗ V_k` with entries depending on λ.
#[derive(Debug)]
pub struct DynOp {
    factors: Vec<WeightModule>,
    matrix: Matrix,
    mode: Mode,
    weight_zero: bool,
    shifted: Mutex<HashMap<Vec<BigRational>, Matrix>>,
}

impl Clone for DynOp {
    fn clone(&self) -> DynOp {
        DynOp {
            factors: self.factors.clone(),
            matrix: self.matrix.clone(),
            mode: self.mode,
            weight_zero: self.weight_zero,
            shifted: Mutex::new(HashMap::new()),
        }
    }
}

impl PartialEq for DynOp {
    fn eq(&self, o: &DynOp) -> bool {
        self.factors == o.factors && self.matrix == o.matrix
    }
}

/// Per-factor weights of every basis vector of a tensor product.
pub fn slot_weights(factors: &[WeightModule]) -> Vec<Vec<Weight>> {
    let mut out: Vec<Vec<Weight>> = vec![Vec::new()];
    for m in factors {
        out = out
            .iter()
            .flat_map(|prefix| {
                m.weights().iter().map(move |w| {
                    let mut p = prefix.clone();
                    p.push(w.clone());
                    p
                })
            })
            .collect();
    }
    out
}

fn sum_weights(ws: &[Weight], n: usize) -> Weight {
    let mut out = vec![0; n];
    for w in ws {
        for (o, x) in out.iter_mut().zip(w) {
            *o += x;
        }
    }
    out
}

impl DynOp {
    pub fn new(factors: Vec<WeightModule>, matrix: Matrix) -> Result<DynOp> {
        let first = factors
            .first()
            .ok_or_else(|| Error::Precondition("operator without factors".into()))?;
        let (datum, mode) = (first.datum().clone(), first.mode());
        if factors
            .iter()
            .any(|m| m.datum() != &datum || m.mode() != mode)
        {
            return Err(Error::FlavorMismatch(
                "factors over different algebras".into(),
            ));
        }
        let dim: usize = factors.iter().map(WeightModule::dim).product();
        if matrix.rows() != dim || matrix.cols() != dim {
            return Err(Error::Precondition(format!(
                "matrix is {}x{} but the tensor product has dimension {dim}",
                matrix.rows(),
                matrix.cols()
            )));
        }
        let totals: Vec<Weight> = slot_weights(&factors)
            .iter()
            .map(|ws| sum_weights(ws, datum.n()))
            .collect();
        let weight_zero = (0..dim)
            .all(|i| (0..dim).all(|j| matrix.get(i, j).is_zero() || totals[i] == totals[j]));
        Ok(DynOp {
            factors,
            matrix,
            mode,
            weight_zero,
            shifted: Mutex::new(HashMap::new()),
        })
    }

    pub fn factors(&self) -> &[WeightModule] {
        &self.factors
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    pub fn into_matrix(self) -> Matrix {
        self.matrix
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    pub fn datum(&self) -> &RootDatum {
        self.factors[0].datum()
    }

    pub fn is_weight_zero(&self) -> bool {
        self.weight_zero
    }

    pub fn dims(&self) -> Vec<usize> {
        self.factors.iter().map(WeightModule::dim).collect()
    }

    pub fn dim(&self) -> usize {
        self.matrix.rows()
    }

    /// The matrix at `λ − μ` for an integral weight μ.
    pub fn at_shift(&self, mu: &[i64]) -> Result<Matrix> {
        if mu.iter().all(|&x| x == 0) {
            return Ok(self.matrix.clone());
        }
        let shift = self.datum().shift_vector(mu);
        if let Some(m) = self.shifted.lock().expect("shift cache").get(&shift) {
            return Ok(m.clone());
        }
        let m = self.matrix.try_map(|x| x.shift_substitute(&shift))?;
        self.shifted
            .lock()
            .expect("shift cache")
            .insert(shift, m.clone());
        Ok(m)
    }

    /// Same matrix with entries transformed.
    pub fn map_entries<F>(&self, f: F) -> Result<DynOp>
    where
        F: Fn(&Scalar) -> Result<Scalar> + Sync + Send,
    {
        DynOp::new(self.factors.clone(), self.matrix.try_map(f)?)
    }

    /// Places a two-factor operator on slots `(first, second)` of
    /// `modules`, evaluated at `λ − Σ_{k ∈ shift_by} h^{(k)}`.
    pub fn placed(
        &self,
        modules: &[WeightModule],
        first: usize,
        second: usize,
        shift_by: &[usize],
    ) -> Result<Matrix> {
        if self.factors.len() != 2
            || modules[first] != self.factors[0]
            || modules[second] != self.factors[1]
        {
            return Err(Error::Precondition(
                "slot modules do not match the operator".into(),
            ));
        }
        if shift_by.iter().any(|&k| k == first || k == second) {
            return Err(Error::Precondition(
                "cannot shift by an acted-on slot".into(),
            ));
        }
        let dims: Vec<usize> = modules.iter().map(WeightModule::dim).collect();
        let others: Vec<usize> = (0..modules.len())
            .filter(|&k| k != first && k != second)
            .collect();
        let n = self.datum().n();
        let failure = RefCell::new(None);
        let out = place_two(&dims, first, second, |idx| {
            let mut mu = vec![0; n];
            for (pos, &slot) in others.iter().enumerate() {
                if shift_by.contains(&slot) {
                    for (m, x) in mu.iter_mut().zip(modules[slot].weight(idx[pos])) {
                        *m += x;
                    }
                }
            }
            match self.at_shift(&mu) {
                Ok(m) => m,
                Err(e) => {
                    *failure.borrow_mut() = Some(e);
                    Matrix::zeros(self.dim(), self.dim())
                }
            }
        });
        match failure.into_inner() {
            Some(e) => Err(e),
            None => Ok(out),
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        let labels: Vec<String> = slot_weights(&self.factors)
            .iter()
            .map(|ws| {
                ws.iter()
                    .map(|w| format!("{w:?}").replace(' ', ""))
                    .collect::<Vec<_>>()
                    .join("x")
            })
            .collect();
        serde_json::json!({
            "schema": "dybe.dynop/1",
            "algebra": self.datum().name(),
            "quantum": self.mode == Mode::Quantum,
            "factors": self.factors.iter().map(|m| serde_json::json!({
                "label": m.label(),
                "dim": m.dim(),
                "weights": m.weights(),
            })).collect::<Vec<_>>(),
            "basis": labels,
            "weight_zero": self.weight_zero,
            "dim": self.dim(),
            "entries": self.matrix.to_text_map(),
        })
    }

    /// Reads the output of [`DynOp::to_json`]. Factors must be vector or
    /// trivial representations, which are determined by their labels.
    pub fn from_json(v: &serde_json::Value) -> Result<DynOp> {
        let bad = |what: &str| Error::Parse(format!("operator JSON: {what}"));
        if v["schema"] != "dybe.dynop/1" {
            return Err(bad("schema must be \"dybe.dynop/1\""));
        }
        let algebra = v["algebra"]
            .as_str()
            .ok_or_else(|| bad("missing algebra"))?;
        let datum = RootDatum::from_name(algebra)?;
        let mode = match v["quantum"].as_bool() {
            Some(true) => Mode::Quantum,
            Some(false) => Mode::Classical,
            None => return Err(bad("missing quantum flag")),
        };
        let vector = WeightModule::vector(&datum, mode);
        let trivial = WeightModule::trivial(&datum, mode);
        let factors = v["factors"]
            .as_array()
            .ok_or_else(|| bad("missing factors"))?
            .iter()
            .map(|f| match f["label"].as_str() {
                Some(l) if l == vector.label() => Ok(vector.clone()),
                Some(l) if l == trivial.label() => Ok(trivial.clone()),
                Some(l) => Err(Error::Precondition(format!(
                    "cannot rebuild factor {l:?} from its label"
                ))),
                None => Err(bad("factor without label")),
            })
            .collect::<Result<Vec<_>>>()?;
        let dim: usize = factors.iter().map(WeightModule::dim).product();
        let entries = v["entries"]
            .as_object()
            .ok_or_else(|| bad("entries must be an object"))?;
        DynOp::new(factors, Matrix::from_text_map(dim, dim, entries)?)
    }
}
