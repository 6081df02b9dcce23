//! Residual reports.

use serde::Serialize;

use crate::catalog::Tensor3;
use crate::scalars::{Matrix, Scalar};

/// First nonzero entry of a residual.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Witness {
    pub location: String,
    pub value: String,
}

/// Outcome of an exact residual check.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ResidualReport {
    pub equation: String,
    pub operands: Vec<String>,
    pub entries_checked: usize,
    pub nonzero_entries: usize,
    /// Largest total degree of a numerator or denominator among the operands.
    pub max_degree: u32,
    pub is_zero: bool,
    pub witness: Option<Witness>,
}

fn degree(x: &Scalar) -> u32 {
    x.numer().total_degree().max(x.denom().total_degree())
}

impl ResidualReport {
    /// Report for `lhs − rhs`.
    pub fn from_matrices(
        equation: &str,
        operands: &[String],
        lhs: &Matrix,
        rhs: &Matrix,
    ) -> ResidualReport {
        let max_degree = (0..lhs.rows())
            .flat_map(|i| (0..lhs.cols()).map(move |j| (i, j)))
            .map(|(i, j)| degree(lhs.get(i, j)).max(degree(rhs.get(i, j))))
            .max()
            .unwrap_or(0);
        ResidualReport::from_residual(equation, operands, &lhs.sub(rhs), max_degree)
    }

    /// Report for a residual matrix.
    pub fn from_residual(
        equation: &str,
        operands: &[String],
        res: &Matrix,
        max_degree: u32,
    ) -> ResidualReport {
        let mut nonzero = 0;
        let mut witness = None;
        for i in 0..res.rows() {
            for j in 0..res.cols() {
                let x = res.get(i, j);
                if !x.is_zero() {
                    nonzero += 1;
                    if witness.is_none() {
                        witness = Some(Witness {
                            location: format!("({i}, {j})"),
                            value: x.to_text(),
                        });
                    }
                }
            }
        }
        ResidualReport {
            equation: equation.into(),
            operands: operands.to_vec(),
            entries_checked: res.rows() * res.cols(),
            nonzero_entries: nonzero,
            max_degree,
            is_zero: nonzero == 0,
            witness,
        }
    }

    /// Report for a residual tensor in `g ⊗ g ⊗ g`.
    pub fn from_tensor(
        equation: &str,
        operands: &[String],
        res: &Tensor3,
        checked: usize,
        max_degree: u32,
    ) -> ResidualReport {
        let witness = res.terms().iter().next().map(|((x, y, z), c)| Witness {
            location: format!(
                "E{}{}⊗E{}{}⊗E{}{}",
                x.a + 1,
                x.b + 1,
                y.a + 1,
                y.b + 1,
                z.a + 1,
                z.b + 1
            ),
            value: c.to_text(),
        });
        ResidualReport {
            equation: equation.into(),
            operands: operands.to_vec(),
            entries_checked: checked,
            nonzero_entries: res.terms().len(),
            max_degree,
            is_zero: res.is_zero(),
            witness,
        }
    }

    /// Conjunction of several reports under one equation name.
    pub fn combine(equation: &str, parts: &[ResidualReport]) -> ResidualReport {
        let mut operands: Vec<String> = Vec::new();
        for p in parts {
            for o in &p.operands {
                if !operands.contains(o) {
                    operands.push(o.clone());
                }
            }
        }
        ResidualReport {
            equation: equation.into(),
            operands,
            entries_checked: parts.iter().map(|p| p.entries_checked).sum(),
            nonzero_entries: parts.iter().map(|p| p.nonzero_entries).sum(),
            max_degree: parts.iter().map(|p| p.max_degree).max().unwrap_or(0),
            is_zero: parts.iter().all(|p| p.is_zero),
            witness: parts.iter().find_map(|p| {
                p.witness.as_ref().map(|w| Witness {
                    location: format!("{}: {}", p.equation, w.location),
                    value: w.value.clone(),
                })
            }),
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        let mut v = serde_json::to_value(self).expect("report serializes");
        v["schema"] = "dybe.residual/1".into();
        v
    }
}
