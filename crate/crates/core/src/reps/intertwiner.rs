//! Intertwiners `Φ^v_λ: M_λ → M_{λ−wt v} ⊗ V` with leading term `x ⊗ v`.
//!
//! Writing `Φ(x_λ) = Σ_β Σ_k b_k x_μ ⊗ φ_k` over a word basis `b_k` of
//! `M_μ[μ − β]`, the singular-vector condition gives
//! `φ = G⁻¹ P` with `P_b = (−K_{j_1}⁻¹E_{j_1})⋯(−K_{j_k}⁻¹E_{j_k}) v` for
//! `b = F_{j_1}⋯F_{j_k}` and `G` the Shapovalov Gram matrix.

use std::collections::BTreeMap;

use crate::rootdata::rats;
use crate::scalars::{Matrix, Mode, Scalar};
use crate::{Error, Result};

use super::module::WeightModule;
use super::verma::{words_of, HighestWeight, VermaSlice, VermaVector, Word};

/// One summand `b x_μ ⊗ φ` of `Φ(x_λ)`.
#[derive(Clone, Debug)]
pub struct IntertwinerTerm {
    pub beta: Vec<i64>,
    pub word: Word,
    pub vector: Vec<Scalar>,
}

/// `Φ^v_λ` through its value on the highest weight vector.
#[derive(Clone, Debug)]
pub struct Intertwiner {
    slice: VermaSlice,
    module: WeightModule,
    v_index: usize,
    terms: Vec<IntertwinerTerm>,
}

/// Weight drops `β ≥ 0` with `wt(v) + β` a weight of `V`, by height.
pub fn reachable_drops(v: &WeightModule, v_index: usize) -> Vec<Vec<i64>> {
    let datum = v.datum();
    let base = v.weight(v_index);
    let mut out: Vec<Vec<i64>> = Vec::new();
    for w in v.weights() {
        let diff: Vec<i64> = w.iter().zip(base).map(|(a, b)| a - b).collect();
        if let Some(c) = datum.root_coeffs(&diff) {
            if c.iter().all(|&x| x >= 0) && !out.contains(&c) {
                out.push(c);
            }
        }
    }
    out.sort_by_key(|b| (b.iter().sum::<i64>(), std::cmp::Reverse(b.clone())));
    out
}

/// Target highest weight `λ − wt(v)` with symbolic λ.
pub fn target_weight(v: &WeightModule, v_index: usize) -> HighestWeight {
    let delta: Vec<i64> = v.weight(v_index).iter().map(|x| -x).collect();
    HighestWeight::symbolic(v.datum(), v.mode(), &delta)
}

/// Solves for `Φ^v_λ` with the target slice built from the weights of `V`.
pub fn solve_intertwiner(v: &WeightModule, v_index: usize) -> Result<Intertwiner> {
    let slice = VermaSlice::with_spaces(target_weight(v, v_index), &reachable_drops(v, v_index))?;
    solve_intertwiner_in(slice, v, v_index)
}

/// Solves for `Φ^v_λ` inside a given target slice.
pub fn solve_intertwiner_in(
    slice: VermaSlice,
    v: &WeightModule,
    v_index: usize,
) -> Result<Intertwiner> {
    if v_index >= v.dim() {
        return Err(Error::Precondition(format!(
            "basis index {v_index} out of range"
        )));
    }
    let hw = slice.highest_weight();
    let expected = target_weight(v, v_index);
    if hw.datum() != v.datum() || hw.mode() != v.mode() || hw.shift() != expected.shift() {
        return Err(Error::Precondition(
            "slice is not at highest weight λ − wt(v)".into(),
        ));
    }
    let quantum = v.mode() == Mode::Quantum;
    let r = v.datum().n() - 1;
    let lowering: Vec<Matrix> = (0..r)
        .map(|j| {
            let e = v.e(j).neg();
            if quantum {
                v.k_matrix(j, -1).mul(&e)
            } else {
                e
            }
        })
        .collect();
    let mut start = vec![Scalar::zero(); v.dim()];
    start[v_index] = Scalar::one();
    let mut terms = Vec::new();
    for beta in reachable_drops(v, v_index) {
        let ws = slice
            .space(&beta)
            .ok_or_else(|| Error::IncreaseDepth(beta.iter().sum::<i64>() as usize))?;
        let p: Vec<Vec<Scalar>> = ws
            .words
            .iter()
            .map(|w| {
                let mut cur = start.clone();
                for &j in w.iter().rev() {
                    cur = lowering[j as usize].apply(&cur);
                }
                cur
            })
            .collect();
        for (k, word) in ws.words.iter().enumerate() {
            let mut phi = vec![Scalar::zero(); v.dim()];
            for (j, pj) in p.iter().enumerate() {
                let g = ws.gram_inv.get(k, j);
                if g.is_zero() {
                    continue;
                }
                for (x, y) in phi.iter_mut().zip(pj) {
                    if !y.is_zero() {
                        *x = &*x + &(g * y);
                    }
                }
            }
            if phi.iter().any(|x| !x.is_zero()) {
                terms.push(IntertwinerTerm {
                    beta: beta.clone(),
                    word: word.clone(),
                    vector: phi,
                });
            }
        }
    }
    Ok(Intertwiner {
        slice,
        module: v.clone(),
        v_index,
        terms,
    })
}

impl Intertwiner {
    pub fn slice(&self) -> &VermaSlice {
        &self.slice
    }

    pub fn module(&self) -> &WeightModule {
        &self.module
    }

    pub fn v_index(&self) -> usize {
        self.v_index
    }

    pub fn terms(&self) -> &[IntertwinerTerm] {
        &self.terms
    }

    /// Coefficient vector in `V` of `b x_μ` for the given word.
    pub fn component(&self, word: &[u8]) -> Vec<Scalar> {
        self.terms
            .iter()
            .find(|t| t.word == word)
            .map(|t| t.vector.clone())
            .unwrap_or_else(|| vec![Scalar::zero(); self.module.dim()])
    }

    /// `⟨Φ⟩`: the coefficient of `x_μ`.
    pub fn expectation_value(&self) -> Vec<Scalar> {
        self.component(&[])
    }

    /// `Δ(E_i) Φ(x_λ)` grouped by Verma word, for every `i`.
    pub fn raising_images(&self) -> Vec<BTreeMap<Word, Vec<Scalar>>> {
        let hw = self.slice.highest_weight();
        let v = &self.module;
        let quantum = v.mode() == Mode::Quantum;
        (0..v.datum().n() - 1)
            .map(|i| {
                let k = v.k_matrix(i, 1);
                let mut out: BTreeMap<Word, Vec<Scalar>> = BTreeMap::new();
                let mut add = |w: Word, c: &Scalar, vec: &[Scalar]| {
                    let slot = out
                        .entry(w)
                        .or_insert_with(|| vec![Scalar::zero(); v.dim()]);
                    for (x, y) in slot.iter_mut().zip(vec) {
                        if !y.is_zero() {
                            *x = &*x + &(c * y);
                        }
                    }
                };
                for t in &self.terms {
                    let kphi = if quantum {
                        k.apply(&t.vector)
                    } else {
                        t.vector.clone()
                    };
                    let single: VermaVector = BTreeMap::from([(t.word.clone(), Scalar::one())]);
                    for (w, c) in hw.apply_e(i, &single) {
                        add(w, &c, &kphi);
                    }
                    add(t.word.clone(), &Scalar::one(), &v.e(i).apply(&t.vector));
                }
                out
            })
            .collect()
    }

    /// Checks that every raising generator kills `Φ(x_λ)`.
    pub fn is_singular(&self) -> bool {
        let hw = self.slice.highest_weight();
        let dim = self.module.dim();
        self.raising_images().into_iter().all(|img| {
            let mut by_beta: BTreeMap<Vec<i64>, Vec<VermaVector>> = BTreeMap::new();
            for (w, vec) in img {
                let beta = word_beta(&w, self.module.datum().n() - 1);
                let entry = by_beta
                    .entry(beta)
                    .or_insert_with(|| vec![BTreeMap::new(); dim]);
                for (c, x) in vec.into_iter().enumerate() {
                    if !x.is_zero() {
                        entry[c].insert(w.clone(), x);
                    }
                }
            }
            by_beta.into_iter().all(|(beta, ys)| {
                let probes = words_of(&beta);
                ys.iter()
                    .all(|y| y.is_empty() || probes.iter().all(|p| hw.pair(p, y).is_zero()))
            })
        })
    }

    pub fn to_json(&self) -> serde_json::Value {
        let terms: Vec<serde_json::Value> = self
            .terms
            .iter()
            .map(|t| {
                serde_json::json!({
                    "word": super::verma::word_text(&t.word),
                    "vector": t.vector.iter().map(Scalar::to_text).collect::<Vec<_>>(),
                })
            })
            .collect();
        serde_json::json!({
            "schema": "dybe.intertwiner/1",
            "module": self.module.label(),
            "v": self.v_index,
            "terms": terms,
        })
    }
}

/// Simple-root content of a word.
pub fn word_beta(w: &[u8], rank: usize) -> Vec<i64> {
    let mut b = vec![0; rank];
    for &j in w {
        b[j as usize] += 1;
    }
    b
}

/// `⟨Φ^{w,v}_λ⟩ = Σ_k q^{−(ν, β_k)} b_k w ⊗ φ_k` with `ν = λ − wt v − wt w`.
pub fn composite_expectation(
    phi_v: &Intertwiner,
    w: &WeightModule,
    w_index: usize,
) -> Result<Vec<Scalar>> {
    let v = phi_v.module();
    let datum = v.datum();
    if w.datum() != datum || w.mode() != v.mode() {
        return Err(Error::FlavorMismatch(
            "composite over different algebras".into(),
        ));
    }
    let delta: Vec<i64> = v
        .weight(phi_v.v_index)
        .iter()
        .zip(w.weight(w_index))
        .map(|(a, b)| -a - b)
        .collect();
    let nu = HighestWeight::symbolic(datum, v.mode(), &delta);
    let zero = vec![0; datum.n() - 1];
    let mut wvec = vec![Scalar::zero(); w.dim()];
    wvec[w_index] = Scalar::one();
    let mut out = vec![Scalar::zero(); w.dim() * v.dim()];
    for t in phi_v.terms() {
        let bw = w.apply_f_word(&t.word, &wvec);
        if bw.iter().all(Scalar::is_zero) {
            continue;
        }
        let factor = match v.mode() {
            Mode::Classical => Scalar::one(),
            Mode::Quantum => nu.q_pair(-1, &zero, &rats(&word_weight(&t.word, datum.n())))?,
        };
        for (a, x) in bw.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            let c = &factor * x;
            for (b, y) in t.vector.iter().enumerate() {
                if !y.is_zero() {
                    let slot = &mut out[a * v.dim() + b];
                    *slot = &*slot + &(&c * y);
                }
            }
        }
    }
    Ok(out)
}

fn word_weight(w: &[u8], n: usize) -> Vec<i64> {
    let mut out = vec![0; n];
    for &j in w {
        out[j as usize] += 1;
        out[j as usize + 1] -= 1;
    }
    out
}
