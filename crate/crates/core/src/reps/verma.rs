//! Depth-truncated Verma modules with symbolic highest weight.
//!
//! Vectors are combinations of words `F_{j_1} ⋯ F_{j_k} x` in the simple
//! lowering generators. Raising generators act by
//! `E_i F_{j_1}⋯F_{j_k} x = Σ_{p: j_p = i} [(μ − Σ_{r>p} α_{j_r}, α_i)] F_{j_1}⋯F̂_{j_p}⋯F_{j_k} x`
//! with `[·]` the identity classically and the q-number quantumly. Each
//! weight space gets a basis of words selected by rank; coordinates come
//! from the inverse of the contravariant (Shapovalov) form
//! `⟨F_j u, y⟩ = ⟨u, E_j y⟩`, `⟨x, x⟩ = 1`.

use std::collections::BTreeMap;

use num::{BigInt, BigRational, Zero};

use crate::rootdata::{rat, rats, RootDatum};
use crate::scalars::{Matrix, Mode, Scalar, Var};
use crate::{Error, Result};

/// A word in the simple lowering generators, leftmost applied last.
pub type Word = Vec<u8>;

/// A vector of a Verma module: word → coefficient.
pub type VermaVector = BTreeMap<Word, Scalar>;

/// Highest weight `λ + δ` with symbolic λ (or just δ when not symbolic).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HighestWeight {
    datum: RootDatum,
    mode: Mode,
    symbolic: bool,
    shift: Vec<BigRational>,
}

impl HighestWeight {
    pub fn symbolic(datum: &RootDatum, mode: Mode, shift: &[i64]) -> HighestWeight {
        HighestWeight {
            datum: datum.clone(),
            mode,
            symbolic: true,
            shift: rats(shift),
        }
    }

    pub fn constant(datum: &RootDatum, mode: Mode, weight: &[BigRational]) -> HighestWeight {
        HighestWeight {
            datum: datum.clone(),
            mode,
            symbolic: false,
            shift: weight.to_vec(),
        }
    }

    pub fn datum(&self) -> &RootDatum {
        &self.datum
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    pub fn shift(&self) -> &[BigRational] {
        &self.shift
    }

    fn alpha(&self, i: usize) -> Vec<BigRational> {
        rats(&crate::rootdata::Root::new(i, i + 1).weight(self.datum.n()))
    }

    /// Weight (ε-basis) of the simple-root combination `β`.
    pub fn beta_weight(&self, beta: &[i64]) -> Vec<BigRational> {
        let n = self.datum.n();
        let mut w = vec![BigRational::zero(); n];
        for (i, &c) in beta.iter().enumerate() {
            w[i] += rat(c);
            w[i + 1] -= rat(c);
        }
        w
    }

    /// `(hw − β, γ)` split as (λ-part, constant part) for a rational weight γ.
    fn pairing(&self, beta: &[i64], gamma: &[BigRational]) -> (Scalar, BigRational) {
        let bw = self.beta_weight(beta);
        let diff: Vec<BigRational> = self.shift.iter().zip(&bw).map(|(a, b)| a - b).collect();
        let c = self.datum.form(&diff, gamma);
        let l = if self.symbolic {
            self.datum.lambda_pair(gamma)
        } else {
            Scalar::zero()
        };
        (l, c)
    }

    /// `q^{k(hw − β, γ)}` (quantum) for a weight γ.
    pub fn q_pair(&self, k: i64, beta: &[i64], gamma: &[BigRational]) -> Result<Scalar> {
        let (_, c) = self.pairing(beta, gamma);
        let t = if self.symbolic {
            self.datum.q_lambda_pair(k, gamma)?
        } else {
            Scalar::one()
        };
        let e = c * rat(2 * k);
        if !e.is_integer() {
            return Err(Error::Precondition(format!("half-integral q-power {e}")));
        }
        let e: i64 = e
            .to_integer()
            .try_into()
            .map_err(|_| Error::Internal("overflow".into()))?;
        Ok(t * Scalar::s_pow(e))
    }

    /// Value of `[E_i, F_i]` on a vector of weight `hw − β`.
    pub fn bracket(&self, i: usize, beta: &[i64]) -> Scalar {
        let a = self.alpha(i);
        match self.mode {
            Mode::Classical => {
                let (l, c) = self.pairing(beta, &a);
                l + Scalar::rational(c)
            }
            Mode::Quantum => {
                let t = self
                    .q_pair(1, beta, &a)
                    .expect("simple roots pair integrally");
                let q = Scalar::q();
                (&t - &t.pow(-1)) / (&q - &q.pow(-1))
            }
        }
    }

    /// Applies `E_i` to a word vector.
    pub fn apply_e(&self, i: usize, y: &VermaVector) -> VermaVector {
        let r = self.datum.n() - 1;
        let mut out: VermaVector = BTreeMap::new();
        for (word, c) in y {
            let mut suffix = vec![0i64; r];
            for p in (0..word.len()).rev() {
                let j = word[p] as usize;
                if j == i {
                    let coeff = self.bracket(i, &suffix) * c;
                    if !coeff.is_zero() {
                        let mut w = word.clone();
                        w.remove(p);
                        let slot = out.entry(w).or_insert_with(Scalar::zero);
                        *slot = &*slot + &coeff;
                    }
                }
                suffix[j] += 1;
            }
        }
        out.retain(|_, c| !c.is_zero());
        out
    }

    /// Contravariant pairing `⟨word·x, y⟩`.
    pub fn pair(&self, word: &[u8], y: &VermaVector) -> Scalar {
        if word.is_empty() {
            return y.get(&Vec::new()).cloned().unwrap_or_else(Scalar::zero);
        }
        let next = self.apply_e(word[0] as usize, y);
        if next.is_empty() {
            return Scalar::zero();
        }
        self.pair(&word[1..], &next)
    }

    fn sample_point(&self) -> Vec<(Var, BigRational)> {
        let k = self.datum.coords().len();
        let mut pt = Vec::new();
        for c in 1..=k {
            let v = BigRational::new(
                BigInt::from(97 + 31 * c as i64),
                BigInt::from(13 + 2 * c as i64),
            );
            match self.mode {
                Mode::Classical => pt.push((Var::l(c), v)),
                Mode::Quantum => pt.push((Var::t(c), v)),
            }
        }
        if self.mode == Mode::Quantum {
            pt.push((Var::s(), BigRational::new(BigInt::from(7), BigInt::from(5))));
        }
        pt
    }
}

/// Word basis of one weight space with its Gram matrix and inverse.
#[derive(Clone, Debug)]
pub struct WeightSpace {
    pub beta: Vec<i64>,
    pub words: Vec<Word>,
    pub gram: Matrix,
    pub gram_inv: Matrix,
}

/// Number of ways to write `β` as a sum of positive roots.
pub fn kostant_count(beta: &[i64]) -> usize {
    let r = beta.len();
    let roots: Vec<Vec<i64>> = (0..r)
        .flat_map(|a| (a..r).map(move |b| (0..r).map(|k| i64::from(k >= a && k <= b)).collect()))
        .collect();
    fn go(rest: &mut Vec<i64>, roots: &[Vec<i64>], from: usize) -> usize {
        if rest.iter().all(|&x| x == 0) {
            return 1;
        }
        let mut total = 0;
        for k in from..roots.len() {
            if roots[k].iter().zip(rest.iter()).all(|(a, b)| a <= b) {
                for (x, a) in rest.iter_mut().zip(&roots[k]) {
                    *x -= a;
                }
                total += go(rest, roots, k);
                for (x, a) in rest.iter_mut().zip(&roots[k]) {
                    *x += a;
                }
            }
        }
        total
    }
    go(&mut beta.to_vec(), &roots, 0)
}

/// All words with letter counts `beta`, in lexicographic order.
pub(crate) fn words_of(beta: &[i64]) -> Vec<Word> {
    let total: i64 = beta.iter().sum();
    let mut out = Vec::new();
    fn go(cur: &mut Word, left: &mut Vec<i64>, total: i64, out: &mut Vec<Word>) {
        if cur.len() as i64 == total {
            out.push(cur.clone());
            return;
        }
        for j in 0..left.len() {
            if left[j] > 0 {
                left[j] -= 1;
                cur.push(j as u8);
                go(cur, left, total, out);
                cur.pop();
                left[j] += 1;
            }
        }
    }
    go(&mut Vec::new(), &mut beta.to_vec(), total, &mut out);
    out
}

fn numeric_rank(rows: &[Vec<BigRational>]) -> usize {
    let mut a: Vec<Vec<BigRational>> = rows.to_vec();
    let mut rank = 0;
    let cols = a.first().map_or(0, Vec::len);
    for col in 0..cols {
        let Some(p) = (rank..a.len()).find(|&r| !a[r][col].is_zero()) else {
            continue;
        };
        a.swap(rank, p);
        let pv = a[rank][col].clone();
        for r in 0..a.len() {
            if r != rank && !a[r][col].is_zero() {
                let f = &a[r][col] / &pv;
                for k in col..cols {
                    let x = &f * &a[rank][k];
                    a[r][k] -= x;
                }
            }
        }
        rank += 1;
    }
    rank
}

impl WeightSpace {
    fn build(hw: &HighestWeight, beta: &[i64]) -> Result<WeightSpace> {
        let target = kostant_count(beta);
        let candidates = words_of(beta);
        let point = hw.sample_point();
        let eval = |x: &Scalar| -> Result<BigRational> {
            x.evaluate_at(&point)
                .map_err(|_| Error::DegenerateWeight("sample point hits a pole".into()))
        };
        let vec_of = |w: &Word| -> VermaVector { BTreeMap::from([(w.clone(), Scalar::one())]) };
        let mut chosen: Vec<Word> = Vec::new();
        let mut num: Vec<Vec<BigRational>> = Vec::new();
        for w in candidates {
            if chosen.len() == target {
                break;
            }
            let wv = vec_of(&w);
            // Row of numeric pairings with all candidates chosen so far plus itself.
            let mut trial = num.clone();
            let mut row = Vec::with_capacity(chosen.len() + 1);
            for (k, c) in chosen.iter().enumerate() {
                let x = eval(&hw.pair(c, &wv))?;
                trial[k].push(x);
                row.push(eval(&hw.pair(&w, &vec_of(c)))?);
            }
            row.push(eval(&hw.pair(&w, &wv))?);
            trial.push(row);
            if numeric_rank(&trial) == chosen.len() + 1 {
                chosen.push(w);
                num = trial;
            }
        }
        if chosen.len() != target {
            return Err(Error::DegenerateWeight(format!(
                "weight space {beta:?} has rank {} below {target}",
                chosen.len()
            )));
        }
        let k = chosen.len();
        let gram = Matrix::from_fn(k, k, |i, j| hw.pair(&chosen[i], &vec_of(&chosen[j])));
        let gram_inv = gram
            .inverse()
            .map_err(|_| Error::DegenerateWeight(format!("singular Gram matrix at {beta:?}")))?;
        Ok(WeightSpace {
            beta: beta.to_vec(),
            words: chosen,
            gram,
            gram_inv,
        })
    }

    pub fn dim(&self) -> usize {
        self.words.len()
    }
}

/// Verma module truncated to a set of weight spaces.
#[derive(Clone, Debug)]
pub struct VermaSlice {
    hw: HighestWeight,
    depth: i64,
    spaces: BTreeMap<Vec<i64>, WeightSpace>,
}

fn betas_up_to(r: usize, depth: i64) -> Vec<Vec<i64>> {
    let mut out = vec![Vec::new()];
    for _ in 0..r {
        let mut next = Vec::new();
        for b in &out {
            let used: i64 = b.iter().sum();
            for c in 0..=(depth - used) {
                let mut nb = b.clone();
                nb.push(c);
                next.push(nb);
            }
        }
        out = next;
    }
    out.sort_by_key(|b| (b.iter().sum::<i64>(), std::cmp::Reverse(b.clone())));
    out
}

impl VermaSlice {
    /// All weight spaces `M[hw − β]` with `ht β ≤ depth`.
    pub fn new(hw: HighestWeight, depth: i64) -> Result<VermaSlice> {
        let r = hw.datum.n() - 1;
        let betas = betas_up_to(r, depth.max(0));
        VermaSlice::with_spaces(hw, &betas)
    }

    /// Only the listed weight spaces.
    pub fn with_spaces(hw: HighestWeight, betas: &[Vec<i64>]) -> Result<VermaSlice> {
        let built: Vec<Result<WeightSpace>> = {
            use rayon::prelude::*;
            betas
                .par_iter()
                .map(|b| WeightSpace::build(&hw, b))
                .collect()
        };
        let mut spaces = BTreeMap::new();
        let mut depth = 0;
        for ws in built {
            let ws = ws?;
            depth = depth.max(ws.beta.iter().sum());
            spaces.insert(ws.beta.clone(), ws);
        }
        Ok(VermaSlice { hw, depth, spaces })
    }

    pub fn highest_weight(&self) -> &HighestWeight {
        &self.hw
    }

    pub fn depth(&self) -> i64 {
        self.depth
    }

    pub fn dim(&self) -> usize {
        self.spaces.values().map(WeightSpace::dim).sum()
    }

    pub fn space(&self, beta: &[i64]) -> Option<&WeightSpace> {
        self.spaces.get(beta)
    }

    pub fn spaces(&self) -> impl Iterator<Item = &WeightSpace> {
        self.spaces.values()
    }

    /// Basis coordinates of a vector lying in `M[hw − β]`.
    pub fn coordinates(&self, beta: &[i64], y: &VermaVector) -> Result<Vec<Scalar>> {
        let ws = self
            .spaces
            .get(beta)
            .ok_or_else(|| Error::IncreaseDepth(beta.iter().sum::<i64>() as usize))?;
        let pairs: Vec<Scalar> = ws.words.iter().map(|w| self.hw.pair(w, y)).collect();
        Ok(ws.gram_inv.apply(&pairs))
    }

    /// Matrix of `E_i: M[hw − β] → M[hw − β + α_i]` in word-basis coordinates.
    pub fn e_matrix(&self, i: usize, beta: &[i64]) -> Result<Matrix> {
        let src = self.spaces.get(beta).ok_or(Error::IncreaseDepth(0))?;
        let mut tb = beta.to_vec();
        tb[i] -= 1;
        if tb[i] < 0 {
            return Ok(Matrix::zeros(0, src.dim()));
        }
        let tgt = self.spaces.get(&tb).ok_or(Error::IncreaseDepth(0))?;
        let mut m = Matrix::zeros(tgt.dim(), src.dim());
        for (k, w) in src.words.iter().enumerate() {
            let y = self
                .hw
                .apply_e(i, &BTreeMap::from([(w.clone(), Scalar::one())]));
            let c = self.coordinates(&tb, &y)?;
            for (r, x) in c.into_iter().enumerate() {
                m.set(r, k, x);
            }
        }
        Ok(m)
    }

    /// Matrix of `F_i: M[hw − β] → M[hw − β − α_i]` in word-basis coordinates.
    pub fn f_matrix(&self, i: usize, beta: &[i64]) -> Result<Matrix> {
        let src = self.spaces.get(beta).ok_or(Error::IncreaseDepth(0))?;
        let mut tb = beta.to_vec();
        tb[i] += 1;
        let tgt = self
            .spaces
            .get(&tb)
            .ok_or(Error::IncreaseDepth(tb.iter().sum::<i64>() as usize))?;
        let mut m = Matrix::zeros(tgt.dim(), src.dim());
        for (k, w) in src.words.iter().enumerate() {
            let mut nw = vec![i as u8];
            nw.extend_from_slice(w);
            let c = self.coordinates(&tb, &BTreeMap::from([(nw, Scalar::one())]))?;
            for (r, x) in c.into_iter().enumerate() {
                m.set(r, k, x);
            }
        }
        Ok(m)
    }

    pub fn to_json(&self) -> serde_json::Value {
        let spaces: Vec<serde_json::Value> = self
            .spaces
            .values()
            .map(|ws| {
                serde_json::json!({
                    "beta": ws.beta,
                    "words": ws.words.iter().map(|w| word_text(w)).collect::<Vec<_>>(),
                    "gram": ws.gram.to_text_rows(),
                })
            })
            .collect();
        serde_json::json!({
            "schema": "dybe.verma/1",
            "algebra": self.hw.datum.name(),
            "quantum": self.hw.mode == Mode::Quantum,
            "depth": self.depth,
            "spaces": spaces,
        })
    }
}

/// Text form `f1*f2*x` of a word vector basis element.
pub fn word_text(w: &[u8]) -> String {
    let mut s: Vec<String> = w.iter().map(|j| format!("f{}", j + 1)).collect();
    s.push("x".into());
    s.join("*")
}

/// Gram matrix of the Shapovalov form on `M[hw − β]`.
pub fn shapovalov_gram(slice: &VermaSlice, beta: &[i64]) -> Result<Matrix> {
    slice
        .space(beta)
        .map(|ws| ws.gram.clone())
        .ok_or_else(|| Error::IncreaseDepth(beta.iter().sum::<i64>() as usize))
}

/// `VermaSlice::new` with a symbolic highest weight λ.
pub fn verma_slice(datum: &RootDatum, depth: i64, mode: Mode) -> Result<VermaSlice> {
    VermaSlice::new(
        HighestWeight::symbolic(datum, mode, &vec![0; datum.n()]),
        depth,
    )
}
