//! Classical dynamical r-matrices: the basic rational and trigonometric
//! solutions, the zero-coupling family `r^l`, the family `r^ε_X` and the
//! generalized Belavin-Drinfeld construction on `l ⊆ h`.
//!
//! Rational coefficients are functions of the `l_c`. Trigonometric ones live
//! in the field of `ε` and `w_c = e^{−ε l_c/2}`, with
//! `(ε/2) coth((ε/2)(α, λ)) = (ε/2)(u_α + 1)/(u_α − 1)`, `u_α = e^{ε(α, λ)}`.

use num::{BigRational, Zero};
use serde_json::json;

use crate::reps::WeightModule;
use crate::rootdata::{rats, Coords, Elem, Flavor, Root, RootDatum};
use crate::scalars::{lambda_derivation, Matrix, Scalar};
use crate::{Error, Result};

use super::tensor::Tensor2;

/// A function `λ ↦ r(λ) ∈ g ⊗ g` with its declared coupling constant.
#[derive(Clone, Debug, PartialEq)]
pub struct ClassicalRMatrix {
    datum: RootDatum,
    label: String,
    coupling: Scalar,
    tensor: Tensor2,
}

impl ClassicalRMatrix {
    /// Wraps a tensor; it must be invariant under the λ-space of `datum`.
    pub fn new(
        datum: &RootDatum,
        label: &str,
        coupling: Scalar,
        tensor: Tensor2,
    ) -> Result<ClassicalRMatrix> {
        let r = ClassicalRMatrix {
            datum: datum.clone(),
            label: label.into(),
            coupling,
            tensor,
        };
        if !r.is_invariant() {
            return Err(Error::Precondition(format!(
                "{label} is not invariant under the dynamical torus"
            )));
        }
        Ok(r)
    }

    pub fn datum(&self) -> &RootDatum {
        &self.datum
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn coupling(&self) -> &Scalar {
        &self.coupling
    }

    pub fn tensor(&self) -> &Tensor2 {
        &self.tensor
    }

    /// Every term has weight orthogonal to the coordinate directions `H_c`.
    pub fn is_invariant(&self) -> bool {
        let n = self.datum.n();
        self.tensor.term_weights(n).iter().all(|w| {
            self.datum.coords().hs().iter().all(|h| {
                let s: BigRational = h
                    .iter()
                    .zip(w)
                    .map(|(x, &y)| x * BigRational::from_integer(y.into()))
                    .sum();
                s.is_zero()
            })
        })
    }

    /// `∂r/∂l_c`, with `∂w_c = −(ε/2) w_c` for the declared coupling ε.
    pub fn derivative(&self, c: usize) -> Tensor2 {
        let rules = lambda_derivation(c + 1, &self.coupling);
        self.tensor
            .try_map(|x| Ok(x.derive(&rules)))
            .expect("derivation is total")
    }

    /// Image on `V ⊗ W` (classical modules over the same algebra).
    pub fn evaluate(&self, v: &WeightModule, w: &WeightModule) -> Result<Matrix> {
        if v.datum().n() != self.datum.n() || w.datum().n() != self.datum.n() {
            return Err(Error::FlavorMismatch("modules of a different rank".into()));
        }
        self.tensor.evaluate(v, w)
    }

    pub fn with_tensor(&self, label: &str, tensor: Tensor2) -> Result<ClassicalRMatrix> {
        ClassicalRMatrix::new(&self.datum, label, self.coupling.clone(), tensor)
    }

    pub fn to_json(&self) -> serde_json::Value {
        json!({
            "schema": "dybe.rmatrix/1",
            "label": self.label,
            "algebra": self.datum.name(),
            "coordinates": self.datum.coords().to_json(),
            "coupling": self.coupling.to_text(),
            "terms": self.tensor.to_json(),
        })
    }
}

fn root_pair(datum: &RootDatum, r: Root) -> Scalar {
    datum.lambda_pair(&rats(&r.weight(datum.n())))
}

/// `(ε/2)(u_α + 1)/(u_α − 1)` with `u_α = e^{ε(α, λ)}`.
fn half_coth(datum: &RootDatum, r: Root, eps: &Scalar) -> Result<Scalar> {
    let u = datum.exp_eps_pair(&r.weight(datum.n()))?;
    let half = Scalar::ratio(1, 2) * eps;
    Ok(half * (&u + &Scalar::one()) / (&u - &Scalar::one()))
}

/// `r(λ) = Σ_{α>0} (e_α⊗e_{−α} − e_{−α}⊗e_α)/(α, λ)`.
pub fn basic_rational_r(datum: &RootDatum) -> Result<ClassicalRMatrix> {
    let mut t = Tensor2::zero();
    for a in datum.positive_roots() {
        t.add_wedge(a.vector(), a.neg().vector(), root_pair(datum, a).inv()?);
    }
    ClassicalRMatrix::new(datum, "basic-rational", Scalar::zero(), t)
}

/// `r^ε(λ) = (ε/2)Ω + Σ_{α>0} (ε/2)coth((ε/2)(α, λ))(e_α⊗e_{−α} − e_{−α}⊗e_α)`.
pub fn basic_trig_r(datum: &RootDatum, eps: &Scalar) -> Result<ClassicalRMatrix> {
    if eps.is_zero() {
        return Err(Error::Precondition("ε = 0 is the rational family".into()));
    }
    let mut t = Tensor2::casimir(datum).scale(&(Scalar::ratio(1, 2) * eps));
    for a in datum.positive_roots() {
        t.add_wedge(a.vector(), a.neg().vector(), half_coth(datum, a, eps)?);
    }
    ClassicalRMatrix::new(datum, "basic-trig", eps.clone(), t)
}

fn sum_root(x: Root, y: Root) -> Option<Root> {
    if x.b == y.a && x.a != y.b {
        Some(Root::new(x.a, y.b))
    } else if y.b == x.a && y.a != x.b {
        Some(Root::new(y.a, x.b))
    } else {
        None
    }
}

/// `r^l(λ) = Σ_{α>0, e_α ∈ l} (e_α⊗e_{−α} − e_{−α}⊗e_α)/(λ, α)` for the
/// reductive subalgebra `l ⊇ h` spanned by the roots in `roots` (and their negatives).
pub fn classical_r_zero_coupling(datum: &RootDatum, roots: &[Root]) -> Result<ClassicalRMatrix> {
    let mut set: Vec<Root> = roots.iter().flat_map(|&r| [r, r.neg()]).collect();
    set.sort();
    set.dedup();
    if set.iter().any(|r| r.a >= datum.n() || r.b >= datum.n()) {
        return Err(Error::InvalidSubalgebra("root index out of range".into()));
    }
    for &x in &set {
        for &y in &set {
            if let Some(z) = sum_root(x, y) {
                if !set.contains(&z) {
                    return Err(Error::InvalidSubalgebra(format!(
                        "roots are not closed: {x:?} + {y:?} is missing"
                    )));
                }
            }
        }
    }
    let mut t = Tensor2::zero();
    for a in set.iter().filter(|r| r.is_positive()) {
        t.add_wedge(a.vector(), a.neg().vector(), root_pair(datum, *a).inv()?);
    }
    ClassicalRMatrix::new(datum, "r-l", Scalar::zero(), t)
}

/// Whether `α` is a combination of the simple roots indexed by `x`.
fn in_span(r: Root, x: &[usize]) -> bool {
    let (lo, hi) = if r.a < r.b { (r.a, r.b) } else { (r.b, r.a) };
    (lo..hi).all(|i| x.contains(&i))
}

/// `r_X(λ) = (ε/2)Ω + Σ_{α∈Δ} φ_α(λ) e_α⊗e_{−α}`; `x` lists simple-root
/// indices (`i` stands for `α_i = ε_i − ε_{i+1}`, 0-based).
pub fn classical_r_trig_x(
    datum: &RootDatum,
    x: &[usize],
    eps: &Scalar,
) -> Result<ClassicalRMatrix> {
    if x.iter().any(|&i| i + 1 >= datum.n()) {
        return Err(Error::Precondition("simple root index out of range".into()));
    }
    let half = Scalar::ratio(1, 2) * eps;
    let mut t = Tensor2::casimir(datum).scale(&half);
    for a in datum.roots() {
        let phi = if in_span(a, x) {
            half_coth(datum, a, eps)?
        } else if a.is_positive() {
            half.clone()
        } else {
            -half.clone()
        };
        t.add_term(a.vector(), a.neg().vector(), phi);
    }
    ClassicalRMatrix::new(datum, "r-eps-X", eps.clone(), t)
}

/// A generalized Belavin-Drinfeld triple `(Γ₁, Γ₂, τ)` together with the
/// subalgebra `l ⊆ h`. Simple roots are 0-based indices; `l` is given by
/// integer basis vectors in ε-coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BDTriple {
    pub gamma1: Vec<usize>,
    pub gamma2: Vec<usize>,
    /// `τ(gamma1[k]) = gamma2[k]`.
    pub l_basis: Vec<Vec<i64>>,
}

/// A root vector with an integer coefficient.
type Vector = Option<(Elem, i64)>;

impl BDTriple {
    pub fn new(gamma1: Vec<usize>, gamma2: Vec<usize>, l_basis: Vec<Vec<i64>>) -> BDTriple {
        BDTriple {
            gamma1,
            gamma2,
            l_basis,
        }
    }

    fn tau_simple(&self, i: usize) -> Option<usize> {
        self.gamma1
            .iter()
            .position(|&g| g == i)
            .map(|k| self.gamma2[k])
    }

    /// Checks bijectivity, norm preservation and `l`-admissibility.
    pub fn validate(&self, datum: &RootDatum) -> Result<()> {
        let n = datum.n();
        let bad = |m: String| Err(Error::InvalidTriple(m));
        if datum.flavor() != Flavor::Gl {
            return bad("triples are built on gl_n data".into());
        }
        if self.gamma1.len() != self.gamma2.len() {
            return bad("Γ₁ and Γ₂ have different sizes".into());
        }
        let distinct = |v: &[usize]| {
            let mut s = v.to_vec();
            s.sort();
            s.dedup();
            s.len() == v.len()
        };
        if !distinct(&self.gamma1) || !distinct(&self.gamma2) {
            return bad("τ is not a bijection".into());
        }
        if self.gamma1.iter().chain(&self.gamma2).any(|&i| i + 1 >= n) {
            return bad("simple root index out of range".into());
        }
        let simple = |i: usize| rats(&Root::new(i, i + 1).weight(n));
        for (k, &a) in self.gamma1.iter().enumerate() {
            for (m, &b) in self.gamma1.iter().enumerate() {
                let before = datum.form(&simple(a), &simple(b));
                let after = datum.form(&simple(self.gamma2[k]), &simple(self.gamma2[m]));
                if before != after {
                    return bad("τ does not preserve the form".into());
                }
            }
        }
        if self.l_basis.iter().any(|y| y.len() != n) {
            return bad("l basis vector has the wrong length".into());
        }
        let ls: Vec<Vec<BigRational>> = self.l_basis.iter().map(|y| rats(y)).collect();
        for (k, &a) in self.gamma1.iter().enumerate() {
            let d: Vec<BigRational> = simple(self.gamma2[k])
                .iter()
                .zip(simple(a))
                .map(|(x, y)| x - y)
                .collect();
            if ls.iter().any(|y| !datum.form(&d, y).is_zero()) {
                return bad(format!("τ(α{}) − α{} is not orthogonal to l", a + 1, a + 1));
            }
        }
        for &a in &self.gamma1 {
            let mut sum = simple(a);
            let mut cur = a;
            let mut steps = 0;
            while let Some(next) = self.tau_simple(cur) {
                steps += 1;
                if next == a {
                    if !in_row_span(&sum, &ls) {
                        return bad(format!("τ-cycle through α{} does not sum into l", a + 1));
                    }
                    break;
                }
                if steps > n {
                    break;
                }
                for (s, x) in sum.iter_mut().zip(simple(next)) {
                    *s += x;
                }
                cur = next;
            }
        }
        Ok(())
    }

    /// `τ(e_α)` for a positive root in `⟨Γ₁⟩`, via `e_α = [⋯[e_a, e_{a+1}], ⋯]`.
    fn tau_root_vector(&self, datum: &RootDatum, r: Root) -> Vector {
        if !r.is_positive() || !in_span(r, &self.gamma1) {
            return None;
        }
        let first = self.tau_simple(r.a)?;
        let mut cur: Vector = Some((
            Elem {
                a: first,
                b: first + 1,
            },
            1,
        ));
        for i in r.a + 1..r.b {
            let t = self.tau_simple(i)?;
            let (x, c) = cur?;
            let br = datum.bracket(x, Elem { a: t, b: t + 1 });
            cur = match br.as_slice() {
                [(e, s)] => Some((*e, c * s)),
                _ => None,
            };
        }
        cur
    }
}

fn in_row_span(v: &[BigRational], basis: &[Vec<BigRational>]) -> bool {
    let rows: Vec<Vec<Scalar>> = basis
        .iter()
        .map(|b| b.iter().cloned().map(Scalar::rational).collect())
        .collect();
    let rank = |rows: &[Vec<Scalar>]| -> usize {
        if rows.is_empty() {
            return 0;
        }
        let m = Matrix::from_rows(rows.to_vec()).expect("rectangular");
        m.cols() - m.nullspace().1.len()
    };
    let mut with = rows.clone();
    with.push(v.iter().cloned().map(Scalar::rational).collect());
    rank(&with) == rank(&rows)
}

fn diag_elem(u: &[BigRational]) -> Vec<(Elem, BigRational)> {
    u.iter()
        .enumerate()
        .filter(|(_, x)| !x.is_zero())
        .map(|(a, x)| (Elem { a, b: a }, x.clone()))
        .collect()
}

/// Particular solution `r₀ ∈ Λ²h₀` of `((α − τα) ⊗ 1) r₀ = ½((α + τα) ⊗ 1) Ω_{h₀}`,
/// free components set to zero.
fn solve_r0(triple: &BDTriple, datum: &RootDatum) -> Result<Tensor2> {
    let n = datum.n();
    let ls: Vec<Vec<Scalar>> = triple
        .l_basis
        .iter()
        .map(|y| y.iter().map(|&x| Scalar::int(x)).collect())
        .collect();
    // h₀ = l^⊥ in h (the form on gl_n is the dot product).
    let h0: Vec<Vec<BigRational>> = if ls.is_empty() {
        (0..n)
            .map(|a| rats(&(0..n).map(|b| i64::from(a == b)).collect::<Vec<_>>()))
            .collect()
    } else {
        let (ker, _) = Matrix::from_rows(ls)?.nullspace();
        (0..ker.cols())
            .map(|k| {
                (0..n)
                    .map(|a| ker.get(a, k).constant_value().expect("rational kernel"))
                    .collect()
            })
            .collect()
    };
    let k = h0.len();
    let pairs: Vec<(usize, usize)> = (0..k)
        .flat_map(|i| (i + 1..k).map(move |j| (i, j)))
        .collect();
    if pairs.is_empty() {
        return Ok(Tensor2::zero());
    }
    let gram: Vec<Vec<BigRational>> = h0
        .iter()
        .map(|x| h0.iter().map(|y| datum.form(x, y)).collect())
        .collect();
    let gram_inv = crate::rootdata::invert_rational(gram)
        .ok_or_else(|| Error::InvalidTriple("form is degenerate on h₀".into()))?;
    let simple = |i: usize| rats(&Root::new(i, i + 1).weight(n));
    let mut rows: Vec<Vec<Scalar>> = Vec::new();
    for (idx, &a) in triple.gamma1.iter().enumerate() {
        let (al, ta) = (simple(a), simple(triple.gamma2[idx]));
        let beta: Vec<BigRational> = al.iter().zip(&ta).map(|(x, y)| x - y).collect();
        let gamma: Vec<BigRational> = al.iter().zip(&ta).map(|(x, y)| x + y).collect();
        let b: Vec<BigRational> = h0.iter().map(|u| datum.form(&beta, u)).collect();
        let g: Vec<BigRational> = h0.iter().map(|u| datum.form(&gamma, u)).collect();
        for comp in 0..k {
            let mut row: Vec<Scalar> = pairs
                .iter()
                .map(|&(i, j)| {
                    let mut c = BigRational::zero();
                    if j == comp {
                        c += &b[i];
                    }
                    if i == comp {
                        c -= &b[j];
                    }
                    Scalar::rational(c)
                })
                .collect();
            let rhs: BigRational = (0..k)
                .map(|i| &g[i] * &gram_inv[i][comp])
                .sum::<BigRational>()
                / BigRational::from_integer(2.into());
            row.push(Scalar::rational(-rhs));
            rows.push(row);
        }
    }
    let m = pairs.len();
    let (ker, free) = Matrix::from_rows(rows)?.nullspace();
    let last = free
        .iter()
        .position(|&f| f == m)
        .ok_or_else(|| Error::InvalidTriple("the r₀ equation has no solution".into()))?;
    let mut t = Tensor2::zero();
    for (p, &(i, j)) in pairs.iter().enumerate() {
        let c = ker.get(p, last).clone();
        if c.is_zero() {
            continue;
        }
        for (x, cx) in diag_elem(&h0[i]) {
            for (y, cy) in diag_elem(&h0[j]) {
                t.add_wedge(x, y, &c * &Scalar::rational(&cx * &cy));
            }
        }
    }
    Ok(t)
}

/// `r(λ) = ½Ω + r₀ + Σ_{α>0, e_α∈g_{Γ₁}} K(λ)e_α ∧ f_α + Σ_{α>0} ½ e_α ∧ f_α`
/// with coupling constant 1 and `K(λ)e_α = Σ_{n>0} e^{−n(α,λ)} τⁿ(e_α)`.
///
/// The result lives over `λ ∈ l*` (coordinates of `l`). When `τ` returns to
/// `α` after `k` steps with `τ^k e_α = c e_α`, the geometric tail is summed
/// in closed form: `K(λ)e_α = (Σ_{n=1}^{k} xⁿτⁿe_α)/(1 − c x^k)`, `x = e^{−(α,λ)}`.
pub fn triple_r(triple: &BDTriple, datum: &RootDatum) -> Result<ClassicalRMatrix> {
    triple.validate(datum)?;
    let n = datum.n();
    let ld = if triple.l_basis.is_empty() {
        return Err(Error::InvalidTriple(
            "l must be nonzero to carry a dynamical variable".into(),
        ));
    } else {
        datum.with_coords(Coords::subspace(n, &triple.l_basis)?)?
    };
    let one = Scalar::one();
    let mut t = Tensor2::casimir(&ld).scale(&Scalar::ratio(1, 2));
    t = t.add(&solve_r0(triple, &ld)?);
    for a in ld.positive_roots() {
        t.add_wedge(a.vector(), a.neg().vector(), Scalar::ratio(1, 2));
        if !in_span(a, &triple.gamma1) {
            continue;
        }
        let x = ld.exp_eps_pair(&a.weight(n))?.inv()?;
        let mut cur: Vector = Some((a.vector(), 1));
        let mut partial: Vec<(Elem, Scalar)> = Vec::new();
        let mut closure = Scalar::one();
        for step in 1..=n * n {
            let next = match cur {
                Some((e, c)) => {
                    let r = Root::new(e.a, e.b);
                    triple.tau_root_vector(&ld, r).map(|(f, d)| (f, c * d))
                }
                None => None,
            };
            let Some((e, c)) = next else { break };
            if e == a.vector() {
                closure = &one - &(Scalar::int(c) * x.pow(step as i64));
                break;
            }
            partial.push((e, Scalar::int(c) * x.pow(step as i64)));
            cur = Some((e, c));
        }
        for (e, c) in partial {
            t.add_wedge(e, a.neg().vector(), c / &closure);
        }
        if closure != one {
            // τ^k e_α = c e_α closes the cycle: the k-th term is c x^k e_α.
            let ck = &one - &closure;
            t.add_wedge(a.vector(), a.neg().vector(), ck / &closure);
        }
    }
    ClassicalRMatrix::new(&ld, "appA", Scalar::one(), t)
}
