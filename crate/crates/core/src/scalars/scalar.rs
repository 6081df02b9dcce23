//! Exact rational functions, the coefficient field of every matrix entry.
//!
//! A [`Scalar`] is `num/den` with coprime polynomials and a monic
//! denominator (leading coefficient 1 in graded-lexicographic order), so two
//! scalars are equal iff their canonical forms coincide. Classical scalars
//! use the variables `l_i = λ_i`; quantum scalars use `s = q^{1/2}` and
//! `t_i = q^{λ_i}`, with every exponent an integer.

use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num::{BigInt, BigRational, One, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::gcd::gcd;
use super::poly::{Mono, Poly};
use super::var::{Var, VarKind, NVARS};
use crate::{Error, Result};

/// Which symbol family a scalar is expressed in.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    /// No q-power symbols: rational in λ-coordinates (or constant).
    Classical,
    /// Contains `s` or some `t_i`.
    Quantum,
}

/// Element of the rational function field ℚ(l, s, t, g, e, w, m, x, mt, z, p).
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Scalar {
    num: Poly,
    den: Poly,
}

/// A Laurent monomial `c·∏ v^{e_v}` used as the image of a variable under a
/// monomial substitution.
#[derive(Clone, Debug)]
pub struct LaurentMono {
    pub coeff: BigRational,
    pub exps: [i32; NVARS],
}

impl LaurentMono {
    pub fn var(v: Var) -> LaurentMono {
        let mut exps = [0; NVARS];
        exps[v.index()] = 1;
        LaurentMono {
            coeff: BigRational::one(),
            exps,
        }
    }

    pub fn constant(c: BigRational) -> LaurentMono {
        LaurentMono {
            coeff: c,
            exps: [0; NVARS],
        }
    }

    pub fn with(mut self, v: Var, e: i32) -> LaurentMono {
        self.exps[v.index()] += e;
        self
    }
}

/// A substitution sending each variable either to itself or to a Laurent
/// monomial.
#[derive(Clone, Debug, Default)]
pub struct MonoMap {
    images: Vec<(Var, LaurentMono)>,
}

impl MonoMap {
    pub fn new() -> MonoMap {
        MonoMap::default()
    }

    pub fn set(mut self, v: Var, image: LaurentMono) -> MonoMap {
        self.images.retain(|(w, _)| *w != v);
        self.images.push((v, image));
        self
    }

    pub fn is_identity(&self) -> bool {
        self.images.is_empty()
    }
}

fn int(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

impl Scalar {
    pub fn zero() -> Scalar {
        Scalar {
            num: Poly::zero(),
            den: Poly::one(),
        }
    }

    pub fn one() -> Scalar {
        Scalar {
            num: Poly::one(),
            den: Poly::one(),
        }
    }

    pub fn int(n: i64) -> Scalar {
        Scalar::from_poly(Poly::from_int(n))
    }

    pub fn ratio(n: i64, d: i64) -> Scalar {
        Scalar::rational(BigRational::new(BigInt::from(n), BigInt::from(d)))
    }

    pub fn rational(c: BigRational) -> Scalar {
        Scalar::from_poly(Poly::constant(c))
    }

    pub fn var(v: Var) -> Scalar {
        Scalar::from_poly(Poly::var(v))
    }

    pub fn from_poly(p: Poly) -> Scalar {
        Scalar {
            num: p,
            den: Poly::one(),
        }
    }

    /// The Laurent monomial `∏ v^{e}`.
    pub fn monomial(factors: &[(Var, i64)]) -> Scalar {
        let mut pos = [0u16; NVARS];
        let mut neg = [0u16; NVARS];
        for &(v, e) in factors {
            let i = v.index();
            let cur = pos[i] as i64 - neg[i] as i64 + e;
            if cur >= 0 {
                pos[i] = cur as u16;
                neg[i] = 0;
            } else {
                pos[i] = 0;
                neg[i] = (-cur) as u16;
            }
        }
        Scalar {
            num: Poly::monomial(Mono::from_exps(pos), BigRational::one()),
            den: Poly::monomial(Mono::from_exps(neg), BigRational::one()),
        }
    }

    /// `s^k = q^{k/2}`.
    pub fn s_pow(k: i64) -> Scalar {
        Scalar::monomial(&[(Var::s(), k)])
    }

    /// `q = s^2`.
    pub fn q() -> Scalar {
        Scalar::s_pow(2)
    }

    /// `q^k = s^{2k}`.
    pub fn q_pow(k: i64) -> Scalar {
        Scalar::s_pow(2 * k)
    }

    /// The q-number `[k]_q = (q^k − q^{−k})/(q − q^{−1})`.
    pub fn q_number(k: i64) -> Scalar {
        if k == 0 {
            return Scalar::zero();
        }
        let num = Scalar::q_pow(k) - Scalar::q_pow(-k);
        let den = Scalar::q_pow(1) - Scalar::q_pow(-1);
        num / den
    }

    /// Builds `num/den`, reducing to canonical form.
    pub fn new(num: Poly, den: Poly) -> Result<Scalar> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if num.is_zero() {
            return Ok(Scalar::zero());
        }
        let g = gcd(&num, &den);
        let (num, den) = if g.is_one() {
            (num, den)
        } else {
            (
                num.div_exact(&g).expect("gcd divides"),
                den.div_exact(&g).expect("gcd divides"),
            )
        };
        Ok(Scalar::from_coprime(num, den))
    }

    /// Normalizes an already coprime pair.
    fn from_coprime(num: Poly, den: Poly) -> Scalar {
        if num.is_zero() {
            return Scalar::zero();
        }
        let lc = den.lc();
        if lc.is_one() {
            Scalar { num, den }
        } else {
            let inv = lc.recip();
            Scalar {
                num: num.scale(&inv),
                den: den.scale(&inv),
            }
        }
    }

    /// Cancels a common monomial factor of a pair known to be coprime up to
    /// monomials, then normalizes.
    fn from_coprime_up_to_monomials(num: Poly, den: Poly) -> Scalar {
        if num.is_zero() {
            return Scalar::zero();
        }
        let g = num.mono_content().gcd(&den.mono_content());
        if g.is_one() {
            Scalar::from_coprime(num, den)
        } else {
            Scalar::from_coprime(num.div_mono(&g), den.div_mono(&g))
        }
    }

    pub fn numer(&self) -> &Poly {
        &self.num
    }

    pub fn denom(&self) -> &Poly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    pub fn constant_value(&self) -> Option<BigRational> {
        if self.den.is_one() {
            self.num.constant_value()
        } else {
            None
        }
    }

    pub fn support(&self) -> u32 {
        self.num.support() | self.den.support()
    }

    pub fn has_var(&self, v: Var) -> bool {
        self.support() & (1 << v.index()) != 0
    }

    pub fn vars(&self) -> Vec<Var> {
        let s = self.support();
        (0..NVARS)
            .filter(|i| s & (1 << i) != 0)
            .map(Var::from_index)
            .collect()
    }

    pub fn mode(&self) -> Mode {
        let quantum = self
            .vars()
            .iter()
            .any(|v| matches!(v.kind(), VarKind::S | VarKind::T(_)));
        if quantum {
            Mode::Quantum
        } else {
            Mode::Classical
        }
    }

    pub fn inv(&self) -> Result<Scalar> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Scalar::from_coprime(self.den.clone(), self.num.clone()))
    }

    pub fn pow(&self, e: i64) -> Scalar {
        if e < 0 {
            return self.inv().expect("negative power of zero").pow(-e);
        }
        let e = e as u32;
        Scalar::from_coprime(self.num.pow(e), self.den.pow(e))
    }

    fn add_impl(&self, o: &Scalar) -> Scalar {
        if self.is_zero() {
            return o.clone();
        }
        if o.is_zero() {
            return self.clone();
        }
        if self.den == o.den {
            let n = self.num.add(&o.num);
            if self.den.is_one() {
                return Scalar {
                    num: n,
                    den: Poly::one(),
                };
            }
            return Scalar::new(n, self.den.clone()).expect("nonzero denominator");
        }
        if self.den.is_one() {
            let n = self.num.mul(&o.den).add(&o.num);
            return Scalar::from_coprime(n, o.den.clone());
        }
        if o.den.is_one() {
            let n = o.num.mul(&self.den).add(&self.num);
            return Scalar::from_coprime(n, self.den.clone());
        }
        let g = gcd(&self.den, &o.den);
        if g.is_one() {
            let n = self.num.mul(&o.den).add(&o.num.mul(&self.den));
            return Scalar::from_coprime(n, self.den.mul(&o.den));
        }
        let a1 = self.den.div_exact(&g).expect("gcd divides");
        let b1 = o.den.div_exact(&g).expect("gcd divides");
        let n = self.num.mul(&b1).add(&o.num.mul(&a1));
        if n.is_zero() {
            return Scalar::zero();
        }
        let h = gcd(&n, &g);
        if h.is_one() {
            Scalar::from_coprime(n, a1.mul(&b1).mul(&g))
        } else {
            let n = n.div_exact(&h).expect("gcd divides");
            let g = g.div_exact(&h).expect("gcd divides");
            Scalar::from_coprime(n, a1.mul(&b1).mul(&g))
        }
    }

    fn mul_impl(&self, o: &Scalar) -> Scalar {
        if self.is_zero() || o.is_zero() {
            return Scalar::zero();
        }
        if self.den.is_one() && o.den.is_one() {
            return Scalar {
                num: self.num.mul(&o.num),
                den: Poly::one(),
            };
        }
        let (n1, d2) = cancel(&self.num, &o.den);
        let (n2, d1) = cancel(&o.num, &self.den);
        Scalar::from_coprime(n1.mul(&n2), d1.mul(&d2))
    }

    pub fn scale(&self, c: &BigRational) -> Scalar {
        if c.is_zero() {
            return Scalar::zero();
        }
        Scalar {
            num: self.num.scale(c),
            den: self.den.clone(),
        }
    }

    /// Applies a Laurent-monomial substitution. If `automorphism` is set the
    /// caller guarantees the map is invertible on the Laurent ring, which
    /// preserves coprimality up to monomial factors and skips the gcd.
    pub fn subs_mono(&self, map: &MonoMap, automorphism: bool) -> Result<Scalar> {
        if map.is_identity() || self.is_zero() {
            return Ok(self.clone());
        }
        let mut img: Vec<Option<&LaurentMono>> = vec![None; NVARS];
        for (v, m) in &map.images {
            img[v.index()] = Some(m);
        }
        let support = self.support();
        if !map
            .images
            .iter()
            .any(|(v, _)| support & (1 << v.index()) != 0)
        {
            return Ok(self.clone());
        }
        let lnum = laurent_image(&self.num, &img);
        let lden = laurent_image(&self.den, &img);
        let mut mins = [i32::MAX; NVARS];
        for (e, _) in lnum.iter().chain(lden.iter()) {
            for i in 0..NVARS {
                mins[i] = mins[i].min(e[i]);
            }
        }
        let to_poly = |terms: Vec<([i32; NVARS], BigRational)>| {
            Poly::from_terms(
                terms
                    .into_iter()
                    .map(|(e, c)| {
                        let mut u = [0u16; NVARS];
                        for i in 0..NVARS {
                            u[i] = (e[i] - mins[i]) as u16;
                        }
                        (Mono::from_exps(u), c)
                    })
                    .collect(),
            )
        };
        let num = to_poly(lnum);
        let den = to_poly(lden);
        if den.is_zero() {
            return Err(Error::PoleAtPoint(format!(
                "denominator {} vanishes",
                self.den
            )));
        }
        if automorphism {
            Ok(Scalar::from_coprime_up_to_monomials(num, den))
        } else {
            Scalar::new(num, den)
        }
    }

    /// Substitutes polynomial images for variables. If `automorphism` is set
    /// the map is an invertible affine change of variables.
    pub fn subs_poly(&self, images: &[(Var, Poly)], automorphism: bool) -> Result<Scalar> {
        let support = self.support();
        if !images.iter().any(|(v, _)| support & (1 << v.index()) != 0) {
            return Ok(self.clone());
        }
        let num = poly_image(&self.num, images);
        let den = poly_image(&self.den, images);
        if den.is_zero() {
            return Err(Error::PoleAtPoint(format!(
                "denominator {} vanishes",
                self.den
            )));
        }
        if automorphism {
            Ok(Scalar::from_coprime(num, den))
        } else {
            Scalar::new(num, den)
        }
    }

    /// General substitution of scalars for variables.
    pub fn substitute(&self, images: &[(Var, Scalar)]) -> Result<Scalar> {
        let support = self.support();
        if !images.iter().any(|(v, _)| support & (1 << v.index()) != 0) {
            return Ok(self.clone());
        }
        if images.iter().all(|(_, s)| s.is_polynomial()) {
            let polys: Vec<(Var, Poly)> = images.iter().map(|(v, s)| (*v, s.num.clone())).collect();
            return self.subs_poly(&polys, false);
        }
        let num = scalar_image(&self.num, images);
        let den = scalar_image(&self.den, images);
        if den.is_zero() {
            return Err(Error::PoleAtPoint(format!(
                "denominator {} vanishes",
                self.den
            )));
        }
        Ok(num / den)
    }

    /// Exact value at a point assigning a rational to every occurring variable.
    pub fn evaluate_at(&self, point: &[(Var, BigRational)]) -> Result<BigRational> {
        let look = |v: Var| point.iter().find(|(w, _)| *w == v).map(|(_, c)| c.clone());
        let d = self
            .den
            .eval(&look)
            .ok_or_else(|| Error::Precondition("point does not assign every variable".into()))?;
        if d.is_zero() {
            return Err(Error::PoleAtPoint(format!(
                "denominator {} vanishes",
                self.den
            )));
        }
        let n = self
            .num
            .eval(&look)
            .ok_or_else(|| Error::Precondition("point does not assign every variable".into()))?;
        Ok(n / d)
    }

    /// Derivation determined by its values on variables (unlisted ones map to 0).
    pub fn derive(&self, rules: &[(Var, Scalar)]) -> Scalar {
        let support = self.support();
        let active: Vec<&(Var, Scalar)> = rules
            .iter()
            .filter(|(v, _)| support & (1 << v.index()) != 0)
            .collect();
        if active.is_empty() {
            return Scalar::zero();
        }
        let dp = |p: &Poly| -> Scalar {
            let mut acc = Scalar::zero();
            for (v, dv) in &active {
                let pd = p.derivative(*v);
                if !pd.is_zero() {
                    acc = acc + Scalar::from_poly(pd) * dv.clone();
                }
            }
            acc
        };
        let dn = dp(&self.num);
        if self.den.is_one() {
            return dn;
        }
        let dd = dp(&self.den);
        let den = Scalar::from_poly(self.den.clone());
        let num = Scalar::from_poly(self.num.clone());
        (dn * den.clone() - num * dd) / (den.clone() * den)
    }

    /// λ ↦ λ−μ: `l_i ↦ l_i − μ_i` and `t_i ↦ s^{−2μ_i} t_i`.
    pub fn shift_substitute(&self, mu: &[BigRational]) -> Result<Scalar> {
        let mut polys = Vec::new();
        let mut mono = MonoMap::new();
        for (k, m) in mu.iter().enumerate() {
            if m.is_zero() {
                continue;
            }
            let i = k + 1;
            if self.has_var(Var::l(i)) {
                polys.push((
                    Var::l(i),
                    Poly::var(Var::l(i)).sub(&Poly::constant(m.clone())),
                ));
            }
            if self.has_var(Var::t(i)) {
                let twice = m * int(2);
                if !twice.is_integer() {
                    return Err(Error::UnsupportedShift(format!(
                        "coordinate {i} shift {m} is not a half-integer"
                    )));
                }
                let e = -twice.to_integer();
                let e: i32 = i32::try_from(e)
                    .map_err(|_| Error::UnsupportedShift("shift too large".into()))?;
                mono = mono.set(Var::t(i), LaurentMono::var(Var::t(i)).with(Var::s(), e));
            }
        }
        let x = if polys.is_empty() {
            self.clone()
        } else {
            self.subs_poly(&polys, true)?
        };
        x.subs_mono(&mono, true)
    }

    /// Canonical text: an integer-coefficient fraction.
    pub fn to_text(&self) -> String {
        let (cn, pn) = self.num.primitive();
        let (cd, pd) = self.den.primitive();
        scaled_fraction(&pn, &(cn / cd), &pd)
    }
}

/// Renders `(c·pn)/pd` with integer coefficients.
fn scaled_fraction(pn: &Poly, c: &BigRational, pd: &Poly) -> String {
    let p = c.numer().clone();
    let r = c.denom().clone();
    let num = pn.scale(&BigRational::from_integer(p));
    let den = pd.scale(&BigRational::from_integer(r));
    let mut s = String::new();
    if den.is_one() {
        num.write_to(&mut s);
        return s;
    }
    if num.len() > 1 {
        s.push('(');
        num.write_to(&mut s);
        s.push(')');
    } else {
        num.write_to(&mut s);
    }
    s.push('/');
    let bare = den.is_constant()
        || (den.is_monomial() && den.lc().is_one() && den.support().count_ones() == 1);
    if bare {
        den.write_to(&mut s);
    } else {
        s.push('(');
        den.write_to(&mut s);
        s.push(')');
    }
    s
}

/// Removes the gcd of `a` and `b` from both.
fn cancel(a: &Poly, b: &Poly) -> (Poly, Poly) {
    if b.is_one() || a.is_constant() || b.is_constant() {
        return (a.clone(), b.clone());
    }
    let g = gcd(a, b);
    if g.is_one() {
        (a.clone(), b.clone())
    } else {
        (
            a.div_exact(&g).expect("gcd divides"),
            b.div_exact(&g).expect("gcd divides"),
        )
    }
}

fn laurent_image(p: &Poly, img: &[Option<&LaurentMono>]) -> Vec<([i32; NVARS], BigRational)> {
    p.terms()
        .iter()
        .map(|(m, c)| {
            let mut e = [0i32; NVARS];
            let mut coeff = c.clone();
            for i in 0..NVARS {
                let k = m.exps()[i];
                if k == 0 {
                    continue;
                }
                match img[i] {
                    None => e[i] += k as i32,
                    Some(lm) => {
                        for j in 0..NVARS {
                            e[j] += lm.exps[j] * k as i32;
                        }
                        if !lm.coeff.is_one() {
                            coeff *= num::pow::pow(lm.coeff.clone(), k as usize);
                        }
                    }
                }
            }
            (e, coeff)
        })
        .collect()
}

fn poly_image(p: &Poly, images: &[(Var, Poly)]) -> Poly {
    let mut cache: HashMap<(usize, u16), Poly> = HashMap::new();
    let mut img: Vec<Option<&Poly>> = vec![None; NVARS];
    for (v, q) in images {
        img[v.index()] = Some(q);
    }
    let mut terms: Vec<(Mono, BigRational)> = Vec::new();
    let mut acc = Poly::zero();
    for (m, c) in p.terms() {
        let mut keep = [0u16; NVARS];
        let mut factor = Poly::one();
        for i in 0..NVARS {
            let k = m.exps()[i];
            if k == 0 {
                continue;
            }
            match img[i] {
                None => keep[i] = k,
                Some(q) => {
                    let pw = cache.entry((i, k)).or_insert_with(|| q.pow(k as u32));
                    factor = factor.mul(pw);
                }
            }
        }
        let km = Mono::from_exps(keep);
        if factor.is_one() {
            terms.push((km, c.clone()));
        } else {
            acc = acc.add(&factor.mul_mono(&km).scale(c));
        }
    }
    acc.add(&Poly::from_terms(terms))
}

fn scalar_image(p: &Poly, images: &[(Var, Scalar)]) -> Scalar {
    let mut cache: HashMap<(usize, u16), Scalar> = HashMap::new();
    let mut img: Vec<Option<&Scalar>> = vec![None; NVARS];
    for (v, q) in images {
        img[v.index()] = Some(q);
    }
    // Group terms by the substituted part so each distinct image product is
    // formed once.
    let mut groups: HashMap<Vec<(usize, u16)>, Vec<(Mono, BigRational)>> = HashMap::new();
    for (m, c) in p.terms() {
        let mut keep = [0u16; NVARS];
        let mut key = Vec::new();
        for i in 0..NVARS {
            let k = m.exps()[i];
            if k == 0 {
                continue;
            }
            if img[i].is_some() {
                key.push((i, k));
            } else {
                keep[i] = k;
            }
        }
        groups
            .entry(key)
            .or_default()
            .push((Mono::from_exps(keep), c.clone()));
    }
    let mut keys: Vec<_> = groups.keys().cloned().collect();
    keys.sort();
    let mut acc = Scalar::zero();
    for key in keys {
        let rest = Scalar::from_poly(Poly::from_terms(groups.remove(&key).unwrap()));
        let mut f = Scalar::one();
        for &(i, k) in &key {
            let pw = cache
                .entry((i, k))
                .or_insert_with(|| img[i].unwrap().pow(k as i64));
            f = f * pw.clone();
        }
        acc = acc + f * rest;
    }
    acc
}

impl Default for Scalar {
    fn default() -> Scalar {
        Scalar::zero()
    }
}

impl From<i64> for Scalar {
    fn from(n: i64) -> Scalar {
        Scalar::int(n)
    }
}

impl From<BigRational> for Scalar {
    fn from(c: BigRational) -> Scalar {
        Scalar::rational(c)
    }
}

impl From<Var> for Scalar {
    fn from(v: Var) -> Scalar {
        Scalar::var(v)
    }
}

macro_rules! binop {
    ($tr:ident, $m:ident, $body:expr) => {
        impl $tr<&Scalar> for &Scalar {
            type Output = Scalar;
            fn $m(self, o: &Scalar) -> Scalar {
                let f: fn(&Scalar, &Scalar) -> Scalar = $body;
                f(self, o)
            }
        }
        impl $tr<Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, o: Scalar) -> Scalar {
                (&self).$m(&o)
            }
        }
        impl $tr<&Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, o: &Scalar) -> Scalar {
                (&self).$m(o)
            }
        }
        impl $tr<Scalar> for &Scalar {
            type Output = Scalar;
            fn $m(self, o: Scalar) -> Scalar {
                self.$m(&o)
            }
        }
    };
}

binop!(Add, add, |a, b| a.add_impl(b));
binop!(Sub, sub, |a, b| a.add_impl(&-b));
binop!(Mul, mul, |a, b| a.mul_impl(b));
binop!(Div, div, |a, b| a
    .mul_impl(&b.inv().expect("division by zero scalar")));

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar {
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

impl std::iter::Sum for Scalar {
    fn sum<I: Iterator<Item = Scalar>>(iter: I) -> Scalar {
        iter.fold(Scalar::zero(), |a, b| a + b)
    }
}

impl std::iter::Product for Scalar {
    fn product<I: Iterator<Item = Scalar>>(iter: I) -> Scalar {
        iter.fold(Scalar::one(), |a, b| a * b)
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

impl FromStr for Scalar {
    type Err = Error;
    fn from_str(s: &str) -> Result<Scalar> {
        super::parse::parse_scalar(s)
    }
}

impl Serialize for Scalar {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_text())
    }
}

impl<'de> Deserialize<'de> for Scalar {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Scalar, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Helper for tests and fixtures: parses canonical text, panicking on error.
pub fn sc(text: &str) -> Scalar {
    text.parse()
        .unwrap_or_else(|e| panic!("bad scalar {text:?}: {e}"))
}
