//! Sparse distributed multivariate polynomials over ℚ.
//!
//! Terms are kept sorted in strictly decreasing graded-lexicographic order
//! with nonzero coefficients, so structural equality is value equality.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use num::{BigInt, BigRational, One, Signed, Zero};

use super::var::{Var, NVARS};

/// Exponent vector with cached total degree.
///
/// The derived ordering compares total degree first and then the exponent
/// array lexicographically, which is the graded-lexicographic order.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Mono {
    deg: u32,
    exps: [u16; NVARS],
}

impl Mono {
    pub const ONE: Mono = Mono {
        deg: 0,
        exps: [0; NVARS],
    };

    pub fn var(v: Var, e: u16) -> Mono {
        let mut m = Mono::ONE;
        m.exps[v.index()] = e;
        m.deg = e as u32;
        m
    }

    pub fn from_exps(exps: [u16; NVARS]) -> Mono {
        let deg = exps.iter().map(|&e| e as u32).sum();
        Mono { deg, exps }
    }

    pub fn exps(&self) -> &[u16; NVARS] {
        &self.exps
    }

    pub fn exp(&self, v: Var) -> u16 {
        self.exps[v.index()]
    }

    pub fn degree(&self) -> u32 {
        self.deg
    }

    pub fn is_one(&self) -> bool {
        self.deg == 0
    }

    pub fn mul(&self, o: &Mono) -> Mono {
        let mut exps = [0u16; NVARS];
        for i in 0..NVARS {
            exps[i] = self.exps[i] + o.exps[i];
        }
        Mono {
            deg: self.deg + o.deg,
            exps,
        }
    }

    /// `self / o` if `o` divides `self`.
    pub fn div(&self, o: &Mono) -> Option<Mono> {
        let mut exps = [0u16; NVARS];
        for i in 0..NVARS {
            exps[i] = self.exps[i].checked_sub(o.exps[i])?;
        }
        Some(Mono {
            deg: self.deg - o.deg,
            exps,
        })
    }

    pub fn divides(&self, o: &Mono) -> bool {
        (0..NVARS).all(|i| self.exps[i] <= o.exps[i])
    }

    pub fn gcd(&self, o: &Mono) -> Mono {
        let mut exps = [0u16; NVARS];
        for i in 0..NVARS {
            exps[i] = self.exps[i].min(o.exps[i]);
        }
        Mono::from_exps(exps)
    }

    pub fn lcm(&self, o: &Mono) -> Mono {
        let mut exps = [0u16; NVARS];
        for i in 0..NVARS {
            exps[i] = self.exps[i].max(o.exps[i]);
        }
        Mono::from_exps(exps)
    }

    /// Bitmask of variables with positive exponent.
    pub fn support(&self) -> u32 {
        let mut mask = 0u32;
        for i in 0..NVARS {
            if self.exps[i] > 0 {
                mask |= 1 << i;
            }
        }
        mask
    }

    fn with_exp(&self, v: Var, e: u16) -> Mono {
        let mut exps = self.exps;
        exps[v.index()] = e;
        Mono::from_exps(exps)
    }

    pub fn write_to(&self, out: &mut String) -> bool {
        let mut first = true;
        for i in 0..NVARS {
            let e = self.exps[i];
            if e == 0 {
                continue;
            }
            if !first {
                out.push('*');
            }
            first = false;
            out.push_str(&Var::from_index(i).name());
            if e > 1 {
                out.push('^');
                out.push_str(&e.to_string());
            }
        }
        !first
    }
}

impl fmt::Debug for Mono {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut s = String::new();
        if !self.write_to(&mut s) {
            s.push('1');
        }
        f.write_str(&s)
    }
}

/// Polynomial with rational coefficients.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Poly {
    terms: Vec<(Mono, BigRational)>,
}

impl Poly {
    pub fn zero() -> Poly {
        Poly { terms: Vec::new() }
    }

    pub fn one() -> Poly {
        Poly::constant(BigRational::one())
    }

    pub fn constant(c: BigRational) -> Poly {
        if c.is_zero() {
            Poly::zero()
        } else {
            Poly {
                terms: vec![(Mono::ONE, c)],
            }
        }
    }

    pub fn from_int(c: i64) -> Poly {
        Poly::constant(BigRational::from_integer(BigInt::from(c)))
    }

    pub fn var(v: Var) -> Poly {
        Poly::monomial(Mono::var(v, 1), BigRational::one())
    }

    pub fn monomial(m: Mono, c: BigRational) -> Poly {
        if c.is_zero() {
            Poly::zero()
        } else {
            Poly {
                terms: vec![(m, c)],
            }
        }
    }

    /// Builds a polynomial from arbitrary (possibly repeated, unsorted) terms.
    pub fn from_terms(mut terms: Vec<(Mono, BigRational)>) -> Poly {
        terms.sort_by(|a, b| b.0.cmp(&a.0));
        let mut out: Vec<(Mono, BigRational)> = Vec::with_capacity(terms.len());
        for (m, c) in terms {
            if let Some(last) = out.last_mut() {
                if last.0 == m {
                    last.1 += c;
                    continue;
                }
            }
            out.push((m, c));
        }
        out.retain(|t| !t.1.is_zero());
        Poly { terms: out }
    }

    pub fn terms(&self) -> &[(Mono, BigRational)] {
        &self.terms
    }

    pub fn into_terms(self) -> Vec<(Mono, BigRational)> {
        self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.is_empty() || (self.terms.len() == 1 && self.terms[0].0.is_one())
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0.is_one() && self.terms[0].1.is_one()
    }

    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn constant_value(&self) -> Option<BigRational> {
        if self.is_zero() {
            Some(BigRational::zero())
        } else if self.is_constant() {
            Some(self.terms[0].1.clone())
        } else {
            None
        }
    }

    /// Coefficient of the constant monomial.
    pub fn constant_term(&self) -> BigRational {
        match self.terms.last() {
            Some((m, c)) if m.is_one() => c.clone(),
            _ => BigRational::zero(),
        }
    }

    pub fn leading(&self) -> Option<&(Mono, BigRational)> {
        self.terms.first()
    }

    pub fn lc(&self) -> BigRational {
        self.terms
            .first()
            .map(|t| t.1.clone())
            .unwrap_or_else(BigRational::zero)
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.iter().map(|t| t.0.degree()).max().unwrap_or(0)
    }

    pub fn support(&self) -> u32 {
        self.terms.iter().fold(0, |m, t| m | t.0.support())
    }

    pub fn has_var(&self, v: Var) -> bool {
        self.support() & (1 << v.index()) != 0
    }

    pub fn degree_in(&self, v: Var) -> u16 {
        self.terms.iter().map(|t| t.0.exp(v)).max().unwrap_or(0)
    }

    /// Common monomial factor of all terms.
    pub fn mono_content(&self) -> Mono {
        let mut it = self.terms.iter();
        match it.next() {
            None => Mono::ONE,
            Some(first) => it.fold(first.0, |g, t| g.gcd(&t.0)),
        }
    }

    pub fn neg(&self) -> Poly {
        Poly {
            terms: self.terms.iter().map(|(m, c)| (*m, -c)).collect(),
        }
    }

    pub fn scale(&self, c: &BigRational) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly {
            terms: self.terms.iter().map(|(m, a)| (*m, a * c)).collect(),
        }
    }

    pub fn mul_mono(&self, m: &Mono) -> Poly {
        Poly {
            terms: self
                .terms
                .iter()
                .map(|(a, c)| (a.mul(m), c.clone()))
                .collect(),
        }
    }

    /// Divides every term by `m`; panics if `m` does not divide some term.
    pub fn div_mono(&self, m: &Mono) -> Poly {
        Poly {
            terms: self
                .terms
                .iter()
                .map(|(a, c)| (a.div(m).expect("monomial does not divide"), c.clone()))
                .collect(),
        }
    }

    pub fn add(&self, o: &Poly) -> Poly {
        self.add_scaled(o, None)
    }

    pub fn sub(&self, o: &Poly) -> Poly {
        self.add_scaled(o, Some(&-BigRational::one()))
    }

    fn add_scaled(&self, o: &Poly, factor: Option<&BigRational>) -> Poly {
        let mut out = Vec::with_capacity(self.terms.len() + o.terms.len());
        let (mut i, mut j) = (0, 0);
        let a = &self.terms;
        let b = &o.terms;
        let scaled = |c: &BigRational| match factor {
            Some(f) => c * f,
            None => c.clone(),
        };
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                Ordering::Greater => {
                    out.push(a[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    out.push((b[j].0, scaled(&b[j].1)));
                    j += 1;
                }
                Ordering::Equal => {
                    let c = &a[i].1 + scaled(&b[j].1);
                    if !c.is_zero() {
                        out.push((a[i].0, c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend(b[j..].iter().map(|(m, c)| (*m, scaled(c))));
        Poly { terms: out }
    }

    pub fn mul(&self, o: &Poly) -> Poly {
        if self.is_zero() || o.is_zero() {
            return Poly::zero();
        }
        if o.is_constant() {
            return self.scale(&o.terms[0].1);
        }
        if self.is_constant() {
            return o.scale(&self.terms[0].1);
        }
        if o.is_monomial() {
            let (m, c) = &o.terms[0];
            return Poly {
                terms: self.terms.iter().map(|(a, x)| (a.mul(m), x * c)).collect(),
            };
        }
        if self.is_monomial() {
            return o.mul(self);
        }
        let mut acc: BTreeMap<Mono, BigRational> = BTreeMap::new();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &o.terms {
                let m = ma.mul(mb);
                let c = ca * cb;
                match acc.get_mut(&m) {
                    Some(x) => *x += c,
                    None => {
                        acc.insert(m, c);
                    }
                }
            }
        }
        let terms = acc
            .into_iter()
            .rev()
            .filter(|(_, c)| !c.is_zero())
            .collect();
        Poly { terms }
    }

    pub fn pow(&self, mut e: u32) -> Poly {
        let mut base = self.clone();
        let mut acc = Poly::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Exact division; `None` if `d` does not divide `self`.
    pub fn div_exact(&self, d: &Poly) -> Option<Poly> {
        assert!(!d.is_zero(), "division by zero polynomial");
        if self.is_zero() {
            return Some(Poly::zero());
        }
        if d.is_constant() {
            return Some(self.scale(&d.terms[0].1.recip()));
        }
        if d.is_monomial() {
            let (m, c) = &d.terms[0];
            let inv = c.recip();
            let mut terms = Vec::with_capacity(self.terms.len());
            for (a, x) in &self.terms {
                terms.push((a.div(m)?, x * &inv));
            }
            return Some(Poly { terms });
        }
        let (dm, dc) = d.terms[0].clone();
        let dc_inv = dc.recip();
        let mut rem = self.clone();
        let mut quot: Vec<(Mono, BigRational)> = Vec::new();
        while let Some((rm, rc)) = rem.terms.first().cloned() {
            let qm = rm.div(&dm)?;
            let qc = rc * &dc_inv;
            let t = Poly::monomial(qm, qc.clone());
            rem = rem.sub(&d.mul(&t));
            quot.push((qm, qc));
        }
        Some(Poly { terms: quot })
    }

    /// Coefficients of `self` viewed as a univariate polynomial in `v`;
    /// entry `k` is the coefficient of `v^k`.
    pub fn coeffs_in(&self, v: Var) -> Vec<Poly> {
        let d = self.degree_in(v) as usize;
        let mut buckets: Vec<Vec<(Mono, BigRational)>> = vec![Vec::new(); d + 1];
        for (m, c) in &self.terms {
            let k = m.exp(v) as usize;
            buckets[k].push((m.with_exp(v, 0), c.clone()));
        }
        buckets.into_iter().map(Poly::from_terms).collect()
    }

    pub fn from_coeffs_in(v: Var, coeffs: &[Poly]) -> Poly {
        let mut terms = Vec::new();
        for (k, p) in coeffs.iter().enumerate() {
            let vm = Mono::var(v, k as u16);
            for (m, c) in &p.terms {
                terms.push((m.mul(&vm), c.clone()));
            }
        }
        Poly::from_terms(terms)
    }

    pub fn derivative(&self, v: Var) -> Poly {
        let mut terms = Vec::new();
        for (m, c) in &self.terms {
            let e = m.exp(v);
            if e > 0 {
                terms.push((
                    m.with_exp(v, e - 1),
                    c * BigRational::from_integer(BigInt::from(e)),
                ));
            }
        }
        Poly::from_terms(terms)
    }

    /// Returns `(c, p)` with `self = c·p`, `p` having coprime integer
    /// coefficients and positive leading coefficient.
    pub fn primitive(&self) -> (BigRational, Poly) {
        if self.is_zero() {
            return (BigRational::one(), Poly::zero());
        }
        let mut den_lcm = BigInt::one();
        for (_, c) in &self.terms {
            den_lcm = num::integer::lcm(den_lcm, c.denom().clone());
        }
        let mut num_gcd = BigInt::zero();
        for (_, c) in &self.terms {
            let v = c.numer() * (&den_lcm / c.denom());
            num_gcd = num::integer::gcd(num_gcd, v);
        }
        let mut content = BigRational::new(num_gcd, den_lcm);
        if self.terms[0].1.is_negative() {
            content = -content;
        }
        let inv = content.recip();
        (content, self.scale(&inv))
    }

    pub fn monic(&self) -> Poly {
        if self.is_zero() {
            return Poly::zero();
        }
        let lc = self.terms[0].1.clone();
        if lc.is_one() {
            self.clone()
        } else {
            self.scale(&lc.recip())
        }
    }

    /// Evaluates at a full assignment of rational values.
    pub fn eval(&self, value: &dyn Fn(Var) -> Option<BigRational>) -> Option<BigRational> {
        let mut acc = BigRational::zero();
        let mut vals: [Option<BigRational>; NVARS] = Default::default();
        let support = self.support();
        for i in 0..NVARS {
            if support & (1 << i) != 0 {
                vals[i] = Some(value(Var::from_index(i))?);
            }
        }
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for i in 0..NVARS {
                let e = m.exps()[i];
                if e > 0 {
                    t *= num::pow::pow(vals[i].clone().unwrap(), e as usize);
                }
            }
            acc += t;
        }
        Some(acc)
    }

    pub fn write_to(&self, out: &mut String) {
        if self.is_zero() {
            out.push('0');
            return;
        }
        for (k, (m, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            if neg {
                out.push('-');
            } else if k > 0 {
                out.push('+');
            }
            let a = c.abs();
            if m.is_one() {
                out.push_str(&a.to_string());
            } else {
                if !a.is_one() {
                    out.push_str(&a.to_string());
                    out.push('*');
                }
                m.write_to(out);
            }
        }
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut s = String::new();
        self.write_to(&mut s);
        f.write_str(&s)
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(n))
    }

    #[test]
    fn grlex_orders_by_degree_then_lex() {
        let a = Mono::var(Var::l(1), 1);
        let b = Mono::var(Var::l(2), 2);
        let c = Mono::var(Var::l(2), 1);
        assert!(b > a);
        assert!(a > c);
    }

    #[test]
    fn exact_division_round_trips() {
        let x = Poly::var(Var::l(1));
        let y = Poly::var(Var::l(2));
        let a = x.add(&y).add(&Poly::one());
        let b = x.sub(&y.scale(&q(3)));
        let p = a.mul(&b);
        assert_eq!(p.div_exact(&a), Some(b.clone()));
        assert_eq!(p.div_exact(&b), Some(a));
        assert!(p.add(&Poly::one()).div_exact(&b).is_none());
    }

    #[test]
    fn univariate_view_round_trips() {
        let x = Poly::var(Var::l(1));
        let s = Poly::var(Var::s());
        let p = x
            .pow(3)
            .mul(&s)
            .add(&x.mul(&s.pow(2)))
            .add(&Poly::from_int(7));
        let cs = p.coeffs_in(Var::l(1));
        assert_eq!(cs.len(), 4);
        assert_eq!(Poly::from_coeffs_in(Var::l(1), &cs), p);
    }

    #[test]
    fn primitive_part_is_integral() {
        let x = Poly::var(Var::l(1));
        let p = x
            .scale(&BigRational::new(BigInt::from(-2), BigInt::from(3)))
            .add(&Poly::constant(BigRational::new(
                BigInt::from(4),
                BigInt::from(9),
            )));
        let (c, pp) = p.primitive();
        assert_eq!(pp.to_string(), "3*l1-2");
        assert_eq!(c, BigRational::new(BigInt::from(-2), BigInt::from(9)));
    }
}
