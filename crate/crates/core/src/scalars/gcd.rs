//! Multivariate polynomial gcd.
//!
//! Recursive scheme: strip monomial contents, eliminate variables occurring
//! in only one argument through contents, then run the subresultant
//! pseudo-remainder sequence in one main variable over the ring of the
//! remaining variables, with exact divisions throughout.

use super::poly::Poly;
use super::var::{Var, NVARS};

/// Greatest common divisor, normalized to coprime integer coefficients with
/// positive leading coefficient. `gcd(0, 0) = 0`.
pub fn gcd(a: &Poly, b: &Poly) -> Poly {
    if a.is_zero() {
        return normalize(b);
    }
    if b.is_zero() {
        return normalize(a);
    }
    if a.is_constant() || b.is_constant() {
        return Poly::one();
    }
    let ma = a.mono_content();
    let mb = b.mono_content();
    let mg = ma.gcd(&mb);
    let a1 = if ma.is_one() {
        a.clone()
    } else {
        a.div_mono(&ma)
    };
    let b1 = if mb.is_one() {
        b.clone()
    } else {
        b.div_mono(&mb)
    };
    let g = gcd_stripped(&a1, &b1);
    normalize(&g.mul_mono(&mg))
}

fn normalize(p: &Poly) -> Poly {
    p.primitive().1
}

fn gcd_stripped(a: &Poly, b: &Poly) -> Poly {
    if a.is_constant() || b.is_constant() {
        return Poly::one();
    }
    if a == b {
        return a.clone();
    }
    if a.is_monomial() || b.is_monomial() {
        // No monomial content is left, so a monomial argument is a unit here.
        return Poly::one();
    }
    let sa = a.support();
    let sb = b.support();
    if sa & !sb != 0 {
        let v = first_var(sa & !sb);
        return gcd(&content_in(a, v), b);
    }
    if sb & !sa != 0 {
        let v = first_var(sb & !sa);
        return gcd(a, &content_in(b, v));
    }
    if a.total_degree() <= b.total_degree() {
        if b.div_exact(a).is_some() {
            return a.clone();
        }
    } else if a.div_exact(b).is_some() {
        return b.clone();
    }
    let v = (0..NVARS)
        .filter(|i| sa & (1 << i) != 0)
        .map(Var::from_index)
        .min_by_key(|&v| a.degree_in(v).max(b.degree_in(v)))
        .expect("nonconstant polynomial has a variable");

    let ca = content_in(a, v);
    let cb = content_in(b, v);
    let cg = gcd(&ca, &cb);
    let pa = a.div_exact(&ca).expect("content divides");
    let pb = b.div_exact(&cb).expect("content divides");
    let g = subresultant(&pa.coeffs_in(v), &pb.coeffs_in(v));
    let gp = Poly::from_coeffs_in(v, &g);
    let gp = primitive_in(&gp, v);
    gp.mul(&cg)
}

fn first_var(mask: u32) -> Var {
    Var::from_index(mask.trailing_zeros() as usize)
}

/// Gcd of the coefficients of `p` viewed as a polynomial in `v`.
pub fn content_in(p: &Poly, v: Var) -> Poly {
    let cs = p.coeffs_in(v);
    let mut g = Poly::zero();
    for c in cs.iter().rev() {
        if c.is_zero() {
            continue;
        }
        g = gcd(&g, c);
        if g.is_constant() {
            return Poly::one();
        }
    }
    g
}

fn primitive_in(p: &Poly, v: Var) -> Poly {
    if p.is_zero() {
        return Poly::zero();
    }
    let c = content_in(p, v);
    if c.is_constant() {
        p.clone()
    } else {
        p.div_exact(&c).expect("content divides")
    }
}

fn trim(p: &mut Vec<Poly>) {
    while matches!(p.last(), Some(c) if c.is_zero()) {
        p.pop();
    }
}

fn deg(p: &[Poly]) -> usize {
    p.len() - 1
}

/// Pseudo-remainder `lc(b)^{deg a - deg b + 1}·a mod b`.
fn prem(a: &[Poly], b: &[Poly]) -> Vec<Poly> {
    let n = deg(b);
    let lb = &b[n];
    let mut r = a.to_vec();
    let mut e = deg(a) as i64 - n as i64 + 1;
    while !r.is_empty() && r.len() > n {
        let shift = deg(&r) - n;
        let lr = r[deg(&r)].clone();
        for c in r.iter_mut() {
            *c = c.mul(lb);
        }
        for (k, bc) in b.iter().enumerate() {
            let t = bc.mul(&lr);
            r[k + shift] = r[k + shift].sub(&t);
        }
        trim(&mut r);
        e -= 1;
    }
    if e > 0 {
        let f = lb.pow(e as u32);
        for c in r.iter_mut() {
            *c = c.mul(&f);
        }
    }
    r
}

fn subresultant(a: &[Poly], b: &[Poly]) -> Vec<Poly> {
    let (mut a, mut b) = if a.len() >= b.len() {
        (a.to_vec(), b.to_vec())
    } else {
        (b.to_vec(), a.to_vec())
    };
    let mut g = Poly::one();
    let mut h = Poly::one();
    loop {
        let d = (deg(&a) - deg(&b)) as u32;
        let r = prem(&a, &b);
        if r.is_empty() {
            return b;
        }
        if r.len() == 1 {
            return vec![Poly::one()];
        }
        let div = g.mul(&h.pow(d));
        a = b;
        b = r
            .iter()
            .map(|c| c.div_exact(&div).expect("subresultant division is exact"))
            .collect();
        g = a[deg(&a)].clone();
        h = if d == 0 {
            h
        } else {
            g.pow(d)
                .div_exact(&h.pow(d - 1))
                .expect("subresultant division is exact")
        };
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num::{BigInt, BigRational};

    fn v(x: Var) -> Poly {
        Poly::var(x)
    }

    fn c(n: i64) -> Poly {
        Poly::from_int(n)
    }

    #[test]
    fn gcd_recovers_common_factor() {
        let x = v(Var::l(1));
        let y = v(Var::l(2));
        let s = v(Var::s());
        let f = x.sub(&y).add(&c(1));
        let a = f.mul(&x.add(&s.pow(2))).mul(&f);
        let b = f.mul(&y.pow(2).sub(&c(3)));
        assert_eq!(gcd(&a, &b), f);
    }

    #[test]
    fn gcd_of_coprime_is_one() {
        let x = v(Var::t(1));
        let s = v(Var::s());
        let a = x.pow(2).mul(&s.pow(8)).sub(&c(1));
        let b = x.pow(2).mul(&s.pow(4)).sub(&c(1));
        assert!(gcd(&a, &b).is_one());
    }

    #[test]
    fn gcd_handles_monomial_content_and_scaling() {
        let x = v(Var::l(1));
        let y = v(Var::l(2));
        let a = x
            .mul(&y)
            .mul(&x.add(&y))
            .scale(&BigRational::new(BigInt::from(3), BigInt::from(2)));
        let b = x
            .pow(2)
            .mul(&x.add(&y))
            .scale(&BigRational::from_integer(BigInt::from(-4)));
        assert_eq!(gcd(&a, &b), x.mul(&x.add(&y)));
    }

    #[test]
    fn gcd_in_one_variable_only() {
        let x = v(Var::l(1));
        let y = v(Var::l(2));
        let a = x.pow(2).sub(&c(1)).mul(&y.add(&c(2)));
        let b = x.sub(&c(1));
        assert_eq!(gcd(&a, &b), b);
        assert_eq!(content_in(&a, Var::l(1)), y.add(&c(2)));
    }
}
